#pragma once

// Retractions onto induced subspaces, commuting retraction squares of maps,
// and the exhaustive monotonicity audit over a poset corpus.

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fintop/corpus.hpp"
#include "fintop/covers.hpp"
#include "fintop/finspace.hpp"
#include "fintop/homotopy.hpp"
#include "fintop/parallel.hpp"
#include "fintop/square.hpp"

namespace fintop {

/// Whether `assignment` (points of X to local points of X') is continuous
/// and fixes X' pointwise.
inline bool is_retraction(const Subspace& sub, const std::vector<Point>& assignment) {
  if (assignment.size() != sub.parent->size()) {
    throw SubspaceError("retraction must assign every point of X");
  }
  for (Point y : assignment) {
    if (y >= sub.space->size()) throw SubspaceError("retraction leaves X'");
  }
  for (Point i = 0; i < sub.embedding.size(); ++i) {
    if (assignment[sub.embedding[i]] != i) return false;
  }
  return SpaceMap::is_order_preserving(*sub.parent, *sub.space, assignment);
}

inline bool is_retraction(const SpaceMap& r, const Subspace& sub) {
  if (!same_space(r.domain(), sub.parent) || !same_space(r.codomain(), sub.space)) {
    throw SubspaceError("retraction must map X to the subspace X'");
  }
  return is_retraction(sub, r.assignment());
}

/// All retractions X -> X', in lexicographic order of their assignments.
inline std::vector<SpaceMap> enumerate_retractions(const Subspace& sub) {
  const FiniteSpace& x = *sub.parent;
  std::vector<PointSet> allowed(x.size(), sub.space->all());
  for (Point i = 0; i < sub.embedding.size(); ++i) allowed[sub.embedding[i]] = bits::bit(i);
  std::vector<SpaceMap> out;
  for_each_map_within(x, *sub.space, allowed, [&](const std::vector<Point>& a) {
    out.push_back(SpaceMapBuilder::trusted(sub.parent, sub.space, a));
    return true;
  });
  return out;
}

struct SquareCheck {
  bool commutes = false;
  std::optional<Point> failure;  // point of X where the square breaks
};

/// ComponentInvalid when a vertical map is not a retraction or f' is not
/// the restriction of f.
inline SquareCheck verify_square(const RetractionSquare& sq) {
  if (auto why = detail::square_component_problem(sq)) throw ComponentInvalid(*why);
  if (auto x = detail::square_failure(sq)) return {false, x};
  return {true, std::nullopt};
}

/// Every pair (r_X, r_Y) of retractions making the square for f commute.
inline std::vector<RetractionSquare> enumerate_squares(const SpaceMap& f, const Subspace& xs,
                                                       const Subspace& ys) {
  const SpaceMap fp = restrict_map(f, xs, ys);
  const auto rxs = enumerate_retractions(xs);
  const auto rys = enumerate_retractions(ys);
  std::vector<RetractionSquare> out;
  for (const SpaceMap& rx : rxs) {
    for (const SpaceMap& ry : rys) {
      bool ok = true;
      for (Point x = 0; x < f.domain()->size() && ok; ++x) ok = fp(rx(x)) == ry(f(x));
      if (ok) out.push_back(RetractionSquare{f, xs, ys, fp, rx, ry});
    }
  }
  return out;
}

enum class AuditInvariant { Category, Complexity };

struct AuditSpec {
  std::size_t max_points = 4;
  AuditInvariant invariant = AuditInvariant::Category;
  std::vector<std::size_t> r_values{2};
  /// Only f = Id_X with Y = X and Y' = X' (retractions of spaces).
  bool identity_only = false;
  /// Restrict to connected X and Y (always on for complexity).
  bool connected_only = false;
  std::size_t jobs = 1;
  CoverOptions cover_options{};
  /// Keep one record per instance in the report (counterexamples are kept
  /// regardless).
  bool keep_records = true;
  /// (X, Y) pairs not started by this time are skipped and counted.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class AuditStatus { Ok, Violation, BudgetExceeded, TransportFailure };

inline const char* to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Ok: return "ok";
    case AuditStatus::Violation: return "violation";
    case AuditStatus::BudgetExceeded: return "budget";
    case AuditStatus::TransportFailure: return "transport-failure";
  }
  return "?";
}

/// One (f, X', Y', r) instance admitting at least one commuting square.
struct AuditRecord {
  std::size_t x_index = 0;
  std::size_t y_index = 0;
  std::vector<Point> f;
  PointSet x_sub = 0;
  PointSet y_sub = 0;
  std::size_t r = 1;
  std::size_t squares = 0;
  int value_f = -1;        // -1 when over budget
  int value_f_prime = -1;
  std::size_t transported = 0;        // restrict_cover runs (distinct r_Y)
  std::size_t transported_valid = 0;  // ... that re-validated
  std::vector<Point> r_x;  // a representative commuting square
  std::vector<Point> r_y;
  AuditStatus status = AuditStatus::Ok;
  std::string detail;
};

struct AuditSummary {
  std::size_t spaces = 0;
  std::size_t maps = 0;
  std::size_t instances = 0;
  std::size_t squares = 0;
  std::size_t violations = 0;
  std::size_t budget_exceeded = 0;
  std::size_t transported = 0;
  std::size_t transport_failures = 0;
  std::size_t strict = 0;  // value(f') < value(f)
  std::size_t equal = 0;
  std::size_t pairs = 0;
  std::size_t pairs_skipped = 0;  // deadline reached before they started
};

struct AuditReport {
  AuditSpec spec;
  std::vector<std::size_t> corpus_counts;
  std::vector<SpacePtr> corpus;
  AuditSummary summary;
  std::vector<AuditRecord> records;
  std::vector<AuditRecord> counterexamples;

  bool clean() const {
    return summary.violations == 0 && summary.transport_failures == 0;
  }
};

namespace detail {

struct AuditItemResult {
  std::vector<AuditRecord> records;
  std::size_t maps = 0;
  bool skipped = false;
};

class RetractionTable {
 public:
  explicit RetractionTable(SpacePtr space) : space_(std::move(space)) {}

  const Subspace& subspace(PointSet mask) {
    auto it = subs_.find(mask);
    if (it == subs_.end()) it = subs_.emplace(mask, induced_subspace(space_, mask)).first;
    return it->second;
  }

  const std::vector<SpaceMap>& retractions(PointSet mask) {
    auto it = retractions_.find(mask);
    if (it == retractions_.end()) {
      it = retractions_.emplace(mask, enumerate_retractions(subspace(mask))).first;
    }
    return it->second;
  }

 private:
  SpacePtr space_;
  std::map<PointSet, Subspace> subs_;
  std::map<PointSet, std::vector<SpaceMap>> retractions_;
};

struct InvariantOutcome {
  int value = -1;
  std::optional<Cover> cover;
};

inline InvariantOutcome evaluate(HomotopyEngine& engine, const SpaceMap& f, const AuditSpec& spec,
                                 std::size_t r) {
  try {
    auto res = spec.invariant == AuditInvariant::Category
                   ? cat_map(engine, f, spec.cover_options)
                   : tc_map(engine, f, r, spec.cover_options);
    return {res.value, std::move(res.cover)};
  } catch (const SearchBudgetExceeded&) {
    return {};
  }
}

inline AuditItemResult audit_pair(const PosetCorpus& corpus, std::size_t xi, std::size_t yi,
                                  const AuditSpec& spec) {
  AuditItemResult out;
  const SpacePtr& x = corpus.spaces[xi];
  const SpacePtr& y = corpus.spaces[yi];
  HomotopyEngine engine;
  RetractionTable xt(x);
  RetractionTable yt(y);
  const bool complexity = spec.invariant == AuditInvariant::Complexity;
  const std::vector<std::size_t> rs =
      complexity ? spec.r_values : std::vector<std::size_t>{1};
  std::unordered_map<std::string, int> memo;

  std::vector<SpaceMap> maps;
  if (spec.identity_only) {
    maps.push_back(SpaceMap::identity(x));
  } else {
    maps = all_maps(x, y);
  }
  out.maps = maps.size();

  for (std::size_t fi = 0; fi < maps.size(); ++fi) {
    const SpaceMap& f = maps[fi];
    for (std::size_t r : rs) {
      const InvariantOutcome big = evaluate(engine, f, spec, r);
      for (PointSet xm = 1; xm <= x->all(); ++xm) {
        const auto& rxs = xt.retractions(xm);
        if (rxs.empty()) continue;
        const Subspace& xs = xt.subspace(xm);
        const PointSet img = f.image_of(xm);
        auto visit = [&](PointSet ym) {
          const auto& rys = yt.retractions(ym);
          if (rys.empty()) return;
          const Subspace& ys = yt.subspace(ym);
          const SpaceMap fp = restrict_map(f, xs, ys);
          std::vector<std::pair<std::size_t, std::size_t>> squares;
          for (std::size_t a = 0; a < rxs.size(); ++a) {
            for (std::size_t b = 0; b < rys.size(); ++b) {
              bool ok = true;
              for (Point p = 0; p < x->size() && ok; ++p) {
                ok = fp(rxs[a](p)) == rys[b](f(p));
              }
              if (ok) squares.emplace_back(a, b);
            }
          }
          if (!squares.empty()) {
            AuditRecord rec;
            rec.x_index = xi;
            rec.y_index = yi;
            rec.f = f.assignment();
            rec.x_sub = xm;
            rec.y_sub = ym;
            rec.r = r;
            rec.squares = squares.size();
            rec.r_x = rxs[squares.front().first].assignment();
            rec.r_y = rys[squares.front().second].assignment();
            rec.value_f = big.value;

            const std::string key = xs.space->structure_key() + '|' +
                                    ys.space->structure_key() + '|' +
                                    detail::assignment_key(fp.assignment()) + '|' +
                                    std::to_string(r);
            if (auto it = memo.find(key); it != memo.end()) {
              rec.value_f_prime = it->second;
            } else {
              rec.value_f_prime = evaluate(engine, fp, spec, r).value;
              memo.emplace(key, rec.value_f_prime);
            }

            if (rec.value_f < 0 || rec.value_f_prime < 0) {
              rec.status = AuditStatus::BudgetExceeded;
            } else if (rec.value_f_prime > rec.value_f) {
              rec.status = AuditStatus::Violation;
              rec.detail = "invariant of f' exceeds invariant of f";
            }

            // Transport the witness cover of f along each distinct r_Y.
            if (big.cover) {
              std::set<std::size_t> seen_ry;
              for (auto [a, b] : squares) {
                if (!seen_ry.insert(b).second) continue;
                RetractionSquare sq{f, xs, ys, fp, rxs[a], rys[b]};
                ++rec.transported;
                const Cover moved = restrict_cover(*big.cover, sq);
                std::optional<std::string> why = cover_problem(moved);
                if (!why && moved.parts.size() > big.cover->parts.size()) {
                  why = "restricted cover has more parts";
                }
                if (!why && rec.value_f_prime >= 0 &&
                    rec.value_f_prime + 1 > static_cast<int>(moved.parts.size())) {
                  why = "restricted cover is smaller than the computed minimum";
                }
                if (!why && complexity) {
                  for (PointSet part : moved.parts) {
                    if (!admits_planner(engine, *moved.product, part, fp).admissible) {
                      why = "restricted part fails the planner criterion";
                      break;
                    }
                  }
                }
                if (why) {
                  if (rec.status == AuditStatus::Ok) rec.status = AuditStatus::TransportFailure;
                  if (rec.detail.empty()) rec.detail = *why;
                } else {
                  ++rec.transported_valid;
                }
              }
            }
            out.records.push_back(std::move(rec));
          }
        };
        if (spec.identity_only) {
          if (img == xm) visit(xm);
          continue;
        }
        // Y' ranges over img plus every subset of the remaining points.
        const PointSet free = y->all() & ~img;
        for (PointSet extra = free;; extra = (extra - 1) & free) {
          visit(img | extra);
          if (extra == 0) break;
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// For every commuting retraction square over the corpus, compares the
/// invariant of f' with that of f and transports the witness cover of f.
/// Violations never abort the run; they are collected as counterexamples.
inline AuditReport audit_monotonicity(const PosetCorpus& corpus, const AuditSpec& spec) {
  AuditReport report;
  report.spec = spec;
  report.corpus_counts = corpus.counts;
  const bool complexity = spec.invariant == AuditInvariant::Complexity;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.spaces.size(); ++i) {
    if ((complexity || spec.connected_only) && !is_connected(*corpus.spaces[i])) continue;
    eligible.push_back(i);
    report.corpus.push_back(corpus.spaces[i]);
  }
  report.summary.spaces = eligible.size();
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t a : eligible) {
    if (spec.identity_only) {
      items.emplace_back(a, a);
    } else {
      for (std::size_t b : eligible) items.emplace_back(a, b);
    }
  }
  report.summary.pairs = items.size();
  auto results = parallel_map(items.size(), spec.jobs, [&](std::size_t i) {
    if (spec.deadline && std::chrono::steady_clock::now() > *spec.deadline) {
      detail::AuditItemResult skipped;
      skipped.skipped = true;
      return skipped;
    }
    return detail::audit_pair(corpus, items[i].first, items[i].second, spec);
  });
  for (auto& res : results) {
    if (res.skipped) ++report.summary.pairs_skipped;
    report.summary.maps += res.maps;
    for (auto& rec : res.records) {
      AuditSummary& s = report.summary;
      ++s.instances;
      s.squares += rec.squares;
      s.transported += rec.transported;
      s.transport_failures += rec.transported - rec.transported_valid;
      if (rec.status == AuditStatus::Violation) ++s.violations;
      if (rec.status == AuditStatus::BudgetExceeded) ++s.budget_exceeded;
      if (rec.value_f >= 0 && rec.value_f_prime >= 0) {
        if (rec.value_f_prime < rec.value_f) ++s.strict;
        if (rec.value_f_prime == rec.value_f) ++s.equal;
      }
      if (rec.status == AuditStatus::Violation || rec.status == AuditStatus::TransportFailure) {
        report.counterexamples.push_back(rec);
      }
      if (spec.keep_records) report.records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace fintop
