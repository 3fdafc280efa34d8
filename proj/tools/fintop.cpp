// Command-line front end. Exit codes: 0 success, 1 error, 2 audit found
// counterexamples, 3 a budget was exceeded (partial report written).

#include <chrono>
#include <deque>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fintop/fintop.hpp"
#include "fintop/io.hpp"

namespace {

using fintop::io::Json;
namespace io = fintop::io;

enum Exit { kOk = 0, kError = 1, kCounterexample = 2, kBudget = 3 };

struct Common {
  std::string output;
  std::string format = "json";
  std::size_t jobs = fintop::default_jobs();
  std::size_t max_product_points = 16;
  std::size_t max_open_sets = 1U << 20;
  double time_limit = 0;
  bool timing = false;

  fintop::CoverOptions cover_options() const {
    return {max_product_points, max_open_sets};
  }
};

struct Run {
  std::string command;
  Json inputs = Json::array();
  Json parameters = Json::object();
  Json result = Json::object();
  int status = kOk;

  const io::LoadedFile& load(const std::string& path) {
    files.push_back(io::load_file(path));
    inputs.push_back({{"path", path}, {"fnv1a64", io::hex64(files.back().hash)}});
    return files.back();
  }

  // Referenced files resolve relative to the directory of `from`.
  io::Resolver resolver(const std::string& from) {
    const auto dir = std::filesystem::path(from).parent_path();
    return [this, dir](const std::string& ref) {
      std::filesystem::path p(ref);
      if (p.is_relative()) p = dir / p;
      return load(p.string()).json;
    };
  }

  std::deque<io::LoadedFile> files;
};

const char* status_name(int s) {
  switch (s) {
    case kOk: return "ok";
    case kCounterexample: return "counterexamples";
    case kBudget: return "budget-exceeded";
    default: return "error";
  }
}

int emit(Run& run, const Common& c, double seconds) {
  Json report = {{"command", run.command},
                 {"inputs", run.inputs},
                 {"parameters", run.parameters},
                 {"result", run.result},
                 {"status", status_name(run.status)}};
  if (c.timing) report["elapsed_seconds"] = seconds;
  const std::string text = c.format == "text" ? io::to_text(report) : report.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    io::write_atomic(c.output, text);
  }
  return run.status;
}

fintop::PosetCorpus load_corpus(std::size_t max_points) {
  const char* dir = std::getenv("FINTOP_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return fintop::generate_corpus(max_points);
  const std::filesystem::path path =
      std::filesystem::path(dir) / ("corpus-" + std::to_string(max_points) + ".json");
  if (std::filesystem::exists(path)) {
    auto c = io::corpus_from_json(io::load_file(path.string()).json);
    // regenerate on any mismatch with a fresh run
    if (c.max_points == max_points) return c;
  }
  auto c = fintop::generate_corpus(max_points);
  std::filesystem::create_directories(dir);
  io::write_atomic(path.string(), io::corpus_to_json(c).dump() + "\n");
  return c;
}

fintop::PointSet parse_subset(const fintop::FiniteSpace& x, const std::vector<std::string>& labels) {
  fintop::PointSet m = 0;
  for (const auto& l : labels) m |= fintop::bits::bit(x.require(l));
  return m;
}

Json budget_json(const fintop::SearchBudgetExceeded& e) {
  Json j = {{"message", e.what()}, {"lower", e.lower()}};
  j["upper"] = e.upper() >= 0 ? Json(e.upper()) : Json(nullptr);
  return j;
}

std::vector<fintop::Ring> parse_rings(const std::vector<std::string>& texts) {
  std::vector<fintop::Ring> out;
  for (const auto& t : texts) out.push_back(fintop::Ring::parse(t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of finite spaces, maps and homomorphisms"};
  app.require_subcommand(1);
  Common common;
  Run run;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", common.output, "Report path (default: stdout)");
    sub->add_option("--format", common.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-j,--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-product-points", common.max_product_points,
                    "Largest product space searched")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-open-sets", common.max_open_sets, "Open sets examined per search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--time-limit", common.time_limit, "Seconds before an audit stops starting work")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--timing", common.timing, "Include elapsed time in the report");
  };

  std::string input;
  std::string input2;
  std::size_t r = 2;
  std::vector<std::size_t> r_values;
  std::string invariant = "cat";
  std::size_t max_points = 4;
  bool extract = false;
  bool identity_only = false;
  bool connected_only = false;
  bool records = false;
  std::vector<std::string> subset;
  std::vector<std::string> rings;
  std::string field_text = "Q";
  bool no_torsion_probes = false;
  std::optional<std::uint64_t> seed;
  std::size_t random_count = 0;
  bool no_exhaustive = false;

  auto* cat = app.add_subcommand("cat", "Category of a map (or of a space via its identity)");
  cat->add_option("input", input, "Space or map file")->required()->check(CLI::ExistingFile);
  auto* tc = app.add_subcommand("tc", "Sequential topological complexity of a map or space");
  tc->add_option("input", input, "Space or map file")->required()->check(CLI::ExistingFile);
  tc->add_option("--r", r, "Number of stages (r >= 2)")->check(CLI::Range(2, 8));
  auto* planner = app.add_subcommand("planner", "Planner criterion and planner tables");
  planner->add_option("input", input, "Space or map file")->required()->check(CLI::ExistingFile);
  planner->add_option("--r", r, "Number of stages (r >= 2)")->check(CLI::Range(2, 8));
  planner->add_option("--subset", subset, "Points of X^r forming an open set, e.g. '(a,b)'");
  planner->add_flag("--extract", extract, "Extract and validate planner tables");
  auto* restrict_cmd = app.add_subcommand("restrict-cover", "Transport a witness cover along a square");
  restrict_cmd->add_option("input", input, "Square file")->required()->check(CLI::ExistingFile);
  restrict_cmd->add_option("--invariant", invariant, "cat or tc")->check(CLI::IsMember({"cat", "tc"}));
  restrict_cmd->add_option("--r", r, "Number of stages for tc")->check(CLI::Range(2, 8));
  auto* retractions = app.add_subcommand("retractions", "All retractions onto a subspace");
  retractions->add_option("input", input, "Space file")->required()->check(CLI::ExistingFile);
  retractions->add_option("--subspace", subset, "Labels of the subspace")->required();
  auto* square_check = app.add_subcommand("square-check", "Check a retraction square");
  square_check->add_option("input", input, "Square file")->required()->check(CLI::ExistingFile);
  auto* audit = app.add_subcommand("audit", "Monotonicity audit over all small posets");
  audit->add_option("--invariant", invariant, "cat or tc")->check(CLI::IsMember({"cat", "tc"}));
  audit->add_option("--max-points", max_points, "Largest poset size (1..5)")->check(CLI::Range(1, 5));
  audit->add_option("--r", r_values, "Stages for tc (repeatable, default 2)");
  audit->add_flag("--identity-only", identity_only, "Only identity maps and space retractions");
  audit->add_flag("--connected-only", connected_only, "Only connected spaces");
  audit->add_flag("--records", records, "Include every instance in the report");
  auto* homology_cmd = app.add_subcommand("homology", "Simplicial homology");
  auto* cohomology_cmd = app.add_subcommand("cohomology", "Simplicial cohomology");
  auto* cd = app.add_subcommand("cd", "Cohomological dimension probes");
  auto* hd = app.add_subcommand("hd", "Homological dimension probes");
  for (auto* sub : {homology_cmd, cohomology_cmd}) {
    sub->add_option("input", input, "Complex or space file")->required()->check(CLI::ExistingFile);
    sub->add_option("--ring", rings, "Z, Q or Zp:<p>");
  }
  for (auto* sub : {cd, hd}) {
    sub->add_option("input", input, "Complex or space file")->required()->check(CLI::ExistingFile);
    sub->add_option("--ring", rings, "Probe rings (repeatable, default Z and Q)");
    sub->add_flag("--no-torsion-probes", no_torsion_probes,
                  "Do not add Zp probes for primes dividing the torsion");
  }
  auto* cup = app.add_subcommand("cup-length", "Cup-length over a field");
  cup->add_option("input", input, "Complex or space file")->required()->check(CLI::ExistingFile);
  cup->add_option("--field", field_text, "Q or Zp:<p>");
  auto* zdcl = app.add_subcommand("zdcl", "Zero-divisor cup-length over a field");
  zdcl->add_option("input", input, "Complex or space file")->required()->check(CLI::ExistingFile);
  zdcl->add_option("--field", field_text, "Q or Zp:<p>");
  zdcl->add_option("--r", r, "Tensor power (r >= 2)")->check(CLI::Range(2, 6));
  auto* cd_hom = app.add_subcommand("cd-hom", "Dimension of a homomorphism Z^n -> Z^m at trivial coefficients");
  cd_hom->add_option("input", input, "Matrix file")->required()->check(CLI::ExistingFile);
  auto* lemma = app.add_subcommand("audit-lemma31", "Subhomomorphism audit: cd(A') <= cd(A)");
  auto* theorem = app.add_subcommand("audit-theorem32", "Retraction-square audit: cd(A) vs cd(A')");
  for (auto* sub : {lemma, theorem}) {
    sub->add_option("--input", input, "JSON list of instances")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed for the random corpus");
    sub->add_option("--random", random_count, "Number of random instances (needs --seed)");
    sub->add_flag("--no-exhaustive", no_exhaustive, "Skip the built-in corpus");
    sub->add_flag("--records", records, "Include every instance in the report");
  }
  auto* gen = app.add_subcommand("gen-corpus", "All posets up to isomorphism");
  gen->add_option("--max-points", max_points, "Largest size (1..5)")->check(CLI::Range(1, 5));
  auto* homotopic = app.add_subcommand("homotopic", "Decide homotopy of two maps");
  homotopic->add_option("first", input, "Map file")->required()->check(CLI::ExistingFile);
  homotopic->add_option("second", input2, "Map file")->required()->check(CLI::ExistingFile);
  auto* nullhom = app.add_subcommand("nullhomotopic", "Decide null-homotopy of a map");
  nullhom->add_option("input", input, "Map file")->required()->check(CLI::ExistingFile);
  auto* core_cmd = app.add_subcommand("core", "Core of a finite space");
  core_cmd->add_option("input", input, "Space file")->required()->check(CLI::ExistingFile);

  for (auto* sub : app.get_subcommands({})) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  const auto started = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  run.command = sub->get_name();

  try {
    fintop::HomotopyEngine engine;
    const auto opts = common.cover_options();
    run.parameters["max_product_points"] = common.max_product_points;
    run.parameters["max_open_sets"] = common.max_open_sets;

    if (sub == cat || sub == tc) {
      const auto f = io::map_from_json(run.load(input).json, run.resolver(input));
      if (sub == tc) run.parameters["r"] = r;
      try {
        auto res = sub == cat ? fintop::cat_map(engine, f, opts) : fintop::tc_map(engine, f, r, opts);
        run.result = {{"value", res.value}, {"cover", io::cover_to_json(res.cover)}};
      } catch (const fintop::SearchBudgetExceeded& e) {
        run.result = {{"budget", budget_json(e)}};
        run.status = kBudget;
      }
    } else if (sub == planner) {
      const auto f = io::map_from_json(run.load(input).json, run.resolver(input));
      run.parameters["r"] = r;
      auto prod = std::make_shared<const fintop::ProductSpace>(fintop::power(f.domain(), r));
      if (prod->space()->size() > common.max_product_points) {
        throw fintop::SearchBudgetExceeded("product space over budget", 0, -1);
      }
      std::vector<fintop::PointSet> parts;
      if (!subset.empty()) {
        parts.push_back(parse_subset(*prod->space(), subset));
      } else {
        auto res = fintop::tc_map(engine, f, r, opts);
        run.result["value"] = res.value;
        parts = res.cover.parts;
      }
      Json out = Json::array();
      for (auto u : parts) {
        auto d = fintop::admits_planner(engine, *prod, u, f);
        Json entry = {{"subset", io::points_json(*prod->space(), u)}, {"admissible", d.admissible}};
        if (extract && d.admissible) {
          auto table = fintop::extract_planner(prod, u, f, d.witnesses);
          auto problem = fintop::planner_problem(table);
          entry["table"] = io::planner_to_json(table);
          entry["table_valid"] = !problem.has_value();
          if (problem) {
            entry["problem"] = *problem;
            run.status = kCounterexample;
          }
        }
        out.push_back(entry);
      }
      run.result["parts"] = out;
    } else if (sub == restrict_cmd) {
      const auto sq = io::square_from_json(run.load(input).json, run.resolver(input));
      const auto check = fintop::verify_square(sq);
      if (!check.commutes) {
        throw fintop::SquareInvalid("square does not commute at '" +
                                    sq.f.domain()->label(*check.failure) + "'");
      }
      const bool is_tc = invariant == "tc";
      run.parameters["invariant"] = invariant;
      if (is_tc) run.parameters["r"] = r;
      try {
        auto big = is_tc ? fintop::tc_map(engine, sq.f, r, opts) : fintop::cat_map(engine, sq.f, opts);
        auto moved = fintop::restrict_cover(big.cover, sq);
        auto problem = fintop::cover_problem(moved);
        bool planners_ok = true;
        if (is_tc && !problem) {
          for (auto u : moved.parts) {
            planners_ok = planners_ok && fintop::admits_planner(engine, *moved.product, u, sq.f_prime).admissible;
          }
        }
        auto small = is_tc ? fintop::tc_map(engine, sq.f_prime, r, opts)
                           : fintop::cat_map(engine, sq.f_prime, opts);
        run.result = {{"value_f", big.value},
                      {"value_f_prime", small.value},
                      {"cover_f", io::cover_to_json(big.cover)},
                      {"restricted_cover", io::cover_to_json(moved)},
                      {"restricted_valid", !problem.has_value() && planners_ok}};
        if (problem) run.result["problem"] = *problem;
        if (problem || !planners_ok || small.value > big.value) run.status = kCounterexample;
      } catch (const fintop::SearchBudgetExceeded& e) {
        run.result = {{"budget", budget_json(e)}};
        run.status = kBudget;
      }
    } else if (sub == retractions) {
      const auto x = fintop::make_space(io::space_from_json(run.load(input).json));
      const auto xs = fintop::induced_subspace(x, parse_subset(*x, subset));
      run.parameters["subspace"] = io::points_json(*x, xs.mask);
      Json list = Json::array();
      for (const auto& rmap : fintop::enumerate_retractions(xs)) {
        list.push_back(io::assignment_to_json(*x, *xs.space, rmap.assignment()));
      }
      run.result = {{"count", list.size()}, {"retractions", list}};
    } else if (sub == square_check) {
      const auto sq = io::square_from_json(run.load(input).json, run.resolver(input));
      const auto check = fintop::verify_square(sq);
      run.result = {{"commutes", check.commutes}};
      if (check.failure) run.result["failure"] = sq.f.domain()->label(*check.failure);
    } else if (sub == audit) {
      fintop::AuditSpec spec;
      spec.max_points = max_points;
      spec.invariant = invariant == "tc" ? fintop::AuditInvariant::Complexity
                                         : fintop::AuditInvariant::Category;
      if (!r_values.empty()) spec.r_values = r_values;
      spec.identity_only = identity_only;
      spec.connected_only = connected_only;
      spec.jobs = common.jobs;
      spec.cover_options = opts;
      spec.keep_records = records;
      if (common.time_limit > 0) {
        spec.deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(common.time_limit));
      }
      run.parameters["invariant"] = invariant;
      run.parameters["max_points"] = max_points;
      if (invariant == "tc") run.parameters["r"] = spec.r_values;
      run.parameters["identity_only"] = identity_only;
      run.parameters["connected_only"] = connected_only;
      const auto corpus = load_corpus(max_points);
      const auto rep = fintop::audit_monotonicity(corpus, spec);
      run.result = io::audit_to_json(rep, corpus);
      if (!rep.clean()) {
        run.status = kCounterexample;
      } else if (rep.summary.budget_exceeded > 0 || rep.summary.pairs_skipped > 0) {
        run.status = kBudget;
      }
    } else if (sub == homology_cmd || sub == cohomology_cmd) {
      const auto k = io::complex_from_json(run.load(input).json);
      const auto ring_list = parse_rings(rings.empty() ? std::vector<std::string>{"Z"} : rings);
      Json out = Json::array();
      for (const auto& ring : ring_list) {
        auto h = sub == homology_cmd ? fintop::homology(k, ring, common.jobs)
                                     : fintop::cohomology(k, ring, common.jobs);
        out.push_back(io::homology_to_json(h));
      }
      run.result = {{"dimension", k.dimension()},
                    {"euler_from_simplices", k.euler_characteristic()},
                    {"groups", out}};
    } else if (sub == cd || sub == hd) {
      const auto k = io::complex_from_json(run.load(input).json);
      const auto probes = rings.empty() ? fintop::default_probes() : parse_rings(rings);
      auto est = sub == cd ? fintop::cd_space(k, probes, !no_torsion_probes)
                           : fintop::hd_space(k, probes, !no_torsion_probes);
      run.result = io::dimension_to_json(est);
    } else if (sub == cup || sub == zdcl) {
      const auto k = io::complex_from_json(run.load(input).json);
      const auto ring = fintop::Ring::parse(field_text);
      run.parameters["field"] = ring.to_string();
      if (sub == cup) {
        run.result = {{"cup_length", fintop::cup_length(k, ring)}, {"dimension", k.dimension()}};
      } else {
        run.parameters["r"] = r;
        run.result = {{"zero_divisor_cup_length", fintop::zero_divisor_cup_length(k, ring, r)}};
      }
    } else if (sub == cd_hom) {
      const auto a = io::matrix_from_json(run.load(input).json);
      const auto s = fintop::smith_normal_form(a);
      Json factors = Json::array();
      for (const auto& d : s.invariant_factors) factors.push_back(io::big_string(d));
      auto problem = fintop::smith_certificate_problem(a, s);
      run.result = {{"cd_trivial", fintop::cd_trivial(a)},
                    {"hd_trivial", fintop::hd_trivial(a)},
                    {"invariant_factors", factors},
                    {"certificate_valid", !problem.has_value()},
                    {"value_kind", "trivial coefficients Z; lower bound for the module supremum"}};
    } else if (sub == lemma || sub == theorem) {
      if (random_count > 0 && !seed) throw fintop::PreconditionError("--random needs an explicit --seed");
      run.parameters["random"] = random_count;
      if (seed) run.parameters["seed"] = *seed;
      run.parameters["exhaustive"] = !no_exhaustive;
      if (sub == lemma) {
        std::vector<fintop::SubhomInstance> corpus;
        if (!no_exhaustive) corpus = fintop::exhaustive_subhom_corpus();
        if (random_count > 0) {
          auto extra = fintop::random_subhom_corpus(random_count, *seed);
          corpus.insert(corpus.end(), extra.begin(), extra.end());
        }
        if (!input.empty()) {
          const auto& f = run.load(input);
          if (!f.json.is_array()) io::schema_error("instance file must hold an array");
          for (std::size_t i = 0; i < f.json.size(); ++i) {
            corpus.push_back(io::subhom_from_json(f.json[i], "input#" + std::to_string(i)));
          }
        }
        const auto rep = fintop::audit_lemma31(corpus, common.jobs, records);
        Json recs = Json::array();
        for (const auto& rec : rep.records) {
          recs.push_back({{"index", rec.index},
                          {"name", rec.name},
                          {"a", io::matrix_to_json(corpus[rec.index].a)},
                          {"i_domain", io::matrix_to_json(corpus[rec.index].i_domain)},
                          {"i_codomain", io::matrix_to_json(corpus[rec.index].i_codomain)},
                          {"a_prime", io::matrix_to_json(rec.a_prime)},
                          {"cd_a", rec.cd_a},
                          {"cd_a_prime", rec.cd_a_prime},
                          {"comparison", fintop::to_string(rec.comparison)}});
        }
        run.result = {{"instances", rep.instances}, {"evaluated", rep.evaluated},
                      {"skipped_no_restriction", rep.skipped}, {"equal", rep.equal},
                      {"strict_less", rep.strict_less}, {"violations", rep.violations},
                      {"records", recs}};
        if (rep.violations > 0) run.status = kCounterexample;
      } else {
        std::vector<fintop::NamedSquare> corpus;
        if (!no_exhaustive) corpus = fintop::square_corpus(0, 0);
        if (random_count > 0) {
          auto extra = fintop::square_corpus(random_count, *seed);
          // the fixed part is already present
          corpus.insert(corpus.end(), extra.end() - static_cast<long>(random_count), extra.end());
        }
        if (!input.empty()) {
          const auto& f = run.load(input);
          if (!f.json.is_array()) io::schema_error("square file must hold an array");
          for (std::size_t i = 0; i < f.json.size(); ++i) {
            corpus.push_back({"input#" + std::to_string(i), io::hom_square_from_json(f.json[i])});
          }
        }
        const auto rep = fintop::audit_theorem32(corpus, common.jobs, records);
        Json recs = Json::array();
        for (const auto& rec : rep.records) {
          Json j = {{"index", rec.index},
                    {"name", rec.name},
                    {"square", io::hom_square_to_json(corpus[rec.index].square)},
                    {"identities",
                     {{"shapes", rec.check.shapes},
                      {"domain_retracts", rec.check.domain_retracts},
                      {"codomain_retracts", rec.check.codomain_retracts},
                      {"commutes", rec.check.commutes},
                      {"restricts", rec.check.restricts}}},
                    {"valid", rec.check.valid()}};
          if (rec.check.valid()) {
            j["cd_a"] = rec.cd_a;
            j["cd_a_prime"] = rec.cd_a_prime;
            j["classification"] = fintop::to_string(rec.comparison);
          }
          recs.push_back(j);
        }
        run.result = {{"squares", rep.squares}, {"invalid", rep.invalid}, {"equal", rep.equal},
                      {"strict_less", rep.strict_less}, {"greater", rep.greater}, {"records", recs}};
        if (rep.strict_less + rep.greater + rep.invalid > 0) run.status = kCounterexample;
      }
    } else if (sub == gen) {
      run.parameters["max_points"] = max_points;
      run.result = io::corpus_to_json(load_corpus(max_points));
    } else if (sub == homotopic) {
      const auto f = io::map_from_json(run.load(input).json, run.resolver(input));
      auto g = io::map_from_json(run.load(input2).json, run.resolver(input2));
      // the second file carries its own copies of the spaces
      if (!fintop::same_space(f.domain(), g.domain()) || !fintop::same_space(f.codomain(), g.codomain())) {
        throw fintop::DomainMismatch("maps have different domains or codomains");
      }
      g = fintop::SpaceMap(f.domain(), f.codomain(), g.assignment());
      auto d = engine.are_homotopic(f, g);
      run.result = {{"homotopic", d.homotopic}};
      if (d.witness) run.result["fence"] = io::fence_to_json(*d.witness);
    } else if (sub == nullhom) {
      const auto f = io::map_from_json(run.load(input).json, run.resolver(input));
      auto d = engine.is_nullhomotopic(f);
      run.result = {{"nullhomotopic", d.homotopic}};
      if (d.witness) run.result["fence"] = io::fence_to_json(*d.witness);
    } else if (sub == core_cmd) {
      const auto x = fintop::make_space(io::space_from_json(run.load(input).json));
      auto c = fintop::core(x);
      run.result = {{"core", io::space_to_json(*c.core.space)},
                    {"core_points", io::points_json(*x, c.core.mask)},
                    {"contractible", c.core.space->size() == 1}};
    }
  } catch (const fintop::SearchBudgetExceeded& e) {
    run.result = {{"budget", budget_json(e)}};
    run.status = kBudget;
  } catch (const fintop::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  try {
    return emit(run, common, seconds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
