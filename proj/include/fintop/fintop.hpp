#pragma once

#include "fintop/cache.hpp"
#include "fintop/chains.hpp"
#include "fintop/corpus.hpp"
#include "fintop/covers.hpp"
#include "fintop/error.hpp"
#include "fintop/field.hpp"
#include "fintop/finspace.hpp"
#include "fintop/grouphom.hpp"
#include "fintop/homotopy.hpp"
#include "fintop/parallel.hpp"
#include "fintop/products.hpp"
#include "fintop/retracts.hpp"
#include "fintop/setcover.hpp"
#include "fintop/snf.hpp"
#include "fintop/square.hpp"
