#pragma once

// Everything except the JSON layer (freecore/io.hpp), which pulls in nlohmann/json.

#include "freecore/error.hpp"
#include "freecore/rational.hpp"
#include "freecore/mult_group.hpp"
#include "freecore/algebra.hpp"
#include "freecore/modular.hpp"
#include "freecore/structure_expr.hpp"
#include "freecore/fdim.hpp"
#include "freecore/freeprod.hpp"
#include "freecore/discrete_core.hpp"
#include "freecore/amalg_engine.hpp"
