#pragma once

namespace ugraph {
inline constexpr const char* kVersion = "0.1.0";
}

#include "ugraph/generators.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/io.hpp"
#include "ugraph/maxvar.hpp"
#include "ugraph/metrics.hpp"
#include "ugraph/numeric.hpp"
#include "ugraph/partition.hpp"
#include "ugraph/rng.hpp"
#include "ugraph/schemes.hpp"
#include "ugraph/uncertain.hpp"
#include "ugraph/walk_matrix.hpp"
