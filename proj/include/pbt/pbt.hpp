#pragma once

#include "pbt/backtrack.hpp"
#include "pbt/equitable.hpp"
#include "pbt/group.hpp"
#include "pbt/orbital_graph.hpp"
#include "pbt/ordered_partition.hpp"
#include "pbt/permutation.hpp"
#include "pbt/refiners.hpp"
#include "pbt/stabilizer_chain.hpp"
