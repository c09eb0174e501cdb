#pragma once

#include "schulze/ballots.hpp"
#include "schulze/bottleneck.hpp"
#include "schulze/dominance.hpp"
#include "schulze/dscc.hpp"
#include "schulze/majority_graph.hpp"
#include "schulze/matrix.hpp"
#include "schulze/reductions.hpp"
#include "schulze/winners.hpp"
