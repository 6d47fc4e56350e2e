#pragma once

// Umbrella header for the sca5 toolkit: exact analysis and simulation of a
// stochastic 5-neighbor binary cellular automaton with two conserved
// quantities (particle density and 110-pattern density).

#include "sca5/components.hpp"
#include "sca5/flux.hpp"
#include "sca5/linsolve.hpp"
#include "sca5/partition.hpp"
#include "sca5/predecessor.hpp"
#include "sca5/rational.hpp"
#include "sca5/report.hpp"
#include "sca5/ring.hpp"
#include "sca5/rng.hpp"
#include "sca5/rules.hpp"
#include "sca5/skeleton.hpp"
#include "sca5/slice.hpp"
#include "sca5/stationary.hpp"
#include "sca5/transitions.hpp"
#include "sca5/verify.hpp"
