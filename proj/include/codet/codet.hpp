#pragma once

// Umbrella header for the concomitant-statistics intrusion detector.

#include "codet/compensated.hpp"
#include "codet/csv.hpp"
#include "codet/detector.hpp"
#include "codet/errors.hpp"
#include "codet/harness.hpp"
#include "codet/quadrature.hpp"
#include "codet/rng.hpp"
#include "codet/sample.hpp"
#include "codet/scenario.hpp"
#include "codet/stats.hpp"
#include "codet/stochastic.hpp"
#include "codet/transfer.hpp"
