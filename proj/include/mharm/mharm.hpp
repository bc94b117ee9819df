#pragma once

// Umbrella header for the mharm library.

#include "mharm/numeric.hpp"
#include "mharm/numtheory.hpp"
#include "mharm/bernoulli.hpp"
#include "mharm/harmonic.hpp"
#include "mharm/congruence.hpp"
#include "mharm/suite.hpp"
#include "mharm/report.hpp"
