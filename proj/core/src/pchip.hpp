#pragma once

// Boost 1.74's pchip calls unqualified isnan; make the std overloads visible.
#include <cmath>
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
