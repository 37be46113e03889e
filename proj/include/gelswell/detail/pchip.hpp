#pragma once

// Boost 1.74's pchip calls isnan unqualified on double, which only compiles
// when something has already brought it into scope.
#include <cmath>

namespace boost::math::interpolators {
using std::isnan;
}

#include <boost/math/interpolators/pchip.hpp>
