#include <fstream>

#include "support.hpp"

#include "gelswell/constitutive.hpp"

namespace testing_support {

std::pair<double, double> AdmissibleSampler::next() {
    std::uniform_real_distribution<double> phiDist(phiLo, phiHi);
    std::uniform_real_distribution<double> unit(-0.95, 0.95);
    for (;;) {
        const double phi = phiDist(rng);
        const double g = gelswell::constitutive::dG(phi, p);
        if (!(g < 0.0) || !std::isfinite(g)) continue;
        return {1.0 / phi, unit(rng) * std::sqrt(-g)};
    }
}

}  // namespace testing_support
