#pragma once

#include <functional>

namespace gelswell::quadrature {

struct Result {
    double value = 0.0;
    double errorEstimate = 0.0;
    int panels = 0;
};

/**
 * Globally adaptive 7/15-point Gauss-Kronrod integration.
 *
 * Panels are bisected (largest error first) until the summed Kronrod error
 * estimate drops below max(absTol, relTol |value|). Throws QuadratureError carrying the
 * achieved estimate when `maxPanels` is exhausted. a > b is allowed and
 * flips the sign.
 */
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double absTol = 1e-10, int maxPanels = 2000, double relTol = 0.0);

}  // namespace gelswell::quadrature
