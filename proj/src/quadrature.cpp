#include "gelswell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gelswell/errors.hpp"

namespace gelswell::quadrature {

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluatePanel(const std::function<double(double)>& f, double a, double b) {
    // One 15-point Kronrod panel; the error is |K15 - G7| formed here because
    // Boost 1.74 reports it without the panel's Jacobian when max_depth = 0.
    const double k = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0);
    const double g = boost::math::quadrature::gauss<double, 7>::integrate(f, a, b);
    const double err = std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
    return {a, b, k, err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double absTol, int maxPanels,
                 double relTol) {
    if (a == b) return {};
    const double sign = a < b ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);

    std::priority_queue<Panel> panels;
    panels.push(evaluatePanel(f, a, b));
    double error = panels.top().error;
    double value = panels.top().value;
    int count = 1;
    auto target = [&] { return std::max(absTol, relTol * std::abs(value)); };
    while (error > target()) {
        if (count >= maxPanels || !std::isfinite(error)) {
            std::ostringstream msg;
            msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate " << error
                << " > tolerance " << target();
            throw QuadratureError(msg.str(), error);
        }
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluatePanel(f, worst.a, mid);
        Panel right = evaluatePanel(f, mid, worst.b);
        error += left.error + right.error - worst.error;
        value += left.value + right.value - worst.value;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    // Sum in ascending panel order for a reproducible result.
    double sum = 0.0, errSum = 0.0;
    std::vector<Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : all) {
        sum += p.value;
        errSum += p.error;
    }
    return {sign * sum, errSum, count};
}

}  // namespace gelswell::quadrature
