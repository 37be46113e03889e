#include "gelswell/state.hpp"

#include "gelswell/errors.hpp"

namespace gelswell {

StateField StateField::uniform(std::size_t n, double psi, double u, double t) {
    StateField s;
    s.n = n;
    s.t = t;
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.y[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    s.psi.assign(n, psi);
    s.u.assign(n, u);
    return s;
}

std::vector<double> gradient(const std::vector<double>& values, double dy) {
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("gradient needs at least two samples");
    std::vector<double> g(n);
    g[0] = (values[1] - values[0]) / dy;
    g[n - 1] = (values[n - 1] - values[n - 2]) / dy;
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (values[i + 1] - values[i - 1]) / (2.0 * dy);
    return g;
}

}  // namespace gelswell
