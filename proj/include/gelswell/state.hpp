#pragma once

#include <cstddef>
#include <vector>

namespace gelswell {

/// (psi, u) on n uniform cells of the mass-Lagrangian domain y in [0,1].
struct StateField {
    std::size_t n = 0;
    std::vector<double> y;    ///< cell centres (i + 1/2) / n
    std::vector<double> psi;  ///< reciprocal polymer fraction, > 1
    std::vector<double> u;    ///< relative (polymer minus solvent) velocity
    double t = 0.0;

    double dy() const { return 1.0 / static_cast<double>(n); }

    /// Constant state on n cells.
    static StateField uniform(std::size_t n, double psi, double u, double t = 0.0);
};

/// Centred differences in the interior, one-sided at the first/last cell.
std::vector<double> gradient(const std::vector<double>& values, double dy);

}  // namespace gelswell
