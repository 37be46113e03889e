#include "gelswell/freeboundary.hpp"

#include <cmath>
#include <sstream>

#include "gelswell/detail/pchip.hpp"

#include "gelswell/errors.hpp"

namespace gelswell::freeboundary {

MassLagrangianProfile toMassLagrangian(const PhysicalProfile& profile, std::size_t nOut) {
    const std::size_t m = profile.x.size();
    if (m < 4 || profile.phi.size() != m) throw DomainError("toMassLagrangian: need >= 4 matching samples");
    if (nOut < 2) throw DomainError("toMassLagrangian: need >= 2 output nodes");
    for (std::size_t j = 0; j < m; ++j)
        if (!(profile.phi[j] > 0.0 && profile.phi[j] < 1.0))
            throw DomainError("toMassLagrangian: phi must lie in (0,1)");

    MassLagrangianProfile out;
    out.S1 = -profile.x.front();
    out.S2 = profile.x.back();
    out.yAtNodes.assign(m, 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double dx = profile.x[j] - profile.x[j - 1];
        out.yAtNodes[j] = out.yAtNodes[j - 1] + 0.5 * (profile.phi[j] + profile.phi[j - 1]) * dx;
        if (!(out.yAtNodes[j] > out.yAtNodes[j - 1])) {
            std::ostringstream msg;
            msg << "toMassLagrangian: cumulative mass not strictly increasing at x = " << profile.x[j];
            throw NonMonotone(msg.str());
        }
    }
    out.mass = out.yAtNodes.back();
    std::vector<double> phi = profile.phi;
    if (std::abs(out.mass - 1.0) > 1e-8) {
        out.rescaled = true;
        std::ostringstream msg;
        msg << "total polymer mass " << out.mass << " rescaled to 1";
        out.warnings.push_back(msg.str());
        for (auto& v : phi) v /= out.mass;
        for (auto& v : out.yAtNodes) v /= out.mass;
        for (const auto v : phi)
            if (!(v > 0.0 && v < 1.0)) throw DomainError("toMassLagrangian: rescaled phi leaves (0,1)");
    }
    out.yAtNodes.back() = 1.0;

    std::vector<double> ys = out.yAtNodes;
    std::vector<double> values = phi;
    boost::math::interpolators::pchip<std::vector<double>> interp(std::move(ys), std::move(values));
    out.y.resize(nOut);
    out.phi.resize(nOut);
    for (std::size_t k = 0; k < nOut; ++k) {
        out.y[k] = k + 1 == nOut ? 1.0 : static_cast<double>(k) / static_cast<double>(nOut - 1);
        out.phi[k] = interp(out.y[k]);
    }
    return out;
}

PhysicalGrid reconstructX(const StateField& state, double psiStar, double S1) {
    const std::size_t n = state.n;
    PhysicalGrid grid;
    grid.y.reserve(n + 2);
    grid.psi.reserve(n + 2);
    grid.y.push_back(0.0);
    grid.psi.push_back(psiStar);
    for (std::size_t i = 0; i < n; ++i) {
        grid.y.push_back(state.y[i]);
        grid.psi.push_back(state.psi[i]);
    }
    grid.y.push_back(1.0);
    grid.psi.push_back(psiStar);

    grid.x.assign(grid.y.size(), -S1);
    for (std::size_t k = 1; k < grid.y.size(); ++k)
        grid.x[k] = grid.x[k - 1] + 0.5 * (grid.psi[k] + grid.psi[k - 1]) * (grid.y[k] - grid.y[k - 1]);
    return grid;
}

double domainLength(const StateField& state, double psiStar) {
    const PhysicalGrid grid = reconstructX(state, psiStar, 0.0);
    return grid.x.back() - grid.x.front();
}

double physicalMass(const StateField& state, double psiStar) {
    const PhysicalGrid grid = reconstructX(state, psiStar, 0.0);
    double mass = 0.0;
    for (std::size_t k = 1; k < grid.x.size(); ++k)
        mass += 0.5 * (1.0 / grid.psi[k] + 1.0 / grid.psi[k - 1]) * (grid.x[k] - grid.x[k - 1]);
    return mass;
}

std::pair<double, double> boundaryValues(const std::vector<double>& cells) {
    const std::size_t n = cells.size();
    if (n < 2) throw DomainError("boundaryValues: need at least two cells");
    return {1.5 * cells[0] - 0.5 * cells[1], 1.5 * cells[n - 1] - 0.5 * cells[n - 2]};
}

InterfaceTrack startTrack(const StateField& state, double psiStar, std::optional<double> L) {
    InterfaceTrack track;
    const double length = domainLength(state, psiStar);
    const double half = L.value_or(0.5 * length);
    if (!(half > 0.0)) throw DomainError("startTrack: L must be positive");
    const auto [uL, uR] = boundaryValues(state.u);
    track.times.push_back(state.t);
    track.S1.push_back(half);
    track.S2.push_back(half);
    track.lengthCheck.push_back(2.0 * half - length);
    track.uLeft = uL;
    track.uRight = uR;
    return track;
}

void advanceInterfaces(InterfaceTrack& track, const StateField& state, double dt, double psiStar) {
    if (track.times.empty()) throw DomainError("advanceInterfaces: track not started");
    const double solventFraction = 1.0 - 1.0 / psiStar;
    const auto [uL, uR] = boundaryValues(state.u);
    const double s1 = track.S1.back() - dt * solventFraction * 0.5 * (track.uLeft + uL);
    const double s2 = track.S2.back() + dt * solventFraction * 0.5 * (track.uRight + uR);
    track.times.push_back(state.t);
    track.S1.push_back(s1);
    track.S2.push_back(s2);
    track.lengthCheck.push_back(s1 + s2 - domainLength(state, psiStar));
    track.uLeft = uL;
    track.uRight = uR;
}

}  // namespace gelswell::freeboundary
