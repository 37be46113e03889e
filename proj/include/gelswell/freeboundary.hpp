#pragma once

/**
 * @file freeboundary.hpp
 * @brief Physical <-> mass-Lagrangian coordinate maps and interface tracking.
 *
 * The gel occupies [-S1(t), S2(t)]. With dy = phi dx and unit total polymer
 * mass the moving interval maps onto y in [0,1]; conversely
 * x(y) = -S1 + int_0^y psi dy'.
 */

#include <optional>
#include <string>
#include <vector>

#include "gelswell/state.hpp"

namespace gelswell::freeboundary {

/// phi sampled at strictly increasing physical nodes x[0] = -S1 ... x[m-1] = S2.
struct PhysicalProfile {
    std::vector<double> x;
    std::vector<double> phi;
};

struct MassLagrangianProfile {
    std::vector<double> yAtNodes;  ///< y(x_j), cumulative trapezoid, y(-S1)=0, y(S2)=1
    std::vector<double> y;         ///< uniform output nodes k/(n-1)
    std::vector<double> phi;       ///< phi resampled at y (monotone cubic)
    double S1 = 0.0;
    double S2 = 0.0;
    double mass = 1.0;             ///< int phi dx before normalisation
    bool rescaled = false;
    std::vector<std::string> warnings;
};

/// Throws NonMonotone if y(x) is not strictly increasing, DomainError if phi leaves (0,1).
/// A total mass off 1 by more than 1e-8 is rescaled to 1 with a warning.
MassLagrangianProfile toMassLagrangian(const PhysicalProfile& profile, std::size_t nOut);

/// Nodes y = 0, cell centres, y = 1 with the boundary value psiStar at both ends.
struct PhysicalGrid {
    std::vector<double> y;
    std::vector<double> psi;
    std::vector<double> x;
};

PhysicalGrid reconstructX(const StateField& state, double psiStar, double S1);

/// Reconstructed domain length int_0^1 psi dy (trapezoid on the node set of reconstructX).
double domainLength(const StateField& state, double psiStar);

/// int phi dx over the reconstructed domain; analytically 1.
double physicalMass(const StateField& state, double psiStar);

/// Linear extrapolation of a cell-centred field to y = 0 and y = 1.
std::pair<double, double> boundaryValues(const std::vector<double>& cells);

struct InterfaceTrack {
    std::vector<double> times;
    std::vector<double> S1;
    std::vector<double> S2;
    std::vector<double> lengthCheck;  ///< (S1 + S2) - domainLength(state)
    double uLeft = 0.0;               ///< boundary velocities at the last recorded time
    double uRight = 0.0;
};

/// Starts a track at state.t with S1 = S2 = L; L defaults to half the reconstructed length.
InterfaceTrack startTrack(const StateField& state, double psiStar, std::optional<double> L = std::nullopt);

/**
 * Advances S1' = -(1 - phi*) u(0), S2' = (1 - phi*) u(1) over one step of
 * length dt ending at `state` (trapezoidal in time, boundary u extrapolated
 * linearly) and appends the new point.
 */
void advanceInterfaces(InterfaceTrack& track, const StateField& state, double dt, double psiStar);

}  // namespace gelswell::freeboundary
