#pragma once

/**
 * @file hyperbolicity.hpp
 * @brief Eigenstructure of the mass-Lagrangian (psi, u) system and the
 *        conditions for a well-posed boundary value problem.
 */

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gelswell/parameters.hpp"

namespace gelswell::hyperbolicity {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;  ///< row-major

/// Gradient matrix of the flux at (psi, u).
Mat2 jacobian(double psi, double u, const ParameterSet& p);

struct EigenSystem {
    double lambda1 = 0.0, lambda2 = 0.0;
    Vec2 L1{}, L2{};  ///< left eigenvectors (rows)
    Vec2 R1{}, R2{};  ///< right eigenvectors (columns)
    double hypMargin = 0.0;  ///< -(u^2 + G'(1/psi)); > 0 iff hyperbolic
    double ncMargin = 0.0;   ///< (1-psi)/psi G'(1/psi) - u^2; > 0 iff non-characteristic
    double uklGamma = 0.0;   ///< psi sqrt((1-psi)/(u^2 + G'(1/psi)))
};

/// Throws NotHyperbolic (carrying hypMargin) unless u^2 + G'(1/psi) < 0.
EigenSystem eigensystem(double psi, double u, const ParameterSet& p);

/// Both wave speeds only; same preconditions as eigensystem.
std::pair<double, double> waveSpeeds(double psi, double u, const ParameterSet& p);

struct ConditionReport {
    bool hyperbolic = false;
    bool nonCharacteristic = false;
    std::optional<double> uklGamma;  ///< absent where the radicand is not positive
    double hypMargin = 0.0;
    double ncMargin = 0.0;
};

ConditionReport checkConditions(double psi, double u, const ParameterSet& p);

struct Interval {
    double lo = 0.01;
    double hi = 0.99;
};

/// Ascending roots of G' located from sign changes on an n-point scan, refined to 1e-12.
std::vector<double> findPhiCritical(const ParameterSet& p, Interval interval = {}, int n = 10000);

struct SaturationRoot {
    double phi = 0.0;
    double psi = 0.0;
    bool admissible = false;  ///< G'(phi*) < 0
};

/// All sign-change roots of the saturation residual; throws NoRoot if none.
std::vector<SaturationRoot> solvePhiStar(const ParameterSet& p, Interval interval = {}, int n = 10000);

/// The first admissible root of solvePhiStar; throws NoRoot if there is none.
SaturationRoot admissiblePhiStar(const ParameterSet& p, Interval interval = {}, int n = 10000);

struct MarginPoint {
    double phi = 0.0;
    double u = 0.0;
    double hypMargin = 0.0;
    double ncMargin = 0.0;
    std::optional<double> uklGamma;
};

/// Row-major (phi outer, u inner) grid of condition margins.
std::vector<MarginPoint> scanRegion(const ParameterSet& p, Interval phiRange, Interval uRange, int nPhi, int nU);

}  // namespace gelswell::hyperbolicity
