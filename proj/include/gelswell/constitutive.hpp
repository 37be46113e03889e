#pragma once

/**
 * @file constitutive.hpp
 * @brief Energies and stress functions of the 1-D gel model.
 *
 * All functions take the polymer volume fraction phi (or its reciprocal
 * psi = 1/phi) and a validated ParameterSet. Arguments outside the clamped
 * interval [phiClampMin, 1 - phiClampMin] raise DomainError instead of being
 * silently clamped.
 */

#include <vector>

#include "gelswell/parameters.hpp"

namespace gelswell::constitutive {

/// Flory interaction parameter chi0 + chi1 phi + chi2 phi^2, phi in [0,1].
double chi(double phi, const ParameterSet& p);

/// Flory-Huggins mixing energy density (kT/N1) phi log phi + (kT/N2)(1-phi) log(1-phi) + (kT chi/2) phi (1-phi).
double mixingEnergy(double phi, const ParameterSet& p);

/// The four terms of the isotropic elastic energy for F = diag(detF, 1, 1).
struct ElasticTerms {
    double invariant;   ///< I1^s - 3^s
    double volumetric;  ///< alpha0 (I3^{-r/2} - 1)
    double linear;      ///< beta0 I3^{1/2}
    double power;       ///< beta1 I3^{q/2}
    double total() const { return invariant + volumetric + linear + power; }
};

ElasticTerms elasticTerms(double detF, const ParameterSet& p);

/// Raw elastic energy W_P with the offset constant c = 3^s.
double elasticEnergy(double detF, const ParameterSet& p);

/// W_P shifted by -(beta0 + beta1) so that it vanishes at detF = 1.
double elasticEnergyShifted(double detF, const ParameterSet& p);

/// Effective 1-D stress G(phi), evaluated term for term from the model.
/// The chi1, chi2 terms carry no kT factor.
double G(double phi, const ParameterSet& p);

/// Closed-form dG/dphi.
double dG(double phi, const ParameterSet& p);

/// Fully permeable interface traction balance; roots are candidate phi*.
double saturationResidual(double phi, const ParameterSet& p);

/// F(psi) = int_{1/psiStar}^{1/psi} sigma G'(sigma) dsigma, adaptive quadrature to 1e-13 (absolute or relative).
double fluxPotential(double psi, const ParameterSet& p, double psiStar);

/// dF/dpsi = -G'(1/psi) / psi^3.
double fluxPotentialDerivative(double psi, const ParameterSet& p);

/// Throws DomainError unless phi lies in [phiClampMin, 1 - phiClampMin].
void checkClamped(double phi, const ParameterSet& p, const char* what);

/**
 * Tabulated F(psi) for solver inner loops.
 *
 * Knots are uniformly spaced and centred on psiStar (so F(psiStar) = 0
 * exactly); values come from segment-wise quadrature, derivatives from the
 * closed form, and evaluation uses cubic Hermite interpolation. Outside the
 * table the direct quadrature is used. Read-only after construction.
 */
class FluxPotentialTable {
public:
    FluxPotentialTable(const ParameterSet& p, double psiStar, double psiMin, double psiMax,
                       int knots = 4096);

    /// Default range: psiStar +/- (psiStar - 1)/2, clipped to the clamp interval.
    FluxPotentialTable(const ParameterSet& p, double psiStar);

    double operator()(double psi) const;
    /// int_{psi*}^{psi} F, exact for the Hermite interpolant inside the table.
    double antiderivative(double psi) const;
    bool inRange(double psi) const noexcept { return psi >= lo_ && psi <= hi_; }
    double psiStar() const noexcept { return psiStar_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    ParameterSet params_;
    double psiStar_;
    double lo_ = 0.0, hi_ = 0.0, h_ = 0.0;
    std::vector<double> value_;
    std::vector<double> slope_;
    std::vector<double> integral_;  ///< antiderivative at the knots, 0 at psi*
};

}  // namespace gelswell::constitutive
