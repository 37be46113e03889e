#include "gelswell/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gelswell/errors.hpp"
#include "gelswell/quadrature.hpp"

namespace gelswell::constitutive {

void checkClamped(double phi, const ParameterSet& p, const char* what) {
    if (!(phi >= p.phiClampMin && phi <= 1.0 - p.phiClampMin)) {
        std::ostringstream msg;
        msg << what << ": phi = " << phi << " outside [" << p.phiClampMin << ", " << 1.0 - p.phiClampMin << "]";
        throw DomainError(msg.str());
    }
}

double chi(double phi, const ParameterSet& p) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw DomainError("chi: phi outside [0,1]");
    return p.chi0 + p.chi1 * phi + p.chi2 * phi * phi;
}

double mixingEnergy(double phi, const ParameterSet& p) {
    checkClamped(phi, p, "mixingEnergy");
    const double solvent = 1.0 - phi;
    const double a = p.kT / p.N1;
    const double b = p.kT / p.N2;
    const double c = 0.5 * p.kT * chi(phi, p);
    return a * phi * std::log(phi) + b * solvent * std::log(solvent) + c * phi * solvent;
}

ElasticTerms elasticTerms(double detF, const ParameterSet& p) {
    if (!(detF > 0.0)) throw DomainError("elasticEnergy: detF must be positive");
    const double I3 = detF * detF;
    const double I1 = I3 + 2.0;
    return {
        std::pow(I1, p.s) - std::pow(3.0, p.s),
        p.alpha0 * (std::pow(I3, -0.5 * p.r) - 1.0),
        p.beta0 * std::sqrt(I3),
        p.beta1 * std::pow(I3, 0.5 * p.q),
    };
}

double elasticEnergy(double detF, const ParameterSet& p) { return elasticTerms(detF, p).total(); }

double elasticEnergyShifted(double detF, const ParameterSet& p) {
    return elasticEnergy(detF, p) - (p.beta0 + p.beta1);
}

double G(double phi, const ParameterSet& p) {
    checkClamped(phi, p, "G");
    const double kT = p.kT;
    const double ratio2 = (p.phiI * p.phiI) / (phi * phi);
    const double logs = kT * std::log(1.0 - phi) / p.N2 - kT * std::log(phi) / p.N1;
    const double network = (p.q - 1.0) * p.beta1 * std::pow(p.phiI / phi, p.q) -
                           (1.0 + p.r) * p.alpha0 * std::pow(p.phiI, -p.r) * std::pow(phi, p.r);
    const double invariant =
        std::pow(2.0 + ratio2, p.s) * (2.0 * p.s * p.phiI * p.phiI / (p.phiI * p.phiI + 2.0 * phi * phi) - 1.0);
    const double interaction = kT * p.chi0 * phi - 2.0 * p.chi1 * phi + 3.0 * (p.chi1 - p.chi2) * phi * phi +
                               4.0 * p.chi2 * phi * phi * phi;
    return logs + network + invariant + interaction;
}

double dG(double phi, const ParameterSet& p) {
    checkClamped(phi, p, "dG");
    const double kT = p.kT;
    const double pI2 = p.phiI * p.phiI;
    const double logs = -kT / (p.N2 * (1.0 - phi)) - kT / (p.N1 * phi);
    const double network = -p.q * (p.q - 1.0) * p.beta1 * std::pow(p.phiI / phi, p.q) / phi -
                           p.r * (1.0 + p.r) * p.alpha0 * std::pow(p.phiI, -p.r) * std::pow(phi, p.r - 1.0);
    // (A^s B)' with A = 2 + phiI^2/phi^2, B = 2 s phiI^2 / (phiI^2 + 2 phi^2) - 1
    const double A = 2.0 + pI2 / (phi * phi);
    const double dA = -2.0 * pI2 / (phi * phi * phi);
    const double den = pI2 + 2.0 * phi * phi;
    const double B = 2.0 * p.s * pI2 / den - 1.0;
    const double dB = -8.0 * p.s * pI2 * phi / (den * den);
    const double invariant = p.s * std::pow(A, p.s - 1.0) * dA * B + std::pow(A, p.s) * dB;
    const double interaction = kT * p.chi0 - 2.0 * p.chi1 + 6.0 * (p.chi1 - p.chi2) * phi + 12.0 * p.chi2 * phi * phi;
    return logs + network + invariant + interaction;
}

double saturationResidual(double phi, const ParameterSet& p) {
    checkClamped(phi, p, "saturationResidual");
    const double kT = p.kT;
    const double solvent = 1.0 - phi;
    const double ratio = p.phiI / phi;
    const double elastic =
        phi * (2.0 * p.s * std::pow(ratio * ratio + 2.0, p.s - 1.0) * ratio * ratio -
               p.alpha0 * std::pow(p.phiI, -p.r) * p.r * std::pow(phi, p.r) + p.beta0 * ratio +
               p.beta1 * p.q * std::pow(ratio, p.q));
    const double polymerPotential = 0.5 * kT * p.chi0 * solvent + kT / p.N1 * std::log(phi) + kT / p.N1 +
                                    2.0 * p.chi1 * phi * solvent + 3.0 * p.chi2 * phi * phi * solvent;
    const double solventPotential = 0.5 * kT * p.chi0 * phi + kT / p.N2 * std::log(solvent) + kT / p.N2 +
                                    p.chi1 * phi * phi + p.chi2 * phi * phi * phi;
    const double mixingDensity = 0.5 * kT * p.chi0 * phi * solvent + kT / p.N1 * phi * std::log(phi) +
                                 kT / p.N2 * solvent * std::log(solvent);
    const double mixing = phi * (polymerPotential - solventPotential) - mixingDensity + p.chi1 * phi * phi * solvent +
                          p.chi2 * phi * phi * solvent;
    return elastic - mixing;
}

namespace {

void checkPsi(double psi, const ParameterSet& p, const char* what) {
    if (!(psi > 1.0)) throw DomainError(std::string(what) + ": psi must exceed 1");
    checkClamped(1.0 / psi, p, what);
}

double sigmaIntegral(double sigmaFrom, double sigmaTo, const ParameterSet& p, double tol) {
    auto integrand = [&p](double sigma) { return sigma * dG(sigma, p); };
    return quadrature::integrate(integrand, sigmaFrom, sigmaTo, tol, 2000, 1e-13).value;
}

}  // namespace

double fluxPotential(double psi, const ParameterSet& p, double psiStar) {
    checkPsi(psi, p, "fluxPotential");
    checkPsi(psiStar, p, "fluxPotential(psiStar)");
    if (psi == psiStar) return 0.0;
    return sigmaIntegral(1.0 / psiStar, 1.0 / psi, p, 1e-13);
}

double fluxPotentialDerivative(double psi, const ParameterSet& p) {
    checkPsi(psi, p, "fluxPotentialDerivative");
    return -dG(1.0 / psi, p) / (psi * psi * psi);
}

FluxPotentialTable::FluxPotentialTable(const ParameterSet& p, double psiStar, double psiMin, double psiMax,
                                       int knots)
    : params_(p), psiStar_(psiStar) {
    checkPsi(psiStar, p, "FluxPotentialTable");
    if (!(psiMin <= psiStar && psiStar <= psiMax && psiMin < psiMax) || knots < 4)
        throw DomainError("FluxPotentialTable: need psiMin <= psiStar <= psiMax and >= 4 knots");
    checkPsi(psiMin, p, "FluxPotentialTable(psiMin)");
    checkPsi(psiMax, p, "FluxPotentialTable(psiMax)");

    h_ = (psiMax - psiMin) / (knots - 1);
    const int below = static_cast<int>(std::floor((psiStar - psiMin) / h_));
    const int above = static_cast<int>(std::floor((psiMax - psiStar) / h_));
    lo_ = psiStar - below * h_;
    hi_ = psiStar + above * h_;
    const int count = below + above + 1;
    value_.assign(count, 0.0);
    slope_.assign(count, 0.0);

    auto knot = [&](int k) { return psiStar + (k - below) * h_; };
    for (int k = 0; k < count; ++k) slope_[k] = fluxPotentialDerivative(knot(k), p);
    for (int k = below + 1; k < count; ++k)
        value_[k] = value_[k - 1] + sigmaIntegral(1.0 / knot(k - 1), 1.0 / knot(k), p, 1e-13);
    for (int k = below - 1; k >= 0; --k)
        value_[k] = value_[k + 1] + sigmaIntegral(1.0 / knot(k + 1), 1.0 / knot(k), p, 1e-13);

    auto segment = [&](int k) { return h_ * (0.5 * (value_[k] + value_[k + 1]) + h_ * (slope_[k] - slope_[k + 1]) / 12.0); };
    integral_.assign(count, 0.0);
    for (int k = below + 1; k < count; ++k) integral_[k] = integral_[k - 1] + segment(k - 1);
    for (int k = below - 1; k >= 0; --k) integral_[k] = integral_[k + 1] - segment(k);
}

FluxPotentialTable::FluxPotentialTable(const ParameterSet& p, double psiStar)
    : FluxPotentialTable(p, psiStar, std::max(psiStar - 0.5 * (psiStar - 1.0), 1.0 / (1.0 - p.phiClampMin)),
                         std::min(psiStar + 0.5 * (psiStar - 1.0), 1.0 / p.phiClampMin)) {}

double FluxPotentialTable::operator()(double psi) const {
    if (psi == psiStar_) return 0.0;
    if (!inRange(psi)) return fluxPotential(psi, params_, psiStar_);
    const double offset = (psi - lo_) / h_;
    auto k = static_cast<std::size_t>(offset);
    if (k + 1 >= value_.size()) k = value_.size() - 2;
    const double t = offset - static_cast<double>(k);
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * value_[k] + h10 * h_ * slope_[k] + h01 * value_[k + 1] + h11 * h_ * slope_[k + 1];
}

double FluxPotentialTable::antiderivative(double psi) const {
    if (!inRange(psi)) {
        // Rare: continue from the nearest table edge with direct quadrature of F.
        checkPsi(psi, params_, "FluxPotentialTable::antiderivative");
        const double edge = psi < lo_ ? lo_ : hi_;
        auto f = [this](double s) { return (*this)(s); };
        return antiderivative(edge) + quadrature::integrate(f, edge, psi, 1e-10).value;
    }
    const double offset = (psi - lo_) / h_;
    auto k = static_cast<std::size_t>(offset);
    if (k + 1 >= value_.size()) k = value_.size() - 2;
    const double t = offset - static_cast<double>(k);
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double i00 = 0.5 * t4 - t3 + t;
    const double i10 = 0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2;
    const double i01 = -0.5 * t4 + t3;
    const double i11 = 0.25 * t4 - t3 / 3.0;
    return integral_[k] +
           h_ * (i00 * value_[k] + i10 * h_ * slope_[k] + i01 * value_[k + 1] + i11 * h_ * slope_[k + 1]);
}

}  // namespace gelswell::constitutive
