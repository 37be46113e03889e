#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gelswell/constitutive.hpp"
#include "gelswell/errors.hpp"
#include "gelswell/hyperbolicity.hpp"
#include "gelswell/quadrature.hpp"
#include "support.hpp"

using namespace gelswell;
using namespace gelswell::constitutive;
using testing_support::polymer;
using testing_support::polysaccharide;

namespace {

// Independent long-double transcriptions used as dual-path oracles.
long double mixingOracle(long double phi, const ParameterSet& p) {
    const long double chiv = p.chi0 + p.chi1 * phi + p.chi2 * phi * phi;
    const long double kT = p.kT;
    return kT / p.N1 * phi * std::log(phi) + kT / p.N2 * (1 - phi) * std::log(1 - phi) + kT * chiv / 2 * phi * (1 - phi);
}

long double gOracle(long double phi, const ParameterSet& p) {
    const long double kT = p.kT, pI = p.phiI;
    long double g = kT * std::log(1 - phi) / p.N2 - kT * std::log(phi) / p.N1;
    g += (p.q - 1) * p.beta1 * std::pow(pI / phi, (long double)p.q);
    g -= (1 + p.r) * p.alpha0 * std::pow(pI, (long double)-p.r) * std::pow(phi, (long double)p.r);
    g += std::pow(2 + pI * pI / (phi * phi), (long double)p.s) * (2 * p.s * pI * pI / (pI * pI + 2 * phi * phi) - 1);
    g += kT * p.chi0 * phi - 2 * p.chi1 * phi + 3 * (p.chi1 - p.chi2) * phi * phi + 4 * p.chi2 * phi * phi * phi;
    return g;
}

// Relative step near cbrt(machine eps), smaller when G has a steep power term.
double fdStep(double x, const ParameterSet& p) { return x * std::min(1e-6, 1e-4 / p.q); }

}  // namespace

TEST(Chi, ConstantTermAtZero) {
    const auto p = polymer();
    EXPECT_DOUBLE_EQ(chi(0.0, p), p.chi0);
}

TEST(Chi, TableRows) {
    EXPECT_NEAR(chi(1.0, polymer()), 0.64, 1e-15);
    EXPECT_NEAR(chi(0.5, polysaccharide()), 0.494, 1e-15);
}

TEST(Chi, RejectsOutsideUnitInterval) {
    EXPECT_THROW(chi(-0.1, polymer()), DomainError);
    EXPECT_THROW(chi(1.5, polymer()), DomainError);
}

TEST(MixingEnergy, SymmetricIdealMixture) {
    ParameterSet p;
    p.N1 = p.N2 = 1.0;
    p.chi0 = p.chi1 = p.chi2 = 0.0;
    EXPECT_NEAR(mixingEnergy(0.5, p), std::log(0.5), 1e-15);
}

TEST(MixingEnergy, FiniteNearClamp) {
    const auto p = polymer();
    const double v = mixingEnergy(p.phiClampMin * 1.0001, p);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LT(std::abs(v), 1e-3);
}

TEST(MixingEnergy, DualPathPolymer) {
    const auto p = polymer();
    for (const double phi : {0.05, 0.3, 0.6, 0.9}) {
        const double ref = static_cast<double>(mixingOracle(phi, p));
        EXPECT_NEAR(mixingEnergy(phi, p), ref, 1e-12 * std::abs(ref)) << "phi=" << phi;
    }
}

TEST(MixingEnergy, RejectsOutsideClamp) {
    const auto p = polymer();
    EXPECT_THROW(mixingEnergy(0.0, p), DomainError);
    EXPECT_THROW(mixingEnergy(1.0, p), DomainError);
}

TEST(ElasticEnergy, ShiftedVanishesUndeformed) {
    for (const auto& p : {polymer(), polysaccharide()}) EXPECT_NEAR(elasticEnergyShifted(1.0, p), 0.0, 1e-12);
}

TEST(ElasticEnergy, TermsSumToTotal) {
    const auto p = polymer();
    const auto t = elasticTerms(0.9, p);
    EXPECT_DOUBLE_EQ(t.total(), t.invariant + t.volumetric + t.linear + t.power);
    EXPECT_THROW(elasticTerms(0.0, p), DomainError);
}

TEST(G, DualPathBothSets) {
    for (const auto& p : {polymer(), polysaccharide()})
        for (const double phi : {0.06, 0.2, 0.45, 0.7, 0.95}) {
            const double ref = static_cast<double>(gOracle(phi, p));
            EXPECT_NEAR(G(phi, p), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "phi=" << phi;
        }
}

TEST(G, PolymerOverflowKeepsSign) {
    const auto p = polymer();
    EXPECT_EQ(G(0.01, p), std::numeric_limits<double>::infinity());
    EXPECT_EQ(dG(0.01, p), -std::numeric_limits<double>::infinity());
}

TEST(DG, MatchesFiniteDifferencesAtRandomPoints) {
    std::mt19937_64 rng(20240611);
    for (const auto& p : {polymer(), polysaccharide()}) {
        std::uniform_real_distribution<double> dist(0.03, 0.97);
        for (int k = 0; k < 100; ++k) {
            const double phi = dist(rng);
            const double h = fdStep(phi, p);
            const double fd = (G(phi + h, p) - G(phi - h, p)) / (2.0 * h);
            const double exact = dG(phi, p);
            EXPECT_LT(std::abs(fd - exact), 1e-6 * std::abs(exact)) << "phi=" << phi;
        }
    }
}

TEST(Saturation, PolymerRootResidual) {
    const auto p = polymer();
    const auto root = hyperbolicity::admissiblePhiStar(p);
    EXPECT_NEAR(root.phi, 0.9007779662, 1e-9);
    EXPECT_LT(std::abs(saturationResidual(root.phi, p)), 1e-10);
}

TEST(FluxPotential, VanishesAtReference) {
    const auto p = polymer();
    EXPECT_EQ(fluxPotential(1.2, p, 1.2), 0.0);
}

TEST(FluxPotential, DerivativeMatchesFiniteDifferences) {
    std::mt19937_64 rng(7);
    for (const auto& p : {polymer(), polysaccharide()}) {
        const double ref = 1.0 / 0.5;
        std::uniform_real_distribution<double> dist(0.03, 0.97);
        for (int k = 0; k < 100; ++k) {
            const double psi = 1.0 / dist(rng);
            const double h = fdStep(psi, p);
            const double fd = (fluxPotential(psi + h, p, ref) - fluxPotential(psi - h, p, ref)) / (2.0 * h);
            const double exact = fluxPotentialDerivative(psi, p);
            EXPECT_LT(std::abs(fd - exact), 1e-6 * std::abs(exact)) << "psi=" << psi;
        }
    }
}

TEST(FluxPotential, DerivativeClosedForm) {
    const auto p = polymer();
    const double psi = 1.2;
    EXPECT_DOUBLE_EQ(fluxPotentialDerivative(psi, p), -dG(1.0 / psi, p) / (psi * psi * psi));
}

TEST(FluxPotentialTable, AgreesWithDirectQuadrature) {
    const auto p = polymer();
    const double psiStar = 1.0 / hyperbolicity::admissiblePhiStar(p).phi;
    const FluxPotentialTable table(p, psiStar);
    EXPECT_EQ(table(psiStar), 0.0);
    for (int k = 0; k <= 50; ++k) {
        const double psi = table.lo() + (table.hi() - table.lo()) * k / 50.0;
        EXPECT_NEAR(table(psi), fluxPotential(psi, p, psiStar), 1e-10) << "psi=" << psi;
    }
    // outside the table it defers to the quadrature
    EXPECT_DOUBLE_EQ(table(table.hi() + 0.01), fluxPotential(table.hi() + 0.01, p, psiStar));
}

TEST(FluxPotentialTable, AntiderivativeMatchesQuadrature) {
    const auto p = polymer();
    const double psiStar = 1.0 / hyperbolicity::admissiblePhiStar(p).phi;
    const FluxPotentialTable table(p, psiStar);
    EXPECT_EQ(table.antiderivative(psiStar), 0.0);
    for (const double psi : {table.lo(), 1.08, 1.13, table.hi(), table.hi() + 0.02}) {
        const auto ref = quadrature::integrate([&](double s) { return fluxPotential(s, p, psiStar); }, psiStar, psi, 1e-13);
        EXPECT_NEAR(table.antiderivative(psi), ref.value, 1e-11) << "psi=" << psi;
    }
}

TEST(FluxPotentialTable, AntiderivativeIsConvexNearEquilibrium) {
    // H'' = F' = -G'(1/psi)/psi^3 > 0 where G' < 0
    const auto p = polymer();
    const double psiStar = 1.0 / hyperbolicity::admissiblePhiStar(p).phi;
    const FluxPotentialTable table(p, psiStar);
    for (const double d : {-0.03, -0.01, 0.01, 0.03}) EXPECT_GT(table.antiderivative(psiStar + d), 0.0);
}
