#include <gtest/gtest.h>

#include <cmath>

#include "gelswell/characteristics.hpp"
#include "gelswell/errors.hpp"
#include "gelswell/solver.hpp"
#include "support.hpp"

using namespace gelswell;
using namespace gelswell::characteristics;
using testing_support::polymer;

namespace {

solver::SimConfig config(std::size_t n, double tEnd, double epsEta, std::size_t every = 10) {
    solver::SimConfig c;
    c.n = n;
    c.tEnd = tEnd;
    c.outputEvery = every;
    c.profile.epsEta = epsEta;
    return c;
}

const solver::SimulationRecord& equilibriumRecord() {
    static const auto rec = [] {
        const auto c = config(64, 4.0, 0.0, 50);
        return solver::run(c, solver::makeModel(c, polymer()));
    }();
    return rec;
}

const solver::SimulationRecord& perturbedRecord() {
    static const auto rec = [] {
        const auto c = config(128, 4.0, 1e-2, 5);
        return solver::run(c, solver::makeModel(c, polymer()));
    }();
    return rec;
}

}  // namespace

TEST(Diagonal, VanishesAtEquilibrium) {
    const auto& rec = equilibriumRecord();
    const auto d = toDiagonal(rec.snapshots.back(), polymer(), rec.psiStar);
    const auto s = supNormsOf(d);
    EXPECT_EQ(s.U1(), 0.0);
    EXPECT_EQ(s.U2(), 0.0);
    const auto series = supNorms(rec, polymer());
    EXPECT_EQ(series.times.size(), rec.snapshots.size());
    for (std::size_t k = 0; k < series.times.size(); ++k) EXPECT_EQ(series.U1[k] + series.U2[k], 0.0);
}

TEST(Diagonal, UniformVelocityIsSeenByBothFamilies) {
    const auto p = polymer();
    const double psiStar = 1.0 / hyperbolicity::admissiblePhiStar(p).phi;
    const auto s = StateField::uniform(32, psiStar, 0.01);
    const auto d = toDiagonal(s, p, psiStar);
    for (std::size_t i = 0; i < 32; ++i) {
        EXPECT_DOUBLE_EQ(d.v1[i], 0.01);
        EXPECT_DOUBLE_EQ(d.v2[i], 0.01);
        EXPECT_EQ(d.w1[i], 0.0);
        EXPECT_EQ(d.w2[i], 0.0);
    }
}

TEST(Diagonal, InitialNormScalesLinearlyWithAmplitude) {
    const auto p = polymer();
    auto norm = [&](double eps) {
        const auto c = config(256, 0.0, eps);
        const auto model = solver::makeModel(c, p);
        return supNormsOf(toDiagonal(solver::init(c, model), p, model.psiStar()));
    };
    const auto a = norm(1e-3), b = norm(2e-3);
    EXPECT_GE(b.U1() / a.U1(), 1.9);
    EXPECT_LE(b.U1() / a.U1(), 2.1);
    EXPECT_GE(b.U2() / a.U2(), 1.9);
    EXPECT_LE(b.U2() / a.U2(), 2.1);
}

TEST(Diagonal, SupNormsTakePointwiseMaxima) {
    CharacteristicState c;
    c.v1 = {0.1, -0.3};
    c.v2 = {0.2, 0.0};
    c.w1 = {-1.0, 0.5};
    c.w2 = {2.0, 0.0};
    const auto s = supNormsOf(c);
    EXPECT_DOUBLE_EQ(s.V1, 0.3);
    EXPECT_DOUBLE_EQ(s.V2, 0.2);
    EXPECT_DOUBLE_EQ(s.U1(), 0.3);
    EXPECT_DOUBLE_EQ(s.U2(), 2.0);
}

TEST(Diagonal, BoundaryResiduals) {
    // eta = 0 at the wall makes v1 = v2 there; the gradient relation is w1 + w2 = 2 u_y -> 0
    const auto p = polymer();
    std::vector<double> dv, sw;
    for (const std::size_t n : {64u, 128u, 256u}) {
        const auto c = config(n, 1.0, 1e-3, 100000);
        const auto model = solver::makeModel(c, p);
        const auto rec = solver::run(c, model);
        ASSERT_EQ(rec.terminationReason, "t_end");
        const auto d = toDiagonal(rec.snapshots.back(), p, model.psiStar());
        double a = 0.0, b = 0.0;
        for (const std::size_t i : {std::size_t{0}, n - 1}) {
            a = std::max(a, std::abs(d.v1[i] - d.v2[i]));
            b = std::max(b, std::abs(d.w1[i] + d.w2[i]));
        }
        EXPECT_LT(a, 0.05 * (1.0 / n)) << "n=" << n;
        dv.push_back(a);
        sw.push_back(b);
    }
    for (std::size_t k = 1; k < dv.size(); ++k) {
        EXPECT_GE(std::log2(dv[k - 1] / dv[k]), 0.8);
        EXPECT_LT(sw[k], sw[k - 1]);
    }
}

TEST(Kappa, ClosedForm) {
    const auto p = polymer();
    EXPECT_DOUBLE_EQ(kappa(p, 1.25), p.betaDrag * 1.25 * 1.25 / (2.0 * 0.25));
    EXPECT_NEAR(kappa(p, 1.110151488499126), 5.594 * p.betaDrag, 1e-3);
    EXPECT_EQ(kappa(p.withDrag(0.0), 1.2), 0.0);
}

TEST(BoundY, EqualsInitialValueAtT) {
    // at t = T the bound is (delta + (e^{kT} - 1) eps + C eps^2) e^{-kT}
    const double k = 2.0, T = 0.5, d = 0.01, e = 0.02, C = 3.0;
    const double g = std::exp(k * T);
    EXPECT_NEAR(boundY(T, T, d, e, C, k), (d + (g - 1.0) * e + C * e * e) / g, 1e-16);
    // with no drag growth the bound is delta + C eps^2 over a Riccati denominator
    const double a = d + C * e * e;
    EXPECT_NEAR(boundY(T + 1.0, T, d, e, C, 0.0), a / (1.0 - C * a), 1e-15);
}

TEST(BoundY, IncreasesAndBlowsUp) {
    const double k = 1.0, T = 0.2, d = 0.05, e = 0.05, C = 4.0;
    double prev = 0.0;
    for (double t = T; t < T + 3.0; t += 0.25) {
        const double y = boundY(t, T, d, e, C, k);
        EXPECT_GT(y, prev);
        prev = y;
    }
    const double g = std::exp(k * T);
    const double a = (d + (g - 1.0) * e + C * e * e) / g;
    EXPECT_THROW(boundY(T + 1.0 / (C * a) + 1e-9, T, d, e, C, k), BoundBlowup);
    EXPECT_THROW(boundY(0.1, T, d, e, C, k), DomainError);
}

TEST(FitLine, ExactLineAndCorrelation) {
    const auto f = fitLine({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    ASSERT_TRUE(f.correlation);
    EXPECT_NEAR(*f.correlation, 1.0, 1e-14);
    const auto down = fitLine({1, 2, 3}, {3, 2, 1});
    EXPECT_NEAR(*down.correlation, -1.0, 1e-14);
}

TEST(FitLine, DegenerateInputs) {
    const auto two = fitLine({1, 2}, {0, 1});
    EXPECT_FALSE(two.correlation);
    const auto flat = fitLine({1, 2, 3}, {5, 5, 5});
    EXPECT_EQ(flat.slope, 0.0);
    EXPECT_EQ(*flat.correlation, 0.0);
    EXPECT_THROW(fitLine({1}, {1}), DomainError);
    EXPECT_THROW(fitLine({1, 2}, {1}), DomainError);
}

TEST(SpeedField, ConstantAtEquilibrium) {
    const auto& rec = equilibriumRecord();
    const SpeedField field(rec, polymer());
    const auto [l1, l2] = hyperbolicity::waveSpeeds(rec.psiStar, 0.0, polymer());
    EXPECT_NEAR(field(1, 0.3, 1.0), l1, 1e-14);
    EXPECT_NEAR(field(2, 0.0, 4.0), l2, 1e-14);
    EXPECT_NEAR(field.lambdaMax(), std::abs(l1), 1e-14);
    EXPECT_NEAR(field.lambdaMin(), std::abs(l1), 1e-14);
    EXPECT_THROW(field(1, 1.1, 1.0), InterpolationOutOfRange);
    EXPECT_THROW(field(1, 0.5, 4.5), InterpolationOutOfRange);
}

TEST(Trace, StraightLinesAtEquilibrium) {
    const auto& rec = equilibriumRecord();
    const SpeedField field(rec, polymer());
    const double c = field.lambdaMax();
    const auto tr = traceCharacteristic(field, 2, 0.3, 4.0);
    EXPECT_TRUE(tr.reachedInitialLine);
    EXPECT_EQ(tr.path.back().tau, 0.0);
    ASSERT_GE(tr.reflections.size(), 2u);
    EXPECT_EQ(tr.reflections[0].boundary, 0);
    EXPECT_EQ(tr.reflections[0].familyBefore, 2);
    EXPECT_NEAR(tr.reflections[0].tau, 4.0 - 0.3 / c, 1e-10);
    EXPECT_EQ(tr.reflections[1].boundary, 1);
    EXPECT_NEAR(tr.reflections[1].tau, 4.0 - 1.3 / c, 1e-10);
    // the whole path stays in the strip and tau decreases
    for (std::size_t k = 1; k < tr.path.size(); ++k) {
        EXPECT_LE(tr.path[k].tau, tr.path[k - 1].tau);
        EXPECT_GE(tr.path[k].xi, 0.0);
        EXPECT_LE(tr.path[k].xi, 1.0);
    }
    const double T = 1.0 / c;
    EXPECT_TRUE(checkReflectionTimes(tr, T, T).ok);
}

TEST(Trace, DepthLimitStopsEarly) {
    const SpeedField field(equilibriumRecord(), polymer());
    TraceOptions o;
    o.maxReflections = 1;
    const auto tr = traceCharacteristic(field, 1, 0.5, 4.0, o);
    EXPECT_FALSE(tr.reachedInitialLine);
    EXPECT_EQ(tr.reflections.size(), 1u);
    EXPECT_THROW(traceCharacteristic(field, 3, 0.5, 1.0), DomainError);
}

TEST(Trace, InequalitiesHoldOnPerturbedRun) {
    const auto& rec = perturbedRecord();
    ASSERT_EQ(rec.terminationReason, "t_end");
    const SpeedField field(rec, polymer());
    const double T1 = 1.0 / field.lambdaMax(), T2 = 1.0 / field.lambdaMin();
    EXPECT_LT(T1, T2);
    for (const int family : {1, 2})
        for (const double x : {0.0, 0.1, 0.37, 0.5, 0.8, 1.0}) {
            const auto tr = traceCharacteristic(field, family, x, rec.snapshots.back().t);
            EXPECT_TRUE(tr.reachedInitialLine);
            const auto check = checkReflectionTimes(tr, T1, T2);
            EXPECT_TRUE(check.ok) << "family " << family << " x=" << x
                                  << (check.violations.empty() ? "" : ": " + check.violations.front());
            EXPECT_GE(check.checked, 2);
            EXPECT_NEAR(recoverAnchor(field, tr), x, 1e-8) << "family " << family << " x=" << x;
        }
}

TEST(Trace, MirrorSymmetricPaths) {
    // symmetric eta with u = 0 gives lambda_1(y) = -lambda_2(1 - y)
    const auto& rec = perturbedRecord();
    const SpeedField field(rec, polymer());
    const double t = rec.snapshots.back().t;
    const auto a = traceCharacteristic(field, 1, 0.2, t);
    const auto b = traceCharacteristic(field, 2, 0.8, t);
    ASSERT_EQ(a.reflections.size(), b.reflections.size());
    for (std::size_t k = 0; k < a.reflections.size(); ++k) {
        EXPECT_NEAR(a.reflections[k].tau, b.reflections[k].tau, 1e-9);
        EXPECT_EQ(a.reflections[k].boundary, 1 - b.reflections[k].boundary);
    }
}

TEST(Trace, CheckerFlagsViolations) {
    CharacteristicTrace tr;
    tr.t = 10.0;
    tr.reflections = {{0, 9.0, 2}, {1, 8.8, 1}};
    const auto check = checkReflectionTimes(tr, 1.0, 2.0);
    EXPECT_FALSE(check.ok);
    EXPECT_FALSE(check.violations.empty());
    tr.reflections = {{0, 9.0, 2}, {1, 7.5, 1}};
    EXPECT_TRUE(checkReflectionTimes(tr, 1.0, 2.0).ok);
}

TEST(Trace, ForwardIntegrationIsStraightAtEquilibrium) {
    const SpeedField field(equilibriumRecord(), polymer());
    const double c = field.lambdaMax();
    EXPECT_NEAR(integrateForward(field, 2, 0.1, 1.0, 1.5), 0.1 + 0.5 * c, 1e-12);
    EXPECT_NEAR(integrateForward(field, 1, 0.9, 1.0, 1.5), 0.9 - 0.5 * c, 1e-12);
}

TEST(Lifetime, SingleRowHasNoFit) {
    auto templ = config(64, 0.5, 0.0, 1000);
    const auto table = lifetimeStudy(polymer(), templ, {1e-3});
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_FALSE(table.fit);
    EXPECT_EQ(table.rows[0].reason, "t_end");
    EXPECT_EQ(table.rows[0].tExit, 0.5);
    EXPECT_GT(table.rows[0].initialNorm, 0.0);
}

TEST(Lifetime, EpsListMustDecrease) {
    const auto templ = config(64, 0.5, 0.0, 1000);
    EXPECT_THROW(lifetimeStudy(polymer(), templ, {1e-3, 1e-2}), DomainError);
    EXPECT_THROW(lifetimeStudy(polymer(), templ, {1e-3, -1e-2}), DomainError);
    EXPECT_THROW(lifetimeStudy(polymer(), templ, {}), DomainError);
}

TEST(Lifetime, LargeAmplitudeWithoutDragExits) {
    auto templ = config(128, 10.0, 0.0, 1000);
    templ.betaDrag = 0.0;
    const auto row = lifetimeRun(polymer(), templ, 0.1);
    EXPECT_EQ(row.reason, "norm_exceeded");
    EXPECT_LT(row.tExit, 10.0);
    EXPECT_GT(row.tExit, 0.0);
}

TEST(Lifetime, FitUsesAbsLogEps) {
    std::vector<LifetimeRow> rows = {{1e-1, 2.0, "norm_exceeded", 0}, {1e-2, 4.0, "norm_exceeded", 0},
                                     {1e-3, 6.0, "norm_exceeded", 0}};
    const auto fit = lifetimeFit(rows);
    ASSERT_TRUE(fit);
    EXPECT_NEAR(fit->slope, 2.0 / std::log(10.0), 1e-12);
    EXPECT_NEAR(*fit->correlation, 1.0, 1e-12);
    EXPECT_FALSE(lifetimeFit({rows[0]}));
}
