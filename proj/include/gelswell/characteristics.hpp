#pragma once

/**
 * @file characteristics.hpp
 * @brief Diagonal (Riemann-type) variables, characteristic tracing with
 *        boundary reflections, sup-norm functionals and the lifetime study.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gelswell/parameters.hpp"
#include "gelswell/solver.hpp"
#include "gelswell/state.hpp"

namespace gelswell::characteristics {

/// v_i = L_i . (eta, u), w_i = L_i . (eta_y, u_y), L_i evaluated at (psi, u).
struct CharacteristicState {
    double t = 0.0;
    std::vector<double> y;
    std::vector<double> v1, v2, w1, w2;
};

CharacteristicState toDiagonal(const StateField& state, const ParameterSet& p, double psiStar);

/// beta psi*^2 / (2 (psi* - 1)).
double kappa(const ParameterSet& p, double psiStar);

struct SupNorms {
    double V1 = 0.0, V2 = 0.0, W1 = 0.0, W2 = 0.0;
    double U1() const { return std::max(V1, V2); }
    double U2() const { return std::max(W1, W2); }
};

SupNorms supNormsOf(const CharacteristicState& c);

struct SupNormSeries {
    std::vector<double> times;
    std::vector<double> V1, V2, W1, W2, U1, U2;
};

SupNormSeries supNorms(const solver::SimulationRecord& record, const ParameterSet& p);

/**
 * Wave speeds lambda_1 < 0 < lambda_2 of a recorded run, bilinear in (y, t).
 *
 * Nodes are y = 0, the cell centres and y = 1 (boundary state psi*, u
 * extrapolated linearly) at every snapshot time.
 */
class SpeedField {
public:
    SpeedField(const solver::SimulationRecord& record, const ParameterSet& p);

    /// Throws InterpolationOutOfRange outside [0,1] x [tMin, tMax].
    double operator()(int family, double y, double t) const;

    double tMin() const noexcept { return times_.front(); }
    double tMax() const noexcept { return times_.back(); }
    double lambdaMin() const noexcept { return absMin_; }  ///< min |lambda_i| over all nodes
    double lambdaMax() const noexcept { return absMax_; }  ///< max |lambda_i| over all nodes

private:
    std::vector<double> y_;
    std::vector<double> times_;
    std::vector<std::vector<double>> lambda1_, lambda2_;  // [snapshot][node]
    double absMin_ = 0.0, absMax_ = 0.0;
};

struct TracePoint {
    double tau = 0.0;
    double xi = 0.0;
    int family = 1;
};

struct Reflection {
    int boundary = 0;  ///< 0 or 1
    double tau = 0.0;
    int familyBefore = 1;  ///< family arriving at the boundary (backwards in time)
};

struct CharacteristicTrace {
    int family = 1;
    double x = 0.0, t = 0.0;  ///< anchor
    std::vector<TracePoint> path;  ///< tau decreasing from the anchor
    std::vector<Reflection> reflections;
    bool reachedInitialLine = false;
};

struct TraceOptions {
    double step = 1e-3;       ///< |d tau| of the RK4 steps
    int maxReflections = 16;  ///< depth limit
};

/**
 * Integrates d xi / d tau = lambda_i(xi, tau) backwards from (x, t) with RK4.
 * At y = 1 (family 1) or y = 0 (family 2) the reflection time is located to
 * 1e-13 in xi and the path continues on the other family.
 */
CharacteristicTrace traceCharacteristic(const SpeedField& field, int family, double x, double t,
                                        const TraceOptions& options = {});

/// Forward RK4 integration of one family from (xi0, tau0) to tau1 (no reflections).
double integrateForward(const SpeedField& field, int family, double xi0, double tau0, double tau1,
                        double step = 1e-3);

/**
 * Re-integrates a produced path forwards, segment by segment, switching
 * family at each recorded reflection time; returns the recovered xi at the
 * anchor time.
 */
double recoverAnchor(const SpeedField& field, const CharacteristicTrace& trace, double step = 1e-3);

struct ReflectionCheck {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> violations;
};

/**
 * Reflection-time inequalities with T1 = 1/lambdaMax, T2 = 1/lambdaMin:
 * first reflection 0 <= t - tau <= T2, later crossings T1 <= gap <= T2 and
 * T1 <= t - tau_second <= 2 T2; all up to `tol`.
 */
ReflectionCheck checkReflectionTimes(const CharacteristicTrace& trace, double T1, double T2, double tol = 1e-6);

/// Closed-form a-priori bound on Y(t); throws BoundBlowup if the denominator is <= 0.
double boundY(double t, double T, double delta, double eps, double C, double kappaValue);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> correlation;  ///< present with >= 3 points
};

/// Least squares y ~ slope x + intercept; needs >= 2 points.
LinearFit fitLine(const std::vector<double>& x, const std::vector<double>& y);

struct LifetimeRow {
    double eps = 0.0;
    double tExit = 0.0;
    std::string reason;  ///< norm_exceeded, t_end, or a solver termination reason
    double initialNorm = 0.0;
};

struct LifetimeTable {
    std::vector<LifetimeRow> rows;
    std::optional<LinearFit> fit;  ///< T_exit against |log eps|, with >= 2 rows
};

struct LifetimeOptions {
    double exitFactor = 2.0;  ///< exit once max(U1, U2) exceeds exitFactor x its initial value
    /// Profile ratio epsU / eps; the lifetime runs perturb with epsEta = eps, epsU = uRatio * eps.
    double uRatio = 0.0;
};

/// One lifetime run at amplitude eps built from the template config.
LifetimeRow lifetimeRun(const ParameterSet& p, const solver::SimConfig& templ, double eps,
                        const LifetimeOptions& options = {});

/// epsList must be strictly decreasing and positive.
LifetimeTable lifetimeStudy(const ParameterSet& p, const solver::SimConfig& templ, const std::vector<double>& epsList,
                            const LifetimeOptions& options = {});

/// Fit for a table assembled elsewhere (e.g. from resumed per-eps runs).
std::optional<LinearFit> lifetimeFit(const std::vector<LifetimeRow>& rows);

}  // namespace gelswell::characteristics
