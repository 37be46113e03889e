#include "gelswell/characteristics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "gelswell/errors.hpp"
#include "gelswell/hyperbolicity.hpp"

namespace gelswell::characteristics {

CharacteristicState toDiagonal(const StateField& state, const ParameterSet& p, double psiStar) {
    const std::size_t n = state.n;
    CharacteristicState c;
    c.t = state.t;
    c.y = state.y;
    c.v1.resize(n);
    c.v2.resize(n);
    c.w1.resize(n);
    c.w2.resize(n);
    const auto etaY = gradient(state.psi, state.dy());
    const auto uY = gradient(state.u, state.dy());
    for (std::size_t i = 0; i < n; ++i) {
        const auto es = hyperbolicity::eigensystem(state.psi[i], state.u[i], p);
        const double eta = state.psi[i] - psiStar;
        c.v1[i] = es.L1[0] * eta + es.L1[1] * state.u[i];
        c.v2[i] = es.L2[0] * eta + es.L2[1] * state.u[i];
        c.w1[i] = es.L1[0] * etaY[i] + es.L1[1] * uY[i];
        c.w2[i] = es.L2[0] * etaY[i] + es.L2[1] * uY[i];
    }
    return c;
}

double kappa(const ParameterSet& p, double psiStar) {
    if (!(psiStar > 1.0)) throw DomainError("kappa: psi* must exceed 1");
    if (!(p.betaDrag >= 0.0)) throw DomainError("kappa: drag coefficient must be non-negative");
    return p.betaDrag * psiStar * psiStar / (2.0 * (psiStar - 1.0));
}

namespace {

double supAbs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

SupNorms supNormsOf(const CharacteristicState& c) {
    return {supAbs(c.v1), supAbs(c.v2), supAbs(c.w1), supAbs(c.w2)};
}

SupNormSeries supNorms(const solver::SimulationRecord& record, const ParameterSet& p) {
    SupNormSeries s;
    for (const auto& snap : record.snapshots) {
        const SupNorms m = supNormsOf(toDiagonal(snap, p, record.psiStar));
        s.times.push_back(snap.t);
        s.V1.push_back(m.V1);
        s.V2.push_back(m.V2);
        s.W1.push_back(m.W1);
        s.W2.push_back(m.W2);
        s.U1.push_back(m.U1());
        s.U2.push_back(m.U2());
    }
    return s;
}

// ---------------------------------------------------------------------------

SpeedField::SpeedField(const solver::SimulationRecord& record, const ParameterSet& p) {
    if (record.snapshots.empty()) throw DomainError("SpeedField: record has no snapshots");
    const std::size_t n = record.snapshots.front().n;
    if (n < 2) throw DomainError("SpeedField: need at least two cells");
    y_.reserve(n + 2);
    y_.push_back(0.0);
    for (const double y : record.snapshots.front().y) y_.push_back(y);
    y_.push_back(1.0);

    absMin_ = std::numeric_limits<double>::infinity();
    absMax_ = 0.0;
    for (const auto& snap : record.snapshots) {
        if (snap.n != n) throw DomainError("SpeedField: snapshots differ in resolution");
        if (!times_.empty() && !(snap.t > times_.back())) continue;
        const auto [u0, u1] = freeboundary::boundaryValues(snap.u);
        std::vector<double> psi, u;
        psi.reserve(n + 2);
        u.reserve(n + 2);
        psi.push_back(record.psiStar);
        u.push_back(u0);
        psi.insert(psi.end(), snap.psi.begin(), snap.psi.end());
        u.insert(u.end(), snap.u.begin(), snap.u.end());
        psi.push_back(record.psiStar);
        u.push_back(u1);

        std::vector<double> l1(n + 2), l2(n + 2);
        for (std::size_t k = 0; k < n + 2; ++k) {
            std::tie(l1[k], l2[k]) = hyperbolicity::waveSpeeds(psi[k], u[k], p);
            absMin_ = std::min({absMin_, std::abs(l1[k]), std::abs(l2[k])});
            absMax_ = std::max({absMax_, std::abs(l1[k]), std::abs(l2[k])});
        }
        times_.push_back(snap.t);
        lambda1_.push_back(std::move(l1));
        lambda2_.push_back(std::move(l2));
    }
    if (times_.size() < 2) throw DomainError("SpeedField: need snapshots at two distinct times");
}

double SpeedField::operator()(int family, double y, double t) const {
    constexpr double slack = 1e-9;
    if (!(y >= -slack && y <= 1.0 + slack && t >= times_.front() - slack && t <= times_.back() + slack)) {
        std::ostringstream msg;
        msg << "speed field queried at (y, t) = (" << y << ", " << t << ") outside [0,1] x [" << times_.front()
            << ", " << times_.back() << "]";
        throw InterpolationOutOfRange(msg.str());
    }
    y = std::clamp(y, 0.0, 1.0);
    t = std::clamp(t, times_.front(), times_.back());
    const auto& lam = family == 1 ? lambda1_ : lambda2_;

    std::size_t j = static_cast<std::size_t>(std::upper_bound(y_.begin(), y_.end(), y) - y_.begin());
    j = std::clamp<std::size_t>(j, 1, y_.size() - 1);
    std::size_t k = static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
    k = std::clamp<std::size_t>(k, 1, times_.size() - 1);

    const double a = (y - y_[j - 1]) / (y_[j] - y_[j - 1]);
    const double b = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
    const double before = (1.0 - a) * lam[k - 1][j - 1] + a * lam[k - 1][j];
    const double after = (1.0 - a) * lam[k][j - 1] + a * lam[k][j];
    return (1.0 - b) * before + b * after;
}

// ---------------------------------------------------------------------------

namespace {

// Stage positions are clamped to the strip: a path that ends on a wall can
// overshoot it by rounding (or by the RK4 error across a kink of the bilinear
// field), and the speed there is the wall value.
double rk4(const SpeedField& field, int family, double tau, double xi, double h) {
    auto at = [&](double y, double t) { return field(family, std::clamp(y, 0.0, 1.0), t); };
    const double k1 = at(xi, tau);
    const double k2 = at(xi + 0.5 * h * k1, tau + 0.5 * h);
    const double k3 = at(xi + 0.5 * h * k2, tau + 0.5 * h);
    const double k4 = at(xi + h * k3, tau + h);
    return xi + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

// Guards the time range only; kept so a bad step never aborts a trace.
double safeRk4(const SpeedField& field, int family, double tau, double xi, double h) {
    try {
        return rk4(field, family, tau, xi, h);
    } catch (const InterpolationOutOfRange&) {
        return family == 1 ? (h < 0.0 ? 2.0 : -1.0) : (h < 0.0 ? -1.0 : 2.0);
    }
}

void checkFamily(int family) {
    if (family != 1 && family != 2) throw DomainError("characteristic family must be 1 or 2");
}

}  // namespace

CharacteristicTrace traceCharacteristic(const SpeedField& field, int family, double x, double t,
                                        const TraceOptions& options) {
    checkFamily(family);
    if (!(options.step > 0.0)) throw DomainError("traceCharacteristic: step must be positive");
    if (!(x >= 0.0 && x <= 1.0 && t >= field.tMin() && t <= field.tMax())) {
        std::ostringstream msg;
        msg << "anchor (" << x << ", " << t << ") outside the recorded domain";
        throw InterpolationOutOfRange(msg.str());
    }

    CharacteristicTrace trace;
    trace.family = family;
    trace.x = x;
    trace.t = t;
    double tau = t, xi = x;
    int fam = family;
    trace.path.push_back({tau, xi, fam});

    while (tau > field.tMin()) {
        // Backwards in time family 1 (lambda < 0) moves right, family 2 left.
        const double wall = fam == 1 ? 1.0 : 0.0;
        const double h = -std::min(options.step, tau - field.tMin());
        const double next = safeRk4(field, fam, tau, xi, h);
        const bool crossed = fam == 1 ? next >= 1.0 : next <= 0.0;
        if (!crossed) {
            tau = h == -(tau - field.tMin()) ? field.tMin() : tau + h;
            xi = next;
            trace.path.push_back({tau, xi, fam});
            continue;
        }

        auto overshoot = [&](double s) { return (safeRk4(field, fam, tau, xi, s * h) - wall) * (fam == 1 ? 1.0 : -1.0); };
        double s = 0.0;
        if (xi != wall) {
            auto tol = [](double lo, double hi) { return hi - lo < 1e-15; };
            s = boost::math::tools::bisect(overshoot, 0.0, 1.0, tol).second;
        }
        tau += s * h;
        xi = wall;
        trace.path.push_back({tau, xi, fam});
        trace.reflections.push_back({fam == 1 ? 1 : 0, tau, fam});
        fam = fam == 1 ? 2 : 1;
        trace.path.push_back({tau, xi, fam});
        if (static_cast<int>(trace.reflections.size()) >= options.maxReflections) return trace;
    }
    trace.reachedInitialLine = true;
    return trace;
}

double integrateForward(const SpeedField& field, int family, double xi0, double tau0, double tau1, double step) {
    checkFamily(family);
    if (!(step > 0.0)) throw DomainError("integrateForward: step must be positive");
    if (tau1 < tau0) throw DomainError("integrateForward: tau1 must not precede tau0");
    double tau = tau0, xi = xi0;
    while (tau < tau1) {
        const double h = std::min(step, tau1 - tau);
        xi = rk4(field, family, tau, xi, h);
        tau = h == tau1 - tau ? tau1 : tau + h;
    }
    return xi;
}

double recoverAnchor(const SpeedField& field, const CharacteristicTrace& trace, double step) {
    if (trace.path.empty()) throw DomainError("recoverAnchor: empty path");
    double xi = trace.path.back().xi;
    double tau = trace.path.back().tau;
    int fam = trace.path.back().family;
    for (auto it = trace.reflections.rbegin(); it != trace.reflections.rend(); ++it) {
        xi = integrateForward(field, fam, xi, tau, it->tau, step);
        xi = std::clamp(xi, 0.0, 1.0);
        tau = it->tau;
        fam = it->familyBefore;
    }
    return integrateForward(field, fam, xi, tau, trace.t, step);
}

ReflectionCheck checkReflectionTimes(const CharacteristicTrace& trace, double T1, double T2, double tol) {
    ReflectionCheck check;
    auto require = [&](bool ok, const std::string& what, double value, double lo, double hi) {
        ++check.checked;
        if (ok) return;
        check.ok = false;
        std::ostringstream msg;
        msg << what << " = " << value << " outside [" << lo << ", " << hi << "] (anchor " << trace.x << ", "
            << trace.t << ", family " << trace.family << ")";
        check.violations.push_back(msg.str());
    };
    const auto& r = trace.reflections;
    if (r.empty()) return check;
    const double first = trace.t - r[0].tau;
    require(first >= -tol && first <= T2 + tol, "t - tau_first", first, 0.0, T2);
    for (std::size_t k = 1; k < r.size(); ++k) {
        const double gap = r[k - 1].tau - r[k].tau;
        require(gap >= T1 - tol && gap <= T2 + tol, "crossing time", gap, T1, T2);
    }
    if (r.size() >= 2) {
        const double second = trace.t - r[1].tau;
        require(second >= T1 - tol && second <= 2.0 * T2 + tol, "t - tau_second", second, T1, 2.0 * T2);
    }
    return check;
}

double boundY(double t, double T, double delta, double eps, double C, double kappaValue) {
    if (t < T) throw DomainError("boundY: requires T <= t");
    const double growth = std::exp(kappaValue * T);
    const double a = (delta + (growth - 1.0) * eps + C * eps * eps) / growth;
    const double denominator = 1.0 - C * a * (t - T);
    if (!(denominator > 0.0)) {
        std::ostringstream msg;
        msg << "bound blows up: denominator " << denominator << " at t = " << t;
        throw BoundBlowup(msg.str());
    }
    return a / denominator;
}

LinearFit fitLine(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw DomainError("fitLine: need >= 2 matching points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fitLine: abscissae are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    // A constant response has no defined correlation; report 0 rather than NaN.
    if (n >= 3) fit.correlation = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
    return fit;
}

LifetimeRow lifetimeRun(const ParameterSet& p, const solver::SimConfig& templ, double eps,
                        const LifetimeOptions& options) {
    if (!(eps > 0.0)) throw DomainError("lifetimeRun: eps must be positive");
    if (!(options.exitFactor > 1.0)) throw DomainError("lifetimeRun: exitFactor must exceed 1");
    solver::SimConfig config = templ;
    config.profile.table.reset();
    config.profile.epsEta = eps;
    config.profile.epsU = options.uRatio * eps;
    config.validate();
    const solver::GelModel model = solver::makeModel(config, p);
    const ParameterSet& mp = model.params();

    LifetimeRow row;
    row.eps = eps;
    const StateField initial = solver::init(config, model);
    const SupNorms n0 = supNormsOf(toDiagonal(initial, mp, model.psiStar()));
    row.initialNorm = std::max(n0.U1(), n0.U2());
    const double threshold = options.exitFactor * row.initialNorm;

    double exitTime = initial.t;
    auto observer = [&](const StateField& s) {
        exitTime = s.t;
        const SupNorms m = supNormsOf(toDiagonal(s, mp, model.psiStar()));
        return std::max(m.U1(), m.U2()) > threshold;
    };
    const solver::SimulationRecord rec = solver::run(config, model, observer);
    row.reason = rec.terminationReason == "observer_stop" ? "norm_exceeded" : rec.terminationReason;
    row.tExit = rec.terminationReason == "t_end" ? config.tEnd : std::max(exitTime, rec.snapshots.back().t);
    return row;
}

std::optional<LinearFit> lifetimeFit(const std::vector<LifetimeRow>& rows) {
    if (rows.size() < 2) return std::nullopt;
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(std::abs(std::log(r.eps)));
        y.push_back(r.tExit);
    }
    return fitLine(x, y);
}

LifetimeTable lifetimeStudy(const ParameterSet& p, const solver::SimConfig& templ, const std::vector<double>& epsList,
                            const LifetimeOptions& options) {
    if (epsList.empty()) throw DomainError("lifetimeStudy: empty eps list");
    for (std::size_t k = 0; k < epsList.size(); ++k) {
        if (!(epsList[k] > 0.0)) throw DomainError("lifetimeStudy: eps values must be positive");
        if (k > 0 && !(epsList[k] < epsList[k - 1])) throw DomainError("lifetimeStudy: eps list must be strictly decreasing");
    }
    LifetimeTable table;
    for (const double eps : epsList) table.rows.push_back(lifetimeRun(p, templ, eps, options));
    table.fit = lifetimeFit(table.rows);
    return table;
}

}  // namespace gelswell::characteristics
