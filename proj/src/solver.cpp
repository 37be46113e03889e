#include "gelswell/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gelswell/detail/pchip.hpp"

#include "gelswell/errors.hpp"

namespace gelswell::solver {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double stiffness(const GelModel& model) {
    const double ps = model.psiStar();
    return model.params().betaDrag * ps * ps / (ps - 1.0);
}

// Second-order one-sided derivative at the first (forward) or last (backward) node.
double endpointSlope(const std::vector<double>& x, const std::vector<double>& f, bool atEnd) {
    const std::size_t m = x.size();
    const std::size_t i0 = atEnd ? m - 1 : 0;
    const std::size_t i1 = atEnd ? m - 2 : 1;
    const std::size_t i2 = atEnd ? m - 3 : 2;
    const double h1 = x[i1] - x[i0], h2 = x[i2] - x[i0];
    // Quadratic through (x0,f0),(x1,f1),(x2,f2), derivative at x0.
    return (f[i1] - f[i0]) * h2 / (h1 * (h2 - h1)) - (f[i2] - f[i0]) * h1 / (h2 * (h2 - h1));
}

void checkState(const StateField& s, const GelModel& model) {
    for (std::size_t i = 0; i < s.n; ++i) {
        if (!std::isfinite(s.psi[i]) || !std::isfinite(s.u[i])) {
            std::ostringstream msg;
            msg << "non-finite state in cell " << i << " at t=" << s.t;
            throw NonFinite(msg.str());
        }
    }
    for (std::size_t i = 0; i < s.n; ++i) {
        if (!(s.psi[i] > 1.0 + 1e-9)) {
            std::ostringstream msg;
            msg << "psi <= 1 in cell " << i << " at t=" << s.t;
            throw NotHyperbolic(msg.str(), 0.0);
        }
        const auto report = hyperbolicity::checkConditions(s.psi[i], s.u[i], model.params());
        if (!report.hyperbolic) {
            std::ostringstream msg;
            msg << "hyperbolicity lost in cell " << i << " at t=" << s.t << " (margin " << report.hypMargin << ")";
            throw NotHyperbolic(msg.str(), report.hypMargin);
        }
    }
}

}  // namespace

void SimConfig::validate() const {
    if (n < 16) throw ConfigError("SimConfig: n must be >= 16");
    if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("SimConfig: cfl must lie in (0,1)");
    if (!(tEnd >= 0.0)) throw ConfigError("SimConfig: tEnd must be >= 0");
    if (outputEvery < 1 || diagnosticsEvery < 1) throw ConfigError("SimConfig: cadences must be >= 1");
    if (profile.epsEta < 0.0 || profile.epsU < 0.0) throw ConfigError("SimConfig: profile amplitudes must be >= 0");
    if (psiStar && !(*psiStar > 1.0)) throw ConfigError("SimConfig: psiStar must exceed 1");
    if (L && !(*L > 0.0)) throw ConfigError("SimConfig: L must be positive");
    if (betaDrag && !(*betaDrag >= 0.0)) throw ConfigError("SimConfig: betaDrag must be >= 0");
    if (!(c1CeilingFactor > 1.0)) throw ConfigError("SimConfig: c1CeilingFactor must exceed 1");
}

GelModel::GelModel(ParameterSet params, double psiStar)
    : params_(std::move(params)), psiStar_(psiStar), potential_(params_, psiStar) {}

GelModel makeModel(const SimConfig& config, const ParameterSet& params) {
    ParameterSet p = config.betaDrag ? params.withDrag(*config.betaDrag) : params;
    const double psiStar = config.psiStar ? *config.psiStar : hyperbolicity::admissiblePhiStar(p).psi;
    return GelModel(p, psiStar);
}

Vec2 flux(double psi, double u, const ParameterSet& p, double psiStar) {
    if (!(psi > 1.0)) throw DomainError("flux: psi must exceed 1");
    return {-(1.0 - 1.0 / psi) * u, -u * u / (2.0 * psi * psi) - constitutive::fluxPotential(psi, p, psiStar)};
}

Vec2 flux(double psi, double u, const GelModel& model) {
    if (!(psi > 1.0)) throw DomainError("flux: psi must exceed 1");
    return {-(1.0 - 1.0 / psi) * u, -u * u / (2.0 * psi * psi) - model.potential(psi)};
}

Vec2 source(double psi, double u, const ParameterSet& p) {
    if (!(psi > 1.0)) throw DomainError("source: psi must exceed 1");
    return {0.0, -p.betaDrag * u * psi * psi / (psi - 1.0)};
}

StateField init(const SimConfig& config, const GelModel& model) {
    config.validate();
    const double psiStar = model.psiStar();
    StateField s = StateField::uniform(config.n, psiStar, 0.0);
    const Profile& prof = config.profile;
    if (prof.table) {
        const TabulatedProfile& tab = *prof.table;
        const std::size_t m = tab.y.size();
        if (m < 4 || tab.eta.size() != m || tab.u.size() != m)
            throw ConfigError("tabulated profile needs >= 4 rows with matching y, eta, u");
        if (tab.y.front() != 0.0 || tab.y.back() != 1.0)
            throw ConfigError("tabulated profile must span y = 0 .. 1");
        for (std::size_t j = 1; j < m; ++j)
            if (!(tab.y[j] > tab.y[j - 1])) throw ConfigError("tabulated profile y must be strictly increasing");
        if (std::abs(tab.eta.front()) > 1e-10 || std::abs(tab.eta.back()) > 1e-10) {
            std::ostringstream msg;
            msg << "C1 compatibility line 1 violated: eta0(0) = " << tab.eta.front() << ", eta0(1) = " << tab.eta.back();
            throw IncompatibleData(msg.str(), 1);
        }
        for (const bool atEnd : {false, true}) {
            const double etaY = endpointSlope(tab.y, tab.eta, atEnd);
            const double uY = endpointSlope(tab.y, tab.u, atEnd);
            const double u0 = atEnd ? tab.u.back() : tab.u.front();
            const double residual = -u0 / (psiStar * psiStar) * etaY + (1.0 - psiStar) / psiStar * uY;
            if (std::abs(residual) > 1e-8) {
                std::ostringstream msg;
                msg << "C1 compatibility line 2 violated at y = " << (atEnd ? 1 : 0) << ": residual " << residual;
                throw IncompatibleData(msg.str(), 2);
            }
        }
        boost::math::interpolators::pchip<std::vector<double>> eta(std::vector<double>(tab.y),
                                                                   std::vector<double>(tab.eta));
        boost::math::interpolators::pchip<std::vector<double>> vel(std::vector<double>(tab.y),
                                                                   std::vector<double>(tab.u));
        for (std::size_t i = 0; i < s.n; ++i) {
            s.psi[i] = psiStar + eta(s.y[i]);
            s.u[i] = vel(s.y[i]);
        }
    } else if (prof.epsEta != 0.0 || prof.epsU != 0.0) {
        for (std::size_t i = 0; i < s.n; ++i) {
            const double bump = 0.5 * (1.0 - std::cos(kTwoPi * s.y[i]));
            s.psi[i] = psiStar + prof.epsEta * bump;
            s.u[i] = prof.epsU * bump;
        }
    }
    checkState(s, model);
    return s;
}

double cflDt(const StateField& state, const GelModel& model, const SimConfig& config) {
    double maxSpeed = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
        const auto [l1, l2] = hyperbolicity::waveSpeeds(state.psi[i], state.u[i], model.params());
        maxSpeed = std::max({maxSpeed, std::abs(l1), std::abs(l2)});
    }
    if (!(maxSpeed > 0.0)) throw NonFinite("cflDt: zero or non-finite wave speed");
    return config.cfl * state.dy() / maxSpeed;
}

Vec2 numericalFlux(double psiL, double uL, double psiR, double uR, const GelModel& model, Scheme scheme) {
    const ParameterSet& p = model.params();
    const Vec2 fL = flux(psiL, uL, model);
    const Vec2 fR = flux(psiR, uR, model);
    const auto [l1L, l2L] = hyperbolicity::waveSpeeds(psiL, uL, p);
    const auto [l1R, l2R] = hyperbolicity::waveSpeeds(psiR, uR, p);
    const double dPsi = psiR - psiL, dU = uR - uL;
    if (scheme == Scheme::LocalLaxFriedrichs) {
        const double a = std::max({std::abs(l1L), std::abs(l2L), std::abs(l1R), std::abs(l2R)});
        return {0.5 * (fL[0] + fR[0]) - 0.5 * a * dPsi, 0.5 * (fL[1] + fR[1]) - 0.5 * a * dU};
    }
    double sL = std::min(l1L, l1R);
    double sR = std::max(l2L, l2R);
    const double margin = 1e-12 * std::max({std::abs(sL), std::abs(sR), 1.0});
    sL -= margin;
    sR += margin;
    if (sL >= 0.0) return fL;
    if (sR <= 0.0) return fR;
    const double inv = 1.0 / (sR - sL);
    return {(sR * fL[0] - sL * fR[0] + sL * sR * dPsi) * inv, (sR * fL[1] - sL * fR[1] + sL * sR * dU) * inv};
}

StateField step(const StateField& state, double dt, const GelModel& model, const SimConfig& config) {
    const std::size_t n = state.n;
    const double psiStar = model.psiStar();
    const double ratio = dt / state.dy();

    // Dirichlet psi through odd reflection about psi*; u extrapolated (zero order).
    const double ghostPsiL = 2.0 * psiStar - state.psi[0];
    const double ghostPsiR = 2.0 * psiStar - state.psi[n - 1];
    if (!(ghostPsiL > 1.0 && ghostPsiR > 1.0)) throw NotHyperbolic("ghost cell psi <= 1", 0.0);

    std::vector<Vec2> faces(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double psiL = k == 0 ? ghostPsiL : state.psi[k - 1];
        const double uL = k == 0 ? state.u[0] : state.u[k - 1];
        const double psiR = k == n ? ghostPsiR : state.psi[k];
        const double uR = k == n ? state.u[n - 1] : state.u[k];
        faces[k] = numericalFlux(psiL, uL, psiR, uR, model, config.scheme);
    }

    StateField next = state;
    next.t = state.t + dt;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 src = source(state.psi[i], state.u[i], model.params());
        next.psi[i] = state.psi[i] - ratio * (faces[i + 1][0] - faces[i][0]);
        next.u[i] = state.u[i] - ratio * (faces[i + 1][1] - faces[i][1]) + dt * src[1];
    }
    checkState(next, model);
    return next;
}

double energyDiagnostic(const StateField& state, const ParameterSet& p) {
    double energy = 0.0;
    const double dy = state.dy();
    for (std::size_t i = 0; i < state.n; ++i) {
        const double phi = 1.0 / state.psi[i];
        const double density = 0.5 * phi * (1.0 - phi) * state.u[i] * state.u[i] +
                               phi * constitutive::elasticEnergyShifted(p.phiI / phi, p) +
                               constitutive::mixingEnergy(phi, p);
        energy += density * state.psi[i] * dy;  // cell width dx = psi dy
    }
    return energy;
}

double modelEnergy(const StateField& state, const GelModel& model) {
    double energy = 0.0;
    const auto& table = model.potentialTable();
    for (std::size_t i = 0; i < state.n; ++i) {
        const double solvent = 1.0 - 1.0 / state.psi[i];
        energy += 0.5 * solvent * state.u[i] * state.u[i] + table.antiderivative(state.psi[i]);
    }
    return energy * state.dy();
}

double Diagnostics::c1() const { return std::max({supEta, supU, supEtaX, supUX}); }

Diagnostics diagnose(const StateField& state, const GelModel& model) {
    Diagnostics d;
    d.t = state.t;
    d.mass = freeboundary::physicalMass(state, model.psiStar());
    d.energy = energyDiagnostic(state, model.params());
    d.modelEnergy = modelEnergy(state, model);
    std::vector<double> eta(state.n);
    for (std::size_t i = 0; i < state.n; ++i) {
        eta[i] = state.psi[i] - model.psiStar();
        d.supEta = std::max(d.supEta, std::abs(eta[i]));
        d.supU = std::max(d.supU, std::abs(state.u[i]));
    }
    for (const double g : gradient(eta, state.dy())) d.supEtaX = std::max(d.supEtaX, std::abs(g));
    for (const double g : gradient(state.u, state.dy())) d.supUX = std::max(d.supUX, std::abs(g));
    return d;
}

SimulationRecord run(const SimConfig& config, const GelModel& model, const StepObserver& observer) {
    SimulationRecord rec;
    rec.psiStar = model.psiStar();
    StateField state;
    try {
        state = init(config, model);
    } catch (const NotHyperbolic& e) {
        rec.terminationReason = "not_hyperbolic";
        rec.terminationDetail = e.what();
        return rec;
    }
    rec.snapshots.push_back(state);
    rec.diagnostics.push_back(diagnose(state, model));
    rec.interfaces = freeboundary::startTrack(state, model.psiStar(), config.L);
    const double initialC1 = rec.diagnostics.front().c1();
    const double sourceRate = stiffness(model);
    const double tEnd = config.tEnd;

    auto finish = [&](const std::string& reason, const std::string& detail) {
        rec.terminationReason = reason;
        rec.terminationDetail = detail;
        if (rec.snapshots.back().t < state.t) rec.snapshots.push_back(state);
        if (rec.diagnostics.back().t < state.t) rec.diagnostics.push_back(diagnose(state, model));
    };

    while (state.t < tEnd) {
        try {
            double dt = cflDt(state, model, config);
            const bool last = state.t + dt >= tEnd;
            if (last) dt = tEnd - state.t;
            if (!(sourceRate * dt < 0.5)) {
                std::ostringstream msg;
                msg << "explicit drag step too stiff: beta psi*^2/(psi*-1) dt = " << sourceRate * dt;
                finish("source_stiffness", msg.str());
                return rec;
            }
            StateField next = step(state, dt, model, config);
            if (last) next.t = tEnd;
            state = std::move(next);
            rec.dts.push_back(dt);
            ++rec.steps;
            freeboundary::advanceInterfaces(rec.interfaces, state, dt, model.psiStar());
        } catch (const NotHyperbolic& e) {
            finish("not_hyperbolic", e.what());
            return rec;
        } catch (const NonFinite& e) {
            finish("non_finite", e.what());
            return rec;
        }

        const bool done = state.t >= tEnd;
        if (done || rec.steps % config.diagnosticsEvery == 0) {
            rec.diagnostics.push_back(diagnose(state, model));
            const double c1 = rec.diagnostics.back().c1();
            if (initialC1 > 0.0 && c1 > config.c1CeilingFactor * initialC1) {
                std::ostringstream msg;
                msg << "C1 norm " << c1 << " exceeds " << config.c1CeilingFactor << " x initial " << initialC1;
                finish("c1_ceiling", msg.str());
                return rec;
            }
        }
        if (done || rec.steps % config.outputEvery == 0) rec.snapshots.push_back(state);
        if (observer && observer(state)) {
            finish("observer_stop", "stopped by observer at t=" + std::to_string(state.t));
            return rec;
        }
    }
    rec.terminationReason = "t_end";
    return rec;
}

std::string toString(Scheme scheme) { return scheme == Scheme::HLL ? "HLL" : "local-Lax-Friedrichs"; }

Scheme schemeFromString(const std::string& name) {
    if (name == "HLL" || name == "hll") return Scheme::HLL;
    if (name == "local-Lax-Friedrichs" || name == "llf" || name == "LLF") return Scheme::LocalLaxFriedrichs;
    throw ConfigError("unknown scheme '" + name + "' (expected HLL or local-Lax-Friedrichs)");
}

}  // namespace gelswell::solver
