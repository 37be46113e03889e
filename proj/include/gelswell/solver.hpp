#pragma once

/**
 * @file solver.hpp
 * @brief Explicit finite-volume integrator for the fixed-domain (psi, u)
 *        system with Dirichlet psi = psi* at y = 0, 1 and interphase drag.
 *
 *   psi_t + [-(1 - 1/psi) u]_y                   = 0
 *   u_t   + [-u^2 / (2 psi^2) - F(psi)]_y        = -beta u psi^2 / (psi - 1)
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gelswell/constitutive.hpp"
#include "gelswell/freeboundary.hpp"
#include "gelswell/hyperbolicity.hpp"
#include "gelswell/parameters.hpp"
#include "gelswell/state.hpp"

namespace gelswell::solver {

using hyperbolicity::Vec2;

enum class Scheme { HLL, LocalLaxFriedrichs };

/// Initial data on y in [0,1]; eta = psi - psi*. Nodes must include y = 0 and y = 1.
struct TabulatedProfile {
    std::vector<double> y;
    std::vector<double> eta;
    std::vector<double> u;
};

/// Built-in family eta0 = epsEta (1 - cos 2 pi y)/2, u0 = epsU (1 - cos 2 pi y)/2, or a table.
struct Profile {
    double epsEta = 0.0;
    double epsU = 0.0;
    std::optional<TabulatedProfile> table;
};

struct SimConfig {
    std::size_t n = 256;
    double cfl = 0.45;
    double tEnd = 1.0;
    std::size_t outputEvery = 10;      ///< snapshot cadence in steps
    std::size_t diagnosticsEvery = 1;  ///< diagnostics cadence in steps
    Scheme scheme = Scheme::HLL;
    Profile profile;
    std::optional<double> psiStar;     ///< default: first admissible saturation root
    std::optional<double> L;           ///< initial half-width; default from the data
    std::optional<double> betaDrag;    ///< overrides the ParameterSet drag
    double c1CeilingFactor = 1e3;

    void validate() const;
};

/// Parameters, boundary value and the tabulated flux potential of one run.
class GelModel {
public:
    GelModel(ParameterSet params, double psiStar);
    const ParameterSet& params() const noexcept { return params_; }
    double psiStar() const noexcept { return psiStar_; }
    double potential(double psi) const { return potential_(psi); }
    const constitutive::FluxPotentialTable& potentialTable() const noexcept { return potential_; }

private:
    ParameterSet params_;
    double psiStar_;
    constitutive::FluxPotentialTable potential_;
};

/// Builds the model for a config: applies the drag override and resolves psi*.
GelModel makeModel(const SimConfig& config, const ParameterSet& params);

/// Physical flux using the direct quadrature for F.
Vec2 flux(double psi, double u, const ParameterSet& p, double psiStar);
/// Physical flux using the model's tabulated F.
Vec2 flux(double psi, double u, const GelModel& model);

/// (0, -beta u psi^2 / (psi - 1)).
Vec2 source(double psi, double u, const ParameterSet& p);

/// Throws IncompatibleData when a tabulated profile violates the C^1 compatibility conditions.
StateField init(const SimConfig& config, const GelModel& model);

/// cfl * dy / max |lambda| over the cells.
double cflDt(const StateField& state, const GelModel& model, const SimConfig& config);

/// One forward-Euler finite-volume step. Throws NotHyperbolic or NonFinite.
StateField step(const StateField& state, double dt, const GelModel& model, const SimConfig& config);

/// Numerical flux across a face for the configured scheme.
Vec2 numericalFlux(double psiL, double uL, double psiR, double uR, const GelModel& model, Scheme scheme);

/// int [ phi(1-phi) u^2 / 2 + phi W_P(phiI/phi) + W_FH(phi) ] dx over the reconstructed cells.
double energyDiagnostic(const StateField& state, const ParameterSet& p);

/**
 * int [ (1 - phi) u^2 / 2 + H(psi) ] dy with H' = F, H(psi*) = 0: the energy
 * the reduced system dissipates at rate beta int psi u^2 dy (up to a cubic
 * boundary flux).
 */
double modelEnergy(const StateField& state, const GelModel& model);

struct Diagnostics {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double modelEnergy = 0.0;
    double supEta = 0.0;
    double supU = 0.0;
    double supEtaX = 0.0;
    double supUX = 0.0;
    double c1() const;  ///< max of the four sup norms
};

Diagnostics diagnose(const StateField& state, const GelModel& model);

struct SimulationRecord {
    double psiStar = 0.0;
    std::vector<StateField> snapshots;
    std::vector<Diagnostics> diagnostics;
    freeboundary::InterfaceTrack interfaces;
    std::vector<double> dts;
    std::string terminationReason;  ///< t_end, not_hyperbolic, non_finite, c1_ceiling, source_stiffness, observer_stop
    std::string terminationDetail;
    std::size_t steps = 0;
};

/// Called after every accepted step; returning true ends the run with "observer_stop".
using StepObserver = std::function<bool(const StateField&)>;

/// Never throws for solver failures; they are recorded as termination reasons.
SimulationRecord run(const SimConfig& config, const GelModel& model, const StepObserver& observer = {});

std::string toString(Scheme scheme);
Scheme schemeFromString(const std::string& name);

}  // namespace gelswell::solver
