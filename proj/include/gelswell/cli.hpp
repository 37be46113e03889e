#pragma once

/**
 * @file cli.hpp
 * @brief Commands behind the `gelswell` executable.
 *
 * Each command writes into one output directory holding its CSV/JSON
 * artifacts and exactly one manifest.json. Nothing time- or host-dependent
 * is written, so identical inputs give byte-identical directories.
 */

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gelswell/characteristics.hpp"
#include "gelswell/parameters.hpp"
#include "gelswell/solver.hpp"

namespace gelswell::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version();

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

struct Manifest {
    std::string command;
    std::string config;    ///< input config path as given ("" if none)
    std::string paramsId;  ///< stem of the parameter file
    std::string out;
    std::string inputHash;
    json extra = json::object();  ///< command-specific fields (termination, resolved settings, ...)
};

void writeManifest(const fs::path& dir, const Manifest& m);

/// Strict parse of a simulation config; keys in `extraKeys` are tolerated and ignored.
solver::SimConfig simConfigFromJson(const json& doc, const std::set<std::string>& extraKeys = {});
json toJson(const solver::SimConfig& c);

/// A config file resolved together with its parameter set.
struct LoadedRun {
    json doc;
    solver::SimConfig config;
    ParameterSet params;
    fs::path paramsPath;
    std::string paramsId;
    std::string inputHash;
};

/// `params` in the config is relative to the config file; `paramsOverride` wins.
LoadedRun loadRun(const fs::path& configFile, const std::optional<fs::path>& paramsOverride,
                  const std::string& command, const std::set<std::string>& extraKeys = {});

struct CurvesOptions {
    double phiMin = 0.01;
    double phiMax = 0.99;
    int n = 1000;
};

struct MapOptions {
    double phiMin = 0.05;
    double phiMax = 0.95;
    double uMin = -1.0;
    double uMax = 1.0;
    int nPhi = 91;
    int nU = 41;
};

/// curves.csv: phi,G,dG.
void cmdCurves(const fs::path& paramsFile, const CurvesOptions& o, const fs::path& outDir);
/// roots.json: {phi_critical, phi_star}; returns the document.
json cmdRoots(const fs::path& paramsFile, const fs::path& outDir);
/// map.csv: phi,u,hyp_margin,nc_margin,ukl_gamma.
void cmdMap(const fs::path& paramsFile, const MapOptions& o, const fs::path& outDir);
/// snapshots.csv, diagnostics.csv, interfaces.csv, sup_norms.csv.
solver::SimulationRecord cmdSimulate(const fs::path& configFile, const std::optional<fs::path>& params,
                                     const fs::path& outDir);
/// lifetime.csv (eps,T_exit,reason), fit.json and one resumable subdirectory per eps.
characteristics::LifetimeTable cmdScaling(const fs::path& configFile, const std::optional<fs::path>& params,
                                          const fs::path& outDir);
/// One tau,xi,family CSV per anchor plus traces.json with reflection checks.
json cmdTrace(const fs::path& configFile, const std::optional<fs::path>& params, const fs::path& outDir);

/// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace gelswell::cli
