#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace gelswell {

/**
 * Nondimensional model constants of the 1-D gel.
 *
 * Field names match the JSON schema of the shipped parameter files. The
 * object is immutable once validated and can be shared freely between
 * threads.
 */
struct ParameterSet {
    double N1 = 1000.0;   ///< lattice sites per polymer chain
    double N2 = 1.0;      ///< lattice sites per solvent molecule
    double q = 2.0;
    double s = 2.0;
    double r = 1.25;
    double alpha0 = 1e-3;
    double beta0 = 1.0;   ///< not tabulated; assumed
    double beta1 = 1.0;
    double phiI = 0.05;   ///< reference (dry) polymer fraction
    double chi0 = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;
    double betaDrag = 1.0;  ///< interphase drag; not tabulated; assumed
    double kT = 1.0;        ///< K_B T / V_m
    double phiClampMin = 1e-6;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    /// s in (0,1]: outside the s > 1 range of the elastic model.
    bool polysaccharideRegime() const noexcept { return s <= 1.0; }

    /// Returns a copy with a different drag coefficient.
    ParameterSet withDrag(double beta) const;
};

/// Parse and validate. Unknown keys and missing required keys are errors.
ParameterSet parameterSetFromJson(const nlohmann::json& doc);
nlohmann::json toJson(const ParameterSet& p);

/// Load from a file; parse errors carry line/column information.
ParameterSet loadParameterSet(const std::filesystem::path& path);

/// Read a JSON file, translating parse errors into ConfigError with line:col.
nlohmann::json readJsonFile(const std::filesystem::path& path);

}  // namespace gelswell
