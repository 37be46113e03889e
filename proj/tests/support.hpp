#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "gelswell/hyperbolicity.hpp"
#include "gelswell/parameters.hpp"

namespace testing_support {

namespace fs = std::filesystem;

inline fs::path sourceDir() { return GELSWELL_SOURCE_DIR; }
inline fs::path paramsPath(const std::string& name) { return sourceDir() / "params" / (name + ".json"); }
inline gelswell::ParameterSet polymer() { return gelswell::loadParameterSet(paramsPath("polymer")); }
inline gelswell::ParameterSet polysaccharide() { return gelswell::loadParameterSet(paramsPath("polysaccharide")); }

/// Fresh empty directory under the build tree's temp area.
inline fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "gelswell-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Random state with u^2 + G'(1/psi) < 0, phi drawn from [phiLo, phiHi].
struct AdmissibleSampler {
    gelswell::ParameterSet p;
    double phiLo, phiHi;
    std::mt19937_64 rng;

    AdmissibleSampler(gelswell::ParameterSet params, double lo, double hi, std::uint64_t seed)
        : p(std::move(params)), phiLo(lo), phiHi(hi), rng(seed) {}

    std::pair<double, double> next();
};

}  // namespace testing_support
