#include "gelswell/parameters.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string_view>

#include "gelswell/errors.hpp"

namespace gelswell {

namespace {

struct Field {
    std::string_view name;
    double ParameterSet::*member;
    bool required;
};

constexpr std::array<Field, 15> kFields{{
    {"N1", &ParameterSet::N1, true},
    {"N2", &ParameterSet::N2, true},
    {"q", &ParameterSet::q, true},
    {"s", &ParameterSet::s, true},
    {"r", &ParameterSet::r, true},
    {"alpha0", &ParameterSet::alpha0, true},
    {"beta0", &ParameterSet::beta0, false},
    {"beta1", &ParameterSet::beta1, true},
    {"phiI", &ParameterSet::phiI, true},
    {"chi0", &ParameterSet::chi0, true},
    {"chi1", &ParameterSet::chi1, true},
    {"chi2", &ParameterSet::chi2, true},
    {"betaDrag", &ParameterSet::betaDrag, false},
    {"kT", &ParameterSet::kT, false},
    {"phiClampMin", &ParameterSet::phiClampMin, false},
}};

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("invalid ParameterSet: " + msg);
}

}  // namespace

void ParameterSet::validate() const {
    require(N1 >= 1.0, "N1 >= 1");
    require(N2 >= 1.0, "N2 >= 1");
    require(alpha0 > 0.0, "alpha0 > 0");
    require(beta0 > 0.0, "beta0 > 0");
    require(beta1 > 0.0, "beta1 > 0");
    require(r >= 1.0, "r >= 1");
    require(s > 0.0, "s > 0 (s > 1, or s in (0,1] for the polysaccharide regime)");
    require(q > 1.0 || q == N1, "q > 1 or q = N1");
    require(phiI > 0.0 && phiI < 1.0, "0 < phiI < 1");
    require(betaDrag >= 0.0, "betaDrag >= 0");
    require(kT > 0.0, "kT > 0");
    require(phiClampMin > 0.0 && phiClampMin < 0.01, "phiClampMin in (0, 0.01)");
}

ParameterSet ParameterSet::withDrag(double beta) const {
    ParameterSet copy = *this;
    copy.betaDrag = beta;
    copy.validate();
    return copy;
}

ParameterSet parameterSetFromJson(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("ParameterSet: expected a JSON object");
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const auto& f : kFields) known = known || item.key() == f.name;
        if (!known) throw ConfigError("ParameterSet: unknown field '" + item.key() + "'");
    }
    ParameterSet p;
    for (const auto& f : kFields) {
        const std::string key(f.name);
        auto it = doc.find(key);
        if (it == doc.end()) {
            if (f.required) throw ConfigError("ParameterSet: missing field '" + key + "'");
            continue;
        }
        if (!it->is_number()) throw ConfigError("ParameterSet: field '" + key + "' must be a number");
        p.*(f.member) = it->get<double>();
    }
    p.validate();
    return p;
}

nlohmann::json toJson(const ParameterSet& p) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& f : kFields) doc[std::string(f.name)] = p.*(f.member);
    return doc;
}

nlohmann::json readJsonFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON parse error: " + e.what());
    }
}

ParameterSet loadParameterSet(const std::filesystem::path& path) {
    try {
        return parameterSetFromJson(readJsonFile(path));
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0) throw;
        throw ConfigError(path.string() + ": " + msg);
    }
}

}  // namespace gelswell
