#include "gelswell/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gelswell/constitutive.hpp"
#include "gelswell/csv.hpp"
#include "gelswell/errors.hpp"
#include "gelswell/hyperbolicity.hpp"

#ifndef GELSWELL_VERSION
#define GELSWELL_VERSION "0.0.0"
#endif

namespace gelswell::cli {

std::string version() { return GELSWELL_VERSION; }

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeJson(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
}

void prepare(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

// JSON numbers through the same shortest round-trip formatter as the CSVs.
json number(double v) {
    if (!std::isfinite(v)) return csv::formatDouble(v);
    return v;
}

std::string hashInputs(const std::string& command, const std::vector<std::string>& parts) {
    std::string bytes = command;
    for (const auto& p : parts) {
        bytes.push_back('\0');
        bytes += p;
    }
    return fnv1a64(bytes);
}

double getNumber(const json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError("config field '" + key + "' must be a number");
    return v.get<double>();
}

std::size_t getCount(const json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("config field '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<double> getNumbers(const json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_array()) throw ConfigError("config field '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("config field '" + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::string paramsIdOf(const fs::path& p) { return p.stem().string(); }

}  // namespace

void writeManifest(const fs::path& dir, const Manifest& m) {
    json doc = {{"command", m.command},   {"config", m.config},       {"params", m.paramsId},
                {"out", m.out},           {"version", version()},     {"input_hash", m.inputHash}};
    for (const auto& [k, v] : m.extra.items()) doc[k] = v;
    writeJson(dir / "manifest.json", doc);
}

solver::SimConfig simConfigFromJson(const json& doc, const std::set<std::string>& extraKeys) {
    if (!doc.is_object()) throw ConfigError("simulation config must be a JSON object");
    static const std::set<std::string> known = {"params", "n",         "cfl",     "tEnd",    "outputEvery",
                                                "diagnosticsEvery",    "scheme",  "profile", "psiStar",
                                                "L",      "betaDrag",  "c1CeilingFactor"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key) && !extraKeys.count(key)) throw ConfigError("unknown config field '" + key + "'");

    solver::SimConfig c;
    try {
        if (doc.contains("n")) c.n = getCount(doc, "n");
        if (doc.contains("cfl")) c.cfl = getNumber(doc, "cfl");
        if (doc.contains("tEnd")) c.tEnd = getNumber(doc, "tEnd");
        if (doc.contains("outputEvery")) c.outputEvery = getCount(doc, "outputEvery");
        if (doc.contains("diagnosticsEvery")) c.diagnosticsEvery = getCount(doc, "diagnosticsEvery");
        if (doc.contains("scheme")) {
            if (!doc["scheme"].is_string()) throw ConfigError("config field 'scheme' must be a string");
            c.scheme = solver::schemeFromString(doc["scheme"].get<std::string>());
        }
        if (doc.contains("psiStar")) c.psiStar = getNumber(doc, "psiStar");
        if (doc.contains("L")) c.L = getNumber(doc, "L");
        if (doc.contains("betaDrag")) c.betaDrag = getNumber(doc, "betaDrag");
        if (doc.contains("c1CeilingFactor")) c.c1CeilingFactor = getNumber(doc, "c1CeilingFactor");
        if (doc.contains("profile")) {
            const json& pr = doc["profile"];
            if (!pr.is_object()) throw ConfigError("config field 'profile' must be an object");
            for (const auto& [key, _] : pr.items())
                if (key != "epsEta" && key != "epsU" && key != "table")
                    throw ConfigError("unknown profile field '" + key + "'");
            if (pr.contains("epsEta")) c.profile.epsEta = getNumber(pr, "epsEta");
            if (pr.contains("epsU")) c.profile.epsU = getNumber(pr, "epsU");
            if (pr.contains("table")) {
                const json& tb = pr["table"];
                if (!tb.is_object()) throw ConfigError("profile 'table' must be an object with y, eta, u");
                solver::TabulatedProfile t;
                t.y = getNumbers(tb, "y");
                t.eta = getNumbers(tb, "eta");
                t.u = getNumbers(tb, "u");
                c.profile.table = std::move(t);
            }
        }
    } catch (const json::out_of_range& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

json toJson(const solver::SimConfig& c) {
    json doc = {{"n", c.n},
                {"cfl", c.cfl},
                {"tEnd", c.tEnd},
                {"outputEvery", c.outputEvery},
                {"diagnosticsEvery", c.diagnosticsEvery},
                {"scheme", solver::toString(c.scheme)},
                {"c1CeilingFactor", c.c1CeilingFactor}};
    json profile = {{"epsEta", c.profile.epsEta}, {"epsU", c.profile.epsU}};
    if (c.profile.table) profile["table"] = {{"y", c.profile.table->y}, {"eta", c.profile.table->eta}, {"u", c.profile.table->u}};
    doc["profile"] = profile;
    if (c.psiStar) doc["psiStar"] = *c.psiStar;
    if (c.L) doc["L"] = *c.L;
    if (c.betaDrag) doc["betaDrag"] = *c.betaDrag;
    return doc;
}

LoadedRun loadRun(const fs::path& configFile, const std::optional<fs::path>& paramsOverride,
                  const std::string& command, const std::set<std::string>& extraKeys) {
    LoadedRun run;
    run.doc = readJsonFile(configFile);
    run.config = simConfigFromJson(run.doc, extraKeys);
    if (paramsOverride) {
        run.paramsPath = *paramsOverride;
    } else if (run.doc.contains("params")) {
        if (!run.doc["params"].is_string()) throw ConfigError("config field 'params' must be a path string");
        run.paramsPath = configFile.parent_path() / run.doc["params"].get<std::string>();
    } else {
        throw ConfigError("no parameter set: give --params or a 'params' field in " + configFile.string());
    }
    run.params = loadParameterSet(run.paramsPath);
    run.paramsId = paramsIdOf(run.paramsPath);
    run.inputHash = hashInputs(command, {slurp(configFile), slurp(run.paramsPath)});
    return run;
}

// ---------------------------------------------------------------------------

void cmdCurves(const fs::path& paramsFile, const CurvesOptions& o, const fs::path& outDir) {
    if (o.n < 2) throw ConfigError("curves: n must be at least 2");
    if (!(o.phiMin > 0.0 && o.phiMin < o.phiMax && o.phiMax < 1.0))
        throw ConfigError("curves: need 0 < phi-min < phi-max < 1");
    const ParameterSet p = loadParameterSet(paramsFile);
    prepare(outDir);
    csv::Writer w(outDir / "curves.csv", {"phi", "G", "dG"});
    for (int k = 0; k < o.n; ++k) {
        const double phi = k + 1 == o.n ? o.phiMax : o.phiMin + (o.phiMax - o.phiMin) * k / (o.n - 1);
        w.add(phi).add(constitutive::G(phi, p)).add(constitutive::dG(phi, p));
        w.endRow();
    }
    Manifest m{"curves", "", paramsIdOf(paramsFile), outDir.string(), "", json::object()};
    m.extra["options"] = {{"phi_min", number(o.phiMin)}, {"phi_max", number(o.phiMax)}, {"n", o.n}};
    m.inputHash = hashInputs("curves", {slurp(paramsFile), m.extra["options"].dump()});
    writeManifest(outDir, m);
}

json cmdRoots(const fs::path& paramsFile, const fs::path& outDir) {
    const ParameterSet p = loadParameterSet(paramsFile);
    json doc;
    doc["phi_critical"] = json::array();
    for (const double phi : hyperbolicity::findPhiCritical(p)) doc["phi_critical"].push_back(phi);
    doc["phi_star"] = json::array();
    doc["phi_star_admissible"] = json::array();
    try {
        for (const auto& r : hyperbolicity::solvePhiStar(p)) {
            doc["phi_star"].push_back(r.phi);
            doc["phi_star_admissible"].push_back(r.admissible);
        }
    } catch (const NoRoot&) {
        // reported as an empty list
    }
    prepare(outDir);
    writeJson(outDir / "roots.json", doc);
    Manifest m{"roots", "", paramsIdOf(paramsFile), outDir.string(), hashInputs("roots", {slurp(paramsFile)}),
               json::object()};
    writeManifest(outDir, m);
    return doc;
}

void cmdMap(const fs::path& paramsFile, const MapOptions& o, const fs::path& outDir) {
    if (o.nPhi < 1 || o.nU < 1) throw ConfigError("map: grid sizes must be positive");
    if (!(o.phiMin > 0.0 && o.phiMin <= o.phiMax && o.phiMax < 1.0))
        throw ConfigError("map: need 0 < phi-min <= phi-max < 1");
    if (!(o.uMin <= o.uMax)) throw ConfigError("map: need u-min <= u-max");
    const ParameterSet p = loadParameterSet(paramsFile);
    const auto grid = hyperbolicity::scanRegion(p, {o.phiMin, o.phiMax}, {o.uMin, o.uMax}, o.nPhi, o.nU);
    prepare(outDir);
    csv::Writer w(outDir / "map.csv", {"phi", "u", "hyp_margin", "nc_margin", "ukl_gamma"});
    for (const auto& pt : grid) {
        w.add(pt.phi).add(pt.u).add(pt.hypMargin).add(pt.ncMargin).add(pt.uklGamma);
        w.endRow();
    }
    Manifest m{"map", "", paramsIdOf(paramsFile), outDir.string(), "", json::object()};
    m.extra["options"] = {{"phi_min", number(o.phiMin)}, {"phi_max", number(o.phiMax)}, {"u_min", number(o.uMin)},
                          {"u_max", number(o.uMax)},     {"n_phi", o.nPhi},           {"n_u", o.nU}};
    m.inputHash = hashInputs("map", {slurp(paramsFile), m.extra["options"].dump()});
    writeManifest(outDir, m);
}

namespace {

void writeRecord(const solver::SimulationRecord& rec, const ParameterSet& p, const fs::path& outDir) {
    {
        csv::Writer w(outDir / "snapshots.csv", {"t", "y", "psi", "u"});
        for (const auto& s : rec.snapshots)
            for (std::size_t i = 0; i < s.n; ++i) {
                w.add(s.t).add(s.y[i]).add(s.psi[i]).add(s.u[i]);
                w.endRow();
            }
    }
    {
        csv::Writer w(outDir / "diagnostics.csv", {"t", "mass", "energy", "sup_eta", "sup_u", "sup_eta_x", "sup_u_x"});
        for (const auto& d : rec.diagnostics) {
            w.add(d.t).add(d.mass).add(d.energy).add(d.supEta).add(d.supU).add(d.supEtaX).add(d.supUX);
            w.endRow();
        }
    }
    {
        csv::Writer w(outDir / "energy.csv", {"t", "energy", "model_energy"});
        for (const auto& d : rec.diagnostics) {
            w.add(d.t).add(d.energy).add(d.modelEnergy);
            w.endRow();
        }
    }
    {
        csv::Writer w(outDir / "interfaces.csv", {"t", "S1", "S2", "domain_length_check"});
        const auto& tr = rec.interfaces;
        for (std::size_t k = 0; k < tr.times.size(); ++k) {
            w.add(tr.times[k]).add(tr.S1[k]).add(tr.S2[k]).add(tr.lengthCheck[k]);
            w.endRow();
        }
    }
    {
        csv::Writer w(outDir / "sup_norms.csv", {"t", "V1", "V2", "W1", "W2", "U1", "U2"});
        const auto s = characteristics::supNorms(rec, p);
        for (std::size_t k = 0; k < s.times.size(); ++k) {
            w.add(s.times[k]).add(s.V1[k]).add(s.V2[k]).add(s.W1[k]).add(s.W2[k]).add(s.U1[k]).add(s.U2[k]);
            w.endRow();
        }
    }
}

json terminationJson(const solver::SimulationRecord& rec) {
    return {{"reason", rec.terminationReason}, {"detail", rec.terminationDetail}, {"steps", rec.steps},
            {"psi_star", rec.psiStar}};
}

}  // namespace

solver::SimulationRecord cmdSimulate(const fs::path& configFile, const std::optional<fs::path>& params,
                                     const fs::path& outDir) {
    const LoadedRun run = loadRun(configFile, params, "simulate");
    const solver::GelModel model = solver::makeModel(run.config, run.params);
    const solver::SimulationRecord rec = solver::run(run.config, model);
    prepare(outDir);
    writeRecord(rec, model.params(), outDir);
    Manifest m{"simulate", configFile.string(), run.paramsId, outDir.string(), run.inputHash, json::object()};
    m.extra["settings"] = toJson(run.config);
    m.extra["termination"] = terminationJson(rec);
    writeManifest(outDir, m);
    return rec;
}

namespace {

const std::set<std::string> scalingKeys = {"epsList", "exitFactor", "uRatio"};
const std::set<std::string> traceKeys = {"anchors", "traceStep", "maxReflections"};

json rowJson(const characteristics::LifetimeRow& r) {
    return {{"eps", r.eps}, {"T_exit", r.tExit}, {"reason", r.reason}, {"initial_norm", r.initialNorm}};
}

}  // namespace

characteristics::LifetimeTable cmdScaling(const fs::path& configFile, const std::optional<fs::path>& params,
                                          const fs::path& outDir) {
    const LoadedRun run = loadRun(configFile, params, "scaling", scalingKeys);
    if (!run.doc.contains("epsList")) throw ConfigError("scaling: config needs an 'epsList'");
    const std::vector<double> epsList = getNumbers(run.doc, "epsList");
    if (epsList.empty()) throw ConfigError("scaling: 'epsList' is empty");
    for (std::size_t k = 0; k < epsList.size(); ++k) {
        if (!(epsList[k] > 0.0)) throw ConfigError("scaling: eps values must be positive");
        if (k && !(epsList[k] < epsList[k - 1])) throw ConfigError("scaling: 'epsList' must be strictly decreasing");
    }
    characteristics::LifetimeOptions opts;
    if (run.doc.contains("exitFactor")) opts.exitFactor = getNumber(run.doc, "exitFactor");
    if (run.doc.contains("uRatio")) opts.uRatio = getNumber(run.doc, "uRatio");

    prepare(outDir);
    characteristics::LifetimeTable table;
    for (std::size_t k = 0; k < epsList.size(); ++k) {
        const double eps = epsList[k];
        char name[32];
        std::snprintf(name, sizeof name, "eps_%02zu", k);
        const fs::path sub = outDir / name;
        const std::string hash = hashInputs("scaling-run", {run.inputHash, csv::formatDouble(eps)});
        const fs::path rowFile = sub / "row.json";

        // Resume: a finished subrun with the same inputs is reused verbatim.
        if (fs::exists(rowFile) && fs::exists(sub / "manifest.json")) {
            const json prev = readJsonFile(sub / "manifest.json");
            if (prev.value("input_hash", "") == hash) {
                const json r = readJsonFile(rowFile);
                table.rows.push_back({r.at("eps").get<double>(), r.at("T_exit").get<double>(),
                                      r.at("reason").get<std::string>(), r.at("initial_norm").get<double>()});
                continue;
            }
        }
        const auto row = characteristics::lifetimeRun(run.params, run.config, eps, opts);
        prepare(sub);
        writeJson(rowFile, rowJson(row));
        Manifest m{"scaling-run", configFile.string(), run.paramsId, sub.string(), hash, json::object()};
        m.extra["eps"] = eps;
        writeManifest(sub, m);
        table.rows.push_back(row);
    }
    table.fit = characteristics::lifetimeFit(table.rows);

    {
        csv::Writer w(outDir / "lifetime.csv", {"eps", "T_exit", "reason"});
        for (const auto& r : table.rows) {
            w.add(r.eps).add(r.tExit).add(r.reason);
            w.endRow();
        }
    }
    json fit = {{"rows", table.rows.size()}, {"x", "|log eps|"}, {"y", "T_exit"}};
    if (table.fit) {
        fit["slope"] = number(table.fit->slope);
        fit["intercept"] = number(table.fit->intercept);
        if (table.fit->correlation) fit["correlation"] = number(*table.fit->correlation);
    }
    writeJson(outDir / "fit.json", fit);

    Manifest m{"scaling", configFile.string(), run.paramsId, outDir.string(), run.inputHash, json::object()};
    m.extra["settings"] = toJson(run.config);
    m.extra["exit_factor"] = opts.exitFactor;
    m.extra["u_ratio"] = opts.uRatio;
    writeManifest(outDir, m);
    return table;
}

json cmdTrace(const fs::path& configFile, const std::optional<fs::path>& params, const fs::path& outDir) {
    const LoadedRun run = loadRun(configFile, params, "trace", traceKeys);
    characteristics::TraceOptions topts;
    if (run.doc.contains("traceStep")) topts.step = getNumber(run.doc, "traceStep");
    if (run.doc.contains("maxReflections")) topts.maxReflections = static_cast<int>(getCount(run.doc, "maxReflections"));

    struct Anchor {
        int family;
        double x, t;
    };
    std::vector<Anchor> anchors;
    if (run.doc.contains("anchors")) {
        for (const auto& a : run.doc["anchors"]) {
            if (!a.is_object()) throw ConfigError("trace: each anchor must be an object {family, x, t}");
            for (const auto& [key, _] : a.items())
                if (key != "family" && key != "x" && key != "t") throw ConfigError("unknown anchor field '" + key + "'");
            anchors.push_back({static_cast<int>(getCount(a, "family")), getNumber(a, "x"),
                               a.contains("t") ? getNumber(a, "t") : run.config.tEnd});
        }
    } else {
        for (int fam = 1; fam <= 2; ++fam)
            for (int k = 1; k <= 7; ++k) anchors.push_back({fam, k / 8.0, run.config.tEnd});
    }

    const solver::GelModel model = solver::makeModel(run.config, run.params);
    const solver::SimulationRecord rec = solver::run(run.config, model);
    if (rec.terminationReason != "t_end")
        throw DomainError("trace: simulation ended early (" + rec.terminationReason + "): " + rec.terminationDetail);
    const characteristics::SpeedField field(rec, model.params());
    const double T1 = 1.0 / field.lambdaMax();
    const double T2 = 1.0 / field.lambdaMin();

    prepare(outDir);
    json doc = {{"T1", T1}, {"T2", T2}, {"lambda_min", field.lambdaMin()}, {"lambda_max", field.lambdaMax()}};
    doc["traces"] = json::array();
    bool allOk = true;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        const auto& a = anchors[k];
        const auto trace = characteristics::traceCharacteristic(field, a.family, a.x, a.t, topts);
        char name[48];
        std::snprintf(name, sizeof name, "trace_%03zu.csv", k);
        csv::Writer w(outDir / name, {"tau", "xi", "family"});
        for (const auto& pt : trace.path) {
            w.add(pt.tau).add(pt.xi).add(std::to_string(pt.family));
            w.endRow();
        }
        const auto check = characteristics::checkReflectionTimes(trace, T1, T2);
        allOk = allOk && check.ok;
        json refl = json::array();
        for (const auto& r : trace.reflections) refl.push_back({{"boundary", r.boundary}, {"tau", r.tau}});
        doc["traces"].push_back({{"file", name},
                                 {"family", a.family},
                                 {"x", a.x},
                                 {"t", a.t},
                                 {"reached_initial_line", trace.reachedInitialLine},
                                 {"reflections", refl},
                                 {"forward_residual", std::abs(characteristics::recoverAnchor(field, trace, topts.step) - a.x)},
                                 {"inequalities_ok", check.ok},
                                 {"violations", check.violations}});
    }
    doc["all_inequalities_ok"] = allOk;
    writeJson(outDir / "traces.json", doc);

    Manifest m{"trace", configFile.string(), run.paramsId, outDir.string(), run.inputHash, json::object()};
    m.extra["settings"] = toJson(run.config);
    m.extra["termination"] = terminationJson(rec);
    writeManifest(outDir, m);
    return doc;
}

// ---------------------------------------------------------------------------

namespace {

template <class E>
bool is(const std::exception& e) {
    return dynamic_cast<const E*>(&e) != nullptr;
}

std::string kindOf(const std::exception& e) {
    if (is<ConfigError>(e)) return "ConfigError";
    if (is<NotHyperbolic>(e)) return "NotHyperbolic";
    if (is<NonFinite>(e)) return "NonFinite";
    if (is<NoRoot>(e)) return "NoRoot";
    if (is<QuadratureError>(e)) return "QuadratureError";
    if (is<IncompatibleData>(e)) return "IncompatibleData";
    if (is<BoundBlowup>(e)) return "BoundBlowup";
    if (is<InterpolationOutOfRange>(e)) return "InterpolationOutOfRange";
    if (is<NonMonotone>(e)) return "NonMonotone";
    if (is<DomainError>(e)) return "DomainError";
    return "Error";
}

int fail(const std::string& command, const std::string& kind, const std::string& message, int code) {
    json err = {{"error", {{"command", command}, {"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gelswell: 1-D gel swelling model toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    std::string paramsFile;
    std::string outDir = "out";
    bool seedless = false;
    app.add_option("--params", paramsFile, "parameter set JSON");
    app.add_option("--out", outDir, "output directory");
    app.add_flag("--seedless", seedless, "no RNG is used anywhere; accepted for compatibility");

    CurvesOptions curves;
    auto* cCurves = app.add_subcommand("curves", "G and G' on a uniform phi grid");
    cCurves->add_option("--phi-min", curves.phiMin);
    cCurves->add_option("--phi-max", curves.phiMax);
    cCurves->add_option("-n,--n", curves.n);

    app.add_subcommand("roots", "critical fractions (G' = 0) and saturation roots");

    MapOptions map;
    auto* cMap = app.add_subcommand("map", "hyperbolicity / non-characteristic / UKL margins on a (phi, u) grid");
    cMap->add_option("--phi-min", map.phiMin);
    cMap->add_option("--phi-max", map.phiMax);
    cMap->add_option("--u-min", map.uMin);
    cMap->add_option("--u-max", map.uMax);
    cMap->add_option("--n-phi", map.nPhi);
    cMap->add_option("--n-u", map.nU);

    std::string configFile;
    auto* cSim = app.add_subcommand("simulate", "run the fixed-domain solver");
    cSim->add_option("config", configFile, "simulation config JSON")->required();
    auto* cScaling = app.add_subcommand("scaling", "lifetime study over an eps list");
    cScaling->add_option("config", configFile, "scaling config JSON")->required();
    auto* cTrace = app.add_subcommand("trace", "trace characteristics through a recorded run");
    cTrace->add_option("config", configFile, "trace config JSON")->required();
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("", "UsageError", e.what(), 2);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const std::optional<fs::path> params = paramsFile.empty() ? std::nullopt : std::optional<fs::path>(paramsFile);
    try {
        auto needParams = [&]() -> fs::path {
            if (!params) throw ConfigError(command + ": --params is required");
            return *params;
        };
        if (command == "curves") {
            cmdCurves(needParams(), curves, outDir);
        } else if (command == "roots") {
            std::cout << cmdRoots(needParams(), outDir).dump(2) << '\n';
        } else if (command == "map") {
            cmdMap(needParams(), map, outDir);
        } else if (command == "simulate") {
            const auto rec = cmdSimulate(configFile, params, outDir);
            std::cout << json(terminationJson(rec)).dump() << '\n';
        } else if (command == "scaling") {
            const auto table = cmdScaling(configFile, params, outDir);
            for (const auto& r : table.rows) std::cout << rowJson(r).dump() << '\n';
        } else if (command == "trace") {
            const json doc = cmdTrace(configFile, params, outDir);
            std::cout << json({{"all_inequalities_ok", doc["all_inequalities_ok"]}, {"traces", doc["traces"].size()}}).dump()
                      << '\n';
        }
    } catch (const std::exception& e) {
        return fail(command, kindOf(e), e.what(), 1);
    }
    return 0;
}

}  // namespace gelswell::cli
