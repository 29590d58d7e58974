#include "dvrqc/cli.hpp"

#include "dvrqc/active_space.hpp"
#include "dvrqc/detci.hpp"
#include "dvrqc/errors.hpp"
#include "dvrqc/jwci.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <set>
#include <sstream>

namespace dvrqc {

using nlohmann::json;

namespace {

constexpr Index kMaxActiveOrbitals = 16;

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            config_error(where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        config_error(where + "." + key, "missing");
    }
    return obj.at(key);
}

double get_number(const json& obj, const std::string& where, const char* key) {
    const json& v = require(obj, where, key);
    if (!v.is_number()) {
        config_error(where + "." + key, "expected a number");
    }
    return v.get<double>();
}

long long get_integer(const json& obj, const std::string& where, const char* key) {
    const json& v = require(obj, where, key);
    if (!v.is_number_integer()) {
        config_error(where + "." + key, "expected an integer");
    }
    return v.get<long long>();
}

double unit_scale(const json& obj, const std::string& where) {
    if (!obj.contains("units")) {
        config_error(where + ".units", "missing (declare \"angstrom\" or \"bohr\")");
    }
    const json& u = obj.at("units");
    if (u == "angstrom") {
        return kBohrPerAngstrom;
    }
    if (u == "bohr") {
        return 1.0;
    }
    config_error(where + ".units", "expected \"angstrom\" or \"bohr\"");
}

// A section that may hold one entry or a list of entries.
std::vector<json> entries(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        return {};
    }
    const json& v = doc.at(key);
    if (v.is_object()) {
        return {v};
    }
    if (v.is_array()) {
        return std::vector<json>(v.begin(), v.end());
    }
    config_error(key, "expected an object or an array of objects");
}

ActiveSpaceSpec parse_active(const json& e, const std::string& where) {
    if (!e.is_object()) {
        config_error(where, "expected an object");
    }
    reject_unknown(e, where, {"n_active_orb", "n_active_elec", "roots"});
    ActiveSpaceSpec spec;
    spec.n_active_orb = get_integer(e, where, "n_active_orb");
    spec.n_active_elec = static_cast<int>(get_integer(e, where, "n_active_elec"));
    spec.roots = e.contains("roots") ? static_cast<int>(get_integer(e, where, "roots")) : 1;
    if (spec.n_active_orb < 1 || spec.n_active_elec < 1 || spec.roots < 1) {
        config_error(where, "counts must be positive");
    }
    return spec;
}

void validate_active(const ActiveSpaceSpec& spec, const RunConfig& cfg, const std::string& where) {
    const int electrons = cfg.geometry.n_electrons;
    if (spec.n_active_elec > electrons) {
        config_error(where + ".n_active_elec", "exceeds the electron count");
    }
    if ((electrons - spec.n_active_elec) % 2 != 0) {
        config_error(where + ".n_active_elec", "leaves an odd number of core electrons (frozen core must be doubly "
                                               "occupied)");
    }
    if (spec.n_active_elec > 2 * spec.n_active_orb) {
        config_error(where + ".n_active_elec", "more electrons than the active orbitals can hold");
    }
    if (spec.n_active_orb > kMaxActiveOrbitals) {
        config_error(where + ".n_active_orb", "above the limit of " + std::to_string(kMaxActiveOrbitals));
    }
    const Index frozen = (electrons - spec.n_active_elec) / 2;
    if (frozen + spec.n_active_orb > cfg.basis.n) {
        config_error(where + ".n_active_orb", "frozen plus active orbitals exceed the basis size");
    }
}

std::string canonical_params(const json& params) {
    std::string out;
    for (const auto& [k, v] : params.items()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConvergenceError*>(&e) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr || dynamic_cast<const ConfigError*>(&e) != nullptr) {
        return 2;
    }
    return 3;
}

ReportRow failed_row(const std::string& method, json params, const std::string& stage, const std::exception& e) {
    ReportRow row;
    row.method = method;
    row.params = std::move(params);
    row.diagnostics = json::object();
    row.error = stage + ": " + e.what();
    return row;
}

json to_json(const std::vector<double>& v) { return json(v); }

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

std::vector<ReportRow> run_dmrg_rows(const RunConfig& cfg, const IntegralSet& ints, int& code) {
    std::vector<ReportRow> rows;
    for (const DmrgSpec& spec : cfg.dmrg) {
        json params = {{"d_schedule", spec.d_schedule},
                       {"sweeps", spec.sweeps},
                       {"mu", spec.mu},
                       {"lanczos_tol", spec.lanczos_tol}};
        try {
            DmrgConfig dc;
            dc.d_schedule = spec.d_schedule;
            dc.n_sweeps = spec.sweeps;
            dc.mu = spec.mu;
            dc.lanczos_tol = spec.lanczos_tol;
            dc.n_target = cfg.geometry.n_electrons;
            const DmrgResult r = dmrg_run(chain_terms(ints), dc);
            ReportRow row;
            row.method = "dmrg";
            row.params = params;
            row.energy = r.energy;
            const double max_trunc =
                r.truncation_errors.empty() ? 0.0
                                            : *std::max_element(r.truncation_errors.begin(), r.truncation_errors.end());
            row.diagnostics = {{"d_used", r.d_used},
                               {"half_sweeps", r.half_sweeps},
                               {"sweep_energies", to_json(r.sweep_energies)},
                               {"completed_sweep_energies", to_json(r.completed_sweep_energies)},
                               {"max_truncation_error", max_trunc},
                               {"truncation_errors", to_json(r.truncation_errors)},
                               {"n_expectation", r.n_expectation},
                               {"n_variance", r.n_variance},
                               {"number_flag", r.number_flag}};
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            rows.push_back(failed_row("dmrg", params, "dmrg", e));
            code = code != 0 ? code : exit_code_for(e);
        }
    }
    return rows;
}

std::vector<ReportRow> run_hf_chain(const RunConfig& cfg, const IntegralSet& ints, bool want_hf, bool want_casci,
                                    bool want_jwci, int& code) {
    std::vector<ReportRow> rows;
    const json hf_params = {{"n_basis", cfg.basis.n}, {"electrons", cfg.geometry.n_electrons}};
    std::optional<ScfResult> scf;
    std::string hf_failure;
    try {
        ScfResult r = scf_solve(ints, cfg.geometry.n_electrons, cfg.scf);
        ReportRow row;
        row.method = "hf";
        row.params = hf_params;
        row.energy = r.e_hf;
        row.diagnostics = {{"iterations", r.iterations},
                           {"converged", r.converged},
                           {"commutator_norm", r.commutator_norm},
                           {"orbital_energies", to_json(r.orbital_energies.head(std::min<Index>(
                                                    r.orbital_energies.size(), r.n_occupied + 4)))}};
        if (!r.converged) {
            row.error = "hf: SCF did not converge in " + std::to_string(r.iterations) + " iterations";
            hf_failure = *row.error;
            code = code != 0 ? code : 3;
        } else {
            scf = std::move(r);
        }
        if (want_hf) {
            rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        hf_failure = std::string("hf: ") + e.what();
        if (want_hf) {
            rows.push_back(failed_row("hf", hf_params, "hf", e));
        }
        code = code != 0 ? code : exit_code_for(e);
    }

    auto active_params = [](const ActiveSpaceSpec& s) {
        return json{{"n_active_orb", s.n_active_orb}, {"n_active_elec", s.n_active_elec}, {"roots", s.roots}};
    };
    auto skipped = [&](const std::string& method, const ActiveSpaceSpec& s) {
        ReportRow row;
        row.method = method;
        row.params = active_params(s);
        row.diagnostics = json::object();
        row.error = method + ": skipped (" + hf_failure + ")";
        return row;
    };

    if (want_casci) {
        for (const ActiveSpaceSpec& s : cfg.casci) {
            if (!scf) {
                rows.push_back(skipped("casci", s));
                continue;
            }
            try {
                const ActiveSpaceHamiltonian ash = build_active_hamiltonian(*scf, ints, s.n_active_orb, s.n_active_elec);
                const CiResult ci = solve_casci(ash, 0.0, s.roots);
                ReportRow row;
                row.method = "casci";
                row.params = active_params(s);
                row.energy = ci.energies[0];
                row.diagnostics = {{"dimension", ci.dimension},
                                   {"energies", to_json(ci.energies)},
                                   {"spin_squared", to_json(ci.spin_squared)},
                                   {"e_core", ash.e_core}};
                rows.push_back(std::move(row));
            } catch (const std::exception& e) {
                rows.push_back(failed_row("casci", active_params(s), "casci", e));
                code = code != 0 ? code : exit_code_for(e);
            }
        }
    }
    if (want_jwci) {
        for (const ActiveSpaceSpec& s : cfg.jwci) {
            if (!scf) {
                rows.push_back(skipped("jwci", s));
                continue;
            }
            try {
                const ActiveSpaceHamiltonian ash = build_active_hamiltonian(*scf, ints, s.n_active_orb, s.n_active_elec);
                const SpinChainHamiltonian h = build_jw_hamiltonian(ash);
                const JwciResult jw = solve_jwci(h, s.roots, JwSector{s.n_active_elec, std::nullopt});
                ReportRow row;
                row.method = "jwci";
                row.params = active_params(s);
                row.energy = jw.energies[0];
                row.diagnostics = {{"fock_dimension", h.dim()},
                                   {"energies", to_json(jw.energies)},
                                   {"n_expectation", to_json(jw.n_expectation)},
                                   {"sz_expectation", to_json(jw.sz_expectation)}};
                rows.push_back(std::move(row));
            } catch (const std::exception& e) {
                rows.push_back(failed_row("jwci", active_params(s), "jwci", e));
                code = code != 0 ? code : exit_code_for(e);
            }
        }
    }
    return rows;
}

std::string format_energy(double e, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, e);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

// Scalars only; arrays are summarized by their length.
std::string flatten(const json& obj) {
    std::string out;
    for (const auto& [k, v] : obj.items()) {
        if (!out.empty()) {
            out += ';';
        }
        if (v.is_array()) {
            out += k + "[" + std::to_string(v.size()) + "]";
        } else {
            out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    return out;
}

} // namespace

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        config_error("<root>", "expected a JSON object");
    }
    reject_unknown(doc, "",
                   {"description", "basis", "geometry", "electrons", "interaction", "scf", "casci", "jwci", "dmrg",
                    "output"});
    RunConfig cfg;
    cfg.digest = fnv1a_hex(doc.dump());

    const json& basis = require(doc, "<root>", "basis");
    reject_unknown(basis, "basis", {"kind", "range_low", "range_high", "n", "units"});
    const json& kind = require(basis, "basis", "kind");
    if (kind == "sine") {
        cfg.basis.kind = DvrKind::sine;
    } else if (kind == "sinc") {
        cfg.basis.kind = DvrKind::sinc;
    } else {
        config_error("basis.kind", "expected \"sine\" or \"sinc\"");
    }
    const double bscale = unit_scale(basis, "basis");
    cfg.basis.range_low = get_number(basis, "basis", "range_low") * bscale;
    cfg.basis.range_high = get_number(basis, "basis", "range_high") * bscale;
    cfg.basis.n = get_integer(basis, "basis", "n");
    if (cfg.basis.n < 2) {
        config_error("basis.n", "need at least 2 functions");
    }
    if (!(cfg.basis.range_high > cfg.basis.range_low)) {
        config_error("basis.range_high", "must exceed range_low");
    }

    const json& geom = require(doc, "<root>", "geometry");
    reject_unknown(geom, "geometry", {"positions", "charges", "units"});
    const double gscale = unit_scale(geom, "geometry");
    const json& pos = require(geom, "geometry", "positions");
    const json& chg = require(geom, "geometry", "charges");
    if (!pos.is_array() || pos.empty() || !std::all_of(pos.begin(), pos.end(), [](const json& v) { return v.is_number(); })) {
        config_error("geometry.positions", "expected a non-empty array of numbers");
    }
    if (!chg.is_array() ||
        !std::all_of(chg.begin(), chg.end(), [](const json& v) { return v.is_number_integer(); })) {
        config_error("geometry.charges", "expected an array of integers");
    }
    if (chg.size() != pos.size()) {
        config_error("geometry.charges", "length differs from geometry.positions");
    }
    for (const json& p : pos) {
        cfg.geometry.positions.push_back(p.get<double>() * gscale);
    }
    for (const json& c : chg) {
        cfg.geometry.charges.push_back(c.get<int>());
    }
    const long long electrons = get_integer(doc, "<root>", "electrons");
    if (electrons < 1) {
        config_error("electrons", "must be positive");
    }
    if (electrons % 2 != 0) {
        config_error("electrons", "restricted closed-shell HF needs an even count");
    }
    if (electrons > 2 * cfg.basis.n) {
        config_error("electrons", "more than the basis can hold");
    }
    cfg.geometry.n_electrons = static_cast<int>(electrons);
    try {
        cfg.geometry.validate();
    } catch (const std::exception& e) {
        config_error("geometry", e.what());
    }

    if (doc.contains("interaction")) {
        const json& inter = doc.at("interaction");
        reject_unknown(inter, "interaction", {"electron_nuclear", "electron_electron", "nuclear_nuclear"});
        auto kernel = [&](const char* key, ScreenedCoulomb& out) {
            if (!inter.contains(key)) {
                return;
            }
            const std::string where = std::string("interaction.") + key;
            const json& k = inter.at(key);
            reject_unknown(k, where, {"length", "units"});
            out.length = get_number(k, where, "length") * unit_scale(k, where);
            if (!(out.length > 0.0)) {
                config_error(where + ".length", "must be positive");
            }
        };
        kernel("electron_nuclear", cfg.interactions.electron_nuclear);
        kernel("electron_electron", cfg.interactions.electron_electron);
        kernel("nuclear_nuclear", cfg.interactions.nuclear_nuclear);
    }

    if (doc.contains("scf")) {
        const json& s = doc.at("scf");
        reject_unknown(s, "scf", {"max_iter", "e_tol", "comm_tol", "mixing", "diis"});
        if (s.contains("max_iter")) cfg.scf.max_iter = static_cast<int>(get_integer(s, "scf", "max_iter"));
        if (s.contains("e_tol")) cfg.scf.e_tol = get_number(s, "scf", "e_tol");
        if (s.contains("comm_tol")) cfg.scf.comm_tol = get_number(s, "scf", "comm_tol");
        if (s.contains("mixing")) cfg.scf.mixing = get_number(s, "scf", "mixing");
        if (s.contains("diis")) {
            if (!s.at("diis").is_boolean()) {
                config_error("scf.diis", "expected a boolean");
            }
            cfg.scf.use_diis = s.at("diis").get<bool>();
        }
        if (cfg.scf.max_iter < 1 || !(cfg.scf.mixing > 0.0 && cfg.scf.mixing <= 1.0)) {
            config_error("scf", "max_iter must be positive and mixing in (0, 1]");
        }
    }

    const auto casci = entries(doc, "casci");
    for (std::size_t k = 0; k < casci.size(); ++k) {
        const std::string where = "casci[" + std::to_string(k) + "]";
        cfg.casci.push_back(parse_active(casci[k], where));
        validate_active(cfg.casci.back(), cfg, where);
    }
    if (doc.contains("jwci")) {
        const auto jw = entries(doc, "jwci");
        for (std::size_t k = 0; k < jw.size(); ++k) {
            const std::string where = "jwci[" + std::to_string(k) + "]";
            cfg.jwci.push_back(parse_active(jw[k], where));
            validate_active(cfg.jwci.back(), cfg, where);
        }
    } else {
        cfg.jwci = cfg.casci;
    }

    const auto dmrg = entries(doc, "dmrg");
    for (std::size_t k = 0; k < dmrg.size(); ++k) {
        const std::string where = "dmrg[" + std::to_string(k) + "]";
        const json& e = dmrg[k];
        if (!e.is_object()) {
            config_error(where, "expected an object");
        }
        reject_unknown(e, where, {"d_schedule", "sweeps", "mu", "lanczos_tol"});
        DmrgSpec spec;
        const json& ds = require(e, where, "d_schedule");
        if (ds.is_number_integer()) {
            spec.d_schedule.push_back(ds.get<Index>());
        } else if (ds.is_array() && !ds.empty() &&
                   std::all_of(ds.begin(), ds.end(), [](const json& v) { return v.is_number_integer(); })) {
            for (const json& v : ds) {
                spec.d_schedule.push_back(v.get<Index>());
            }
        } else {
            config_error(where + ".d_schedule", "expected an integer or a non-empty array of integers");
        }
        for (std::size_t q = 0; q < spec.d_schedule.size(); ++q) {
            if (spec.d_schedule[q] < 1 || (q > 0 && spec.d_schedule[q] < spec.d_schedule[q - 1])) {
                config_error(where + ".d_schedule", "must be positive and non-decreasing");
            }
        }
        if (e.contains("sweeps")) spec.sweeps = static_cast<int>(get_integer(e, where, "sweeps"));
        if (e.contains("mu")) spec.mu = get_number(e, where, "mu");
        if (e.contains("lanczos_tol")) spec.lanczos_tol = get_number(e, where, "lanczos_tol");
        if (spec.sweeps < 0 || spec.mu < 0.0 || !(spec.lanczos_tol > 0.0)) {
            config_error(where, "sweeps and mu must be non-negative, lanczos_tol positive");
        }
        if (cfg.basis.n < 4 || cfg.basis.n % 2 != 0) {
            config_error(where, "dmrg needs an even basis size of at least 4");
        }
        cfg.dmrg.push_back(std::move(spec));
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        reject_unknown(o, "output", {"format", "path"});
        if (o.contains("format")) {
            const json& f = o.at("format");
            if (f == "table") {
                cfg.format = OutputFormat::table;
            } else if (f == "json") {
                cfg.format = OutputFormat::json;
            } else if (f == "csv") {
                cfg.format = OutputFormat::csv;
            } else {
                config_error("output.format", "expected \"table\", \"json\" or \"csv\"");
            }
        }
        if (o.contains("path") && !o.at("path").is_null()) {
            if (!o.at("path").is_string()) {
                config_error("output.path", "expected a string");
            }
            cfg.output_path = o.at("path").get<std::string>();
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

std::string to_string(Method m) {
    switch (m) {
    case Method::hf: return "hf";
    case Method::casci: return "casci";
    case Method::jwci: return "jwci";
    case Method::dmrg: return "dmrg";
    }
    return "?";
}

std::vector<Method> parse_methods(const std::string& list) {
    std::set<Method> chosen;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) {
            continue;
        }
        if (item == "all") {
            chosen.insert({Method::hf, Method::casci, Method::jwci, Method::dmrg});
        } else if (item == "hf") {
            chosen.insert(Method::hf);
        } else if (item == "casci") {
            chosen.insert(Method::casci);
        } else if (item == "jwci") {
            chosen.insert(Method::jwci);
        } else if (item == "dmrg") {
            chosen.insert(Method::dmrg);
        } else {
            throw ConfigError("methods: unknown method '" + item + "'");
        }
    }
    return {chosen.begin(), chosen.end()};
}

DvrBasis build_basis(const BasisSpec& spec) {
    if (spec.kind == DvrKind::sine) {
        return build_sine_dvr(spec.range_low, spec.range_high, spec.n);
    }
    return build_sinc_dvr(spec.range_low, (spec.range_high - spec.range_low) / static_cast<double>(spec.n - 1), spec.n);
}

Report run(const RunConfig& config, const std::vector<Method>& methods, const RunOptions& opts) {
    Report report;
    report.config_digest = config.digest;
    if (methods.empty()) {
        return report;
    }
    auto wants = [&](Method m) { return std::find(methods.begin(), methods.end(), m) != methods.end(); };
    const IntegralSet ints = build_integrals(build_basis(config.basis), config.geometry, config.interactions);

    const bool want_hf = wants(Method::hf);
    const bool want_casci = wants(Method::casci);
    const bool want_jwci = wants(Method::jwci);
    const bool chain = want_hf || want_casci || want_jwci;
    const bool want_dmrg = wants(Method::dmrg);

    int chain_code = 0;
    int dmrg_code = 0;
    std::vector<ReportRow> chain_rows;
    std::vector<ReportRow> dmrg_rows;
    if (opts.parallel && chain && want_dmrg) {
        auto fut = std::async(std::launch::async, [&] { return run_dmrg_rows(config, ints, dmrg_code); });
        chain_rows = run_hf_chain(config, ints, want_hf, want_casci, want_jwci, chain_code);
        dmrg_rows = fut.get();
    } else {
        if (chain) {
            chain_rows = run_hf_chain(config, ints, want_hf, want_casci, want_jwci, chain_code);
        }
        if (want_dmrg) {
            dmrg_rows = run_dmrg_rows(config, ints, dmrg_code);
        }
    }
    report.rows = std::move(chain_rows);
    std::move(dmrg_rows.begin(), dmrg_rows.end(), std::back_inserter(report.rows));
    report.exit_code = chain_code != 0 ? chain_code : dmrg_code;
    return report;
}

json report_json(const Report& report) {
    json rows = json::array();
    for (const ReportRow& r : report.rows) {
        json row = {{"method", r.method},
                    {"params", r.params},
                    {"energy_hartree", r.energy ? json(*r.energy) : json(nullptr)},
                    {"diagnostics", r.diagnostics}};
        if (r.error) {
            row["error"] = *r.error;
        }
        rows.push_back(std::move(row));
    }
    return {{"config_digest", report.config_digest},
            {"rows", rows},
            {"versions",
             {{"dvrqc", "0.1.0"},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}}};
}

std::string format_report(const Report& report, OutputFormat format) {
    std::ostringstream out;
    switch (format) {
    case OutputFormat::json:
        out << report_json(report).dump(2) << '\n';
        break;
    case OutputFormat::csv:
        out << "method,params,energy_hartree,diagnostics,error\n";
        for (const ReportRow& r : report.rows) {
            out << r.method << ',' << csv_quote(flatten(r.params)) << ','
                << (r.energy ? format_energy(*r.energy, 12) : std::string()) << ','
                << csv_quote(flatten(r.diagnostics)) << ',' << csv_quote(r.error.value_or("")) << '\n';
        }
        break;
    case OutputFormat::table: {
        char line[512];
        out << "config " << report.config_digest << '\n';
        std::snprintf(line, sizeof line, "%-8s %-44s %14s\n", "method", "params", "energy (Ha)");
        out << line;
        for (const ReportRow& r : report.rows) {
            std::string params;
            if (r.method == "casci" || r.method == "jwci") {
                params = "(" + std::to_string(r.params.value("n_active_orb", 0)) + "," +
                         std::to_string(r.params.value("n_active_elec", 0)) + ")";
            } else if (r.method == "dmrg") {
                params = "D=" + r.params["d_schedule"].dump() + " sweeps=" + r.params["sweeps"].dump() +
                         " mu=" + r.params["mu"].dump();
            } else {
                params = canonical_params(r.params);
            }
            std::snprintf(line, sizeof line, "%-8s %-44s %14s\n", r.method.c_str(), params.c_str(),
                          r.energy ? format_energy(*r.energy, 6).c_str() : "-");
            out << line;
            if (r.method == "dmrg" && r.energy) {
                char extra[256];
                std::snprintf(extra, sizeof extra, "         <N>=%.6f max truncation error=%.3e half-sweeps=%d\n",
                              r.diagnostics.value("n_expectation", 0.0),
                              r.diagnostics.value("max_truncation_error", 0.0),
                              r.diagnostics.value("half_sweeps", 0));
                out << extra;
            }
            if (r.error) {
                out << "         error: " << *r.error << '\n';
            }
        }
        break;
    }
    }
    return out.str();
}

IntegralSet random_small_instance(std::uint64_t seed, Index n) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double half = 4.0 + 4.0 * uniform();
    const double p1 = -half * (0.1 + 0.4 * uniform());
    const double p2 = half * (0.1 + 0.4 * uniform());
    ChainGeometry geom{{p1, p2}, {1, 1}, 2};
    InteractionModel inter;
    inter.electron_nuclear.length = 1.0 + uniform();
    inter.electron_electron.length = 1.0 + uniform();
    return build_integrals(build_sine_dvr(-half, half, n), geom, inter);
}

std::vector<SelftestCheck> selftest() {
    std::vector<SelftestCheck> checks;
    char buf[256];

    {
        const DvrBasis box = build_sine_dvr(0.0, M_PI, 64);
        const Vector ev = dense_sym_eig(kinetic_matrix(box)).values;
        double worst = 0.0;
        for (int k = 1; k <= 5; ++k) {
            worst = std::max(worst, std::abs(ev[k - 1] - 0.5 * k * k) / (0.5 * k * k));
        }
        std::snprintf(buf, sizeof buf, "max relative error %.2e", worst);
        checks.push_back({"sine DVR box spectrum k^2/2, k=1..5", worst < 1e-6, buf});
    }
    {
        const SiteOperatorSet ops = jw_site_ops();
        Eigen::Matrix4d up;
        Eigen::Matrix4d dn;
        up << 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0;
        dn << 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0;
        const bool ok = ops.a_up == up && ops.a_dn == dn;
        checks.push_back({"site annihilators verbatim", ok, ok ? "exact" : "mismatch"});
    }
    const std::pair<std::uint64_t, Index> cases[] = {{11, 4}, {12, 4}, {13, 6}, {14, 6}};
    for (const auto& [seed, n] : cases) {
        const IntegralSet ints = random_small_instance(seed, n);
        const ActiveSpaceHamiltonian ash = full_space_hamiltonian(ints, Matrix::Identity(n, n), 2);
        const double e_det = solve_casci(ash).energies[0];
        const double e_jw = solve_jwci(build_jw_hamiltonian(ash), 1, JwSector{2, std::nullopt}).energies[0];
        DmrgConfig dc;
        dc.d_schedule = {Index{1} << n};
        dc.n_target = 2;
        dc.lanczos_tol = 1e-10;
        const double e_dmrg = dmrg_run(chain_terms(ints), dc).energy;
        const double spread = std::max({e_det, e_jw, e_dmrg}) - std::min({e_det, e_jw, e_dmrg});
        std::snprintf(buf, sizeof buf, "detci %.10f jwci %.10f dmrg %.10f spread %.1e", e_det, e_jw, e_dmrg, spread);
        checks.push_back({"detci = jwci = dmrg, seed " + std::to_string(seed) + ", n=" + std::to_string(n),
                          spread < 1e-8, buf});
    }
    return checks;
}

} // namespace dvrqc
