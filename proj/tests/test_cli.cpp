#include "dvrqc/cli.hpp"
#include "dvrqc/errors.hpp"

#include <doctest.h>

#include <string>

using namespace dvrqc;
using nlohmann::json;

namespace {

json small_doc() {
    return json::parse(R"({
        "basis": {"kind": "sine", "range_low": -5, "range_high": 5, "n": 8, "units": "bohr"},
        "geometry": {"positions": [-1, 1], "charges": [1, 1], "units": "bohr"},
        "electrons": 2,
        "casci": {"n_active_orb": 4, "n_active_elec": 2},
        "dmrg": {"d_schedule": 8, "sweeps": 2}
    })");
}

std::string config_path(const char* name) { return std::string(DVRQC_CONFIG_DIR) + "/" + name; }

const ReportRow* find_row(const Report& r, const std::string& method) {
    for (const auto& row : r.rows) {
        if (row.method == method) {
            return &row;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("bundled configs load with lengths in bohr") {
    const RunConfig a = load_config(config_path("chain4_angstrom.json"));
    const RunConfig b = load_config(config_path("chain4_bohr.json"));
    const RunConfig r = load_config(config_path("chain4_angstrom_ranged.json"));
    CHECK(a.basis.n == 32);
    CHECK(a.basis.range_high == doctest::Approx(15.0 * kBohrPerAngstrom));
    CHECK(b.basis.range_high == doctest::Approx(15.0));
    CHECK(a.geometry.positions[3] == doctest::Approx(5.0 * kBohrPerAngstrom));
    CHECK(a.geometry.n_electrons == 4);
    CHECK(r.interactions.electron_nuclear.length == doctest::Approx(1.5 * kBohrPerAngstrom));
    CHECK(r.interactions.electron_electron.length == doctest::Approx(2.5 * kBohrPerAngstrom));
    CHECK(r.interactions.nuclear_nuclear.length == doctest::Approx(1.0));
    CHECK(a.interactions.electron_electron.length == 1.0);
    REQUIRE(r.casci.size() == 2);
    CHECK(r.casci[1].n_active_orb == 12);
    CHECK(r.jwci.size() == 1);
    REQUIRE(r.dmrg.size() == 2);
    CHECK(r.dmrg[1].d_schedule == std::vector<Index>{12});
    CHECK(a.digest != b.digest);
    CHECK(a.digest.size() == 16);
    CHECK_THROWS_AS(load_config(config_path("no_such_file.json")), ConfigError);
}

TEST_CASE("config validation names the key") {
    const RunConfig ok = parse_config(small_doc());
    CHECK(ok.casci.size() == 1);
    CHECK(ok.jwci.size() == 1);  // falls back to the casci list
    CHECK(ok.dmrg[0].d_schedule == std::vector<Index>{8});
    CHECK(ok.dmrg[0].mu == 1.0);

    auto expect_error = [](json doc, const std::string& key) {
        try {
            parse_config(doc);
            FAIL("accepted an invalid config, expected complaint about " << key);
        } catch (const ConfigError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(key) != std::string::npos, e.what());
        }
    };
    json d = small_doc();
    d["basis"].erase("units");
    expect_error(d, "basis.units");
    d = small_doc();
    d["geometry"]["units"] = "furlong";
    expect_error(d, "geometry.units");
    d = small_doc();
    d["electrons"] = 3;
    expect_error(d, "electrons");
    d = small_doc();
    d["casci"]["n_active_elec"] = 1;
    expect_error(d, "casci[0]");
    d = small_doc();
    d["casci"]["n_active_orb"] = 17;
    expect_error(d, "casci[0]");
    d = small_doc();
    d["colour"] = "blue";
    expect_error(d, "colour");
    d = small_doc();
    d["dmrg"]["d_schedule"] = json::array({8, 4});
    expect_error(d, "dmrg[0]");
    d = small_doc();
    d["basis"]["n"] = 7;
    expect_error(d, "dmrg");
    d = small_doc();
    d["geometry"]["positions"] = json::array({1, -1});
    expect_error(d, "geometry");
    d = small_doc();
    d["casci"] = json::array({small_doc()["casci"], {{"n_active_orb", 6}, {"n_active_elec", 2}}});
    CHECK(parse_config(d).casci.size() == 2);
}

TEST_CASE("method lists") {
    CHECK(parse_methods("").empty());
    CHECK(parse_methods("all").size() == 4);
    CHECK(parse_methods("dmrg, hf") == std::vector<Method>{Method::hf, Method::dmrg});
    CHECK_THROWS_AS(parse_methods("hf,ccsd"), ConfigError);
    CHECK(to_string(Method::jwci) == "jwci");
}

TEST_CASE("run produces consistent rows") {
    const RunConfig cfg = parse_config(small_doc());
    CHECK(run(cfg, {}).rows.empty());

    const Report r = run(cfg, parse_methods("all"));
    CHECK(r.exit_code == 0);
    const ReportRow* hf = find_row(r, "hf");
    const ReportRow* cas = find_row(r, "casci");
    const ReportRow* jw = find_row(r, "jwci");
    const ReportRow* dm = find_row(r, "dmrg");
    REQUIRE((hf && cas && jw && dm));
    CHECK(*cas->energy <= *hf->energy);
    CHECK(*jw->energy == doctest::Approx(*cas->energy).epsilon(1e-9));
    CHECK(*dm->energy <= *cas->energy + 1e-9);
    CHECK(hf->diagnostics.contains("iterations"));

    const Report par = run(cfg, parse_methods("all"), {true});
    CHECK(report_json(par).dump() == report_json(r).dump());
}

TEST_CASE("report formats") {
    const RunConfig cfg = parse_config(small_doc());
    const Report r = run(cfg, parse_methods("hf,casci"));
    const json j = json::parse(format_report(r, OutputFormat::json));
    CHECK(j["config_digest"] == cfg.digest);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["method"] == "hf");
    CHECK(j["versions"].contains("dvrqc"));
    CHECK(format_report(r, OutputFormat::json) == format_report(run(cfg, parse_methods("hf,casci")), OutputFormat::json));

    const std::string csv = format_report(r, OutputFormat::csv);
    CHECK(csv.rfind("method,params,energy_hartree,diagnostics,error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const std::string table = format_report(r, OutputFormat::table);
    CHECK(table.find("casci") != std::string::npos);
    CHECK(table.find("(4,2)") != std::string::npos);
}

TEST_CASE("FNV-1a digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("stage failures map to exit codes") {
    json d = small_doc();
    d["basis"]["n"] = 12;
    d["jwci"] = {{"n_active_orb", 11}, {"n_active_elec", 2}};
    Report r = run(parse_config(d), parse_methods("hf,jwci"));
    CHECK(r.exit_code == 2);
    REQUIRE(find_row(r, "jwci"));
    CHECK(find_row(r, "jwci")->error->rfind("jwci:", 0) == 0);
    CHECK(find_row(r, "hf")->energy.has_value());

    d = small_doc();
    d["scf"] = {{"max_iter", 1}, {"diis", false}};
    r = run(parse_config(d), parse_methods("all"));
    CHECK(r.exit_code == 3);
    CHECK(find_row(r, "hf")->error.has_value());
    CHECK_FALSE(find_row(r, "casci")->energy.has_value());
    // dmrg does not depend on the SCF
    CHECK(find_row(r, "dmrg")->energy.has_value());
}

TEST_CASE("random instances are reproducible") {
    const IntegralSet a = random_small_instance(7, 4);
    const IntegralSet b = random_small_instance(7, 4);
    const IntegralSet c = random_small_instance(8, 4);
    CHECK(a.size() == 4);
    CHECK(max_abs(a.g - b.g) == 0.0);
    CHECK(max_abs(a.t - c.t) > 0.0);
}
