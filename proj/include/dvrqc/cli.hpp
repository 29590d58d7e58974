#pragma once

#include "dvrqc/dmrg.hpp"
#include "dvrqc/dvr.hpp"
#include "dvrqc/model.hpp"
#include "dvrqc/scf.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dvrqc {

enum class OutputFormat { table, json, csv };

struct BasisSpec {
    DvrKind kind = DvrKind::sine;
    double range_low = 0.0;   ///< bohr
    double range_high = 0.0;  ///< bohr
    Index n = 0;
};

struct ActiveSpaceSpec {
    Index n_active_orb = 0;
    int n_active_elec = 0;
    int roots = 1;
};

struct DmrgSpec {
    std::vector<Index> d_schedule;
    int sweeps = 4;
    double mu = 1.0;
    double lanczos_tol = 1e-8;
};

/// Validated run description. Every length is in bohr.
struct RunConfig {
    BasisSpec basis;
    ChainGeometry geometry;
    InteractionModel interactions;
    ScfOptions scf;
    std::vector<ActiveSpaceSpec> casci;
    std::vector<ActiveSpaceSpec> jwci;  ///< defaults to the casci list
    std::vector<DmrgSpec> dmrg;
    OutputFormat format = OutputFormat::table;
    std::optional<std::string> output_path;
    std::string digest;  ///< FNV-1a of the canonical JSON document
};

/// Sine: n interior points of (range_low, range_high). Sinc: n points from range_low to
/// range_high inclusive.
DvrBasis build_basis(const BasisSpec& spec);

/// Parse and validate. Throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

enum class Method { hf, casci, jwci, dmrg };

std::string to_string(Method m);
/// "hf,casci,jwci,dmrg", "all" or "" (validation only). Throws ConfigError on unknown names.
std::vector<Method> parse_methods(const std::string& list);

struct ReportRow {
    std::string method;
    nlohmann::json params;
    std::optional<double> energy;
    nlohmann::json diagnostics;
    std::optional<std::string> error;  ///< "stage: message"
};

struct Report {
    std::string config_digest;
    std::vector<ReportRow> rows;

    /// 0 ok, 2 when a stage rejected its input, 3 when a stage failed to converge.
    int exit_code = 0;
};

struct RunOptions {
    bool parallel = false;  ///< run dmrg alongside the hf -> casci/jwci chain
};

/// Executes the requested methods (hf before casci and jwci; dmrg straight on the DVR sites).
/// Stage failures are recorded as rows with an error and do not stop independent stages.
Report run(const RunConfig& config, const std::vector<Method>& methods, const RunOptions& opts = {});

nlohmann::json report_json(const Report& report);
std::string format_report(const Report& report, OutputFormat format);

/// FNV-1a 64, lowercase hex.
std::string fnv1a_hex(const std::string& data);

/// Small random chain for cross-method checks: sine DVR with n functions, two unit charges
/// and two electrons, deterministic in `seed`.
IntegralSet random_small_instance(std::uint64_t seed, Index n);

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Kinetic spectrum, verbatim site matrices and detci = jwci = exact dmrg on small chains.
std::vector<SelftestCheck> selftest();

} // namespace dvrqc
