// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.
#include "dvrqc/active_space.hpp"
#include "dvrqc/cli.hpp"
#include "dvrqc/detci.hpp"
#include "dvrqc/dmrg.hpp"
#include "dvrqc/jwci.hpp"

#include "quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <string>
#include <vector>

using namespace dvrqc;

namespace {

struct Reference {
    double hf = -1.412298;
    double cas6 = -1.423990;
    double cas12 = -1.425417;
    double dmrg10 = -1.424155;
    double dmrg12 = -1.425322;
};

struct TableRun {
    std::string name;
    ScfResult scf;
    IntegralSet ints;
    double cas6 = 0.0;
    double cas12 = 0.0;
    DmrgResult d10;
    DmrgResult d12;
    double seconds = 0.0;
    std::string error;
};

TableRun run_table(const std::string& file) {
    TableRun r;
    r.name = file;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const RunConfig cfg = load_config(std::string(DVRQC_CONFIG_DIR) + "/" + file);
        r.ints = build_integrals(build_basis(cfg.basis), cfg.geometry, cfg.interactions);
        ScfOptions so = cfg.scf;
        so.comm_tol = std::min(so.comm_tol, 1e-9);
        so.e_tol = std::min(so.e_tol, 1e-11);
        r.scf = scf_solve(r.ints, cfg.geometry.n_electrons, so);
        r.cas6 = solve_casci(build_active_hamiltonian(r.scf, r.ints, 6, 4)).energies[0];
        r.cas12 = solve_casci(build_active_hamiltonian(r.scf, r.ints, 12, 4)).energies[0];
        DmrgConfig dc;
        dc.n_target = cfg.geometry.n_electrons;
        dc.n_sweeps = 4;
        dc.mu = 1.0;
        dc.lanczos_tol = 1e-8;
        dc.d_schedule = {10};
        r.d10 = dmrg_run(chain_terms(r.ints), dc);
        dc.d_schedule = {12};
        r.d12 = dmrg_run(chain_terms(r.ints), dc);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

bool report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d %s: %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    return ok;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double worst_deviation(const TableRun& r, const Reference& ref, bool& within) {
    const double d_hf = std::abs(r.scf.e_hf - ref.hf);
    const double d_c6 = std::abs(r.cas6 - ref.cas6);
    const double d_c12 = std::abs(r.cas12 - ref.cas12);
    const double d_10 = std::abs(r.d10.energy - ref.dmrg10);
    const double d_12 = std::abs(r.d12.energy - ref.dmrg12);
    within = r.error.empty() && d_hf <= 1e-4 && d_c6 <= 1e-4 && d_c12 <= 1e-4 && d_10 <= 1e-3 && d_12 <= 1e-3;
    return std::max({d_hf, d_c6, d_c12, d_10, d_12});
}

double anticommutator_error(const std::vector<Matrix>& c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Index dim = c[i].rows();
        for (std::size_t j = 0; j < c.size(); ++j) {
            worst = std::max(worst, max_abs(c[i] * c[j] + c[j] * c[i]));
            const Matrix acd = c[i] * c[j].transpose() + c[j].transpose() * c[i];
            worst = std::max(worst, max_abs(acd - (i == j ? 1.0 : 0.0) * Matrix::Identity(dim, dim)));
        }
    }
    return worst;
}

} // namespace

int main() {
    bool all_ok = true;
    const Reference ref;

    // Criteria 1 and 2: the three bundled configs, run side by side.
    const std::vector<std::string> files = {"chain4_angstrom.json", "chain4_bohr.json",
                                            "chain4_angstrom_ranged.json"};
    std::vector<std::future<TableRun>> futures;
    for (const auto& f : files) {
        futures.push_back(std::async(std::launch::async, run_table, f));
    }
    std::vector<TableRun> runs;
    for (auto& f : futures) {
        runs.push_back(f.get());
    }
    const TableRun* match = nullptr;
    const TableRun* best = nullptr;
    double best_dev = INFINITY;
    for (const TableRun& r : runs) {
        bool within = false;
        const double dev = worst_deviation(r, ref, within);
        if (!r.error.empty()) {
            std::printf("  %-30s error: %s\n", r.name.c_str(), r.error.c_str());
            continue;
        }
        std::printf("  %-30s HF %.6f  CASCI(6,4) %.6f  CASCI(12,4) %.6f  DMRG10 %.6f  DMRG12 %.6f  "
                    "max|dev| %.1e  %.0fs%s\n",
                    r.name.c_str(), r.scf.e_hf, r.cas6, r.cas12, r.d10.energy, r.d12.energy, dev, r.seconds,
                    within ? "  <- match" : "");
        if (within && !match) {
            match = &r;
        }
        if (dev < best_dev) {
            best_dev = dev;
            best = &r;
        }
    }
    all_ok &= report(1, match != nullptr,
                     match ? "reference energies reproduced by " + match->name
                           : fmt("no config within tolerance (closest %s, max|dev| %.2e)",
                                 best ? best->name.c_str() : "none", best_dev));
    const TableRun* main_run = match ? match : best;
    if (!main_run) {
        std::printf("no config ran; remaining chain criteria cannot be evaluated\n");
        return 1;
    }

    {
        const double gap = std::abs(main_run->d12.energy - main_run->cas12);
        all_ok &= report(2, gap <= 1.5e-4, fmt("|E_DMRG(12) - E_CASCI(12,4)| = %.2e on %s", gap, main_run->name.c_str()));
    }

    // Criterion 3: randomized small chains, full CI vs Jordan-Wigner vs untruncated DMRG.
    std::vector<double> exact_energies;
    std::vector<IntegralSet> instances;
    {
        double worst = 0.0;
        int count = 0;
        const auto t0 = std::chrono::steady_clock::now();
        for (std::uint64_t seed = 1000; seed < 1024; ++seed) {
            const Index n = seed % 2 == 0 ? 4 : 6;
            const IntegralSet ints = random_small_instance(seed, n);
            const ActiveSpaceHamiltonian ash = full_space_hamiltonian(ints, Matrix::Identity(n, n), 2);
            const double e_det = solve_casci(ash).energies[0];
            const double e_jw = solve_jwci(build_jw_hamiltonian(ash), 1, JwSector{2, std::nullopt}).energies[0];
            DmrgConfig dc;
            dc.d_schedule = {Index{1} << n};  // 4^(n/2): nothing is discarded
            dc.n_target = 2;
            dc.lanczos_tol = 1e-10;
            const double e_dm = dmrg_run(chain_terms(ints), dc).energy;
            worst = std::max({worst, std::abs(e_det - e_jw), std::abs(e_det - e_dm), std::abs(e_jw - e_dm)});
            exact_energies.push_back(e_det);
            instances.push_back(ints);
            ++count;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all_ok &= report(3, worst <= 1e-8,
                         fmt("%d instances (n=4,6; 2 electrons), max pairwise spread %.1e, %.1fs", count, worst, secs));
    }

    // Criterion 4: kinetic operators.
    {
        const Vector ev = dense_sym_eig(kinetic_matrix(build_sine_dvr(0.0, M_PI, 64))).values;
        double box = 0.0;
        for (int k = 1; k <= 5; ++k) {
            box = std::max(box, std::abs(ev[k - 1] - 0.5 * k * k) / (0.5 * k * k));
        }
        const double dx = 0.3;
        const DvrBasis sinc = build_sinc_dvr(-3.0, dx, 21);
        const Matrix t = kinetic_matrix(sinc);
        const double kmax = M_PI / dx;
        double quad = 0.0;
        for (Index i = 0; i < sinc.size(); ++i) {
            for (Index j = 0; j < sinc.size(); ++j) {
                const double d = sinc.grid[i] - sinc.grid[j];
                const double q = dx / (4.0 * M_PI) *
                                 testing::integrate([&](double k) { return k * k * std::cos(k * d); }, -kmax, kmax, 64);
                quad = std::max(quad, std::abs(t(i, j) - q));
            }
        }
        all_ok &= report(4, box < 1e-6 && quad < 1e-8,
                         fmt("box spectrum max rel err %.1e; sinc vs quadrature max abs err %.1e", box, quad));
    }

    // Criterion 5: HF invariants on every config that ran.
    {
        bool ok = true;
        std::string detail;
        for (const TableRun& r : runs) {
            if (!r.error.empty()) {
                ok = false;
                continue;
            }
            const ScfResult& s = r.scf;
            const Matrix f = fock_matrix(r.ints, s.density);
            const double comm = max_abs(f * s.density - s.density * f);
            const double idem = max_abs(s.density * s.density - s.density);
            const Matrix h_mo = mo_transform_one(r.ints.core_hamiltonian(), s.mo_coeff);
            double e_orb = r.ints.e_nn;
            for (int i = 0; i < s.n_occupied; ++i) {
                e_orb += h_mo(i, i) + s.orbital_energies[i];
            }
            const double e_gap = std::abs(e_orb - hf_energy(r.ints, s.density, f));
            ok = ok && s.converged && comm < 1e-8 && idem < 1e-8 && e_gap < 1e-9;
            detail += fmt("%s[F,D] %.1e idem %.1e dE %.1e", detail.empty() ? "" : "; ", comm, idem, e_gap);
        }
        all_ok &= report(5, ok, detail);
    }

    // Criterion 6: fermionic signs.
    {
        const SiteOperatorSet ops = jw_site_ops();
        Eigen::Matrix4d up;
        Eigen::Matrix4d dn;
        up << 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0;
        dn << 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0;
        const bool verbatim = ops.a_up == up && ops.a_dn == dn;
        double jw = 0.0;
        for (int l = 1; l <= 3; ++l) {
            std::vector<Matrix> c;
            for (int s = 0; s < l; ++s) {
                c.emplace_back(embed_fermion_op(ops, s, Spin::up, false, l));
                c.emplace_back(embed_fermion_op(ops, s, Spin::down, false, l));
            }
            jw = std::max(jw, anticommutator_error(c));
        }
        double blocks = 0.0;
        const ChainHamiltonianTerms terms = chain_terms(random_small_instance(5, 4));
        for (BlockSide side : {BlockSide::left, BlockSide::right}) {
            DmrgBlock b = empty_block(side);
            for (int k = 0; k < 2; ++k) {
                b = enlarge_block(b, side == BlockSide::left ? k : 3 - k, terms);
                std::vector<Matrix> c;
                for (std::size_t s = 0; s < b.sites.size(); ++s) {
                    c.push_back(b.cdag_up[s].transpose());
                    c.push_back(b.cdag_dn[s].transpose());
                }
                blocks = std::max(blocks, anticommutator_error(c));
            }
        }
        all_ok &= report(6, verbatim && jw == 0.0 && blocks == 0.0,
                         fmt("site matrices %s; jwci L<=3 max err %.1e; dmrg blocks <=2 sites max err %.1e",
                             verbatim ? "verbatim" : "differ", jw, blocks));
    }

    // Criterion 7: DMRG behaviour.
    {
        bool mono = true;
        double half_rise = 0.0;
        for (const DmrgResult* r : {&main_run->d10, &main_run->d12}) {
            const auto& c = r->completed_sweep_energies;
            for (std::size_t k = 1; k < c.size(); ++k) {
                mono = mono && c[k] <= c[k - 1] + 1e-9;
            }
            const auto& h = r->sweep_energies;
            for (std::size_t k = 1; k < h.size(); ++k) {
                half_rise = std::max(half_rise, h[k] - h[k - 1]);
            }
        }
        double below = 0.0;
        for (std::size_t k = 0; k < instances.size(); ++k) {
            for (Index d : {2, 4}) {
                DmrgConfig dc;
                dc.d_schedule = {d};
                dc.n_target = 2;
                below = std::max(below, exact_energies[k] - dmrg_run(chain_terms(instances[k]), dc).energy);
            }
        }
        const double dn = std::max(std::abs(main_run->d10.n_expectation - 4.0), std::abs(main_run->d12.n_expectation - 4.0));
        const bool ordered = main_run->d12.energy <= main_run->d10.energy;
        const bool variational = below <= 1e-9 && main_run->d10.energy >= main_run->cas12 - 1e-3;
        all_ok &= report(7, mono && variational && dn <= 1e-3 && ordered,
                         fmt("completed sweeps non-increasing: %s (largest half-sweep rise %.1e); "
                             "max E_exact - E_DMRG(D=2,4) %.1e; |<N>-4| %.1e; E(12)-E(10) %.2e",
                             mono ? "yes" : "no", half_rise, below, dn, main_run->d12.energy - main_run->d10.energy));
    }

    std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all_ok ? 0 : 1;
}
