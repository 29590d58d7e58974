#include "dvrqc/active_space.hpp"
#include "dvrqc/detci.hpp"
#include "dvrqc/errors.hpp"

#include <doctest.h>

#include <bit>
#include <map>

using namespace dvrqc;

namespace {

// Random real Hamiltonian with the full 8-fold ERI symmetry.
ActiveSpaceHamiltonian random_hamiltonian(Index n, int n_elec, std::uint64_t seed) {
    ActiveSpaceHamiltonian ash;
    ash.n_orb = n;
    ash.n_elec = n_elec;
    ash.e_core = 0.25;
    Matrix h(n, n);
    for (Index j = 0; j < n; ++j) {
        h.col(j) = seeded_random_vector(n, seed + static_cast<std::uint64_t>(j));
    }
    ash.h_eff = 0.5 * (h + h.transpose());
    const Index npair = n * n;
    Matrix m(npair, npair);
    for (Index j = 0; j < npair; ++j) {
        m.col(j) = seeded_random_vector(npair, seed + 1000 + static_cast<std::uint64_t>(j));
    }
    Matrix sym = m * m.transpose() / static_cast<double>(npair);
    ash.eri = EriTensor(n);
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q)
            for (Index r = 0; r < n; ++r)
                for (Index s = 0; s < n; ++s) {
                    // symmetrize over the 8 index permutations
                    auto at = [&](Index a, Index b, Index c, Index d) { return sym(a * n + b, c * n + d); };
                    ash.eri(p, q, r, s) = (at(p, q, r, s) + at(q, p, r, s) + at(p, q, s, r) + at(q, p, s, r) +
                                           at(r, s, p, q) + at(s, r, p, q) + at(r, s, q, p) + at(s, r, q, p)) /
                                          8.0;
                }
    return ash;
}

// Spin-orbital occupation: alpha orbital p is bit p, beta orbital p is bit n + p.
using Fock = std::map<std::uint64_t, double>;

void apply_ladder(Fock& state, int mode, bool dagger) {
    Fock out;
    for (const auto& [occ, amp] : state) {
        const bool filled = (occ >> mode) & 1U;
        if (filled == dagger) {
            continue;
        }
        const int below = std::popcount(occ & ((std::uint64_t{1} << mode) - 1));
        out[occ ^ (std::uint64_t{1} << mode)] += (below % 2 ? -amp : amp);
    }
    state.swap(out);
}

double brute_force_element(const ActiveSpaceHamiltonian& ash, const Determinant& bra, const Determinant& ket) {
    const int n = static_cast<int>(ash.n_orb);
    auto pack = [n](const Determinant& d) { return d.alpha | (d.beta << n); };
    const std::uint64_t ket_occ = pack(ket);
    const std::uint64_t bra_occ = pack(bra);
    double total = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int sp = 0; sp < 2; ++sp) {
                Fock s{{ket_occ, 1.0}};
                apply_ladder(s, q + sp * n, false);
                apply_ladder(s, p + sp * n, true);
                total += ash.h_eff(p, q) * (s.count(bra_occ) ? s[bra_occ] : 0.0);
            }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s_ = 0; s_ < n; ++s_)
                    for (int sg = 0; sg < 2; ++sg)
                        for (int tau = 0; tau < 2; ++tau) {
                            Fock s{{ket_occ, 1.0}};
                            apply_ladder(s, q + sg * n, false);
                            apply_ladder(s, s_ + tau * n, false);
                            apply_ladder(s, r + tau * n, true);
                            apply_ladder(s, p + sg * n, true);
                            total += 0.5 * ash.eri(p, q, r, s_) * (s.count(bra_occ) ? s[bra_occ] : 0.0);
                        }
    return total;
}

} // namespace

TEST_CASE("determinant basis enumeration") {
    const DeterminantBasis b = enumerate_dets(5, 2, 3);
    CHECK(b.size() == 10 * 10);
    for (Index k = 0; k < b.size(); ++k) {
        const Determinant d = b[k];
        CHECK(std::popcount(d.alpha) == 2);
        CHECK(std::popcount(d.beta) == 3);
        CHECK(b.index_of(d) == k);
        if (k > 0) {
            CHECK(b[k - 1] < d);
        }
    }
    CHECK(b.index_of({0b11100, 0b111}) == -1);
    CHECK_THROWS_AS(enumerate_dets(3, 4, 0), ContractViolation);
}

TEST_CASE("Slater-Condon rules equal brute-force second quantization") {
    const ActiveSpaceHamiltonian ash = random_hamiltonian(4, 4, 21);
    for (auto [nu, nd] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{1, 2}}) {
        const DeterminantBasis b = enumerate_dets(4, nu, nd);
        for (Index i = 0; i < b.size(); ++i) {
            for (Index j = 0; j < b.size(); ++j) {
                const double sc = slater_condon_element(b[i], b[j], ash.h_eff, ash.eri);
                CHECK(std::abs(sc - brute_force_element(ash, b[i], b[j])) < 1e-12);
            }
        }
    }
}

TEST_CASE("matrix-free product and diagonal match the dense matrix") {
    const ActiveSpaceHamiltonian ash = random_hamiltonian(6, 5, 5);
    const DeterminantBasis b = enumerate_dets(6, 3, 2);
    Matrix h(b.size(), b.size());
    for (Index i = 0; i < b.size(); ++i)
        for (Index j = 0; j < b.size(); ++j)
            h(i, j) = slater_condon_element(b[i], b[j], ash.h_eff, ash.eri);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    const Vector x = seeded_random_vector(b.size(), 8);
    Vector y(b.size());
    apply_ci_hamiltonian(b, ash, x, y);
    CHECK((y - h * x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ci_diagonal(b, ash) - h.diagonal()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Davidson path agrees with dense diagonalization") {
    // 45 x 45 = 2025 determinants is just above the dense limit.
    const ActiveSpaceHamiltonian ash = random_hamiltonian(10, 4, 77);
    const DeterminantBasis b = enumerate_dets(10, 2, 2);
    REQUIRE(b.size() > kDenseCiLimit);
    Matrix h(b.size(), b.size());
    for (Index i = 0; i < b.size(); ++i)
        for (Index j = 0; j <= i; ++j)
            h(i, j) = h(j, i) = slater_condon_element(b[i], b[j], ash.h_eff, ash.eri);
    const Vector exact = dense_sym_eig(h).values;
    const CiResult ci = solve_casci(ash, 0.0, 2);
    CHECK(ci.energies[0] == doctest::Approx(exact[0] + ash.e_core).epsilon(1e-11));
    CHECK(ci.energies[1] == doctest::Approx(exact[1] + ash.e_core).epsilon(1e-11));
}

TEST_CASE("spin of two-electron states") {
    const IntegralSet ints = build_integrals(build_sine_dvr(-5.0, 5.0, 6), ChainGeometry{{-0.7, 0.7}, {1, 1}, 2});
    const ActiveSpaceHamiltonian ash = full_space_hamiltonian(ints, Matrix::Identity(6, 6), 2);
    const CiResult singlet = solve_casci(ash, 0.0, 1);
    CHECK(singlet.spin_squared[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    const CiResult triplet = solve_casci(ash, 1.0, 1);
    CHECK(triplet.n_up == 2);
    CHECK(triplet.spin_squared[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(triplet.energies[0] > singlet.energies[0]);
    CHECK_THROWS_AS(solve_casci(ash, 0.5, 1), ContractViolation);
    CHECK_THROWS_AS(solve_casci(ash, 0.0, 1000), ContractViolation);
}
