#include "dvrqc/errors.hpp"
#include "dvrqc/scf.hpp"

#include <doctest.h>

#include <vector>

using namespace dvrqc;

namespace {

IntegralSet small_system(Index n = 20) {
    const DvrBasis b = build_sine_dvr(-9.0, 9.0, n);
    return build_integrals(b, ChainGeometry{{-2.5, -0.8, 0.8, 2.5}, {1, 1, 1, 1}, 4});
}

// Four-index (pq|rs) of the DVR basis: delta_pq delta_rs g_pr.
double dvr_eri(const IntegralSet& ints, Index p, Index q, Index r, Index s) {
    return (p == q && r == s) ? ints.g(p, r) : 0.0;
}

} // namespace

TEST_CASE("Fock matrix equals the four-index contraction") {
    const IntegralSet ints = small_system(9);
    const Index n = ints.size();
    Matrix d(n, n);
    for (Index j = 0; j < n; ++j) {
        d.col(j) = seeded_random_vector(n, 100 + static_cast<std::uint64_t>(j));
    }
    d = 0.5 * (d + d.transpose()).eval();

    Matrix oracle = ints.core_hamiltonian();
    for (Index p = 0; p < n; ++p) {
        for (Index q = 0; q < n; ++q) {
            for (Index r = 0; r < n; ++r) {
                for (Index s = 0; s < n; ++s) {
                    oracle(p, q) += d(r, s) * (2.0 * dvr_eri(ints, p, q, r, s) - dvr_eri(ints, p, r, s, q));
                }
            }
        }
    }
    CHECK((fock_matrix(ints, d) - oracle).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("converged RHF invariants") {
    const IntegralSet ints = small_system();
    const ScfResult r = scf_solve(ints, 4);
    REQUIRE(r.converged);
    CHECK(r.n_occupied == 2);
    CHECK(r.commutator_norm < 1e-8);

    const Matrix& d = r.density;
    CHECK((d * d - d).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(d.trace() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((r.mo_coeff.transpose() * r.mo_coeff - Matrix::Identity(ints.size(), ints.size())).cwiseAbs().maxCoeff() <
          1e-12);

    // Second energy expression: sum over occupied (h_ii + eps_i) in the MO basis.
    const Matrix h_mo = r.mo_coeff.transpose() * ints.core_hamiltonian() * r.mo_coeff;
    double e2 = ints.e_nn;
    for (int i = 0; i < r.n_occupied; ++i) {
        e2 += h_mo(i, i) + r.orbital_energies[i];
    }
    CHECK(std::abs(e2 - r.e_hf) < 1e-9);
    CHECK(std::abs(hf_energy(ints, d, fock_matrix(ints, d)) - r.e_hf) < 1e-12);

    for (Index k = 1; k < r.orbital_energies.size(); ++k) {
        CHECK(r.orbital_energies[k] >= r.orbital_energies[k - 1]);
    }
}

TEST_CASE("mixing alone and DIIS land on the same solution") {
    const IntegralSet ints = small_system();
    ScfOptions plain;
    plain.use_diis = false;
    plain.max_iter = 500;
    ScfOptions diis;
    diis.use_diis = true;
    const ScfResult a = scf_solve(ints, 4, plain);
    const ScfResult b = scf_solve(ints, 4, diis);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.e_hf == doctest::Approx(b.e_hf).epsilon(1e-10));
    CHECK((a.density - b.density).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("two electrons: HF energy is the lowest Slater determinant energy") {
    // For one doubly occupied orbital, E = 2 h_11 + (11|11) + e_nn in the converged orbital.
    const IntegralSet ints = build_integrals(build_sine_dvr(-6.0, 6.0, 14), ChainGeometry{{-0.7, 0.7}, {1, 1}, 2});
    const ScfResult r = scf_solve(ints, 2);
    REQUIRE(r.converged);
    const Vector c = r.mo_coeff.col(0);
    const Vector c2 = c.cwiseProduct(c);
    const double e = 2.0 * c.dot(ints.core_hamiltonian() * c) + c2.dot(ints.g * c2) + ints.e_nn;
    CHECK(e == doctest::Approx(r.e_hf).epsilon(1e-12));
}

TEST_CASE("scf_solve contract") {
    const IntegralSet ints = small_system(6);
    CHECK_THROWS_AS(scf_solve(ints, 3), ContractViolation);
    CHECK_THROWS_AS(scf_solve(ints, 14), ContractViolation);
    ScfOptions one;
    one.max_iter = 1;
    const ScfResult r = scf_solve(small_system(), 4, one);
    CHECK_FALSE(r.converged);
}
