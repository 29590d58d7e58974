#include "dvrqc/active_space.hpp"
#include "dvrqc/detci.hpp"
#include "dvrqc/errors.hpp"

#include <doctest.h>

using namespace dvrqc;

namespace {

IntegralSet chain(Index n) {
    return build_integrals(build_sine_dvr(-8.0, 8.0, n), ChainGeometry{{-2.0, -0.6, 0.6, 2.0}, {1, 1, 1, 1}, 4});
}

Matrix random_orthogonal(Index n, std::uint64_t seed) {
    Matrix a(n, n);
    for (Index j = 0; j < n; ++j) {
        a.col(j) = seeded_random_vector(n, seed + static_cast<std::uint64_t>(j));
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, n);
}

} // namespace

TEST_CASE("ERI transform matches the naive four-fold loop") {
    const Index n = 6;
    const IntegralSet ints = chain(n);
    const Matrix u = random_orthogonal(n, 3).leftCols(4);
    const EriTensor eri = mo_transform_eri(ints.g, u);
    for (Index p = 0; p < 4; ++p) {
        for (Index q = 0; q < 4; ++q) {
            for (Index r = 0; r < 4; ++r) {
                for (Index s = 0; s < 4; ++s) {
                    double naive = 0.0;
                    for (Index a = 0; a < n; ++a) {
                        for (Index b = 0; b < n; ++b) {
                            for (Index c = 0; c < n; ++c) {
                                for (Index d = 0; d < n; ++d) {
                                    const double ao = (a == b && c == d) ? ints.g(a, c) : 0.0;
                                    naive += u(a, p) * u(b, q) * u(c, r) * u(d, s) * ao;
                                }
                            }
                        }
                    }
                    CHECK(std::abs(eri(p, q, r, s) - naive) < 1e-13);
                    CHECK(eri(p, q, r, s) == eri(r, s, p, q));
                    CHECK(eri(p, q, r, s) == eri(q, p, r, s));
                }
            }
        }
    }
    CHECK_THROWS_AS(mo_transform_eri(ints.g, Matrix::Identity(n + 1, 2)), ContractViolation);
}

TEST_CASE("all-frozen window reproduces the HF energy") {
    const IntegralSet ints = chain(16);
    const ScfResult scf = scf_solve(ints, 4);
    REQUIRE(scf.converged);
    const ActiveSpaceHamiltonian ash = build_active_hamiltonian(scf, ints, 2, 0);
    CHECK(ash.e_core == doctest::Approx(scf.e_hf).epsilon(1e-11));
    CHECK(solve_casci(ash).energies[0] == doctest::Approx(scf.e_hf).epsilon(1e-11));
}

TEST_CASE("HF determinant energy inside a correlated window") {
    // The aufbau determinant of the active space has energy E_HF.
    const IntegralSet ints = chain(16);
    const ScfResult scf = scf_solve(ints, 4);
    const ActiveSpaceHamiltonian ash = build_active_hamiltonian(scf, ints, 4, 2);
    const Determinant hf{0b1, 0b1};
    CHECK(ash.e_core + slater_condon_element(hf, hf, ash.h_eff, ash.eri) ==
          doctest::Approx(scf.e_hf).epsilon(1e-11));
    CHECK(ash.orbital_indices == std::vector<Index>{1, 2, 3, 4});
}

TEST_CASE("complete active space equals full CI in the DVR basis") {
    const IntegralSet ints = build_integrals(build_sine_dvr(-6.0, 6.0, 6), ChainGeometry{{-1.0, 1.0}, {1, 1}, 2});
    const ScfResult scf = scf_solve(ints, 2);
    const double cas = solve_casci(build_active_hamiltonian(scf, ints, 6, 2)).energies[0];
    const double fci = solve_casci(full_space_hamiltonian(ints, Matrix::Identity(6, 6), 2)).energies[0];
    CHECK(cas == doctest::Approx(fci).epsilon(1e-11));
}

TEST_CASE("frozen-core fold by hand") {
    const Index n = 5;
    const IntegralSet ints = chain(n);
    const Matrix u = random_orthogonal(n, 17);
    const Matrix h = mo_transform_one(ints.core_hamiltonian(), u);
    const EriTensor eri = mo_transform_eri(ints.g, u);
    const FrozenCoreFold f = frozen_core_fold(h, eri, {0, 3}, {1, 4});

    double e_fc = 2.0 * (h(0, 0) + h(3, 3));
    for (Index a : {0, 3}) {
        for (Index b : {0, 3}) {
            e_fc += 2.0 * eri(a, a, b, b) - eri(a, b, b, a);
        }
    }
    CHECK(f.e_fc == doctest::Approx(e_fc).epsilon(1e-14));
    const Index act[2] = {1, 4};
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            double v = h(act[i], act[j]);
            for (Index k : {0, 3}) {
                v += 2.0 * eri(act[i], act[j], k, k) - eri(act[i], k, k, act[j]);
            }
            CHECK(f.h_eff(i, j) == doctest::Approx(v).epsilon(1e-14));
        }
    }
    CHECK(f.eri_active(1, 0, 1, 1) == eri(4, 1, 4, 4));

    CHECK_THROWS_AS(frozen_core_fold(h, eri, {0, 1}, {1, 2}), ContractViolation);
    CHECK_THROWS_AS(frozen_core_fold(h, eri, {0}, {5}), ContractViolation);
}

TEST_CASE("active window guards") {
    const IntegralSet ints = chain(20);
    const ScfResult scf = scf_solve(ints, 4);
    CHECK_THROWS_AS(build_active_hamiltonian(scf, ints, 17, 4), ContractViolation);
    CHECK_THROWS_AS(build_active_hamiltonian(scf, ints, 4, 3), ContractViolation);
    CHECK_THROWS_AS(build_active_hamiltonian(scf, ints, 20, 2), ContractViolation);
    CHECK_THROWS_AS(build_active_hamiltonian(scf, ints, 1, 4), ContractViolation);
}
