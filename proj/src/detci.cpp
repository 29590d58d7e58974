#include "dvrqc/detci.hpp"

#include "dvrqc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace dvrqc {

namespace {

using Bits = std::uint64_t;

constexpr Bits bit(int p) { return Bits{1} << p; }

std::vector<Bits> combinations(int n, int k) {
    std::vector<Bits> out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    // Gosper's hack walks k-subsets in ascending integer order.
    Bits s = (Bits{1} << k) - 1;
    const Bits limit = n == 64 ? ~Bits{0} : (Bits{1} << n);
    while (n == 64 ? true : s < limit) {
        out.push_back(s);
        const Bits c = s & (~s + 1);
        const Bits r = s + c;
        if (r == 0) {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if (n < 64 && s >= limit) {
            break;
        }
    }
    return out;
}

// (-1)^(number of occupied orbitals below p)
inline double phase_below(Bits s, int p) { return (std::popcount(s & (bit(p) - 1)) & 1) ? -1.0 : 1.0; }

// Sign of c+_a c_i acting on string s (i occupied, a empty).
inline double single_sign(Bits s, int i, int a) {
    const double first = phase_below(s, i);
    return first * phase_below(s ^ bit(i), a);
}

template <class F>
void for_each_bit(Bits s, F&& f) {
    while (s) {
        f(std::countr_zero(s));
        s &= s - 1;
    }
}

double diagonal_element(const Determinant& d, const Matrix& h, const EriTensor& eri) {
    double e = 0.0;
    auto same_spin = [&](Bits s) {
        for_each_bit(s, [&](int p) {
            e += h(p, p);
            for_each_bit(s, [&](int q) { e += 0.5 * (eri(p, p, q, q) - eri(p, q, q, p)); });
        });
    };
    same_spin(d.alpha);
    same_spin(d.beta);
    for_each_bit(d.alpha, [&](int p) { for_each_bit(d.beta, [&](int q) { e += eri(p, p, q, q); }); });
    return e;
}

// Excitation i -> a in the string `moved`; `same` is the ket string of the same spin,
// `other` the ket string of the opposite spin.
double single_element(Bits same, Bits other, int i, int a, const Matrix& h, const EriTensor& eri) {
    double value = h(a, i);
    for_each_bit(same, [&](int k) { value += eri(a, i, k, k) - eri(a, k, k, i); });
    for_each_bit(other, [&](int k) { value += eri(a, i, k, k); });
    return single_sign(same, i, a) * value;
}

// Same-spin double: ket orbitals i, j (removed) -> a, b (added).
double same_spin_double(Bits s, int i, int j, int a, int b, const EriTensor& eri) {
    // |J> = sign c+_b c+_a c_j c_i |I>, element = sign [(bi|aj) - (bj|ai)]
    Bits t = s;
    double sign = phase_below(t, i);
    t ^= bit(i);
    sign *= phase_below(t, j);
    t ^= bit(j);
    sign *= phase_below(t, a);
    t ^= bit(a);
    sign *= phase_below(t, b);
    return sign * (eri(b, i, a, j) - eri(b, j, a, i));
}

} // namespace

DeterminantBasis::DeterminantBasis(int n_orb, int n_up, int n_down)
    : n_orb_(n_orb), n_up_(n_up), n_down_(n_down) {
    if (n_orb < 0 || n_orb > 64) {
        throw ContractViolation("determinant basis: n_orb must be in [0, 64], got " + std::to_string(n_orb));
    }
    if (n_up < 0 || n_down < 0 || n_up > n_orb || n_down > n_orb) {
        throw ContractViolation("determinant basis: electron counts (" + std::to_string(n_up) + ", " +
                                std::to_string(n_down) + ") do not fit in " + std::to_string(n_orb) + " orbitals");
    }
    alpha_ = combinations(n_orb, n_up);
    beta_ = combinations(n_orb, n_down);
}

Determinant DeterminantBasis::operator[](Index k) const {
    const auto nb = static_cast<Index>(beta_.size());
    return {alpha_[static_cast<std::size_t>(k / nb)], beta_[static_cast<std::size_t>(k % nb)]};
}

Index DeterminantBasis::index_of(const Determinant& det) const {
    const auto ia = std::lower_bound(alpha_.begin(), alpha_.end(), det.alpha);
    const auto ib = std::lower_bound(beta_.begin(), beta_.end(), det.beta);
    if (ia == alpha_.end() || *ia != det.alpha || ib == beta_.end() || *ib != det.beta) {
        return -1;
    }
    return static_cast<Index>(ia - alpha_.begin()) * static_cast<Index>(beta_.size()) +
           static_cast<Index>(ib - beta_.begin());
}

DeterminantBasis enumerate_dets(int n_orb, int n_up, int n_down) { return DeterminantBasis(n_orb, n_up, n_down); }

double slater_condon_element(const Determinant& bra, const Determinant& ket, const Matrix& h_eff,
                             const EriTensor& eri) {
    const Bits da = bra.alpha ^ ket.alpha;
    const Bits db = bra.beta ^ ket.beta;
    const int na = std::popcount(da);
    const int nb = std::popcount(db);
    if (std::popcount(bra.alpha) != std::popcount(ket.alpha) || std::popcount(bra.beta) != std::popcount(ket.beta)) {
        return 0.0;
    }
    const int excitations = (na + nb) / 2;
    if (excitations > 2) {
        return 0.0;
    }
    if (excitations == 0) {
        return diagonal_element(ket, h_eff, eri);
    }
    auto holes = [](Bits diff, Bits ket_string) { return diff & ket_string; };
    auto parts = [](Bits diff, Bits bra_string) { return diff & bra_string; };
    if (excitations == 1) {
        if (na == 2) {
            const int i = std::countr_zero(holes(da, ket.alpha));
            const int a = std::countr_zero(parts(da, bra.alpha));
            return single_element(ket.alpha, ket.beta, i, a, h_eff, eri);
        }
        const int i = std::countr_zero(holes(db, ket.beta));
        const int a = std::countr_zero(parts(db, bra.beta));
        return single_element(ket.beta, ket.alpha, i, a, h_eff, eri);
    }
    if (na == 4 || nb == 4) {
        const Bits s = na == 4 ? ket.alpha : ket.beta;
        const Bits d = na == 4 ? da : db;
        const Bits b_str = na == 4 ? bra.alpha : bra.beta;
        Bits h = holes(d, s);
        Bits p = parts(d, b_str);
        const int i = std::countr_zero(h);
        h &= h - 1;
        const int j = std::countr_zero(h);
        const int a = std::countr_zero(p);
        p &= p - 1;
        const int b = std::countr_zero(p);
        return same_spin_double(s, i, j, a, b, eri);
    }
    const int i = std::countr_zero(holes(da, ket.alpha));
    const int a = std::countr_zero(parts(da, bra.alpha));
    const int j = std::countr_zero(holes(db, ket.beta));
    const int b = std::countr_zero(parts(db, bra.beta));
    return single_sign(ket.alpha, i, a) * single_sign(ket.beta, j, b) * eri(a, i, b, j);
}

Vector ci_diagonal(const DeterminantBasis& basis, const ActiveSpaceHamiltonian& ash) {
    Vector d(basis.size());
    for (Index k = 0; k < basis.size(); ++k) {
        d[k] = diagonal_element(basis[k], ash.h_eff, ash.eri);
    }
    return d;
}

void apply_ci_hamiltonian(const DeterminantBasis& basis, const ActiveSpaceHamiltonian& ash, const Vector& x,
                          Vector& y) {
    const Matrix& h = ash.h_eff;
    const EriTensor& eri = ash.eri;
    const int n = basis.n_orb();
    const Bits full = n == 64 ? ~Bits{0} : (bit(n) - 1);
    const auto& alphas = basis.alpha_strings();
    const auto& betas = basis.beta_strings();
    const auto nb = static_cast<Index>(betas.size());

    auto alpha_index = [&](Bits s) {
        return static_cast<Index>(std::lower_bound(alphas.begin(), alphas.end(), s) - alphas.begin());
    };
    auto beta_index = [&](Bits s) {
        return static_cast<Index>(std::lower_bound(betas.begin(), betas.end(), s) - betas.begin());
    };

    y.setZero(basis.size());
    for (Index ia = 0; ia < static_cast<Index>(alphas.size()); ++ia) {
        const Bits sa = alphas[static_cast<std::size_t>(ia)];
        for (Index ib = 0; ib < nb; ++ib) {
            const Bits sb = betas[static_cast<std::size_t>(ib)];
            const Index ket = ia * nb + ib;
            const double c = x[ket];
            if (c == 0.0) {
                continue;
            }
            y[ket] += diagonal_element({sa, sb}, h, eri) * c;

            // singles and same-spin doubles in one spin channel
            auto same_channel = [&](Bits s, Bits other, bool is_alpha) {
                const Bits virt = full & ~s;
                for_each_bit(s, [&](int i) {
                    for_each_bit(virt, [&](int a) {
                        const Bits t = s ^ bit(i) ^ bit(a);
                        const Index bra = is_alpha ? alpha_index(t) * nb + ib : ia * nb + beta_index(t);
                        y[bra] += single_element(s, other, i, a, h, eri) * c;
                    });
                });
                for_each_bit(s, [&](int i) {
                    for_each_bit(s & ~(bit(i + 1) - 1), [&](int j) {
                        for_each_bit(virt, [&](int a) {
                            for_each_bit(virt & ~(bit(a + 1) - 1), [&](int b) {
                                const Bits t = s ^ bit(i) ^ bit(j) ^ bit(a) ^ bit(b);
                                const Index bra = is_alpha ? alpha_index(t) * nb + ib : ia * nb + beta_index(t);
                                y[bra] += same_spin_double(s, i, j, a, b, eri) * c;
                            });
                        });
                    });
                });
            };
            same_channel(sa, sb, true);
            same_channel(sb, sa, false);

            // opposite-spin doubles
            const Bits virt_a = full & ~sa;
            const Bits virt_b = full & ~sb;
            for_each_bit(sa, [&](int i) {
                for_each_bit(virt_a, [&](int a) {
                    const double sign_a = single_sign(sa, i, a);
                    const Index row_a = alpha_index(sa ^ bit(i) ^ bit(a)) * nb;
                    for_each_bit(sb, [&](int j) {
                        for_each_bit(virt_b, [&](int b) {
                            const Index bra = row_a + beta_index(sb ^ bit(j) ^ bit(b));
                            y[bra] += sign_a * single_sign(sb, j, b) * eri(a, i, b, j) * c;
                        });
                    });
                });
            });
        }
    }
}

double spin_squared(const DeterminantBasis& basis, const Vector& coefficients) {
    // S^2 = S- S+ + Sz (Sz + 1), <S- S+> = ||S+ psi||^2, S+ = sum_p c+_{p,alpha} c_{p,beta}.
    const double sz = 0.5 * (basis.n_up() - basis.n_down());
    std::map<Determinant, double> raised;
    const int n_alpha = basis.n_up();
    for (Index k = 0; k < basis.size(); ++k) {
        const double c = coefficients[k];
        if (c == 0.0) {
            continue;
        }
        const Determinant d = basis[k];
        for_each_bit(d.beta & ~d.alpha, [&](int p) {
            // c_{p,beta}: passes all alpha modes and the beta modes below p
            double sign = ((n_alpha + std::popcount(d.beta & (bit(p) - 1))) & 1) ? -1.0 : 1.0;
            // c+_{p,alpha}: passes the alpha modes below p
            sign *= phase_below(d.alpha, p);
            raised[{d.alpha | bit(p), d.beta ^ bit(p)}] += sign * c;
        });
    }
    double norm2 = 0.0;
    for (const auto& [det, amp] : raised) {
        norm2 += amp * amp;
    }
    return norm2 + sz * (sz + 1.0);
}

CiResult solve_casci(const ActiveSpaceHamiltonian& ash, double s_z, Index n_roots) {
    const double twice_up = ash.n_elec + 2.0 * s_z;
    const int n_up = static_cast<int>(std::lround(twice_up / 2.0));
    if (std::abs(twice_up - 2.0 * n_up) > 1e-12 || n_up < 0 || n_up > ash.n_elec) {
        throw ContractViolation("solve_casci: s_z = " + std::to_string(s_z) + " is incompatible with " +
                                std::to_string(ash.n_elec) + " active electrons");
    }
    const int n_down = ash.n_elec - n_up;
    const DeterminantBasis basis = enumerate_dets(static_cast<int>(ash.n_orb), n_up, n_down);
    const Index dim = basis.size();
    if (n_roots < 1 || n_roots > dim) {
        throw ContractViolation("solve_casci: requested " + std::to_string(n_roots) + " roots in a space of " +
                                std::to_string(dim) + " determinants");
    }

    CiResult result;
    result.n_up = n_up;
    result.n_down = n_down;
    result.dimension = dim;
    if (dim < kDenseCiLimit) {
        Matrix hmat(dim, dim);
        for (Index i = 0; i < dim; ++i) {
            for (Index j = 0; j <= i; ++j) {
                hmat(i, j) = hmat(j, i) = slater_condon_element(basis[i], basis[j], ash.h_eff, ash.eri);
            }
        }
        EigenPairs eig = dense_sym_eig(hmat);
        result.energies = eig.values.head(n_roots);
        result.coefficients = eig.vectors.leftCols(n_roots);
    } else {
        EigensolverOptions opts;
        opts.n_roots = n_roots;
        opts.tol = 1e-8;
        opts.diagonal = ci_diagonal(basis, ash);
        auto apply = [&](const Vector& in, Vector& out) { apply_ci_hamiltonian(basis, ash, in, out); };
        EigenSolveResult solved = lowest_eigs(apply, dim, opts);
        if (!solved.converged) {
            throw ConvergenceError("solve_casci: Davidson did not converge in " + std::to_string(solved.iterations) +
                                   " iterations (max residual " +
                                   std::to_string(*std::max_element(solved.residuals.begin(), solved.residuals.end())) +
                                   ")");
        }
        result.energies = solved.pairs.values;
        result.coefficients = solved.pairs.vectors;
    }
    result.energies.array() += ash.e_core;
    for (Index k = 0; k < n_roots; ++k) {
        result.spin_squared.push_back(spin_squared(basis, result.coefficients.col(k)));
    }
    return result;
}

} // namespace dvrqc
