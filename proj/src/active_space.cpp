#include "dvrqc/active_space.hpp"

#include "dvrqc/errors.hpp"

#include <algorithm>
#include <string>

namespace dvrqc {

namespace {
constexpr Index kMaxActiveOrbitals = 16;
}

EriTensor EriTensor::slice(const std::vector<Index>& orbitals) const {
    const Index m = static_cast<Index>(orbitals.size());
    EriTensor out(m);
    for (Index p = 0; p < m; ++p) {
        for (Index q = 0; q < m; ++q) {
            for (Index r = 0; r < m; ++r) {
                for (Index s = 0; s < m; ++s) {
                    out(p, q, r, s) = (*this)(orbitals[p], orbitals[q], orbitals[r], orbitals[s]);
                }
            }
        }
    }
    return out;
}

Matrix mo_transform_one(const Matrix& h, const Matrix& u) {
    if (h.rows() != h.cols() || u.rows() != h.rows()) {
        throw ContractViolation("mo_transform_one: h is " + std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + ", U has " + std::to_string(u.rows()) + " rows");
    }
    const Matrix out = u.transpose() * h * u;
    return 0.5 * (out + out.transpose());
}

EriTensor mo_transform_eri(const Matrix& g, const Matrix& u) {
    const Index n = g.rows();
    if (g.cols() != n || u.rows() != n) {
        throw ContractViolation("mo_transform_eri: g is " + std::to_string(g.rows()) + "x" +
                                std::to_string(g.cols()) + ", U has " + std::to_string(u.rows()) + " rows");
    }
    const Index m = u.cols();
    Matrix pair_density(m * m, n);
    for (Index p = 0; p < m; ++p) {
        for (Index r = 0; r < m; ++r) {
            pair_density.row(p * m + r) = u.col(p).cwiseProduct(u.col(r)).transpose();
        }
    }
    Matrix folded = pair_density * g * pair_density.transpose();
    folded = 0.5 * (folded + folded.transpose()).eval();  // (pr|qs) = (qs|pr) to the last bit
    EriTensor eri(m);
    for (Index p = 0; p < m; ++p) {
        for (Index r = 0; r < m; ++r) {
            for (Index q = 0; q < m; ++q) {
                for (Index s = 0; s < m; ++s) {
                    eri(p, r, q, s) = folded(p * m + r, q * m + s);
                }
            }
        }
    }
    return eri;
}

FrozenCoreFold frozen_core_fold(const Matrix& h_mo, const EriTensor& eri_mo, const std::vector<Index>& frozen,
                                const std::vector<Index>& active) {
    const Index n = h_mo.rows();
    if (eri_mo.size() != n) {
        throw ContractViolation("frozen_core_fold: ERI and one-electron matrix disagree on orbital count");
    }
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto* set : {&frozen, &active}) {
        for (Index p : *set) {
            if (p < 0 || p >= n) {
                throw ContractViolation("frozen_core_fold: orbital index " + std::to_string(p) + " out of range");
            }
            if (used[static_cast<std::size_t>(p)]) {
                throw ContractViolation("frozen_core_fold: orbital " + std::to_string(p) +
                                        " appears twice or in both frozen and active sets");
            }
            used[static_cast<std::size_t>(p)] = 1;
        }
    }

    FrozenCoreFold out;
    for (Index f : frozen) {
        out.e_fc += 2.0 * h_mo(f, f);
        for (Index g : frozen) {
            out.e_fc += 2.0 * eri_mo(f, f, g, g) - eri_mo(f, g, g, f);
        }
    }
    const Index l = static_cast<Index>(active.size());
    out.h_eff.resize(l, l);
    for (Index i = 0; i < l; ++i) {
        for (Index j = 0; j < l; ++j) {
            const Index p = active[i];
            const Index q = active[j];
            double value = h_mo(p, q);
            for (Index k : frozen) {
                value += 2.0 * eri_mo(p, q, k, k) - eri_mo(p, k, k, q);
            }
            out.h_eff(i, j) = value;
        }
    }
    out.eri_active = eri_mo.slice(active);
    return out;
}

ActiveSpaceHamiltonian build_active_hamiltonian(const ScfResult& scf, const IntegralSet& ints, Index n_act_orb,
                                                int n_act_elec) {
    const Index n = ints.size();
    const int n_electrons = 2 * scf.n_occupied;
    const int frozen_elec = n_electrons - n_act_elec;
    if (n_act_elec < 0 || frozen_elec < 0 || frozen_elec % 2 != 0) {
        throw ContractViolation("active space: " + std::to_string(n_electrons - n_act_elec) +
                                " frozen electrons is not a non-negative even number");
    }
    const Index n_frozen = frozen_elec / 2;
    if (n_act_orb <= 0 || n_frozen + n_act_orb > n) {
        throw ContractViolation("active space: window of " + std::to_string(n_act_orb) + " orbitals above " +
                                std::to_string(n_frozen) + " frozen exceeds the basis size " + std::to_string(n));
    }
    if (n_act_orb > kMaxActiveOrbitals) {
        throw ContractViolation("active space: more than " + std::to_string(kMaxActiveOrbitals) +
                                " active orbitals is not supported");
    }
    if (n_act_elec > 2 * n_act_orb) {
        throw ContractViolation("active space: too many active electrons for the window");
    }

    // Only the frozen + active columns are ever needed.
    const Index m = n_frozen + n_act_orb;
    const Matrix u = scf.mo_coeff.leftCols(m);
    const Matrix h_mo = mo_transform_one(ints.core_hamiltonian(), u);
    const EriTensor eri_mo = mo_transform_eri(ints.g, u);

    std::vector<Index> frozen(static_cast<std::size_t>(n_frozen));
    std::vector<Index> active(static_cast<std::size_t>(n_act_orb));
    for (Index f = 0; f < n_frozen; ++f) {
        frozen[static_cast<std::size_t>(f)] = f;
    }
    for (Index a = 0; a < n_act_orb; ++a) {
        active[static_cast<std::size_t>(a)] = n_frozen + a;
    }
    FrozenCoreFold fold = frozen_core_fold(h_mo, eri_mo, frozen, active);

    ActiveSpaceHamiltonian ash;
    ash.n_orb = n_act_orb;
    ash.n_elec = n_act_elec;
    ash.e_core = fold.e_fc + ints.e_nn;
    ash.h_eff = std::move(fold.h_eff);
    ash.eri = std::move(fold.eri_active);
    ash.orbital_indices = active;
    return ash;
}

ActiveSpaceHamiltonian full_space_hamiltonian(const IntegralSet& ints, const Matrix& u, int n_elec) {
    ActiveSpaceHamiltonian ash;
    ash.n_orb = u.cols();
    ash.n_elec = n_elec;
    ash.e_core = ints.e_nn;
    ash.h_eff = mo_transform_one(ints.core_hamiltonian(), u);
    ash.eri = mo_transform_eri(ints.g, u);
    for (Index p = 0; p < u.cols(); ++p) {
        ash.orbital_indices.push_back(p);
    }
    return ash;
}

} // namespace dvrqc
