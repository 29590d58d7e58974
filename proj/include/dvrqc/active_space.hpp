#pragma once

#include "dvrqc/model.hpp"
#include "dvrqc/numerics.hpp"
#include "dvrqc/scf.hpp"

#include <vector>

namespace dvrqc {

/// Dense four-index tensor of real-orbital ERIs (pq|rs), chemists' notation.
class EriTensor {
  public:
    EriTensor() = default;
    explicit EriTensor(Index n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), 0.0) {}

    Index size() const { return n_; }

    double& operator()(Index p, Index q, Index r, Index s) { return data_[offset(p, q, r, s)]; }
    double operator()(Index p, Index q, Index r, Index s) const { return data_[offset(p, q, r, s)]; }

    /// Sub-tensor over the given orbital list (same list on all four indices).
    EriTensor slice(const std::vector<Index>& orbitals) const;

  private:
    std::size_t offset(Index p, Index q, Index r, Index s) const {
        return static_cast<std::size_t>(((p * n_ + q) * n_ + r) * n_ + s);
    }

    Index n_ = 0;
    std::vector<double> data_;
};

/// Second-quantized Hamiltonian over an active orbital window:
/// H = e_core + sum h_eff[p,q] E_pq + 1/2 sum (pq|rs) c+_p c+_r c_s c_q.
struct ActiveSpaceHamiltonian {
    Index n_orb = 0;
    int n_elec = 0;
    double e_core = 0.0;  ///< frozen-core energy plus nuclear repulsion
    Matrix h_eff;
    EriTensor eri;
    std::vector<Index> orbital_indices;
};

/// U^T h U.
Matrix mo_transform_one(const Matrix& h, const Matrix& u);

/// (pr|qs) = sum_ij U_ip U_ir g_ij U_jq U_js, evaluated as M g M^T with M_(pr),i = U_ip U_ir.
EriTensor mo_transform_eri(const Matrix& g, const Matrix& u);

struct FrozenCoreFold {
    double e_fc = 0.0;
    Matrix h_eff;
    EriTensor eri_active;
};

/// E_FC = sum_f 2 h_ff + sum_fg [2 (ff|gg) - (fg|gf)],
/// h~_ij = h_ij + sum_k [2 (ij|kk) - (ik|kj)].
/// Indices refer to rows of h_mo. Throws ContractViolation if the sets overlap or are out of range.
FrozenCoreFold frozen_core_fold(const Matrix& h_mo, const EriTensor& eri_mo, const std::vector<Index>& frozen,
                                const std::vector<Index>& active);

/// Energy-ordered window: the (n_electrons - n_act_elec)/2 lowest MOs are frozen, the next
/// n_act_orb are active.
ActiveSpaceHamiltonian build_active_hamiltonian(const ScfResult& scf, const IntegralSet& ints, Index n_act_orb,
                                                int n_act_elec);

/// Full-space Hamiltonian in the orbital basis given by the columns of `u` (no frozen core).
ActiveSpaceHamiltonian full_space_hamiltonian(const IntegralSet& ints, const Matrix& u, int n_elec);

} // namespace dvrqc
