#pragma once

#include "dvrqc/active_space.hpp"
#include "dvrqc/numerics.hpp"

#include <Eigen/Sparse>

#include <array>
#include <optional>
#include <vector>

namespace dvrqc {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Single-site operators for one spatial orbital (four local states).
///
/// a_up and a_dn are the fixed 4x4 matrices
///     a_up = [0 0 1 0; 0 0 0 1; 0 0 0 0; 0 0 0 0]
///     a_dn = [0 1 0 0; 0 0 0 0; 0 0 0 -1; 0 0 0 0].
/// Read as annihilators they fix the local index as 2*n_up + n_dn: 0 empty, 1 one down
/// electron, 2 one up electron, 3 doubly occupied. The -1 carries the (-1)^n_up string
/// that puts the up mode before the down mode on every site.
struct SiteOperatorSet {
    Eigen::Matrix4d a_up;
    Eigen::Matrix4d a_dn;
    Eigen::Matrix4d n_up;
    Eigen::Matrix4d n_dn;
    Eigen::Matrix4d n;
    Eigen::Matrix4d parity;
};

SiteOperatorSet jw_site_ops();

enum class Spin { up, down };

/// c_{site,spin} (or its adjoint) on an l-site chain: parity on every site left of `site`,
/// the site operator on `site`, identity to the right. Site 0 is the leftmost Kronecker
/// factor. Throws ContractViolation on a bad site index.
SparseMatrix embed_fermion_op(const SiteOperatorSet& ops, int site, Spin spin, bool dagger, int l);

struct LadderOp {
    int site = 0;
    Spin spin = Spin::up;
    bool dagger = false;
};

/// coefficient * ops[0] ops[1] ... ops[k-1] (rightmost acts first).
struct JwTerm {
    double coefficient = 0.0;
    std::vector<LadderOp> ops;
};

struct NumberPenalty {
    double mu = 1.0;
    int n_target = 0;
};

/// Hamiltonian on the 4^l Fock space as a list of ladder-operator products plus a constant.
class SpinChainHamiltonian {
  public:
    SpinChainHamiltonian(int l, std::vector<JwTerm> terms, double offset);

    int sites() const { return l_; }
    Index dim() const { return dim_; }
    double offset() const { return offset_; }
    const std::vector<JwTerm>& terms() const { return terms_; }

    /// y = H x, offset included. Uses the materialized matrix when present; otherwise
    /// applies every term to every nonzero entry of x.
    void apply(const Vector& x, Vector& y) const;
    Vector diagonal() const;

    /// Sparse matrix including the offset, symmetrized as (H + H^T)/2.
    SparseMatrix materialize() const;
    void cache_matrix();
    bool has_matrix() const { return matrix_.has_value(); }

  private:
    int l_;
    Index dim_;
    std::vector<JwTerm> terms_;
    double offset_;
    std::optional<SparseMatrix> matrix_;
};

inline constexpr int kMaxJwSites = 10;
inline constexpr int kMaterializeJwSites = 6;

/// H = sum h~_pq c+_ps c_qs + 1/2 sum (pq|rs) c+_ps c+_rt c_st c_qs + e_core [+ mu (N - n)^2].
/// Throws ContractViolation when the active space has more than kMaxJwSites orbitals
/// (use DMRG instead).
SpinChainHamiltonian build_jw_hamiltonian(const ActiveSpaceHamiltonian& ash,
                                          std::optional<NumberPenalty> penalty = std::nullopt);

/// Particle-number (and optionally 2*S_z) sector.
struct JwSector {
    int n_electrons = 0;
    std::optional<int> two_sz;
};

struct JwciResult {
    Vector energies;
    Matrix states;
    std::vector<double> n_expectation;
    std::vector<double> sz_expectation;
};

/// Occupation of a basis index: total, up, down.
struct Occupation {
    int total;
    int up;
    int down;
};
Occupation occupation(Index state, int l);

/// Lowest roots through lowest_eigs. With a sector the search space is confined to it.
/// Throws ConvergenceError on failure.
JwciResult solve_jwci(const SpinChainHamiltonian& h, Index n_roots = 1, std::optional<JwSector> sector = std::nullopt);

} // namespace dvrqc
