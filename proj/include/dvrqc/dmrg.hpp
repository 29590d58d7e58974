#pragma once

#include "dvrqc/model.hpp"
#include "dvrqc/numerics.hpp"

#include <optional>
#include <vector>

namespace dvrqc {

/// mu (N - n_target)^2.
struct PenaltySpec {
    double mu = 1.0;
    double n_target = 0.0;
};

/// Chain form of the DVR Hamiltonian, one spatial site per grid point:
///   sum_i onsite_i n_i + sum_i hubbard_u_i n_iu n_id
///   + sum_{i<j} hop_ij sum_s (c+_is c_js + h.c.) + sum_{i<j} dens_ij n_i n_j + constant.
/// Only the strict upper triangles of hop and dens are read.
///
/// With a penalty folded in: dens += 2 mu, hubbard_u += 2 mu, onsite += mu - 2 mu n,
/// constant += mu n^2 (from n_i^2 = n_i + 2 n_iu n_id).
struct ChainHamiltonianTerms {
    Vector onsite;
    Vector hubbard_u;
    Matrix hop;
    Matrix dens;
    double constant = 0.0;
    std::optional<PenaltySpec> penalty;  ///< set when the penalty is folded in

    Index size() const { return onsite.size(); }
};

/// onsite = t_ii + v_i, hubbard_u = g_ii, hop = t, dens = g, constant = e_nn, then the
/// optional penalty fold.
ChainHamiltonianTerms chain_terms(const IntegralSet& ints, std::optional<PenaltySpec> penalty = std::nullopt);

/// Undo the penalty fold (identity when none is folded in).
ChainHamiltonianTerms without_penalty(const ChainHamiltonianTerms& terms);

enum class BlockSide { left, right };

/// Renormalized block. Site operators follow the chain Jordan-Wigner convention:
/// a left block's c+_i carries the parity of block sites left of i; a right block's c+_j
/// carries the parity of block sites left of j only (the parity of everything to the left
/// of the block is applied when the block meets its partner).
struct DmrgBlock {
    BlockSide side = BlockSide::left;
    std::vector<int> sites;  ///< ascending chain indices
    Matrix h;
    std::vector<Matrix> cdag_up;  ///< parallel to sites
    std::vector<Matrix> cdag_dn;
    std::vector<Matrix> n;
    Matrix parity;
    Matrix n_total;
    Matrix n2_total;
    /// Map from the enlarged basis this block was truncated from to its basis.
    Matrix rotation;

    int n_sites() const { return static_cast<int>(sites.size()); }
    Index basis_dim() const { return h.rows(); }
};

/// Zero-site block (dimension 1).
DmrgBlock empty_block(BlockSide side);

/// Absorb `site`: a left block takes the site on its right edge, a right block on its left
/// edge. Throws ContractViolation for a non-adjacent site.
DmrgBlock enlarge_block(const DmrgBlock& block, int site, const ChainHamiltonianTerms& terms);

struct SuperblockOptions {
    double tol = 1e-8;
    std::optional<Vector> guess;
    /// Penalty applied through the blocks' N and N^2 (use with penalty-free terms).
    std::optional<PenaltySpec> penalty;
};

struct SuperblockState {
    double energy = 0.0;
    Matrix psi;  ///< sys.basis_dim() x env.basis_dim(), unit Frobenius norm
    int iterations = 0;
    double n_expectation = 0.0;
    double n_variance = 0.0;  ///< <(N - n_target)^2> when a penalty is given, else <(N - <N>)^2>
};

/// Ground state of sys (left) plus env (right), matrix free. Every site of sys must lie left
/// of every site of env. Throws ConvergenceError when the eigensolver stalls.
SuperblockState superblock_ground(const DmrgBlock& sys, const DmrgBlock& env, const ChainHamiltonianTerms& terms,
                                  const SuperblockOptions& opts = {});

struct TruncationResult {
    DmrgBlock block;
    double truncation_error = 0.0;
    std::vector<double> kept_weights;
};

/// Keep the d_max largest reduced-density-matrix eigenvectors of `block` within `psi`
/// (rows index a left block, columns a right block). Eigenvectors are taken inside the
/// block parity sectors so the parity stays exactly diagonal.
TruncationResult truncate(const DmrgBlock& block, const Matrix& psi, Index d_max);

struct DmrgConfig {
    std::vector<Index> d_schedule{10};  ///< per sweep, last entry repeats
    int n_sweeps = 4;
    double lanczos_tol = 1e-8;
    double mu = 1.0;
    int n_target = 0;
    double early_stop = 1e-9;
};

struct DmrgResult {
    double energy = 0.0;
    std::vector<double> sweep_energies;  ///< lowest energy of each half-sweep
    /// Lowest energy of each completed sweep (a right-to-left pass plus the following
    /// left-to-right pass). The opening centre-to-right pass is not a completed sweep.
    std::vector<double> completed_sweep_energies;
    std::vector<double> truncation_errors;
    double n_expectation = 0.0;
    double n_variance = 0.0;
    Index d_used = 0;
    int half_sweeps = 0;
    bool number_flag = false;  ///< |<N> - n_target| > 0.01
};

/// Warmup from both chain ends, then two-site sweeps over the full chain.
/// `terms` may carry a folded penalty; it is unfolded and the penalty mu (N - n_target)^2
/// from `config` is applied through the block number operators. Requires an even chain of
/// at least 4 sites and a non-decreasing d_schedule.
DmrgResult dmrg_run(const ChainHamiltonianTerms& terms, const DmrgConfig& config);

} // namespace dvrqc
