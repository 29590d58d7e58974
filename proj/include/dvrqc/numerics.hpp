#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dvrqc {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues in ascending order; column k of `vectors` pairs with values[k].
struct EigenPairs {
    Vector values;
    Matrix vectors;
};

/// Full spectrum of a real symmetric matrix.
/// Throws ContractViolation if `a` is not square or not symmetric to 1e-12 (relative).
EigenPairs dense_sym_eig(const Matrix& a);

/// y = A x for a symmetric operator A. `out` arrives sized and must be overwritten.
using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

struct EigensolverOptions {
    Index n_roots = 1;
    /// Absolute tolerance on ||A v - lambda v|| for every returned pair.
    double tol = 1e-8;
    int max_iter = 1000;
    /// Diagonal of A. Enables Davidson preconditioning and the unit-vector start.
    std::optional<Vector> diagonal;
    /// Extra starting vectors (e.g. the previous DMRG wavefunction). Need not be normalized.
    std::vector<Vector> initial_guess;
    /// In-place projection applied to every search direction; restricts the search to an
    /// invariant subspace of A (particle-number sector, for instance).
    std::function<void(Vector&)> projector;
    /// Upper bound on the search-space size before a thick restart; 0 picks a default.
    Index max_subspace = 0;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct EigenSolveResult {
    EigenPairs pairs;
    std::vector<double> residuals;
    int iterations = 0;
    bool converged = false;
};

/// Lowest `n_roots` eigenpairs of a matrix-free symmetric operator.
///
/// Block Davidson with full re-orthogonalization of the search space. Without a
/// diagonal the correction vectors are the raw residuals, which makes the search
/// space a block Krylov space (Lanczos with full re-orthogonalization). With a
/// diagonal the residuals are scaled by (theta - diag)^-1.
///
/// Non-convergence is not an error here: the best iterate is returned with
/// `converged == false` and the caller decides.
EigenSolveResult lowest_eigs(const LinearOperator& apply, Index dim, const EigensolverOptions& opts);

/// Uniform [-1, 1) entries from a fixed-seed mt19937_64. Bit-identical across platforms
/// (does not go through std::uniform_real_distribution).
Vector seeded_random_vector(Index n, std::uint64_t seed);

/// Max-abs entry; 0 for empty matrices.
double max_abs(const Matrix& a);

} // namespace dvrqc
