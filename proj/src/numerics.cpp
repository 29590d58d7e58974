#include "dvrqc/numerics.hpp"

#include "dvrqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dvrqc {

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

EigenPairs dense_sym_eig(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw ContractViolation("dense_sym_eig: matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
    }
    const double scale = std::max(1.0, max_abs(a));
    if (max_abs(a - a.transpose()) > 1e-12 * scale) {
        throw ContractViolation("dense_sym_eig: matrix is not symmetric");
    }
    if (a.rows() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("dense_sym_eig: symmetric eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector seeded_random_vector(Index n, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        // 53 high bits -> [0, 1)
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v[i] = 2.0 * u - 1.0;
    }
    return v;
}

namespace {

// Orthogonalize `t` against the first `ncols` columns of `basis` (two passes) and
// normalize. Returns false when `t` is numerically inside the span.
bool orthonormalize_against(const Matrix& basis, Index ncols, Vector& t) {
    const double norm0 = t.norm();
    if (norm0 == 0.0 || !std::isfinite(norm0)) {
        return false;
    }
    for (int pass = 0; pass < 2; ++pass) {
        if (ncols > 0) {
            const Vector overlap = basis.leftCols(ncols).transpose() * t;
            t.noalias() -= basis.leftCols(ncols) * overlap;
        }
    }
    const double norm1 = t.norm();
    if (norm1 < 1e-10 * norm0 || norm1 < 1e-300) {
        return false;
    }
    t /= norm1;
    return true;
}

} // namespace

EigenSolveResult lowest_eigs(const LinearOperator& apply, Index dim, const EigensolverOptions& opts) {
    const Index k = opts.n_roots;
    if (dim <= 0 || k <= 0 || k > dim) {
        throw ContractViolation("lowest_eigs: need 0 < n_roots <= dim (n_roots=" + std::to_string(k) +
                                ", dim=" + std::to_string(dim) + ")");
    }
    if (opts.diagonal && opts.diagonal->size() != dim) {
        throw ContractViolation("lowest_eigs: diagonal length does not match dim");
    }

    Index max_sub = opts.max_subspace > 0 ? opts.max_subspace : std::max<Index>(24, 6 * k);
    max_sub = std::min(std::max(max_sub, 2 * k + 1), dim);

    Matrix basis(dim, max_sub);
    Matrix images(dim, max_sub);
    Index ncols = 0;
    std::uint64_t seed = opts.seed;

    auto add_vector = [&](Vector t) {
        if (ncols >= max_sub) {
            return false;
        }
        if (opts.projector) {
            opts.projector(t);
        }
        if (!orthonormalize_against(basis, ncols, t)) {
            return false;
        }
        basis.col(ncols) = t;
        Vector image(dim);
        image.setZero();
        apply(basis.col(ncols), image);
        images.col(ncols) = image;
        ++ncols;
        return true;
    };

    for (const Vector& guess : opts.initial_guess) {
        if (guess.size() == dim) {
            add_vector(guess);
        }
    }
    if (opts.diagonal) {
        std::vector<Index> order(static_cast<std::size_t>(dim));
        for (Index i = 0; i < dim; ++i) {
            order[static_cast<std::size_t>(i)] = i;
        }
        const Vector& d = *opts.diagonal;
        const Index n_unit = std::min(k, dim);
        std::partial_sort(order.begin(), order.begin() + n_unit, order.end(),
                          [&](Index a, Index b) { return d[a] < d[b] || (d[a] == d[b] && a < b); });
        for (Index j = 0; j < n_unit && ncols < k; ++j) {
            Vector e = Vector::Zero(dim);
            e[order[static_cast<std::size_t>(j)]] = 1.0;
            add_vector(e);
        }
    }
    // Random vectors fill the block; under a projector some may be rejected, so try a few.
    // One random direction is always added: unit vectors and warm starts can sit entirely
    // inside one symmetry sector (S_z, say) that the operator never leaves.
    const Index target = std::min(dim, ncols < k ? k : ncols + 1);
    for (int attempt = 0; ncols < target && attempt < 8 * k + 8; ++attempt) {
        add_vector(seeded_random_vector(dim, seed++));
    }
    if (ncols < k) {
        throw ContractViolation("lowest_eigs: could not build " + std::to_string(k) +
                                " independent start vectors (projected space too small?)");
    }

    EigenSolveResult result;
    Matrix ritz_vectors(dim, k);
    Matrix residual_vectors(dim, k);
    Vector theta(k);

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        result.iterations = iter;
        Matrix projected = basis.leftCols(ncols).transpose() * images.leftCols(ncols);
        projected = 0.5 * (projected + projected.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> small(projected);
        const Matrix& y = small.eigenvectors();
        theta = small.eigenvalues().head(k);
        ritz_vectors.noalias() = basis.leftCols(ncols) * y.leftCols(k);
        residual_vectors.noalias() = images.leftCols(ncols) * y.leftCols(k);
        residual_vectors -= ritz_vectors * theta.asDiagonal();

        result.residuals.assign(static_cast<std::size_t>(k), 0.0);
        bool all_converged = true;
        for (Index j = 0; j < k; ++j) {
            const double r = residual_vectors.col(j).norm();
            result.residuals[static_cast<std::size_t>(j)] = r;
            all_converged = all_converged && r <= opts.tol;
        }
        if (all_converged || ncols == dim) {
            result.converged = all_converged || ncols == dim;
            break;
        }

        // Thick restart: keep the lowest Ritz vectors.
        if (ncols + k > max_sub) {
            const Index keep = std::min<Index>(ncols, std::max<Index>(2 * k, std::min<Index>(k + 4, max_sub - k)));
            Matrix new_basis = basis.leftCols(ncols) * y.leftCols(keep);
            Matrix new_images = images.leftCols(ncols) * y.leftCols(keep);
            // Re-orthonormalize to wash out drift accumulated over many products.
            Eigen::HouseholderQR<Matrix> qr(new_basis);
            Matrix q = qr.householderQ() * Matrix::Identity(dim, keep);
            Matrix r = q.transpose() * new_basis;
            new_images = new_images * r.triangularView<Eigen::Upper>().solve(Matrix::Identity(keep, keep));
            basis.leftCols(keep) = q;
            images.leftCols(keep) = new_images;
            ncols = keep;
        }

        Index added = 0;
        for (Index j = 0; j < k; ++j) {
            if (result.residuals[static_cast<std::size_t>(j)] <= opts.tol) {
                continue;
            }
            Vector t = residual_vectors.col(j);
            if (opts.diagonal) {
                const Vector& d = *opts.diagonal;
                for (Index i = 0; i < dim; ++i) {
                    double denom = theta[j] - d[i];
                    if (std::abs(denom) < 1e-8) {
                        denom = denom < 0 ? -1e-8 : 1e-8;
                    }
                    t[i] /= denom;
                }
            }
            if (add_vector(std::move(t))) {
                ++added;
            }
        }
        if (added == 0) {
            // Preconditioned directions collapsed into the span; fall back to raw
            // residuals, then to random directions.
            for (Index j = 0; j < k && added == 0; ++j) {
                if (add_vector(residual_vectors.col(j))) {
                    ++added;
                }
            }
            for (int attempt = 0; added == 0 && attempt < 4; ++attempt) {
                if (add_vector(seeded_random_vector(dim, seed++))) {
                    ++added;
                }
            }
            if (added == 0) {
                break;
            }
        }
    }

    result.pairs.values = theta;
    result.pairs.vectors = ritz_vectors;
    return result;
}

} // namespace dvrqc
