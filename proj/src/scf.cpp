#include "dvrqc/scf.hpp"

#include "dvrqc/errors.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace dvrqc {

Matrix fock_matrix(const IntegralSet& ints, const Matrix& density) {
    const Index n = ints.size();
    if (density.rows() != n || density.cols() != n) {
        throw ContractViolation("fock_matrix: density is " + std::to_string(density.rows()) + "x" +
                                std::to_string(density.cols()) + ", basis has " + std::to_string(n));
    }
    Matrix f = ints.core_hamiltonian();
    f.diagonal() += 2.0 * (ints.g * density.diagonal());
    f -= ints.g.cwiseProduct(density);
    return f;
}

double hf_energy(const IntegralSet& ints, const Matrix& density, const Matrix& fock) {
    return density.cwiseProduct(ints.core_hamiltonian() + fock).sum() + ints.e_nn;
}

namespace {

struct Aufbau {
    Matrix coeff;
    Vector energies;
    Matrix density;
};

Aufbau fill(const Matrix& fock, int n_occ) {
    EigenPairs eig = dense_sym_eig(0.5 * (fock + fock.transpose()));
    const Index n = eig.values.size();
    if (n_occ > 0 && n_occ < n) {
        const double gap = eig.values[n_occ] - eig.values[n_occ - 1];
        if (gap < 1e-9 * std::max(1.0, std::abs(eig.values[n_occ]))) {
            throw ConvergenceError("scf: degenerate frontier orbitals at the Aufbau boundary (HOMO " +
                                   std::to_string(eig.values[n_occ - 1]) + ", LUMO " +
                                   std::to_string(eig.values[n_occ]) + "); closed-shell filling is ambiguous");
        }
    }
    const Matrix occ = eig.vectors.leftCols(n_occ);
    return {eig.vectors, eig.values, occ * occ.transpose()};
}

double commutator_norm(const Matrix& f, const Matrix& d) { return max_abs(f * d - d * f); }

// Pulay extrapolation of the Fock matrix with [F, D] as the error vector.
class Diis {
  public:
    explicit Diis(int size) : size_(size) {}

    Matrix extrapolate(const Matrix& fock, const Matrix& error) {
        focks_.push_back(fock);
        errors_.push_back(error);
        if (static_cast<int>(focks_.size()) > size_) {
            focks_.pop_front();
            errors_.pop_front();
        }
        const Index m = static_cast<Index>(focks_.size());
        if (m < 2) {
            return fock;
        }
        Matrix b = Matrix::Zero(m + 1, m + 1);
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j <= i; ++j) {
                b(i, j) = b(j, i) = errors_[i].cwiseProduct(errors_[j]).sum();
            }
            b(i, m) = b(m, i) = -1.0;
        }
        Vector rhs = Vector::Zero(m + 1);
        rhs[m] = -1.0;
        const Vector c = b.completeOrthogonalDecomposition().solve(rhs);
        Matrix out = Matrix::Zero(fock.rows(), fock.cols());
        for (Index i = 0; i < m; ++i) {
            out += c[i] * focks_[i];
        }
        return out;
    }

  private:
    int size_;
    std::deque<Matrix> focks_;
    std::deque<Matrix> errors_;
};

} // namespace

ScfResult scf_solve(const IntegralSet& ints, int n_electrons, const ScfOptions& opts) {
    const Index n = ints.size();
    if (n_electrons < 0 || n_electrons % 2 != 0) {
        throw ContractViolation("scf_solve: restricted closed-shell HF needs an even electron count, got " +
                                std::to_string(n_electrons));
    }
    if (n_electrons > 2 * n) {
        throw ContractViolation("scf_solve: " + std::to_string(n_electrons) + " electrons exceed 2N = " +
                                std::to_string(2 * n));
    }
    const int n_occ = n_electrons / 2;

    ScfResult result;
    result.n_occupied = n_occ;

    Aufbau current = fill(ints.core_hamiltonian(), n_occ);
    Matrix density_in = current.density;
    Diis diis(opts.diis_size);
    double e_prev = 0.0;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        result.iterations = iter;
        const Matrix fock = fock_matrix(ints, current.density);
        const double energy = hf_energy(ints, current.density, fock);
        const double comm = commutator_norm(fock, current.density);
        const bool settled = (iter > 1 || n_occ == 0) && std::abs(energy - e_prev) < opts.e_tol;
        if (settled && comm < opts.comm_tol) {
            result.converged = true;
            break;
        }
        e_prev = energy;

        if (opts.use_diis) {
            const Matrix extrapolated = diis.extrapolate(fock, fock * current.density - current.density * fock);
            current = fill(extrapolated, n_occ);
            density_in = current.density;
        } else {
            Aufbau next = fill(fock, n_occ);
            if (opts.mixing >= 1.0) {
                current = std::move(next);
                density_in = current.density;
            } else {
                // Damped density feeds the next Fock build; the idempotent density is
                // recovered by diagonalizing that Fock matrix.
                density_in = (1.0 - opts.mixing) * density_in + opts.mixing * next.density;
                current = fill(fock_matrix(ints, density_in), n_occ);
            }
        }
    }

    // Canonicalize: orbitals from the Fock matrix of the final density.
    const Matrix fock = fock_matrix(ints, current.density);
    EigenPairs canonical = dense_sym_eig(0.5 * (fock + fock.transpose()));
    const Matrix occ = canonical.vectors.leftCols(n_occ);
    result.mo_coeff = canonical.vectors;
    result.orbital_energies = canonical.values;
    result.density = occ * occ.transpose();
    result.fock = fock_matrix(ints, result.density);
    result.e_hf = hf_energy(ints, result.density, result.fock);
    result.commutator_norm = commutator_norm(result.fock, result.density);
    return result;
}

} // namespace dvrqc
