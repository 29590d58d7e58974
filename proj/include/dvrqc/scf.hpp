#pragma once

#include "dvrqc/model.hpp"
#include "dvrqc/numerics.hpp"

namespace dvrqc {

struct ScfOptions {
    int max_iter = 200;
    double e_tol = 1e-10;
    double comm_tol = 1e-8;
    /// Weight of the new density in linear mixing (1 = no damping).
    double mixing = 0.5;
    bool use_diis = true;
    int diis_size = 8;
};

/// Restricted closed-shell HF solution. `density` is per spin: D = C_occ C_occ^T.
struct ScfResult {
    Matrix mo_coeff;          ///< columns are MOs, ascending orbital energy
    Vector orbital_energies;
    Matrix density;
    Matrix fock;
    double e_hf = 0.0;
    double commutator_norm = 0.0;  ///< ||F D - D F||_max at exit
    int n_occupied = 0;
    int iterations = 0;
    bool converged = false;
};

/// F = h + 2J - K with J_ii = sum_k g_ik D_kk (diagonal) and K_ij = g_ij D_ij.
Matrix fock_matrix(const IntegralSet& ints, const Matrix& density);

/// E = sum_ij D_ij (h_ij + F_ij) + e_nn.
double hf_energy(const IntegralSet& ints, const Matrix& density, const Matrix& fock);

/// SCF from the core-Hamiltonian guess with Aufbau filling.
///
/// Converged when |dE| < e_tol and ||[F, D]||_max < comm_tol. Non-convergence returns
/// `converged == false`. Throws ContractViolation for odd or too many electrons and
/// ConvergenceError when the HOMO/LUMO pair is degenerate (no fractional occupation).
ScfResult scf_solve(const IntegralSet& ints, int n_electrons, const ScfOptions& opts = {});

} // namespace dvrqc
