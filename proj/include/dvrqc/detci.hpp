#pragma once

#include "dvrqc/active_space.hpp"
#include "dvrqc/numerics.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace dvrqc {

/// Occupation bitstrings; bit p set means spatial orbital p is occupied in that spin.
///
/// Fermionic order: all alpha spin-orbitals (ascending) precede all beta spin-orbitals.
struct Determinant {
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;

    constexpr auto operator<=>(const Determinant&) const = default;
};

/// All determinants with fixed (n_up, n_down) over n_orb orbitals, ordered by
/// (alpha, beta) with strings in ascending integer order.
class DeterminantBasis {
  public:
    DeterminantBasis(int n_orb, int n_up, int n_down);

    int n_orb() const { return n_orb_; }
    int n_up() const { return n_up_; }
    int n_down() const { return n_down_; }
    Index size() const { return static_cast<Index>(alpha_.size() * beta_.size()); }

    Determinant operator[](Index k) const;
    /// Position of `det` or -1 when it is not in this basis.
    Index index_of(const Determinant& det) const;

    const std::vector<std::uint64_t>& alpha_strings() const { return alpha_; }
    const std::vector<std::uint64_t>& beta_strings() const { return beta_; }

  private:
    int n_orb_;
    int n_up_;
    int n_down_;
    std::vector<std::uint64_t> alpha_;
    std::vector<std::uint64_t> beta_;
};

/// Throws ContractViolation when a count exceeds n_orb or n_orb > 64.
DeterminantBasis enumerate_dets(int n_orb, int n_up, int n_down);

/// <bra| H - e_core |ket> by the Slater-Condon rules.
double slater_condon_element(const Determinant& bra, const Determinant& ket, const Matrix& h_eff,
                             const EriTensor& eri);

struct CiResult {
    Vector energies;      ///< ascending, e_core included
    Matrix coefficients;  ///< column k pairs with energies[k]
    int n_up = 0;
    int n_down = 0;
    Index dimension = 0;
    std::vector<double> spin_squared;  ///< <S^2> per root
};

/// Dense-path threshold on the determinant count.
inline constexpr Index kDenseCiLimit = 2000;

/// y = (H - e_core) x over `basis`, generating connected determinants on the fly.
void apply_ci_hamiltonian(const DeterminantBasis& basis, const ActiveSpaceHamiltonian& ash, const Vector& x,
                          Vector& y);

/// Diagonal of H - e_core over `basis`.
Vector ci_diagonal(const DeterminantBasis& basis, const ActiveSpaceHamiltonian& ash);

/// <S^2> of a normalized CI vector.
double spin_squared(const DeterminantBasis& basis, const Vector& coefficients);

/// Lowest roots of the active-space Hamiltonian in the S_z = s_z sector.
/// Dense diagonalization below kDenseCiLimit determinants, preconditioned Davidson above.
/// Throws ContractViolation when (n_elec + 2 s_z)/2 is not a valid alpha count and
/// ConvergenceError when the iterative solver stalls.
CiResult solve_casci(const ActiveSpaceHamiltonian& ash, double s_z = 0.0, Index n_roots = 1);

} // namespace dvrqc
