#pragma once

#include "dvrqc/dvr.hpp"
#include "dvrqc/numerics.hpp"

#include <vector>

namespace dvrqc {

/// Bohr per angstrom.
inline constexpr double kBohrPerAngstrom = 1.8897259886;

/// Regularized Coulomb kernel erf(r/a)/r with screening length a (bohr).
/// Finite at the origin: 2/(a sqrt(pi)).
struct ScreenedCoulomb {
    double length = 1.0;

    /// Throws ContractViolation for r < 0.
    double operator()(double r) const;
};

/// erf(r)/r.
double screened_coulomb(double r);

/// One kernel per interaction type. The default (all lengths 1 bohr) is the plain erf(r)/r model.
struct InteractionModel {
    ScreenedCoulomb electron_nuclear;
    ScreenedCoulomb electron_electron;
    ScreenedCoulomb nuclear_nuclear;
};

/// Nuclei on a line (bohr, strictly ascending) with integer charges, plus the electron count.
struct ChainGeometry {
    std::vector<double> positions;
    std::vector<int> charges;
    int n_electrons = 0;

    /// Throws ContractViolation on unsorted positions, charges < 1, size mismatch or an odd
    /// electron count.
    void validate() const;
};

/// Evenly spaced chain: n protons from -length/2 to +length/2 with Z = 1.
ChainGeometry uniform_hydrogen_chain(int n_atoms, double length, int n_electrons);

/// DVR one- and two-electron integrals.
struct IntegralSet {
    DvrBasis basis;
    Matrix t;       ///< kinetic matrix
    Vector v;       ///< diagonal nuclear attraction
    Matrix g;       ///< g_ik = (ii|kk), diagonal approximation
    double e_nn = 0.0;

    Index size() const { return t.rows(); }
    /// Core Hamiltonian h = t + diag(v).
    Matrix core_hamiltonian() const;
};

/// v_i = -sum_I Z_I v_C(|x_i - R_I|).
Vector nuclear_attraction_vector(const DvrBasis& basis, const ChainGeometry& geom,
                                 const ScreenedCoulomb& kernel = {});

/// g_ik = v_C(|x_i - x_k|), including the finite i == k value.
Matrix eri_matrix(const DvrBasis& basis, const ScreenedCoulomb& kernel = {});

/// sum_{I<J} Z_I Z_J v_C(|R_I - R_J|). Coincident nuclei are allowed (finite under screening)
/// but produce a warning on stderr.
double nuclear_repulsion(const ChainGeometry& geom, const ScreenedCoulomb& kernel = {});

IntegralSet build_integrals(const DvrBasis& basis, const ChainGeometry& geom,
                            const InteractionModel& interactions = {});

} // namespace dvrqc
