#include "dvrqc/model.hpp"

#include "dvrqc/errors.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

namespace dvrqc {

double ScreenedCoulomb::operator()(double r) const {
    if (r < 0.0 || std::isnan(r)) {
        throw ContractViolation("screened Coulomb: negative distance " + std::to_string(r));
    }
    const double u = r / length;
    const double at_origin = 2.0 / (length * std::sqrt(std::numbers::pi));
    if (u < 1e-6) {
        // erf(u)/u = 2/sqrt(pi) (1 - u^2/3 + u^4/10 - ...)
        return at_origin * (1.0 - u * u / 3.0);
    }
    return std::erf(u) / r;
}

double screened_coulomb(double r) { return ScreenedCoulomb{}(r); }

void ChainGeometry::validate() const {
    if (positions.size() != charges.size()) {
        throw ContractViolation("geometry: " + std::to_string(positions.size()) + " positions but " +
                                std::to_string(charges.size()) + " charges");
    }
    for (std::size_t i = 0; i < charges.size(); ++i) {
        if (charges[i] < 1) {
            throw ContractViolation("geometry: charge " + std::to_string(charges[i]) + " at index " +
                                    std::to_string(i) + " (must be >= 1)");
        }
        if (i > 0 && !(positions[i] > positions[i - 1])) {
            throw ContractViolation("geometry: positions must be strictly ascending");
        }
    }
    if (n_electrons < 0 || n_electrons % 2 != 0) {
        throw ContractViolation("geometry: electron count " + std::to_string(n_electrons) +
                                " is not a non-negative even number");
    }
}

ChainGeometry uniform_hydrogen_chain(int n_atoms, double length, int n_electrons) {
    ChainGeometry geom;
    geom.n_electrons = n_electrons;
    for (int i = 0; i < n_atoms; ++i) {
        const double frac = n_atoms == 1 ? 0.5 : static_cast<double>(i) / (n_atoms - 1);
        geom.positions.push_back(-0.5 * length + frac * length);
        geom.charges.push_back(1);
    }
    return geom;
}

Matrix IntegralSet::core_hamiltonian() const {
    Matrix h = t;
    h.diagonal() += v;
    return h;
}

Vector nuclear_attraction_vector(const DvrBasis& basis, const ChainGeometry& geom,
                                 const ScreenedCoulomb& kernel) {
    Vector v = Vector::Zero(basis.size());
    for (Index i = 0; i < basis.size(); ++i) {
        for (std::size_t a = 0; a < geom.positions.size(); ++a) {
            v[i] -= geom.charges[a] * kernel(std::abs(basis.grid[i] - geom.positions[a]));
        }
    }
    return v;
}

Matrix eri_matrix(const DvrBasis& basis, const ScreenedCoulomb& kernel) {
    const Index n = basis.size();
    Matrix g(n, n);
    for (Index i = 0; i < n; ++i) {
        g(i, i) = kernel(0.0);
        for (Index k = 0; k < i; ++k) {
            g(i, k) = g(k, i) = kernel(std::abs(basis.grid[i] - basis.grid[k]));
        }
    }
    return g;
}

double nuclear_repulsion(const ChainGeometry& geom, const ScreenedCoulomb& kernel) {
    double e = 0.0;
    for (std::size_t a = 0; a < geom.positions.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            const double r = std::abs(geom.positions[a] - geom.positions[b]);
            if (r == 0.0) {
                std::cerr << "warning: nuclei " << b << " and " << a
                          << " coincide; using the finite screened value\n";
            }
            e += geom.charges[a] * geom.charges[b] * kernel(r);
        }
    }
    return e;
}

IntegralSet build_integrals(const DvrBasis& basis, const ChainGeometry& geom, const InteractionModel& interactions) {
    IntegralSet ints;
    ints.basis = basis;
    ints.t = kinetic_matrix(basis);
    ints.v = nuclear_attraction_vector(basis, geom, interactions.electron_nuclear);
    ints.g = eri_matrix(basis, interactions.electron_electron);
    ints.e_nn = nuclear_repulsion(geom, interactions.nuclear_nuclear);
    return ints;
}

} // namespace dvrqc
