#pragma once

#include "dvrqc/numerics.hpp"

#include <string_view>

namespace dvrqc {

enum class DvrKind { sine, sinc };

std::string_view to_string(DvrKind kind);

/// Uniform-grid DVR basis. Lengths in bohr.
///
/// Sine kind: particle-in-a-box functions on the open interval (domain_low, domain_high);
/// the n grid points exclude both walls. Sinc kind: band-limited functions on an
/// unbounded uniform grid; the domain fields are unused.
struct DvrBasis {
    DvrKind kind = DvrKind::sine;
    Vector grid;
    Vector weights;
    double spacing = 0.0;
    double domain_low = 0.0;
    double domain_high = 0.0;

    Index size() const { return grid.size(); }
};

/// x_j = a + j*dx, j = 1..n, dx = (b - a)/(n + 1). Throws InvalidDomain if b <= a or n == 0.
DvrBasis build_sine_dvr(double a, double b, Index n);

/// x_i = x0 + i*dx, i = 0..n-1. Throws InvalidDomain if dx <= 0 or n == 0.
DvrBasis build_sinc_dvr(double x0, double dx, Index n);

/// Exact matrix of -1/2 d^2/dx^2 (hartree).
///
/// Sine:  T_ii = pi^2/(4 l^2) [(2M^2 + 1)/3 - 1/sin^2(pi i/M)]
///        T_ij = pi^2/(4 l^2) (-1)^(i-j) [1/sin^2(pi(i-j)/(2M)) - 1/sin^2(pi(i+j)/(2M))]
///        with l = b - a, M = n + 1 and 1-based i, j (Colbert-Miller).
/// Sinc:  T_ii = pi^2/(6 dx^2),  T_ij = (-1)^(i-j) / (dx^2 (i-j)^2).
Matrix kinetic_matrix(const DvrBasis& basis);

/// Value of the i-th basis function (0-based) at x. Throws ContractViolation on a bad index.
double basis_value(const DvrBasis& basis, Index i, double x);

/// DVR coefficients c_j = sqrt(w_j) psi(x_j) from grid samples of psi.
Vector coefficients_from_samples(const DvrBasis& basis, const Vector& samples);

/// Sum_j c_j phi_j(x).
double evaluate_expansion(const DvrBasis& basis, const Vector& coefficients, double x);

/// Cross-check route for the sine DVR: eigenvalues of the position operator in the
/// n lowest particle-in-a-box functions. They sit close to, but not exactly on, the
/// uniform grid (the uniform grid diagonalizes cos(pi (x - a)/l) instead).
Vector position_operator_grid(const DvrBasis& basis);

} // namespace dvrqc
