#include "dvrqc/dvr.hpp"

#include "dvrqc/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dvrqc {

using std::numbers::pi;

std::string_view to_string(DvrKind kind) { return kind == DvrKind::sine ? "sine" : "sinc"; }

DvrBasis build_sine_dvr(double a, double b, Index n) {
    if (!(b > a) || n <= 0) {
        throw InvalidDomain("sine DVR needs b > a and n >= 1 (got a=" + std::to_string(a) +
                            ", b=" + std::to_string(b) + ", n=" + std::to_string(n) + ")");
    }
    DvrBasis basis;
    basis.kind = DvrKind::sine;
    basis.domain_low = a;
    basis.domain_high = b;
    basis.spacing = (b - a) / static_cast<double>(n + 1);
    basis.grid.resize(n);
    for (Index j = 0; j < n; ++j) {
        basis.grid[j] = a + static_cast<double>(j + 1) * basis.spacing;
    }
    basis.weights = Vector::Constant(n, basis.spacing);
    return basis;
}

DvrBasis build_sinc_dvr(double x0, double dx, Index n) {
    if (!(dx > 0.0) || n <= 0) {
        throw InvalidDomain("sinc DVR needs dx > 0 and n >= 1 (got dx=" + std::to_string(dx) +
                            ", n=" + std::to_string(n) + ")");
    }
    DvrBasis basis;
    basis.kind = DvrKind::sinc;
    basis.spacing = dx;
    basis.grid.resize(n);
    for (Index i = 0; i < n; ++i) {
        basis.grid[i] = x0 + static_cast<double>(i) * dx;
    }
    basis.domain_low = basis.grid[0];
    basis.domain_high = basis.grid[n - 1];
    basis.weights = Vector::Constant(n, dx);
    return basis;
}

Matrix kinetic_matrix(const DvrBasis& basis) {
    const Index n = basis.size();
    if (n == 0) {
        throw ContractViolation("kinetic_matrix: empty basis");
    }
    Matrix t(n, n);
    if (basis.kind == DvrKind::sinc) {
        const double dx2 = basis.spacing * basis.spacing;
        for (Index i = 0; i < n; ++i) {
            t(i, i) = pi * pi / (6.0 * dx2);
            for (Index j = 0; j < i; ++j) {
                const double d = static_cast<double>(i - j);
                const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
                t(i, j) = t(j, i) = sign / (dx2 * d * d);
            }
        }
        return t;
    }

    const double length = basis.domain_high - basis.domain_low;
    const double m = static_cast<double>(n + 1);
    const double prefactor = pi * pi / (4.0 * length * length);
    auto inv_sin2 = [](double angle) {
        const double s = std::sin(angle);
        return 1.0 / (s * s);
    };
    for (Index p = 0; p < n; ++p) {
        const double i = static_cast<double>(p + 1);
        t(p, p) = prefactor * ((2.0 * m * m + 1.0) / 3.0 - inv_sin2(pi * i / m));
        for (Index q = 0; q < p; ++q) {
            const double j = static_cast<double>(q + 1);
            const double sign = ((p - q) % 2 == 0) ? 1.0 : -1.0;
            t(p, q) = t(q, p) =
                prefactor * sign * (inv_sin2(pi * (i - j) / (2.0 * m)) - inv_sin2(pi * (i + j) / (2.0 * m)));
        }
    }
    return t;
}

double basis_value(const DvrBasis& basis, Index i, double x) {
    const Index n = basis.size();
    if (i < 0 || i >= n) {
        throw ContractViolation("basis_value: index " + std::to_string(i) + " outside [0, " +
                                std::to_string(n) + ")");
    }
    const double dx = basis.spacing;
    if (basis.kind == DvrKind::sinc) {
        const double u = pi * (x - basis.grid[i]) / dx;
        const double sinc = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
        return sinc / std::sqrt(dx);
    }
    // phi_i(x) = sum_k U_ki chi_k(x), chi_k = sqrt(2/l) sin(k pi (x-a)/l),
    // U_ki = sqrt(2/(n+1)) sin(k i pi/(n+1)) with 1-based k, i.
    const double a = basis.domain_low;
    const double length = basis.domain_high - a;
    if (x <= a || x >= basis.domain_high) {
        return 0.0;
    }
    const double m = static_cast<double>(n + 1);
    const double ii = static_cast<double>(i + 1);
    double sum = 0.0;
    for (Index k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        sum += std::sin(kk * ii * pi / m) * std::sin(kk * pi * (x - a) / length);
    }
    return sum * std::sqrt(2.0 / m) * std::sqrt(2.0 / length);
}

Vector coefficients_from_samples(const DvrBasis& basis, const Vector& samples) {
    if (samples.size() != basis.size()) {
        throw ContractViolation("coefficients_from_samples: " + std::to_string(samples.size()) +
                                " samples for a basis of size " + std::to_string(basis.size()));
    }
    return basis.weights.cwiseSqrt().cwiseProduct(samples);
}

double evaluate_expansion(const DvrBasis& basis, const Vector& coefficients, double x) {
    if (coefficients.size() != basis.size()) {
        throw ContractViolation("evaluate_expansion: coefficient length does not match basis");
    }
    double value = 0.0;
    for (Index i = 0; i < basis.size(); ++i) {
        value += coefficients[i] * basis_value(basis, i, x);
    }
    return value;
}

Vector position_operator_grid(const DvrBasis& basis) {
    if (basis.kind != DvrKind::sine) {
        throw ContractViolation("position_operator_grid: only defined for the sine DVR");
    }
    const Index n = basis.size();
    const double a = basis.domain_low;
    const double length = basis.domain_high - a;
    // <chi_k| x |chi_l> on (a, a + l)
    Matrix x(n, n);
    for (Index p = 0; p < n; ++p) {
        x(p, p) = a + 0.5 * length;
        for (Index q = 0; q < p; ++q) {
            const double k = static_cast<double>(p + 1);
            const double l = static_cast<double>(q + 1);
            const double odd_diff = ((p - q) % 2 == 0) ? 0.0 : -2.0;
            const double odd_sum = ((p + q) % 2 == 0) ? 0.0 : -2.0;
            x(p, q) = x(q, p) =
                length / (pi * pi) * (odd_diff / ((k - l) * (k - l)) - odd_sum / ((k + l) * (k + l)));
        }
    }
    return dense_sym_eig(x).values;
}

} // namespace dvrqc
