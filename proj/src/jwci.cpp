#include "dvrqc/jwci.hpp"

#include "dvrqc/errors.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace dvrqc {

SiteOperatorSet jw_site_ops() {
    SiteOperatorSet ops;
    ops.a_up << 0, 0, 1, 0,
                0, 0, 0, 1,
                0, 0, 0, 0,
                0, 0, 0, 0;
    ops.a_dn << 0, 1, 0, 0,
                0, 0, 0, 0,
                0, 0, 0, -1,
                0, 0, 0, 0;
    ops.n_up = ops.a_up.transpose() * ops.a_up;
    ops.n_dn = ops.a_dn.transpose() * ops.a_dn;
    ops.n = ops.n_up + ops.n_dn;
    ops.parity = Eigen::Vector4d(1, -1, -1, 1).asDiagonal();
    return ops;
}

namespace {

SparseMatrix to_sparse(const Eigen::Matrix4d& m) { return m.sparseView(); }

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
                    triplets.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                          ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

// Action of one site matrix on a local basis state: at most one nonzero per column.
struct LocalAction {
    std::array<int, 4> target{};
    std::array<double, 4> value{};
};

LocalAction local_action(const Eigen::Matrix4d& m) {
    LocalAction act;
    for (int d = 0; d < 4; ++d) {
        act.target[d] = -1;
        act.value[d] = 0.0;
        for (int r = 0; r < 4; ++r) {
            if (m(r, d) != 0.0) {
                if (act.target[d] >= 0) {
                    throw ContractViolation("site operator column has more than one nonzero");
                }
                act.target[d] = r;
                act.value[d] = m(r, d);
            }
        }
    }
    return act;
}

// Index 0: a_up, 1: a_up^T, 2: a_dn, 3: a_dn^T
const std::array<LocalAction, 4>& ladder_table() {
    static const std::array<LocalAction, 4> table = [] {
        const SiteOperatorSet ops = jw_site_ops();
        for (int d = 0; d < 4; ++d) {
            const double expected = (std::popcount(static_cast<unsigned>(d)) & 1) ? -1.0 : 1.0;
            if (ops.parity(d, d) != expected) {
                throw ContractViolation("site parity does not match the 2*n_up + n_dn local index");
            }
        }
        return std::array<LocalAction, 4>{local_action(ops.a_up), local_action(ops.a_up.transpose()),
                                          local_action(ops.a_dn), local_action(ops.a_dn.transpose())};
    }();
    return table;
}

inline const LocalAction& action_for(const LadderOp& op) {
    return ladder_table()[(op.spin == Spin::up ? 0 : 2) + (op.dagger ? 1 : 0)];
}

// Applies the term to basis state `s`; returns false when the result vanishes.
inline bool apply_term(const JwTerm& term, int l, std::uint64_t s, std::uint64_t& out, double& coeff) {
    coeff = term.coefficient;
    for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
        const int shift = 2 * (l - 1 - it->site);
        const auto d = static_cast<int>((s >> shift) & 3U);
        const LocalAction& act = action_for(*it);
        const int t = act.target[static_cast<std::size_t>(d)];
        if (t < 0) {
            return false;
        }
        coeff *= act.value[static_cast<std::size_t>(d)];
        // Sites left of `site` are the more significant digits.
        if (std::popcount(s >> (shift + 2)) & 1) {
            coeff = -coeff;
        }
        s = (s & ~(std::uint64_t{3} << shift)) | (static_cast<std::uint64_t>(t) << shift);
    }
    out = s;
    return true;
}

} // namespace

SparseMatrix embed_fermion_op(const SiteOperatorSet& ops, int site, Spin spin, bool dagger, int l) {
    if (l < 1 || site < 0 || site >= l) {
        throw ContractViolation("embed_fermion_op: site " + std::to_string(site) + " outside a chain of " +
                                std::to_string(l));
    }
    Eigen::Matrix4d local = spin == Spin::up ? ops.a_up : ops.a_dn;
    if (dagger) {
        local.transposeInPlace();
    }
    SparseMatrix out(1, 1);
    out.insert(0, 0) = 1.0;
    const SparseMatrix parity = to_sparse(ops.parity);
    const SparseMatrix identity = to_sparse(Eigen::Matrix4d::Identity());
    for (int j = 0; j < l; ++j) {
        out = kron(out, j < site ? parity : (j == site ? to_sparse(local) : identity));
    }
    return out;
}

SpinChainHamiltonian::SpinChainHamiltonian(int l, std::vector<JwTerm> terms, double offset)
    : l_(l), dim_(Index{1} << (2 * l)), terms_(std::move(terms)), offset_(offset) {
    if (l < 1 || l > kMaxJwSites) {
        throw ContractViolation("spin chain: " + std::to_string(l) + " sites outside [1, " +
                                std::to_string(kMaxJwSites) + "]");
    }
}

void SpinChainHamiltonian::apply(const Vector& x, Vector& y) const {
    if (matrix_) {
        y.noalias() = *matrix_ * x;
        return;
    }
    y = offset_ * x;
    for (Index s = 0; s < dim_; ++s) {
        const double xs = x[s];
        if (xs == 0.0) {
            continue;
        }
        for (const JwTerm& term : terms_) {
            std::uint64_t t = 0;
            double c = 0.0;
            if (apply_term(term, l_, static_cast<std::uint64_t>(s), t, c)) {
                y[static_cast<Index>(t)] += c * xs;
            }
        }
    }
}

Vector SpinChainHamiltonian::diagonal() const {
    if (matrix_) {
        return matrix_->diagonal();
    }
    Vector d = Vector::Constant(dim_, offset_);
    for (Index s = 0; s < dim_; ++s) {
        for (const JwTerm& term : terms_) {
            std::uint64_t t = 0;
            double c = 0.0;
            if (apply_term(term, l_, static_cast<std::uint64_t>(s), t, c) && static_cast<Index>(t) == s) {
                d[s] += c;
            }
        }
    }
    return d;
}

SparseMatrix SpinChainHamiltonian::materialize() const {
    std::vector<Eigen::Triplet<double>> triplets;
    Vector column = Vector::Zero(dim_);
    std::vector<Index> touched;
    std::vector<char> mark(static_cast<std::size_t>(dim_), 0);
    for (Index s = 0; s < dim_; ++s) {
        column[s] += offset_;
        mark[static_cast<std::size_t>(s)] = 1;
        touched.push_back(s);
        for (const JwTerm& term : terms_) {
            std::uint64_t t = 0;
            double c = 0.0;
            if (apply_term(term, l_, static_cast<std::uint64_t>(s), t, c)) {
                const auto row = static_cast<Index>(t);
                if (!mark[static_cast<std::size_t>(row)]) {
                    mark[static_cast<std::size_t>(row)] = 1;
                    touched.push_back(row);
                }
                column[row] += c;
            }
        }
        for (Index row : touched) {
            if (column[row] != 0.0) {
                triplets.emplace_back(row, s, column[row]);
            }
            column[row] = 0.0;
            mark[static_cast<std::size_t>(row)] = 0;
        }
        touched.clear();
    }
    SparseMatrix h(dim_, dim_);
    h.setFromTriplets(triplets.begin(), triplets.end());
    SparseMatrix ht = h.transpose();
    SparseMatrix sym = 0.5 * (h + ht);
    sym.prune(0.0);
    return sym;
}

void SpinChainHamiltonian::cache_matrix() { matrix_ = materialize(); }

SpinChainHamiltonian build_jw_hamiltonian(const ActiveSpaceHamiltonian& ash, std::optional<NumberPenalty> penalty) {
    const int l = static_cast<int>(ash.n_orb);
    if (l > kMaxJwSites) {
        throw ContractViolation("build_jw_hamiltonian: " + std::to_string(l) + " orbitals exceed the " +
                                std::to_string(kMaxJwSites) + "-site limit of the 4^L Fock space; use dmrg");
    }
    std::vector<JwTerm> terms;
    const Spin spins[2] = {Spin::up, Spin::down};
    for (int p = 0; p < l; ++p) {
        for (int q = 0; q < l; ++q) {
            const double hpq = ash.h_eff(p, q);
            if (hpq == 0.0) {
                continue;
            }
            for (Spin s : spins) {
                terms.push_back({hpq, {{p, s, true}, {q, s, false}}});
            }
        }
    }
    for (int p = 0; p < l; ++p) {
        for (int q = 0; q < l; ++q) {
            for (int r = 0; r < l; ++r) {
                for (int s = 0; s < l; ++s) {
                    const double v = 0.5 * ash.eri(p, q, r, s);
                    if (v == 0.0) {
                        continue;
                    }
                    for (Spin sigma : spins) {
                        for (Spin tau : spins) {
                            if (sigma == tau && (p == r || q == s)) {
                                continue;  // c+ c+ or c c on the same mode vanishes
                            }
                            terms.push_back({v, {{p, sigma, true}, {r, tau, true}, {s, tau, false}, {q, sigma, false}}});
                        }
                    }
                }
            }
        }
    }
    double offset = ash.e_core;
    if (penalty) {
        // mu (N - n)^2 = mu sum_ij n_i n_j - 2 mu n sum_i n_i + mu n^2
        const double mu = penalty->mu;
        const double target = penalty->n_target;
        for (int i = 0; i < l; ++i) {
            for (Spin si : spins) {
                terms.push_back({-2.0 * mu * target, {{i, si, true}, {i, si, false}}});
                for (int j = 0; j < l; ++j) {
                    for (Spin sj : spins) {
                        terms.push_back({mu, {{i, si, true}, {i, si, false}, {j, sj, true}, {j, sj, false}}});
                    }
                }
            }
        }
        offset += mu * target * target;
    }
    SpinChainHamiltonian h(l, std::move(terms), offset);
    if (l <= kMaterializeJwSites) {
        h.cache_matrix();
    }
    return h;
}

Occupation occupation(Index state, int l) {
    // up bit is the high bit of each 2-bit digit
    std::uint64_t up_mask = 0;
    for (int j = 0; j < l; ++j) {
        up_mask |= std::uint64_t{2} << (2 * j);
    }
    const auto s = static_cast<std::uint64_t>(state);
    const int up = std::popcount(s & up_mask);
    const int total = std::popcount(s);
    return {total, up, total - up};
}

JwciResult solve_jwci(const SpinChainHamiltonian& h, Index n_roots, std::optional<JwSector> sector) {
    const Index dim = h.dim();
    const int l = h.sites();
    EigensolverOptions opts;
    opts.n_roots = n_roots;
    opts.tol = 1e-8;
    opts.diagonal = h.diagonal();
    if (dim > 65536) {
        opts.max_subspace = std::max<Index>(4 * n_roots, 16);
    }
    if (sector) {
        std::vector<char> keep(static_cast<std::size_t>(dim));
        for (Index s = 0; s < dim; ++s) {
            const Occupation occ = occupation(s, l);
            keep[static_cast<std::size_t>(s)] = occ.total == sector->n_electrons &&
                                                (!sector->two_sz || occ.up - occ.down == *sector->two_sz);
        }
        opts.projector = [keep = std::move(keep)](Vector& v) {
            for (Index s = 0; s < v.size(); ++s) {
                if (!keep[static_cast<std::size_t>(s)]) {
                    v[s] = 0.0;
                }
            }
        };
    }
    auto apply = [&](const Vector& in, Vector& out) { h.apply(in, out); };
    EigenSolveResult solved = lowest_eigs(apply, dim, opts);
    if (!solved.converged) {
        throw ConvergenceError("solve_jwci: eigensolver did not converge in " + std::to_string(solved.iterations) +
                               " iterations");
    }
    JwciResult result;
    result.energies = solved.pairs.values;
    result.states = solved.pairs.vectors;
    for (Index k = 0; k < n_roots; ++k) {
        double n_exp = 0.0;
        double sz_exp = 0.0;
        for (Index s = 0; s < dim; ++s) {
            const double w = result.states(s, k) * result.states(s, k);
            if (w == 0.0) {
                continue;
            }
            const Occupation occ = occupation(s, l);
            n_exp += w * occ.total;
            sz_exp += 0.5 * w * (occ.up - occ.down);
        }
        result.n_expectation.push_back(n_exp);
        result.sz_expectation.push_back(sz_exp);
    }
    return result;
}

} // namespace dvrqc
