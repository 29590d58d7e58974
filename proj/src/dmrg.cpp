#include "dvrqc/dmrg.hpp"

#include "dvrqc/errors.hpp"
#include "dvrqc/jwci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dvrqc {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

struct LocalOps {
    Matrix cdag_up;
    Matrix cdag_dn;
    Matrix n;
    Matrix n_updn;
    Matrix parity;
    Matrix identity;
};

const LocalOps& local_ops() {
    static const LocalOps ops = [] {
        const SiteOperatorSet s = jw_site_ops();
        LocalOps o;
        o.cdag_up = s.a_up.transpose();
        o.cdag_dn = s.a_dn.transpose();
        o.n = s.n;
        o.n_updn = s.n_up * s.n_dn;
        o.parity = s.parity;
        o.identity = Matrix::Identity(4, 4);
        return o;
    }();
    return ops;
}

Matrix site_hamiltonian(const ChainHamiltonianTerms& terms, int site) {
    const LocalOps& o = local_ops();
    return terms.onsite[site] * o.n + terms.hubbard_u[site] * o.n_updn;
}

double hop(const ChainHamiltonianTerms& terms, int i, int j) {
    return i < j ? terms.hop(i, j) : terms.hop(j, i);
}

double dens(const ChainHamiltonianTerms& terms, int i, int j) {
    return i < j ? terms.dens(i, j) : terms.dens(j, i);
}

void check_terms(const ChainHamiltonianTerms& terms) {
    const Index l = terms.size();
    if (terms.hubbard_u.size() != l || terms.hop.rows() != l || terms.hop.cols() != l || terms.dens.rows() != l ||
        terms.dens.cols() != l) {
        throw ContractViolation("chain terms: inconsistent sizes");
    }
}

bool is_diagonal_parity(const Matrix& p) {
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.cols(); ++j) {
            const double expected = i == j ? (p(i, i) > 0 ? 1.0 : -1.0) : 0.0;
            if (std::abs(p(i, j) - expected) > 1e-10) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

ChainHamiltonianTerms chain_terms(const IntegralSet& ints, std::optional<PenaltySpec> penalty) {
    const Index l = ints.size();
    ChainHamiltonianTerms terms;
    terms.onsite = ints.t.diagonal() + ints.v;
    terms.hubbard_u = ints.g.diagonal();
    terms.hop = ints.t.triangularView<Eigen::StrictlyUpper>();
    terms.dens = ints.g.triangularView<Eigen::StrictlyUpper>();
    terms.constant = ints.e_nn;
    if (penalty) {
        const double mu = penalty->mu;
        const double target = penalty->n_target;
        for (Index i = 0; i < l; ++i) {
            terms.onsite[i] += mu - 2.0 * mu * target;
            terms.hubbard_u[i] += 2.0 * mu;
            for (Index j = i + 1; j < l; ++j) {
                terms.dens(i, j) += 2.0 * mu;
            }
        }
        terms.constant += mu * target * target;
        terms.penalty = penalty;
    }
    return terms;
}

ChainHamiltonianTerms without_penalty(const ChainHamiltonianTerms& terms) {
    ChainHamiltonianTerms bare = terms;
    if (!terms.penalty) {
        return bare;
    }
    const double mu = terms.penalty->mu;
    const double target = terms.penalty->n_target;
    for (Index i = 0; i < bare.size(); ++i) {
        bare.onsite[i] -= mu - 2.0 * mu * target;
        bare.hubbard_u[i] -= 2.0 * mu;
        for (Index j = i + 1; j < bare.size(); ++j) {
            bare.dens(i, j) -= 2.0 * mu;
        }
    }
    bare.constant -= mu * target * target;
    bare.penalty.reset();
    return bare;
}

DmrgBlock empty_block(BlockSide side) {
    DmrgBlock b;
    b.side = side;
    b.h = Matrix::Zero(1, 1);
    b.parity = Matrix::Identity(1, 1);
    b.n_total = Matrix::Zero(1, 1);
    b.n2_total = Matrix::Zero(1, 1);
    b.rotation = Matrix::Identity(1, 1);
    return b;
}

DmrgBlock enlarge_block(const DmrgBlock& block, int site, const ChainHamiltonianTerms& terms) {
    check_terms(terms);
    if (site < 0 || site >= terms.size()) {
        throw ContractViolation("enlarge_block: site " + std::to_string(site) + " outside the chain");
    }
    if (!block.sites.empty()) {
        const int edge = block.side == BlockSide::left ? block.sites.back() + 1 : block.sites.front() - 1;
        if (site != edge) {
            throw ContractViolation("enlarge_block: site " + std::to_string(site) + " is not adjacent to the " +
                                    (block.side == BlockSide::left ? "left" : "right") + " block edge");
        }
    }
    const LocalOps& o = local_ops();
    const Index m = block.basis_dim();
    const Matrix im = Matrix::Identity(m, m);
    const Matrix h_site = site_hamiltonian(terms, site);

    // Couplings of the new site to every absorbed site, contracted on the block side.
    Matrix y_up = Matrix::Zero(m, m);
    Matrix y_dn = Matrix::Zero(m, m);
    Matrix w = Matrix::Zero(m, m);
    for (std::size_t k = 0; k < block.sites.size(); ++k) {
        const double t = hop(terms, block.sites[k], site);
        const double g = dens(terms, block.sites[k], site);
        if (t != 0.0) {
            y_up += t * block.cdag_up[k];
            y_dn += t * block.cdag_dn[k];
        }
        if (g != 0.0) {
            w += g * block.n[k];
        }
    }

    DmrgBlock out;
    out.side = block.side;
    if (block.side == BlockSide::left) {
        // basis |a> (x) |s>, block sites precede the new site
        Matrix cross = kron(y_up * block.parity, o.cdag_up.transpose()) +
                       kron(y_dn * block.parity, o.cdag_dn.transpose());
        out.h = kron(block.h, o.identity) + kron(im, h_site) + cross + cross.transpose() + kron(w, o.n);
        for (std::size_t k = 0; k < block.sites.size(); ++k) {
            out.cdag_up.push_back(kron(block.cdag_up[k], o.identity));
            out.cdag_dn.push_back(kron(block.cdag_dn[k], o.identity));
            out.n.push_back(kron(block.n[k], o.identity));
        }
        out.sites = block.sites;
        out.sites.push_back(site);
        out.cdag_up.push_back(kron(block.parity, o.cdag_up));
        out.cdag_dn.push_back(kron(block.parity, o.cdag_dn));
        out.n.push_back(kron(im, o.n));
        out.parity = kron(block.parity, o.parity);
        out.n_total = kron(block.n_total, o.identity) + kron(im, o.n);
        out.n2_total = kron(block.n2_total, o.identity) + 2.0 * kron(block.n_total, o.n) + kron(im, o.n * o.n);
    } else {
        // basis |s> (x) |b>, the new site precedes the block sites
        Matrix cross = kron(o.cdag_up * o.parity, y_up.transpose()) +
                       kron(o.cdag_dn * o.parity, y_dn.transpose());
        out.h = kron(h_site, im) + kron(o.identity, block.h) + cross + cross.transpose() + kron(o.n, w);
        out.sites.push_back(site);
        out.sites.insert(out.sites.end(), block.sites.begin(), block.sites.end());
        out.cdag_up.push_back(kron(o.cdag_up, im));
        out.cdag_dn.push_back(kron(o.cdag_dn, im));
        out.n.push_back(kron(o.n, im));
        for (std::size_t k = 0; k < block.sites.size(); ++k) {
            out.cdag_up.push_back(kron(o.parity, block.cdag_up[k]));
            out.cdag_dn.push_back(kron(o.parity, block.cdag_dn[k]));
            out.n.push_back(kron(o.identity, block.n[k]));
        }
        out.parity = kron(o.parity, block.parity);
        out.n_total = kron(o.n, im) + kron(o.identity, block.n_total);
        out.n2_total = kron(o.n * o.n, im) + 2.0 * kron(o.n, block.n_total) + kron(o.identity, block.n2_total);
    }
    out.h = 0.5 * (out.h + out.h.transpose()).eval();
    out.rotation = Matrix::Identity(out.h.rows(), out.h.rows());
    return out;
}

SuperblockState superblock_ground(const DmrgBlock& sys, const DmrgBlock& env, const ChainHamiltonianTerms& terms,
                                  const SuperblockOptions& opts) {
    check_terms(terms);
    if (sys.side != BlockSide::left || env.side != BlockSide::right) {
        throw ContractViolation("superblock_ground: expects a left system block and a right environment block");
    }
    if (!sys.sites.empty() && !env.sites.empty() && sys.sites.back() >= env.sites.front()) {
        throw ContractViolation("superblock_ground: system sites must precede environment sites");
    }
    const Index dl = sys.basis_dim();
    const Index dr = env.basis_dim();

    Matrix hl = sys.h;
    Matrix hr = env.h;
    double constant = terms.constant;
    // Pairs (x, y) contributing x psi y + x^T psi y^T, and (a, b) contributing a psi b.
    std::vector<std::pair<Matrix, Matrix>> hops;
    std::vector<std::pair<Matrix, Matrix>> densities;

    if (opts.penalty) {
        const double mu = opts.penalty->mu;
        const double target = opts.penalty->n_target;
        hl += mu * (sys.n2_total - 2.0 * target * sys.n_total);
        hr += mu * (env.n2_total - 2.0 * target * env.n_total);
        constant += mu * target * target;
        if (mu != 0.0) {
            densities.emplace_back(2.0 * mu * sys.n_total, env.n_total);
        }
    }

    const bool contract_right = sys.sites.size() <= env.sites.size();
    const std::size_t n_outer = contract_right ? sys.sites.size() : env.sites.size();
    for (std::size_t k = 0; k < n_outer; ++k) {
        Matrix acc_up = Matrix::Zero(contract_right ? dr : dl, contract_right ? dr : dl);
        Matrix acc_dn = acc_up;
        Matrix acc_n = acc_up;
        bool any_hop = false;
        bool any_dens = false;
        const std::size_t n_inner = contract_right ? env.sites.size() : sys.sites.size();
        for (std::size_t q = 0; q < n_inner; ++q) {
            const int i = contract_right ? sys.sites[k] : sys.sites[q];
            const int j = contract_right ? env.sites[q] : env.sites[k];
            const double t = hop(terms, i, j);
            const double g = dens(terms, i, j);
            const DmrgBlock& inner = contract_right ? env : sys;
            if (t != 0.0) {
                any_hop = true;
                acc_up += t * inner.cdag_up[q];
                acc_dn += t * inner.cdag_dn[q];
            }
            if (g != 0.0) {
                any_dens = true;
                acc_n += g * inner.n[q];
            }
        }
        if (contract_right) {
            if (any_hop) {
                hops.emplace_back(sys.cdag_up[k] * sys.parity, acc_up);
                hops.emplace_back(sys.cdag_dn[k] * sys.parity, acc_dn);
            }
            if (any_dens) {
                densities.emplace_back(sys.n[k], acc_n);
            }
        } else {
            if (any_hop) {
                hops.emplace_back(acc_up * sys.parity, env.cdag_up[k]);
                hops.emplace_back(acc_dn * sys.parity, env.cdag_dn[k]);
            }
            if (any_dens) {
                densities.emplace_back(acc_n, env.n[k]);
            }
        }
    }

    auto apply = [&](const Vector& in, Vector& out) {
        Eigen::Map<const Matrix> psi(in.data(), dl, dr);
        Eigen::Map<Matrix> res(out.data(), dl, dr);
        res.noalias() = hl * psi;
        res.noalias() += psi * hr.transpose();
        res += constant * psi;
        Matrix tmp(dl, dr);
        for (const auto& [x, y] : hops) {
            tmp.noalias() = x * psi;
            res.noalias() += tmp * y;
            tmp.noalias() = x.transpose() * psi;
            res.noalias() += tmp * y.transpose();
        }
        for (const auto& [a, b] : densities) {
            tmp.noalias() = a * psi;
            res.noalias() += tmp * b.transpose();
        }
    };

    Vector diag(dl * dr);
    {
        Eigen::Map<Matrix> d(diag.data(), dl, dr);
        for (Index b = 0; b < dr; ++b) {
            d.col(b) = hl.diagonal().array() + hr(b, b) + constant;
        }
        for (const auto& [x, y] : hops) {
            d += 2.0 * x.diagonal() * y.diagonal().transpose();
        }
        for (const auto& [a, b] : densities) {
            d += a.diagonal() * b.diagonal().transpose();
        }
    }

    EigensolverOptions eo;
    eo.n_roots = 1;
    eo.tol = opts.tol;
    eo.max_iter = 2000;
    eo.diagonal = diag;
    if (opts.guess && opts.guess->size() == dl * dr && opts.guess->norm() > 0.0) {
        eo.initial_guess.push_back(*opts.guess);
    }
    const EigenSolveResult solved = lowest_eigs(apply, dl * dr, eo);
    if (!solved.converged) {
        throw ConvergenceError("superblock_ground: eigensolver stalled at residual " +
                               std::to_string(solved.residuals.empty() ? 0.0 : solved.residuals[0]) + " after " +
                               std::to_string(solved.iterations) + " iterations (dim " + std::to_string(dl * dr) +
                               ")");
    }

    SuperblockState state;
    state.energy = solved.pairs.values[0];
    state.iterations = solved.iterations;
    Vector v = solved.pairs.vectors.col(0);
    v.normalize();
    state.psi = Eigen::Map<const Matrix>(v.data(), dl, dr);

    const Matrix& psi = state.psi;
    const Matrix npsi = sys.n_total * psi + psi * env.n_total.transpose();
    state.n_expectation = (psi.array() * npsi.array()).sum();
    const Matrix n2psi = sys.n2_total * psi + psi * env.n2_total.transpose() +
                         2.0 * sys.n_total * psi * env.n_total.transpose();
    const double n2 = (psi.array() * n2psi.array()).sum();
    const double center = opts.penalty ? opts.penalty->n_target : state.n_expectation;
    state.n_variance = n2 - 2.0 * center * state.n_expectation + center * center;
    return state;
}

TruncationResult truncate(const DmrgBlock& block, const Matrix& psi, Index d_max) {
    const bool left = block.side == BlockSide::left;
    const Index dim = block.basis_dim();
    if ((left ? psi.rows() : psi.cols()) != dim) {
        throw ContractViolation("truncate: wavefunction does not match the block dimension");
    }
    if (d_max < 1) {
        throw ContractViolation("truncate: d_max must be positive");
    }
    if (!is_diagonal_parity(block.parity)) {
        throw ContractViolation("truncate: block parity is not diagonal");
    }
    const Matrix rho = left ? Matrix(psi * psi.transpose()) : Matrix(psi.transpose() * psi);
    const double trace = rho.trace();

    struct Candidate {
        double weight;
        int sector;
        Index order;
        Vector vec;
    };
    std::vector<Candidate> candidates;
    for (int sector = 0; sector < 2; ++sector) {
        std::vector<Index> idx;
        for (Index i = 0; i < dim; ++i) {
            if ((block.parity(i, i) > 0) == (sector == 0)) {
                idx.push_back(i);
            }
        }
        if (idx.empty()) {
            continue;
        }
        const auto ns = static_cast<Index>(idx.size());
        Matrix sub(ns, ns);
        for (Index a = 0; a < ns; ++a) {
            for (Index b = 0; b < ns; ++b) {
                sub(a, b) = rho(idx[a], idx[b]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
        for (Index k = ns - 1; k >= 0; --k) {
            Vector full = Vector::Zero(dim);
            for (Index a = 0; a < ns; ++a) {
                full[idx[a]] = es.eigenvectors()(a, k);
            }
            candidates.push_back({es.eigenvalues()[k], sector, ns - 1 - k, std::move(full)});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.weight != b.weight) {
            return a.weight > b.weight;
        }
        if (a.sector != b.sector) {
            return a.sector < b.sector;
        }
        return a.order < b.order;
    });

    const Index keep = std::min(d_max, dim);
    Matrix o(dim, keep);
    Vector signs(keep);
    TruncationResult result;
    double kept = 0.0;
    for (Index k = 0; k < keep; ++k) {
        const Candidate& c = candidates[static_cast<std::size_t>(k)];
        o.col(k) = c.vec;
        signs[k] = c.sector == 0 ? 1.0 : -1.0;
        result.kept_weights.push_back(std::max(0.0, c.weight));
        kept += std::max(0.0, c.weight);
    }
    result.truncation_error = trace > 0.0 ? std::clamp((trace - kept) / trace, 0.0, 1.0) : 0.0;

    DmrgBlock& out = result.block;
    out.side = block.side;
    out.sites = block.sites;
    auto rotate = [&](const Matrix& m) { return Matrix(o.transpose() * m * o); };
    out.h = rotate(block.h);
    out.h = 0.5 * (out.h + out.h.transpose()).eval();
    for (std::size_t k = 0; k < block.sites.size(); ++k) {
        out.cdag_up.push_back(rotate(block.cdag_up[k]));
        out.cdag_dn.push_back(rotate(block.cdag_dn[k]));
        out.n.push_back(rotate(block.n[k]));
    }
    out.parity = signs.asDiagonal();
    out.n_total = rotate(block.n_total);
    out.n2_total = rotate(block.n2_total);
    out.rotation = o;
    return result;
}

namespace {

// Guess for the superblock one step to the right after truncating the left enlarged block.
Vector shift_right(const Matrix& psi, const Matrix& o_left, const Matrix& u_right_next) {
    const Matrix phi = o_left.transpose() * psi;  // k x (4 m_r)
    const Index k = phi.rows();
    const Index mr = phi.cols() / 4;
    Matrix z(4 * k, mr);
    for (Index a = 0; a < k; ++a) {
        for (Index s = 0; s < 4; ++s) {
            z.row(a * 4 + s) = phi.block(a, s * mr, 1, mr);
        }
    }
    const Matrix next = z * u_right_next.transpose();
    return Eigen::Map<const Vector>(next.data(), next.size());
}

// Guess for the superblock one step to the left after truncating the right enlarged block.
Vector shift_left(const Matrix& psi, const Matrix& o_right, const Matrix& u_left_prev) {
    const Matrix phi = psi * o_right;  // (4 m_l) x k
    const Index k = phi.cols();
    const Index ml = phi.rows() / 4;
    Matrix z(ml, 4 * k);
    for (Index a = 0; a < ml; ++a) {
        for (Index s = 0; s < 4; ++s) {
            z.block(a, s * k, 1, k) = phi.row(a * 4 + s);
        }
    }
    const Matrix next = u_left_prev * z;
    return Eigen::Map<const Vector>(next.data(), next.size());
}

} // namespace

DmrgResult dmrg_run(const ChainHamiltonianTerms& terms, const DmrgConfig& config) {
    check_terms(terms);
    const int l = static_cast<int>(terms.size());
    if (l < 4 || l % 2 != 0) {
        throw ContractViolation("dmrg_run: chain length " + std::to_string(l) + " must be even and at least 4");
    }
    if (config.d_schedule.empty()) {
        throw ContractViolation("dmrg_run: empty d_schedule");
    }
    for (std::size_t k = 0; k < config.d_schedule.size(); ++k) {
        if (config.d_schedule[k] < 1 || (k > 0 && config.d_schedule[k] < config.d_schedule[k - 1])) {
            throw ContractViolation("dmrg_run: d_schedule must be positive and non-decreasing");
        }
    }
    if (config.n_sweeps < 0 || config.mu < 0.0) {
        throw ContractViolation("dmrg_run: negative sweep count or penalty");
    }

    const ChainHamiltonianTerms bare = without_penalty(terms);
    const auto bond_dim = [&](int sweep) {
        return config.d_schedule[std::min<std::size_t>(static_cast<std::size_t>(sweep), config.d_schedule.size() - 1)];
    };

    std::vector<DmrgBlock> left(static_cast<std::size_t>(l + 1));
    std::vector<DmrgBlock> right(static_cast<std::size_t>(l + 1));
    left[0] = empty_block(BlockSide::left);
    right[0] = empty_block(BlockSide::right);

    DmrgResult result;
    result.energy = std::numeric_limits<double>::infinity();
    result.d_used = bond_dim(config.n_sweeps);
    const PenaltySpec full_penalty{config.mu, static_cast<double>(config.n_target)};

    auto record = [&](const SuperblockState& st) {
        if (st.energy < result.energy) {
            result.energy = st.energy;
            result.n_expectation = st.n_expectation;
            result.n_variance = st.n_variance;
        }
    };

    // Warmup: grow both ends; the penalty target follows the share of sites present.
    Matrix psi;
    const Index d0 = bond_dim(0);
    for (int k = 0; k < l / 2; ++k) {
        const DmrgBlock lbig = enlarge_block(left[static_cast<std::size_t>(k)], k, bare);
        const DmrgBlock rbig = enlarge_block(right[static_cast<std::size_t>(k)], l - 1 - k, bare);
        SuperblockOptions so;
        so.tol = config.lanczos_tol;
        so.penalty = PenaltySpec{config.mu, config.n_target * static_cast<double>(2 * k + 2) / l};
        const SuperblockState st = superblock_ground(lbig, rbig, bare, so);
        if (k == l / 2 - 1) {
            record(st);
        }
        psi = st.psi;
        TruncationResult tl = truncate(lbig, st.psi, d0);
        TruncationResult tr = truncate(rbig, st.psi, d0);
        result.truncation_errors.push_back(tl.truncation_error);
        result.truncation_errors.push_back(tr.truncation_error);
        left[static_cast<std::size_t>(k + 1)] = std::move(tl.block);
        right[static_cast<std::size_t>(k + 1)] = std::move(tr.block);
    }

    // Sweeps. Half-sweep 0 runs from the centre to the right end; afterwards each sweep is a
    // right-to-left pass followed by a left-to-right pass.
    Vector guess = Eigen::Map<const Vector>(psi.data(), psi.size());
    int pos = l / 2 - 1;
    double previous_sweep = std::numeric_limits<double>::infinity();
    const int total_half = 1 + 2 * config.n_sweeps;
    for (int half = 0; half < total_half; ++half) {
        const bool forward = half % 2 == 0;
        const int sweep = half == 0 ? 0 : (half + 1) / 2 - 1;
        const Index d = bond_dim(half == 0 ? 0 : sweep);
        double half_min = std::numeric_limits<double>::infinity();
        const int last = forward ? l - 3 : 1;
        while (true) {
            const auto li = static_cast<std::size_t>(pos);
            const auto ri = static_cast<std::size_t>(l - pos - 2);
            const DmrgBlock lbig = enlarge_block(left[li], pos, bare);
            const DmrgBlock rbig = enlarge_block(right[ri], pos + 1, bare);
            SuperblockOptions so;
            so.tol = config.lanczos_tol;
            so.penalty = full_penalty;
            so.guess = guess;
            const SuperblockState st = superblock_ground(lbig, rbig, bare, so);
            record(st);
            half_min = std::min(half_min, st.energy);
            const bool at_end = pos == last;
            if (forward) {
                TruncationResult tl = truncate(lbig, st.psi, d);
                result.truncation_errors.push_back(tl.truncation_error);
                if (!at_end) {
                    guess = shift_right(st.psi, tl.block.rotation, right[ri].rotation);
                }
                left[li + 1] = std::move(tl.block);
            } else {
                TruncationResult tr = truncate(rbig, st.psi, d);
                result.truncation_errors.push_back(tr.truncation_error);
                if (!at_end) {
                    guess = shift_left(st.psi, tr.block.rotation, left[li].rotation);
                }
                right[ri + 1] = std::move(tr.block);
            }
            if (at_end) {
                guess = Eigen::Map<const Vector>(st.psi.data(), st.psi.size());
                break;
            }
            pos += forward ? 1 : -1;
        }
        result.sweep_energies.push_back(half_min);
        result.half_sweeps = half + 1;
        if (half > 0 && forward) {
            const double sweep_energy = std::min(result.sweep_energies[result.sweep_energies.size() - 2], half_min);
            result.completed_sweep_energies.push_back(sweep_energy);
            if (std::abs(previous_sweep - sweep_energy) < config.early_stop) {
                break;
            }
            previous_sweep = sweep_energy;
        }
    }
    result.number_flag = std::abs(result.n_expectation - config.n_target) > 0.01;
    return result;
}

} // namespace dvrqc
