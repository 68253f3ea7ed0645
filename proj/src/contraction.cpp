#include "alcove/contraction.hpp"

#include <algorithm>

namespace alcove {

namespace {
int union_min(const CochainComplex& a, const CochainComplex& b) {
    return std::min(a.min_degree(), b.min_degree());
}
int union_max(const CochainComplex& a, const CochainComplex& b) {
    return std::max(a.max_degree(), b.max_degree());
}
}  // namespace

Mat Contraction::phi_at(int k) const {
    auto it = phi.find(k);
    return it != phi.end() ? it->second : Mat(small.dim(k), big.dim(k));
}

Mat Contraction::psi_at(int k) const {
    auto it = psi.find(k);
    return it != psi.end() ? it->second : Mat(big.dim(k), small.dim(k));
}

Mat Contraction::h_at(int k) const {
    auto it = h.find(k);
    return it != h.end() ? it->second : Mat(big.dim(k - 1), big.dim(k));
}

int Contraction::min_degree() const { return union_min(big, small); }
int Contraction::max_degree() const { return union_max(big, small); }

ContractionReport verify_contraction(const Contraction& c) {
    ContractionReport rep;
    auto fail = [&](int k, const std::string& what) {
        rep.failures.push_back(what + " at degree " + std::to_string(k));
    };
    for (int k = c.min_degree() - 1; k <= c.max_degree() + 1; ++k) {
        if (!(c.small.diff(k) * c.phi_at(k) == c.phi_at(k + 1) * c.big.diff(k)))
            fail(k, "phi is not a chain map");
        if (!(c.big.diff(k) * c.psi_at(k) == c.psi_at(k + 1) * c.small.diff(k)))
            fail(k, "psi is not a chain map");
        Mat proj = c.phi_at(k) * c.psi_at(k);
        if (!(proj == Mat::identity(c.small.dim(k)))) fail(k, "phi.psi != id");
        Mat homotopy = c.psi_at(k) * c.phi_at(k);
        Mat rhs = Mat::identity(c.big.dim(k)) + c.big.diff(k - 1) * c.h_at(k) +
                  c.h_at(k + 1) * c.big.diff(k);
        if (!(homotopy == rhs)) fail(k, "psi.phi != id + [d, h]");
        if (!(c.h_at(k - 1) * c.h_at(k)).is_zero()) fail(k, "h.h != 0");
        if (!(c.phi_at(k - 1) * c.h_at(k)).is_zero()) fail(k, "phi.h != 0");
        if (!(c.h_at(k) * c.psi_at(k)).is_zero()) fail(k, "h.psi != 0");
    }
    return rep;
}

Contraction identity_contraction(const CochainComplex& c) {
    Contraction r;
    r.big = c;
    r.small = c;
    for (const auto& [k, lab] : c.labels) {
        r.phi[k] = Mat::identity(int(lab.size()));
        r.psi[k] = Mat::identity(int(lab.size()));
    }
    return r;
}

namespace {

CochainComplex dual_complex(const CochainComplex& c) {
    CochainComplex d;
    for (const auto& [k, lab] : c.labels) {
        std::vector<std::string> dl;
        for (const auto& l : lab) dl.push_back(l + "^");
        d.labels[-k] = std::move(dl);
    }
    for (int k = d.min_degree(); k <= d.max_degree(); ++k) {
        Mat m = c.diff(-k - 1).transpose();
        d.d[k] = (k % 2 == 0) ? m : m * Rational(-1);
    }
    return d;
}

}  // namespace

Contraction dualize_contraction(const Contraction& c) {
    Contraction r;
    r.big = dual_complex(c.big);
    r.small = dual_complex(c.small);
    for (int k = r.min_degree(); k <= r.max_degree(); ++k) {
        r.phi[k] = c.psi_at(-k).transpose();
        r.psi[k] = c.phi_at(-k).transpose();
        Mat hk = c.h_at(-k + 1).transpose();
        r.h[k] = (k % 2 == 0) ? hk * Rational(-1) : hk;
    }
    return r;
}

bool equal_up_to_double_dual(const Contraction& a, const Contraction& b) {
    // The canonical identification negates d and h and fixes phi and psi.
    if (!(a.big.labels.size() == b.big.labels.size())) return false;
    for (int k = a.min_degree() - 1; k <= a.max_degree() + 1; ++k) {
        if (a.big.dim(k) != b.big.dim(k) || a.small.dim(k) != b.small.dim(k)) return false;
        if (!(a.big.diff(k) == b.big.diff(k) * Rational(-1))) return false;
        if (!(a.small.diff(k) == b.small.diff(k) * Rational(-1))) return false;
        if (!(a.phi_at(k) == b.phi_at(k))) return false;
        if (!(a.psi_at(k) == b.psi_at(k))) return false;
        if (!(a.h_at(k) == b.h_at(k) * Rational(-1))) return false;
    }
    return true;
}

int TensorLayout::dim(int k) const {
    auto it = blocks.find(k);
    if (it == blocks.end()) return 0;
    int n = 0;
    for (const auto& b : it->second) n += b.left_dim * b.right_dim;
    return n;
}

CochainComplex tensor_complex(const CochainComplex& a, const CochainComplex& b,
                              TensorLayout* layout) {
    TensorLayout local;
    TensorLayout& lay = layout ? *layout : local;
    for (const auto& [i, la] : a.labels)
        for (const auto& [j, lb] : b.labels) {
            int k = i + j;
            auto& blocks = lay.blocks[k];
            TensorLayout::Block blk;
            blk.left_degree = i;
            blk.right_degree = j;
            blk.left_dim = int(la.size());
            blk.right_dim = int(lb.size());
            blk.offset = 0;
            for (const auto& prev : blocks) blk.offset += prev.left_dim * prev.right_dim;
            blocks.push_back(blk);
        }
    CochainComplex t;
    for (const auto& [k, blocks] : lay.blocks) {
        std::vector<std::string> lab;
        for (const auto& blk : blocks)
            for (int x = 0; x < blk.left_dim; ++x)
                for (int y = 0; y < blk.right_dim; ++y)
                    lab.push_back(a.labels.at(blk.left_degree)[x] + "(x)" +
                                  b.labels.at(blk.right_degree)[y]);
        t.labels[k] = std::move(lab);
    }
    auto block_of = [&](int k, int i) -> const TensorLayout::Block* {
        auto it = lay.blocks.find(k);
        if (it == lay.blocks.end()) return nullptr;
        for (const auto& blk : it->second)
            if (blk.left_degree == i) return &blk;
        return nullptr;
    };
    for (const auto& [k, blocks] : lay.blocks) {
        Mat dk(t.dim(k + 1), t.dim(k));
        for (const auto& blk : blocks) {
            const Mat da = a.diff(blk.left_degree);
            const Mat db = b.diff(blk.right_degree);
            // d_A (x) id into (left+1, right)
            if (const auto* tb = block_of(k + 1, blk.left_degree + 1)) {
                for (int x = 0; x < da.rows(); ++x)
                    for (int xx = 0; xx < da.cols(); ++xx) {
                        if (da.at(x, xx) == 0) continue;
                        for (int y = 0; y < blk.right_dim; ++y)
                            dk.at(tb->offset + x * tb->right_dim + y,
                                  blk.offset + xx * blk.right_dim + y) += da.at(x, xx);
                    }
            }
            // (-1)^i id (x) d_B into (left, right+1)
            if (const auto* tb = block_of(k + 1, blk.left_degree)) {
                Rational sgn = (blk.left_degree % 2 == 0) ? 1 : -1;
                for (int y = 0; y < db.rows(); ++y)
                    for (int yy = 0; yy < db.cols(); ++yy) {
                        if (db.at(y, yy) == 0) continue;
                        for (int x = 0; x < blk.left_dim; ++x)
                            dk.at(tb->offset + x * tb->right_dim + y,
                                  blk.offset + x * blk.right_dim + yy) += sgn * db.at(y, yy);
                    }
            }
        }
        t.d[k] = std::move(dk);
    }
    return t;
}

Contraction tensor_contraction(const Contraction& a, const Contraction& b) {
    Contraction r;
    TensorLayout big_lay, small_lay;
    r.big = tensor_complex(a.big, b.big, &big_lay);
    r.small = tensor_complex(a.small, b.small, &small_lay);

    auto small_block = [&](int k, int i) -> const TensorLayout::Block* {
        auto it = small_lay.blocks.find(k);
        if (it == small_lay.blocks.end()) return nullptr;
        for (const auto& blk : it->second)
            if (blk.left_degree == i) return &blk;
        return nullptr;
    };
    auto big_block = [&](int k, int i) -> const TensorLayout::Block* {
        auto it = big_lay.blocks.find(k);
        if (it == big_lay.blocks.end()) return nullptr;
        for (const auto& blk : it->second)
            if (blk.left_degree == i) return &blk;
        return nullptr;
    };

    auto scatter = [](Mat& target, const TensorLayout::Block& to, const TensorLayout::Block& from,
                      const Mat& left, const Mat& right, const Rational& sgn) {
        for (int x = 0; x < left.rows(); ++x)
            for (int xx = 0; xx < left.cols(); ++xx) {
                if (left.at(x, xx) == 0) continue;
                for (int y = 0; y < right.rows(); ++y)
                    for (int yy = 0; yy < right.cols(); ++yy) {
                        if (right.at(y, yy) == 0) continue;
                        target.at(to.offset + x * to.right_dim + y,
                                  from.offset + xx * from.right_dim + yy) +=
                            sgn * left.at(x, xx) * right.at(y, yy);
                    }
            }
    };

    for (const auto& [k, blocks] : big_lay.blocks) {
        Mat phik(r.small.dim(k), r.big.dim(k));
        Mat hk(r.big.dim(k - 1), r.big.dim(k));
        for (const auto& blk : blocks) {
            int i = blk.left_degree, j = blk.right_degree;
            if (const auto* tb = small_block(k, i))
                scatter(phik, *tb, blk, a.phi_at(i), b.phi_at(j), 1);
            // H = h (x) id + (psi.phi) (x) h, the second with sign (-1)^i.
            if (const auto* tb = big_block(k - 1, i - 1))
                scatter(hk, *tb, blk, a.h_at(i), Mat::identity(b.big.dim(j)), 1);
            if (const auto* tb = big_block(k - 1, i)) {
                Rational sgn = (i % 2 == 0) ? 1 : -1;
                scatter(hk, *tb, blk, a.psi_at(i) * a.phi_at(i), b.h_at(j), sgn);
            }
        }
        r.phi[k] = std::move(phik);
        r.h[k] = std::move(hk);
    }
    for (const auto& [k, blocks] : small_lay.blocks) {
        Mat psik(r.big.dim(k), r.small.dim(k));
        for (const auto& blk : blocks) {
            int i = blk.left_degree, j = blk.right_degree;
            if (const auto* tb = big_block(k, i))
                scatter(psik, *tb, blk, a.psi_at(i), b.psi_at(j), 1);
        }
        r.psi[k] = std::move(psik);
    }
    return r;
}

Mat Perturbation::at(const CochainComplex& big, int k) const {
    auto it = rho.find(k);
    return it != rho.end() ? it->second : Mat(big.dim(k + 1), big.dim(k));
}

Contraction apply_perturbation(const Contraction& c, const Perturbation& rho, int max_iter) {
    // (d + rho)^2 = 0.
    for (int k = c.min_degree() - 1; k <= c.max_degree(); ++k) {
        Mat dk = c.big.diff(k) + rho.at(c.big, k);
        Mat dk1 = c.big.diff(k + 1) + rho.at(c.big, k + 1);
        require((dk1 * dk).is_zero(), "apply_perturbation: (d + rho)^2 != 0");
    }
    // Geometric series of h.rho and rho.h per degree.
    std::map<int, Mat> S, T;  // S = sum (h rho)^j, T = sum (rho h)^j
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        int n = c.big.dim(k);
        Mat hr = c.h_at(k + 1) * rho.at(c.big, k);
        Mat rh = rho.at(c.big, k - 1) * c.h_at(k);
        Mat sk = Mat::identity(n), tk = Mat::identity(n);
        Mat hp = hr, tp = rh;
        int iter = 0;
        while (!hp.is_zero() || !tp.is_zero()) {
            require(++iter <= max_iter, "apply_perturbation: h.rho is not nilpotent within " +
                                            std::to_string(max_iter) + " iterations");
            sk = sk + hp;
            tk = tk + tp;
            hp = hp * hr;
            tp = tp * rh;
        }
        S[k] = std::move(sk);
        T[k] = std::move(tk);
    }
    Contraction out;
    out.big = c.big;
    for (int k = c.min_degree() - 1; k <= c.max_degree(); ++k)
        out.big.d[k] = c.big.diff(k) + rho.at(c.big, k);
    out.small = c.small;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        if (c.big.dim(k) > 0) {
            out.phi[k] = c.phi_at(k) * T.at(k);
            out.psi[k] = S.at(k) * c.psi_at(k);
            out.h[k] = c.h_at(k) * T.at(k);
        }
        // theta = phi . S . rho . psi
        int kt = k + 1;
        Mat theta = (c.big.dim(kt) > 0 ? c.phi_at(kt) * S.at(kt) : c.phi_at(kt)) *
                    rho.at(c.big, k) * c.psi_at(k);
        out.small.d[k] = c.small.diff(k) + theta;
    }
    return out;
}

Vec transfer_cocycle(const Contraction& c, int degree, const Vec& z) {
    require(is_cocycle(c.big, degree, z), "transfer_cocycle: input is not closed");
    Vec out = mat_apply(c.phi_at(degree), z);
    require(is_cocycle(c.small, degree, out), "transfer_cocycle: output is not closed");
    return out;
}

AdjointContraction build_adjoint_contraction(const ConnectionQuadruple& q) {
    AdjointContraction out;
    out.big_rep = adjoint_rep_big(q);
    out.small_rep = adjoint_rep_small(q);

    // Anchor-only differential on the big side, zero on the small side.
    StrandRep delta_rep = out.big_rep;
    for (auto& acts : delta_rep.act)
        for (auto& A : acts) A = Mat(A.rows(), A.cols());
    delta_rep.two_blocks.clear();

    Contraction base;
    base.big = materialize(delta_rep);
    StrandRep zero_small = out.small_rep;
    for (auto& acts : zero_small.act)
        for (auto& A : acts) A = Mat(A.rows(), A.cols());
    zero_small.two_blocks.clear();
    base.small = materialize(zero_small);

    const auto& seq = q.seq;
    const int m = q.g->m(), n = q.g->n();
    // phi = (pr_K, pr_B), psi = (K_incl, j), h = -tau . pr_F on the t-strand.
    std::vector<std::vector<Mat>> phi_blocks(2, std::vector<Mat>(2));
    phi_blocks[0][0] = q.prK;
    phi_blocks[1][1] = seq.pr_B;
    std::vector<std::vector<Mat>> psi_blocks(2, std::vector<Mat>(2));
    psi_blocks[0][0] = seq.K_incl;
    psi_blocks[1][1] = q.j;
    std::vector<std::vector<Mat>> h_blocks(2, std::vector<Mat>(2));
    h_blocks[0][1] = (q.tau * q.prF) * Rational(-1);

    base.phi = fiber_map_matrices(delta_rep, zero_small, phi_blocks, 0);
    base.psi = fiber_map_matrices(zero_small, delta_rep, psi_blocks, 0);
    base.h = fiber_map_matrices(delta_rep, delta_rep, h_blocks, -1);

    auto baserep = verify_contraction(base);
    require(baserep.ok(), "build_adjoint_contraction: base contraction fails: " +
                              (baserep.failures.empty() ? "" : baserep.failures.front()));

    // Perturbation = full differential minus the anchor block.
    CochainComplex full = materialize(out.big_rep);
    Perturbation pert;
    for (int k = full.min_degree(); k <= full.max_degree(); ++k)
        pert.rho[k] = full.diff(k) - base.big.diff(k);

    // The proof's anti-commutation h . pert = -pert . h.
    for (int k = full.min_degree(); k <= full.max_degree(); ++k) {
        Mat lhs = base.h_at(k + 1) * pert.at(base.big, k);
        Mat rhs = pert.at(base.big, k - 1) * base.h_at(k);
        require(lhs == rhs * Rational(-1),
                "build_adjoint_contraction: h does not anticommute with the perturbation");
    }

    int total_dim = 0;
    for (const auto& [k, lab] : full.labels) total_dim += int(lab.size());
    Contraction perturbed = apply_perturbation(base, pert, total_dim + 1);

    // Series collapse: phi, psi, h unchanged.
    for (int k = perturbed.min_degree(); k <= perturbed.max_degree(); ++k) {
        require(perturbed.phi_at(k) == base.phi_at(k),
                "build_adjoint_contraction: phi series did not collapse");
        require(perturbed.psi_at(k) == base.psi_at(k),
                "build_adjoint_contraction: psi series did not collapse");
        require(perturbed.h_at(k) == base.h_at(k),
                "build_adjoint_contraction: h series did not collapse");
    }

    // The transferred small differential must equal d_CE - Omega exactly.
    CochainComplex small_cx = materialize(out.small_rep);
    for (int k = small_cx.min_degree(); k <= small_cx.max_degree(); ++k)
        require(perturbed.small.diff(k) == small_cx.diff(k),
                "build_adjoint_contraction: small differential is not d_CE - Omega at degree " +
                    std::to_string(k));

    out.con = std::move(perturbed);
    out.con.small = std::move(small_cx);
    out.phi_blocks = phi_blocks;
    out.psi_blocks = psi_blocks;
    out.h_blocks = h_blocks;
    return out;
}

namespace {
std::vector<std::vector<Mat>> transpose_blocks(const std::vector<std::vector<Mat>>& blocks) {
    size_t rows = blocks.size(), cols = blocks.empty() ? 0 : blocks[0].size();
    std::vector<std::vector<Mat>> out(cols, std::vector<Mat>(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (blocks[i][j].rows() > 0) out[j][i] = blocks[i][j].transpose();
    return out;
}
}  // namespace

AdjointContraction dualize_bundle_contraction(const AdjointContraction& adj) {
    AdjointContraction out;
    out.big_rep = dualize(adj.big_rep);
    out.small_rep = dualize(adj.small_rep);
    out.phi_blocks = transpose_blocks(adj.psi_blocks);
    out.psi_blocks = transpose_blocks(adj.phi_blocks);
    out.h_blocks = transpose_blocks(adj.h_blocks);
    out.con.big = materialize(out.big_rep);
    out.con.small = materialize(out.small_rep);
    out.con.phi = fiber_map_matrices(out.big_rep, out.small_rep, out.phi_blocks, 0);
    out.con.psi = fiber_map_matrices(out.small_rep, out.big_rep, out.psi_blocks, 0);
    out.con.h = fiber_map_matrices(out.big_rep, out.big_rep, out.h_blocks, -1);
    auto rep = verify_contraction(out.con);
    require(rep.ok(), "dualize_bundle_contraction: axioms fail: " +
                          (rep.failures.empty() ? "" : rep.failures.front()));
    return out;
}

}  // namespace alcove
