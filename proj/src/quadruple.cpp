#include "alcove/quadruple.hpp"

namespace alcove {

namespace {
Vec nabla_A_by_formula(const ConnectionQuadruple& q, const Vec& u, const Vec& a);
}

Vec Tensor3::apply(const Vec& dir, const Vec& arg) const {
    require(int(dir.size()) == d0_ && int(arg.size()) == d1_, "Tensor3::apply: shape mismatch");
    Vec r(d2_);
    for (int i = 0; i < d0_; ++i) {
        if (dir[i] == 0) continue;
        for (int j = 0; j < d1_; ++j) {
            if (arg[j] == 0) continue;
            for (int k = 0; k < d2_; ++k)
                if (at(i, j, k) != 0) r[k] += dir[i] * arg[j] * at(i, j, k);
        }
    }
    return r;
}

bool Tensor3::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

QuadrupleFreedom QuadrupleFreedom::zero(const InvariantAlgebroid& g,
                                        const AtiyahSequenceData& seq) {
    QuadrupleFreedom f;
    f.tau_shift = Mat(seq.dK(), seq.dF());
    f.j_shift = Mat(seq.dF(), seq.dB());
    f.nablaK_B = Tensor3(seq.dB(), seq.dK(), seq.dK());
    f.nablaF_sym = Tensor3(seq.dF(), seq.dF(), seq.dF());
    f.nablaM_BB = Tensor3(seq.dB(), seq.dB(), g.n());
    return f;
}

QuadrupleFreedom QuadrupleFreedom::random(const InvariantAlgebroid& g,
                                          const AtiyahSequenceData& seq, std::uint64_t seed) {
    QuadrupleFreedom f = zero(g, seq);
    RatRng rng(seed);
    for (int i = 0; i < seq.dK(); ++i)
        for (int j = 0; j < seq.dF(); ++j) f.tau_shift.at(i, j) = rng.small(2);
    for (int i = 0; i < seq.dF(); ++i)
        for (int j = 0; j < seq.dB(); ++j) f.j_shift.at(i, j) = rng.small(2);
    for (int b = 0; b < seq.dB(); ++b)
        for (int i = 0; i < seq.dK(); ++i)
            for (int k = 0; k < seq.dK(); ++k) f.nablaK_B.at(b, i, k) = rng.small(2);
    for (int u = 0; u < seq.dF(); ++u)
        for (int v = u; v < seq.dF(); ++v)
            for (int k = 0; k < seq.dF(); ++k) {
                Rational x = rng.small(2);
                f.nablaF_sym.at(u, v, k) = x;
                f.nablaF_sym.at(v, u, k) = x;
            }
    for (int b = 0; b < seq.dB(); ++b)
        for (int c = 0; c < seq.dB(); ++c)
            for (int k = 0; k < g.n(); ++k) f.nablaM_BB.at(b, c, k) = rng.small(2);
    return f;
}

ConnectionQuadruple make_quadruple(const InvariantAlgebroid& g, const AtiyahSequenceData& seq,
                                   const QuadrupleFreedom& free) {
    ConnectionQuadruple q;
    q.g = &g;
    q.seq = seq;
    const int m = g.m(), n = g.n();
    const int dK = seq.dK(), dF = seq.dF(), dB = seq.dB();

    q.tau = Mat(m, dF);
    for (int r = 0; r < dF; ++r) {
        q.tau.at(seq.pivot_columns[r], r) = 1;
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < dK; ++l)
                q.tau.at(i, r) += seq.K_basis[l][i] * free.tau_shift.at(l, r);
    }
    q.j = seq.j0;
    for (int b = 0; b < dB; ++b)
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < dF; ++r) q.j.at(i, b) += seq.F_basis[r][i] * free.j_shift.at(r, b);

    // Projections induced by this splitting pair.
    Mat id_m = Mat::identity(m), id_n = Mat::identity(n);
    q.prK = seq.pr_K * (id_m - q.tau * (seq.pr_F * g.anchor));
    q.prF = seq.pr_F * (id_n - q.j * seq.pr_B);

    auto tau_col = [&](int r) {
        Vec v(m);
        for (int i = 0; i < m; ++i) v[i] = q.tau.at(i, r);
        return v;
    };
    auto j_col = [&](int b) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = q.j.at(i, b);
        return v;
    };
    auto k_vec = [&](int l) { return seq.K_basis[l]; };
    auto f_vec = [&](int r) { return seq.F_basis[r]; };

    // nablaK: forced on F-directions, free on j(B)-directions.
    q.nablaK = Tensor3(n, dK, dK);
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        Vec uF = mat_apply(q.prF, e);
        Vec uB = mat_apply(seq.pr_B, e);
        for (int l = 0; l < dK; ++l) {
            Vec forced = mat_apply(seq.pr_K, g.fiber.apply(mat_apply(q.tau, uF), k_vec(l)));
            for (int k = 0; k < dK; ++k) {
                q.nablaK.at(i, l, k) = forced[k];
                for (int b = 0; b < dB; ++b)
                    q.nablaK.at(i, l, k) += uB[b] * free.nablaK_B.at(b, l, k);
            }
        }
    }

    // nablaF: torsion-free half-bracket plus free symmetric part on F x F,
    // forced Bott-type values on j(B)-directions.
    q.nablaF = Tensor3(n, dF, dF);
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        Vec uF = mat_apply(q.prF, e);
        Vec uB = mat_apply(seq.pr_B, e);
        for (int r = 0; r < dF; ++r) {
            Vec val(dF);
            for (int s = 0; s < dF; ++s) {
                if (uF[s] == 0) continue;
                Vec br = mat_apply(seq.pr_F, g.tangent.bracket.apply(f_vec(s), f_vec(r)));
                for (int k = 0; k < dF; ++k)
                    val[k] += uF[s] * (br[k] / 2 + free.nablaF_sym.at(s, r, k));
            }
            for (int b = 0; b < dB; ++b) {
                if (uB[b] == 0) continue;
                Vec br = mat_apply(q.prF, g.tangent.bracket.apply(j_col(b), f_vec(r)));
                for (int k = 0; k < dF; ++k) val[k] += uB[b] * br[k];
            }
            for (int k = 0; k < dF; ++k) q.nablaF.at(i, r, k) = val[k];
        }
    }

    // Rtau(u, v) = [tau u, tau v]_g - tau([u, v]).
    q.Rtau = Tensor3(dF, dF, dK);
    for (int r = 0; r < dF; ++r)
        for (int s = 0; s < dF; ++s) {
            Vec br_g = g.fiber.apply(tau_col(r), tau_col(s));
            Vec br_f = mat_apply(seq.pr_F, g.tangent.bracket.apply(f_vec(r), f_vec(s)));
            Vec diff = vec_sub(br_g, mat_apply(q.tau, br_f));
            Vec coords = mat_apply(seq.pr_K, diff);
            for (int k = 0; k < dK; ++k) q.Rtau.at(r, s, k) = coords[k];
        }

    // nablaM: nablaM_u v_F = nablaF_u v_F; nablaM_{u_F} j(b) = j(Bott);
    // free on (j(B), j(B)).
    q.nablaM = Tensor3(n, n, n);
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        Vec uF = mat_apply(q.prF, e);
        Vec uB = mat_apply(seq.pr_B, e);
        for (int jj = 0; jj < n; ++jj) {
            Vec ej(n);
            ej[jj] = 1;
            Vec vF = mat_apply(q.prF, ej);
            Vec vB = mat_apply(seq.pr_B, ej);
            Vec val(n);
            // F-part of the argument.
            Vec nf = q.nablaF.apply(e, vF);
            for (int r = 0; r < dF; ++r)
                if (nf[r] != 0) val = vec_add(val, vec_scale(nf[r], f_vec(r)));
            // j(B)-part of the argument.
            for (int b = 0; b < dB; ++b) {
                if (vB[b] == 0) continue;
                for (int r = 0; r < dF; ++r) {
                    if (uF[r] == 0) continue;
                    Vec bott = mat_apply(seq.pr_B, g.tangent.bracket.apply(f_vec(r), j_col(b)));
                    val = vec_add(val, vec_scale(uF[r] * vB[b], mat_apply(q.j, bott)));
                }
                for (int c = 0; c < dB; ++c) {
                    if (uB[c] == 0) continue;
                    for (int k = 0; k < n; ++k)
                        val[k] += uB[c] * vB[b] * free.nablaM_BB.at(c, b, k);
                }
            }
            for (int k = 0; k < n; ++k) q.nablaM.at(i, jj, k) = val[k];
        }
    }

    // nablaB = pr_B . nablaM . j.
    q.nablaB = Tensor3(n, dB, dB);
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        for (int b = 0; b < dB; ++b) {
            Vec v = mat_apply(seq.pr_B, q.nablaM.apply(e, j_col(b)));
            for (int k = 0; k < dB; ++k) q.nablaB.at(i, b, k) = v[k];
        }
    }

    // nablaA via the three-term formula.
    q.nablaA = Tensor3(n, m, m);
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        for (int a = 0; a < m; ++a) {
            Vec ea(m);
            ea[a] = 1;
            Vec v = nabla_A_by_formula(q, e, ea);
            for (int k = 0; k < m; ++k) q.nablaA.at(i, a, k) = v[k];
        }
    }
    return q;
}

namespace {
Vec nabla_A_by_formula(const ConnectionQuadruple& q, const Vec& u, const Vec& a) {
    Vec aK = q.pr_K(a);
    Vec aF = mat_apply(q.seq.pr_F, q.rho(a));  // rho(a) lies in F
    Vec uF = q.pr_F(u);
    Vec term1 = mat_apply(q.seq.K_incl, q.nablaK.apply(u, aK));
    Vec term2 = mat_apply(q.tau, q.nablaF.apply(u, aF));
    Vec term3 = mat_apply(q.seq.K_incl, q.Rtau.apply(uF, aF));
    return vec_add(vec_add(term1, term2), term3);
}
}  // namespace

Vec nabla_A(const ConnectionQuadruple& q, const Vec& u, const Vec& a) {
    return q.nablaA.apply(u, a);
}

ConnectionQuadruple default_quadruple(const InvariantAlgebroid& g,
                                      const AtiyahSequenceData& seq) {
    return make_quadruple(g, seq, QuadrupleFreedom::zero(g, seq));
}

ConnectionQuadruple random_quadruple(const InvariantAlgebroid& g, const AtiyahSequenceData& seq,
                                     std::uint64_t seed) {
    return make_quadruple(g, seq, QuadrupleFreedom::random(g, seq, seed));
}

Vec basic_connection_t(const ConnectionQuadruple& q, const Vec& a, const Vec& u) {
    return vec_add(q.rho(q.nablaA.apply(u, a)), q.g->tangent.bracket.apply(q.rho(a), u));
}

Vec basic_connection_g(const ConnectionQuadruple& q, const Vec& a, const Vec& a2) {
    return vec_add(q.nablaA.apply(q.rho(a2), a), q.g->fiber.apply(a, a2));
}

Vec basic_curvature_full(const ConnectionQuadruple& q, const Vec& a, const Vec& a2,
                         const Vec& u) {
    const auto& br = q.g->fiber;
    Vec t1 = q.nablaA.apply(u, br.apply(a, a2));
    Vec t2 = br.apply(q.nablaA.apply(u, a), a2);
    Vec t3 = br.apply(a, q.nablaA.apply(u, a2));
    Vec t4 = q.nablaA.apply(basic_connection_t(q, a2, u), a);
    Vec t5 = q.nablaA.apply(basic_connection_t(q, a, u), a2);
    return vec_add(vec_sub(vec_sub(vec_sub(t1, t2), t3), t4), t5);
}

Vec basic_curvature(const ConnectionQuadruple& q, const Vec& a, const Vec& a2, const Vec& u) {
    Vec v = basic_curvature_full(q, a, a2, u);
    require(vec_is_zero(q.rho(v)),
            "basic_curvature: value lies outside ker rho for this direction");
    return mat_apply(q.seq.pr_K, v);
}

MixedForm omega_tensor(const ConnectionQuadruple& q) {
    Dims d = q.dims();
    MixedForm omega(d, Shape{2, 0, 0, vs_hom_bk()});
    const int m = q.g->m();
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            Vec ea(m), eb(m);
            ea[al] = 1;
            eb[be] = 1;
            for (int b = 0; b < d.b; ++b) {
                Vec jb(q.g->n());
                for (int i = 0; i < q.g->n(); ++i) jb[i] = q.j.at(i, b);
                Vec val = vec_scale(-1, basic_curvature(q, ea, eb, jb));
                for (int k = 0; k < d.k; ++k) omega.at({al, be, k, b}) = val[k];
            }
        }
    return omega;
}

void ConnectionQuadruple::require_valid() const {
    const auto& gg = *g;
    const int m = gg.m(), n = gg.n();
    const int dF = seq.dF(), dB = seq.dB(), dK = seq.dK();

    // rho . tau = id_F (in ambient coordinates on the F-basis).
    for (int r = 0; r < dF; ++r) {
        Vec tr(m);
        for (int i = 0; i < m; ++i) tr[i] = tau.at(i, r);
        require(vec_is_zero(vec_sub(gg.rho(tr), seq.F_basis[r])), "quadruple: rho.tau != id");
    }
    // pr_B . j = id_B.
    for (int b = 0; b < dB; ++b) {
        Vec jb(n);
        for (int i = 0; i < n; ++i) jb[i] = j.at(i, b);
        Vec c = mat_apply(seq.pr_B, jb);
        for (int k = 0; k < dB; ++k)
            require(c[k] == (k == b ? 1 : 0), "quadruple: pr_B.j != id");
    }
    // Forced nablaK on F-directions.
    for (int r = 0; r < dF; ++r)
        for (int l = 0; l < dK; ++l) {
            Vec tr(m);
            for (int i = 0; i < m; ++i) tr[i] = tau.at(i, r);
            Vec want = mat_apply(seq.pr_K, gg.fiber.apply(tr, seq.K_basis[l]));
            Vec got = nablaK.apply(seq.F_basis[r], [&] {
                Vec e(dK);
                e[l] = 1;
                return e;
            }());
            require(vec_is_zero(vec_sub(got, want)), "quadruple: nablaK F-constraint fails");
        }
    // Torsion-freeness of nablaF on F x F.
    for (int r = 0; r < dF; ++r)
        for (int s = 0; s < dF; ++s) {
            Vec er(dF), es(dF);
            er[r] = 1;
            es[s] = 1;
            Vec lhs = vec_sub(nablaF.apply(seq.F_basis[r], es), nablaF.apply(seq.F_basis[s], er));
            Vec rhs = mat_apply(seq.pr_F,
                                gg.tangent.bracket.apply(seq.F_basis[r], seq.F_basis[s]));
            require(vec_is_zero(vec_sub(lhs, rhs)), "quadruple: nablaF torsion fails");
        }
    // Bott constraints on j(B)-directions.
    for (int b = 0; b < dB; ++b) {
        Vec jb(n);
        for (int i = 0; i < n; ++i) jb[i] = j.at(i, b);
        for (int r = 0; r < dF; ++r) {
            Vec er(dF);
            er[r] = 1;
            Vec lhs = nablaF.apply(jb, er);
            Vec rhs = mat_apply(prF, gg.tangent.bracket.apply(jb, seq.F_basis[r]));
            require(vec_is_zero(vec_sub(lhs, rhs)), "quadruple: nablaF Bott constraint fails");
        }
    }
    for (int r = 0; r < dF; ++r)
        for (int b = 0; b < dB; ++b) {
            Vec eb(dB);
            eb[b] = 1;
            Vec jb(n);
            for (int i = 0; i < n; ++i) jb[i] = j.at(i, b);
            Vec lhs = nablaB.apply(seq.F_basis[r], eb);
            Vec rhs = mat_apply(seq.pr_B, gg.tangent.bracket.apply(seq.F_basis[r], jb));
            require(vec_is_zero(vec_sub(lhs, rhs)), "quadruple: nablaB Bott part fails");
        }
    // nablaM constraints.
    for (int r = 0; r < dF; ++r)
        for (int b = 0; b < dB; ++b) {
            Vec jb(n);
            for (int i = 0; i < n; ++i) jb[i] = j.at(i, b);
            Vec lhs = nablaM.apply(seq.F_basis[r], jb);
            Vec bott = mat_apply(seq.pr_B, gg.tangent.bracket.apply(seq.F_basis[r], jb));
            Vec rhs = mat_apply(j, bott);
            require(vec_is_zero(vec_sub(lhs, rhs)), "quadruple: nablaM j(B)-constraint fails");
        }
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < dF; ++r) {
            Vec e(n);
            e[i] = 1;
            Vec er(dF);
            er[r] = 1;
            Vec lhs = nablaM.apply(e, seq.F_basis[r]);
            Vec rhs(n);
            Vec nf = nablaF.apply(e, er);
            for (int k = 0; k < dF; ++k)
                if (nf[k] != 0) rhs = vec_add(rhs, vec_scale(nf[k], seq.F_basis[k]));
            require(vec_is_zero(vec_sub(lhs, rhs)), "quadruple: nablaM F-constraint fails");
        }
}

}  // namespace alcove
