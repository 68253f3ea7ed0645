#include "alcove/algebroid.hpp"

#include <array>

namespace alcove {

Vec Bracket::apply(const Vec& x, const Vec& y) const {
    require(int(x.size()) == n_ && int(y.size()) == n_, "Bracket::apply: shape mismatch");
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            for (int k = 0; k < n_; ++k)
                if (at(i, j, k) != 0) r[k] += x[i] * y[j] * at(i, j, k);
        }
    }
    return r;
}

bool Bracket::is_antisymmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                if (at(i, j, k) != -at(j, i, k)) return false;
    return true;
}

bool Bracket::jacobi_holds(std::array<int, 3>* witness) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            for (int l = j + 1; l < n_; ++l) {
                Vec ei(n_), ej(n_), el(n_);
                ei[i] = 1;
                ej[j] = 1;
                el[l] = 1;
                Vec s = apply(apply(ei, ej), el);
                s = vec_add(s, apply(apply(ej, el), ei));
                s = vec_add(s, apply(apply(el, ei), ej));
                if (!vec_is_zero(s)) {
                    if (witness) *witness = {i, j, l};
                    return false;
                }
            }
    return true;
}

ValidationReport InvariantAlgebroid::validate() const {
    ValidationReport rep;
    auto add = [&](const std::string& check, const std::string& detail) {
        rep.issues.push_back({check, detail});
    };
    if (!fiber.is_antisymmetric()) add("fiber_antisymmetry", "bracket of g is not antisymmetric");
    if (!tangent.bracket.is_antisymmetric())
        add("tangent_antisymmetry", "bracket of t is not antisymmetric");
    std::array<int, 3> w;
    if (fiber.is_antisymmetric() && !fiber.jacobi_holds(&w))
        add("fiber_jacobi", "Jacobi fails on g basis triple (" + std::to_string(w[0]) + "," +
                                std::to_string(w[1]) + "," + std::to_string(w[2]) + ")");
    if (tangent.bracket.is_antisymmetric() && !tangent.bracket.jacobi_holds(&w))
        add("tangent_jacobi", "Jacobi fails on t basis triple (" + std::to_string(w[0]) + "," +
                                  std::to_string(w[1]) + "," + std::to_string(w[2]) + ")");
    require(anchor.rows() == n() && anchor.cols() == m(), "anchor shape mismatch");
    for (int i = 0; i < m(); ++i)
        for (int j = i + 1; j < m(); ++j) {
            Vec ei(m()), ej(m());
            ei[i] = 1;
            ej[j] = 1;
            Vec lhs = rho(fiber.apply(ei, ej));
            Vec rhs = tangent.bracket.apply(rho(ei), rho(ej));
            if (!vec_is_zero(vec_sub(lhs, rhs))) {
                add("anchor_morphism", "rho([g_" + std::to_string(i) + ", g_" + std::to_string(j) +
                                           "]) != [rho g_" + std::to_string(i) + ", rho g_" +
                                           std::to_string(j) + "]");
            }
        }
    return rep;
}

void InvariantAlgebroid::require_valid() const {
    auto rep = validate();
    if (!rep.ok()) {
        std::string msg = "invalid algebroid";
        if (!name.empty()) msg += " '" + name + "'";
        for (const auto& issue : rep.issues) msg += "; " + issue.check + ": " + issue.detail;
        throw error(msg);
    }
}

AtiyahSequenceData atiyah_sequence(const InvariantAlgebroid& g) {
    g.require_valid();
    AtiyahSequenceData seq;
    const int m = g.m(), n = g.n();

    for (auto& v : kernel_basis(g.anchor)) seq.K_basis.push_back(std::move(v));
    rref(g.anchor, &seq.pivot_columns);
    for (int c : seq.pivot_columns) {
        Vec ec(m);
        ec[c] = 1;
        seq.F_basis.push_back(g.rho(ec));
    }
    const int dK = int(seq.K_basis.size());
    const int dF = int(seq.F_basis.size());
    require(dK + dF == m, "atiyah_sequence: rank-nullity violated");

    // Quotient representatives: coordinates of t outside the pivot rows of F.
    Mat fcols(n, dF);
    for (int j = 0; j < dF; ++j)
        for (int i = 0; i < n; ++i) fcols.at(i, j) = seq.F_basis[j][i];
    std::vector<int> frow_pivots;
    rref(fcols.transpose(), &frow_pivots);
    std::vector<bool> used(n, false);
    for (int p : frow_pivots) used[p] = true;
    for (int i = 0; i < n; ++i)
        if (!used[i]) {
            Vec e(n);
            e[i] = 1;
            seq.B_basis.push_back(e);
        }
    const int dB = int(seq.B_basis.size());
    require(dF + dB == n, "atiyah_sequence: quotient dimension mismatch");

    // j0: coordinate section of pr_B.
    seq.j0 = Mat(n, dB);
    for (int j = 0; j < dB; ++j)
        for (int i = 0; i < n; ++i) seq.j0.at(i, j) = seq.B_basis[j][i];

    // Solve [F | jB] coordinates to get pr_F and pr_B.
    Mat basis_t(n, n);
    for (int j = 0; j < dF; ++j)
        for (int i = 0; i < n; ++i) basis_t.at(i, j) = seq.F_basis[j][i];
    for (int j = 0; j < dB; ++j)
        for (int i = 0; i < n; ++i) basis_t.at(i, dF + j) = seq.B_basis[j][i];
    seq.pr_F = Mat(dF, n);
    seq.pr_B = Mat(dB, n);
    for (int col = 0; col < n; ++col) {
        Vec e(n);
        e[col] = 1;
        auto x = solve_linear(basis_t, e);
        require(x.has_value(), "atiyah_sequence: F + jB does not span t");
        for (int i = 0; i < dF; ++i) seq.pr_F.at(i, col) = (*x)[i];
        for (int i = 0; i < dB; ++i) seq.pr_B.at(i, col) = (*x)[dF + i];
    }

    // pr_K: projection onto K along tau0(F), tau0 the pivot section.
    Mat basis_g(m, m);
    for (int j = 0; j < dK; ++j)
        for (int i = 0; i < m; ++i) basis_g.at(i, j) = seq.K_basis[j][i];
    for (int j = 0; j < dF; ++j)
        for (int i = 0; i < m; ++i) basis_g.at(i, dK + j) = (seq.pivot_columns[j] == i) ? 1 : 0;
    seq.pr_K = Mat(dK, m);
    for (int col = 0; col < m; ++col) {
        Vec e(m);
        e[col] = 1;
        auto x = solve_linear(basis_g, e);
        require(x.has_value(), "atiyah_sequence: K + tau(F) does not span g");
        for (int i = 0; i < dK; ++i) seq.pr_K.at(i, col) = (*x)[i];
    }

    seq.K_incl = Mat(m, dK);
    for (int j = 0; j < dK; ++j)
        for (int i = 0; i < m; ++i) seq.K_incl.at(i, j) = seq.K_basis[j][i];
    seq.F_incl = Mat(n, dF);
    for (int j = 0; j < dF; ++j)
        for (int i = 0; i < n; ++i) seq.F_incl.at(i, j) = seq.F_basis[j][i];

    // K must be an ideal and F a subalgebra.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < dK; ++j) {
            Vec ei(m);
            ei[i] = 1;
            Vec br = g.fiber.apply(ei, seq.K_basis[j]);
            require(vec_is_zero(g.rho(br)), "atiyah_sequence: K is not an ideal");
        }
    for (int i = 0; i < int(seq.F_basis.size()); ++i)
        for (int j = 0; j < int(seq.F_basis.size()); ++j) {
            Vec br = g.tangent.bracket.apply(seq.F_basis[i], seq.F_basis[j]);
            Vec back = mat_apply(seq.F_incl, mat_apply(seq.pr_F, br));
            require(vec_is_zero(vec_sub(br, back)), "atiyah_sequence: F is not a subalgebra");
        }
    return seq;
}

}  // namespace alcove
