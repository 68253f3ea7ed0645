#include "alcove/catalog.hpp"

namespace alcove {

namespace {
void set_pair(Bracket& b, int i, int j, int k, const Rational& c) {
    b.at(i, j, k) = c;
    b.at(j, i, k) = -c;
}
}  // namespace

Bracket bracket_abelian(int n) { return Bracket(n); }

Bracket bracket_sl2() {
    Bracket b(3);
    set_pair(b, 0, 1, 1, 2);   // [h, e] = 2e
    set_pair(b, 0, 2, 2, -2);  // [h, f] = -2f
    set_pair(b, 1, 2, 0, 1);   // [e, f] = h
    return b;
}

Bracket bracket_borel() {
    Bracket b(2);
    set_pair(b, 0, 1, 1, 2);  // [h, e] = 2e
    return b;
}

Bracket bracket_heis3() {
    Bracket b(3);
    set_pair(b, 0, 1, 2, 1);  // [x, y] = z
    return b;
}

Bracket bracket_aff1() {
    Bracket b(2);
    set_pair(b, 0, 1, 1, 1);  // [a, b] = b
    return b;
}

std::vector<std::string> catalog_names() {
    return {"abelian2",  "sl2-point",         "heis3-point",
            "aff1-point", "borel-sl2",        "product-sl2-borel",
            "mixed-borel-semidirect"};
}

InvariantAlgebroid catalog_algebroid(const std::string& name) {
    InvariantAlgebroid g;
    g.name = name;
    if (name == "abelian2") {
        g.fiber = bracket_abelian(2);
        g.tangent.bracket = bracket_abelian(1);
        g.anchor = Mat(1, 2);
        return g;
    }
    if (name == "sl2-point") {
        g.fiber = bracket_sl2();
        g.tangent.bracket = bracket_abelian(0);
        g.anchor = Mat(0, 3);
        return g;
    }
    if (name == "heis3-point") {
        g.fiber = bracket_heis3();
        g.tangent.bracket = bracket_abelian(0);
        g.anchor = Mat(0, 3);
        return g;
    }
    if (name == "aff1-point") {
        g.fiber = bracket_aff1();
        g.tangent.bracket = bracket_abelian(0);
        g.anchor = Mat(0, 2);
        return g;
    }
    if (name == "borel-sl2") {
        g.fiber = bracket_borel();
        g.tangent.bracket = bracket_sl2();
        g.anchor = Mat(3, 2);
        g.anchor.at(0, 0) = 1;
        g.anchor.at(1, 1) = 1;
        return g;
    }
    if (name == "product-sl2-borel") {
        // sl2 kernel factor (columns 0..2) times the Borel pair (columns 3, 4).
        Bracket b(5);
        set_pair(b, 0, 1, 1, 2);
        set_pair(b, 0, 2, 2, -2);
        set_pair(b, 1, 2, 0, 1);
        set_pair(b, 3, 4, 4, 2);
        g.fiber = std::move(b);
        g.tangent.bracket = bracket_sl2();
        g.anchor = Mat(3, 5);
        g.anchor.at(0, 3) = 1;
        g.anchor.at(1, 4) = 1;
        return g;
    }
    if (name == "mixed-borel-semidirect") {
        // Borel acting on Q^2 through the standard representation:
        // basis (h, e, w1, w2).
        Bracket b(4);
        set_pair(b, 0, 1, 1, 2);   // [h, e] = 2e
        set_pair(b, 0, 2, 2, 1);   // [h, w1] = w1
        set_pair(b, 0, 3, 3, -1);  // [h, w2] = -w2
        set_pair(b, 1, 3, 2, 1);   // [e, w2] = w1
        g.fiber = std::move(b);
        g.tangent.bracket = bracket_sl2();
        g.anchor = Mat(3, 4);
        g.anchor.at(0, 0) = 1;
        g.anchor.at(1, 1) = 1;
        return g;
    }
    throw error("catalog: unknown example '" + name + "'");
}

}  // namespace alcove
