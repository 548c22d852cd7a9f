#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrot/factor.hpp"

#include <functional>
#include <random>
#include <set>

using namespace qrot;

namespace {

std::vector<std::string> names(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
    return v;
}

Angle random_angle(std::mt19937& rng) {
    static const Angle pool[] = {Angle(0, 1),  Angle(1, 4),  Angle(-1, 4),
                                 Angle(1, 2),  Angle(-1, 2), Angle(1, 1)};
    return pool[rng() % 6];
}

std::vector<Angle> toffoli4_table() {
    std::vector<Angle> t(16);
    for (std::uint32_t u = 0; u < 16; ++u)
        t[u] = (((u >> 3) & (u >> 2) & (u >> 1) & 1) ^ (u & 1)) ? Angle::pi() : Angle::zero();
    return t;
}

void collect_support(const FactoredForm& ff, std::set<int>& out) {
    auto flat = ff.flatten();
    for (const auto& [v, a] : flat.leaf->terms) out.insert(v);
    for (const auto& [c, g] : flat.spine) collect_support(*c, out);
}

// run factor() while asserting the bi-decomposition guarantees at every step
FactoredForm checked_factor(Manager& m, const Diagram& d) {
    if (auto cas = m.to_cascade(d)) return FactoredForm::make_leaf(std::move(*cas));
    int vk = *m.lowest_rnonlinear(d);
    int deg_before = m.r_degree(d, vk);
    BiDecomposition bd = bi_decompose(m, d);
    REQUIRE(bd.vk == vk);
    // recomposition, exact on handles
    REQUIRE(m.apply(bd.g1, bd.gamma, bd.h) == d);
    // g1 is Boolean over v1..vk and vk is r-linear in it
    REQUIRE(m.is_boolean(bd.g1));
    for (int v = vk + 1; v < m.var_count(); ++v)
        REQUIRE(m.count_nodes_with_var(bd.g1, v) == std::pair<int, bool>{0, true});
    REQUIRE(m.r_degree(bd.g1, vk) == 0);
    // later variables stay r-linear in h
    for (int v = vk + 1; v < m.var_count(); ++v) REQUIRE(m.r_degree(bd.h, v) == 0);
    // strict descent at the pivot
    REQUIRE(m.r_degree(bd.h, vk) <= deg_before - 1);
    return FactoredForm::make_bi(checked_factor(m, bd.g1), bd.gamma, checked_factor(m, bd.h));
}

}  // namespace

TEST_CASE("bi_decompose on the 4-input Toffoli output") {
    Manager m(names(4));
    Diagram s = m.from_table(toffoli4_table());
    BiDecomposition bd = bi_decompose(m, s);
    CHECK(bd.vk == 2);
    CHECK(bd.alpha1 == Angle::pi());
    CHECK(bd.alpha2 == Angle::zero());
    CHECK(bd.gamma == Angle(-1, 2));
    // g1 is the 3-input Toffoli output ab ^ c
    std::vector<Angle> g1t(16);
    for (std::uint32_t u = 0; u < 16; ++u)
        g1t[u] = ((((u >> 3) & (u >> 2)) ^ (u >> 1)) & 1) ? Angle::pi() : Angle::zero();
    CHECK(bd.g1 == m.from_table(g1t));

    // next level: gamma2 = -pi/4
    BiDecomposition bd2 = bi_decompose(m, bd.h);
    CHECK(bd2.vk == 1);
    CHECK(bd2.gamma == Angle(-1, 4));
}

TEST_CASE("bi_decompose on the 2-to-1 mux") {
    Manager m({"s", "x1", "x2"});
    std::vector<Angle> mux(8);
    for (std::uint32_t u = 0; u < 8; ++u)
        mux[u] = ((u >> 2) & 1 ? (u >> 1) & 1 : u & 1) ? Angle::pi() : Angle::zero();
    Diagram f = m.from_table(mux);

    BiDecomposition bd = bi_decompose(m, f);
    CHECK(bd.vk == 2);
    CHECK(bd.gamma == Angle(1, 2));
    // g1 = s Rx(pi) x2
    std::vector<Angle> g1t(8);
    for (std::uint32_t u = 0; u < 8; ++u)
        g1t[u] = (((u >> 2) ^ u) & 1) ? Angle::pi() : Angle::zero();
    CHECK(bd.g1 == m.from_table(g1t));

    // h = g2 Rx(-pi/2) h1 with h1 = x1 Rx(pi/2) [x2 Rx(pi/2) 0]
    BiDecomposition bd2 = bi_decompose(m, bd.h);
    CHECK(bd2.gamma == Angle(-1, 2));
    std::vector<Angle> g2t(8);
    for (std::uint32_t u = 0; u < 8; ++u)
        g2t[u] = (((u >> 2) ^ (u >> 1)) & 1) ? Angle::pi() : Angle::zero();
    CHECK(bd2.g1 == m.from_table(g2t));
    auto h1 = m.to_cascade(bd2.h);
    REQUIRE(h1.has_value());
    CHECK(h1->prefix == Angle::zero());
    REQUIRE(h1->terms.size() == 2);
    CHECK(h1->terms[0] == std::pair<int, Angle>{1, Angle(1, 2)});
    CHECK(h1->terms[1] == std::pair<int, Angle>{2, Angle(1, 2)});
}

TEST_CASE("bi_decompose rejects chains") {
    Manager m(names(2));
    Diagram x = m.var_diagram(0);
    CHECK_THROWS_AS(bi_decompose(m, x), DiagramError);
}

TEST_CASE("factor: full-adder carry") {
    Manager m({"x1", "x2", "x3"});
    std::vector<Angle> carry(8);
    for (std::uint32_t u = 0; u < 8; ++u) {
        int x1 = (u >> 2) & 1, x2 = (u >> 1) & 1, x3 = u & 1;
        carry[u] = ((x1 & x2) | (x1 & x3) | (x2 & x3)) ? Angle::pi() : Angle::zero();
    }
    Diagram c = m.from_table(carry);
    FactoredForm ff = factor(m, c);
    REQUIRE_FALSE(ff.is_leaf());
    CHECK(ff.gamma() == Angle(-1, 2));
    // control is the sum chain x1 Rx(pi) x2 Rx(pi) x3
    REQUIRE(ff.control().is_leaf());
    const CascadeExpr& g1 = ff.control().cascade();
    REQUIRE(g1.terms.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(g1.terms[i].second == Angle::pi());
    // rest is the chain with all pi/2 terms
    REQUIRE(ff.rest().is_leaf());
    const CascadeExpr& h = ff.rest().cascade();
    REQUIRE(h.terms.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(h.terms[i].second == Angle(1, 2));
}

TEST_CASE("factor: 2-qubit adder s1 reproduces the published shape") {
    // s1 = a0 b0 ^ a1 ^ b1 over a0 < b0 < a1 < b1
    Manager m({"a0", "b0", "a1", "b1"});
    std::vector<Angle> t(16);
    for (std::uint32_t u = 0; u < 16; ++u) {
        int a0 = (u >> 3) & 1, b0 = (u >> 2) & 1, a1 = (u >> 1) & 1, b1 = u & 1;
        t[u] = ((a0 & b0) ^ a1 ^ b1) ? Angle::pi() : Angle::zero();
    }
    FactoredForm ff = factor(m, m.from_table(t));
    REQUIRE_FALSE(ff.is_leaf());
    CHECK(ff.gamma() == Angle(-1, 2));
    // g1 = s0 = a0 Rx(pi) b0
    REQUIRE(ff.control().is_leaf());
    const CascadeExpr& g1 = ff.control().cascade();
    REQUIRE(g1.terms.size() == 2);
    CHECK(g1.terms[0] == std::pair<int, Angle>{0, Angle::pi()});
    CHECK(g1.terms[1] == std::pair<int, Angle>{1, Angle::pi()});
    // h1 = a0 Rx(pi/2) (b0 Rx(pi/2) (a1 Rx(pi) (b1 Rx(pi) 0)))
    REQUIRE(ff.rest().is_leaf());
    const CascadeExpr& h1 = ff.rest().cascade();
    REQUIRE(h1.terms.size() == 4);
    CHECK(h1.terms[0].second == Angle(1, 2));
    CHECK(h1.terms[1].second == Angle(1, 2));
    CHECK(h1.terms[2].second == Angle::pi());
    CHECK(h1.terms[3].second == Angle::pi());
}

TEST_CASE("factor: constant") {
    Manager m(names(2));
    FactoredForm ff = factor(m, m.terminal());
    REQUIRE(ff.is_leaf());
    CHECK(ff.cascade().terms.empty());
    CHECK(ff.cascade().prefix == Angle::zero());
}

TEST_CASE("eval_form basics") {
    Manager m(names(1));
    CascadeExpr cas;
    cas.terms = {{0, Angle::pi()}};
    FactoredForm leaf = FactoredForm::make_leaf(cas);
    CHECK(eval_form(leaf, 1, 1) == Angle::pi());
    CHECK(eval_form(leaf, 0, 1) == Angle::zero());
}

TEST_CASE("round trip: eval_form(factor(d)) = eval(d) on random tables") {
    std::mt19937 rng(91);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 3);
        Manager m(names(n));
        size_t rows = size_t{1} << n;
        std::vector<Angle> t(rows);
        bool boolean_case = iter % 2 == 0;
        for (auto& a : t)
            a = boolean_case ? ((rng() % 2) ? Angle::pi() : Angle::zero()) : random_angle(rng);
        Diagram d = m.from_table(t);
        FactoredForm ff = checked_factor(m, d);
        for (std::uint32_t u = 0; u < rows; ++u) CHECK(eval_form(ff, u, n) == t[u]);
        CHECK(form_diagram(m, ff) == d);

        // every control is Boolean
        std::function<void(const FactoredForm&)> check_controls = [&](const FactoredForm& f) {
            if (f.is_leaf()) return;
            CHECK(m.is_boolean(form_diagram(m, f.control())));
            check_controls(f.control());
            check_controls(f.rest());
        };
        check_controls(ff);
    }
}

TEST_CASE("worked mux truth values through the factored form") {
    Manager m({"s", "x1", "x2"});
    std::vector<Angle> mux(8);
    for (std::uint32_t u = 0; u < 8; ++u)
        mux[u] = ((u >> 2) & 1 ? (u >> 1) & 1 : u & 1) ? Angle::pi() : Angle::zero();
    FactoredForm ff = factor(m, m.from_table(mux));
    CHECK(eval_form(ff, 0b110, 3) == Angle::pi());  // s=1, x1=1, x2=0
    CHECK(eval_form(ff, 0b100, 3) == Angle::zero());
}

TEST_CASE("4-input Toffoli eval and printed form") {
    Manager m(names(4));
    FactoredForm ff = factor(m, m.from_table(toffoli4_table()));
    CHECK(eval_form(ff, 0b1110, 4) == Angle::pi());
    REQUIRE_FALSE(ff.is_leaf());
    CHECK(ff.gamma() == Angle(-1, 2));
    REQUIRE_FALSE(ff.rest().is_leaf());
    CHECK(ff.rest().gamma() == Angle(-1, 4));
    std::string printed = form_str(m, ff);
    CHECK(printed.find("Rx(-1/2)") != std::string::npos);
    CHECK(printed.find("Rx(-1/4)") != std::string::npos);
}

TEST_CASE("printer bracket notation") {
    Manager m(names(2));
    Diagram q1 = m.apply(m.var_diagram(0), Angle::pi(), m.var_diagram(1));
    FactoredForm ff = factor(m, q1);
    CHECK(form_str(m, ff) == "a Rx(1)[b Rx(1) 0]");
    FactoredForm rot = factor(m, m.rotate(q1, Angle(1, 2)));
    CHECK(form_str(m, rot) == "Rx(1/2)[a Rx(1)[b Rx(1) 0]]");
}
