#include "qrot/families.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qrot {

// C^m Rx(pi) over vars[0..m-1] with target vars[m], as the recursion
//   C^m = C^{m-1} Rx(-pi/2) [C^{m-2} Rx(-pi/4) [... [cascade]]]
FactoredForm toffoli_form(Manager& mgr, int controls, int target_var) {
    (void)target_var;
    std::function<FactoredForm(int, int)> build = [&](int m, int tgt) -> FactoredForm {
        CascadeExpr leaf;
        leaf.axis = Axis::X;
        if (m == 1) {
            leaf.terms = {{tgt - 1, Angle::pi()}, {tgt, Angle::pi()}};
            return FactoredForm::make_leaf(std::move(leaf));
        }
        // leaf: v0 Rx(pi/2^{m-1}) [v1 Rx(pi/2^{m-1}) [v2 Rx(pi/2^{m-2}) ... [vm Rx(pi) 0]]]
        leaf.terms.emplace_back(tgt - m, Angle::pi_over_pow2(m - 1));
        for (int i = 1; i < m; ++i)
            leaf.terms.emplace_back(tgt - m + i, Angle::pi_over_pow2(m - i));
        leaf.terms.emplace_back(tgt, Angle::pi());
        // wrap inner spine terms first: outermost control is C^{m-1} at -pi/2
        FactoredForm form = FactoredForm::make_leaf(std::move(leaf));
        for (int k = 1; k <= m - 1; ++k) {
            FactoredForm ctrl = build(k, tgt - m + k);
            form = FactoredForm::make_bi(std::move(ctrl), Angle::pi_over_pow2(m - k).negated(),
                                         std::move(form));
        }
        return form;
    };
    return build(controls, controls);
}

Circuit gen_toffoli(int n) {
    if (n < 2) throw FamilyError("toffoli needs at least 2 controls");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("i" + std::to_string(i));
    names.push_back("j");
    Manager mgr(names);
    FactoredForm ff = toffoli_form(mgr, n, n);
    CompileResult res = compile(mgr, ff, CompileOptions{true, true}, "out");
    return std::move(res.circuit);
}

// Ripple-adder gates emitted in a dependency-aware order so the ASAP schedule
// stays inside the published depth figures. Per b line the protocol is: fire
// forward (as the original input), receive rotations, fire backward (as the
// completed sum). Rotations onto one target commute, so any topological order
// of that DAG is functionally identical.
Circuit gen_adder(int n) {
    if (n < 1) throw FamilyError("adder needs at least 1 bit");
    Circuit c;
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = c.add_input("a" + std::to_string(i), true);
        b[i] = c.add_input("b" + std::to_string(i), false);
        c.lines[b[i]].output = "s" + std::to_string(i);
    }
    int carry = c.add_ancilla();
    c.lines[carry].output = "c";

    struct Op {
        Gate g;
        int kind;  // 0 = forward fire, 1 = backward fire
        int ctrl_b = -1;  // b index when the control is a b line
    };
    std::vector<Op> ops;
    auto fwd = [&](int ctrl, int bidx, int l) {
        for (int j = l + 1; j < n; ++j)
            ops.push_back({Gate{Axis::X, Angle::pi_over_pow2(j - l), b[j], ctrl}, 0, bidx});
        ops.push_back({Gate{Axis::X, Angle::pi_over_pow2(n - l), carry, ctrl}, 0, bidx});
    };
    for (int l = n - 1; l >= 0; --l) {
        fwd(b[l], l, l);
        ops.push_back({Gate{Axis::X, Angle::pi(), b[l], a[l]}, 0, -1});
        fwd(a[l], -1, l);
    }
    for (int l = 0; l < n; ++l) {
        for (int j = l + 1; j < n; ++j)
            ops.push_back(
                {Gate{Axis::X, Angle::pi_over_pow2(j - l).negated(), b[j], b[l]}, 1, l});
        ops.push_back({Gate{Axis::X, Angle::pi_over_pow2(n - l).negated(), carry, b[l]}, 1, l});
    }

    // Dependency DAG. For each b line: forward fires < receives < backward fires.
    size_t m = ops.size();
    std::vector<std::vector<size_t>> succ(m);
    std::vector<int> indeg(m, 0);
    auto link = [&](size_t u, size_t v) {
        succ[u].push_back(v);
        ++indeg[v];
    };
    for (int l = 0; l < n; ++l) {
        std::vector<size_t> fires, recvs, bwds;
        for (size_t i = 0; i < m; ++i) {
            if (ops[i].kind == 0 && ops[i].ctrl_b == l) fires.push_back(i);
            if (ops[i].g.target == b[l]) recvs.push_back(i);
            if (ops[i].kind == 1 && ops[i].ctrl_b == l) bwds.push_back(i);
        }
        for (size_t u : fires)
            for (size_t v : recvs) link(u, v);
        for (size_t u : recvs)
            for (size_t v : bwds) link(u, v);
    }

    // Critical-path priorities, then greedy layer packing.
    std::vector<int> prio(m, 1);
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), size_t{0});
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = m; i-- > 0;)
            for (size_t v : succ[i])
                if (prio[v] + 1 > prio[i]) {
                    prio[i] = prio[v] + 1;
                    changed = true;
                }
    }
    std::vector<char> emitted(m, 0);
    std::vector<int> deg = indeg;
    size_t left = m;
    while (left > 0) {
        std::vector<char> busy(c.line_count(), 0);
        std::vector<size_t> ready;
        for (size_t i = 0; i < m; ++i)
            if (!emitted[i] && deg[i] == 0) ready.push_back(i);
        std::stable_sort(ready.begin(), ready.end(),
                         [&](size_t x, size_t y) { return prio[x] > prio[y]; });
        bool any = false;
        for (size_t i : ready) {
            const Gate& g = ops[i].g;
            if (busy[g.target] || (g.control >= 0 && busy[g.control])) continue;
            busy[g.target] = 1;
            if (g.control >= 0) busy[g.control] = 1;
            c.gates.push_back(g);
            emitted[i] = 1;
            --left;
            any = true;
            for (size_t v : succ[i]) --deg[v];
        }
        if (!any) throw FamilyError("internal: adder schedule stalled");
    }
    return c;
}

Circuit gen_mux(int n) {
    if (n < 2 || (n & (n - 1)) != 0) throw FamilyError("mux size must be a power of two >= 2");
    int k = 0;
    while ((1 << k) < n) ++k;

    if (n == 2) {
        // the 2-to-1 circuit is the factored form itself:
        //   f = [s Rx(pi) x2] Rx(pi/2) [[s Rx(pi) x1] Rx(-pi/2) [x1 Rx(pi/2) [x2 Rx(pi/2) 0]]]
        Manager mgr({"s1", "x1", "x2"});
        CascadeExpr leaf;
        leaf.terms = {{1, Angle(1, 2)}, {2, Angle(1, 2)}};
        CascadeExpr g1;
        g1.terms = {{0, Angle::pi()}, {2, Angle::pi()}};
        CascadeExpr g2;
        g2.terms = {{0, Angle::pi()}, {1, Angle::pi()}};
        FactoredForm ff = FactoredForm::make_bi(
            FactoredForm::make_leaf(g1), Angle(1, 2),
            FactoredForm::make_bi(FactoredForm::make_leaf(g2), Angle(-1, 2),
                                  FactoredForm::make_leaf(leaf)));
        return compile(mgr, ff, CompileOptions{false, true}, "f").circuit;
    }

    Circuit c;
    std::vector<int> s(k), x(n);
    for (int i = 1; i <= k; ++i) s[i - 1] = c.add_input("s" + std::to_string(i), false);
    for (int i = 1; i <= n; ++i) x[i - 1] = c.add_input("x" + std::to_string(i), false);
    int anc = c.add_ancilla();
    c.lines[anc].output = "f";

    for (int i = n; i >= 1; --i) c.push(Axis::X, Angle(1, 2), anc, x[i - 1]);
    c.push(Axis::X, Angle(1, 2), anc);

    // multi-control block: the Toffoli construction remapped onto (s..., tgt)
    auto control_block = [&](int tgt) {
        if (k == 1) {
            c.push(Axis::X, Angle::pi(), tgt, s[0]);
            return;
        }
        Circuit t = gen_toffoli(k);
        std::vector<int> map(k + 1);
        for (int i = 0; i < k; ++i) map[i] = s[i];
        map[k] = tgt;
        for (const Gate& g : t.gates)
            c.push(g.axis, g.angle, map[g.target], g.control >= 0 ? map[g.control] : -1);
    };

    // data input x_i selects on pattern ~(i-1); flip select lines between blocks
    int cur = (1 << k) - 1;
    for (int i = 1; i <= n; ++i) {
        int want = ~(i - 1) & ((1 << k) - 1);
        int diff = cur ^ want;
        for (int j = 0; j < k; ++j)
            if ((diff >> (k - 1 - j)) & 1) c.push(Axis::X, Angle::pi(), s[j]);
        cur = want;
        control_block(x[i - 1]);
        c.push(Axis::X, Angle(-1, 2), anc, x[i - 1]);
    }
    return c;
}

Circuit gen_qft(int n) {
    if (n < 1) throw FamilyError("qft needs at least 1 qubit");
    Circuit c;
    for (int i = 1; i <= n; ++i) {
        int l = c.add_input("j" + std::to_string(i), false);
        c.lines[l].output = "q" + std::to_string(i);
    }
    for (int kline = 0; kline < n; ++kline) {
        int r = n - 1 - kline;  // controlled rotations this line still drives
        c.push(Axis::X, Angle(1, 2), kline);
        // head Rz absorbs the -theta/2 bookkeeping of each CRz it controls
        Angle beta = Angle(1, 2);
        for (int m = 1; m <= r; ++m) beta = beta + Angle::pi_over_pow2(m + 1);
        c.push(Axis::Z, beta, kline);
        for (int m = 1; m <= r; ++m)
            c.push(Axis::Z, Angle::pi_over_pow2(m), kline + m, kline);
    }
    return c;
}

CostPrediction predict(const FamilyId& id) {
    long n = id.n;
    switch (id.kind) {
        case FamilyId::Kind::Toffoli:
            if (n < 2) throw FamilyError("toffoli needs at least 2 controls");
            return {2 * n * n - 2 * n + 1, 0, std::nullopt};
        case FamilyId::Kind::Adder: {
            if (n < 1) throw FamilyError("adder needs at least 1 bit");
            // published depth figures for this construction, n = 2..15
            static const int depths[] = {9, 12, 19, 23, 27, 31, 39, 43, 48, 51, 57, 61, 66, 70};
            std::optional<int> d;
            if (n >= 2 && n <= 15) d = depths[n - 2];
            return {(3 * n * n + 5 * n) / 2, 1, d};
        }
        case FamilyId::Kind::Mux: {
            if (n < 2 || (n & (n - 1)) != 0)
                throw FamilyError("mux size must be a power of two >= 2");
            long k = 0;
            while ((1L << k) < n) ++k;
            return {2 * n + n * (2 * k * k - 2 * k + 1), 1, std::nullopt};
        }
        case FamilyId::Kind::Qft:
            if (n < 1) throw FamilyError("qft needs at least 1 qubit");
            return {n * (n - 1) / 2, 0, std::nullopt};
    }
    throw FamilyError("unknown family");
}

Circuit generate(const FamilyId& id) {
    switch (id.kind) {
        case FamilyId::Kind::Toffoli: return gen_toffoli(id.n);
        case FamilyId::Kind::Adder: return gen_adder(id.n);
        case FamilyId::Kind::Mux: return gen_mux(id.n);
        case FamilyId::Kind::Qft: return gen_qft(id.n);
    }
    throw FamilyError("unknown family");
}

}  // namespace qrot
