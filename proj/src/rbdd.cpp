#include "qrot/rbdd.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qrot {

Manager::Manager(std::vector<std::string> var_order, Axis axis)
    : vars_(std::move(var_order)), axis_(axis) {
    nodes_.push_back(Node{-1, TERMINAL, TERMINAL, Angle()});  // slot 0 = terminal
}

Diagram Manager::var_diagram(int var) {
    return mk_node(var, terminal(), terminal(Angle::pi()));
}

Diagram Manager::mk_node(int var, const Diagram& lo, const Diagram& hi) {
    if (var < 0 || var >= var_count()) throw DiagramError("variable index out of range");
    for (const Diagram* c : {&lo, &hi}) {
        if (!c->is_terminal() && nodes_[c->node].var <= var)
            throw DiagramError("child variable '" + var_name(nodes_[c->node].var) +
                               "' does not follow '" + var_name(var) + "' in the order");
    }
    Angle hi_weight = hi.weight - lo.weight;
    if (lo.node == hi.node && hi_weight.is_zero()) return lo;
    NodeKey key{var, lo.node, hi.node, hi_weight};
    auto it = unique_.find(key);
    if (it != unique_.end()) return Diagram{lo.weight, it->second};
    nodes_.push_back(Node{var, lo.node, hi.node, hi_weight});
    NodeRef r = static_cast<NodeRef>(nodes_.size() - 1);
    unique_.emplace(key, r);
    return Diagram{lo.weight, r};
}

Diagram Manager::from_table(const std::vector<Angle>& rows) {
    size_t n = vars_.size();
    if (rows.size() != (size_t{1} << n)) throw DiagramError("table must have exactly 2^n rows");
    std::function<Diagram(size_t, size_t, int)> build = [&](size_t base, size_t width,
                                                            int var) -> Diagram {
        if (width == 1) return terminal(rows[base]);
        Diagram lo = build(base, width / 2, var + 1);
        Diagram hi = build(base + width / 2, width / 2, var + 1);
        return mk_node(var, lo, hi);
    };
    return build(0, rows.size(), 0);
}

Angle Manager::eval(const Diagram& d, std::uint32_t assignment) const {
    Angle acc = d.weight;
    NodeRef cur = d.node;
    int n = var_count();
    while (cur != TERMINAL) {
        const Node& nd = nodes_[cur];
        bool bit = (assignment >> (n - 1 - nd.var)) & 1u;
        if (bit) {
            acc = acc + nd.hi_weight;
            cur = nd.hi;
        } else {
            cur = nd.lo;
        }
    }
    return acc;
}

bool Manager::is_boolean(const Diagram& d) {
    std::set<std::pair<NodeRef, Angle>> seen;
    std::function<bool(NodeRef, const Angle&)> walk = [&](NodeRef r, const Angle& off) -> bool {
        if (r == TERMINAL) return off.is_boolean();
        if (!seen.insert({r, off}).second) return true;
        const Node& nd = nodes_[r];
        return walk(nd.lo, off) && walk(nd.hi, off + nd.hi_weight);
    };
    return walk(d.node, d.weight);
}

Diagram Manager::apply(const Diagram& f, const Angle& gamma, const Diagram& g) {
    if (!f.weight.is_boolean())
        throw DiagramError("apply: control operand is not Boolean (root weight " + f.weight.str() +
                           ")");
    if (!is_boolean(f)) {
        // find an offending path value for the diagnostic
        std::string bad;
        std::function<bool(NodeRef, const Angle&)> find = [&](NodeRef r, const Angle& off) {
            if (r == TERMINAL) {
                if (!off.is_boolean()) {
                    bad = off.str();
                    return true;
                }
                return false;
            }
            const Node& nd = nodes_[r];
            return find(nd.lo, off) || find(nd.hi, off + nd.hi_weight);
        };
        find(f.node, f.weight);
        throw DiagramError("apply: control operand is not Boolean (path value " + bad + ")");
    }
    Diagram inner = apply_rec(f.node, f.weight.is_pi(), gamma, g.node);
    return Diagram{g.weight + inner.weight, inner.node};
}

Diagram Manager::apply_rec(NodeRef f, bool f_offset_pi, const Angle& gamma, NodeRef g) {
    // Terminal conditions: 0 Rx(t) v = v, 1 Rx(t) v = Rx(t) v.
    if (f == TERMINAL) return f_offset_pi ? Diagram{gamma, g} : Diagram{Angle(), g};
    ApplyKey key{f, f_offset_pi, gamma, g};
    auto it = apply_memo_.find(key);
    if (it != apply_memo_.end()) return it->second;

    // nodes are copied out: recursion grows the store and may reallocate it
    Node fn = nodes_[f];
    Angle f_off = f_offset_pi ? Angle::pi() : Angle();
    Diagram res;
    int gvar = (g == TERMINAL) ? var_count() : nodes_[g].var;
    if (fn.var < gvar) {
        // Rule 1
        Angle f1 = f_off + fn.hi_weight;
        Diagram hi = apply_rec(fn.hi, f1.is_pi(), gamma, g);
        Diagram lo = apply_rec(fn.lo, f_offset_pi, gamma, g);
        res = mk_node(fn.var, lo, hi);
    } else if (gvar < fn.var) {
        // Rule 2
        Node gn = nodes_[g];
        Diagram hi = apply_rec(f, f_offset_pi, gamma, gn.hi);
        hi.weight = hi.weight + gn.hi_weight;
        Diagram lo = apply_rec(f, f_offset_pi, gamma, gn.lo);
        res = mk_node(gn.var, lo, hi);
    } else {
        // Rule 3
        Node gn = nodes_[g];
        Angle f1 = f_off + fn.hi_weight;
        Diagram hi = apply_rec(fn.hi, f1.is_pi(), gamma, gn.hi);
        hi.weight = hi.weight + gn.hi_weight;
        Diagram lo = apply_rec(fn.lo, f_offset_pi, gamma, gn.lo);
        res = mk_node(fn.var, lo, hi);
    }
    apply_memo_.emplace(key, res);
    return res;
}

void Manager::reachable(NodeRef r, std::unordered_set<NodeRef>& seen) const {
    if (r == TERMINAL || seen.count(r)) return;
    seen.insert(r);
    reachable(nodes_[r].lo, seen);
    reachable(nodes_[r].hi, seen);
}

std::pair<int, bool> Manager::count_nodes_with_var(const Diagram& d, int var) {
    std::unordered_set<NodeRef> seen;
    reachable(d.node, seen);
    int m = 0;
    for (NodeRef r : seen)
        if (nodes_[r].var == var) ++m;

    // bypassed: some root-to-terminal path meets no var-node.
    std::unordered_map<NodeRef, bool> memo;
    std::function<bool(NodeRef)> bypass = [&](NodeRef r) -> bool {
        if (r == TERMINAL) return true;
        const Node& nd = nodes_[r];
        if (nd.var == var) return false;
        if (nd.var > var) return true;
        auto it = memo.find(r);
        if (it != memo.end()) return it->second;
        bool b = bypass(nd.lo) || bypass(nd.hi);
        memo.emplace(r, b);
        return b;
    };
    return {m, bypass(d.node)};
}

std::vector<Angle> Manager::angle_classes(const Diagram& d, int var) {
    std::unordered_set<NodeRef> seen;
    reachable(d.node, seen);
    std::set<Angle, std::less<Angle>> classes;
    for (NodeRef r : seen)
        if (nodes_[r].var == var) classes.insert(nodes_[r].hi_weight);
    if (count_nodes_with_var(d, var).second) classes.insert(Angle());
    return {classes.begin(), classes.end()};
}

Angle Manager::origin_class(const Diagram& d, int var) {
    NodeRef cur = d.node;
    while (cur != TERMINAL && nodes_[cur].var < var) cur = nodes_[cur].lo;
    if (cur != TERMINAL && nodes_[cur].var == var) return nodes_[cur].hi_weight;
    return Angle();
}

int Manager::r_degree(const Diagram& d, int var) {
    return static_cast<int>(angle_classes(d, var).size()) - 1;
}

std::optional<int> Manager::lowest_rnonlinear(const Diagram& d) {
    for (int v = var_count() - 1; v >= 0; --v)
        if (r_degree(d, v) > 0) return v;
    return std::nullopt;
}

std::optional<CascadeExpr> Manager::to_cascade(const Diagram& d) {
    for (int v = 0; v < var_count(); ++v)
        if (r_degree(d, v) > 0) return std::nullopt;
    CascadeExpr cas;
    cas.prefix = d.weight;
    cas.axis = axis_;
    NodeRef cur = d.node;
    while (cur != TERMINAL) {
        const Node& nd = nodes_[cur];
        if (nd.lo != nd.hi)
            throw DiagramError("internal: r-linear diagram is not a chain");
        cas.terms.emplace_back(nd.var, nd.hi_weight);
        cur = nd.lo;
    }
    return cas;
}

Diagram Manager::g1_extract(const Diagram& d, int vk, const Angle& alpha1) {
    auto classes = angle_classes(d, vk);
    if (std::find(classes.begin(), classes.end(), alpha1) == classes.end())
        throw DiagramError("g1_extract: " + alpha1.str() + " is not an angle class of variable '" +
                           var_name(vk) + "'");
    Diagram fresh = mk_node(vk, terminal(), terminal(Angle::pi()));

    std::unordered_map<NodeRef, Diagram> memo;
    std::function<Diagram(NodeRef)> route = [&](NodeRef r) -> Diagram {
        if (r != TERMINAL && nodes_[r].var == vk) {
            bool cls1 = nodes_[r].hi_weight == alpha1;
            return Diagram{cls1 ? Angle::pi() : Angle(), fresh.node};
        }
        if (r == TERMINAL || nodes_[r].var > vk) {
            // bypass path; the bypass class angle is 0
            bool cls1 = alpha1.is_zero();
            return Diagram{cls1 ? Angle::pi() : Angle(), fresh.node};
        }
        auto it = memo.find(r);
        if (it != memo.end()) return it->second;
        Node nd = nodes_[r];  // mk_node below may reallocate the store
        Diagram res = mk_node(nd.var, route(nd.lo), route(nd.hi));
        memo.emplace(r, res);
        return res;
    };
    return route(d.node);
}

std::string Manager::to_dot(const Diagram& d) const {
    std::ostringstream os;
    os << "digraph rbdd {\n  rankdir=TB;\n";
    os << "  root [shape=none,label=\"" << (axis_ == Axis::X ? "Rx" : "Rz") << "(" << d.weight.str()
       << ")\"];\n";
    os << "  t [shape=box,label=\"0\"];\n";
    std::unordered_set<NodeRef> seen;
    std::function<void(NodeRef)> emit = [&](NodeRef r) {
        if (r == TERMINAL || seen.count(r)) return;
        seen.insert(r);
        const Node& nd = nodes_[r];
        os << "  n" << r << " [shape=circle,label=\"" << var_name(nd.var) << "\"];\n";
        auto child = [&](NodeRef c) { return c == TERMINAL ? std::string("t") : "n" + std::to_string(c); };
        os << "  n" << r << " -> " << child(nd.lo) << " [style=dashed];\n";
        os << "  n" << r << " -> " << child(nd.hi) << " [label=\"" << nd.hi_weight.str() << "\"];\n";
        emit(nd.lo);
        emit(nd.hi);
    };
    os << "  root -> " << (d.node == TERMINAL ? std::string("t") : "n" + std::to_string(d.node))
       << ";\n";
    emit(d.node);
    os << "}\n";
    return os.str();
}

}  // namespace qrot
