#pragma once

#include "qrot/angle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qrot {

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Axis { X, Z };

using NodeRef = std::uint32_t;
constexpr NodeRef TERMINAL = 0;

/// Internal node. The 0-edge carries no weight; all weight sits on the 1-edge
/// and the diagram root, which is what makes hash consing canonical.
struct Node {
    int var;
    NodeRef lo, hi;
    Angle hi_weight;
};

/// Root-weighted handle into a Manager's node store.
struct Diagram {
    Angle weight;
    NodeRef node = TERMINAL;

    bool operator==(const Diagram& o) const { return node == o.node && weight == o.weight; }
    bool operator!=(const Diagram& o) const { return !(*this == o); }
    bool is_terminal() const { return node == TERMINAL; }
};

/// Cascade expression Rx(prefix)[v1 Rx(t1) [ ... [vn Rx(tn) 0] ]].
/// Terms are outermost-first and follow the manager's variable order.
struct CascadeExpr {
    Angle prefix;
    std::vector<std::pair<int, Angle>> terms;
    Axis axis = Axis::X;
};

/// Node store with a unique table and an apply memo. One owner at a time;
/// read-only use of a frozen manager may be shared.
class Manager {
  public:
    explicit Manager(std::vector<std::string> var_order, Axis axis = Axis::X);

    int var_count() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::string& var_name(int v) const { return vars_.at(v); }
    Axis axis() const { return axis_; }

    Diagram terminal(Angle w = Angle()) const { return Diagram{std::move(w), TERMINAL}; }
    /// Diagram of a single Boolean variable: v Rx(pi) 0.
    Diagram var_diagram(int var);

    /// Canonicalizing node constructor: pushes the lo root weight up, stores
    /// hi-lo on the 1-edge and elides redundant nodes.
    Diagram mk_node(int var, const Diagram& lo, const Diagram& hi);

    /// Build from a complete table of 2^n angles; row index bit for variable v
    /// is bit (n-1-v), so variable 0 is the most significant bit.
    Diagram from_table(const std::vector<Angle>& rows);

    Angle eval(const Diagram& d, std::uint32_t assignment) const;

    Diagram rotate(const Diagram& d, const Angle& gamma) const {
        return Diagram{d.weight + gamma, d.node};
    }

    bool is_boolean(const Diagram& d);

    /// h = f Rx(gamma) g: eval(h,U) = eval(g,U) + gamma * [eval(f,U) = pi].
    /// Requires Boolean f.
    Diagram apply(const Diagram& f, const Angle& gamma, const Diagram& g);

    std::pair<int, bool> count_nodes_with_var(const Diagram& d, int var);
    /// Distinct 1-edge angles of var's nodes (plus 0 when some path bypasses
    /// var), minus one. Zero iff var is r-linear.
    int r_degree(const Diagram& d, int var);
    /// Distinct angle classes for var, including the virtual 0 bypass class.
    std::vector<Angle> angle_classes(const Diagram& d, int var);
    /// Class of the all-zeros assignment: weight of the var-node met on the
    /// all-lo path, or 0 when that path bypasses var.
    Angle origin_class(const Diagram& d, int var);

    /// Deepest r-nonlinear variable; nullopt for chain-structured diagrams.
    std::optional<int> lowest_rnonlinear(const Diagram& d);

    std::optional<CascadeExpr> to_cascade(const Diagram& d);

    /// Algorithm "g1-factor": zero every weight, route edges into the alpha1
    /// class (bypass paths count as the 0 class) through a fresh vk node with
    /// edge weight pi, all other classes with weight 0, re-canonicalize.
    Diagram g1_extract(const Diagram& d, int vk, const Angle& alpha1);

    const Node& node(NodeRef r) const { return nodes_[r]; }
    size_t live_nodes() const { return nodes_.size() - 1; }

    std::string to_dot(const Diagram& d) const;

  private:
    Diagram apply_rec(NodeRef f, bool f_offset_pi, const Angle& gamma, NodeRef g);
    void reachable(NodeRef r, std::unordered_set<NodeRef>& seen) const;

    struct NodeKey {
        int var;
        NodeRef lo, hi;
        Angle w;
        bool operator==(const NodeKey& o) const {
            return var == o.var && lo == o.lo && hi == o.hi && w == o.w;
        }
    };
    struct NodeKeyHash {
        size_t operator()(const NodeKey& k) const {
            size_t h = std::hash<int>()(k.var);
            boost::hash_combine(h, k.lo);
            boost::hash_combine(h, k.hi);
            boost::hash_combine(h, k.w.hash());
            return h;
        }
    };
    struct ApplyKey {
        NodeRef f;
        bool f_pi;
        Angle gamma;
        NodeRef g;
        bool operator==(const ApplyKey& o) const {
            return f == o.f && f_pi == o.f_pi && gamma == o.gamma && g == o.g;
        }
    };
    struct ApplyKeyHash {
        size_t operator()(const ApplyKey& k) const {
            size_t h = boost::hash<NodeRef>()(k.f);
            boost::hash_combine(h, k.f_pi);
            boost::hash_combine(h, k.gamma.hash());
            boost::hash_combine(h, k.g);
            return h;
        }
    };

    std::vector<std::string> vars_;
    Axis axis_;
    std::vector<Node> nodes_;
    std::unordered_map<NodeKey, NodeRef, NodeKeyHash> unique_;
    std::unordered_map<ApplyKey, Diagram, ApplyKeyHash> apply_memo_;
};

}  // namespace qrot
