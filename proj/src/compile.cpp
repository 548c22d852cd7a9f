#include "qrot/compile.hpp"

#include <algorithm>

namespace qrot {

CompileSession::CompileSession(Manager& mgr, bool clean_mode)
    : mgr_(mgr), clean_mode_(clean_mode) {
    for (int v = 0; v < mgr.var_count(); ++v) {
        circ_.add_input(mgr.var_name(v), false);
        sigma_.push_back(mgr.var_diagram(v));
    }
}

std::optional<int> CompileSession::find_line_holding(const Diagram& d, int exclude) const {
    for (int l = 0; l < circ_.line_count(); ++l)
        if (l != exclude && sigma_[l] && *sigma_[l] == d) return l;
    return std::nullopt;
}

void CompileSession::require_pristine(int var) {
    int l = line_of_var(var);
    if (!sigma_[l] || *sigma_[l] != mgr_.var_diagram(var)) throw RetryClean{};
}

void CompileSession::push_target_gate(Axis axis, const Angle& angle, int target, int control) {
    circ_.push(axis, angle, target, control);
}

void CompileSession::push_mat_gate(const Angle& angle, int target, int control) {
    if (angle.is_zero()) return;
    circ_.push(Axis::X, angle, target, control);
    if (!clean_mode_) mat_gates_.push_back(Gate{Axis::X, angle, target, control});
}

// Leaf cascade and spine rotations onto `target`, innermost leaf term first,
// spine walked outermost-first with each control materialized in place.
void CompileSession::emit_rotations(const FactoredForm& ff, int target, Axis axis,
                                    bool skip_innermost) {
    auto flat = ff.flatten();
    const CascadeExpr& leaf = *flat.leaf;
    size_t nterms = leaf.terms.size();
    for (size_t i = nterms; i-- > 0;) {
        if (skip_innermost && i + 1 == nterms) continue;
        auto [v, theta] = leaf.terms[i];
        require_pristine(v);
        push_target_gate(axis, theta, target, line_of_var(v));
    }
    if (!leaf.prefix.is_zero()) push_target_gate(axis, leaf.prefix, target, -1);

    for (const auto& [ctrl_ff, gamma] : flat.spine) {
        Diagram value = form_diagram(mgr_, *ctrl_ff);
        std::vector<Gate> run;
        std::vector<std::optional<Diagram>> sigma_before;
        int cl;
        if (auto found = find_line_holding(value, target)) {
            cl = *found;
        } else {
            if (clean_mode_) sigma_before = sigma_;
            cl = materialize(*ctrl_ff, value, run);
        }
        push_target_gate(axis, gamma, target, cl);
        if (clean_mode_ && !run.empty()) unmaterialize(run, sigma_before);
    }
}

// Compute a Boolean control in place on the line of its innermost cascade
// variable. Returns that line.
int CompileSession::materialize(const FactoredForm& ff, const Diagram& value,
                                std::vector<Gate>& run) {
    auto flat = ff.flatten();
    const CascadeExpr& leaf = *flat.leaf;
    if (leaf.terms.empty())
        throw CircuitError("cannot materialize a constant control; no line to compute it on");
    auto [v, theta] = leaf.terms.back();
    if (!theta.is_pi())
        throw CircuitError("internal: Boolean control cascade must end in a pi term");
    require_pristine(v);
    int t = line_of_var(v);

    size_t gate_mark = circ_.gates.size();
    size_t nterms = leaf.terms.size();
    for (size_t i = nterms - 1; i-- > 0;) {
        auto [u, th] = leaf.terms[i];
        require_pristine(u);
        push_mat_gate(th, t, line_of_var(u));
    }
    if (!leaf.prefix.is_zero()) push_mat_gate(leaf.prefix, t, -1);

    for (const auto& [ctrl_ff, gamma] : flat.spine) {
        Diagram sub_value = form_diagram(mgr_, *ctrl_ff);
        std::vector<Gate> subrun;
        std::vector<std::optional<Diagram>> sigma_before;
        int cl;
        if (auto found = find_line_holding(sub_value, t)) {
            cl = *found;
        } else {
            if (clean_mode_) sigma_before = sigma_;
            cl = materialize(*ctrl_ff, sub_value, subrun);
        }
        push_mat_gate(gamma, t, cl);
        if (clean_mode_ && !subrun.empty()) unmaterialize(subrun, sigma_before);
    }

    sigma_[t] = value;
    // the run is the exact circuit segment this materialization emitted,
    // nested uncompute gates included, so its reverse is a true inverse
    run.assign(circ_.gates.begin() + gate_mark, circ_.gates.end());
    return t;
}

void CompileSession::unmaterialize(const std::vector<Gate>& run,
                                   const std::vector<std::optional<Diagram>>& sigma_before) {
    for (auto it = run.rbegin(); it != run.rend(); ++it) {
        Gate g = *it;
        g.angle = g.angle.negated();
        circ_.gates.push_back(g);
    }
    sigma_ = sigma_before;
}

namespace {
void form_support(const FactoredForm& ff, std::set<int>& out) {
    auto flat = ff.flatten();
    for (const auto& [v, a] : flat.leaf->terms) out.insert(v);
    for (const auto& [ctrl, gamma] : flat.spine) form_support(*ctrl, out);
}
}  // namespace

int CompileSession::synthesize(const FactoredForm& ff, const CompileOptions& opts,
                               const std::string& output_name) {
    if (finished_) throw CircuitError("session already finished");
    auto flat = ff.flatten();
    const CascadeExpr& leaf = *flat.leaf;

    int target = -1;
    bool consumed = false;
    if (opts.inplace_target && !leaf.terms.empty() && leaf.axis == Axis::X) {
        auto [v, theta] = leaf.terms.back();
        bool needed_elsewhere = protected_vars_.count(v) > 0;
        std::set<int> ctrl_support;
        for (const auto& [ctrl_ff, gamma] : flat.spine) form_support(*ctrl_ff, ctrl_support);
        needed_elsewhere = needed_elsewhere || ctrl_support.count(v) > 0;
        int l = line_of_var(v);
        if (theta.is_pi() && !needed_elsewhere && circ_.lines[l].output.empty() && sigma_[l] &&
            *sigma_[l] == mgr_.var_diagram(v)) {
            target = l;
            consumed = true;
        }
    }
    if (target < 0) {
        target = circ_.add_ancilla();
        sigma_.push_back(mgr_.terminal());
    }

    emit_rotations(ff, target, leaf.axis, consumed);
    circ_.lines[target].output = output_name;
    sigma_[target] = form_diagram(mgr_, ff);
    return target;
}

void CompileSession::synthesize_z_stage(const FactoredForm& ff, int target) {
    emit_rotations(ff, target, Axis::Z, false);
    sigma_[target] = std::nullopt;  // state no longer an X-angle of 0
}

Circuit CompileSession::finish(bool restore_inputs) {
    if (finished_) throw CircuitError("session already finished");
    finished_ = true;
    if (restore_inputs && !clean_mode_) {
        for (auto it = mat_gates_.rbegin(); it != mat_gates_.rend(); ++it) {
            Gate g = *it;
            g.angle = g.angle.negated();
            circ_.gates.push_back(g);
        }
        mat_gates_.clear();
    }
    for (int v = 0; v < mgr_.var_count(); ++v) {
        Line& l = circ_.lines[v];
        if (!l.output.empty()) continue;
        l.restore = restore_inputs;
    }
    return std::move(circ_);
}

CompileResult compile(Manager& mgr, const FactoredForm& ff, const CompileOptions& opts,
                      const std::string& output_name) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            CompileSession session(mgr, attempt == 1);
            int t = session.synthesize(ff, opts, output_name);
            return CompileResult{session.finish(opts.restore_inputs), t};
        } catch (const CompileSession::RetryClean&) {
            continue;
        }
    }
    throw CircuitError("compile failed even in clean mode");
}

}  // namespace qrot
