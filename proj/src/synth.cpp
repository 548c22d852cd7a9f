#include "qrot/synth.hpp"

#include "qrot/factor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace qrot {

namespace {

// Reindex a table given in file variable order to the synthesis order.
std::vector<Angle> reindex(const std::vector<Angle>& rows, const std::vector<int>& file_pos,
                           int nvars) {
    std::vector<Angle> out(rows.size());
    for (size_t u = 0; u < out.size(); ++u) {
        size_t file_idx = 0;
        for (int v = 0; v < nvars; ++v) {
            int bit = (u >> (nvars - 1 - v)) & 1;
            if (bit) file_idx |= size_t{1} << (nvars - 1 - file_pos[v]);
        }
        out[u] = rows[file_idx];
    }
    return out;
}

}  // namespace

SynthResult synth_spec(const FunctionSpec& spec, const SynthOptions& opts) {
    std::vector<std::string> order = opts.order.empty() ? spec.vars : opts.order;
    int n = static_cast<int>(spec.vars.size());
    if (static_cast<int>(order.size()) != n)
        throw ParseError("order override must list every variable exactly once");
    std::vector<int> file_pos(n);  // position of order[v] in the file order
    for (int v = 0; v < n; ++v) {
        auto it = std::find(spec.vars.begin(), spec.vars.end(), order[v]);
        if (it == spec.vars.end())
            throw ParseError("order override names unknown variable '" + order[v] + "'");
        file_pos[v] = static_cast<int>(it - spec.vars.begin());
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
        Manager mgr(order, Axis::X);
        Manager zmgr(order, Axis::Z);
        try {
            CompileSession session(mgr, attempt == 1);
            if (spec.outputs.size() > 1) {
                std::set<int> all;
                for (int v = 0; v < n; ++v) all.insert(v);
                session.protect(all);
            }
            SynthResult res;
            // a zx output rotates the target around z with the inputs as
            // controls, so the target can never consume an input line
            CompileOptions copts{opts.restore_inputs, opts.inplace_target && !spec.zx_mode};
            for (const auto& out : spec.outputs) {
                Diagram dx = mgr.from_table(reindex(out.rx, file_pos, n));
                FactoredForm fx = factor(mgr, dx);
                res.forms.push_back(form_str(mgr, fx));
                int t = session.synthesize(fx, copts, out.name);
                if (spec.zx_mode) {
                    Diagram dz = zmgr.from_table(reindex(out.rz, file_pos, n));
                    FactoredForm fz = factor(zmgr, dz);
                    session.synthesize_z_stage(fz, t);
                }
            }
            res.circuit = session.finish(opts.restore_inputs);
            res.statistics = stats(res.circuit);

            Verdict v = verify_circuit(res.circuit, spec);
            if (!v.pass)
                throw CircuitError(
                    "internal error: synthesized circuit failed verification at assignment " +
                    v.counterexample);
            return res;
        } catch (const CompileSession::RetryClean&) {
            continue;
        }
    }
    throw CircuitError("synthesis failed even in clean compile mode");
}

namespace {

// contract one constrained line against its expected single-qubit state
StateVector contract(const StateVector& psi, int line, int nlines, const Complex& e0,
                     const Complex& e1) {
    size_t bit = size_t{1} << (nlines - 1 - line);
    StateVector out(psi.size() / 2);
    size_t w = 0;
    for (size_t i = 0; i < psi.size(); ++i) {
        if (i & bit) continue;
        out[w++] = std::conj(e0) * psi[i] + std::conj(e1) * psi[i | bit];
    }
    return out;
}

StateVector one_qubit_expected(bool zx, const Angle& rz, const Angle& rx) {
    StateVector s = hat_state(0);
    Matrix ux = rotation_matrix(Axis::X, rx);
    StateVector t{ux[0][0] * s[0] + ux[0][1] * s[1], ux[1][0] * s[0] + ux[1][1] * s[1]};
    if (!zx) return t;
    Matrix uz = rotation_matrix(Axis::Z, rz);
    return {uz[0][0] * t[0] + uz[0][1] * t[1], uz[1][0] * t[0] + uz[1][1] * t[1]};
}

}  // namespace

Verdict verify_circuit(const Circuit& c, const FunctionSpec& spec) {
    int L = c.line_count();
    if (L > kMaxSimLines) throw SimError("verification limited to 12 lines");
    int n = static_cast<int>(spec.vars.size());

    // map spec variables to input lines by name
    std::vector<int> var_line(n, -1);
    for (int v = 0; v < n; ++v) {
        for (int l = 0; l < L; ++l)
            if (c.lines[l].kind == Line::Kind::Input && c.lines[l].name == spec.vars[v])
                var_line[v] = l;
        if (var_line[v] < 0)
            throw SimError("circuit has no input line named '" + spec.vars[v] + "'");
    }
    std::vector<const FunctionSpec::Output*> line_output(L, nullptr);
    for (int l = 0; l < L; ++l) {
        if (c.lines[l].output.empty()) continue;
        for (const auto& o : spec.outputs)
            if (o.name == c.lines[l].output) line_output[l] = &o;
    }
    for (const auto& o : spec.outputs) {
        bool found = false;
        for (int l = 0; l < L; ++l)
            if (line_output[l] == &o) found = true;
        if (!found) throw SimError("circuit binds no line to output '" + o.name + "'");
    }

    Verdict verdict;
    std::vector<bool> output_ok(spec.outputs.size(), true);

    size_t total = size_t{1} << n;
    for (size_t u = 0; u < total; ++u) {
        std::vector<int> bits(L, 0);
        for (int v = 0; v < n; ++v) bits[var_line[v]] = (u >> (n - 1 - v)) & 1;
        StateVector psi = run(c, bits);

        // fold restore lines and output lines; free lines stay
        StateVector folded = psi;
        int remaining = L;
        // fold from the highest line index so earlier bit positions stay valid
        for (int l = L - 1; l >= 0; --l) {
            StateVector e;
            if (line_output[l]) {
                const auto& o = *line_output[l];
                e = one_qubit_expected(spec.zx_mode, spec.zx_mode ? o.rz[u] : Angle(), o.rx[u]);
            } else if (c.lines[l].restore) {
                e = hat_state(bits[l]);
            } else {
                continue;
            }
            folded = contract(folded, l, remaining, e[0], e[1]);
            --remaining;
        }
        double norm = 0;
        for (const Complex& a : folded) norm += std::norm(a);
        double dev = std::abs(1.0 - std::sqrt(norm));
        verdict.max_deviation = std::max(verdict.max_deviation, dev);
        if (dev > kSimTol && verdict.pass) {
            verdict.pass = false;
            std::string bitstr;
            for (int v = 0; v < n; ++v) bitstr += ((u >> (n - 1 - v)) & 1) ? '1' : '0';
            verdict.counterexample = bitstr;
        }

        // per-output attribution
        for (size_t oi = 0; oi < spec.outputs.size(); ++oi) {
            if (!output_ok[oi]) continue;
            int l = -1;
            for (int j = 0; j < L; ++j)
                if (line_output[j] == &spec.outputs[oi]) l = j;
            const auto& o = spec.outputs[oi];
            StateVector e =
                one_qubit_expected(spec.zx_mode, spec.zx_mode ? o.rz[u] : Angle(), o.rx[u]);
            StateVector f = contract(psi, l, L, e[0], e[1]);
            double nm = 0;
            for (const Complex& a : f) nm += std::norm(a);
            if (std::abs(1.0 - std::sqrt(nm)) > kSimTol) output_ok[oi] = false;
        }
    }
    for (size_t oi = 0; oi < spec.outputs.size(); ++oi)
        verdict.outputs.emplace_back(spec.outputs[oi].name, output_ok[oi]);
    return verdict;
}

std::string verdict_json(const Verdict& v) {
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [name, ok] : v.outputs) outs.push_back({{"name", name}, {"pass", ok}});
    nlohmann::json j{{"pass", v.pass},
                     {"max_amplitude_deviation", v.max_deviation},
                     {"outputs", outs}};
    if (!v.pass) j["counterexample"] = v.counterexample;
    return j.dump(2);
}

}  // namespace qrot
