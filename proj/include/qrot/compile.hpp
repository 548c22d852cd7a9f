#pragma once

#include "qrot/circuit.hpp"
#include "qrot/factor.hpp"

#include <optional>
#include <set>

namespace qrot {

struct CompileOptions {
    bool restore_inputs = true;
    bool inplace_target = true;
};

/// One synthesis run over a manager's variable order. Tracks each line's
/// current function as a canonical diagram so controls computed while
/// materializing one network can be reused by later rotations, exactly as the
/// shared-substructure circuits in the source constructions do. When a needed
/// line has already been overwritten the whole session restarts in a clean
/// mode that uncomputes every control network right after its rotation.
class CompileSession {
  public:
    CompileSession(Manager& mgr, bool clean_mode = false);

    /// Variables whose lines must never be consumed as a target (they are
    /// still needed as inputs by other outputs).
    void protect(const std::set<int>& vars) { protected_vars_ = vars; }

    /// Emit gates computing ff onto a target line; returns the target index.
    int synthesize(const FactoredForm& ff, const CompileOptions& opts,
                   const std::string& output_name);

    /// Z-axis stage of a zx-mode output: cascade/spine rotations emitted as
    /// CRz onto an existing target line.
    void synthesize_z_stage(const FactoredForm& ff, int target);

    /// Append the uncompute block (when restore is on) and finalize line
    /// metadata. May only be called once.
    Circuit finish(bool restore_inputs);

    struct RetryClean {};  // thrown when a shared-mode line conflict occurs

  private:
    int line_of_var(int v) const { return v; }
    std::optional<int> find_line_holding(const Diagram& d, int exclude) const;
    void require_pristine(int var);
    void push_target_gate(Axis axis, const Angle& angle, int target, int control);
    void push_mat_gate(const Angle& angle, int target, int control);
    int materialize(const FactoredForm& ff, const Diagram& value, std::vector<Gate>& run);
    void unmaterialize(const std::vector<Gate>& run,
                       const std::vector<std::optional<Diagram>>& sigma_before);
    void emit_rotations(const FactoredForm& ff, int target, Axis axis, bool skip_innermost);

    Manager& mgr_;
    Circuit circ_;
    std::vector<std::optional<Diagram>> sigma_;
    std::vector<Gate> mat_gates_;
    std::set<int> protected_vars_;
    bool clean_mode_;
    bool finished_ = false;
};

struct CompileResult {
    Circuit circuit;
    int target = -1;
};

/// Compile a single factored form; restarts in clean mode on line conflicts.
CompileResult compile(Manager& mgr, const FactoredForm& ff, const CompileOptions& opts = {},
                      const std::string& output_name = "f");

}  // namespace qrot
