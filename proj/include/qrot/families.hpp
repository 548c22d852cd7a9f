#pragma once

#include "qrot/circuit.hpp"
#include "qrot/compile.hpp"

#include <optional>

namespace qrot {

struct FamilyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CostPrediction {
    long two_qubit = 0;
    int ancillae = 0;
    std::optional<int> depth_bound;
};

/// Multi-control Toffoli over n controls and one target, no ancilla, inputs
/// restored; 2n^2 - 2n + 1 controlled rotations.
Circuit gen_toffoli(int n);
/// The closed-form factored structure the Toffoli circuit compiles from.
FactoredForm toffoli_form(Manager& mgr, int controls, int target_var);

/// n-bit ripple adder on lines a0,b0,...,a_{n-1},b_{n-1} plus a carry
/// ancilla; sums land on the b lines, (3n^2+5n)/2 gates.
Circuit gen_adder(int n);

/// n-way multiplexer (n a power of two) with ceil(log n) selects and one
/// ancilla output; 2n + n(2k^2-2k+1) two-qubit gates after expansion.
Circuit gen_mux(int n);

/// Per-output controlled-Rz cascades with an Rx/Rz head on each line.
Circuit gen_qft(int n);

struct FamilyId {
    enum class Kind { Toffoli, Adder, Mux, Qft } kind;
    int n;
};

CostPrediction predict(const FamilyId& id);
Circuit generate(const FamilyId& id);

}  // namespace qrot
