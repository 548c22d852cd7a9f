#pragma once

#include "qrot/compile.hpp"
#include "qrot/funcspec.hpp"
#include "qrot/sim.hpp"

namespace qrot {

struct SynthOptions {
    std::vector<std::string> order;  // override; empty = file order
    bool restore_inputs = true;
    bool inplace_target = true;
};

struct SynthResult {
    Circuit circuit;
    std::vector<std::string> forms;  // printed factored form per output (x axis)
    Stats statistics;
};

/// Factor + compile every output of a spec, then verify the circuit against
/// the spec tables before returning. A verification failure here is an
/// internal error and throws.
SynthResult synth_spec(const FunctionSpec& spec, const SynthOptions& opts = {});

struct Verdict {
    bool pass = true;
    double max_deviation = 0.0;
    std::string counterexample;  // assignment bits on failure
    std::vector<std::pair<std::string, bool>> outputs;
};

/// Exhaustive hat-basis check of a circuit against a spec: output lines must
/// carry R(angle)·0 states (Rz·Rx for zx mode), restore-flagged lines their
/// inputs, up to one phase per input.
Verdict verify_circuit(const Circuit& c, const FunctionSpec& spec);

std::string verdict_json(const Verdict& v);

}  // namespace qrot
