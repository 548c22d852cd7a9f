#pragma once

#include "qrot/angle.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrot {

/// Per-output table mapping each input assignment to target angle(s).
/// `zx` mode carries an Rz angle then an Rx angle per row.
struct FunctionSpec {
    std::vector<std::string> vars;
    bool zx_mode = false;
    struct Output {
        std::string name;
        std::vector<Angle> rx;  // indexed by assignment, var 0 = msb
        std::vector<Angle> rz;  // zx mode only
    };
    std::vector<Output> outputs;
};

FunctionSpec parse_spec(const std::string& text);

}  // namespace qrot
