#pragma once

#include "qrot/angle.hpp"
#include "qrot/rbdd.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qrot {

struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Line {
    enum class Kind { Input, Ancilla };
    Kind kind = Kind::Ancilla;
    std::string name;     // input name; empty for ancillae
    bool restore = false; // must equal its initial value at circuit end
    std::string output;   // non-empty: line ends holding this named output
};

/// Single rotation gate, optionally controlled. Zero-angle gates are never
/// stored; control == -1 means uncontrolled.
struct Gate {
    Axis axis = Axis::X;
    Angle angle;
    int target = 0;
    int control = -1;

    bool operator==(const Gate& o) const {
        return axis == o.axis && angle == o.angle && target == o.target && control == o.control;
    }
};

struct Circuit {
    std::vector<Line> lines;
    std::vector<Gate> gates;

    int add_input(const std::string& name, bool restore_flag) {
        lines.push_back(Line{Line::Kind::Input, name, restore_flag, ""});
        return static_cast<int>(lines.size()) - 1;
    }
    int add_ancilla() {
        lines.push_back(Line{Line::Kind::Ancilla, "", false, ""});
        return static_cast<int>(lines.size()) - 1;
    }
    void push(Axis axis, const Angle& angle, int target, int control = -1) {
        if (angle.is_zero()) return;
        if (control == target) throw CircuitError("gate control equals target");
        gates.push_back(Gate{axis, angle, target, control});
    }
    int line_count() const { return static_cast<int>(lines.size()); }

    bool operator==(const Circuit& o) const;
};

struct Stats {
    int one_qubit = 0;
    int two_qubit = 0;
    int ancillae = 0;
    int depth = 0;
    int lines = 0;
    int outputs = 0;
};

Circuit inverse(const Circuit& c);

/// Fixpoint merge of adjacent gates with identical (axis, control, target);
/// zero results are deleted. No commutation analysis.
Circuit merge_rotations(const Circuit& c);

/// ASAP list schedule depth: each gate lands one past the last layer touching
/// its target or control.
int depth(const Circuit& c);

Stats stats(const Circuit& c);
std::string stats_json(const Stats& s);

std::string write_text(const Circuit& c);
Circuit read_text(const std::string& text);

}  // namespace qrot
