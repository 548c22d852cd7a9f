#include "qrot/funcspec.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace qrot {

namespace {

[[noreturn]] void fail(int lineno, const std::string& what) {
    throw ParseError("spec line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

FunctionSpec parse_spec(const std::string& text) {
    FunctionSpec spec;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int nvars = -1;
    bool axis_seen = false;

    FunctionSpec::Output* block = nullptr;
    std::vector<bool> filled;
    int block_line = 0;

    auto close_block = [&]() {
        if (!block) return;
        for (size_t i = 0; i < filled.size(); ++i)
            if (!filled[i]) {
                std::string bits;
                for (int b = nvars - 1; b >= 0; --b) bits += ((i >> b) & 1) ? '1' : '0';
                fail(block_line, "output '" + block->name + "' is missing assignment " + bits);
            }
        block = nullptr;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> t{std::istream_iterator<std::string>(ls), {}};
        if (t.empty()) continue;

        if (t[0] == ".vars") {
            if (nvars >= 0) fail(lineno, "duplicate .vars");
            if (t.size() != 2) fail(lineno, ".vars takes one count");
            nvars = std::stoi(t[1]);
            if (nvars < 1 || nvars > 16) fail(lineno, "variable count must be in 1..16");
        } else if (t[0] == ".names") {
            if (nvars < 0) fail(lineno, ".vars must precede .names");
            if (static_cast<int>(t.size()) - 1 != nvars) fail(lineno, "expected one name per variable");
            spec.vars.assign(t.begin() + 1, t.end());
            if (std::set<std::string>(spec.vars.begin(), spec.vars.end()).size() != spec.vars.size())
                fail(lineno, "duplicate variable name");
        } else if (t[0] == ".axis") {
            if (t.size() != 2 || (t[1] != "x" && t[1] != "zx")) fail(lineno, ".axis must be x or zx");
            spec.zx_mode = (t[1] == "zx");
            axis_seen = true;
        } else if (t[0] == ".out") {
            if (t.size() != 2) fail(lineno, ".out takes one name");
            if (spec.vars.empty()) fail(lineno, ".names must precede outputs");
            close_block();
            for (const auto& o : spec.outputs)
                if (o.name == t[1]) fail(lineno, "duplicate output '" + t[1] + "'");
            spec.outputs.push_back({t[1], std::vector<Angle>(size_t{1} << nvars), {}});
            if (spec.zx_mode) spec.outputs.back().rz.resize(size_t{1} << nvars);
            block = &spec.outputs.back();
            filled.assign(size_t{1} << nvars, false);
            block_line = lineno;
        } else {
            // table row: bitstring angle [angle]
            if (!block) fail(lineno, "row outside an output block");
            size_t want = spec.zx_mode ? 3 : 2;
            if (t.size() != want)
                fail(lineno, spec.zx_mode ? "expected 'bits rz-angle rx-angle'"
                                          : "expected 'bits angle'");
            const std::string& bits = t[0];
            if (static_cast<int>(bits.size()) != nvars)
                fail(lineno, "bitstring '" + bits + "' must have " + std::to_string(nvars) +
                                 " bits");
            size_t idx = 0;
            for (char ch : bits) {
                if (ch != '0' && ch != '1') fail(lineno, "bad bitstring '" + bits + "'");
                idx = (idx << 1) | (ch == '1');
            }
            if (filled[idx]) fail(lineno, "duplicate assignment " + bits);
            filled[idx] = true;
            try {
                if (spec.zx_mode) {
                    block->rz[idx] = Angle::parse(t[1]);
                    block->rx[idx] = Angle::parse(t[2]);
                } else {
                    block->rx[idx] = Angle::parse(t[1]);
                }
            } catch (const ParseError& e) {
                fail(lineno, e.what());
            }
        }
    }
    close_block();
    if (nvars < 0) fail(lineno, "missing .vars");
    if (spec.vars.empty()) fail(lineno, "missing .names");
    if (spec.outputs.empty()) fail(lineno, "no output blocks");
    (void)axis_seen;
    return spec;
}

}  // namespace qrot
