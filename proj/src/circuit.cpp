#include "qrot/circuit.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <iterator>
#include <sstream>

namespace qrot {

bool Circuit::operator==(const Circuit& o) const {
    if (gates != o.gates || lines.size() != o.lines.size()) return false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const Line &a = lines[i], &b = o.lines[i];
        if (a.kind != b.kind || a.name != b.name || a.restore != b.restore ||
            a.output != b.output)
            return false;
    }
    return true;
}

Circuit inverse(const Circuit& c) {
    Circuit r;
    r.lines = c.lines;
    r.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        g.angle = g.angle.negated();
        r.gates.push_back(g);
    }
    return r;
}

Circuit merge_rotations(const Circuit& c) {
    Circuit r = c;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Gate> out;
        std::vector<int> last_on_line(r.lines.size(), -1);  // index into out
        for (const Gate& g : r.gates) {
            int prev = last_on_line[g.target];
            if (g.control >= 0) prev = std::max(prev, last_on_line[g.control]);
            if (prev >= 0 && out[prev].axis == g.axis && out[prev].control == g.control &&
                out[prev].target == g.target) {
                out[prev].angle = out[prev].angle + g.angle;
                changed = true;
                continue;
            }
            out.push_back(g);
            int idx = static_cast<int>(out.size()) - 1;
            last_on_line[g.target] = idx;
            if (g.control >= 0) last_on_line[g.control] = idx;
        }
        r.gates.clear();
        for (const Gate& g : out)
            if (!g.angle.is_zero()) r.gates.push_back(g);
            else changed = true;
    }
    return r;
}

int depth(const Circuit& c) {
    std::vector<int> layer(c.lines.size(), 0);
    int d = 0;
    for (const Gate& g : c.gates) {
        int l = layer[g.target];
        if (g.control >= 0) l = std::max(l, layer[g.control]);
        ++l;
        layer[g.target] = l;
        if (g.control >= 0) layer[g.control] = l;
        d = std::max(d, l);
    }
    return d;
}

Stats stats(const Circuit& c) {
    Stats s;
    s.lines = c.line_count();
    for (const Gate& g : c.gates)
        (g.control >= 0 ? s.two_qubit : s.one_qubit)++;
    for (const Line& l : c.lines) {
        if (l.kind == Line::Kind::Ancilla) ++s.ancillae;
        if (!l.output.empty()) ++s.outputs;
    }
    s.depth = depth(c);
    return s;
}

std::string stats_json(const Stats& s) {
    nlohmann::json j{{"one_qubit", s.one_qubit}, {"two_qubit", s.two_qubit},
                     {"ancillae", s.ancillae},   {"depth", s.depth},
                     {"lines", s.lines},         {"outputs", s.outputs}};
    return j.dump();
}

std::string write_text(const Circuit& c) {
    std::ostringstream os;
    os << "qrot-circuit v1\n";
    os << "lines " << c.line_count() << "\n";
    for (int i = 0; i < c.line_count(); ++i) {
        const Line& l = c.lines[i];
        os << "line " << i << " ";
        if (l.kind == Line::Kind::Input) {
            os << "input " << l.name;
            if (l.restore) os << " restore";
        } else {
            os << "ancilla";
        }
        if (!l.output.empty()) os << " output " << l.output;
        os << "\n";
    }
    for (const Gate& g : c.gates) {
        if (g.control >= 0)
            os << "gate " << (g.axis == Axis::X ? "crx" : "crz") << " " << g.control << " "
               << g.target << " " << g.angle.str() << "\n";
        else
            os << "gate " << (g.axis == Axis::X ? "rx" : "rz") << " " << g.target << " "
               << g.angle.str() << "\n";
    }
    return os.str();
}

namespace {

struct Cursor {
    std::istringstream in;
    int lineno = 0;
    explicit Cursor(const std::string& text) : in(text) {}

    [[noreturn]] void fail(const std::string& what, int col = 0) {
        std::ostringstream os;
        os << "parse error at line " << lineno;
        if (col) os << ", column " << col;
        os << ": " << what;
        throw CircuitError(os.str());
    }

    // next non-empty line with comments stripped, tokenized
    bool next(std::vector<std::string>& toks) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineno;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::istringstream ls(raw);
            toks.assign(std::istream_iterator<std::string>(ls), {});
            if (!toks.empty()) return true;
        }
        return false;
    }
};

int parse_int(Cursor& cur, const std::string& tok, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        cur.fail(std::string("bad ") + what + " '" + tok + "'");
    }
}

}  // namespace

Circuit read_text(const std::string& text) {
    Cursor cur(text);
    std::vector<std::string> t;
    if (!cur.next(t) || t.size() != 2 || t[0] != "qrot-circuit" || t[1] != "v1")
        cur.fail("expected header 'qrot-circuit v1'");
    if (!cur.next(t) || t.size() != 2 || t[0] != "lines") cur.fail("expected 'lines N'");
    int n = parse_int(cur, t[1], "line count");
    if (n < 0) cur.fail("negative line count");

    Circuit c;
    c.lines.resize(n);
    std::vector<bool> seen(n, false);
    while (cur.next(t)) {
        if (t[0] == "line") {
            if (t.size() < 3) cur.fail("truncated line declaration");
            int idx = parse_int(cur, t[1], "line index");
            if (idx < 0 || idx >= n) cur.fail("line index out of range");
            if (seen[idx]) cur.fail("duplicate line " + std::to_string(idx));
            seen[idx] = true;
            Line l;
            size_t k = 2;
            if (t[k] == "input") {
                if (t.size() < 4) cur.fail("input line needs a name");
                l.kind = Line::Kind::Input;
                l.name = t[3];
                k = 4;
                if (k < t.size() && t[k] == "restore") {
                    l.restore = true;
                    ++k;
                }
            } else if (t[k] == "ancilla") {
                l.kind = Line::Kind::Ancilla;
                ++k;
            } else {
                cur.fail("expected 'input' or 'ancilla', got '" + t[k] + "'");
            }
            if (k < t.size()) {
                if (t[k] != "output" || k + 1 >= t.size()) cur.fail("trailing tokens on line decl");
                l.output = t[k + 1];
                k += 2;
            }
            if (k != t.size()) cur.fail("trailing tokens on line decl");
            c.lines[idx] = l;
        } else if (t[0] == "gate") {
            if (t.size() < 2) cur.fail("truncated gate");
            const std::string& op = t[1];
            try {
                if (op == "rx" || op == "rz") {
                    if (t.size() != 4) cur.fail("expected 'gate rx|rz <target> <angle>'");
                    int tgt = parse_int(cur, t[2], "target");
                    if (tgt < 0 || tgt >= n) cur.fail("target out of range");
                    c.push(op == "rx" ? Axis::X : Axis::Z, Angle::parse(t[3]), tgt);
                } else if (op == "crx" || op == "crz") {
                    if (t.size() != 5) cur.fail("expected 'gate crx|crz <control> <target> <angle>'");
                    int ctl = parse_int(cur, t[2], "control");
                    int tgt = parse_int(cur, t[3], "target");
                    if (ctl < 0 || ctl >= n || tgt < 0 || tgt >= n)
                        cur.fail("gate line index out of range");
                    if (ctl == tgt) cur.fail("control equals target");
                    c.push(op == "crx" ? Axis::X : Axis::Z, Angle::parse(t[4]), tgt, ctl);
                } else {
                    cur.fail("unknown gate '" + op + "'");
                }
            } catch (const ParseError& e) {
                cur.fail(e.what());
            }
        } else {
            cur.fail("unknown directive '" + t[0] + "'");
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) cur.fail("line " + std::to_string(i) + " never declared");
    return c;
}

}  // namespace qrot
