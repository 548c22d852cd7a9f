// Acceptance suite: one pass/fail line per criterion, exit code = failures.
#include "qrot/compile.hpp"
#include "qrot/factor.hpp"
#include "qrot/families.hpp"
#include "qrot/sim.hpp"
#include "qrot/synth.hpp"

#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace qrot;

namespace {

int checks_failed = 0;
std::ostringstream detail;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++checks_failed;
        detail << "    FAILED: " << what << "\n";
    }
}

std::vector<std::string> var_names(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
    return v;
}

Angle random_angle(std::mt19937& rng) {
    static const Angle pool[] = {Angle(0, 1),  Angle(1, 4),  Angle(-1, 4),
                                 Angle(1, 2),  Angle(-1, 2), Angle(1, 1)};
    return pool[rng() % 6];
}

std::vector<Angle> toffoli_table(int nvars) {
    std::vector<Angle> t(size_t{1} << nvars);
    for (std::uint32_t u = 0; u < t.size(); ++u) {
        bool all = (u >> 1) == (1u << (nvars - 1)) - 1;
        t[u] = (all ^ (u & 1)) ? Angle::pi() : Angle::zero();
    }
    return t;
}

StateVector contract(const StateVector& psi, int line, int nlines, const StateVector& e) {
    size_t bit = size_t{1} << (nlines - 1 - line);
    StateVector out(psi.size() / 2);
    size_t w = 0;
    for (size_t i = 0; i < psi.size(); ++i) {
        if (i & bit) continue;
        out[w++] = std::conj(e[0]) * psi[i] + std::conj(e[1]) * psi[i | bit];
    }
    return out;
}

// exhaustive hat-basis functional check; want[l] in {-1 unconstrained, 0, 1}
bool boolean_functional_ok(const Circuit& c,
                           const std::function<std::vector<int>(const std::vector<int>&)>& want) {
    int L = c.line_count();
    std::vector<int> input_lines;
    for (int l = 0; l < L; ++l)
        if (c.lines[l].kind == Line::Kind::Input) input_lines.push_back(l);
    size_t n = input_lines.size();
    for (size_t u = 0; u < (size_t{1} << n); ++u) {
        std::vector<int> bits(L, 0);
        for (size_t v = 0; v < n; ++v) bits[input_lines[v]] = (u >> (n - 1 - v)) & 1;
        StateVector folded = run(c, bits);
        std::vector<int> w = want(bits);
        int width = L;
        for (int l = L - 1; l >= 0; --l) {
            if (w[l] < 0) continue;
            folded = contract(folded, l, width, hat_state(w[l]));
            --width;
        }
        double norm = 0;
        for (const Complex& a : folded) norm += std::norm(a);
        if (std::abs(std::sqrt(norm) - 1.0) > kSimTol) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 1
void criterion_toffoli() {
    const long expect_counts[] = {5, 13, 25, 41, 61, 85, 113};
    for (int n = 2; n <= 8; ++n) {
        Stats s = stats(gen_toffoli(n));
        expect(s.two_qubit == expect_counts[n - 2],
               "gen_toffoli(" + std::to_string(n) + ") two_qubit = " + std::to_string(s.two_qubit) +
                   ", want " + std::to_string(expect_counts[n - 2]));
        expect(s.two_qubit == 2 * n * n - 2 * n + 1, "formula 2n^2-2n+1 at n=" + std::to_string(n));
    }
    for (int n = 2; n <= 9; ++n) {
        Circuit c = gen_toffoli(n);
        Matrix u = unitary_of(c);
        size_t N = size_t{1} << (n + 1);
        Matrix perm(N, std::vector<Complex>(N, Complex(0, 0)));
        for (size_t col = 0; col < N; ++col) {
            bool all = (col >> 1) == (N >> 1) - 1;
            size_t row = all ? col ^ 1 : col;
            perm[row][col] = Complex(1, 0);
        }
        expect(columns_equal_up_to_phase(u, perm, kSimTol),
               "gen_toffoli(" + std::to_string(n) + ") unitary is the controlled-X permutation");
    }
}

// ---------------------------------------------------------------- criterion 2
void criterion_generic_agreement() {
    Manager m({"a", "b", "c", "d"});
    Diagram s = m.from_table(toffoli_table(4));
    FactoredForm ff = factor(m, s);
    CompileResult res = compile(m, ff, CompileOptions{true, true}, "s");
    expect(stats(res.circuit).two_qubit == 13,
           "factor+compile of s=abc^d yields 13 two-qubit gates, got " +
               std::to_string(stats(res.circuit).two_qubit));
    Circuit fam = gen_toffoli(3);
    expect(equal_up_to_phase(unitary_of(res.circuit), unitary_of(fam), kSimTol),
           "generic circuit matches gen_toffoli(3) unitary up to global phase");

    bool shape = !ff.is_leaf() && ff.gamma() == Angle(-1, 2) && !ff.rest().is_leaf() &&
                 ff.rest().gamma() == Angle(-1, 4);
    expect(shape, "decomposition is g1 Rx(-1/2)[g2 Rx(-1/4) h1]");
    std::string printed = form_str(m, ff);
    expect(printed.find("Rx(-1/2)") != std::string::npos &&
               printed.find("Rx(-1/4)") != std::string::npos,
           "printed factored form shows Rx(-1/2) and Rx(-1/4)");
    detail << "    factored form: s = " << printed << "\n";
}

// ---------------------------------------------------------------- criterion 3
void criterion_adder() {
    for (int n = 1; n <= 8; ++n) {
        Stats s = stats(gen_adder(n));
        expect(s.two_qubit == (3 * n * n + 5 * n) / 2,
               "gen_adder(" + std::to_string(n) + ") two_qubit = (3n^2+5n)/2");
    }
    expect(stats(gen_adder(2)).two_qubit == 11, "gen_adder(2) has 11 gates");
    expect(stats(gen_adder(5)).two_qubit == 50, "gen_adder(5) has 50 gates");

    for (int n = 1; n <= 5; ++n) {
        Circuit c = gen_adder(n);
        bool ok = boolean_functional_ok(c, [&](const std::vector<int>& bits) {
            int a = 0, b = 0;
            for (int i = 0; i < n; ++i) {
                a |= bits[2 * i] << i;
                b |= bits[2 * i + 1] << i;
            }
            int sum = a + b;
            std::vector<int> w(c.line_count(), -1);
            for (int i = 0; i < n; ++i) {
                w[2 * i] = bits[2 * i];
                w[2 * i + 1] = (sum >> i) & 1;
            }
            w[2 * n] = (sum >> n) & 1;
            return w;
        });
        expect(ok, "gen_adder(" + std::to_string(n) + ") adds every input pair");
    }

    const std::map<int, int> limits{{2, 9}, {3, 12}, {4, 19}, {5, 23}, {6, 27}, {7, 31}, {8, 39}};
    for (const auto& [n, lim] : limits) {
        int d = depth(gen_adder(n));
        expect(d <= lim, "gen_adder(" + std::to_string(n) + ") depth " + std::to_string(d) +
                             " within the published " + std::to_string(lim));
        detail << "    adder n=" << n << ": scheduled depth " << d << " (published " << lim
               << (d == lim ? ", exact match" : "") << ")\n";
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion_mux() {
    Stats m2 = stats(gen_mux(2));
    expect(m2.two_qubit == 6 && m2.ancillae == 1, "gen_mux(2): 6 two-qubit gates, one ancilla");
    expect(stats(gen_mux(4)).two_qubit == 28, "gen_mux(4): 28 gates after expansion");
    expect(predict({FamilyId::Kind::Mux, 4}).two_qubit == 28, "mux formula at n=4");

    for (int n : {2, 4, 8}) {
        Circuit c = gen_mux(n);
        int k = 0;
        while ((1 << k) < n) ++k;
        bool ok = boolean_functional_ok(c, [&](const std::vector<int>& bits) {
            int sel = 0;
            for (int j = 0; j < k; ++j) sel = (sel << 1) | bits[j];
            int chosen = (~sel) & (n - 1);
            std::vector<int> w(c.line_count(), -1);
            w.back() = bits[k + chosen];
            return w;
        });
        expect(ok, "gen_mux(" + std::to_string(n) + ") selects the addressed input");
    }
}

// ---------------------------------------------------------------- criterion 5
void criterion_qft() {
    for (int n = 1; n <= 6; ++n) {
        Stats s = stats(merge_rotations(gen_qft(n)));
        int total = s.one_qubit + s.two_qubit;
        expect(total == n * (n + 1) / 2,
               "gen_qft(" + std::to_string(n) + ") total gates = " + std::to_string(total) +
                   ", want n(n+1)/2 = " + std::to_string(n * (n + 1) / 2));
    }
    for (int n = 2; n <= 5; ++n) {
        Circuit c = gen_qft(n);
        Matrix u = raw_unitary_of(c);
        Matrix ref = qft_reference(n);
        size_t N = size_t{1} << n;
        Matrix expectm(N, std::vector<Complex>(N));
        for (size_t r = 0; r < N; ++r) {
            size_t rev = 0;
            for (int b = 0; b < n; ++b)
                if ((r >> b) & 1) rev |= size_t{1} << (n - 1 - b);
            expectm[rev] = ref[r];
        }
        expect(columns_equal_up_to_phase(u, expectm, kSimTol),
               "gen_qft(" + std::to_string(n) +
                   ") unitary equals the reference DFT up to the documented reversal and the "
                   "per-input phase");
    }
}

// ---------------------------------------------------------------- criterion 6
void criterion_properties() {
    std::mt19937 rng(2024);
    int checked_forms = 0;
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 3);
        Manager m(var_names(n));
        size_t rows = size_t{1} << n;
        std::vector<Angle> t(rows);
        bool boolean_case = iter % 2 == 0;
        for (auto& a : t)
            a = boolean_case ? ((rng() % 2) ? Angle::pi() : Angle::zero()) : random_angle(rng);

        // (a) canonicity + apply-vs-oracle
        Diagram d = m.from_table(t);
        for (std::uint32_t u = 0; u < rows; ++u)
            if (m.eval(d, u) != t[u]) expect(false, "eval round-trips the table");
        std::vector<Angle> boolf(rows), garb(rows);
        for (auto& a : boolf) a = (rng() % 2) ? Angle::pi() : Angle::zero();
        for (auto& a : garb) a = random_angle(rng);
        Angle gm = random_angle(rng);
        Diagram fb = m.from_table(boolf), gg = m.from_table(garb);
        Diagram ap = m.apply(fb, gm, gg);
        std::vector<Angle> oracle(rows);
        for (size_t u = 0; u < rows; ++u) oracle[u] = boolf[u].is_pi() ? garb[u] + gm : garb[u];
        if (ap != m.from_table(oracle)) expect(false, "apply equals the pointwise oracle");

        // (b) bi-decomposition guarantees at every step along factor()
        std::function<FactoredForm(const Diagram&)> fac = [&](const Diagram& dd) -> FactoredForm {
            if (auto cas = m.to_cascade(dd)) return FactoredForm::make_leaf(std::move(*cas));
            int vk = *m.lowest_rnonlinear(dd);
            int deg = m.r_degree(dd, vk);
            BiDecomposition bd = bi_decompose(m, dd);
            if (m.apply(bd.g1, bd.gamma, bd.h) != dd) expect(false, "recomposition identity");
            if (!m.is_boolean(bd.g1)) expect(false, "g1 Boolean");
            for (int v = vk + 1; v < n; ++v) {
                if (m.count_nodes_with_var(bd.g1, v).first != 0)
                    expect(false, "control independent of trailing variables");
                if (m.r_degree(bd.h, v) != 0) expect(false, "trailing variables r-linear in the residual");
            }
            if (m.r_degree(bd.g1, vk) != 0) expect(false, "pivot r-linear in the control");
            if (m.r_degree(bd.h, vk) > deg - 1) expect(false, "pivot r-degree strictly descends");
            return FactoredForm::make_bi(fac(bd.g1), bd.gamma, fac(bd.h));
        };
        FactoredForm ff = fac(d);
        for (std::uint32_t u = 0; u < rows; ++u)
            if (eval_form(ff, u, n) != t[u]) expect(false, "factored form evaluates the table");

        // (c) compile master property
        CompileResult res = compile(m, ff, CompileOptions{true, true}, "f");
        ++checked_forms;
        int L = res.circuit.line_count();
        for (std::uint32_t u = 0; u < rows; ++u) {
            std::vector<int> bits(L, 0);
            for (int v = 0; v < n; ++v) bits[v] = (u >> (n - 1 - v)) & 1;
            StateVector folded = run(res.circuit, bits);
            int width = L;
            for (int l = L - 1; l >= 0; --l) {
                StateVector e;
                if (l == res.target) {
                    Matrix rx = rotation_matrix(Axis::X, eval_form(ff, u, n));
                    e = {rx[0][0], rx[1][0]};
                } else if (res.circuit.lines[l].restore) {
                    e = hat_state(bits[l]);
                } else {
                    continue;
                }
                folded = contract(folded, l, width, e);
                --width;
            }
            double norm = 0;
            for (const Complex& a : folded) norm += std::norm(a);
            if (std::abs(std::sqrt(norm) - 1.0) > kSimTol) {
                expect(false, "compile master property (simulation matches eval_form)");
                break;
            }
        }
    }
    detail << "    " << checked_forms << " random factored forms compiled and simulated\n";

    // (d) pass safety on <= 8 lines, over circuits shaped like the toolkit's
    // output: control lines are only read, so controls stay basis states and
    // pass identities hold per input
    std::mt19937 rng2(7);
    for (int iter = 0; iter < 10; ++iter) {
        Circuit c;
        for (int i = 0; i < 8; ++i) c.add_input("q" + std::to_string(i), false);
        for (int g = 0; g < 40; ++g) {
            int t = 4 + static_cast<int>(rng2() % 4);
            int ctl = static_cast<int>(rng2() % 5);
            c.push(rng2() % 2 ? Axis::X : Axis::Z, Angle(1 + (long)(rng2() % 7), 4), t,
                   ctl == 4 ? -1 : ctl);
        }
        Matrix u = unitary_of(c);
        expect(columns_equal_up_to_phase(unitary_of(merge_rotations(c)), u, kSimTol),
               "merge_rotations preserves the unitary up to per-input phase");
        Circuit comp = c;
        for (const Gate& g : inverse(c).gates) comp.gates.push_back(g);
        expect(columns_equal_up_to_phase(unitary_of(comp), identity_matrix(u.size()), kSimTol),
               "inverse composes to the identity up to per-input phase");
        expect(depth(c) <= static_cast<int>(c.gates.size()), "depth bounded by gate count");
    }
}

// ---------------------------------------------------------------- criterion 7
void criterion_context_numbers() {
    // External constructions are reported as context only, never recomputed:
    // multi-control Toffoli without ancilla: 2^{n+1}-3 or 48n^2+O(n) two-qubit
    // gates in prior work; ripple adders: depth 6n-2 elsewhere. No checks.
    detail << "    context only: prior-work counts (2^{n+1}-3, 48n^2+O(n), depth 6n-2) are\n"
              "    quoted for comparison and deliberately not recomputed here\n";
}

struct Criterion {
    const char* name;
    void (*fn)();
};

const Criterion kCriteria[] = {
    {"multi-control Toffoli counts and unitaries", criterion_toffoli},
    {"generic synthesis agreement on s = abc^d", criterion_generic_agreement},
    {"ripple adder counts, sums and depth", criterion_adder},
    {"multiplexer counts and selection", criterion_mux},
    {"QFT gate count and unitary", criterion_qft},
    {"property suites (canonicity, bi-decomposition, compile, passes)", criterion_properties},
    {"prior-work numbers are context only", criterion_context_numbers},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[i + 1]);

    int failures = 0;
    for (int i = 0; i < 7; ++i) {
        if (only && only != i + 1) continue;
        checks_failed = 0;
        detail.str("");
        try {
            kCriteria[i].fn();
        } catch (const std::exception& e) {
            ++checks_failed;
            detail << "    exception: " << e.what() << "\n";
        }
        bool ok = checks_failed == 0;
        std::cout << "criterion " << (i + 1) << ": " << (ok ? "PASS" : "FAIL") << " - "
                  << kCriteria[i].name << "\n"
                  << detail.str();
        if (!ok) ++failures;
    }
    return failures;
}
