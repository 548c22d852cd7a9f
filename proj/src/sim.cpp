#include "qrot/sim.hpp"

#include <cmath>
#include <numbers>

namespace qrot {

namespace {
constexpr Complex I{0.0, 1.0};
}

StateVector hat_state(int bit) {
    if (bit)
        return {Complex(0, 0), Complex(0, -1)};
    return {Complex(1, 0), Complex(0, 0)};
}

Matrix rotation_matrix(Axis axis, const Angle& theta) {
    double half = theta.radians() / 2.0;
    if (axis == Axis::X) {
        Complex c{std::cos(half), 0}, s{0, -std::sin(half)};
        return {{c, s}, {s, c}};
    }
    return {{std::exp(-I * half), 0.0}, {0.0, std::exp(I * half)}};
}

void apply_gate(const Circuit& c, const Gate& g, StateVector& psi) {
    int L = c.line_count();
    Matrix u = rotation_matrix(g.axis, g.angle);
    size_t tbit = size_t{1} << (L - 1 - g.target);
    size_t cbit = g.control >= 0 ? size_t{1} << (L - 1 - g.control) : 0;
    for (size_t i = 0; i < psi.size(); ++i) {
        if (i & tbit) continue;          // visit each target pair once, from its 0 half
        if (cbit && !(i & cbit)) continue;  // control must be set
        size_t j = i | tbit;
        Complex a0 = psi[i], a1 = psi[j];
        psi[i] = u[0][0] * a0 + u[0][1] * a1;
        psi[j] = u[1][0] * a0 + u[1][1] * a1;
    }
}

StateVector run(const Circuit& c, const std::vector<int>& bits, InputBasis basis) {
    int L = c.line_count();
    if (L > kMaxSimLines) throw SimError("simulation limited to 12 lines");
    if (static_cast<int>(bits.size()) != L) throw SimError("assignment must cover every line");
    size_t index = 0;
    Complex amp{1, 0};
    for (int l = 0; l < L; ++l) {
        int b = c.lines[l].kind == Line::Kind::Ancilla ? 0 : bits[l];
        if (b) {
            index |= size_t{1} << (L - 1 - l);
            if (basis == InputBasis::Hat) amp *= Complex(0, -1);
        }
    }
    StateVector psi(size_t{1} << L, Complex(0, 0));
    psi[index] = amp;
    for (const Gate& g : c.gates) apply_gate(c, g, psi);
    return psi;
}

Matrix raw_unitary_of(const Circuit& c) {
    int L = c.line_count();
    if (L > kMaxSimLines) throw SimError("unitary extraction limited to 12 lines");
    size_t N = size_t{1} << L;
    Matrix u(N, std::vector<Complex>(N, Complex(0, 0)));
    for (size_t col = 0; col < N; ++col) {
        StateVector psi(N, Complex(0, 0));
        psi[col] = Complex(1, 0);
        for (const Gate& g : c.gates) apply_gate(c, g, psi);
        for (size_t row = 0; row < N; ++row) u[row][col] = psi[row];
    }
    return u;
}

Matrix unitary_of(const Circuit& c) {
    int L = c.line_count();
    Matrix u = raw_unitary_of(c);
    size_t N = size_t{1} << L;
    // conjugate by the hat encoding E = M^{(x)L}: result = E^dag U E
    auto weight = [&](size_t z) { return __builtin_popcountll(z); };
    for (size_t row = 0; row < N; ++row)
        for (size_t col = 0; col < N; ++col) {
            Complex f = u[row][col];
            // column: input hat_col has factor (-i)^{|col|}; row: <hat_row| gives (+i)^{|row|}
            int k = ((weight(col) - weight(row)) % 4 + 4) % 4;
            static const Complex ph[4] = {Complex(1, 0), Complex(0, -1), Complex(-1, 0),
                                          Complex(0, 1)};
            u[row][col] = f * ph[k];
        }
    return u;
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.size() != b.size()) return false;
    size_t n = a.size();
    double best = 0;
    Complex phase{1, 0};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double m = std::abs(b[i][j]);
            if (m > best) {
                best = m;
                if (std::abs(a[i][j]) > 1e-300) phase = a[i][j] / b[i][j];
            }
        }
    if (best == 0) return true;
    phase /= std::abs(phase);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (std::abs(a[i][j] - phase * b[i][j]) > tol) return false;
    return true;
}

bool columns_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.size() != b.size()) return false;
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        Complex phase{1, 0};
        double best = 0;
        for (size_t row = 0; row < n; ++row) {
            double m = std::abs(b[row][col]);
            if (m > best && std::abs(a[row][col]) > 1e-300) {
                best = m;
                phase = a[row][col] / b[row][col];
            }
        }
        if (best == 0) {
            for (size_t row = 0; row < n; ++row)
                if (std::abs(a[row][col]) > tol) return false;
            continue;
        }
        phase /= std::abs(phase);
        for (size_t row = 0; row < n; ++row)
            if (std::abs(a[row][col] - phase * b[row][col]) > tol) return false;
    }
    return true;
}

Matrix hat_transform(bool inverse) {
    return {{Complex(1, 0), 0.0}, {0.0, inverse ? Complex(0, 1) : Complex(0, -1)}};
}

namespace {

// Snap a radian value to the nearest p*pi/q with q <= 4096; error when no
// candidate lands within tolerance.
Angle snap_to_pi_fraction(double radians) {
    double t = radians / std::numbers::pi;  // target in units of pi
    t = std::remainder(t, 2.0);
    for (long den = 1; den <= 4096; den *= 2) {
        double scaled = t * static_cast<double>(den);
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) * std::numbers::pi / den <= kSimTol)
            return Angle(static_cast<long>(rounded), den);
    }
    // non-dyadic but small denominators (e.g. pi/3) still snap exactly
    for (long den = 3; den <= 4096; ++den) {
        double scaled = t * static_cast<double>(den);
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) * std::numbers::pi / den <= kSimTol)
            return Angle(static_cast<long>(rounded), den);
    }
    throw SimError("angle " + std::to_string(radians) + " rad is not a rational multiple of pi");
}

}  // namespace

BlochAngles bloch_extract(Complex f0, Complex f1) {
    double norm = std::norm(f0) + std::norm(f1);
    if (std::abs(norm - 1.0) > kSimTol) throw SimError("bloch_extract: input is not normalized");
    double cos_half = std::abs(f0), sin_half = std::abs(f1);
    double theta = 2.0 * std::atan2(sin_half, cos_half);

    BlochAngles res;
    res.theta = snap_to_pi_fraction(theta);
    if (cos_half <= kSimTol) {
        // f0 = 0: gamma absorbed into delta up to sign; fix gamma = 0
        res.gamma = Angle();
        res.delta = std::arg(f1) + std::numbers::pi / 2.0;
    } else if (sin_half <= kSimTol) {
        res.gamma = Angle();
        res.delta = std::arg(f0);
    } else {
        double a0 = std::arg(f0);           // delta - gamma/2
        double a1 = std::arg(f1 * I);       // delta + gamma/2
        res.gamma = snap_to_pi_fraction(a1 - a0);
        res.delta = std::remainder(a0 + res.gamma.radians() / 2.0, 2.0 * std::numbers::pi);
    }
    return res;
}

Matrix qft_reference(int n) {
    size_t N = size_t{1} << n;
    Matrix u(N, std::vector<Complex>(N));
    double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (size_t j = 0; j < N; ++j)
        for (size_t k = 0; k < N; ++k) {
            double phi = 2.0 * std::numbers::pi * static_cast<double>(j * k % N) /
                         static_cast<double>(N);
            u[j][k] = scale * std::exp(I * phi);
        }
    return u;
}

double max_deviation(const StateVector& a, const StateVector& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    size_t n = a.size();
    Matrix r(n, std::vector<Complex>(n, Complex(0, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            Complex aik = a[i][k];
            if (aik == Complex(0, 0)) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

Matrix identity_matrix(size_t n) {
    Matrix r(n, std::vector<Complex>(n, Complex(0, 0)));
    for (size_t i = 0; i < n; ++i) r[i][i] = Complex(1, 0);
    return r;
}

}  // namespace qrot
