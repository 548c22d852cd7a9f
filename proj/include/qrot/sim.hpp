#pragma once

#include "qrot/circuit.hpp"

#include <complex>
#include <vector>

namespace qrot {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;
using Matrix = std::vector<std::vector<Complex>>;  // row-major

constexpr int kMaxSimLines = 12;
constexpr double kSimTol = 1e-9;

/// Hat basis: 0̂ = (1, 0), 1̂ = Rx(pi) 0̂ = (0, -i).
StateVector hat_state(int bit);

/// 2x2 rotation matrix for the gate axis at an exact angle.
Matrix rotation_matrix(Axis axis, const Angle& theta);

/// Line 0 is the most significant tensor factor.
enum class InputBasis { Hat, Computational };

/// Apply one gate in place.
void apply_gate(const Circuit& c, const Gate& g, StateVector& psi);

/// Simulate on the given bit assignment (one bit per line; ancilla bits are
/// forced to 0). Inputs are prepared in the hat basis unless stated otherwise.
StateVector run(const Circuit& c, const std::vector<int>& bits,
                InputBasis basis = InputBasis::Hat);

/// Circuit matrix in hat-basis coordinates: entry (i, j) = <hat_i|C|hat_j>.
/// Guarded to kMaxSimLines lines.
Matrix unitary_of(const Circuit& c);
/// Raw computational-basis matrix of the gate product.
Matrix raw_unitary_of(const Circuit& c);

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol);
/// Columns equal up to an independent phase each (the unobservable
/// per-input phase e^{i delta(U)}).
bool columns_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol);

Matrix hat_transform(bool inverse);  // M = diag(1, -i), M^-1 = diag(1, i)

struct BlochAngles {
    Angle theta;
    Angle gamma;
    double delta = 0.0;  // global phase, radians; discarded at emission
};

/// Decompose a normalized amplitude pair as e^{i delta} Rz(gamma) Rx(theta) 0̂,
/// snapping theta and gamma to rational multiples of pi (denominator <= 4096).
BlochAngles bloch_extract(Complex f0, Complex f1);

/// Standard DFT matrix, entries omega^{jk}/sqrt(N).
Matrix qft_reference(int n);

double max_deviation(const StateVector& a, const StateVector& b);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix identity_matrix(size_t n);

}  // namespace qrot
