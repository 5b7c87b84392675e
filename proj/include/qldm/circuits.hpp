#pragma once

#include <cstddef>
#include <vector>

#include "qldm/linalg.hpp"
#include "qldm/statevector.hpp"

namespace qldm {

// Basic: one RX per qubit per layer. Expressive: RX, RZ, RX per qubit per layer.
enum class AnsatzKind { Basic, Expressive };

enum class Entanglement { Linear, Circular };

struct CircuitSpec {
    int n_qubits = 0;
    AnsatzKind ansatz = AnsatzKind::Basic;
    int depth = 1;
    Basis observable_basis = Basis::Z;
    Entanglement entanglement = Entanglement::Circular;
};

// Trainable angles, layer-major, then qubit, then (Expressive) slot {RX, RZ, RX}.
std::size_t param_count(const CircuitSpec& spec);

// Builds the full gate list: angle encoding (one RY per qubit, angle = input
// value), then `depth` layers of rotation block + CNOT entangler ladder.
std::vector<Gate> build_gates(const CircuitSpec& spec, const std::vector<double>& params,
                              const std::vector<double>& input);

// Runs the circuit from |0...0> and measures every qubit in the spec's basis.
std::vector<double> evaluate(const CircuitSpec& spec, const std::vector<double>& params,
                             const std::vector<double>& input);

// Exact Jacobian d f_i / d theta_j via the shift rule: each entry is
// (f_i(theta_j + pi/2) - f_i(theta_j - pi/2)) / 2. Columns evaluate in parallel.
Matrix param_shift_grad(const CircuitSpec& spec, const std::vector<double>& params,
                        const std::vector<double>& input);

// Same rule applied to the encoding angles; exact because encoding gates are
// rotations. Needed to chain gradients through stacked circuits.
Matrix input_shift_grad(const CircuitSpec& spec, const std::vector<double>& params,
                        const std::vector<double>& input);

// Cumulative circuit depth: 1 + (1 + n) * l for Basic, 1 + 3 n l for Expressive.
int report_depth(const CircuitSpec& spec);

}  // namespace qldm
