#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qldm {

// Exact dense statevector over n qubits, amplitudes indexed little-endian:
// bit k of the basis index is the state of qubit k.
struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps;

    StateVector() = default;
    StateVector(int n, std::vector<std::complex<double>> a);

    // |0...0>
    static StateVector zero(int n_qubits);

    std::size_t dim() const { return amps.size(); }
};

enum class GateKind { RX, RY, RZ, CNOT };

struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1;   // CNOT only
    double angle = 0.0; // rotation gates only

    static Gate rx(int target, double angle) { return {GateKind::RX, target, -1, angle}; }
    static Gate ry(int target, double angle) { return {GateKind::RY, target, -1, angle}; }
    static Gate rz(int target, double angle) { return {GateKind::RZ, target, -1, angle}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }
};

enum class Basis { Z, X };

struct Observable {
    Basis basis;
    int qubit;
};

double norm(const StateVector& state);

// In-place kernel; strided amplitude pairs, disjoint writes (OpenMP-safe).
void apply_gate_inplace(StateVector& state, const Gate& gate);

// Value-semantics front: the input is untouched, a transformed copy returns.
StateVector apply_gate(StateVector state, const Gate& gate);

// <psi|O|psi>; imaginary part cancels analytically, only the real part is formed.
double expectation(const StateVector& state, const Observable& obs);

// Per-qubit expectations in the given basis.
std::vector<double> measure_all(const StateVector& state, Basis basis);

}  // namespace qldm
