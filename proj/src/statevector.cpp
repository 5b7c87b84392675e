#include "qldm/statevector.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "qldm/errors.hpp"

namespace qldm {

namespace {

constexpr int kMaxQubits = 14;

// Below this dimension the OpenMP fork costs more than the loop.
constexpr std::int64_t kOmpMinDim = std::int64_t{1} << 11;

void check_qubit(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits)
        throw ContractError(std::string(what) + ": qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(state.n_qubits) + " qubits");
}

// Generic single-qubit 2x2 kernel, unpacked to real arithmetic. Indices are
// enumerated so each (i0, i1) pair is visited exactly once; writes are
// disjoint, so the parallel loop needs no synchronization.
void apply_single_qubit(StateVector& state, int q, double u00r, double u00i, double u01r,
                        double u01i, double u10r, double u10i, double u11r, double u11i) {
    const std::int64_t dim = static_cast<std::int64_t>(state.dim());
    const std::int64_t mask = std::int64_t{1} << q;
    const std::int64_t low = mask - 1;
    auto* a = state.amps.data();

#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
    for (std::int64_t j = 0; j < dim / 2; ++j) {
        const std::int64_t i0 = ((j & ~low) << 1) | (j & low);
        const std::int64_t i1 = i0 | mask;
        const double a0r = a[i0].real(), a0i = a[i0].imag();
        const double a1r = a[i1].real(), a1i = a[i1].imag();
        a[i0] = {u00r * a0r - u00i * a0i + u01r * a1r - u01i * a1i,
                 u00r * a0i + u00i * a0r + u01r * a1i + u01i * a1r};
        a[i1] = {u10r * a0r - u10i * a0i + u11r * a1r - u11i * a1i,
                 u10r * a0i + u10i * a0r + u11r * a1i + u11i * a1r};
    }
}

}  // namespace

StateVector::StateVector(int n, std::vector<std::complex<double>> a)
    : n_qubits(n), amps(std::move(a)) {
    if (n < 1 || n > kMaxQubits)
        throw ContractError("StateVector: n_qubits must be in 1..14, got " + std::to_string(n));
    if (amps.size() != (std::size_t{1} << n))
        throw ContractError("StateVector: amplitude count does not match 2^n_qubits");
}

StateVector StateVector::zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw ContractError("StateVector: n_qubits must be in 1..14, got " +
                            std::to_string(n_qubits));
    std::vector<std::complex<double>> a(std::size_t{1} << n_qubits, {0.0, 0.0});
    a[0] = {1.0, 0.0};
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps = std::move(a);
    return s;
}

double norm(const StateVector& state) {
    // serial reduction: cheap at <= 14 qubits and bit-stable across thread counts
    double s = 0.0;
    for (const auto& a : state.amps) s += a.real() * a.real() + a.imag() * a.imag();
    return std::sqrt(s);
}

void apply_gate_inplace(StateVector& state, const Gate& gate) {
    check_qubit(state, gate.target, "apply_gate");
    if (gate.kind == GateKind::CNOT) {
        check_qubit(state, gate.control, "apply_gate");
        if (gate.control == gate.target)
            throw ContractError("apply_gate: CNOT control and target must differ");

        const std::int64_t dim = static_cast<std::int64_t>(state.dim());
        const std::int64_t cmask = std::int64_t{1} << gate.control;
        const std::int64_t tmask = std::int64_t{1} << gate.target;
        auto* a = state.amps.data();
        // swap the target pair wherever the control bit is set
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
        for (std::int64_t i = 0; i < dim; ++i) {
            if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
        }
        return;
    }

    const double half = gate.angle * 0.5;
    const double c = std::cos(half);
    const double s = std::sin(half);
    switch (gate.kind) {
        case GateKind::RX:
            // [[c, -i s], [-i s, c]]
            apply_single_qubit(state, gate.target, c, 0, 0, -s, 0, -s, c, 0);
            break;
        case GateKind::RY:
            // [[c, -s], [s, c]]
            apply_single_qubit(state, gate.target, c, 0, -s, 0, s, 0, c, 0);
            break;
        case GateKind::RZ: {
            // diag(e^{-i half}, e^{+i half})
            const std::int64_t dim = static_cast<std::int64_t>(state.dim());
            const std::int64_t mask = std::int64_t{1} << gate.target;
            auto* a = state.amps.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
            for (std::int64_t i = 0; i < dim; ++i) {
                const double ar = a[i].real(), ai = a[i].imag();
                if (i & mask)
                    a[i] = {c * ar - s * ai, c * ai + s * ar};
                else
                    a[i] = {c * ar + s * ai, c * ai - s * ar};
            }
            break;
        }
        case GateKind::CNOT:
            break;  // handled above
    }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    apply_gate_inplace(state, gate);
    return state;
}

double expectation(const StateVector& state, const Observable& obs) {
    check_qubit(state, obs.qubit, "expectation");
    const std::int64_t dim = static_cast<std::int64_t>(state.dim());
    const std::int64_t mask = std::int64_t{1} << obs.qubit;
    const auto* a = state.amps.data();
    double sum = 0.0;
    if (obs.basis == Basis::Z) {
        // sum |a_i|^2 * (+1 / -1) by the qubit's bit
        for (std::int64_t i = 0; i < dim; ++i) {
            const double p = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
            sum += (i & mask) ? -p : p;
        }
    } else {
        // <X_q> = 2 Re sum_{i: bit=0} conj(a_i) a_{i|mask}
        const std::int64_t low = mask - 1;
        for (std::int64_t j = 0; j < dim / 2; ++j) {
            const std::int64_t i0 = ((j & ~low) << 1) | (j & low);
            const std::int64_t i1 = i0 | mask;
            sum += 2.0 * (a[i0].real() * a[i1].real() + a[i0].imag() * a[i1].imag());
        }
    }
    return sum;
}

std::vector<double> measure_all(const StateVector& state, Basis basis) {
    std::vector<double> out(static_cast<std::size_t>(state.n_qubits));
    for (int q = 0; q < state.n_qubits; ++q) out[q] = expectation(state, {basis, q});
    return out;
}

}  // namespace qldm
