#include "qldm/circuits.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "qldm/errors.hpp"

namespace qldm {

namespace {

void check_spec(const CircuitSpec& spec, const std::vector<double>& params,
                const std::vector<double>& input) {
    if (spec.depth < 1) throw ContractError("circuit: depth must be >= 1");
    if (spec.n_qubits < 1) throw ContractError("circuit: n_qubits must be >= 1");
    if (input.size() != static_cast<std::size_t>(spec.n_qubits))
        throw ContractError("circuit: input length " + std::to_string(input.size()) +
                            " != n_qubits " + std::to_string(spec.n_qubits));
    if (params.size() != param_count(spec))
        throw ContractError("circuit: parameter vector length " + std::to_string(params.size()) +
                            " != expected " + std::to_string(param_count(spec)));
}

void append_entangler(std::vector<Gate>& gates, const CircuitSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2) return;  // nothing to entangle
    for (int q = 0; q + 1 < n; ++q) gates.push_back(Gate::cnot(q, q + 1));
    if (spec.entanglement == Entanglement::Circular) gates.push_back(Gate::cnot(n - 1, 0));
}

}  // namespace

std::size_t param_count(const CircuitSpec& spec) {
    const std::size_t per_layer = static_cast<std::size_t>(spec.n_qubits) *
                                  (spec.ansatz == AnsatzKind::Expressive ? 3 : 1);
    return per_layer * static_cast<std::size_t>(spec.depth);
}

std::vector<Gate> build_gates(const CircuitSpec& spec, const std::vector<double>& params,
                              const std::vector<double>& input) {
    check_spec(spec, params, input);
    const int n = spec.n_qubits;
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(n) * (1 + 4 * spec.depth));

    // angle encoding on RY keeps the zero-parameter Z response at cos(x_i)
    for (int q = 0; q < n; ++q) gates.push_back(Gate::ry(q, input[q]));

    std::size_t p = 0;
    for (int layer = 0; layer < spec.depth; ++layer) {
        if (spec.ansatz == AnsatzKind::Basic) {
            for (int q = 0; q < n; ++q) gates.push_back(Gate::rx(q, params[p++]));
        } else {
            for (int q = 0; q < n; ++q) {
                gates.push_back(Gate::rx(q, params[p++]));
                gates.push_back(Gate::rz(q, params[p++]));
                gates.push_back(Gate::rx(q, params[p++]));
            }
        }
        append_entangler(gates, spec);
    }
    return gates;
}

std::vector<double> evaluate(const CircuitSpec& spec, const std::vector<double>& params,
                             const std::vector<double>& input) {
    const auto gates = build_gates(spec, params, input);
    StateVector state = StateVector::zero(spec.n_qubits);
    for (const auto& g : gates) apply_gate_inplace(state, g);
    return measure_all(state, spec.observable_basis);
}

namespace {

// Shared shift-rule driver: perturbs entry j of `shifted` (a copy of either
// params or input), evaluates at +-pi/2, one Jacobian column per entry.
template <bool ShiftParams>
Matrix shift_jacobian(const CircuitSpec& spec, const std::vector<double>& params,
                      const std::vector<double>& input) {
    check_spec(spec, params, input);
    const std::size_t n_out = static_cast<std::size_t>(spec.n_qubits);
    const std::size_t n_cols = ShiftParams ? params.size() : input.size();
    Matrix jac(n_out, n_cols);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n_cols); ++j) {
        std::vector<double> shifted = ShiftParams ? params : input;
        const double original = shifted[j];

        shifted[j] = original + M_PI / 2.0;
        const auto plus = ShiftParams ? evaluate(spec, shifted, input)
                                      : evaluate(spec, params, shifted);
        shifted[j] = original - M_PI / 2.0;
        const auto minus = ShiftParams ? evaluate(spec, shifted, input)
                                       : evaluate(spec, params, shifted);

        for (std::size_t i = 0; i < n_out; ++i)
            jac(i, static_cast<std::size_t>(j)) = 0.5 * (plus[i] - minus[i]);
    }
    return jac;
}

}  // namespace

Matrix param_shift_grad(const CircuitSpec& spec, const std::vector<double>& params,
                        const std::vector<double>& input) {
    return shift_jacobian<true>(spec, params, input);
}

Matrix input_shift_grad(const CircuitSpec& spec, const std::vector<double>& params,
                        const std::vector<double>& input) {
    return shift_jacobian<false>(spec, params, input);
}

int report_depth(const CircuitSpec& spec) {
    if (spec.ansatz == AnsatzKind::Basic) return 1 + (1 + spec.n_qubits) * spec.depth;
    return 1 + 3 * spec.n_qubits * spec.depth;
}

}  // namespace qldm
