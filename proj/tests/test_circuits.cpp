#include <doctest.h>

#include <cmath>

#include "qldm/circuits.hpp"
#include "qldm/errors.hpp"
#include "reference.hpp"
#include "testutil.hpp"

using namespace qldm;

namespace {

CircuitSpec make_spec(int n, AnsatzKind ansatz, int depth, Basis basis,
                      Entanglement ent = Entanglement::Circular) {
    return CircuitSpec{n, ansatz, depth, basis, ent};
}

CircuitSpec random_spec(std::mt19937_64& g, int max_qubits = 4) {
    CircuitSpec spec;
    spec.n_qubits = 1 + static_cast<int>(bounded(g, static_cast<std::uint64_t>(max_qubits)));
    spec.ansatz = bounded(g, 2) ? AnsatzKind::Expressive : AnsatzKind::Basic;
    spec.depth = 1 + static_cast<int>(bounded(g, 3));
    spec.observable_basis = bounded(g, 2) ? Basis::X : Basis::Z;
    spec.entanglement = bounded(g, 2) ? Entanglement::Circular : Entanglement::Linear;
    return spec;
}

std::vector<double> random_values(std::mt19937_64& g, std::size_t n, double scale = M_PI) {
    std::vector<double> v(n);
    for (auto& x : v) x = (2.0 * uniform01(g) - 1.0) * scale;
    return v;
}

}  // namespace

TEST_CASE("parameter counts follow the ansatz formulas") {
    CHECK(param_count(make_spec(10, AnsatzKind::Basic, 4, Basis::Z)) == 40);
    CHECK(param_count(make_spec(10, AnsatzKind::Expressive, 3, Basis::Z)) == 90);
    CHECK(param_count(make_spec(10, AnsatzKind::Expressive, 4, Basis::Z)) == 120);
}

TEST_CASE("identity circuit on |0...0>") {
    const auto spec = make_spec(4, AnsatzKind::Basic, 2, Basis::Z);
    const std::vector<double> zeros(4, 0.0);
    const std::vector<double> params(param_count(spec), 0.0);
    for (double v : evaluate(spec, params, zeros)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    const auto spec_x = make_spec(4, AnsatzKind::Basic, 2, Basis::X);
    for (double v : evaluate(spec_x, params, zeros))
        CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single-qubit analytic response") {
    const auto spec = make_spec(1, AnsatzKind::Basic, 1, Basis::Z);
    const auto out = evaluate(spec, {0.7}, {0.0});
    CHECK(out[0] == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
}

TEST_CASE("param shift on cos gives -sin") {
    const auto spec = make_spec(1, AnsatzKind::Basic, 1, Basis::Z);
    const auto jac = param_shift_grad(spec, {M_PI / 2.0}, {0.0});
    REQUIRE(jac.rows == 1);
    REQUIRE(jac.cols == 1);
    CHECK(jac(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("all-zero circuit sits at a stationary point") {
    const auto spec = make_spec(3, AnsatzKind::Basic, 2, Basis::Z);
    const std::vector<double> params(param_count(spec), 0.0);
    const auto jac = param_shift_grad(spec, params, {0.0, 0.0, 0.0});
    for (double v : jac.v) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("input shift on the encoding gives -sin") {
    const auto spec = make_spec(1, AnsatzKind::Basic, 1, Basis::Z);
    const auto jac = input_shift_grad(spec, {0.0}, {0.3});
    CHECK(jac(0, 0) == doctest::Approx(-std::sin(0.3)).epsilon(1e-12));

    const auto zero_jac = input_shift_grad(spec, {0.0}, {0.0});
    CHECK(zero_jac(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("shift-rule jacobians match finite differences on 50 random instances") {
    auto g = make_stream(3, RngStream::ParamInit);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = random_spec(g);
        const auto params = random_values(g, param_count(spec));
        const auto input = random_values(g, static_cast<std::size_t>(spec.n_qubits), 1.5);

        const auto jp = param_shift_grad(spec, params, input);
        const auto fd_p = reference::finite_diff_jacobian(
            [&](const std::vector<double>& p) { return evaluate(spec, p, input); }, params, 1e-5);
        for (std::size_t i = 0; i < jp.rows; ++i)
            for (std::size_t j = 0; j < jp.cols; ++j)
                CHECK(std::abs(jp(i, j) - fd_p[i][j]) < 1e-8);

        const auto jx = input_shift_grad(spec, params, input);
        const auto fd_x = reference::finite_diff_jacobian(
            [&](const std::vector<double>& x) { return evaluate(spec, params, x); }, input, 1e-5);
        for (std::size_t i = 0; i < jx.rows; ++i)
            for (std::size_t j = 0; j < jx.cols; ++j)
                CHECK(std::abs(jx(i, j) - fd_x[i][j]) < 1e-8);
    }
}

TEST_CASE("outputs stay in [-1, 1] and are bit-reproducible") {
    auto g = make_stream(9, RngStream::ParamInit);
    for (int trial = 0; trial < 30; ++trial) {
        const auto spec = random_spec(g, 5);
        const auto params = random_values(g, param_count(spec));
        const auto input = random_values(g, static_cast<std::size_t>(spec.n_qubits), 3.0);
        const auto out1 = evaluate(spec, params, input);
        const auto out2 = evaluate(spec, params, input);
        for (std::size_t i = 0; i < out1.size(); ++i) {
            CHECK(out1[i] >= -1.0 - 1e-12);
            CHECK(out1[i] <= 1.0 + 1e-12);
            CHECK(out1[i] == out2[i]);  // bit-identical
        }
    }
}

TEST_CASE("report_depth reproduces the cumulative depth formulas") {
    CHECK(report_depth(make_spec(10, AnsatzKind::Basic, 4, Basis::Z)) == 45);
    CHECK(report_depth(make_spec(10, AnsatzKind::Expressive, 4, Basis::Z)) == 121);
    CHECK(report_depth(make_spec(1, AnsatzKind::Basic, 1, Basis::Z)) == 3);
}

TEST_CASE("entanglement patterns differ as specified") {
    // circular adds one CNOT per layer over linear (for n >= 2)
    const auto lin = make_spec(3, AnsatzKind::Basic, 2, Basis::Z, Entanglement::Linear);
    const auto circ = make_spec(3, AnsatzKind::Basic, 2, Basis::Z, Entanglement::Circular);
    const std::vector<double> params(param_count(lin), 0.0);
    const std::vector<double> input(3, 0.0);
    const auto g_lin = build_gates(lin, params, input);
    const auto g_circ = build_gates(circ, params, input);
    CHECK(g_circ.size() == g_lin.size() + 2);
}

TEST_CASE("length mismatches are contract violations") {
    const auto spec = make_spec(2, AnsatzKind::Basic, 1, Basis::Z);
    CHECK_THROWS_AS(evaluate(spec, {0.0}, {0.0, 0.0}), ContractError);
    CHECK_THROWS_AS(evaluate(spec, {0.0, 0.0}, {0.0}), ContractError);
    CHECK_THROWS_AS(param_shift_grad(spec, {0.0}, {0.0, 0.0}), ContractError);
}
