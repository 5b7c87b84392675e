#include <doctest.h>

#include <cmath>
#include <complex>

#include "qldm/errors.hpp"
#include "qldm/statevector.hpp"
#include "reference.hpp"
#include "testutil.hpp"

using namespace qldm;
using testutil::random_gates;
using testutil::random_state;

TEST_CASE("rx(pi) flips |0> to -i|1>") {
    auto s = apply_gate(StateVector::zero(1), Gate::rx(0, M_PI));
    CHECK(std::abs(s.amps[0]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.amps[1].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.amps[1].imag() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(expectation(s, {Basis::Z, 0}) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("rx(0) is the identity") {
    auto g = make_stream(1, RngStream::ParamInit);
    const auto before = random_state(g, 3);
    const auto after = apply_gate(before, Gate::rx(1, 0.0));
    for (std::size_t i = 0; i < before.dim(); ++i)
        CHECK(std::abs(after.amps[i] - before.amps[i]) < 1e-15);
}

TEST_CASE("apply_gate leaves its input untouched") {
    const auto before = StateVector::zero(2);
    const auto copy = before;
    (void)apply_gate(before, Gate::ry(0, 1.2));
    for (std::size_t i = 0; i < before.dim(); ++i) CHECK(before.amps[i] == copy.amps[i]);
}

TEST_CASE("cnot completes the bell pair") {
    // (|00> + |10>)/sqrt2, control qubit 0 -> (|00> + |11>)/sqrt2
    const double r = 1.0 / std::sqrt(2.0);
    StateVector s(2, {{r, 0}, {r, 0}, {0, 0}, {0, 0}});
    s = apply_gate(s, Gate::cnot(0, 1));
    CHECK(s.amps[0].real() == doctest::Approx(r).epsilon(1e-12));
    CHECK(std::abs(s.amps[1]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(s.amps[2]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.amps[3].real() == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("computational-basis expectations") {
    const auto s = StateVector::zero(1);
    CHECK(expectation(s, {Basis::Z, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(s, {Basis::X, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rx rotation gives cos(theta) on Z") {
    const auto s = apply_gate(StateVector::zero(1), Gate::rx(0, 0.7));
    CHECK(expectation(s, {Basis::Z, 0}) ==
          doctest::Approx(0.76484218728448843).epsilon(1e-12));
}

TEST_CASE("measure_all on |0...0>") {
    const auto s = StateVector::zero(4);
    for (double v : measure_all(s, Basis::Z)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : measure_all(s, Basis::X)) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bell pair has zero single-qubit Z, matching the dense oracle") {
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector bell(2, {{r, 0}, {0, 0}, {0, 0}, {r, 0}});
    const auto z = measure_all(bell, Basis::Z);
    for (int q = 0; q < 2; ++q) {
        CHECK(z[static_cast<std::size_t>(q)] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(z[static_cast<std::size_t>(q)] ==
              doctest::Approx(reference::dense_expectation(bell.amps, 2, Basis::Z, q))
                  .epsilon(1e-12));
    }
}

TEST_CASE("norm is preserved across 100 random circuits") {
    auto g = make_stream(42, RngStream::ParamInit);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(bounded(g, 4));
        const int depth = 1 + static_cast<int>(bounded(g, 20));
        auto s = StateVector::zero(n);
        for (const auto& gate : random_gates(g, n, depth)) apply_gate_inplace(s, gate);
        CHECK(std::abs(norm(s) - 1.0) < 1e-12);
    }
}

TEST_CASE("kernels match the dense Kronecker-product unitary") {
    auto g = make_stream(7, RngStream::ParamInit);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(bounded(g, 3));
        const auto gates = random_gates(g, n, 20);

        auto s = StateVector::zero(n);
        for (const auto& gate : gates) apply_gate_inplace(s, gate);

        const auto u = reference::circuit_unitary(n, gates);
        const auto expected = reference::apply(u, StateVector::zero(n).amps);
        REQUIRE(expected.size() == s.dim());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(std::abs(s.amps[i] - expected[i]) < 1e-10);

        // expectations agree with the dense observable for both bases
        for (int q = 0; q < n; ++q) {
            CHECK(std::abs(expectation(s, {Basis::Z, q}) -
                           reference::dense_expectation(s.amps, n, Basis::Z, q)) < 1e-10);
            CHECK(std::abs(expectation(s, {Basis::X, q}) -
                           reference::dense_expectation(s.amps, n, Basis::X, q)) < 1e-10);
        }
    }
}

TEST_CASE("gates act linearly on unnormalized superpositions") {
    auto g = make_stream(13, RngStream::ParamInit);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(bounded(g, 2));
        const auto psi1 = random_state(g, n);
        const auto psi2 = random_state(g, n);
        const std::complex<double> a{normal(g), normal(g)};
        const std::complex<double> b{normal(g), normal(g)};

        StateVector combo(n, psi1.amps);
        for (std::size_t i = 0; i < combo.dim(); ++i)
            combo.amps[i] = a * psi1.amps[i] + b * psi2.amps[i];

        const auto gates = random_gates(g, n, 5);
        auto lhs = combo;
        auto r1 = psi1;
        auto r2 = psi2;
        for (const auto& gate : gates) {
            apply_gate_inplace(lhs, gate);
            apply_gate_inplace(r1, gate);
            apply_gate_inplace(r2, gate);
        }
        for (std::size_t i = 0; i < lhs.dim(); ++i)
            CHECK(std::abs(lhs.amps[i] - (a * r1.amps[i] + b * r2.amps[i])) < 1e-12);
    }
}

TEST_CASE("contract violations throw") {
    auto s = StateVector::zero(2);
    CHECK_THROWS_AS(apply_gate_inplace(s, Gate::rx(2, 0.1)), ContractError);
    CHECK_THROWS_AS(apply_gate_inplace(s, Gate::cnot(1, 1)), ContractError);
    CHECK_THROWS_AS(apply_gate_inplace(s, Gate::cnot(5, 0)), ContractError);
    CHECK_THROWS_AS(expectation(s, {Basis::Z, 2}), ContractError);
    CHECK_THROWS_AS(StateVector::zero(0), ContractError);
    CHECK_THROWS_AS(StateVector::zero(15), ContractError);
    CHECK_THROWS_AS(StateVector(2, {{1, 0}, {0, 0}}), ContractError);
}
