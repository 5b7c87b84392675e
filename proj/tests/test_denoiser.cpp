#include <doctest.h>

#include <cmath>

#include "qldm/denoiser.hpp"
#include "qldm/errors.hpp"
#include "qldm/rng.hpp"
#include "reference.hpp"

using namespace qldm;

namespace {

DenoiserParams random_params(const DenoiserConfig& cfg, std::uint64_t seed, double scale = 1.0) {
    DenoiserParams p;
    auto g = make_stream(seed, RngStream::ParamInit);
    p.flat.resize(count_params(cfg));
    for (auto& v : p.flat) v = (2.0 * uniform01(g) - 1.0) * scale;
    return p;
}

double dot(const LatentVector& a, const LatentVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("time embedding matches the sinusoidal formula") {
    const auto at_zero = time_embedding(0, 10, 50);
    for (int i = 0; i < 5; ++i) {
        CHECK(at_zero[static_cast<std::size_t>(i)] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(at_zero[static_cast<std::size_t>(5 + i)] == doctest::Approx(1.0).epsilon(1e-15));
    }

    const auto at_one = time_embedding(1, 10, 50);
    CHECK(at_one[0] == doctest::Approx(0.84147098480789651).epsilon(1e-12));

    for (int t : {1, 7, 49}) {
        for (double v : time_embedding(t, 10, 50)) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK_THROWS_AS(time_embedding(1, 9, 50), ContractError);
    CHECK_THROWS_AS(time_embedding(51, 10, 50), ContractError);
}

TEST_CASE("trainable parameter totals match the published counts") {
    CHECK(count_params({DenoiserVariant::Classical, 10}) == 330);
    CHECK(count_params({DenoiserVariant::BasicQ, 10}) == 120);
    CHECK(count_params({DenoiserVariant::Expr3Z, 10}) == 270);
    CHECK(count_params({DenoiserVariant::Expr3X, 10}) == 270);
    CHECK(count_params({DenoiserVariant::Expr4Z, 10}) == 360);
    CHECK(count_params({DenoiserVariant::Expr4X, 10}) == 360);
}

TEST_CASE("parameter totals scale with the latent dimension") {
    for (int d : {8, 10, 12}) {
        const std::size_t dd = static_cast<std::size_t>(d);
        CHECK(count_params({DenoiserVariant::Classical, d}) == 3 * (dd * dd + dd));
        CHECK(count_params({DenoiserVariant::BasicQ, d}) == 3 * dd * 4);
        CHECK(count_params({DenoiserVariant::Expr3Z, d}) == 9 * dd * 3);
        CHECK(count_params({DenoiserVariant::Expr4X, d}) == 9 * dd * 4);
    }
}

TEST_CASE("variant names round trip and bad names list the options") {
    for (const auto& name : variant_names()) CHECK(variant_name(parse_variant(name)) == name);
    CHECK(parse_variant("4ZQ") == DenoiserVariant::Expr4Z);
    CHECK_THROWS_WITH_AS(parse_variant("resnet"),
                         "unknown variant 'resnet' (valid: classical, BasicQ, 3zQ, 3xQ, 4zQ, 4xQ)",
                         ConfigError);
}

TEST_CASE("zero-weight classical denoiser is the identity through the skip path") {
    const DenoiserConfig cfg{DenoiserVariant::Classical, 10};
    DenoiserParams zero;
    zero.flat.assign(count_params(cfg), 0.0);
    const LatentVector x{0.1, -0.2, 0.3, -0.4, 0.5, -0.6, 0.7, -0.8, 0.9, -1.0};
    const auto eps = predict_noise(cfg, zero, x, 7);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(eps[i] == x[i]);
}

TEST_CASE("quantum prediction deviates from the input by at most one") {
    const DenoiserConfig cfg{DenoiserVariant::Expr3Z, 4};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto params = random_params(cfg, seed, M_PI);
        auto g = make_stream(seed + 100, RngStream::NoiseDraw);
        const auto x = normal_vector(g, 4);
        const auto eps = predict_noise(cfg, params, x, 1 + static_cast<int>(seed));
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(eps[i] - x[i]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("quantum forward pass composes the three circuit evaluations") {
    const DenoiserConfig cfg{DenoiserVariant::BasicQ, 2};
    const auto params = random_params(cfg, 3);
    const LatentVector x{0.4, -0.9};
    const int t = 5;

    const auto spec = quantum_spec(cfg);
    const std::size_t bp = block_param_count(cfg);
    const std::vector<double> p1(params.flat.begin(), params.flat.begin() + bp);
    const std::vector<double> p2(params.flat.begin() + bp, params.flat.begin() + 2 * bp);
    const std::vector<double> p3(params.flat.begin() + 2 * bp, params.flat.end());

    // dim 2: embedding = (sin t, cos t)
    const LatentVector temb{std::sin(static_cast<double>(t)), std::cos(static_cast<double>(t))};
    const auto b1 = evaluate(spec, p1, x);
    const auto b2 = evaluate(spec, p2, temb);
    const auto b3 = evaluate(spec, p3, {b1[0] + b2[0], b1[1] + b2[1]});

    const auto eps = predict_noise(cfg, params, x, t);
    CHECK(eps[0] == doctest::Approx(x[0] + b3[0]).epsilon(1e-15));
    CHECK(eps[1] == doctest::Approx(x[1] + b3[1]).epsilon(1e-15));
}

TEST_CASE("zero upstream gradient yields zero parameter gradients") {
    const DenoiserConfig cfg{DenoiserVariant::Expr3Z, 2};
    const auto params = random_params(cfg, 4);
    const auto grads = grad_params(cfg, params, {0.3, -0.3}, 2, {0.0, 0.0});
    for (double v : grads) CHECK(v == 0.0);
}

TEST_CASE("classical gradients match finite differences") {
    const DenoiserConfig cfg{DenoiserVariant::Classical, 4};
    const auto params = random_params(cfg, 5, 0.6);
    auto g = make_stream(55, RngStream::NoiseDraw);
    const auto x = normal_vector(g, 4);
    const auto u = normal_vector(g, 4);
    const int t = 3;

    const auto grads = grad_params(cfg, params, x, t, u);
    const double h = 1e-5;
    for (std::size_t j = 0; j < grads.size(); ++j) {
        auto plus = params, minus = params;
        plus.flat[j] += h;
        minus.flat[j] -= h;
        const double fd =
            (dot(u, predict_noise(cfg, plus, x, t)) - dot(u, predict_noise(cfg, minus, x, t))) /
            (2.0 * h);
        CHECK(std::abs(grads[j] - fd) < 1e-6);
    }
}

TEST_CASE("quantum gradients match finite differences within relative 1e-4") {
    const DenoiserConfig cfg{DenoiserVariant::Expr3Z, 3};
    const auto params = random_params(cfg, 6, 1.0);
    auto g = make_stream(66, RngStream::NoiseDraw);
    const auto x = normal_vector(g, 3);
    const auto u = normal_vector(g, 3);
    const int t = 2;

    const auto grads = grad_params(cfg, params, x, t, u);
    const double h = 1e-4;
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t j = 0; j < grads.size(); ++j) {
        auto plus = params, minus = params;
        plus.flat[j] += h;
        minus.flat[j] -= h;
        const double fd =
            (dot(u, predict_noise(cfg, plus, x, t)) - dot(u, predict_noise(cfg, minus, x, t))) /
            (2.0 * h);
        diff2 += (grads[j] - fd) * (grads[j] - fd);
        ref2 += fd * fd;
    }
    CHECK(std::sqrt(diff2) <= 1e-4 * std::sqrt(ref2) + 1e-12);
}

TEST_CASE("each quantum output is 1-Lipschitz in every parameter") {
    const DenoiserConfig cfg{DenoiserVariant::BasicQ, 3};
    const auto params = random_params(cfg, 7, 2.0);
    auto g = make_stream(77, RngStream::NoiseDraw);
    const auto x = normal_vector(g, 3);
    const int t = 4;
    const double h = 1e-4;

    double max_slope = 0.0;
    for (std::size_t j = 0; j < params.flat.size(); ++j) {
        auto plus = params, minus = params;
        plus.flat[j] += h;
        minus.flat[j] -= h;
        const auto fp = predict_noise(cfg, plus, x, t);
        const auto fm = predict_noise(cfg, minus, x, t);
        for (std::size_t i = 0; i < fp.size(); ++i)
            max_slope = std::max(max_slope, std::abs(fp[i] - fm[i]) / (2.0 * h));
    }
    CHECK(max_slope <= 1.0 + 1e-6);
}

TEST_CASE("dimension mismatches throw") {
    const DenoiserConfig cfg{DenoiserVariant::Classical, 4};
    const auto params = random_params(cfg, 8);
    CHECK_THROWS_AS(predict_noise(cfg, params, {0.0, 0.0}, 1), ContractError);
    DenoiserParams bad;
    bad.flat.assign(7, 0.0);
    CHECK_THROWS_AS(predict_noise(cfg, bad, {0.0, 0.0, 0.0, 0.0}, 1), ContractError);
}
