// Compares the production kernels against the serial reference
// implementations (dense Kronecker unitaries) and measures the OpenMP
// fan-out paths at one thread versus all available threads.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qldm/circuits.hpp"
#include "qldm/denoiser.hpp"
#include "qldm/rng.hpp"
#include "qldm/statevector.hpp"
#include "qldm/threading.hpp"
#include "qldm/training.hpp"
#include "reference.hpp"

using namespace qldm;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_ms(int reps, F&& f) {
    const double t0 = now_ms();
    for (int r = 0; r < reps; ++r) f();
    return (now_ms() - t0) / reps;
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

CircuitSpec bench_spec(int n_qubits, int depth) {
    CircuitSpec spec;
    spec.n_qubits = n_qubits;
    spec.ansatz = AnsatzKind::Expressive;
    spec.depth = depth;
    spec.observable_basis = Basis::Z;
    return spec;
}

void bench_evaluate_vs_reference() {
    std::printf("\n-- circuit evaluation: strided kernels vs dense-unitary reference --\n");
    std::printf("%8s %10s %16s %18s %9s\n", "qubits", "gates", "kernels (ms)", "reference (ms)",
                "speedup");
    for (int n = 4; n <= 10; n += 2) {
        const auto spec = bench_spec(n, 3);
        auto g = make_stream(7, RngStream::ParamInit);
        std::vector<double> params(param_count(spec));
        for (auto& p : params) p = 2.0 * uniform01(g) - 1.0;
        std::vector<double> input(static_cast<std::size_t>(n));
        for (auto& x : input) x = 2.0 * uniform01(g) - 1.0;
        const auto gates = build_gates(spec, params, input);

        const int reps = n <= 6 ? 200 : 20;
        const double kernel_ms = time_ms(reps, [&] { evaluate(spec, params, input); });
        const double ref_ms = time_ms(n <= 8 ? 5 : 1, [&] {
            const auto u = reference::circuit_unitary(n, gates);
            StateVector s = StateVector::zero(n);
            auto psi = reference::apply(u, s.amps);
            for (int q = 0; q < n; ++q)
                (void)reference::dense_expectation(psi, n, Basis::Z, q);
        });
        std::printf("%8d %10zu %16.4f %18.3f %8.1fx\n", n, gates.size(), kernel_ms, ref_ms,
                    ref_ms / kernel_ms);
    }
}

void bench_param_shift_threads() {
    std::printf("\n-- parameter-shift Jacobian: 1 thread vs %d threads --\n", max_threads());
    std::printf("%8s %10s %14s %14s %9s\n", "qubits", "params", "serial (ms)", "parallel (ms)",
                "speedup");
    for (int n : {6, 8, 10}) {
        const auto spec = bench_spec(n, 3);
        auto g = make_stream(11, RngStream::ParamInit);
        std::vector<double> params(param_count(spec));
        for (auto& p : params) p = 2.0 * uniform01(g) - 1.0;
        std::vector<double> input(static_cast<std::size_t>(n));
        for (auto& x : input) x = 2.0 * uniform01(g) - 1.0;

        set_threads(1);
        const double serial_ms = time_ms(3, [&] { param_shift_grad(spec, params, input); });
        set_threads(max_threads());
        const double parallel_ms = time_ms(3, [&] { param_shift_grad(spec, params, input); });
        std::printf("%8d %10zu %14.2f %14.2f %8.2fx\n", n, params.size(), serial_ms, parallel_ms,
                    serial_ms / parallel_ms);
    }
}

void bench_training_step_threads() {
    std::printf("\n-- full training step (batch 16): 1 thread vs %d threads --\n", max_threads());
    std::printf("%12s %14s %14s %9s\n", "variant", "serial (ms)", "parallel (ms)", "speedup");
    for (const char* name : {"classical", "3zQ"}) {
        TrainConfig cfg;
        cfg.denoiser.variant = parse_variant(name);
        cfg.denoiser.dim = 8;
        cfg.T = 50;
        cfg.batch_size = 16;
        cfg.seed = 3;
        const auto schedule = linear_schedule(cfg.T, cfg.beta_start, cfg.beta_end);

        auto g = make_stream(5, RngStream::NoiseDraw);
        std::vector<LatentVector> x0(16), eps(16);
        std::vector<int> ts(16);
        for (int i = 0; i < 16; ++i) {
            x0[static_cast<std::size_t>(i)] = normal_vector(g, 8);
            eps[static_cast<std::size_t>(i)] = normal_vector(g, 8);
            ts[static_cast<std::size_t>(i)] = 1 + static_cast<int>(bounded(g, 50));
        }

        set_threads(1);
        TrainState s1 = init_train_state(cfg);
        const double serial_ms = time_ms(2, [&] { training_step(schedule, s1, x0, ts, eps); });
        set_threads(max_threads());
        TrainState s2 = init_train_state(cfg);
        const double parallel_ms = time_ms(2, [&] { training_step(schedule, s2, x0, ts, eps); });
        std::printf("%12s %14.2f %14.2f %8.2fx\n", name, serial_ms, parallel_ms,
                    serial_ms / parallel_ms);
    }
}

}  // namespace

int main() {
    apply_thread_cap_from_env();
    std::printf("qldm benchmark (max threads: %d)\n", max_threads());
    bench_evaluate_vs_reference();
    bench_param_shift_threads();
    bench_training_step_threads();
    set_threads(max_threads());
    return 0;
}
