#include <algorithm>
#include <array>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "roofline/errors.hpp"
#include "roofline/machine.hpp"

// ERT-style host kernels: an in-register multiply-add chain ladder for the
// compute peak and a streaming read-modify-write walk for the bandwidth
// sweep. Rates are derived from operations actually issued, so the kernels
// guard against dead-code elimination with a volatile sink.

namespace roofline::machine {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

// Smallest observable positive tick of the steady clock.
double timer_resolution() {
    double best = 1.0;
    for (int i = 0; i < 64; ++i) {
        auto t0 = Clock::now();
        auto t1 = Clock::now();
        while (t1 == t0) t1 = Clock::now();
        best = std::min(best, seconds_between(t0, t1));
    }
    return best;
}

void require_timeable(double min_seconds) {
    double resolution = timer_resolution();
    if (min_seconds < resolution * 100.0)
        throw BenchError("timer resolution (" + std::to_string(resolution) +
                         " s) too coarse to time " + std::to_string(min_seconds) +
                         " s points; raise min_seconds_per_point");
}

volatile double g_sink;  // defeats dead-code elimination across kernels

template <typename T, int Chains>
double fma_chunk(std::uint64_t iterations) {
    std::array<T, Chains> acc;
    for (int j = 0; j < Chains; ++j) acc[j] = T(1) + T(j) * T(1e-6);
    const T mul = T(1.0000001);
    const T add = T(1e-9);
    for (std::uint64_t i = 0; i < iterations; ++i)
        for (int j = 0; j < Chains; ++j) acc[j] = acc[j] * mul + add;
    T checksum = T(0);
    for (int j = 0; j < Chains; ++j) checksum += acc[j];
    return static_cast<double>(checksum);
}

template <typename T>
double fma_chunk_for(int chains, std::uint64_t iterations) {
    switch (chains) {
        case 1: return fma_chunk<T, 1>(iterations);
        case 2: return fma_chunk<T, 2>(iterations);
        case 4: return fma_chunk<T, 4>(iterations);
        case 8: return fma_chunk<T, 8>(iterations);
        case 16: return fma_chunk<T, 16>(iterations);
        case 32: return fma_chunk<T, 32>(iterations);
        default:
            throw ConfigError("flops_per_element ladder entries must be one of 1,2,4,8,16,32");
    }
}

// One timed measurement across the worker pool; returns total FLOP/s.
template <typename T>
double timed_fma_rate(int chains, int threads, double min_seconds) {
    std::barrier gate(threads + 1);
    std::vector<std::uint64_t> done(static_cast<std::size_t>(threads), 0);
    std::atomic<bool> stop{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            gate.arrive_and_wait();
            std::uint64_t chunk = 1 << 16;
            std::uint64_t iters = 0;
            double checksum = 0.0;
            while (!stop.load(std::memory_order_relaxed)) {
                checksum += fma_chunk_for<T>(chains, chunk);
                iters += chunk;
            }
            g_sink = checksum;
            done[static_cast<std::size_t>(t)] = iters;
        });
    }
    gate.arrive_and_wait();
    auto start = Clock::now();
    while (seconds_between(start, Clock::now()) < min_seconds)
        std::this_thread::yield();
    stop.store(true, std::memory_order_relaxed);
    for (auto& th : pool) th.join();
    auto end = Clock::now();

    double elapsed = seconds_between(start, end);
    double total_ops = 0.0;
    for (std::uint64_t n : done) total_ops += static_cast<double>(n) * chains * 2.0;
    return total_ops / elapsed;
}

}  // namespace

ComputePeakResult bench_compute_peak(const BenchConfig& config, Precision precision) {
    config.validate();
    if (config.flops_per_element_ladder.empty())
        throw ConfigError("bench config: flops_per_element ladder is empty");
    if (precision != Precision::FP64 && precision != Precision::FP32)
        throw BenchError("host compute peak supports FP64 and FP32 only");
    require_timeable(config.min_seconds_per_point);

    ComputePeakResult result;
    result.ladder = config.flops_per_element_ladder;
    for (int chains : config.flops_per_element_ladder) {
        for (int trial = 0; trial < config.trials; ++trial) {
            double rate = precision == Precision::FP64
                              ? timed_fma_rate<double>(chains, config.threads,
                                                       config.min_seconds_per_point)
                              : timed_fma_rate<float>(chains, config.threads,
                                                      config.min_seconds_per_point);
            result.trial_gflops.push_back(rate / 1e9);
        }
    }
    result.best_gflops = *std::max_element(result.trial_gflops.begin(), result.trial_gflops.end());
    return result;
}

std::vector<BandwidthPoint> bench_bandwidth_sweep(const BenchConfig& config) {
    config.validate();
    if (config.working_set_sizes.empty())
        throw ConfigError("bench config: working_set_sizes is empty");
    require_timeable(config.min_seconds_per_point);

    std::vector<BandwidthPoint> sweep;
    for (std::uint64_t total_bytes : config.working_set_sizes) {
        std::uint64_t per_thread_elems =
            std::max<std::uint64_t>(256, total_bytes / config.threads / sizeof(double));

        double best_rate = 0.0;
        for (int trial = 0; trial < config.trials; ++trial) {
            std::barrier gate(config.threads + 1);
            std::atomic<bool> stop{false};
            std::vector<std::uint64_t> passes(static_cast<std::size_t>(config.threads), 0);
            std::vector<std::thread> pool;
            for (int t = 0; t < config.threads; ++t) {
                pool.emplace_back([&, t] {
                    std::vector<double> buffer(per_thread_elems, 1.0);
                    gate.arrive_and_wait();
                    std::uint64_t n = 0;
                    while (!stop.load(std::memory_order_relaxed)) {
                        for (double& x : buffer) x = x * 1.0000001 + 0.5;
                        ++n;
                    }
                    g_sink = buffer[0];
                    passes[static_cast<std::size_t>(t)] = n;
                });
            }
            gate.arrive_and_wait();
            auto start = Clock::now();
            while (seconds_between(start, Clock::now()) < config.min_seconds_per_point)
                std::this_thread::yield();
            stop.store(true, std::memory_order_relaxed);
            for (auto& th : pool) th.join();
            auto end = Clock::now();

            double bytes = 0.0;
            for (std::uint64_t n : passes)
                bytes += static_cast<double>(n) * per_thread_elems * 2.0 * sizeof(double);
            best_rate = std::max(best_rate, bytes / seconds_between(start, end) / 1e9);
        }
        sweep.push_back({total_bytes, best_rate});
    }
    return sweep;
}

}  // namespace roofline::machine
