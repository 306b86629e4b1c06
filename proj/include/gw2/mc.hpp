#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace gw2 {

// Deterministic pairwise reduction; the result does not depend on how the
// buffer was filled across workers.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n == 0) return T{};
    if (n == 1) return data[0];
    if (n <= 8) {
        T s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

// Fill buffer[i] = fn(i) for i in [0, n) over `workers` threads. Each entry
// depends only on its index, so the fill order is immaterial.
inline void parallel_fill(std::size_t n, int workers,
                          const std::function<void(std::size_t)>& fn) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct MeanStderr {
    std::complex<double> mean;
    double stderr_ = 0.0;
};

// Mean and standard error of a complex sample buffer (componentwise variance
// combined in quadrature), reduced pairwise.
MeanStderr mean_stderr(const std::vector<std::complex<double>>& samples);

}  // namespace gw2
