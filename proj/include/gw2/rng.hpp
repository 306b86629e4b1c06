#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace gw2 {

// splitmix64, used to expand (seed, counter) pairs into stream states.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with fully deterministic construction from (seed, stream).
// A fresh generator per (seed, sample_index) makes results independent of
// how samples are distributed over workers.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
        for (auto& w : s_) w = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal, Box-Muller (no cached second value; keeps the
    // per-sample stream stateless apart from the counter)
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t s_[4];
};

// Hermitian draw with <H_mn H_kl> = delta_ml delta_nk:
// diagonal N(0,1), off-diagonal (x+iy)/sqrt(2).
inline Eigen::MatrixXcd random_hermitian(Rng& rng, int n) {
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
            const double x = rng.normal();
            const double y = rng.normal();
            h(i, j) = std::complex<double>(x, y) / std::sqrt(2.0);
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

}  // namespace gw2
