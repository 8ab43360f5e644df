#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace phiconv {

/// Deterministic splitmix64 generator.
///
/// Used instead of <random> engines/distributions so that results are
/// bit-identical across platforms and standard-library versions, and so
/// that independent streams can be derived from (seed, stream) pairs:
/// trial k of a sampling loop always sees the same stream no matter how
/// trials are scheduled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream derived from a base seed and a stream index.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        Rng mixer(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1));
        mixer.next_u64();
        return mixer;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = u01();
        while (u1 <= 0.0) u1 = u01();
        double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Eigen::VectorXd normal_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Eigen::VectorXd box_vector(int n, double lo = -1.0, double hi = 1.0) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    /// Uniform element of {0, ..., n-1}.
    int index(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

}  // namespace phiconv
