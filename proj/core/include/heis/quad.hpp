#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace heis {

// Resolution bundle shared by quadratures and scans.
struct QuadSpec {
    int n_alpha = 256;
    int n_phi = 128;
    int n_s = 96;
    std::int64_t mc_samples = 200000;
    std::uint64_t seed = 1;
    double rel_tol = 1e-6;

    void validate() const {
        if (n_alpha < 2 || n_phi < 2 || n_s < 2)
            throw std::invalid_argument("QuadSpec: grid counts must be >= 2");
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadSpec: rel_tol must be positive");
    }

    QuadSpec doubled() const {
        QuadSpec q = *this;
        q.n_alpha *= 2;
        q.n_phi *= 2;
        q.n_s *= 2;
        return q;
    }
};

// splitmix64: tiny deterministic generator, identical across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Decorrelated stream for cell `index` of a seeded scan.
inline SplitMix64 cell_rng(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    mix.next();
    return mix;
}

struct QuadNodes {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [a,b].
QuadNodes gauss_legendre(int n, double a, double b);

// Open midpoint rule on [a,b].
QuadNodes midpoint_rule(int n, double a, double b);

// Panels graded dyadically toward `target` inside [a,b]; `per_panel` GL nodes
// each.  Resolves integrable point singularities at `target`.
QuadNodes graded_toward(double target, double a, double b, int levels, int per_panel);

}  // namespace heis
