#ifndef POLYWALK_RNG_HPP
#define POLYWALK_RNG_HPP

#include <cstdint>
#include <Eigen/Dense>

namespace polywalk {

// Counter-based generator (splitmix64). A chain owns exactly one stream;
// all randomness is derived from integer state, so runs are reproducible
// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    // standard normal via the Marsaglia polar method
    double normal();

    Eigen::VectorXd normal_vector(int dim);

    // uniform direction on the unit sphere
    Eigen::VectorXd unit_direction(int dim);

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derives an independent stream for sub-task `index` of a run seeded with
// `base`; used to give every chain of a sweep its own seed deterministically.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Standard normal CDF.
double norm_cdf(double x);

// Inverse standard normal CDF. Acklam's rational approximation followed by
// one Halley refinement; absolute error well below 1.2e-8 on (0, 1).
double norm_ppf(double p);

} // namespace polywalk

#endif
