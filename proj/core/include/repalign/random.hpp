#pragma once

#include <cstdint>
#include <random>

#include "repalign/matrix.hpp"

namespace repalign {

/// Stand-in for "i.i.d. from a continuous distribution".
///
/// Rationals are numerator/denominator with numerator uniform in [-bound, bound]
/// and denominator uniform in [1, bound]. Prime fields sample uniformly. The
/// float domain samples the same rational and rounds it, so a float instance
/// drawn from seed s is the rounding of the rational instance drawn from s.
struct SamplingOptions {
    long bound = 97;
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed, SamplingOptions options = {});

    Scalar scalar(const Domain& domain);
    Scalar nonzero_scalar(const Domain& domain);
    Matrix matrix(const Domain& domain, std::size_t rows, std::size_t cols);
    /// Diagonal matrix with nonzero diagonal entries.
    Matrix diagonal(const Domain& domain, std::size_t n);
    /// Uniform integer in [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    Rational rational();

    std::mt19937_64 engine_;
    SamplingOptions options_;
};

} // namespace repalign
