#include "repalign/random.hpp"

#include "repalign/errors.hpp"

namespace repalign {

Sampler::Sampler(std::uint64_t seed, SamplingOptions options) : engine_(seed), options_(options) {
    if (options_.bound < 1) throw PreconditionError("sampling bound must be >= 1");
}

std::uint64_t Sampler::uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
}

Rational Sampler::rational() {
    const auto b = static_cast<std::uint64_t>(options_.bound);
    const auto num = static_cast<long>(uniform(0, 2 * b)) - options_.bound;
    const auto den = static_cast<long>(uniform(1, b));
    Rational q(num, static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

Scalar Sampler::scalar(const Domain& domain) {
    switch (domain.kind()) {
    case DomainKind::prime_field: return uniform(0, domain.modulus() - 1);
    case DomainKind::rational: return rational();
    case DomainKind::floating: return rational().get_d();
    }
    throw Error("unreachable domain kind");
}

Scalar Sampler::nonzero_scalar(const Domain& domain) {
    for (;;) {
        Scalar s = scalar(domain);
        const bool zero = std::visit(
            [](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Rational>) {
                    return sgn(v) == 0;
                } else {
                    return v == T{};
                }
            },
            s);
        if (!zero) return s;
    }
}

Matrix Sampler::matrix(const Domain& domain, std::size_t rows, std::size_t cols) {
    Matrix m(domain, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, scalar(domain));
    }
    return m;
}

Matrix Sampler::diagonal(const Domain& domain, std::size_t n) {
    Matrix m(domain, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, nonzero_scalar(domain));
    return m;
}

} // namespace repalign
