#pragma once

// Per-domain scalar arithmetic used by the elimination kernels. Each policy
// exposes the same surface so algorithms are written once as templates and
// dispatched on the runtime Domain.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "repalign/domain.hpp"
#include "repalign/errors.hpp"
#include "repalign/matrix.hpp"

namespace repalign::detail {

__extension__ typedef unsigned __int128 u128;

struct PrimeOps {
    using value_type = std::uint64_t;
    static constexpr bool exact = true;
    std::uint64_t p;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const {
        const value_type s = a + b;
        return s >= p ? s - p : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<u128>(a) * b) % p);
    }
    value_type inv(value_type a) const {
        // Fermat: a^(p-2).
        value_type result = 1;
        value_type base = a;
        std::uint64_t e = p - 2;
        while (e > 0) {
            if (e & 1U) result = mul(result, base);
            base = mul(base, base);
            e >>= 1U;
        }
        return result;
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
    bool is_zero(value_type a) const { return a == 0; }
    double magnitude(value_type a) const { return static_cast<double>(a); }
};

struct RationalOps {
    using value_type = Rational;
    static constexpr bool exact = true;

    value_type zero() const { return Rational(0); }
    value_type one() const { return Rational(1); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const { return 1 / a; }
    value_type div(const value_type& a, const value_type& b) const { return a / b; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    double magnitude(const value_type& a) const { return std::abs(a.get_d()); }
};

struct FloatOps {
    using value_type = double;
    static constexpr bool exact = false;
    double tau;

    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    value_type add(double a, double b) const { return a + b; }
    value_type sub(double a, double b) const { return a - b; }
    value_type neg(double a) const { return -a; }
    value_type mul(double a, double b) const { return a * b; }
    value_type inv(double a) const { return 1.0 / a; }
    value_type div(double a, double b) const { return a / b; }
    bool is_zero(double a) const { return a == 0.0; }
    double magnitude(double a) const { return std::abs(a); }
};

/// Calls `fn(ops)` with the arithmetic policy matching `domain`.
template <class Fn>
decltype(auto) with_ops(const Domain& domain, Fn&& fn) {
    switch (domain.kind()) {
    case DomainKind::prime_field: return std::forward<Fn>(fn)(PrimeOps{domain.modulus()});
    case DomainKind::rational: return std::forward<Fn>(fn)(RationalOps{});
    case DomainKind::floating: return std::forward<Fn>(fn)(FloatOps{domain.tolerance()});
    }
    throw Error("unreachable domain kind");
}

template <class Ops>
std::vector<typename Ops::value_type>& values(Matrix& m) {
    return std::get<std::vector<typename Ops::value_type>>(m.storage());
}

template <class Ops>
const std::vector<typename Ops::value_type>& values(const Matrix& m) {
    return std::get<std::vector<typename Ops::value_type>>(m.storage());
}

} // namespace repalign::detail
