#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace repalign {

using Rational = mpq_class;
using Integer = mpz_class;

/// One element of some scalar domain. Which alternative is live is decided by
/// the owning `Domain`: residues in [0, p) for prime fields, canonical
/// fractions for rationals, doubles for the tolerance-based float mode.
using Scalar = std::variant<std::uint64_t, Rational, double>;

enum class DomainKind { prime_field, rational, floating };

/// The scalar domain a matrix lives in.
///
/// `prime_field(p)` requires p prime; `floating(tau)` requires 0 < tau < 1,
/// where tau is the relative pivot threshold used by elimination.
class Domain {
public:
    static Domain prime_field(std::uint64_t p);
    static Domain rational();
    static Domain floating(double tau = 1e-9);

    /// Parses the CLI spelling: `gf:<p>`, `rational`, `float:<tau>` (or `float`).
    static Domain parse(std::string_view text);

    DomainKind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ != DomainKind::floating; }
    bool is_prime_field() const noexcept { return kind_ == DomainKind::prime_field; }

    /// Modulus p; only meaningful for prime fields.
    std::uint64_t modulus() const noexcept { return modulus_; }
    /// Relative pivot threshold; only meaningful for the float domain.
    double tolerance() const noexcept { return tolerance_; }

    /// Inverse of `parse`.
    std::string to_string() const;

    Scalar zero() const;
    Scalar one() const;
    /// Maps an integer into the domain (reduced mod p for prime fields).
    Scalar from_integer(long long value) const;
    /// Maps a rational into the domain; throws `DomainMismatchError` when the
    /// denominator is not invertible mod p.
    Scalar from_rational(const Rational& value) const;
    /// Validates and canonicalizes a scalar for this domain; throws when the
    /// alternative does not match.
    Scalar canonical(Scalar value) const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Domain(DomainKind kind, std::uint64_t modulus, double tolerance)
        : kind_(kind), modulus_(modulus), tolerance_(tolerance) {}

    DomainKind kind_;
    std::uint64_t modulus_;
    double tolerance_;
};

bool is_prime(std::uint64_t value);

/// Canonical text for a rational: always "num/den" in lowest terms.
std::string rational_to_string(const Rational& value);
/// Accepts "num/den" or a bare integer; the result is canonicalized.
Rational rational_from_string(std::string_view text);

std::string scalar_to_string(const Scalar& value);

} // namespace repalign
