#include "repalign/domain.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "repalign/errors.hpp"

namespace repalign {

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    const Integer z(std::to_string(value));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

Domain Domain::prime_field(std::uint64_t p) {
    if (!is_prime(p)) {
        throw PreconditionError("prime_field modulus must be a prime >= 2, got " + std::to_string(p));
    }
    if (p >= (std::uint64_t{1} << 62)) {
        throw PreconditionError("prime_field modulus must be below 2^62");
    }
    return Domain(DomainKind::prime_field, p, 0.0);
}

Domain Domain::rational() { return Domain(DomainKind::rational, 0, 0.0); }

Domain Domain::floating(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw PreconditionError("float tolerance must satisfy 0 < tau < 1");
    }
    return Domain(DomainKind::floating, 0, tau);
}

Domain Domain::parse(std::string_view text) {
    if (text == "rational") return rational();
    if (text == "float") return floating();
    auto parse_tail = [&](std::string_view prefix) -> std::string_view {
        return text.substr(prefix.size());
    };
    if (text.starts_with("gf:")) {
        const auto tail = parse_tail("gf:");
        std::uint64_t p = 0;
        const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), p);
        if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
            throw FormatError("bad prime modulus in field spec '" + std::string(text) + "'");
        }
        return prime_field(p);
    }
    if (text.starts_with("float:")) {
        const std::string tail(parse_tail("float:"));
        std::size_t used = 0;
        double tau = 0.0;
        try {
            tau = std::stod(tail, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tail.size()) {
            throw FormatError("bad tolerance in field spec '" + std::string(text) + "'");
        }
        return floating(tau);
    }
    throw FormatError("unknown field spec '" + std::string(text) + "' (expected gf:<p>, rational or float:<tau>)");
}

std::string Domain::to_string() const {
    switch (kind_) {
    case DomainKind::prime_field: return "gf:" + std::to_string(modulus_);
    case DomainKind::rational: return "rational";
    case DomainKind::floating: {
        std::ostringstream os;
        os << "float:" << tolerance_;
        return os.str();
    }
    }
    return {};
}

Scalar Domain::zero() const { return from_integer(0); }
Scalar Domain::one() const { return from_integer(1); }

Scalar Domain::from_integer(long long value) const {
    switch (kind_) {
    case DomainKind::prime_field: {
        const auto p = static_cast<long long>(modulus_);
        long long r = value % p;
        if (r < 0) r += p;
        return static_cast<std::uint64_t>(r);
    }
    case DomainKind::rational: return Rational(static_cast<long>(value));
    case DomainKind::floating: return static_cast<double>(value);
    }
    return {};
}

Scalar Domain::from_rational(const Rational& value) const {
    switch (kind_) {
    case DomainKind::prime_field: {
        const Integer p(std::to_string(modulus_));
        Integer num = value.get_num() % p;
        if (num < 0) num += p;
        Integer den = value.get_den() % p;
        if (den == 0) {
            throw DomainMismatchError("rational " + rational_to_string(value) + " has no image mod " +
                                      std::to_string(modulus_));
        }
        Integer inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        const Integer r = (num * inv) % p;
        return static_cast<std::uint64_t>(std::stoull(r.get_str()));
    }
    case DomainKind::rational: return value;
    case DomainKind::floating: return value.get_d();
    }
    return {};
}

Scalar Domain::canonical(Scalar value) const {
    switch (kind_) {
    case DomainKind::prime_field:
        if (auto* v = std::get_if<std::uint64_t>(&value)) {
            *v %= modulus_;
            return value;
        }
        break;
    case DomainKind::rational:
        if (auto* v = std::get_if<Rational>(&value)) {
            v->canonicalize();
            return value;
        }
        break;
    case DomainKind::floating:
        if (std::holds_alternative<double>(value)) return value;
        break;
    }
    throw DomainMismatchError("scalar does not belong to domain " + to_string());
}

std::string rational_to_string(const Rational& value) {
    Rational c(value);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_string(std::string_view text) {
    const std::string s(text);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) {
        throw FormatError("bad rational literal '" + s + "'");
    }
    if (r.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string scalar_to_string(const Scalar& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
                return rational_to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                std::ostringstream os;
                os.precision(17);
                os << v;
                return os.str();
            } else {
                return std::to_string(v);
            }
        },
        value);
}

} // namespace repalign
