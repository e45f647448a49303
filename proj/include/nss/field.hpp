#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "nss/errors.hpp"

namespace nss {

class Rational;
class Fp;

/// Field descriptor for the rationals. Stateless; all instances are equal.
struct RationalField {
    using scalar_type = Rational;

    bool operator==(const RationalField&) const = default;

    // Characteristic 0, so in particular != 2.
    bool characteristic_ok() const { return true; }
    static std::string name() { return "Q"; }

    Rational zero() const;
    Rational one() const;
    Rational element(long v) const;
};

namespace detail {

// Deterministic trial division; moduli are desk-scale.
inline bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

/// Field descriptor for a prime field F_p. The modulus is validated at
/// construction; p = 2 is a legal field here, only theorem entry points
/// reject it via characteristic_ok().
class PrimeField {
public:
    using scalar_type = Fp;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (1ull << 31))
            throw NonPrimeModulusError("modulus too large for desk-scale prime field: " + std::to_string(p));
        if (!detail::is_prime_u64(p))
            throw NonPrimeModulusError("modulus is not prime: " + std::to_string(p));
    }

    std::uint64_t modulus() const { return p_; }
    bool characteristic_ok() const { return p_ != 2; }
    std::string name() const { return "Fp:" + std::to_string(p_); }

    bool operator==(const PrimeField&) const = default;

    Fp zero() const;
    Fp one() const;
    Fp element(long v) const;

    struct unchecked_tag {};
    PrimeField(std::uint64_t p, unchecked_tag) : p_(p) {}

private:
    std::uint64_t p_;
};

/// Exact rational scalar. Always stored reduced with positive denominator,
/// so equality is structural and zero tests are unambiguous.
class Rational {
public:
    using field_type = RationalField;

    Rational() : v_(0) {}
    Rational(long num) : v_(num) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw DivisionByZeroError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& num) : v_(num) {}
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw DivisionByZeroError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "num" or "num/den".
    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw InvalidParameterError("unparsable rational: '" + s + "'");
        if (q.get_den() == 0) throw DivisionByZeroError("rational with zero denominator: '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    field_type field() const { return {}; }

    bool is_zero() const { return v_ == 0; }
    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw DivisionByZeroError("rational division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    /// "num/den", den omitted when 1.
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::element(long v) const { return Rational(v); }

/// Residue scalar in F_p. Carries its modulus; mixing moduli throws
/// FieldMismatch, never coerces.
class Fp {
public:
    using field_type = PrimeField;

    Fp(std::uint64_t value, const PrimeField& f) : v_(value % f.modulus()), p_(f.modulus()) {}

    static Fp from_int(long v, const PrimeField& f) {
        std::uint64_t p = f.modulus();
        long r = v % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return Fp(static_cast<std::uint64_t>(r), f);
    }

    field_type field() const { return PrimeField(p_, PrimeField::unchecked_tag{}); }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { check(o); return raw((v_ + o.v_) % p_); }
    Fp operator-(const Fp& o) const { check(o); return raw((v_ + p_ - o.v_) % p_); }
    Fp operator*(const Fp& o) const { check(o); return raw((v_ * o.v_) % p_); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }

    Fp inverse() const {
        if (v_ == 0) throw DivisionByZeroError("inverse of zero in " + field().name());
        // extended Euclid on (v, p); p prime so gcd is 1
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(v_);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t; new_t = tmp;
            tmp = r - q * new_r;
            r = new_r; new_r = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return raw(static_cast<std::uint64_t>(t));
    }

    Fp operator/(const Fp& o) const { check(o); return *this * o.inverse(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { check(o); return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    Fp raw(std::uint64_t v) const {
        Fp r = *this;
        r.v_ = v;
        return r;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_)
            throw FieldMismatchError("arithmetic between F_" + std::to_string(p_) + " and F_" +
                                     std::to_string(o.p_));
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

inline Fp PrimeField::zero() const { return Fp(0, *this); }
inline Fp PrimeField::one() const { return Fp(1 % p_, *this); }
inline Fp PrimeField::element(long v) const { return Fp::from_int(v, *this); }

template <class T>
concept FieldScalar = requires(const T& a, const T& b) {
    typename T::field_type;
    { a.field() } -> std::same_as<typename T::field_type>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a == b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
};

static_assert(FieldScalar<Rational>);
static_assert(FieldScalar<Fp>);

}  // namespace nss
