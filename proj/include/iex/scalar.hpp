#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "iex/errors.hpp"

namespace iex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Coefficient field of a computation: either Q (d == 0) or a fixed real
// quadratic field Q(sqrt(d)) with d > 1 square-free. The field is chosen at
// construction time; scalars from different fields never mix.
class Field {
   public:
    Field() : d_(0) {}
    static Field rationals() { return Field(); }
    static Field quadratic(std::int64_t d);

    std::int64_t d() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool operator==(const Field& o) const { return d_ == o.d_; }
    bool operator!=(const Field& o) const { return d_ != o.d_; }

    std::string name() const;              // "Q" or "Q(sqrt 5)"
    static Field from_name(const std::string& s);

   private:
    explicit Field(std::int64_t d) : d_(d) {}
    std::int64_t d_;
};

/**
 * Exact element of Q or of Q(sqrt d), stored as a + b*sqrt(d) with rational
 * a, b in lowest terms. All arithmetic and comparisons are exact; the order
 * is the real embedding with the positive square root. Sign determination
 * never touches floating point: it is a case analysis on the signs of a and b
 * plus a comparison of a^2 against b^2*d.
 *
 * Values are immutable after construction and safe to share across threads.
 */
class Scalar {
   public:
    Scalar() : field_(), a_(0), b_(0) {}
    Scalar(const Field& f, Rational a) : field_(f), a_(std::move(a)), b_(0) {}
    Scalar(const Field& f, Rational a, Rational b);

    // Rational-mode conveniences.
    explicit Scalar(long v) : field_(), a_(v), b_(0) {}
    explicit Scalar(Rational r) : field_(), a_(std::move(r)), b_(0) {}

    const Field& field() const { return field_; }
    const Rational& rat_part() const { return a_; }
    const Rational& quad_part() const { return b_; }

    // Exact value as a rational; precondition: quad part is zero.
    const Rational& as_rational() const;

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    int sign() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    int compare(const Scalar& o) const;
    bool operator==(const Scalar& o) const { return compare(o) == 0; }
    bool operator!=(const Scalar& o) const { return compare(o) != 0; }
    bool operator<(const Scalar& o) const { return compare(o) < 0; }
    bool operator<=(const Scalar& o) const { return compare(o) <= 0; }
    bool operator>(const Scalar& o) const { return compare(o) > 0; }
    bool operator>=(const Scalar& o) const { return compare(o) >= 0; }

    // Same-field constants, so algorithms can form literals in the ambient
    // field of their inputs.
    Scalar zero() const { return Scalar(field_, Rational(0)); }
    Scalar one() const { return Scalar(field_, Rational(1)); }
    Scalar from(long v) const { return Scalar(field_, Rational(v)); }
    Scalar from(const Rational& r) const { return Scalar(field_, r); }

    // Canonical text form: "p/q" (or "p") for rationals,
    // "p/q+r/s*sqrt(d)" with a '-' when the sqrt coefficient is negative.
    std::string str() const;
    static Scalar parse(const std::string& text, const Field& f);

    // Crude size estimate used only in diagnostics.
    double approx() const;

   private:
    void check_same_field(const Scalar& o) const;

    Field field_;
    Rational a_;
    Rational b_;
};

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

}  // namespace iex
