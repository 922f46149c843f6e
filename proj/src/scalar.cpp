#include "iex/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace iex {

namespace {

bool is_square_free(std::int64_t d) {
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

}  // namespace

Field Field::quadratic(std::int64_t d) {
    if (d <= 1) throw PreconditionError("quadratic field needs d > 1");
    if (!is_square_free(d)) throw PreconditionError("quadratic field needs square-free d");
    return Field(d);
}

std::string Field::name() const {
    if (d_ == 0) return "Q";
    return "Q(sqrt " + std::to_string(d_) + ")";
}

Field Field::from_name(const std::string& s) {
    if (s == "Q") return rationals();
    // accept "Q(sqrt d)" and "Q(sqrt(d))"
    if (s.rfind("Q(sqrt", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(6, s.size() - 7);
        if (!inner.empty() && inner.front() == '(') inner = inner.substr(1);
        if (!inner.empty() && inner.back() == ')') inner.pop_back();
        size_t pos = 0;
        while (pos < inner.size() && std::isspace(static_cast<unsigned char>(inner[pos]))) ++pos;
        try {
            return quadratic(std::stoll(inner.substr(pos)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad field name: " + s);
        }
    }
    throw ParseError("bad field name: " + s);
}

Scalar::Scalar(const Field& f, Rational a, Rational b)
    : field_(f), a_(std::move(a)), b_(std::move(b)) {
    if (field_.is_rational() && b_ != 0)
        throw FieldMismatchError("sqrt coefficient in rational-mode scalar");
}

const Rational& Scalar::as_rational() const {
    if (b_ != 0) throw PreconditionError("scalar has a nonzero sqrt part");
    return a_;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw FieldMismatchError("mixed scalar fields: " + field_.name() + " vs " +
                                 o.field_.name());
}

int Scalar::sign() const {
    const int sa = a_.sign();
    if (b_ == 0) return sa;
    const int sb = b_.sign();
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Signs differ: a + b*sqrt(d) has the sign of a^2 - b^2 d when |a| wins,
    // i.e. sign = sa * sign(a^2 - b^2 d).
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * field_.d();
    const int c = lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    if (c == 0) return 0;  // impossible for square-free d > 1 unless a=b=0
    return sa * c;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    return Scalar(field_, a_ + o.a_, b_ + o.b_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    return Scalar(field_, a_ - o.a_, b_ - o.b_);
}

Scalar Scalar::operator-() const { return Scalar(field_, -a_, -b_); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_rational()) return Scalar(field_, a_ * o.a_);
    const Rational d(field_.d());
    return Scalar(field_, a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_field(o);
    if (o.is_zero()) throw PreconditionError("division by zero");
    if (field_.is_rational()) return Scalar(field_, a_ / o.a_);
    // 1/(a+b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d); the norm is nonzero
    // because d is not a square.
    const Rational d(field_.d());
    const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    return Scalar(field_, (a_ * o.a_ - b_ * o.b_ * d) / norm, (b_ * o.a_ - a_ * o.b_) / norm);
}

int Scalar::compare(const Scalar& o) const {
    check_same_field(o);
    return (*this - o).sign();
}

std::string to_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: " + s);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError("bad rational '" + s + "': " + e.what());
    }
}

std::string Scalar::str() const {
    if (b_ == 0) return to_string(a_);
    std::string out = to_string(a_);
    out += b_ < 0 ? "-" : "+";
    out += to_string(abs(b_));
    out += "*sqrt(" + std::to_string(field_.d()) + ")";
    return out;
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty scalar");

    const auto star = s.find("*sqrt(");
    if (star == std::string::npos) {
        return Scalar(f, parse_rational(s));
    }
    if (s.back() != ')') throw ParseError("bad scalar: " + text);
    const std::string dstr = s.substr(star + 6, s.size() - star - 7);
    std::int64_t d = 0;
    try {
        d = std::stoll(dstr);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad sqrt argument in: " + text);
    }
    if (f.is_rational() || f.d() != d)
        throw FieldMismatchError("scalar '" + text + "' does not live in " + f.name());

    // Split the sqrt coefficient from the rational part at the last +/- that
    // is not a leading sign.
    std::string head = s.substr(0, star);
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;) {
        if (head[i] == '+' || head[i] == '-') {
            split = i;
            break;
        }
    }
    Rational a(0), b(0);
    if (split == std::string::npos) {
        b = parse_rational(head);
    } else {
        a = parse_rational(head.substr(0, split));
        const std::string btxt = head.substr(split + 1);
        b = parse_rational(btxt.empty() ? "1" : btxt);
        if (head[split] == '-') b = -b;
    }
    return Scalar(f, a, b);
}

double Scalar::approx() const {
    const double av = static_cast<double>(numerator(a_)) / static_cast<double>(denominator(a_));
    if (b_ == 0) return av;
    const double bv = static_cast<double>(numerator(b_)) / static_cast<double>(denominator(b_));
    return av + bv * std::sqrt(static_cast<double>(field_.d()));
}

}  // namespace iex
