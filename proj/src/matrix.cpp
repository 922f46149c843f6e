#include "iex/matrix.hpp"

#include <numeric>

namespace iex {

IntMatrix IntMatrix::identity(std::size_t m) {
    IntMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) a.at(i, i) = 1;
    return a;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (m_ != o.m_) throw PreconditionError("matrix size mismatch");
    IntMatrix r(m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t k = 0; k < m_; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < m_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

std::vector<BigInt> IntMatrix::column_sums() const {
    std::vector<BigInt> s(m_, BigInt(0));
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) s[j] += at(i, j);
    return s;
}

BigInt IntMatrix::det() const {
    // Bareiss fraction-free elimination over a working copy.
    if (m_ == 0) return BigInt(1);
    std::vector<BigInt> w = e_;
    auto el = [&](std::size_t i, std::size_t j) -> BigInt& { return w[i * m_ + j]; };
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < m_; ++k) {
        if (el(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < m_ && el(p, k) == 0) ++p;
            if (p == m_) return BigInt(0);
            for (std::size_t j = 0; j < m_; ++j) std::swap(el(k, j), el(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m_; ++i)
            for (std::size_t j = k + 1; j < m_; ++j)
                el(i, j) = (el(i, j) * el(k, k) - el(i, k) * el(k, j)) / prev;
        prev = el(k, k);
    }
    return sign * el(m_ - 1, m_ - 1);
}

bool IntMatrix::all_positive() const {
    for (const BigInt& v : e_)
        if (v <= 0) return false;
    return true;
}

bool IntMatrix::is_nonnegative() const {
    for (const BigInt& v : e_)
        if (v < 0) return false;
    return true;
}

std::string IntMatrix::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < m_; ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m_; ++j) {
            if (j) out += ",";
            out += at(i, j).str();
        }
        out += "]";
    }
    return out + "]";
}

ModMatrix::ModMatrix(std::size_t m, std::uint32_t q) : m_(m), q_(q), e_(m * m, 0) {
    if (q < 1) throw PreconditionError("modulus must be >= 1");
}

ModMatrix ModMatrix::identity(std::size_t m, std::uint32_t q) {
    ModMatrix a(m, q);
    if (q > 1)
        for (std::size_t i = 0; i < m; ++i) a.set(i, i, 1);
    return a;
}

ModMatrix ModMatrix::reduce(const IntMatrix& a, std::uint32_t q) {
    ModMatrix r(a.size(), q);
    if (q == 1) return r;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            BigInt v = a.at(i, j) % q;
            if (v < 0) v += q;
            r.set(i, j, static_cast<std::uint32_t>(v));
        }
    return r;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    if (m_ != o.m_ || q_ != o.q_) throw PreconditionError("mod-matrix mismatch");
    ModMatrix r(m_, q_);
    if (q_ == 1) return r;
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) {
            std::uint32_t acc = 0;
            for (std::size_t k = 0; k < m_; ++k) acc += at(i, k) * o.at(k, j);
            r.set(i, j, acc % q_);
        }
    return r;
}

bool ModMatrix::is_identity() const { return *this == identity(m_, q_); }

std::uint32_t ModMatrix::det_mod() const {
    // Exact integer determinant of the lift, then reduced.
    IntMatrix lift(m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) lift.at(i, j) = at(i, j);
    if (q_ == 1) return 0;
    BigInt d = lift.det() % q_;
    if (d < 0) d += q_;
    return static_cast<std::uint32_t>(d);
}

bool ModMatrix::invertible() const {
    if (q_ == 1) return true;
    return std::gcd(det_mod(), q_) == 1;
}

ModMatrix ModMatrix::inverse() const {
    if (q_ == 1) return *this;
    const std::uint32_t d = det_mod();
    if (std::gcd(d, q_) != 1) throw PreconditionError("matrix not invertible mod q");
    std::uint32_t dinv = 0;
    for (std::uint32_t x = 1; x < q_; ++x)
        if (d * x % q_ == 1) {
            dinv = x;
            break;
        }
    // Adjugate via integer cofactors of the lift.
    IntMatrix lift(m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) lift.at(i, j) = at(i, j);
    ModMatrix r(m_, q_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) {
            IntMatrix minor(m_ - 1);
            for (std::size_t a = 0, ai = 0; a < m_; ++a) {
                if (a == j) continue;
                for (std::size_t b = 0, bj = 0; b < m_; ++b) {
                    if (b == i) continue;
                    minor.at(ai, bj) = lift.at(a, b);
                    ++bj;
                }
                ++ai;
            }
            BigInt c = minor.det();
            if ((i + j) % 2) c = -c;
            c = (c % q_ + q_) % q_;
            r.set(i, j, static_cast<std::uint32_t>(c) * dinv % q_);
        }
    return r;
}

std::string ModMatrix::digits() const {
    if (q_ > 10) throw PreconditionError("digit form needs q <= 10");
    std::string s;
    s.reserve(m_ * m_);
    for (std::uint8_t v : e_) s.push_back(static_cast<char>('0' + v));
    return s;
}

std::string ModMatrix::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < m_; ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m_; ++j) {
            if (j) out += ",";
            out += std::to_string(at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

std::uint64_t ModMatrix::pack() const {
    std::uint64_t key = 0;
    for (std::uint8_t v : e_) key = key * q_ + v;
    return key;
}

}  // namespace iex
