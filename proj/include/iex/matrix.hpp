#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iex/scalar.hpp"

namespace iex {

// Dense m x m matrix of arbitrary-precision integers. Visitation matrices are
// nonnegative and unimodular; products are accumulated incrementally, never
// recomputed from scratch.
class IntMatrix {
   public:
    IntMatrix() : m_(0) {}
    explicit IntMatrix(std::size_t m) : m_(m), e_(m * m, BigInt(0)) {}
    static IntMatrix identity(std::size_t m);

    std::size_t size() const { return m_; }
    const BigInt& at(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }
    BigInt& at(std::size_t i, std::size_t j) { return e_[i * m_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return m_ == o.m_ && e_ == o.e_; }

    std::vector<BigInt> column_sums() const;
    BigInt det() const;  // exact, fraction-free elimination
    bool all_positive() const;
    bool is_nonnegative() const;

    std::string str() const;

   private:
    std::size_t m_;
    std::vector<BigInt> e_;
};

// m x m matrix over Z_q, entries in [0, q). q >= 1; q == 1 is the degenerate
// one-element ring (everything is the identity).
class ModMatrix {
   public:
    ModMatrix() : m_(0), q_(1) {}
    ModMatrix(std::size_t m, std::uint32_t q);
    static ModMatrix identity(std::size_t m, std::uint32_t q);
    static ModMatrix reduce(const IntMatrix& a, std::uint32_t q);

    std::size_t size() const { return m_; }
    std::uint32_t modulus() const { return q_; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t v) {
        e_[i * m_ + j] = static_cast<std::uint8_t>(v);
    }

    ModMatrix operator*(const ModMatrix& o) const;
    bool operator==(const ModMatrix& o) const = default;
    bool is_identity() const;

    // Determinant in Z_q; the matrix is invertible iff gcd(det, q) == 1.
    std::uint32_t det_mod() const;
    bool invertible() const;
    ModMatrix inverse() const;  // via integer adjugate, needs unit determinant

    // Row-major digit string, e.g. "0111" for [[0,1],[1,1]]; q <= 10 only.
    std::string digits() const;
    std::string str() const;

    // Packing for hash containers; entries fit in 64 bits for m <= 5, q <= 7.
    std::uint64_t pack() const;

   private:
    std::size_t m_;
    std::uint32_t q_;
    std::vector<std::uint8_t> e_;
};

}  // namespace iex
