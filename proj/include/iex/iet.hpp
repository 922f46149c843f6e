#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iex/matrix.hpp"
#include "iex/scalar.hpp"

namespace iex {

// Permutation of {1..m}, stored as the image array pi(1..m).
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    std::size_t size() const { return img_.size(); }
    int operator()(int i) const { return img_[static_cast<std::size_t>(i) - 1]; }
    int inv(int v) const { return inv_[static_cast<std::size_t>(v) - 1]; }
    Permutation inverse() const;

    // {pi(1..k)} != {1..k} for every k < m.
    bool is_irreducible() const;

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }
    const std::vector<int>& images() const { return img_; }
    std::string str() const;

   private:
    std::vector<int> img_;
    std::vector<int> inv_;
};

class IntervalExchange;

// Result of idoc_check: either no collision among backward breakpoint orbits
// up to the stated depth, or an explicit collision witness. A pass is only a
// necessary condition, so it carries its depth.
struct IdocResult {
    bool pass = false;
    int depth = 0;
    // collision witness: T^{-j1}(beta_i1) == T^{-j2}(beta_i2), (i1,j1) != (i2,j2)
    int i1 = 0, j1 = 0, i2 = 0, j2 = 0;
    Scalar point;
};

// First-return data of an interval exchange to J = [0, L): the induced
// exchange, per-subinterval return times, and visit counts. visit_counts[j][i]
// is the number of visits of atom j's orbit to the i-th interval of the
// ambient map; summing over i gives the return time.
struct ReturnMap {
    Scalar domain_length;
    std::vector<Scalar> atom_lengths;
    std::vector<Scalar> atom_offsets;  // return branch: x -> x + offset
    std::vector<BigInt> return_times;
    std::vector<std::vector<BigInt>> visit_counts;

    std::size_t atoms() const { return atom_lengths.size(); }
    IntervalExchange induced(const Field& f) const;
    // Square visitation matrix; requires as many atoms as ambient intervals.
    IntMatrix visitation_matrix() const;
};

/**
 * Interval exchange transformation T_{lambda,pi} on [0, |lambda|): interval i
 * is [beta_{i-1}, beta_i) and is translated to the pi(i)-th position of the
 * image subdivision. Intervals are half-open, so points on a breakpoint
 * belong to the interval on their right and apply() is total on [0, |lambda|).
 *
 * Immutable after construction; operations are pure.
 */
class IntervalExchange {
   public:
    IntervalExchange(const Field& f, std::vector<Scalar> lengths, Permutation pi);

    // Build from (length, offset) pieces of a piecewise translation; the
    // pieces must tile [0, total) exactly both before and after translation.
    static IntervalExchange from_pieces(const Field& f, const std::vector<Scalar>& lengths,
                                        const std::vector<Scalar>& offsets);

    const Field& field() const { return field_; }
    std::size_t intervals() const { return lambda_.size(); }
    const std::vector<Scalar>& lengths() const { return lambda_; }
    const Permutation& permutation() const { return pi_; }
    const Scalar& total() const { return beta_.back(); }

    const Scalar& breakpoint(std::size_t i) const { return beta_[i]; }  // beta_0 .. beta_m
    const Scalar& piece_offset(std::size_t i) const { return offset_[i]; }  // 0-based piece

    // Index (0-based) of the interval containing x; domain error outside.
    std::size_t piece_index(const Scalar& x) const;

    Scalar apply(const Scalar& x) const;
    Scalar apply_n(const Scalar& x, const BigInt& n) const;  // n >= 0 forward steps
    IntervalExchange invert() const;

    // Interior breakpoints beta_1..beta_{m-1}, ascending.
    std::vector<Scalar> discontinuities() const;

    IdocResult idoc_check(int depth) const;

    ReturnMap first_return(const Scalar& L, std::uint64_t step_budget = 1000000) const;

    bool operator==(const IntervalExchange& o) const;

   private:
    Field field_;
    std::vector<Scalar> lambda_;
    Permutation pi_;
    std::vector<Scalar> beta_;    // beta_0 = 0 .. beta_m = |lambda|
    std::vector<Scalar> offset_;  // translation of piece i
};

// f after g, i.e. x -> f(g(x)), as an explicit interval exchange with
// adjacent equal-offset pieces merged.
IntervalExchange compose(const IntervalExchange& f, const IntervalExchange& g);

IntervalExchange power_compose(const IntervalExchange& f, std::uint32_t q);

// Exact map equality, decided on the common refinement of both partitions.
bool pointwise_equal(const IntervalExchange& f, const IntervalExchange& g);

// If [lo, hi) is translated rigidly by f (all pieces meeting it share one
// offset), returns that offset.
std::optional<Scalar> rigid_offset(const IntervalExchange& f, const Scalar& lo, const Scalar& hi);

}  // namespace iex
