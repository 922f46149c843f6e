#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iex/iet.hpp"

namespace iex {

enum class Letter : char { A = 'a', B = 'b' };

inline char letter_char(Letter c) { return static_cast<char>(c); }

// Induction type of (lambda, pi): A when the last interval is shorter than
// the interval sent to the last position, B when longer. Equality is a hard
// tie error, never silently broken.
Letter rauzy_type(const std::vector<Scalar>& lambda, const Permutation& pi);

// Successor permutations under the two Rauzy actions. Both preserve
// irreducibility; their defining contract is that the induced map of a
// type-a (resp. type-b) pair has permutation action_a(pi) (resp. action_b(pi)),
// which the tests check against the first-return oracle.
Permutation action_a(const Permutation& pi);
Permutation action_b(const Permutation& pi);
Permutation action(const Permutation& pi, Letter c);

// The unimodular nonnegative matrix with lambda = A(pi,c) * lambda' for every
// pair of type c. For type b it is the identity plus a single 1 in row m,
// column pi^{-1}(m).
IntMatrix rauzy_matrix(const Permutation& pi, Letter c);

struct RauzyStep {
    std::vector<Scalar> lambda;
    Permutation pi;
    IntMatrix matrix;
    Letter letter;
};

RauzyStep rauzy_step(const std::vector<Scalar>& lambda, const Permutation& pi);

// Letters, permutation sequence, accumulated visitation matrix (product in
// step order) and induced lengths after n steps. The matrix is accumulated
// incrementally; entries grow exponentially with n.
struct RauzyPath {
    Permutation start;
    std::string letters;
    std::vector<Permutation> perms;  // pi^(1) .. pi^(n)
    IntMatrix matrix;                // A^(n)
    std::vector<Scalar> lambda_n;
    bool tie_stopped = false;

    std::size_t steps() const { return letters.size(); }
};

// Runs n induction steps. On a tie at step k: throws TieError(k) unless
// allow_partial, in which case the path up to k is returned with
// tie_stopped set.
RauzyPath rauzy_iterate(const std::vector<Scalar>& lambda, const Permutation& pi, std::size_t n,
                        bool allow_partial = false);

// Projectivized step on the unit simplex: |lambda| must be 1 exactly.
RauzyStep rauzy_normalized(const std::vector<Scalar>& lambda, const Permutation& pi);

struct ClassEdge {
    std::size_t from;
    Letter letter;
    std::size_t to;
};

// Closure of pi under both actions, with one labeled edge per (member, letter).
struct RauzyClass {
    std::vector<Permutation> members;
    std::vector<ClassEdge> edges;

    std::size_t index_of(const Permutation& pi) const;  // throws if absent
    bool contains(const Permutation& pi) const;
    std::size_t successor(std::size_t from, Letter c) const;
};

RauzyClass rauzy_class(const Permutation& pi);

// Return times are the column sums of an accumulated visitation matrix.
std::vector<BigInt> return_times(const IntMatrix& a);

struct Tower {
    Scalar base_lo, base_hi;  // base subinterval of J_n
    BigInt height;
    // Level l is T^l(base); levels() materializes them for small towers.
};

std::vector<Tower> build_towers(const std::vector<Scalar>& lambda, const Permutation& pi,
                                std::size_t n);

std::vector<std::pair<Scalar, Scalar>> tower_levels(const IntervalExchange& t, const Tower& tw);

// v(M) = max_{i,j,k} M_ij / M_ik for a strictly positive matrix.
Rational balance_ratio(const IntMatrix& m);

}  // namespace iex
