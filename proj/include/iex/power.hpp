#pragma once

#include <cstdint>
#include <vector>

#include "iex/rauzy.hpp"

namespace iex {

/**
 * T^q as an explicit interval exchange. The breakpoint set is
 * D_q = { T^{-i}(beta_j) : 1 <= j < m, 0 <= i < q }; when those points are
 * pairwise distinct and interior the power map has q(m-1)+1 intervals.
 * Fewer distinct points mean a backward-orbit collision at depth q and the
 * result is flagged degenerate. Adjacent intervals with equal translation
 * are kept separate (the partition is by D_q, not by essential breaks).
 */
struct PowerMap {
    IntervalExchange base;
    std::uint32_t q = 1;
    IntervalExchange map;          // the explicit (eta, sigma)
    std::vector<Scalar> points;    // distinct interior breakpoints, ascending
    bool degenerate = false;
};

PowerMap power_iet(const IntervalExchange& t, std::uint32_t q);

// Executable form of the parity step: given a state with all-odd column sums,
// both successors acquire an even column sum.
struct EvenReturnSuccessor {
    Letter letter;
    std::size_t even_column;  // 1-based witness column
    std::vector<BigInt> sums;
};

std::vector<EvenReturnSuccessor> even_return_exists(const IntMatrix& a, const Permutation& pi);

// All column sums congruent to 1 mod q.
bool commutation_condition(const IntMatrix& a, std::uint32_t q);

enum class CommuteStatus { Commute, Witness, Open };

struct CommutationResult {
    CommuteStatus status = CommuteStatus::Open;
    bool condition = false;            // column sums all = 1 mod q
    std::vector<BigInt> column_sums;
    // Witness: exact point where the compositions differ, with both values
    // and the residue classes used to locate it.
    Scalar point, lhs, rhs;
    std::vector<std::size_t> gamma, gamma_star;  // 1-based interval indices
};

// Compares the induced map of T^q with the q-th power of the induced map of
// T on J_n = [0, |lambda^(n)|). When the column-sum condition holds the two
// must agree exactly (a counterexample throws). When it fails, searches for
// a point where the compositions of the two induced maps differ.
CommutationResult verify_power_commutation(const IntervalExchange& t, std::size_t n,
                                           std::uint32_t q,
                                           std::uint64_t step_budget = 1000000);

}  // namespace iex
