#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iex/rauzy.hpp"

namespace iex {

// A(pi, c) reduced mod q.
ModMatrix g_of(const Permutation& pi, Letter c, std::uint32_t q);

// Finite subgroup of GL(m, Z_q) generated by the cocycle along loops of the
// class graph based at pi, together with a witness word (letters in
// application order) for each element. The closure is exhaustively checked
// to be a group: it contains the identity and is closed under products and
// inverses.
struct GroupTable {
    Permutation base;
    std::uint32_t q = 2;
    std::vector<ModMatrix> elements;       // discovery order; elements[0] = e
    std::vector<std::string> witnesses;

    std::size_t order() const { return elements.size(); }
    bool contains(const ModMatrix& g) const;
    bool same_elements(const GroupTable& o) const;
};

GroupTable semigroup_closure(const Permutation& pi, std::uint32_t q);

// Fixed connector from one permutation to another inside a class: the mod-q
// product along the BFS-shortest path, letters tie-broken a before b, so
// repeated calls agree.
struct Connector {
    ModMatrix matrix;
    std::string path;
};

Connector connector(const Permutation& from, const Permutation& to, std::uint32_t q);

// Connectors from a base permutation to every member of its class, fixed
// once and shared by the cocycle and orbit routines.
class ConnectorTable {
   public:
    ConnectorTable(const Permutation& pi0, std::uint32_t q);

    const RauzyClass& cls() const { return cls_; }
    std::uint32_t modulus() const { return q_; }
    const Permutation& base() const { return pi0_; }
    const Connector& to(const Permutation& pi) const;
    const Connector& to(std::size_t member) const { return conns_[member]; }

   private:
    Permutation pi0_;
    std::uint32_t q_;
    RauzyClass cls_;
    std::vector<Connector> conns_;
};

// h(x) = g(pi0, c(x) pi(x))^{-1} g(x) g(pi0, pi(x)), the cocycle conjugated
// back to the base fiber. Needs the induction type of (lambda, pi).
ModMatrix cocycle_h(const std::vector<Scalar>& lambda, const Permutation& pi,
                    const ConnectorTable& table);

struct SkewState {
    std::vector<Scalar> lambda;  // simplex point, |lambda| = 1
    Permutation pi;
    ModMatrix gamma;
};

struct SkewOrbit {
    std::vector<std::size_t> fiber_visits;  // steps with (pi, gamma) = (pi0, e)
    std::vector<ModMatrix> trace;           // gamma after each step (when kept)
    SkewState final_state;
    std::size_t steps_done = 0;
    bool tie_stopped = false;
};

SkewOrbit skew_orbit(const SkewState& start, const Permutation& pi0, std::size_t steps,
                     bool keep_trace = false);

// Lemma-style structure check: the loop cocycle group at pi equals the loop
// group at pi0.
bool subgroup_equality_check(const Permutation& pi, const Permutation& pi0, std::uint32_t q);

// Shortest letter word c_1..c_n with c_n...c_1 pi = pi whose accumulated
// matrix is entrywise positive and congruent to the identity mod q. BFS over
// (permutation, matrix mod q, positivity pattern); q = 1 drops the mod-q
// constraint.
struct IdentityWord {
    std::string word;
    IntMatrix matrix;
};

IdentityWord find_identity_word(const Permutation& pi, std::uint32_t q);

}  // namespace iex
