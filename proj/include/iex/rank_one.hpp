#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iex/power.hpp"
#include "iex/skew.hpp"

namespace iex {

struct CertificateProvenance {
    std::size_t depth = 0;       // induction depth of the source domain
    std::string word;            // identity word used for the budget
    IntMatrix b_matrix;          // its accumulated matrix B
    Rational v_b;                // balance ratio of B
    Rational tau;                // dyadic budget from tau_budget
    std::string route;           // "dominant" or "scan"
    bool gate_identity_mod_q = false;  // A^(n) = I mod q at the source depth
    bool commutation_spotcheck = false;
    bool balance_checked = false;      // proof-chain inequalities were assertable
    Rational v_actual;                 // balance of the actual return counts
};

/**
 * Exact witness that the first n_0 iterates of T^q on J form a high tower:
 * (a) the sets T^{iq}J, 0 <= i < n_0, are pairwise disjoint,
 * (b) T^q is one translation on each of them,
 * (c) they cover more than (1 - eps) of [0, |lambda|),
 * (d) T^{n_0 q}J returns over J with overlap above (1 - eps).
 * The overlap is recorded under both normalizations (by |J| and by |lambda|)
 * and (d) is decided relative to |J|.
 */
struct TowerCertificate {
    Scalar j_lo, j_hi;
    BigInt n0;
    std::uint32_t q = 1;
    Rational epsilon;
    Scalar coverage;           // sum of level lengths / |lambda|
    Scalar overlap_rel_base;   // |J ∩ T^{n0 q} J| / |J|
    Scalar overlap_rel_total;  // |J ∩ T^{n0 q} J| / |lambda|
    CertificateProvenance prov;
    bool verified = false;
};

// Largest dyadic tau = 1/2^t with 2^q tau < eps and
// vb * 2^(q-1) tau / (1 - 2^(q-1) tau) < eps, both rechecked exactly.
Rational tau_budget(const Rational& eps, std::uint32_t q, const Rational& vb);

struct SearchOptions {
    std::size_t min_depth = 1;
    std::size_t depth_budget = 64;
    std::uint64_t step_budget = 1000000;
};

TowerCertificate tower_search(const IntervalExchange& t, std::uint32_t q, const Rational& eps,
                              const SearchOptions& opt = {});

struct VerifyReport {
    bool disjoint = false, linear = false, coverage_ok = false, overlap_ok = false;
    Scalar coverage, overlap_rel_base, overlap_rel_total;
    std::string first_violation;  // "", "a", "b", "c" or "d"
    std::vector<std::pair<Scalar, Scalar>> levels;      // tower order
    std::pair<Scalar, Scalar> returned;                 // T^{n0 q} J
    bool ok() const { return disjoint && linear && coverage_ok && overlap_ok; }
};

// Re-derives (a)-(d) from scratch by exact iteration of T^q on the endpoints
// of J; independent of how the certificate was produced.
VerifyReport verify_certificate(const IntervalExchange& t, const TowerCertificate& cert);

struct RefinementReport {
    bool pass = false;
    Scalar max_defect;             // relative to |lambda|
    std::vector<Scalar> defects;   // one per dyadic atom
};

// Finite partition refinement: each dyadic interval of the given rank must be
// approximable by a union of tower levels (plus the remainder atom) up to
// eps, measured exactly.
RefinementReport refinement_check(const IntervalExchange& t, const TowerCertificate& cert,
                                  unsigned dyadic_depth, const Rational& eps);

// 1 - |J ∩ T^{n0 q} J| / |J|: the exact return defect witnessed at time n0 q.
Scalar rigidity_defect(const IntervalExchange& t, const TowerCertificate& cert);

}  // namespace iex
