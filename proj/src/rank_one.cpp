#include "iex/rank_one.hpp"

#include <algorithm>

namespace iex {

Rational tau_budget(const Rational& eps, std::uint32_t q, const Rational& vb) {
    if (eps <= 0 || eps >= 1) throw PreconditionError("need 0 < eps < 1");
    if (q < 1) throw PreconditionError("need q >= 1");
    if (vb < 1) throw PreconditionError("balance ratio is at least 1");
    BigInt two_q(1), two_qm1(1);
    for (std::uint32_t i = 0; i < q; ++i) two_q *= 2;
    for (std::uint32_t i = 0; i + 1 < q; ++i) two_qm1 *= 2;

    Rational tau(1);
    for (int t = 0; t <= 4096; ++t) {
        const Rational half_pow = two_qm1 * tau;
        if (two_q * tau < eps && half_pow < 1 && vb * half_pow / (1 - half_pow) < eps) {
            // recheck both inequalities symbolically before returning
            if (!(two_q * tau < eps)) throw VerificationError("tau recheck failed");
            if (!(vb * half_pow / (1 - half_pow) < eps))
                throw VerificationError("tau recheck failed");
            return tau;
        }
        tau /= 2;
    }
    throw VerificationError("no dyadic tau satisfies the budget inequalities");
}

namespace {

struct LevelRun {
    bool linear = true;
    std::vector<std::pair<Scalar, Scalar>> levels;
    std::pair<Scalar, Scalar> returned;
};

// Iterate T^q on [lo, hi) for n0 rigid steps; stops early when a level
// straddles an essential discontinuity of the power map.
LevelRun run_levels(const IntervalExchange& power_map, const Scalar& lo, const Scalar& hi,
                    const BigInt& n0) {
    if (n0 <= 0 || n0 > BigInt(20000000)) throw BudgetError("tower height out of range");
    LevelRun run;
    Scalar cur_lo = lo, cur_hi = hi;
    for (BigInt i = 0; i < n0; ++i) {
        const auto off = rigid_offset(power_map, cur_lo, cur_hi);
        if (!off) {
            run.linear = false;
            run.returned = {cur_lo, cur_hi};
            return run;
        }
        run.levels.emplace_back(cur_lo, cur_hi);
        cur_lo += *off;
        cur_hi += *off;
    }
    run.returned = {cur_lo, cur_hi};
    return run;
}

Scalar interval_overlap(const std::pair<Scalar, Scalar>& a, const std::pair<Scalar, Scalar>& b) {
    const Scalar lo = std::max(a.first, b.first);
    const Scalar hi = std::min(a.second, b.second);
    const Scalar zero = a.first.zero();
    return hi > lo ? hi - lo : zero;
}

}  // namespace

VerifyReport verify_certificate(const IntervalExchange& t, const TowerCertificate& cert) {
    VerifyReport rep;
    const Field& f = t.field();
    const Scalar zero(f, Rational(0));
    rep.coverage = zero;
    rep.overlap_rel_base = zero;
    rep.overlap_rel_total = zero;

    if (cert.j_lo.sign() < 0 || cert.j_hi > t.total() || cert.j_lo >= cert.j_hi)
        throw PreconditionError("certificate base is not a subinterval of the domain");

    const PowerMap power = power_iet(t, cert.q);
    LevelRun run = run_levels(power.map, cert.j_lo, cert.j_hi, cert.n0);
    rep.linear = run.linear;
    rep.levels = run.levels;
    rep.returned = run.returned;

    if (!run.linear) {
        rep.first_violation = "b";
        return rep;
    }

    std::vector<std::pair<Scalar, Scalar>> sorted = run.levels;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.disjoint = true;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i].second > sorted[i + 1].first) {
            rep.disjoint = false;
            break;
        }

    Scalar covered = zero;
    for (const auto& lv : run.levels) covered += lv.second - lv.first;
    rep.coverage = covered / t.total();
    const Scalar eps_s(f, cert.epsilon);
    const Scalar one(f, Rational(1));
    rep.coverage_ok = rep.coverage > one - eps_s;

    const Scalar ov = interval_overlap({cert.j_lo, cert.j_hi}, run.returned);
    rep.overlap_rel_base = ov / (cert.j_hi - cert.j_lo);
    rep.overlap_rel_total = ov / t.total();
    rep.overlap_ok = rep.overlap_rel_base > one - eps_s;

    if (!rep.disjoint)
        rep.first_violation = "a";
    else if (!rep.coverage_ok)
        rep.first_violation = "c";
    else if (!rep.overlap_ok)
        rep.first_violation = "d";
    return rep;
}

namespace {

struct Candidate {
    Scalar lo, hi;
    BigInt n0;
    Scalar coverage;  // n0 * |J| (absolute, not yet divided by |lambda|)
    bool dominant = false;
};

}  // namespace

TowerCertificate tower_search(const IntervalExchange& t, std::uint32_t q, const Rational& eps,
                              const SearchOptions& opt) {
    if (eps <= 0 || eps >= 1) throw PreconditionError("need 0 < eps < 1");
    if (q < 1) throw PreconditionError("need q >= 1");
    if (!t.permutation().is_irreducible())
        throw PreconditionError("tower search needs an irreducible permutation");

    const Field& f = t.field();
    const Scalar zero(f, Rational(0));
    const Scalar one(f, Rational(1));

    const IdentityWord word = find_identity_word(t.permutation(), q);
    const Rational vb = balance_ratio(word.matrix);
    const Rational tau = tau_budget(eps, q, vb);
    BigInt two_qm1(1);
    for (std::uint32_t i = 0; i + 1 < q; ++i) two_qm1 *= 2;

    const PowerMap power = power_iet(t, q);
    const Scalar eps_s(f, eps);
    const Scalar dom_lambda(f, Rational(1) - tau);           // alpha~_1 > 1 - tau
    const Scalar dom_eta(f, Rational(1) - two_qm1 * tau);    // eta_k > (1 - 2^{q-1} tau) |alpha|

    std::vector<Scalar> lambda_k = t.lengths();
    Permutation pi_k = t.permutation();
    ModMatrix amod = ModMatrix::identity(t.intervals(), q);
    Scalar best_coverage = zero;

    for (std::size_t depth = 1; depth <= opt.depth_budget; ++depth) {
        RauzyStep st;
        try {
            st = rauzy_step(lambda_k, pi_k);
        } catch (const TieError&) {
            throw TieError(depth, "tie at induction depth " + std::to_string(depth) +
                                      "; rational data has a finite horizon");
        }
        lambda_k = st.lambda;
        pi_k = st.pi;
        amod = amod * ModMatrix::reduce(st.matrix, q);
        if (depth < opt.min_depth) continue;
        if (!amod.is_identity()) continue;

        Scalar L = zero;
        for (const Scalar& l : lambda_k) L += l;

        ReturnMap power_return;
        try {
            power_return = power.map.first_return(L, opt.step_budget);
        } catch (const BudgetError&) {
            throw BudgetError("tower search ran out of orbit budget at depth " +
                              std::to_string(depth) + "; best coverage so far " +
                              best_coverage.str());
        }

        // Spot-check of the congruence route: with A = e mod q the induced
        // map of the power must equal the power of the induced map.
        const IntervalExchange r_ind = t.first_return(L, opt.step_budget).induced(f);
        const IntervalExchange s_ind = power_return.induced(f);
        if (!pointwise_equal(s_ind, power_compose(r_ind, q)))
            throw VerificationError("congruence holds but the induced maps disagree");

        // Dominance data for the route label.
        const bool lambda_dominant = lambda_k.front() / L > dom_lambda;

        // Candidates: every return atom, then every prefix of the domain with
        // the smallest covered return time.
        std::vector<Candidate> cands;
        const std::size_t atoms = power_return.atoms();
        Scalar alo = zero;
        for (std::size_t j = 0; j < atoms; ++j) {
            Candidate c;
            c.lo = alo;
            c.hi = alo + power_return.atom_lengths[j];
            c.n0 = power_return.return_times[j];
            c.coverage = (c.hi - c.lo) * Scalar(f, Rational(c.n0));
            c.dominant = lambda_dominant && (c.hi - c.lo) > dom_eta * L;
            cands.push_back(c);
            alo = c.hi;
        }
        Scalar plo = zero;
        BigInt least = power_return.return_times.front();
        Scalar pend = power_return.atom_lengths.front();
        for (std::size_t j = 1; j < atoms; ++j) {
            pend += power_return.atom_lengths[j];
            least = std::min(least, power_return.return_times[j]);
            Candidate c;
            c.lo = plo;
            c.hi = pend;
            c.n0 = least;
            c.coverage = c.hi * Scalar(f, Rational(least));
            cands.push_back(c);
        }
        std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.dominant != b.dominant) return a.dominant;
            if (a.coverage != b.coverage) return a.coverage > b.coverage;
            return a.lo < b.lo;
        });

        // Balance data of the actual return structure (rectangular counts).
        bool counts_positive = true;
        for (const auto& col : power_return.visit_counts)
            for (const BigInt& v : col)
                if (v <= 0) counts_positive = false;
        Rational v_actual(0);
        if (counts_positive) {
            for (std::size_t i = 0; i < power_return.visit_counts.front().size(); ++i) {
                BigInt mx = power_return.visit_counts[0][i], mn = mx;
                for (std::size_t j = 1; j < atoms; ++j) {
                    mx = std::max(mx, power_return.visit_counts[j][i]);
                    mn = std::min(mn, power_return.visit_counts[j][i]);
                }
                v_actual = std::max(v_actual, Rational(mx, mn));
            }
        }

        for (const Candidate& c : cands) {
            if (c.coverage > best_coverage) best_coverage = c.coverage / t.total();
            if (!(c.coverage / t.total() > one - eps_s)) continue;

            TowerCertificate cert;
            cert.j_lo = c.lo;
            cert.j_hi = c.hi;
            cert.n0 = c.n0;
            cert.q = q;
            cert.epsilon = eps;
            cert.prov.depth = depth;
            cert.prov.word = word.word;
            cert.prov.b_matrix = word.matrix;
            cert.prov.v_b = vb;
            cert.prov.tau = tau;
            cert.prov.route = c.dominant ? "dominant" : "scan";
            cert.prov.gate_identity_mod_q = true;
            cert.prov.commutation_spotcheck = true;
            cert.prov.balance_checked = counts_positive;
            cert.prov.v_actual = v_actual;

            const VerifyReport rep = verify_certificate(t, cert);
            if (!rep.ok()) continue;
            cert.coverage = rep.coverage;
            cert.overlap_rel_base = rep.overlap_rel_base;
            cert.overlap_rel_total = rep.overlap_rel_total;
            cert.verified = true;

            if (counts_positive) {
                // Return-time balance: every pair of return times within the
                // actual balance ratio.
                BigInt tmax = power_return.return_times.front(), tmin = tmax;
                for (const BigInt& r : power_return.return_times) {
                    tmax = std::max(tmax, r);
                    tmin = std::min(tmin, r);
                }
                if (Rational(tmax) > v_actual * Rational(tmin))
                    throw VerificationError("return-time balance inequality failed");
                // Remainder chain with the actual dominance defect
                // xi = 1 - |J|/L: uncovered mass is at most
                // v * coverage * xi/(1-xi) + (v-1) * coverage.
                const Scalar v_s(f, v_actual);
                const Scalar xi = one - (c.hi - c.lo) / L;
                const Scalar bound =
                    v_s * cert.coverage * xi / (one - xi) + (v_s - one) * cert.coverage;
                if (one - cert.coverage > bound)
                    throw VerificationError("remainder bound inequality failed");
            }
            return cert;
        }
    }
    throw BudgetError("no certificate within depth budget " +
                      std::to_string(opt.depth_budget) + "; best coverage " +
                      best_coverage.str());
}

RefinementReport refinement_check(const IntervalExchange& t, const TowerCertificate& cert,
                                  unsigned dyadic_depth, const Rational& eps) {
    const VerifyReport rep = verify_certificate(t, cert);
    if (!rep.ok()) throw PreconditionError("refinement check needs a verified certificate");
    const Field& f = t.field();
    const Scalar zero(f, Rational(0));
    const Scalar two(f, Rational(2));

    // tower sets: the levels plus the leftover complement as one atom
    Scalar level_mass = zero;
    for (const auto& lv : rep.levels) level_mass += lv.second - lv.first;
    const Scalar rem_mass = t.total() - level_mass;

    std::vector<std::pair<Scalar, Scalar>> sorted = rep.levels;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    RefinementReport out;
    out.max_defect = zero;
    BigInt atoms(1);
    for (unsigned i = 0; i < dyadic_depth; ++i) atoms *= 2;
    const Scalar width = t.total() / Scalar(f, Rational(atoms));

    for (BigInt k = 0; k < atoms; ++k) {
        const Scalar plo = width * Scalar(f, Rational(k));
        const Scalar phi = plo + width;
        Scalar defect = width;  // |p| - sum over included sets of (2|s∩p| - |s|)
        Scalar level_in_p = zero;
        for (const auto& lv : sorted) {
            if (lv.second <= plo || lv.first >= phi) continue;
            const Scalar cap = interval_overlap(lv, {plo, phi});
            level_in_p += cap;
            const Scalar gain = two * cap - (lv.second - lv.first);
            if (gain > zero) defect -= gain;
        }
        const Scalar rem_in_p = width - level_in_p;
        const Scalar rem_gain = two * rem_in_p - rem_mass;
        if (rem_gain > zero) defect -= rem_gain;
        defect = defect / t.total();
        out.defects.push_back(defect);
        if (defect > out.max_defect) out.max_defect = defect;
    }
    out.pass = out.max_defect < Scalar(f, eps);
    return out;
}

Scalar rigidity_defect(const IntervalExchange& t, const TowerCertificate& cert) {
    const VerifyReport rep = verify_certificate(t, cert);
    if (!rep.ok()) throw PreconditionError("rigidity defect needs a verified certificate");
    const Scalar one(t.field(), Rational(1));
    return one - rep.overlap_rel_base;
}

}  // namespace iex
