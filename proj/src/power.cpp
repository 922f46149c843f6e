#include "iex/power.hpp"

#include <algorithm>

namespace iex {

PowerMap power_iet(const IntervalExchange& t, std::uint32_t q) {
    if (q < 1) throw PreconditionError("power needs q >= 1");
    PowerMap out{t, q, t, {}, false};
    const Field& f = t.field();
    const std::size_t m = t.intervals();

    std::vector<Scalar> pts;
    const IntervalExchange tinv = t.invert();
    for (std::size_t j = 1; j < m; ++j) {
        Scalar x = t.breakpoint(j);
        for (std::uint32_t i = 0; i < q; ++i) {
            pts.push_back(x);
            if (i + 1 < q) x = tinv.apply(x);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // keep interior points only
    std::vector<Scalar> interior;
    for (const Scalar& p : pts)
        if (p.sign() > 0 && p < t.total()) interior.push_back(p);
    out.degenerate = interior.size() < q * (m - 1);
    out.points = interior;

    std::vector<Scalar> bounds;
    bounds.push_back(Scalar(f, Rational(0)));
    for (const Scalar& p : interior) bounds.push_back(p);
    bounds.push_back(t.total());

    std::vector<Scalar> lens, offs;
    const Scalar two(f, Rational(2));
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const Scalar len = bounds[i + 1] - bounds[i];
        const Scalar mid = bounds[i] + len / two;
        Scalar y = mid;
        for (std::uint32_t k = 0; k < q; ++k) y = t.apply(y);
        lens.push_back(len);
        offs.push_back(y - mid);
    }
    out.map = IntervalExchange::from_pieces(f, lens, offs);
    return out;
}

std::vector<EvenReturnSuccessor> even_return_exists(const IntMatrix& a, const Permutation& pi) {
    const std::vector<BigInt> sums = a.column_sums();
    for (std::size_t j = 0; j < sums.size(); ++j)
        if (sums[j] % 2 == 0)
            throw PreconditionError("column " + std::to_string(j + 1) + " sum is even");
    std::vector<EvenReturnSuccessor> out;
    for (Letter c : {Letter::A, Letter::B}) {
        const IntMatrix succ = a * rauzy_matrix(pi, c);
        EvenReturnSuccessor rec;
        rec.letter = c;
        rec.sums = succ.column_sums();
        rec.even_column = 0;
        for (std::size_t j = 0; j < rec.sums.size(); ++j) {
            if (rec.sums[j] % 2 == 0) {
                rec.even_column = j + 1;
                break;
            }
        }
        if (rec.even_column == 0)
            throw VerificationError("no even column sum in successor; parity lemma violated");
        out.push_back(std::move(rec));
    }
    return out;
}

bool commutation_condition(const IntMatrix& a, std::uint32_t q) {
    if (q < 1) throw PreconditionError("modulus must be >= 1");
    for (const BigInt& s : a.column_sums())
        if ((s - 1) % q != 0) return false;
    return true;
}

CommutationResult verify_power_commutation(const IntervalExchange& t, std::size_t n,
                                           std::uint32_t q, std::uint64_t step_budget) {
    const Field& f = t.field();
    const RauzyPath path = rauzy_iterate(t.lengths(), t.permutation(), n);
    Scalar L(f, Rational(0));
    for (const Scalar& l : path.lambda_n) L += l;

    const IntervalExchange induced = t.first_return(L, step_budget).induced(f);
    const PowerMap power = power_iet(t, q);
    const IntervalExchange power_induced = power.map.first_return(L, step_budget).induced(f);

    CommutationResult res;
    res.column_sums = path.matrix.column_sums();
    res.condition = commutation_condition(path.matrix, q);

    if (res.condition) {
        const IntervalExchange composed = power_compose(induced, q);
        if (!pointwise_equal(power_induced, composed))
            throw VerificationError(
                "power of induced map differs from induced map of power although all column "
                "sums are 1 mod q");
        res.status = CommuteStatus::Commute;
        return res;
    }

    // residue classes of the return times, against the first interval
    const BigInt ref = res.column_sums.front() % q;
    for (std::size_t j = 0; j < res.column_sums.size(); ++j) {
        if ((res.column_sums[j] - ref) % q == 0)
            res.gamma.push_back(j + 1);
        else
            res.gamma_star.push_back(j + 1);
    }

    // Compare the two compositions as explicit exchanges; their common
    // refinement decides equality exactly.
    const IntervalExchange c1 = compose(power_induced, induced);
    const IntervalExchange c2 = compose(induced, power_induced);

    std::vector<Scalar> pts;
    for (std::size_t i = 1; i < c1.intervals(); ++i) pts.push_back(c1.breakpoint(i));
    for (std::size_t i = 1; i < c2.intervals(); ++i) pts.push_back(c2.breakpoint(i));
    pts.push_back(Scalar(f, Rational(0)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(L);

    const Scalar two(f, Rational(2));
    auto in_gamma = [&](const Scalar& x) {
        const std::size_t idx = induced.piece_index(x) + 1;
        return std::find(res.gamma.begin(), res.gamma.end(), idx) != res.gamma.end();
    };
    std::optional<Scalar> fallback;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Scalar mid = pts[i] + (pts[i + 1] - pts[i]) / two;
        const Scalar lhs = c1.apply(mid);
        const Scalar rhs = c2.apply(mid);
        if (lhs == rhs) continue;
        const bool preferred = in_gamma(mid) && !in_gamma(power_induced.apply(mid));
        if (preferred) {
            res.status = CommuteStatus::Witness;
            res.point = mid;
            res.lhs = lhs;
            res.rhs = rhs;
            return res;
        }
        if (!fallback) fallback = mid;
    }
    if (fallback) {
        res.status = CommuteStatus::Witness;
        res.point = *fallback;
        res.lhs = c1.apply(*fallback);
        res.rhs = c2.apply(*fallback);
        return res;
    }
    // The compositions agree on every refinement atom, so the maps commute
    // even though the residue condition fails (possible only off the
    // i.d.o.c. regime). Report that rather than OPEN.
    res.status = CommuteStatus::Commute;
    return res;
}

}  // namespace iex
