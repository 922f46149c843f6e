#include "iex/iet.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace iex {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    const std::size_t m = img_.size();
    if (m < 1) throw PreconditionError("empty permutation");
    inv_.assign(m, 0);
    std::vector<char> seen(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const int v = img_[i];
        if (v < 1 || v > static_cast<int>(m) || seen[v])
            throw PreconditionError("image array is not a permutation of 1.." +
                                    std::to_string(m));
        seen[v] = 1;
        inv_[static_cast<std::size_t>(v) - 1] = static_cast<int>(i) + 1;
    }
}

Permutation Permutation::inverse() const { return Permutation(inv_); }

bool Permutation::is_irreducible() const {
    const int m = static_cast<int>(size());
    int max_seen = 0;
    for (int k = 1; k < m; ++k) {
        max_seen = std::max(max_seen, (*this)(k));
        if (max_seen == k) return false;
    }
    return true;
}

std::string Permutation::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(img_[i]);
    }
    return s + ")";
}

IntervalExchange ReturnMap::induced(const Field& f) const {
    return IntervalExchange::from_pieces(f, atom_lengths, atom_offsets);
}

IntMatrix ReturnMap::visitation_matrix() const {
    const std::size_t n = atoms();
    if (n == 0 || visit_counts[0].size() != n)
        throw PreconditionError("visitation matrix needs as many atoms as intervals");
    IntMatrix vm(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) vm.at(i, j) = visit_counts[j][i];
    return vm;
}

IntervalExchange::IntervalExchange(const Field& f, std::vector<Scalar> lengths, Permutation pi)
    : field_(f), lambda_(std::move(lengths)), pi_(std::move(pi)) {
    const std::size_t m = lambda_.size();
    if (m < 1 || pi_.size() != m) throw PreconditionError("length/permutation size mismatch");
    Scalar zero(field_, Rational(0));
    for (const Scalar& l : lambda_) {
        if (l.field() != field_) throw FieldMismatchError("length not in the ambient field");
        if (l.sign() <= 0) throw PreconditionError("interval lengths must be positive");
    }
    beta_.reserve(m + 1);
    beta_.push_back(zero);
    for (const Scalar& l : lambda_) beta_.push_back(beta_.back() + l);

    // image breakpoints from lambda^pi = (lambda_{pi^{-1}1}, ...)
    std::vector<Scalar> img_beta;
    img_beta.reserve(m + 1);
    img_beta.push_back(zero);
    for (std::size_t k = 1; k <= m; ++k)
        img_beta.push_back(img_beta.back() + lambda_[static_cast<std::size_t>(pi_.inv(
                                                         static_cast<int>(k))) -
                                                     1]);
    offset_.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        offset_.push_back(img_beta[static_cast<std::size_t>(pi_(static_cast<int>(i) + 1)) - 1] -
                          beta_[i]);
}

IntervalExchange IntervalExchange::from_pieces(const Field& f,
                                               const std::vector<Scalar>& lengths,
                                               const std::vector<Scalar>& offsets) {
    const std::size_t n = lengths.size();
    if (n == 0 || offsets.size() != n) throw PreconditionError("bad piece data");
    std::vector<Scalar> starts;
    starts.reserve(n);
    Scalar acc(f, Rational(0));
    for (const Scalar& l : lengths) {
        starts.push_back(acc);
        acc += l;
    }
    // Rank pieces by image start and check the images tile [0, total).
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (starts[a] + offsets[a]) < (starts[b] + offsets[b]);
    });
    Scalar expect(f, Rational(0));
    std::vector<int> pi_img(n, 0);
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t p = order[rank];
        if (starts[p] + offsets[p] != expect)
            throw PreconditionError("piece images do not tile the interval");
        expect += lengths[p];
        pi_img[p] = static_cast<int>(rank) + 1;
    }
    if (expect != acc) throw PreconditionError("piece images do not tile the interval");
    return IntervalExchange(f, lengths, Permutation(pi_img));
}

std::size_t IntervalExchange::piece_index(const Scalar& x) const {
    if (x.sign() < 0 || x >= total()) throw PreconditionError("point outside [0, |lambda|)");
    // binary search for the piece with beta_i <= x < beta_{i+1}
    std::size_t lo = 0, hi = lambda_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (beta_[mid] <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Scalar IntervalExchange::apply(const Scalar& x) const { return x + offset_[piece_index(x)]; }

Scalar IntervalExchange::apply_n(const Scalar& x, const BigInt& n) const {
    if (n < 0) throw PreconditionError("apply_n needs n >= 0");
    Scalar y = x;
    for (BigInt i = 0; i < n; ++i) y = apply(y);
    return y;
}

IntervalExchange IntervalExchange::invert() const {
    const std::size_t m = lambda_.size();
    std::vector<Scalar> inv_lengths;
    inv_lengths.reserve(m);
    for (std::size_t k = 1; k <= m; ++k)
        inv_lengths.push_back(lambda_[static_cast<std::size_t>(pi_.inv(static_cast<int>(k))) - 1]);
    return IntervalExchange(field_, inv_lengths, pi_.inverse());
}

std::vector<Scalar> IntervalExchange::discontinuities() const {
    return std::vector<Scalar>(beta_.begin() + 1, beta_.end() - 1);
}

IdocResult IntervalExchange::idoc_check(int depth) const {
    if (depth < 1) throw PreconditionError("idoc depth must be >= 1");
    IdocResult res;
    res.depth = depth;
    const IntervalExchange tinv = invert();
    std::map<Scalar, std::pair<int, int>> seen;
    const std::size_t m = lambda_.size();
    for (int i = 1; i < static_cast<int>(m); ++i) {
        Scalar x = beta_[static_cast<std::size_t>(i)];
        for (int j = 0; j <= depth; ++j) {
            auto [it, fresh] = seen.emplace(x, std::make_pair(i, j));
            if (!fresh) {
                res.pass = false;
                res.i1 = it->second.first;
                res.j1 = it->second.second;
                res.i2 = i;
                res.j2 = j;
                res.point = x;
                return res;
            }
            if (j < depth) x = tinv.apply(x);
        }
    }
    res.pass = true;
    return res;
}

namespace {

struct Segment {
    Scalar lo, hi;        // current location
    Scalar origin;        // start of the preimage inside J
    BigInt steps;         // applications of T so far
    std::vector<BigInt> visits;
};

struct Returned {
    Scalar origin;
    Scalar length;
    Scalar offset;
    BigInt steps;
    std::vector<BigInt> visits;
};

}  // namespace

ReturnMap IntervalExchange::first_return(const Scalar& L, std::uint64_t step_budget) const {
    if (L.sign() <= 0 || L > total()) throw PreconditionError("return domain out of range");
    const std::size_t m = lambda_.size();

    std::deque<Segment> work;
    work.push_back({Scalar(field_, Rational(0)), L, Scalar(field_, Rational(0)), BigInt(0),
                    std::vector<BigInt>(m, BigInt(0))});
    std::vector<Returned> done;
    std::uint64_t spent = 0;

    while (!work.empty()) {
        Segment seg = std::move(work.front());
        work.pop_front();

        // split [lo, hi) at the interior breakpoints it straddles
        std::vector<Scalar> cuts;
        cuts.push_back(seg.lo);
        for (std::size_t i = 1; i < m; ++i)
            if (beta_[i] > seg.lo && beta_[i] < seg.hi) cuts.push_back(beta_[i]);
        cuts.push_back(seg.hi);

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            if (++spent > step_budget)
                throw BudgetError("first_return step budget exhausted (" +
                                  std::to_string(step_budget) + ")");
            const Scalar& plo = cuts[c];
            const Scalar& phi = cuts[c + 1];
            const std::size_t idx = piece_index(plo);
            Segment next;
            next.origin = seg.origin + (plo - seg.lo);
            next.visits = seg.visits;
            ++next.visits[idx];
            next.steps = seg.steps + 1;
            next.lo = plo + offset_[idx];
            next.hi = phi + offset_[idx];

            if (next.hi <= L) {
                done.push_back({next.origin, next.hi - next.lo, next.lo - next.origin,
                                next.steps, std::move(next.visits)});
            } else if (next.lo >= L) {
                work.push_back(std::move(next));
            } else {
                Returned r{next.origin, L - next.lo, next.lo - next.origin, next.steps,
                           next.visits};
                done.push_back(std::move(r));
                next.origin += L - next.lo;
                next.lo = L;
                work.push_back(std::move(next));
            }
        }
    }

    std::sort(done.begin(), done.end(),
              [](const Returned& a, const Returned& b) { return a.origin < b.origin; });

    // check the returned pieces tile [0, L), then merge equal branches
    Scalar expect(field_, Rational(0));
    for (const Returned& r : done) {
        if (r.origin != expect) throw VerificationError("return pieces do not tile the domain");
        expect += r.length;
    }
    if (expect != L) throw VerificationError("return pieces do not tile the domain");

    std::vector<Returned> merged;
    for (Returned& r : done) {
        if (!merged.empty()) {
            Returned& p = merged.back();
            if (p.steps == r.steps && p.offset == r.offset && p.visits == r.visits) {
                p.length += r.length;
                continue;
            }
        }
        merged.push_back(std::move(r));
    }

    ReturnMap out;
    out.domain_length = L;
    for (Returned& r : merged) {
        out.atom_lengths.push_back(r.length);
        out.atom_offsets.push_back(r.offset);
        out.return_times.push_back(r.steps);
        out.visit_counts.push_back(std::move(r.visits));
    }
    return out;
}

bool IntervalExchange::operator==(const IntervalExchange& o) const {
    if (field_ != o.field_ || lambda_.size() != o.lambda_.size() || !(pi_ == o.pi_)) return false;
    for (std::size_t i = 0; i < lambda_.size(); ++i)
        if (lambda_[i] != o.lambda_[i]) return false;
    return true;
}

IntervalExchange compose(const IntervalExchange& f, const IntervalExchange& g) {
    if (f.field() != g.field()) throw FieldMismatchError("composing maps over different fields");
    if (f.total() != g.total()) throw PreconditionError("composing maps with different domains");
    const Field& fld = f.field();
    const IntervalExchange ginv = g.invert();

    std::vector<Scalar> pts;
    for (std::size_t i = 1; i < g.intervals(); ++i) pts.push_back(g.breakpoint(i));
    for (std::size_t i = 1; i < f.intervals(); ++i) pts.push_back(ginv.apply(f.breakpoint(i)));
    pts.push_back(Scalar(fld, Rational(0)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(f.total());

    std::vector<Scalar> lens, offs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Scalar len = pts[i + 1] - pts[i];
        const Scalar mid = pts[i] + len / Scalar(fld, Rational(2));
        const Scalar off = f.apply(g.apply(mid)) - mid;
        if (!offs.empty() && offs.back() == off) {
            lens.back() += len;
        } else {
            lens.push_back(len);
            offs.push_back(off);
        }
    }
    return IntervalExchange::from_pieces(fld, lens, offs);
}

IntervalExchange power_compose(const IntervalExchange& f, std::uint32_t q) {
    if (q < 1) throw PreconditionError("power needs q >= 1");
    IntervalExchange acc = f;
    for (std::uint32_t i = 1; i < q; ++i) acc = compose(f, acc);
    return acc;
}

bool pointwise_equal(const IntervalExchange& f, const IntervalExchange& g) {
    if (f.field() != g.field() || f.total() != g.total()) return false;
    const Field& fld = f.field();
    std::vector<Scalar> pts;
    for (std::size_t i = 1; i < f.intervals(); ++i) pts.push_back(f.breakpoint(i));
    for (std::size_t i = 1; i < g.intervals(); ++i) pts.push_back(g.breakpoint(i));
    pts.push_back(Scalar(fld, Rational(0)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(f.total());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Scalar& lo = pts[i];
        const Scalar mid = lo + (pts[i + 1] - lo) / Scalar(fld, Rational(2));
        if (f.apply(lo) != g.apply(lo) || f.apply(mid) != g.apply(mid)) return false;
    }
    return true;
}

std::optional<Scalar> rigid_offset(const IntervalExchange& f, const Scalar& lo,
                                   const Scalar& hi) {
    if (lo.sign() < 0 || hi > f.total() || lo >= hi) return std::nullopt;
    const std::size_t first = f.piece_index(lo);
    const Scalar off = f.piece_offset(first);
    for (std::size_t i = first + 1; i < f.intervals(); ++i) {
        if (f.breakpoint(i) >= hi) break;
        if (f.piece_offset(i) != off) return std::nullopt;
    }
    return off;
}

}  // namespace iex
