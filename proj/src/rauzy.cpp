#include "iex/rauzy.hpp"

#include <algorithm>
#include <map>

namespace iex {

Letter rauzy_type(const std::vector<Scalar>& lambda, const Permutation& pi) {
    const std::size_t m = lambda.size();
    if (m < 2 || pi.size() != m) throw PreconditionError("need m >= 2 and matching sizes");
    const Scalar& last = lambda[m - 1];
    const Scalar& to_last = lambda[static_cast<std::size_t>(pi.inv(static_cast<int>(m))) - 1];
    const int c = last.compare(to_last);
    if (c == 0) throw TieError(0, "induction undefined: lambda_m equals lambda_{pi^-1 m}");
    return c < 0 ? Letter::A : Letter::B;
}

Permutation action_a(const Permutation& pi) {
    if (!pi.is_irreducible()) throw PreconditionError("action on reducible permutation");
    const int m = static_cast<int>(pi.size());
    const int p = pi.inv(m);
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        int v;
        if (i <= p)
            v = pi(i);
        else if (i == p + 1)
            v = pi(m);
        else
            v = pi(i - 1);
        img[static_cast<std::size_t>(i) - 1] = v;
    }
    Permutation out(img);
    if (!out.is_irreducible()) throw VerificationError("action_a broke irreducibility");
    return out;
}

Permutation action_b(const Permutation& pi) {
    if (!pi.is_irreducible()) throw PreconditionError("action on reducible permutation");
    const int m = static_cast<int>(pi.size());
    const int pm = pi(m);
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        const int v = pi(i);
        int w;
        if (v <= pm)
            w = v;
        else if (v == m)
            w = pm + 1;
        else
            w = v + 1;
        img[static_cast<std::size_t>(i) - 1] = w;
    }
    Permutation out(img);
    if (!out.is_irreducible()) throw VerificationError("action_b broke irreducibility");
    return out;
}

Permutation action(const Permutation& pi, Letter c) {
    return c == Letter::A ? action_a(pi) : action_b(pi);
}

IntMatrix rauzy_matrix(const Permutation& pi, Letter c) {
    if (!pi.is_irreducible()) throw PreconditionError("matrix of reducible permutation");
    const std::size_t m = pi.size();
    const std::size_t p = static_cast<std::size_t>(pi.inv(static_cast<int>(m)));
    IntMatrix a(m);
    if (c == Letter::B) {
        for (std::size_t i = 0; i < m; ++i) a.at(i, i) = 1;
        a.at(m - 1, p - 1) = 1;
        return a;
    }
    // type a: row p gains the old last column; rows past p shift right.
    for (std::size_t i = 1; i <= m; ++i) {
        if (i <= p) a.at(i - 1, i - 1) = 1;
        if (i == p) a.at(i - 1, p) = 1;          // column p+1 (1-based)
        if (i > p && i < m) a.at(i - 1, i) = 1;  // column i+1 (1-based)
    }
    a.at(m - 1, p) = 1;
    return a;
}

RauzyStep rauzy_step(const std::vector<Scalar>& lambda, const Permutation& pi) {
    const Letter c = rauzy_type(lambda, pi);
    const std::size_t m = lambda.size();
    const std::size_t p = static_cast<std::size_t>(pi.inv(static_cast<int>(m)));
    RauzyStep out;
    out.letter = c;
    out.matrix = rauzy_matrix(pi, c);
    out.pi = action(pi, c);
    if (c == Letter::B) {
        out.lambda = lambda;
        out.lambda[m - 1] = lambda[m - 1] - lambda[p - 1];
    } else {
        out.lambda.reserve(m);
        for (std::size_t i = 1; i <= m; ++i) {
            if (i < p)
                out.lambda.push_back(lambda[i - 1]);
            else if (i == p)
                out.lambda.push_back(lambda[p - 1] - lambda[m - 1]);
            else if (i == p + 1)
                out.lambda.push_back(lambda[m - 1]);
            else
                out.lambda.push_back(lambda[i - 2]);
        }
    }
    for (const Scalar& l : out.lambda)
        if (l.sign() <= 0) throw VerificationError("induction produced a nonpositive length");
    return out;
}

RauzyPath rauzy_iterate(const std::vector<Scalar>& lambda, const Permutation& pi, std::size_t n,
                        bool allow_partial) {
    RauzyPath path;
    path.start = pi;
    path.matrix = IntMatrix::identity(lambda.size());
    path.lambda_n = lambda;
    Permutation cur = pi;
    for (std::size_t k = 0; k < n; ++k) {
        RauzyStep st;
        try {
            st = rauzy_step(path.lambda_n, cur);
        } catch (const TieError&) {
            if (allow_partial) {
                path.tie_stopped = true;
                return path;
            }
            throw TieError(k, "tie at induction step " + std::to_string(k));
        }
        path.letters.push_back(letter_char(st.letter));
        path.matrix = path.matrix * st.matrix;
        path.lambda_n = st.lambda;
        cur = st.pi;
        path.perms.push_back(cur);
    }
    return path;
}

RauzyStep rauzy_normalized(const std::vector<Scalar>& lambda, const Permutation& pi) {
    Scalar total = lambda.front().zero();
    for (const Scalar& l : lambda) total += l;
    if (total != total.one()) throw PreconditionError("normalized step needs |lambda| = 1");
    RauzyStep st = rauzy_step(lambda, pi);
    Scalar newtotal = total.zero();
    for (const Scalar& l : st.lambda) newtotal += l;
    for (Scalar& l : st.lambda) l = l / newtotal;
    return st;
}

std::size_t RauzyClass::index_of(const Permutation& pi) const {
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i] == pi) return i;
    throw PreconditionError("permutation not in this class");
}

bool RauzyClass::contains(const Permutation& pi) const {
    for (const Permutation& p : members)
        if (p == pi) return true;
    return false;
}

std::size_t RauzyClass::successor(std::size_t from, Letter c) const {
    for (const ClassEdge& e : edges)
        if (e.from == from && e.letter == c) return e.to;
    throw PreconditionError("missing class edge");
}

RauzyClass rauzy_class(const Permutation& pi) {
    if (!pi.is_irreducible()) throw PreconditionError("class of reducible permutation");
    RauzyClass cls;
    std::map<std::vector<int>, std::size_t> index;
    cls.members.push_back(pi);
    index[pi.images()] = 0;
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
        for (Letter c : {Letter::A, Letter::B}) {
            const Permutation next = action(cls.members[head], c);
            auto [it, fresh] = index.emplace(next.images(), cls.members.size());
            if (fresh) cls.members.push_back(next);
            cls.edges.push_back({head, c, it->second});
        }
    }
    return cls;
}

std::vector<BigInt> return_times(const IntMatrix& a) { return a.column_sums(); }

std::vector<Tower> build_towers(const std::vector<Scalar>& lambda, const Permutation& pi,
                                std::size_t n) {
    const RauzyPath path = rauzy_iterate(lambda, pi, n);
    const std::vector<BigInt> heights = return_times(path.matrix);
    std::vector<Tower> towers;
    Scalar lo = lambda.front().zero();
    Scalar covered = lo;
    for (std::size_t j = 0; j < path.lambda_n.size(); ++j) {
        Tower t;
        t.base_lo = lo;
        t.base_hi = lo + path.lambda_n[j];
        t.height = heights[j];
        lo = t.base_hi;
        covered += path.lambda_n[j] * Scalar(path.lambda_n[j].field(), Rational(heights[j]));
        towers.push_back(std::move(t));
    }
    Scalar total = lambda.front().zero();
    for (const Scalar& l : lambda) total += l;
    if (covered != total) throw VerificationError("tower levels do not account for |lambda|");
    return towers;
}

std::vector<std::pair<Scalar, Scalar>> tower_levels(const IntervalExchange& t, const Tower& tw) {
    std::vector<std::pair<Scalar, Scalar>> levels;
    Scalar lo = tw.base_lo, hi = tw.base_hi;
    for (BigInt l = 0; l < tw.height; ++l) {
        levels.emplace_back(lo, hi);
        const auto off = rigid_offset(t, lo, hi);
        if (!off) throw VerificationError("tower level straddles a discontinuity");
        lo += *off;
        hi += *off;
    }
    return levels;
}

Rational balance_ratio(const IntMatrix& m) {
    if (m.size() == 0) throw PreconditionError("empty matrix");
    if (!m.all_positive()) throw PreconditionError("balance ratio needs a positive matrix");
    Rational best(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        BigInt mx = m.at(i, 0), mn = m.at(i, 0);
        for (std::size_t j = 1; j < m.size(); ++j) {
            mx = std::max(mx, m.at(i, j));
            mn = std::min(mn, m.at(i, j));
        }
        const Rational r(mx, mn);
        if (r > best) best = r;
    }
    return best;
}

}  // namespace iex
