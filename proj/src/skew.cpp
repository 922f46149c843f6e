#include "iex/skew.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace iex {

ModMatrix g_of(const Permutation& pi, Letter c, std::uint32_t q) {
    return ModMatrix::reduce(rauzy_matrix(pi, c), q);
}

bool GroupTable::contains(const ModMatrix& g) const {
    return std::find(elements.begin(), elements.end(), g) != elements.end();
}

bool GroupTable::same_elements(const GroupTable& o) const {
    if (order() != o.order()) return false;
    for (const ModMatrix& g : elements)
        if (!o.contains(g)) return false;
    return true;
}

namespace {

// Generic closure of the loop cocycle at pi: BFS over (member, gamma) pairs,
// edge (sigma, gamma) -> (c sigma, label(sigma, c) * gamma). The returned
// table holds every gamma seen at the base vertex.
template <typename Label>
GroupTable loop_closure(const Permutation& pi, std::uint32_t q, const RauzyClass& cls,
                        Label label) {
    const std::size_t base = cls.index_of(pi);
    const std::size_t m = pi.size();

    struct Node {
        std::size_t member;
        ModMatrix gamma;
        std::string word;
    };
    std::unordered_map<std::uint64_t, std::unordered_set<std::uint64_t>> seen;
    std::deque<Node> queue;
    queue.push_back({base, ModMatrix::identity(m, q), ""});
    seen[base].insert(queue.front().gamma.pack());

    GroupTable table;
    table.base = pi;
    table.q = q;

    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (cur.member == base) {
            table.elements.push_back(cur.gamma);
            table.witnesses.push_back(cur.word);
        }
        for (Letter c : {Letter::A, Letter::B}) {
            Node next;
            next.member = cls.successor(cur.member, c);
            next.gamma = label(cur.member, c) * cur.gamma;
            next.word = cur.word + letter_char(c);
            if (seen[next.member].insert(next.gamma.pack()).second)
                queue.push_back(std::move(next));
        }
    }

    // group axioms, exhaustively: identity, closure, inverses
    const ModMatrix e = ModMatrix::identity(m, q);
    if (table.elements.empty() || !table.contains(e))
        throw VerificationError("loop closure lacks the identity");
    for (const ModMatrix& a : table.elements) {
        if (!a.invertible()) throw VerificationError("non-invertible element in loop closure");
        if (!table.contains(a.inverse()))
            throw VerificationError("loop closure not inverse-closed");
        for (const ModMatrix& b : table.elements)
            if (!table.contains(a * b)) throw VerificationError("loop closure not closed");
    }
    return table;
}

}  // namespace

GroupTable semigroup_closure(const Permutation& pi, std::uint32_t q) {
    if (!pi.is_irreducible()) throw PreconditionError("closure needs an irreducible permutation");
    if (q < 1) throw PreconditionError("modulus must be >= 1");
    const RauzyClass cls = rauzy_class(pi);
    return loop_closure(pi, q, cls,
                        [&](std::size_t member, Letter c) { return g_of(cls.members[member], c, q); });
}

Connector connector(const Permutation& from, const Permutation& to, std::uint32_t q) {
    const RauzyClass cls = rauzy_class(from);
    if (!cls.contains(to)) throw PreconditionError("permutations lie in different classes");
    const std::size_t src = cls.index_of(from);
    const std::size_t dst = cls.index_of(to);
    const std::size_t m = from.size();

    // BFS with a-before-b expansion; first discovery is the lexicographically
    // least shortest path.
    std::vector<int> parent(cls.members.size(), -1);
    std::vector<Letter> via(cls.members.size(), Letter::A);
    std::vector<char> seen(cls.members.size(), 0);
    std::deque<std::size_t> queue{src};
    seen[src] = 1;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        if (cur == dst) break;
        for (Letter c : {Letter::A, Letter::B}) {
            const std::size_t nxt = cls.successor(cur, c);
            if (!seen[nxt]) {
                seen[nxt] = 1;
                parent[nxt] = static_cast<int>(cur);
                via[nxt] = c;
                queue.push_back(nxt);
            }
        }
    }
    std::string path;
    for (std::size_t at = dst; at != src; at = static_cast<std::size_t>(parent[at])) {
        path.push_back(letter_char(via[at]));
        if (parent[at] < 0) throw VerificationError("class BFS lost the source");
    }
    std::reverse(path.begin(), path.end());

    Connector out{ModMatrix::identity(m, q), path};
    std::size_t cur = src;
    for (char ch : path) {
        const Letter c = ch == 'a' ? Letter::A : Letter::B;
        out.matrix = g_of(cls.members[cur], c, q) * out.matrix;
        cur = cls.successor(cur, c);
    }
    return out;
}

ConnectorTable::ConnectorTable(const Permutation& pi0, std::uint32_t q)
    : pi0_(pi0), q_(q), cls_(rauzy_class(pi0)) {
    conns_.reserve(cls_.members.size());
    for (const Permutation& member : cls_.members) conns_.push_back(connector(pi0_, member, q_));
}

const Connector& ConnectorTable::to(const Permutation& pi) const {
    return conns_[cls_.index_of(pi)];
}

ModMatrix cocycle_h(const std::vector<Scalar>& lambda, const Permutation& pi,
                    const ConnectorTable& table) {
    const Letter c = rauzy_type(lambda, pi);
    const Permutation next = action(pi, c);
    const ModMatrix gx = g_of(pi, c, table.modulus());
    return table.to(next).matrix.inverse() * gx * table.to(pi).matrix;
}

SkewOrbit skew_orbit(const SkewState& start, const Permutation& pi0, std::size_t steps,
                     bool keep_trace) {
    Scalar total = start.lambda.front().zero();
    for (const Scalar& l : start.lambda) total += l;
    if (total != total.one()) throw PreconditionError("skew orbit needs |lambda| = 1");
    if (!start.gamma.invertible()) throw PreconditionError("group coordinate not invertible");

    const ConnectorTable table(pi0, start.gamma.modulus());
    SkewOrbit out;
    out.final_state = start;
    const ModMatrix e = ModMatrix::identity(pi0.size(), start.gamma.modulus());
    for (std::size_t r = 1; r <= steps; ++r) {
        ModMatrix h;
        try {
            h = cocycle_h(out.final_state.lambda, out.final_state.pi, table);
        } catch (const TieError&) {
            out.tie_stopped = true;
            return out;
        }
        const RauzyStep st = rauzy_normalized(out.final_state.lambda, out.final_state.pi);
        out.final_state.lambda = st.lambda;
        out.final_state.pi = st.pi;
        out.final_state.gamma = h * out.final_state.gamma;
        out.steps_done = r;
        if (keep_trace) out.trace.push_back(out.final_state.gamma);
        if (out.final_state.pi == pi0 && out.final_state.gamma == e) out.fiber_visits.push_back(r);
    }
    return out;
}

bool subgroup_equality_check(const Permutation& pi, const Permutation& pi0, std::uint32_t q) {
    const ConnectorTable table(pi0, q);
    if (!table.cls().contains(pi)) throw PreconditionError("permutations lie in different classes");
    const GroupTable h_table = loop_closure(pi, q, table.cls(), [&](std::size_t member, Letter c) {
        const Permutation& sigma = table.cls().members[member];
        const std::size_t next = table.cls().successor(member, c);
        return table.to(next).matrix.inverse() * g_of(sigma, c, q) * table.to(member).matrix;
    });
    const GroupTable g0 = semigroup_closure(pi0, q);
    return h_table.same_elements(g0);
}

namespace {

// positivity pattern as an m*m bitmask, row-major
std::uint32_t pattern_of(const IntMatrix& a) {
    std::uint32_t mask = 0;
    const std::size_t m = a.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (a.at(i, j) > 0) mask |= 1u << (i * m + j);
    return mask;
}

std::uint32_t pattern_product(std::uint32_t lhs, std::uint32_t rhs, std::size_t m) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                if ((lhs >> (i * m + k) & 1u) && (rhs >> (k * m + j) & 1u)) {
                    out |= 1u << (i * m + j);
                    break;
                }
            }
        }
    return out;
}

}  // namespace

IdentityWord find_identity_word(const Permutation& pi, std::uint32_t q) {
    if (!pi.is_irreducible()) throw PreconditionError("identity word needs irreducible pi");
    if (q < 1) throw PreconditionError("modulus must be >= 1");
    const std::size_t m = pi.size();
    if (m > 5) throw PreconditionError("identity word search supports m <= 5");
    const RauzyClass cls = rauzy_class(pi);
    const std::size_t base = cls.index_of(pi);
    const std::uint32_t full = (m * m >= 32) ? 0xffffffffu : ((1u << (m * m)) - 1);

    // per-(member, matrix) list of visited masks; a state dominated by an
    // earlier superset mask cannot lead to a shorter solution
    struct Node {
        std::size_t member;
        ModMatrix amod;
        std::uint32_t mask;
        int parent;
        char letter;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, int>>> seen;
    auto key_of = [&](std::size_t member, const ModMatrix& a) {
        return a.pack() * 64 + member;
    };
    auto dominated = [&](std::uint64_t key, std::uint32_t mask) {
        auto it = seen.find(key);
        if (it == seen.end()) return false;
        for (const auto& [prev, idx] : it->second)
            if ((prev & mask) == mask) return true;
        return false;
    };

    std::vector<std::uint32_t> gen_pattern(cls.members.size() * 2);
    std::vector<ModMatrix> gen_mod(cls.members.size() * 2);
    for (std::size_t v = 0; v < cls.members.size(); ++v)
        for (Letter c : {Letter::A, Letter::B}) {
            const std::size_t slot = v * 2 + (c == Letter::B ? 1 : 0);
            const IntMatrix gm = rauzy_matrix(cls.members[v], c);
            gen_pattern[slot] = pattern_of(gm);
            gen_mod[slot] = ModMatrix::reduce(gm, q);
        }

    const ModMatrix eye = ModMatrix::identity(m, q);
    std::uint32_t eye_mask = 0;
    for (std::size_t i = 0; i < m; ++i) eye_mask |= 1u << (i * m + i);

    nodes.push_back({base, eye, eye_mask, -1, 0});
    seen[key_of(base, eye)].push_back({eye_mask, 0});
    std::deque<int> queue{0};
    constexpr std::size_t kStateCap = 20000000;

    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        const Node node = nodes[static_cast<std::size_t>(cur)];
        if (node.member == base && node.mask == full && node.amod.is_identity() &&
            node.parent >= 0) {
            std::string word;
            for (int at = cur; nodes[static_cast<std::size_t>(at)].parent >= 0;
                 at = nodes[static_cast<std::size_t>(at)].parent)
                word.push_back(nodes[static_cast<std::size_t>(at)].letter);
            std::reverse(word.begin(), word.end());

            // revalidate with exact integer arithmetic
            IdentityWord out;
            out.word = word;
            out.matrix = IntMatrix::identity(m);
            Permutation p = pi;
            for (char ch : word) {
                const Letter c = ch == 'a' ? Letter::A : Letter::B;
                out.matrix = out.matrix * rauzy_matrix(p, c);
                p = action(p, c);
            }
            if (!(p == pi) || !out.matrix.all_positive() ||
                !ModMatrix::reduce(out.matrix, q).is_identity())
                throw VerificationError("identity word failed revalidation");
            return out;
        }
        for (Letter c : {Letter::A, Letter::B}) {
            const std::size_t slot = node.member * 2 + (c == Letter::B ? 1 : 0);
            Node next;
            next.member = cls.successor(node.member, c);
            next.amod = node.amod * gen_mod[slot];
            next.mask = pattern_product(node.mask, gen_pattern[slot], m);
            next.parent = cur;
            next.letter = letter_char(c);
            const std::uint64_t key = key_of(next.member, next.amod);
            if (dominated(key, next.mask)) continue;
            seen[key].push_back({next.mask, static_cast<int>(nodes.size())});
            nodes.push_back(next);
            queue.push_back(static_cast<int>(nodes.size()) - 1);
            if (nodes.size() > kStateCap)
                throw BudgetError("identity word search exceeded the state cap");
        }
    }
    throw VerificationError("identity word search exhausted the state space");
}

}  // namespace iex
