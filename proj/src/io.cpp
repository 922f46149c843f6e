#include "iex/io.hpp"

namespace iex {

namespace {

Json scalars_to_json(const std::vector<Scalar>& xs) {
    Json arr = Json::array();
    for (const Scalar& x : xs) arr.push_back(x.str());
    return arr;
}

Json perm_to_json(const Permutation& pi) {
    Json arr = Json::array();
    for (int v : pi.images()) arr.push_back(v);
    return arr;
}

}  // namespace

Json iet_to_json(const IntervalExchange& t) {
    Json j;
    j["m"] = t.intervals();
    j["pi"] = perm_to_json(t.permutation());
    j["lambda"] = scalars_to_json(t.lengths());
    j["field"] = t.field().name();
    return j;
}

IntervalExchange iet_from_json(const Json& j) {
    try {
        const Field f = Field::from_name(j.at("field").get<std::string>());
        std::vector<int> img;
        for (const auto& v : j.at("pi")) img.push_back(v.get<int>());
        std::vector<Scalar> lambda;
        for (const auto& s : j.at("lambda"))
            lambda.push_back(Scalar::parse(s.get<std::string>(), f));
        if (j.contains("m") && j.at("m").get<std::size_t>() != lambda.size())
            throw ParseError("m does not match the lambda length");
        return IntervalExchange(f, lambda, Permutation(img));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad interval exchange JSON: ") + e.what());
    }
}

Json matrix_to_json(const IntMatrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.size(); ++j) row.push_back(a.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

Json path_to_json(const RauzyPath& path) {
    Json j;
    j["letters"] = path.letters;
    Json perms = Json::array();
    for (const Permutation& p : path.perms) perms.push_back(perm_to_json(p));
    j["pi_seq"] = perms;
    j["A"] = matrix_to_json(path.matrix);
    j["lambda_n"] = scalars_to_json(path.lambda_n);
    if (path.tie_stopped) j["tie_stopped"] = true;
    return j;
}

Json class_to_json(const RauzyClass& cls) {
    Json j;
    Json members = Json::array();
    for (const Permutation& p : cls.members) members.push_back(perm_to_json(p));
    j["members"] = members;
    Json edges = Json::array();
    for (const ClassEdge& e : cls.edges) {
        Json edge;
        edge["from"] = e.from;
        edge["letter"] = std::string(1, letter_char(e.letter));
        edge["to"] = e.to;
        edges.push_back(edge);
    }
    j["edges"] = edges;
    return j;
}

std::string class_to_dot(const RauzyClass& cls) {
    std::string out = "digraph rauzy_class {\n";
    for (std::size_t i = 0; i < cls.members.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + cls.members[i].str() + "\"];\n";
    for (const ClassEdge& e : cls.edges)
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
               letter_char(e.letter) + "\"];\n";
    out += "}\n";
    return out;
}

Json power_to_json(const PowerMap& p) {
    Json j;
    j["q"] = p.q;
    j["base"] = iet_to_json(p.base);
    j["map"] = iet_to_json(p.map);
    Json pts = Json::array();
    for (const Scalar& x : p.points) pts.push_back(x.str());
    j["discontinuities"] = pts;
    j["degenerate"] = p.degenerate;
    return j;
}

Json commutation_to_json(const CommutationResult& r) {
    Json j;
    switch (r.status) {
        case CommuteStatus::Commute: j["status"] = "COMMUTE"; break;
        case CommuteStatus::Witness: j["status"] = "WITNESS"; break;
        case CommuteStatus::Open: j["status"] = "OPEN"; break;
    }
    j["condition"] = r.condition;
    Json sums = Json::array();
    for (const BigInt& s : r.column_sums) sums.push_back(s.str());
    j["column_sums"] = sums;
    if (r.status == CommuteStatus::Witness) {
        j["point"] = r.point.str();
        j["lhs"] = r.lhs.str();
        j["rhs"] = r.rhs.str();
        j["gamma"] = r.gamma;
        j["gamma_star"] = r.gamma_star;
    }
    return j;
}

Json table_to_json(const GroupTable& t) {
    Json j;
    j["q"] = t.q;
    j["pi"] = perm_to_json(t.base);
    j["order"] = t.order();
    Json elems = Json::array();
    for (const ModMatrix& g : t.elements) elems.push_back(g.digits());
    j["elements"] = elems;
    return j;
}

Json identity_word_to_json(const IdentityWord& w) {
    Json j;
    j["word"] = w.word;
    j["B"] = matrix_to_json(w.matrix);
    return j;
}

Json skew_orbit_to_json(const SkewOrbit& o) {
    Json j;
    j["steps_done"] = o.steps_done;
    j["tie_stopped"] = o.tie_stopped;
    j["fiber_visits"] = o.fiber_visits;
    j["final_pi"] = perm_to_json(o.final_state.pi);
    j["final_lambda"] = scalars_to_json(o.final_state.lambda);
    j["final_gamma"] = o.final_state.gamma.digits();
    return j;
}

Json certificate_to_json(const TowerCertificate& c) {
    Json j;
    j["J"] = Json::array({c.j_lo.str(), c.j_hi.str()});
    j["n0"] = c.n0.str();
    j["q"] = c.q;
    j["epsilon"] = to_string(c.epsilon);
    j["coverage"] = c.coverage.str();
    j["overlap_rel_base"] = c.overlap_rel_base.str();
    j["overlap_rel_total"] = c.overlap_rel_total.str();
    // the overlap condition is decided relative to |J|; both normalizations
    // are recorded because the target statement is ambiguous about it
    j["overlap_basis"] = "J";
    j["verified"] = c.verified;
    Json prov;
    prov["depth"] = c.prov.depth;
    prov["word"] = c.prov.word;
    prov["B"] = matrix_to_json(c.prov.b_matrix);
    prov["v_B"] = to_string(c.prov.v_b);
    prov["tau"] = to_string(c.prov.tau);
    prov["route"] = c.prov.route;
    prov["gate_identity_mod_q"] = c.prov.gate_identity_mod_q;
    prov["commutation_spotcheck"] = c.prov.commutation_spotcheck;
    prov["balance_checked"] = c.prov.balance_checked;
    prov["v_actual"] = to_string(c.prov.v_actual);
    j["provenance"] = prov;
    return j;
}

Json verify_report_to_json(const VerifyReport& r) {
    Json j;
    j["ok"] = r.ok();
    j["disjoint"] = r.disjoint;
    j["linear"] = r.linear;
    j["coverage_ok"] = r.coverage_ok;
    j["overlap_ok"] = r.overlap_ok;
    j["coverage"] = r.coverage.str();
    j["overlap_rel_base"] = r.overlap_rel_base.str();
    j["overlap_rel_total"] = r.overlap_rel_total.str();
    j["first_violation"] = r.first_violation;
    j["levels"] = r.levels.size();
    return j;
}

Json refinement_to_json(const RefinementReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["max_defect"] = r.max_defect.str();
    Json d = Json::array();
    for (const Scalar& x : r.defects) d.push_back(x.str());
    j["defects"] = d;
    return j;
}

}  // namespace iex
