#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "iex/io.hpp"

namespace iex::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string pi_text;
    std::string lambda_text;
    std::string field_text = "Q";
    std::string input_path;
    std::string x_text;
    std::uint32_t q = 2;
    std::string epsilon_text = "1/2";
    std::size_t depth = 10;
    std::size_t min_depth = 1;
    std::uint64_t budget = 1000000;
    std::size_t steps = 10;
    unsigned dyadic = 1;
    std::size_t samples = 10;
    std::size_t m = 2;
    std::uint64_t denom_bound = 16;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string op = "induce";
    std::string out_path;

    Json to_json() const {
        Json j;
        j["command"] = command;
        if (!pi_text.empty()) j["pi"] = pi_text;
        if (!lambda_text.empty()) j["lambda"] = lambda_text;
        j["field"] = field_text;
        if (!input_path.empty()) j["input"] = input_path;
        if (!x_text.empty()) j["x"] = x_text;
        j["q"] = q;
        j["epsilon"] = epsilon_text;
        j["depth"] = depth;
        j["min_depth"] = min_depth;
        j["budget"] = budget;
        j["steps"] = steps;
        j["dyadic"] = dyadic;
        j["samples"] = samples;
        j["m"] = m;
        j["denom_bound"] = denom_bound;
        j["seed"] = seed;
        j["format"] = format;
        j["op"] = op;
        return j;
    }
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

IntervalExchange load_iet(const RunConfig& cfg) {
    if (!cfg.input_path.empty()) {
        std::ifstream in(cfg.input_path);
        if (!in) throw ParseError("cannot open input file " + cfg.input_path);
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw ParseError(std::string("bad JSON input: ") + e.what());
        }
        return iet_from_json(j);
    }
    if (cfg.pi_text.empty() || cfg.lambda_text.empty())
        throw ParseError("need --input or both --pi and --lambda");
    const Field f = Field::from_name(cfg.field_text);
    std::vector<int> img;
    for (const std::string& s : split_commas(cfg.pi_text)) img.push_back(std::stoi(s));
    std::vector<Scalar> lambda;
    for (const std::string& s : split_commas(cfg.lambda_text))
        lambda.push_back(Scalar::parse(s, f));
    return IntervalExchange(f, lambda, Permutation(img));
}

std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Permutation random_irreducible(std::mt19937_64& rng, std::size_t m) {
    std::vector<int> img(m);
    for (;;) {
        for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<int>(i) + 1;
        for (std::size_t i = m; i > 1; --i)
            std::swap(img[i - 1], img[rnd_below(rng, i)]);
        Permutation p(img);
        if (p.is_irreducible()) return p;
    }
}

std::vector<Scalar> random_lengths(std::mt19937_64& rng, const Field& f, std::size_t m,
                                   std::uint64_t denom_bound) {
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < m; ++i) {
        const Rational a(BigInt(1 + rnd_below(rng, denom_bound)),
                         BigInt(1 + rnd_below(rng, denom_bound)));
        if (f.is_rational()) {
            out.emplace_back(f, a);
        } else {
            const Rational b(BigInt(1 + rnd_below(rng, denom_bound)),
                             BigInt(1 + rnd_below(rng, denom_bound)));
            out.push_back(Scalar(f, a, b));
        }
    }
    return out;
}

std::string join_scalars(const std::vector<Scalar>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += xs[i].str();
    }
    return s;
}

int code_of(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const PreconditionError*>(&e)) return 3;
    if (dynamic_cast<const BudgetError*>(&e)) return 4;
    if (dynamic_cast<const VerificationError*>(&e)) return 5;
    return 1;
}

std::string error_json(const RunConfig& cfg, const std::exception& e) {
    Json j;
    j["config"] = cfg.to_json();
    j["error"] = e.what();
    j["code"] = code_of(e);
    return j.dump(2) + "\n";
}

std::string run_sample(const RunConfig& cfg) {
    const Field f = Field::from_name(cfg.field_text);
    std::mt19937_64 rng(cfg.seed);
    std::ostringstream out;
    out << "# iex sample v1\n";
    out << "# config: " << cfg.to_json().dump() << "\n";
    std::size_t successes = 0;
    if (cfg.op == "rankone")
        out << "id\tlambda\tpi\tstatus\tdepth\tn0\tcoverage\toverlap\tvB\terror\n";
    else if (cfg.op == "commute")
        out << "id\tlambda\tpi\tstatus\tcolumn_sums\tpoint\terror\n";
    else
        out << "id\tlambda\tpi\tstatus\tletters\terror\n";
    for (std::size_t id = 0; id < cfg.samples; ++id) {
        const Permutation pi = random_irreducible(rng, cfg.m);
        const std::vector<Scalar> lambda = random_lengths(rng, f, cfg.m, cfg.denom_bound);
        out << id << "\t" << join_scalars(lambda) << "\t" << pi.str() << "\t";
        try {
            if (cfg.op == "rankone") {
                const IntervalExchange t(f, lambda, pi);
                SearchOptions opt;
                opt.depth_budget = cfg.depth;
                opt.min_depth = cfg.min_depth;
                opt.step_budget = cfg.budget;
                const TowerCertificate cert =
                    tower_search(t, cfg.q, parse_rational(cfg.epsilon_text), opt);
                out << "ok\t" << cert.prov.depth << "\t" << cert.n0.str() << "\t"
                    << cert.coverage.str() << "\t" << cert.overlap_rel_base.str() << "\t"
                    << to_string(cert.prov.v_b) << "\t-\n";
            } else if (cfg.op == "commute") {
                const IntervalExchange t(f, lambda, pi);
                const CommutationResult r =
                    verify_power_commutation(t, cfg.depth, cfg.q, cfg.budget);
                std::string sums;
                for (const BigInt& s : r.column_sums) sums += s.str() + ",";
                out << (r.status == CommuteStatus::Commute
                            ? "COMMUTE"
                            : r.status == CommuteStatus::Witness ? "WITNESS" : "OPEN")
                    << "\t" << sums << "\t"
                    << (r.status == CommuteStatus::Witness ? r.point.str() : "-") << "\t-\n";
            } else {
                const RauzyPath path = rauzy_iterate(lambda, pi, cfg.depth);
                out << "ok\t" << path.letters << "\t-\n";
            }
            ++successes;
        } catch (const std::exception& e) {
            if (cfg.op == "rankone")
                out << "error\t-\t-\t-\t-\t-\t" << code_of(e) << ":" << e.what() << "\n";
            else if (cfg.op == "commute")
                out << "error\t-\t-\t" << code_of(e) << ":" << e.what() << "\n";
            else
                out << "error\t-\t" << code_of(e) << ":" << e.what() << "\n";
        }
    }
    out << "# successes: " << successes << "/" << cfg.samples << "\n";
    return out.str();
}

std::string run_one(const RunConfig& cfg) {
    Json report;
    report["config"] = cfg.to_json();

    if (cfg.command == "sample") return run_sample(cfg);

    if (cfg.command == "class") {
        const Field f = Field::from_name(cfg.field_text);
        std::vector<int> img;
        for (const std::string& s : split_commas(cfg.pi_text)) img.push_back(std::stoi(s));
        (void)f;
        const RauzyClass cls = rauzy_class(Permutation(img));
        if (cfg.format == "dot") return class_to_dot(cls);
        report["class"] = class_to_json(cls);
        return report.dump(2) + "\n";
    }
    if (cfg.command == "skew") {
        const IntervalExchange t = load_iet(cfg);
        Scalar total = t.total();
        std::vector<Scalar> lambda;
        for (const Scalar& l : t.lengths()) lambda.push_back(l / total);
        SkewState start{lambda, t.permutation(),
                        ModMatrix::identity(t.intervals(), cfg.q)};
        const SkewOrbit orb = skew_orbit(start, t.permutation(), cfg.steps);
        report["orbit"] = skew_orbit_to_json(orb);
        report["group"] = table_to_json(semigroup_closure(t.permutation(), cfg.q));
        report["identity_word"] = identity_word_to_json(find_identity_word(t.permutation(), cfg.q));
        return report.dump(2) + "\n";
    }

    const IntervalExchange t = load_iet(cfg);
    if (cfg.command == "eval") {
        if (cfg.x_text.empty()) throw ParseError("eval needs --x");
        const Scalar x = Scalar::parse(cfg.x_text, t.field());
        report["x"] = x.str();
        report["Tx"] = t.apply(x).str();
        report["iet"] = iet_to_json(t);
    } else if (cfg.command == "induce") {
        const RauzyPath path = rauzy_iterate(t.lengths(), t.permutation(), cfg.depth);
        report["path"] = path_to_json(path);
        report["return_times"] = Json::array();
        for (const BigInt& s : return_times(path.matrix))
            report["return_times"].push_back(s.str());
    } else if (cfg.command == "power") {
        const PowerMap p = power_iet(t, cfg.q);
        report["power"] = power_to_json(p);
    } else if (cfg.command == "commute") {
        const CommutationResult r = verify_power_commutation(t, cfg.depth, cfg.q, cfg.budget);
        report["commutation"] = commutation_to_json(r);
    } else if (cfg.command == "rankone" || cfg.command == "refine") {
        if (t.field().is_rational())
            report["note"] = "rational lengths: induction has a finite horizon";
        SearchOptions opt;
        opt.depth_budget = cfg.depth;
        opt.min_depth = cfg.min_depth;
        opt.step_budget = cfg.budget;
        const TowerCertificate cert = tower_search(t, cfg.q, parse_rational(cfg.epsilon_text), opt);
        report["certificate"] = certificate_to_json(cert);
        report["verify"] = verify_report_to_json(verify_certificate(t, cert));
        if (cfg.command == "refine")
            report["refinement"] = refinement_to_json(
                refinement_check(t, cert, cfg.dyadic, parse_rational(cfg.epsilon_text)));
    } else {
        throw ParseError("unknown command " + cfg.command);
    }
    return report.dump(2) + "\n";
}

}  // namespace

CliResult run_command(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"exact interval exchange toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"eval",    "induce", "class",
                                            "power",   "commute", "skew",
                                            "rankone", "refine",  "sample"};
    for (const std::string& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--pi", cfg.pi_text, "permutation, e.g. 2,1");
        sub->add_option("--lambda", cfg.lambda_text, "lengths, e.g. 3,2 or 1/2+1/2*sqrt(5),1");
        sub->add_option("--field", cfg.field_text, "Q or Q(sqrt d)");
        sub->add_option("--input", cfg.input_path, "interval exchange JSON file");
        sub->add_option("--x", cfg.x_text, "point to evaluate");
        sub->add_option("--q", cfg.q, "power / modulus");
        sub->add_option("--epsilon", cfg.epsilon_text, "target, exact rational");
        sub->add_option("--depth", cfg.depth, "induction depth / depth budget");
        sub->add_option("--min-depth", cfg.min_depth, "first depth considered");
        sub->add_option("--budget", cfg.budget, "orbit step budget");
        sub->add_option("--steps", cfg.steps, "skew orbit steps");
        sub->add_option("--dyadic", cfg.dyadic, "dyadic rank for refine");
        sub->add_option("--samples", cfg.samples, "batch size");
        sub->add_option("--m", cfg.m, "number of intervals for sampling");
        sub->add_option("--denom-bound", cfg.denom_bound, "denominator bound for sampling");
        sub->add_option("--seed", cfg.seed, "RNG seed (64-bit)");
        sub->add_option("--format", cfg.format, "json, tsv or dot");
        sub->add_option("--op", cfg.op, "pipeline for sample: induce, commute, rankone");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    }

    std::vector<const char*> argv;
    argv.push_back("iex");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int rc = app.exit(e, os, os);
        return {rc == 0 ? 0 : 2, os.str(), cfg.out_path};
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return {0, run_one(cfg), cfg.out_path};
    } catch (const std::exception& e) {
        return {code_of(e), error_json(cfg, e), cfg.out_path};
    }
}

}  // namespace iex::cli
