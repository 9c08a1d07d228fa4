#include "sparsefactor/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsefactor/algos.hpp"
#include "sparsefactor/errors.hpp"
#include "sparsefactor/instances.hpp"
#include "sparsefactor/oracle.hpp"

namespace sf::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "sparsefactor/1";

struct Opts {
    std::uint64_t p = 0;
    int k = 1;
    int n = 0;
    int d = 0;
    int s = 0;
    int ell = 0;
    int e = 0;
    std::uint64_t m_override = 0;
    bool escalate = false;
    int S_exponent = 1;
    std::string manifest;
    std::vector<std::string> inputs;
    std::vector<std::string> fset;
    bool general = false;
    // selftest and bench
    int count = 20;
    bool no_clock = false;
    std::string task = "divisors";
    std::vector<int> s_list = {2, 4, 8, 16};
    std::uint64_t seed = 1;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_usage_kind(ErrorKind k) {
    switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::CoeffOutOfRange:
    case ErrorKind::NotPrime:
    case ErrorKind::UsageError:
        return true;
    default:
        return false;
    }
}

// ---- inputs

struct Input {
    std::vector<std::string> texts;  // one entry for plain text, the product list for a manifest
    bool manifest = false;
    int s = -1, d = -1;
};

Input read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot open manifest " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Usage("manifest " + path + " is not valid JSON");
    }
    if (!j.is_object() || !j.contains("product") || !j["product"].is_array() || j["product"].empty())
        throw Usage("manifest " + path + " needs a nonempty \"product\" list");
    Input r;
    r.manifest = true;
    for (auto& t : j["product"]) {
        if (!t.is_string()) throw Usage("manifest product entries must be strings");
        r.texts.push_back(t.get<std::string>());
    }
    if (j.contains("s")) r.s = j["s"].get<int>();
    if (j.contains("d")) r.d = j["d"].get<int>();
    return r;
}

Input read_input(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return read_manifest(arg.substr(1));
    Input r;
    r.texts.push_back(arg);
    return r;
}

struct Ctx {
    Opts o;
    FieldPtr F;
    int n = 0;
    AlgoParams P;
    std::vector<Input> in;
};

int max_var(const std::vector<Input>& ins, const std::vector<std::string>& extra) {
    int n = 1;
    for (auto& i : ins)
        for (auto& t : i.texts) n = std::max(n, max_var_index(t) + 1);
    for (auto& t : extra) n = std::max(n, max_var_index(t) + 1);
    return n;
}

SparsePoly poly_of(const Ctx& c, const std::string& t) { return parse_poly(t, c.F, c.n); }

SparsePoly explicit_of(const Ctx& c, const Input& i) {
    if (i.manifest) {
        std::vector<SparsePoly> fs;
        for (auto& t : i.texts) fs.push_back(poly_of(c, t));
        return product(fs, c.F, c.n);
    }
    return poly_of(c, i.texts[0]);
}

BoxPtr box_of(const Ctx& c, const Input& i) {
    if (!i.manifest) return make_explicit(poly_of(c, i.texts[0]), c.P.d, c.P.s);
    std::vector<SparsePoly> fs;
    for (auto& t : i.texts) fs.push_back(poly_of(c, t));
    return make_product(fs, c.P.d, c.P.s);
}

// Reads the inputs and fixes field, arity and parameters.
Ctx setup(const Opts& o, size_t want_inputs, bool need_s, bool variadic = false) {
    Ctx c;
    c.o = o;
    std::vector<std::string> args = o.inputs;
    if (!o.manifest.empty()) args.insert(args.begin(), "@" + o.manifest);
    if (variadic ? args.size() < want_inputs : args.size() != want_inputs)
        throw Usage("expected " + std::to_string(want_inputs) + " input(s), got " + std::to_string(args.size()));
    for (auto& a : args) c.in.push_back(read_input(a));
    if (o.p == 0) throw Usage("--p is required");
    c.F = o.k == 1 ? Field::prime(o.p) : Field::extension(o.p, o.k);
    c.n = o.n > 0 ? o.n : max_var(c.in, o.fset);
    int d = o.d, s = o.s, ell = o.ell;
    for (auto& i : c.in) {
        if (!i.manifest) continue;
        if (d <= 0 && i.d > 0) d = i.d;
        if (s <= 0 && i.s > 0) s = i.s;
        if (ell <= 0) ell = static_cast<int>(i.texts.size());
    }
    if (d <= 0) throw Usage("--d is required");
    if (need_s && s <= 0) throw Usage("--s is required");
    c.P.n = c.n;
    c.P.d = d;
    c.P.s = std::max(1, s);
    c.P.ell = std::max(1, ell);
    c.P.S_exponent = o.S_exponent;
    c.P.escalate = o.escalate;
    if (o.m_override) c.P.m_override = o.m_override;
    return c;
}

json header(const std::string& cmd) {
    json j;
    j["schema"] = kSchema;
    j["command"] = cmd;
    return j;
}

json info_json(const RunInfo& ri) {
    json j;
    j["m"] = ri.m;
    j["q"] = ri.q;
    j["certified"] = ri.certified;
    j["queries"] = ri.queries;
    j["faces"] = ri.faces;
    j["rung"] = ri.rung;
    return j;
}

json factors_json(const std::vector<std::pair<SparsePoly, int>>& fs) {
    json a = json::array();
    for (auto& [h, e] : fs) a.push_back({{"factor", h.to_string()}, {"multiplicity", e}});
    return a;
}

// ---- commands

json cmd_factor(const Opts& o) {
    Ctx c = setup(o, 1, true);
    RunInfo ri;
    Factorization fz;
    if (!c.in[0].manifest) fz = factor_nsd(explicit_of(c, c.in[0]), c.P, &ri);
    else if (o.general) fz = factor_product_general(box_of(c, c.in[0]), c.P, &ri);
    else fz = factor_product_irreducibles(box_of(c, c.in[0]), c.P, &ri);
    json j = header("factor");
    j["unit"] = fz.unit;
    j["factors"] = factors_json(fz.factors);
    j["generator"] = info_json(ri);
    return j;
}

json cmd_divisors(const Opts& o) {
    Ctx c = setup(o, 1, true);
    RunInfo ri;
    DivisorSet ds = c.in[0].manifest ? divisors_of_product(box_of(c, c.in[0]), c.P, &ri)
                                     : sparse_divisors(explicit_of(c, c.in[0]), c.P, &ri);
    json j = header("divisors");
    j["monomial"] = mono_to_string(ds.monomial);
    json a = json::array();
    for (auto& h : ds.divisors) a.push_back(h.to_string());
    j["divisors"] = a;
    j["count"] = ds.divisors.size();
    j["generator"] = info_json(ri);
    return j;
}

json cmd_divides(const Opts& o) {
    Ctx c = setup(o, 2, false);
    RunInfo ri;
    bool r = divides(box_of(c, c.in[0]), box_of(c, c.in[1]), c.P, &ri);
    json j = header("divides");
    j["divides"] = r;
    j["generator"] = info_json(ri);
    return j;
}

json cmd_power(const Opts& o) {
    Ctx c = setup(o, 1, false);
    if (o.e < 2) throw Usage("--e >= 2 is required");
    RunInfo ri;
    bool r = is_complete_power(box_of(c, c.in[0]), o.e, c.P, &ri);
    json j = header("power");
    j["is_power"] = r;
    j["e"] = o.e;
    j["generator"] = info_json(ri);
    return j;
}

json cmd_multiquad(const Opts& o) {
    Ctx c = setup(o, 1, true);
    RunInfo ri;
    auto fs = multiquadratic_factors(box_of(c, c.in[0]), c.P, &ri);
    json j = header("multiquad");
    j["factors"] = factors_json(fs);
    j["generator"] = info_json(ri);
    return j;
}

json cmd_multiplicity(const Opts& o) {
    Ctx c = setup(o, 2, false);
    if (c.in[0].manifest) throw Usage("the first input of multiplicity must be a polynomial");
    RunInfo ri;
    int k = multiplicity_of(explicit_of(c, c.in[0]), box_of(c, c.in[1]), c.P, &ri);
    json j = header("multiplicity");
    j["multiplicity"] = k;
    j["generator"] = info_json(ri);
    return j;
}

json cmd_interp(const Opts& o) {
    Ctx c = setup(o, 2, false, true);
    RunInfo ri;
    std::vector<SparsePoly> fset;
    for (auto& t : o.fset) fset.push_back(poly_of(c, t));
    BoxPtr f = box_of(c, c.in[0]);
    std::vector<BoxPtr> qs;
    for (size_t i = 1; i < c.in.size(); ++i) qs.push_back(box_of(c, c.in[i]));
    json j = header("interp");
    if (qs.size() == 1) {
        auto r = rational_interpolate(qs[0], f, fset, c.P, &ri);
        j["a"] = r.a.to_string();
        j["b"] = r.b.to_string();
    } else {
        auto r = rational_interpolate_multi(qs, f, fset, c.P, &ri);
        json a = json::array();
        for (auto& x : r.a) a.push_back(x.to_string());
        j["a"] = a;
        j["b"] = r.b.to_string();
    }
    j["generator"] = info_json(ri);
    return j;
}

json cmd_audit(const Opts& o) {
    Ctx c = setup(o, 1, true);
    RunInfo ri;
    Audit a = divisor_count_audit(explicit_of(c, c.in[0]), c.P, &ri);
    json j = header("audit");
    j["count"] = a.count;
    j["bound"] = a.bound;
    j["ok"] = a.ok;
    j["vertices"] = a.vertices;
    j["vertices_ok"] = a.vertices_ok;
    j["generator"] = info_json(ri);
    return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_selftest(const Opts& o, std::ostream& out) {
    int agree = 0, total = 0;
    inst::Rng r(o.seed);
    const std::uint64_t primes[] = {5, 7, 11};
    for (int i = 0; i < o.count; ++i) {
        FieldPtr F = Field::prime(primes[i % 3]);
        const int n = 1 + static_cast<int>(r.below(3));
        const int d = 1 + static_cast<int>(r.below(2));
        const int ell = 1 + static_cast<int>(r.below(3));
        std::vector<SparsePoly> fs;
        for (int j = 0; j < ell; ++j) fs.push_back(inst::random_sparse(r, F, n, 1 + static_cast<int>(r.below(2)), 1));
        SparsePoly f = product(fs, F, n);
        if (f.max_individual_degree() > 3) continue;
        AlgoParams P;
        P.n = n;
        P.d = std::max(d, f.max_individual_degree());
        P.s = static_cast<int>(f.sparsity());
        oracle::OracleReport rep;
        rep.instance = f.to_string() + " over F_" + std::to_string(F->p());
        auto t0 = std::chrono::steady_clock::now();
        auto want = oracle::brute_factor(f);
        rep.oracle_ms = o.no_clock ? 0 : elapsed_ms(t0);
        t0 = std::chrono::steady_clock::now();
        try {
            auto got = factor_nsd(f, P);
            rep.algorithm_answer = oracle::describe(got);
        } catch (const Error& e) {
            rep.algorithm_answer = std::string("error ") + kind_name(e.kind());
        }
        rep.algorithm_ms = o.no_clock ? 0 : elapsed_ms(t0);
        rep.oracle_answer = oracle::describe(want);
        rep.agree = rep.oracle_answer == rep.algorithm_answer;
        agree += rep.agree;
        ++total;
        out << rep.to_json() << "\n";
    }
    json j = header("selftest");
    j["agree"] = agree;
    j["total"] = total;
    out << j.dump() << "\n";
    return agree == total ? kOk : kAlgorithmError;
}

std::uint64_t pow_sat(std::uint64_t b, int e) {
    long double v = std::pow(static_cast<long double>(b), e);
    return v > 1e18L ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(v);
}

int cmd_bench(const Opts& o, std::ostream& out) {
    if (o.p == 0) throw Usage("--p is required");
    if (o.task != "divisors" && o.task != "product") throw Usage("--task must be divisors or product");
    FieldPtr F = o.k == 1 ? Field::prime(o.p) : Field::extension(o.p, o.k);
    const int n = o.n > 0 ? o.n : 3;
    const int d = o.d > 0 ? o.d : 2;
    const int ell = o.ell > 0 ? o.ell : 2;
    out << "task,n,s,d,ell,m,queries,millis,count,bound,faces,query_bound\n";
    for (int s : o.s_list) {
        if (s < 1) throw Usage("--s-list entries must be positive");
        inst::Rng r(o.seed * 1000003 + static_cast<std::uint64_t>(s));
        AlgoParams P;
        P.n = n;
        P.s = s;
        P.d = d;
        P.ell = ell;
        RunInfo ri;
        size_t count = 0;
        std::uint64_t bound = 0;
        int T = 0;
        auto t0 = std::chrono::steady_clock::now();
        if (o.task == "divisors") {
            // factors of individual degree d/ell with about s^(1/ell) terms keep the product (n,s,d)-sparse
            const int dj = std::max(1, d / ell);
            const int sj = std::max(2, static_cast<int>(std::floor(std::pow(s, 1.0 / ell) + 1e-9)));
            SparsePoly f;
            do {
                f = product(inst::random_irreducibles(r, F, n, sj, dj, ell), F, n);
            } while (static_cast<int>(f.sparsity()) > s || f.max_individual_degree() > d);
            T = f.total_degree();
            count = sparse_divisors(f, P, &ri).divisors.size();
            bound = pow_sat(s, d);
        } else {
            auto fs = inst::random_irreducibles(r, F, n, s, d, ell);
            BoxPtr b = make_product(fs, d, s);
            T = b->total_deg_bound();
            count = divisors_of_product(b, P, &ri).divisors.size();
            int lg = 0;
            while ((1 << lg) < ell) ++lg;
            bound = pow_sat(s, d * (2 + lg));
        }
        const double ms = o.no_clock ? 0 : elapsed_ms(t0);
        // every composed face needs at most (T q + 1)(T + 1)^2 points, each
        // costing at most (T + 2)^2 parent queries through stripped boxes
        const std::uint64_t tq = static_cast<std::uint64_t>(T) * std::max<std::uint64_t>(ri.q, 2) + 1;
        const std::uint64_t qb = std::max<std::uint64_t>(ri.faces, 1) * tq * (T + 1) * (T + 1) * (T + 2) * (T + 2);
        std::ostringstream ms_s;
        ms_s.setf(std::ios::fixed);
        ms_s.precision(3);
        ms_s << ms;
        out << o.task << "," << n << "," << s << "," << d << "," << ell << "," << ri.m << "," << ri.queries << ","
            << ms_s.str() << "," << count << "," << bound << "," << ri.faces << "," << qb << "\n";
    }
    return kOk;
}

void add_common(CLI::App* sc, Opts& o, bool needs_inputs = true) {
    sc->add_option("--p", o.p, "field characteristic");
    sc->add_option("--k", o.k, "extension degree")->check(CLI::PositiveNumber);
    sc->add_option("--n", o.n, "number of variables (default: largest index in the input)");
    sc->add_option("--d", o.d, "individual degree bound");
    sc->add_option("--s", o.s, "sparsity bound");
    sc->add_option("--ell", o.ell, "number of product factors");
    sc->add_option("--m-override", o.m_override, "generator parameter m");
    sc->add_flag("--escalate", o.escalate, "try m = 2, 4, 8, ... before the certified m");
    sc->add_option("--S-exponent", o.S_exponent, "constant c in S = s^(c d^2 log n)")->check(CLI::PositiveNumber);
    if (needs_inputs) {
        sc->add_option("--manifest", o.manifest, "JSON product manifest for the first input");
        sc->add_option("inputs", o.inputs, "polynomials, or @file.json manifests");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sparsefactor: factorization tools for sparse polynomials over finite fields"};
    app.require_subcommand(0, 1);
    Opts o;
    // parameter table
    std::string task_m;
    MInputs mi;
    bool small = false;
    app.add_option("--task-m", task_m, "print the generator parameter m for a task and exit");
    app.add_option("--n", mi.n, "n for --task-m");
    app.add_option("--s", mi.s, "s for --task-m");
    app.add_option("--d", mi.d, "d for --task-m");
    app.add_option("--k", mi.k, "k for --task-m");
    app.add_option("--ell", mi.ell, "ell for --task-m");
    app.add_option("--D", mi.D, "D for --task-m");
    app.add_flag("--small", small, "small characteristic row for --task-m");

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"factor", "factor a sparse polynomial or a product manifest"},
        {"divisors", "all sparse divisors free of monomial factors"},
        {"divides", "whether the first input divides the second"},
        {"power", "whether the input is a complete e-th power"},
        {"multiquad", "multiquadratic sparse irreducible factors"},
        {"multiplicity", "multiplicity of an irreducible polynomial in the second input"},
        {"interp", "recover a/b from f and boxes for a_j f^j / b"},
        {"audit", "irreducible factor count against d*ceil(log2 s)"},
    };
    std::map<std::string, CLI::App*> sc;
    for (auto& s : subs) {
        CLI::App* a = app.add_subcommand(s.name, s.help);
        add_common(a, o);
        sc[s.name] = a;
    }
    sc["factor"]->add_flag("--general", o.general, "products of divisors of sparse polynomials");
    sc["power"]->add_option("--e", o.e, "exponent");
    sc["interp"]->add_option("--fset", o.fset, "candidate irreducible factor of b (repeatable)")->allow_extra_args(false);
    CLI::App* st = app.add_subcommand("selftest", "compare factorizations with the brute-force oracle");
    st->add_option("--count", o.count, "number of instances");
    st->add_option("--seed", o.seed, "instance seed");
    st->add_flag("--no-clock", o.no_clock, "report zero timings");
    CLI::App* bn = app.add_subcommand("bench", "divisor counts and query counts over a range of s");
    add_common(bn, o, false);
    bn->add_option("--task", o.task, "divisors or product");
    bn->add_option("--s-list", o.s_list, "sparsities")->delimiter(',');
    bn->add_option("--seed", o.seed, "instance seed");
    bn->add_flag("--no-clock", o.no_clock, "report zero timings");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        json j = header("");
        j["error_kind"] = "UsageError";
        j["message"] = e.what();
        out << j.dump() << "\n";
        err << e.what() << "\n";
        return kUsageError;
    }

    auto usage = [&](const std::string& cmd, const std::string& msg) {
        json j = header(cmd);
        j["error_kind"] = "UsageError";
        j["message"] = msg;
        out << j.dump() << "\n";
        err << msg << "\n";
        return kUsageError;
    };

    if (!task_m.empty()) {
        auto t = task_from_name(task_m);
        if (!t) return usage("task-m", "unknown task " + task_m);
        mi.cc = small ? CharClass::SMALL : CharClass::LARGE;
        json j = header("task-m");
        j["task"] = task_name(*t);
        j["m"] = m_for_string(*t, mi);
        out << j.dump() << "\n";
        return kOk;
    }
    if (app.get_subcommands().empty()) {
        out << app.help();
        return kUsageError;
    }
    const std::string cmd = app.get_subcommands()[0]->get_name();
    try {
        if (cmd == "selftest") return cmd_selftest(o, out);
        if (cmd == "bench") return cmd_bench(o, out);
        json j;
        if (cmd == "factor") j = cmd_factor(o);
        else if (cmd == "divisors") j = cmd_divisors(o);
        else if (cmd == "divides") j = cmd_divides(o);
        else if (cmd == "power") j = cmd_power(o);
        else if (cmd == "multiquad") j = cmd_multiquad(o);
        else if (cmd == "multiplicity") j = cmd_multiplicity(o);
        else if (cmd == "interp") j = cmd_interp(o);
        else if (cmd == "audit") j = cmd_audit(o);
        out << j.dump() << "\n";
        return kOk;
    } catch (const Usage& e) {
        return usage(cmd, e.what());
    } catch (const Error& e) {
        json j = header(cmd);
        j["error_kind"] = kind_name(e.kind());
        j["message"] = e.what();
        if (e.column() >= 0) j["column"] = e.column();
        out << j.dump() << "\n";
        err << kind_name(e.kind()) << ": " << e.what() << "\n";
        return is_usage_kind(e.kind()) ? kUsageError : kAlgorithmError;
    }
}

}  // namespace sf::cli
