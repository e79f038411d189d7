#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <locale>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "capax/estimators.hpp"
#include "capax/resultant.hpp"

using json = nlohmann::ordered_json;
using namespace capax;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::string map;
    std::string precision;  // empty: as declared in the map file
    std::string set = "torus:1,1";
    int mesh = 16;
    int nmax = 5;
    int grid = 8;
    std::string basis = "z";
    std::string alpha = "1,0";
    std::string beta;
    int k = 3;
    std::string w = "1,0,1,0";
    bool exact = false;
    bool oracle = false;
    bool cross_check = true;
    double tol = 1e-8;
    std::string out;
    std::string format;
    std::uint64_t seed = 1;
    int threads = 1;
    bool verbose = false;
};

const std::set<std::string> kConfigKeys{"command", "map",   "precision", "set",   "mesh",        "nmax",
                                        "grid",    "basis", "alpha",     "beta",  "k",           "w",
                                        "exact",   "oracle", "cross_check", "tol", "out",        "format",
                                        "seed",    "threads", "verbose"};

json to_json(const RunConfig& c)
{
    return json{{"command", c.command}, {"map", c.map},         {"precision", c.precision},     {"set", c.set},
                {"mesh", c.mesh},       {"nmax", c.nmax},       {"grid", c.grid},               {"basis", c.basis},
                {"alpha", c.alpha},     {"beta", c.beta},       {"k", c.k},                     {"w", c.w},
                {"exact", c.exact},     {"oracle", c.oracle},   {"cross_check", c.cross_check}, {"tol", c.tol},
                {"out", c.out},         {"format", c.format},   {"seed", c.seed},               {"threads", c.threads},
                {"verbose", c.verbose}};
}

void load_config(const std::string& path, RunConfig& c)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config " + path + ": expected an object");
    for (const auto& [key, v] : j.items())
        if (!kConfigKeys.count(key)) throw UsageError("config " + path + ": unknown key '" + key + "'");
    auto get = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(field);
        } catch (const json::exception&) {
            throw UsageError(std::string("config key '") + key + "' has the wrong type");
        }
    };
    get("command", c.command);
    get("map", c.map);
    get("precision", c.precision);
    get("set", c.set);
    get("mesh", c.mesh);
    get("nmax", c.nmax);
    get("grid", c.grid);
    get("basis", c.basis);
    get("alpha", c.alpha);
    get("beta", c.beta);
    get("k", c.k);
    get("w", c.w);
    get("exact", c.exact);
    get("oracle", c.oracle);
    get("cross_check", c.cross_check);
    get("tol", c.tol);
    get("out", c.out);
    get("format", c.format);
    get("seed", c.seed);
    get("threads", c.threads);
    get("verbose", c.verbose);
}

// The --config value, found before the real parse so that flags override it.
std::string find_config(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

struct MapFile {
    GraphMap f;
    json doc;
};

MapFile load_map(const RunConfig& c)
{
    if (c.map.empty()) throw UsageError("--map is required");
    std::ifstream in(c.map);
    if (!in) throw UsageError("cannot open map file " + c.map);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("map " + c.map + ": " + e.what());
    }
    for (const char* key : {"f1", "f2"})
        if (!j.contains(key) || !j[key].is_string()) throw UsageError("map " + c.map + ": missing string field '" + key + "'");
    for (const auto& [key, v] : j.items())
        if (key != "f1" && key != "f2" && key != "precision") throw UsageError("map " + c.map + ": unknown key '" + key + "'");
    std::string prec = c.precision.empty() ? j.value("precision", std::string("exact")) : c.precision;
    if (c.exact) prec = "exact";
    if (prec != "exact" && prec != "float") throw UsageError("precision must be exact or float");
    try {
        GraphMap f = GraphMap::parse(j["f1"], j["f2"], prec == "exact" ? Precision::Exact : Precision::Float);
        return {std::move(f), json{{"f1", j["f1"]}, {"f2", j["f2"]}, {"precision", prec}}};
    } catch (const ParseError& e) {
        throw UsageError("map " + c.map + ": " + e.what());
    }
}

std::vector<double> parse_numbers(const std::string& text, std::size_t n, const char* what)
{
    std::vector<double> v;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": bad number '" + item + "'");
        }
    }
    if (v.size() != n) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated numbers");
    return v;
}

Exp2 parse_exp(const std::string& text, const char* what)
{
    auto v = parse_numbers(text, 2, what);
    Exp2 e{static_cast<int>(v[0]), static_cast<int>(v[1])};
    if (e[0] != v[0] || e[1] != v[1] || e[0] < 0 || e[1] < 0) throw UsageError(std::string(what) + ": expected non-negative integers");
    return e;
}

json num(const GaussRational& a)
{
    cplx c = a.to_complex();
    return json{{"re", c.real()}, {"im", c.imag()}, {"exact", to_string(a)}};
}

json num(cplx c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json exps(const std::vector<Monomial>& ms)
{
    json a = json::array();
    for (const auto& m : ms) a.push_back(json::array({m.alpha(), m.beta()}));
    return a;
}

class Csv {
public:
    Csv() { m_os.imbue(std::locale::classic()); m_os.precision(17); }
    template <class... T>
    void row(const T&... v)
    {
        bool first = true;
        ((m_os << (first ? "" : ",") << v, first = false), ...);
        m_os << '\n';
    }
    std::ostringstream& stream() { return m_os; }
    std::string str() const { return m_os.str(); }

private:
    std::ostringstream m_os;
};

// Sample for the estimator commands: K in w-space, lifted through the map when one is given.
SampledSet sample(const RunConfig& c, const std::optional<MapFile>& mf)
{
    SampledSet K = build_mesh(parse_set_spec(c.set, c.mesh));
    if (!mf) return K;
    return graph_lift(mf->f, K, c.threads);
}

void check_range(const char* name, int v, int lo, int hi)
{
    if (v < lo || v > hi)
        throw UsageError(std::string("--") + name + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

struct Output {
    json doc;
    std::string csv;
};

Output run(const RunConfig& c)
{
    check_range("threads", c.threads, 1, 256);
    const bool csv = c.format == "csv";
    auto json_only = [&] {
        if (csv) throw UsageError("command " + c.command + " has no CSV output");
    };
    Output out;
    json& doc = out.doc;
    doc["config"] = to_json(c);

    if (c.command == "resultant") {
        json_only();
        MapFile mf = load_map(c);
        doc["config"]["map_file"] = mf.doc;
        if (!mf.f.equal_degrees()) throw std::domain_error("resultant needs deg f1 = deg f2");
        if (mf.f.is_exact()) {
            doc["res"] = num(resultant(mf.f.fhat1(), mf.f.fhat2()));
        } else {
            doc["res"] = num(resultant(mf.f.fhat1f(), mf.f.fhat2f()));
        }
        if (c.oracle) {
            cplx r = resultant(mf.f.fhat1f(), mf.f.fhat2f());
            cplx o = resultant_root_oracle(mf.f.fhat1f(), mf.f.fhat2f());
            doc["oracle"] = num(o);
            doc["relative_deviation"] = std::abs(r - o) / std::max(std::abs(o), 1e-300);
        }
    } else if (c.command == "block-check") {
        json_only();
        MapFile mf = load_map(c);
        doc["config"]["map_file"] = mf.doc;
        if (!mf.f.is_exact()) throw UsageError("block-check needs an exact map");
        check_range("k", c.k, 1, 64);
        BlockReport b = block_factorization(mf.f.fhat1(), mf.f.fhat2(), c.k);
        doc["block"] = json{{"d", b.d},         {"k", b.k},          {"ell", b.ell},   {"r", b.r},
                            {"copies", b.copies}, {"modified", b.modified}, {"size", b.size},
                            {"det", num(b.det)},  {"res", num(b.res)}, {"unit", num(b.unit)},
                            {"identity_holds", b.identity_holds}, {"rows", exps(b.rows)}, {"cols", exps(b.cols)}};
    } else if (c.command == "staircase") {
        MapFile mf = load_map(c);
        doc["config"]["map_file"] = mf.doc;
        StandardMonomialSet I = staircase(mf.f);
        if (csv) {
            Csv t;
            t.row("b1", "b2");
            for (const auto& e : I.exponents) t.row(e[0], e[1]);
            out.csv = t.str();
        }
        doc["staircase"] = I.exponents;
    } else if (c.command == "basis") {
        check_range("nmax", c.nmax, 0, 64);
        BasisKind kind = parse_basis_kind(c.basis);
        std::optional<MapFile> mf;
        std::optional<Variety> V;
        if (kind == BasisKind::B || kind == BasisKind::C) {
            mf = load_map(c);
            doc["config"]["map_file"] = mf->doc;
            V.emplace(mf->f);
        }
        MonomialBasisStream s = V ? MonomialBasisStream(kind, *V, c.nmax) : MonomialBasisStream(kind, c.nmax);
        std::vector<Monomial> ms = s.up_to(c.nmax);
        if (csv) {
            Csv t;
            t.row("a1", "a2", "b1", "b2");
            for (const auto& m : ms) t.row(m.e[0], m.e[1], m.e[2], m.e[3]);
            out.csv = t.str();
        }
        doc["basis"] = exps(ms);
    } else if (c.command == "fiber") {
        MapFile mf = load_map(c);
        doc["config"]["map_file"] = mf.doc;
        auto v = parse_numbers(c.w, 4, "--w");
        Fiber fb = fiber(mf.f, {cplx(v[0], v[1]), cplx(v[2], v[3])});
        if (csv) {
            Csv t;
            t.row("re_z1", "im_z1", "re_z2", "im_z2", "multiple");
            for (std::size_t i = 0; i < fb.roots.size(); ++i)
                t.row(fb.roots[i][0].real(), fb.roots[i][0].imag(), fb.roots[i][1].real(), fb.roots[i][1].imag(),
                      fb.multiple[i] ? 1 : 0);
            out.csv = t.str();
        }
        json roots = json::array();
        for (std::size_t i = 0; i < fb.roots.size(); ++i)
            roots.push_back({{"z1", num(fb.roots[i][0])}, {"z2", num(fb.roots[i][1])}, {"multiple", static_cast<bool>(fb.multiple[i])}});
        doc["fiber"] = {{"roots", roots}, {"residual", fb.residual}, {"near_discriminant", fb.near_discriminant}};
    } else if (c.command == "cheb") {
        json_only();
        BasisKind kind = parse_basis_kind(c.basis);
        Exp2 a = parse_exp(c.alpha, "--alpha");
        Exp2 b = c.beta.empty() ? Exp2{0, 0} : parse_exp(c.beta, "--beta");
        std::optional<MapFile> mf;
        if (!c.map.empty() || kind == BasisKind::B || kind == BasisKind::C) mf = load_map(c);
        if (mf) doc["config"]["map_file"] = mf->doc;
        if ((kind == BasisKind::Z || kind == BasisKind::W) && (b[0] || b[1])) throw UsageError("--beta needs basis B or C");
        Monomial target = kind == BasisKind::Z ? Monomial::z(a[0], a[1]) : Monomial(a[0], a[1], b[0], b[1]);
        std::optional<Variety> V;
        if (mf && (kind == BasisKind::B || kind == BasisKind::C)) V.emplace(mf->f);
        int level = kind == BasisKind::Z || kind == BasisKind::W ? target.degree()
                                                                 : V->map().d() * target.alpha_deg() + target.beta_deg();
        MonomialBasisStream s = V ? MonomialBasisStream(kind, *V, level) : MonomialBasisStream(kind, level);
        ChebyshevOptions opt;
        opt.tol = c.tol;
        ChebyshevEstimate e = chebyshev_value(sample(c, mf), s, target, opt);
        doc["estimate"] = {{"kind", to_string(e.kind)}, {"target", to_string(e.target)}, {"value", e.value},
                           {"lower", e.lower},          {"residual", e.residual},     {"iterations", e.iterations},
                           {"warning", e.warning},      {"mesh_id", e.mesh_id}};
    } else if (c.command == "tdiam") {
        check_range("nmax", c.nmax, 1, 30);
        BasisKind kind = parse_basis_kind(c.basis);
        std::optional<MapFile> mf;
        if (!c.map.empty() || kind == BasisKind::B || kind == BasisKind::C) mf = load_map(c);
        if (mf) doc["config"]["map_file"] = mf->doc;
        std::optional<Variety> V;
        if (kind == BasisKind::B || kind == BasisKind::C) V.emplace(mf->f);
        TdiamResult r = transfinite_diameter(sample(c, mf), make_stream(kind, V ? &*V : nullptr, c.nmax), c.nmax);
        Csv t;
        t.row("n", "m_n", "l_n", "logVan", "estimate");
        json rows = json::array();
        for (const auto& row : r.rows) {
            t.row(row.n, row.m, row.l, row.log_van, row.estimate);
            rows.push_back({{"n", row.n}, {"m_n", row.m}, {"l_n", row.l}, {"logVan", row.log_van}, {"estimate", row.estimate}});
        }
        if (csv) out.csv = t.str();
        doc["rows"] = rows;
        doc["truncated"] = r.ledger.truncated;
    } else if (c.command == "pullback") {
        json_only();
        check_range("nmax", c.nmax, 1, 30);
        check_range("grid", c.grid, 4, 256);
        MapFile mf = load_map(c);
        doc["config"]["map_file"] = mf.doc;
        PullbackOptions opt;
        opt.n_max = c.nmax;
        opt.mesh = c.mesh;
        opt.grid = c.grid;
        opt.threads = c.threads;
        opt.cross_check = c.cross_check;
        opt.cheb.tol = c.tol;
        PullbackReport r = pullback_check(mf.f, parse_set_spec(c.set, c.mesh), opt);
        doc["lhs"] = r.lhs;
        doc["rhs"] = r.rhs;
        doc["d2_cross"] = r.d2_cross ? json(*r.d2_cross) : json(nullptr);
        doc["ratio"] = r.ratio;
        doc["d3"] = r.d3;
        doc["abs_res"] = r.abs_res;
        doc["vandermonde"] = {{"lhs", r.van_lhs}, {"d3", r.van_d3}, {"d2", r.van_d2 ? json(*r.van_d2) : json(nullptr)}};
        doc["lift_points"] = r.lift_points;
    } else {
        throw UsageError("unknown command '" + c.command + "'");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    std::string config_path;
    CLI::App app{"capax: transfinite diameters, Chebyshev constants and resultants of polynomial maps"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path, "JSON config file; flags take precedence");
    app.add_option("--threads", cfg.threads, "worker cap");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--out", cfg.out, "output path (csv or json selects the format instead)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--verbose", cfg.verbose);

    auto map_opt = [&](CLI::App* s) { s->add_option("--map", cfg.map, "map file {f1, f2, precision}"); };
    auto prec_opt = [&](CLI::App* s) { s->add_option("--precision", cfg.precision)->check(CLI::IsMember({"exact", "float"})); };
    auto set_opts = [&](CLI::App* s) {
        s->add_option("--set", cfg.set, "torus:r1,r2 | polydisc:r1,r2 | box:a1,b1,a2,b2 | points:PATH");
        s->add_option("--mesh", cfg.mesh, "points per coordinate");
    };

    auto* res = app.add_subcommand("resultant", "Res of the leading forms");
    map_opt(res);
    prec_opt(res);
    res->add_flag("--exact", cfg.exact, "force exact arithmetic");
    res->add_flag("--oracle", cfg.oracle, "cross-check against the root product");

    auto* blk = app.add_subcommand("block-check", "factorization of the level-k block");
    map_opt(blk);
    blk->add_option("--k", cfg.k);

    auto* stc = app.add_subcommand("staircase", "standard monomials of <f1, f2>");
    map_opt(stc);
    prec_opt(stc);

    auto* bas = app.add_subcommand("basis", "monomial basis stream");
    map_opt(bas);
    bas->add_option("--basis", cfg.basis, "z | w | B | C");
    bas->add_option("--nmax", cfg.nmax, "last level");

    auto* fib = app.add_subcommand("fiber", "roots of f(z) = w");
    map_opt(fib);
    prec_opt(fib);
    fib->add_option("--w", cfg.w, "re_w1,im_w1,re_w2,im_w2");

    auto* chb = app.add_subcommand("cheb", "Chebyshev constant of one target monomial");
    map_opt(chb);
    prec_opt(chb);
    set_opts(chb);
    chb->add_option("--basis", cfg.basis, "z | w | B | C");
    chb->add_option("--alpha", cfg.alpha, "a1,a2");
    chb->add_option("--beta", cfg.beta, "b1,b2");
    chb->add_option("--tol", cfg.tol);

    auto* tdm = app.add_subcommand("tdiam", "Vandermonde estimates of the transfinite diameter");
    map_opt(tdm);
    prec_opt(tdm);
    set_opts(tdm);
    tdm->add_option("--basis", cfg.basis, "z | w | B | C");
    tdm->add_option("--nmax", cfg.nmax);

    auto* pb = app.add_subcommand("pullback", "both sides of the pullback formula");
    map_opt(pb);
    prec_opt(pb);
    set_opts(pb);
    pb->add_option("--nmax", cfg.nmax);
    pb->add_option("--grid", cfg.grid, "Zaharjuta quadrature nodes");
    pb->add_option("--tol", cfg.tol);
    pb->add_flag("--cross-check,!--no-cross-check", cfg.cross_check, "d2 on basis B (exact maps)");

    try {
        std::string pre = find_config(argc, argv);
        if (!pre.empty()) load_config(pre, cfg);
        const std::string config_command = cfg.command;
        app.parse(argc, argv);
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_command.empty() && config_command != cfg.command)
            throw UsageError("config command '" + config_command + "' does not match '" + cfg.command + "'");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "capax: " << e.what() << '\n';
        return 2;
    }
    if (cfg.out == "csv" || cfg.out == "json") {
        cfg.format = cfg.out;
        cfg.out.clear();
    }
    if (cfg.format.empty()) cfg.format = cfg.command == "fiber" ? "csv" : "json";

    const auto t0 = std::chrono::steady_clock::now();
    Output out;
    try {
        out = run(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "capax " << cfg.command << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "capax " << cfg.command << ": " << e.what() << '\n';
        return 1;
    }
    std::string text;
    if (cfg.format == "csv") {
        text = "# config: " + out.doc["config"].dump() + "\n" + out.csv;
    } else {
        text = out.doc.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f || !(f << text)) {
            std::cerr << "capax: cannot write " << cfg.out << '\n';
            return 1;
        }
    }
    if (cfg.verbose)
        std::cerr << "capax " << cfg.command << ": "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return 0;
}
