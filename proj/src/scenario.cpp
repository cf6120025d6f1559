#include "starlab/scenario.hpp"

#include "starlab/gns.hpp"
#include "starlab/literal.hpp"
#include "starlab/psd.hpp"
#include "starlab/random.hpp"
#include "starlab/schrodinger.hpp"

#include <toml.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace starlab {

namespace fs = std::filesystem;

const std::vector<std::string> &known_checks()
{
    static const std::vector<std::string> names{
        "gram",          "psd",         "soundness", "kernel",       "gns",
        "classical-limit", "theorem",   "no-go",     "deform",       "assoc",
        "hermitian",     "schrodinger-op", "schrodinger-member", "schrodinger-props"};
    return names;
}

const CheckOptions &Scenario::options_for(const std::string &check) const
{
    static const CheckOptions none;
    const auto it = options.find(check);
    return it == options.end() ? none : it->second;
}

namespace {

bool is_known_check(const std::string &c)
{
    const auto &k = known_checks();
    return std::find(k.begin(), k.end(), c) != k.end();
}

bool needs_functional(const std::string &c)
{
    static const std::set<std::string> s{"gram",   "psd",  "soundness", "kernel", "gns", "classical-limit",
                                         "theorem", "deform"};
    return s.count(c) > 0;
}

bool needs_product(const std::string &c)
{
    return needs_functional(c) || c == "assoc" || c == "hermitian";
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    static std::size_t line_of(const toml::node *n)
    {
        return n != nullptr && n->source().begin.line > 0 ? n->source().begin.line : 1;
    }

    [[noreturn]] void fail(const std::string &msg, const toml::node *n) const
    {
        throw ParseError(msg, line_of(n), source_);
    }

    std::string string(const toml::table &t, const std::string &key) const
    {
        const toml::node *n = t.get(key);
        if (n == nullptr) {
            fail("missing required key '" + key + "'", &t);
        }
        const auto v = n->value<std::string>();
        if (!v) {
            fail("'" + key + "' must be a string", n);
        }
        return *v;
    }

    std::optional<long> integer(const toml::table &t, const std::string &key) const
    {
        const toml::node *n = t.get(key);
        if (n == nullptr) {
            return std::nullopt;
        }
        if (!n->is_integer()) {
            fail("'" + key + "' must be an integer", n);
        }
        return static_cast<long>(*n->value<std::int64_t>());
    }

    long bounded(const toml::table &t, const std::string &key, long lo, long hi, std::optional<long> dflt) const
    {
        const auto v = integer(t, key);
        if (!v) {
            if (!dflt) {
                fail("missing required key '" + key + "'", &t);
            }
            return *dflt;
        }
        if (*v < lo || *v > hi) {
            fail("'" + key + "' = " + std::to_string(*v) + " is outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]",
                 t.get(key));
        }
        return *v;
    }

    std::vector<std::string> strings(const toml::table &t, const std::string &key) const
    {
        std::vector<std::string> out;
        const toml::node *n = t.get(key);
        if (n == nullptr) {
            return out;
        }
        const toml::array *a = n->as_array();
        if (a == nullptr) {
            fail("'" + key + "' must be an array of strings", n);
        }
        for (const auto &el : *a) {
            const auto v = el.value<std::string>();
            if (!v) {
                fail("'" + key + "' must contain only strings", &el);
            }
            out.push_back(*v);
        }
        return out;
    }

    Rational rational(const toml::node &n, const std::string &what) const
    {
        if (n.is_integer()) {
            return Rational(static_cast<long>(*n.value<std::int64_t>()));
        }
        const auto v = n.value<std::string>();
        if (!v) {
            fail("'" + what + "' must be a rational number (integer or string like \"1/4\")", &n);
        }
        Scalar s;
        try {
            s = parse_scalar(*v);
        } catch (const ParseError &e) {
            fail("'" + what + "': " + e.what(), &n);
        }
        if (!s.is_real()) {
            fail("'" + what + "' must be real", &n);
        }
        return s.re();
    }

    void allow_keys(const toml::table &t, const std::set<std::string> &allowed, const std::string &where) const
    {
        for (const auto &[k, v] : t) {
            if (allowed.count(std::string(k.str())) == 0) {
                fail("unknown key '" + std::string(k.str()) + "' in " + where, &v);
            }
        }
    }

    SeriesPoly poly(const std::string &text, const Space &space, int order, const toml::node *n) const
    {
        try {
            return parse_series_poly(text, space, order);
        } catch (const ParseError &e) {
            fail("cannot parse '" + text + "': " + e.what(), n);
        }
    }

private:
    std::string source_;
};

// Largest level any requested check evaluates a Gram form on.
int table_degree_needed(const Scenario &s)
{
    int top = 0;
    int max_obs = 0;
    for (const auto &f : s.observables) {
        max_obs = std::max(max_obs, total_degree(f));
    }
    for (const auto &c : s.checks) {
        if (c == "gns" || c == "classical-limit" || c == "theorem") {
            top = std::max(top, std::max(s.degree + 1, s.degree + max_obs));
        } else if (c == "kernel") {
            top = std::max(top, s.degree + 1);
        } else if (needs_functional(c)) {
            top = std::max(top, s.degree);
        }
    }
    return 2 * top;
}

Functional parse_functional(const Reader &rd, const toml::node &node, Scenario &s)
{
    const toml::table *t = node.as_table();
    if (t == nullptr) {
        rd.fail("'functional' must be a table, e.g. { kind = \"delta-origin\" }", &node);
    }
    rd.allow_keys(*t, {"kind", "c", "entries"}, "functional");
    const std::string kind = rd.string(*t, "kind");
    if (kind == "delta-origin") {
        return Functional::delta_origin(s.space);
    }
    if (kind == "smoothed-delta") {
        const toml::node *c = t->get("c");
        if (c == nullptr) {
            rd.fail("smoothed-delta needs 'c'", t);
        }
        return Functional::smoothed_delta(s.space, rd.rational(*c, "c"));
    }
    if (kind == "gaussian-moment") {
        if (s.space.chart != Chart::phase_space) {
            rd.fail("gaussian-moment is defined on the phase-space chart only", t->get("kind"));
        }
        return Functional::gaussian_moment(s.space.n);
    }
    if (kind == "table") {
        const toml::node *e = t->get("entries");
        if (e == nullptr || !e->is_table()) {
            rd.fail("table functional needs an 'entries' table", t);
        }
        Functional::Table entries;
        for (const auto &[k, v] : *e->as_table()) {
            const std::string key(k.str());
            Monomial m;
            try {
                m = parse_monomial(key, s.space);
            } catch (const ParseError &err) {
                rd.fail("bad monomial '" + key + "': " + err.what(), &v);
            }
            std::vector<Scalar> values;
            if (v.is_integer()) {
                values.push_back(Scalar(Rational(static_cast<long>(*v.value<std::int64_t>()))));
            } else if (const auto text = v.value<std::string>()) {
                ScalarSeries val;
                try {
                    val = parse_series(*text, s.order);
                } catch (const ParseError &err) {
                    rd.fail("bad value for '" + key + "': " + err.what(), &v);
                }
                for (int r = 0; r <= s.order; ++r) {
                    values.push_back(val[r]);
                }
            } else {
                rd.fail("table values must be integers or series strings", &v);
            }
            entries[m] = std::move(values);
        }
        const int need = table_degree_needed(s);
        for (const auto &m : monomial_basis(s.space, need)) {
            if (entries.count(m) == 0) {
                rd.fail("functional table has no entry for monomial '" + monomial_to_string(s.space, m) +
                            "' (checks need all monomials of degree <= " + std::to_string(need) + ")",
                        e);
            }
        }
        return Functional::table(s.space, std::move(entries));
    }
    rd.fail("unknown functional kind '" + kind +
                "' (expected delta-origin, smoothed-delta, gaussian-moment or table)",
            t->get("kind"));
}

BidiffGenerator parse_product(const Reader &rd, const toml::table &root, Scenario &s)
{
    const toml::node *node = root.get("product");
    if (s.product == "pointwise") {
        return BidiffGenerator::pointwise(s.space);
    }
    if (s.product == "wick") {
        if (s.space.chart != Chart::complex) {
            rd.fail("the wick product needs chart = \"complex\"", node);
        }
        return BidiffGenerator::wick(s.space.n);
    }
    if (s.product == "weyl-moyal") {
        if (s.space.chart != Chart::phase_space) {
            rd.fail("the weyl-moyal product needs chart = \"phase-space\"", node);
        }
        return BidiffGenerator::weyl_moyal(s.space.n);
    }
    if (s.product == "custom") {
        const toml::node *g = root.get("generator");
        if (g == nullptr || !g->is_table()) {
            rd.fail("product = \"custom\" needs a [generator] table", node);
        }
        rd.allow_keys(*g->as_table(), {"terms"}, "[generator]");
        const toml::node *terms = g->as_table()->get("terms");
        if (terms == nullptr || !terms->is_array()) {
            rd.fail("[generator] needs 'terms', an array of { left, right, coeff }", g);
        }
        std::vector<BidiffTerm> out;
        for (const auto &el : *terms->as_array()) {
            const toml::table *t = el.as_table();
            if (t == nullptr) {
                rd.fail("generator terms must be tables { left, right, coeff }", &el);
            }
            rd.allow_keys(*t, {"left", "right", "coeff"}, "generator term");
            const auto slot = [&](const std::string &key) {
                const std::string name = rd.string(*t, key);
                Monomial m;
                try {
                    m = parse_monomial(name, s.space);
                } catch (const ParseError &e) {
                    rd.fail("bad variable '" + name + "': " + e.what(), t->get(key));
                }
                if (total_degree(m) != 1) {
                    rd.fail("'" + name + "' is not a single variable", t->get(key));
                }
                return static_cast<int>(std::find(m.begin(), m.end(), 1) - m.begin());
            };
            Scalar c;
            try {
                c = parse_scalar(rd.string(*t, "coeff"));
            } catch (const ParseError &e) {
                rd.fail(std::string("bad coefficient: ") + e.what(), t->get("coeff"));
            }
            out.push_back(BidiffTerm{slot("left"), slot("right"), c});
        }
        try {
            return BidiffGenerator::custom(s.space, std::move(out), std::min(s.order, 3));
        } catch (const ValidationError &e) {
            rd.fail(e.what(), g);
        }
    }
    rd.fail("unknown product '" + s.product + "' (expected wick, weyl-moyal, pointwise or custom)", node);
}

CheckOptions parse_options(const Reader &rd, const std::string &check, const toml::table &t, const Scenario &s)
{
    static const std::map<std::string, std::set<std::string>> allowed{
        {"gram", {}},
        {"psd", {"expect", "witness_value"}},
        {"soundness", {"samples"}},
        {"kernel", {"expect_dim", "expect_classical_dim"}},
        {"gns", {}},
        {"classical-limit", {}},
        {"theorem", {}},
        {"no-go", {"expect_order"}},
        {"deform", {"cap", "expect_c"}},
        {"assoc", {"samples", "max_degree"}},
        {"hermitian", {"samples", "max_degree"}},
        {"schrodinger-op", {"expect"}},
        {"schrodinger-member", {"members", "non_members"}},
        {"schrodinger-props", {"samples", "max_degree"}},
    };
    rd.allow_keys(t, allowed.at(check), "[" + check + "]");
    CheckOptions o;
    if (check == "psd") {
        if (t.get("expect") != nullptr) {
            o.expect = rd.string(t, "expect");
            if (*o.expect != "psd" && *o.expect != "indefinite") {
                rd.fail("[psd] expect must be \"psd\" or \"indefinite\"", t.get("expect"));
            }
        }
        if (t.get("witness_value") != nullptr) {
            o.witness_value = rd.string(t, "witness_value");
        }
    }
    if (check == "schrodinger-op" && t.get("expect") != nullptr) {
        const toml::table *e = t.get("expect")->as_table();
        if (e == nullptr) {
            rd.fail("[schrodinger-op] expect must map observables to operator strings", t.get("expect"));
        }
        for (const auto &[k, v] : *e) {
            const std::string key(k.str());
            if (std::find(s.observable_text.begin(), s.observable_text.end(), key) == s.observable_text.end()) {
                rd.fail("'" + key + "' is not one of the scenario observables", &v);
            }
            const auto val = v.value<std::string>();
            if (!val) {
                rd.fail("expected operators must be strings", &v);
            }
            o.operators[key] = *val;
        }
    }
    if (const auto v = rd.integer(t, "samples")) {
        o.samples = static_cast<std::size_t>(rd.bounded(t, "samples", 1, 1000000, {}));
    }
    if (rd.integer(t, "max_degree")) {
        o.max_degree = static_cast<int>(rd.bounded(t, "max_degree", 0, max_scenario_degree, {}));
    }
    if (rd.integer(t, "expect_dim")) {
        o.expect_dim = static_cast<std::size_t>(rd.bounded(t, "expect_dim", 0, 100000, {}));
    }
    if (rd.integer(t, "expect_classical_dim")) {
        o.expect_classical_dim = static_cast<std::size_t>(rd.bounded(t, "expect_classical_dim", 0, 100000, {}));
    }
    if (rd.integer(t, "expect_order")) {
        o.expect_order = static_cast<int>(rd.bounded(t, "expect_order", 0, max_scenario_order, {}));
    }
    if (const toml::node *n = t.get("cap")) {
        o.cap = rd.rational(*n, "cap");
        if (sgn(*o.cap) < 0) {
            rd.fail("[deform] cap must be non-negative", n);
        }
    }
    if (const toml::node *n = t.get("expect_c")) {
        o.expect_c = rd.rational(*n, "expect_c");
    }
    if (check == "schrodinger-member") {
        o.members = rd.strings(t, "members");
        o.non_members = rd.strings(t, "non_members");
        for (const auto &m : o.members) {
            (void)rd.poly(m, s.space, s.order, t.get("members"));
        }
        for (const auto &m : o.non_members) {
            (void)rd.poly(m, s.space, s.order, t.get("non_members"));
        }
    }
    return o;
}

} // namespace

Scenario parse_scenario(std::string_view text, const std::string &source)
{
    const Reader rd(source);
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error &e) {
        throw ParseError(std::string(e.description()), e.source().begin.line, source);
    }

    std::set<std::string> top_keys{"name",   "chart",  "n",           "product",   "degree",   "order",
                                   "seed",   "checks", "observables", "functional", "generator"};
    for (const auto &c : known_checks()) {
        top_keys.insert(c);
    }
    rd.allow_keys(root, top_keys, "scenario");

    Scenario s;
    s.source = source;
    s.name = rd.string(root, "name");
    const std::string chart = rd.string(root, "chart");
    Chart ch{};
    try {
        ch = chart_from_name(chart);
    } catch (const ValidationError &e) {
        rd.fail(e.what(), root.get("chart"));
    }
    s.space = Space{ch, static_cast<int>(rd.bounded(root, "n", 1, max_scenario_n, 1))};
    s.degree = static_cast<int>(rd.bounded(root, "degree", 0, max_scenario_degree, {}));
    s.order = static_cast<int>(rd.bounded(root, "order", 0, max_scenario_order, {}));
    s.seed = static_cast<std::uint64_t>(rd.bounded(root, "seed", 0, std::numeric_limits<std::int64_t>::max(), 0));

    const toml::node *checks_node = root.get("checks");
    s.checks = rd.strings(root, "checks");
    if (s.checks.empty()) {
        rd.fail("'checks' must list at least one check", checks_node != nullptr ? checks_node : &root);
    }
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        if (!is_known_check(s.checks[i])) {
            rd.fail("unknown check '" + s.checks[i] + "'", (*checks_node->as_array()).get(i));
        }
    }

    s.observable_text = rd.strings(root, "observables");
    for (const auto &o : s.observable_text) {
        s.observables.push_back(rd.poly(o, s.space, s.order, root.get("observables")));
    }

    const bool want_product =
        std::any_of(s.checks.begin(), s.checks.end(), [](const std::string &c) { return needs_product(c); });
    const bool want_functional =
        std::any_of(s.checks.begin(), s.checks.end(), [](const std::string &c) { return needs_functional(c); });
    if (root.get("product") != nullptr) {
        s.product = rd.string(root, "product");
        s.generator = parse_product(rd, root, s);
    } else if (want_product) {
        rd.fail("missing required key 'product' (needed by the listed checks)", checks_node);
    }
    if (const toml::node *f = root.get("functional")) {
        s.functional = parse_functional(rd, *f, s);
    } else if (want_functional) {
        rd.fail("missing required key 'functional' (needed by the listed checks)", checks_node);
    }

    const bool schrodinger = std::any_of(s.checks.begin(), s.checks.end(), [](const std::string &c) {
        return c.rfind("schrodinger-", 0) == 0;
    });
    if (schrodinger && s.space.chart != Chart::phase_space) {
        rd.fail("schrodinger checks need chart = \"phase-space\"", checks_node);
    }

    for (const auto &c : known_checks()) {
        const toml::node *n = root.get(c);
        if (n == nullptr) {
            continue;
        }
        if (!n->is_table()) {
            rd.fail("'" + c + "' must be a table of check options", n);
        }
        if (std::find(s.checks.begin(), s.checks.end(), c) == s.checks.end()) {
            rd.fail("options given for '" + c + "' but it is not listed in checks", n);
        }
        s.options[c] = parse_options(rd, c, *n->as_table(), s);
    }
    if (std::find(s.checks.begin(), s.checks.end(), "schrodinger-member") != s.checks.end()) {
        const CheckOptions &o = s.options_for("schrodinger-member");
        if (o.members.empty() && o.non_members.empty()) {
            rd.fail("schrodinger-member needs [schrodinger-member] members and/or non_members", checks_node);
        }
    }
    return s;
}

Scenario load_scenario(const fs::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

namespace {

Json gns_checks_json(const GnsChecks &c)
{
    return Json{{"state_identity", c.state_identity},
                {"star_compatible", c.star_compatible},
                {"representation", c.representation},
                {"kernels_nested", c.kernels_nested},
                {"failures", c.failures}};
}

class Runner {
public:
    explicit Runner(const Scenario &s) : s_(s), note_(truncation_note(s.degree, s.order)) {}

    Json run(const std::string &check)
    {
        Json r{{"check", check}};
        try {
            Json detail = dispatch(check);
            for (auto &[k, v] : detail.items()) {
                r[k] = v;
            }
        } catch (const Error &e) {
            r["pass"] = false;
            r["claim"] = check + " could not be evaluated " + note_;
            r["error"] = e.what();
        }
        return r;
    }

private:
    const Functional &functional() const { return *s_.functional; }
    const BidiffGenerator &generator() const { return *s_.generator; }
    std::string subject() const { return functional().name() + " under " + generator().name(); }

    const GramForm &gram()
    {
        if (!gram_) {
            gram_ = gram_matrix(functional(), generator(), s_.degree, s_.order);
        }
        return *gram_;
    }
    const PsdVerdict &verdict()
    {
        if (!verdict_) {
            verdict_ = psd_decide(gram().entries);
        }
        return *verdict_;
    }
    std::vector<std::string> labels() { return labels_of(gram().space, gram().basis); }
    const GnsResult &gns()
    {
        if (!gns_) {
            gns_ = gns_build(functional(), generator(), s_.degree, s_.order, s_.observables);
        }
        return *gns_;
    }

    Json dispatch(const std::string &c)
    {
        if (c == "gram") {
            return check_gram();
        }
        if (c == "psd") {
            return check_psd();
        }
        if (c == "soundness") {
            return check_soundness();
        }
        if (c == "kernel") {
            return check_kernel();
        }
        if (c == "gns") {
            return check_gns();
        }
        if (c == "classical-limit") {
            return check_classical_limit();
        }
        if (c == "theorem") {
            return check_theorem();
        }
        if (c == "no-go") {
            return check_no_go();
        }
        if (c == "deform") {
            return check_deform();
        }
        if (c == "assoc" || c == "hermitian") {
            return check_product_law(c);
        }
        if (c == "schrodinger-op") {
            return check_schrodinger_op();
        }
        if (c == "schrodinger-member") {
            return check_schrodinger_member();
        }
        if (c == "schrodinger-props") {
            return check_schrodinger_props();
        }
        throw ValidationError("unknown check '" + c + "'");
    }

    Json check_gram()
    {
        const GramForm &g = gram();
        // gram_matrix throws NotHermitian, so reaching here means it is.
        return Json{{"claim", "Gram form of " + subject() + " is Hermitian " + note_},
                    {"pass", is_hermitian(g.entries)},
                    {"gram", to_json(g)}};
    }

    Json check_psd()
    {
        const PsdVerdict &v = verdict();
        const std::string expect = s_.options_for("psd").expect.value_or("psd");
        Json r{{"claim", "Gram form of " + subject() + " is " +
                             (expect == "psd" ? std::string("positive semidefinite") : std::string("indefinite")) +
                             " " + note_},
               {"expected", expect},
               {"verdict", to_json(v, labels())}};
        bool pass = (expect == "psd") == v.psd;
        if (v.psd) {
            const bool cert = check_certificate(gram().entries, v);
            r["certificate_verified"] = cert;
            pass = pass && cert;
        } else {
            const ScalarSeries value = quadratic_form(gram().entries, *v.witness);
            const bool ok = value == *v.witness_value && sign(value) < 0;
            r["witness_combination"] = combination(gram().space, gram().basis, *v.witness);
            r["witness_verified"] = ok;
            pass = pass && ok;
            if (const auto &want = s_.options_for("psd").witness_value) {
                const bool match = value == parse_series(*want, s_.order);
                r["witness_value_matches"] = match;
                pass = pass && match;
            }
        }
        r["pass"] = pass;
        return r;
    }

    Json check_soundness()
    {
        const PsdVerdict &v = verdict();
        if (!v.psd) {
            const ScalarSeries value = quadratic_form(gram().entries, *v.witness);
            return Json{{"claim", "indefinite verdict for " + subject() + " is backed by its witness " + note_},
                        {"pass", value == *v.witness_value && sign(value) < 0},
                        {"witness_value", to_json(value)}};
        }
        const std::size_t count = s_.options_for("soundness").samples.value_or(10000);
        const SoundnessReport rep = psd_soundness(gram().entries, count, s_.seed);
        const auto cs = cauchy_schwarz_violation(gram().entries);
        Json r{{"claim", "no random vector gives a lex-negative value of v*Gv and Cauchy-Schwarz holds entrywise "
                         "for " +
                             subject() + " " + note_},
               {"pass", rep.violations == 0 && !cs},
               {"oracle", to_json(rep)},
               {"cauchy_schwarz", !cs}};
        if (cs) {
            r["cauchy_schwarz_violation"] = {cs->first, cs->second};
        }
        return r;
    }

    Json check_kernel()
    {
        const KernelBasis k = kernel_extract(gram().entries, verdict());
        const GelfandIdeal ideal = gelfand_ideal_basis(functional(), generator(), s_.degree, s_.order);

        // Order-0 reduction of the quantum kernel against the classical one
        // (pointwise product, order-0 functional).
        const GramForm classical = gram_matrix(functional(), BidiffGenerator::pointwise(s_.space), s_.degree, 0);
        const ScalarMatrix g0 = constant_part(classical.entries);
        const std::size_t classical_dim = scalar_kernel(g0).vectors.size();
        ScalarMatrix reduced(k.vectors.size(), gram().basis.size(), Scalar());
        bool inside = true;
        for (std::size_t i = 0; i < k.vectors.size(); ++i) {
            const ScalarVector v0 = constant_part(k.vectors[i]);
            for (std::size_t j = 0; j < v0.size(); ++j) {
                reduced(i, j) = v0[j];
            }
            inside = inside && is_zero(mat_vec(g0, v0));
        }
        const std::size_t reduced_dim = scalar_rank(reduced);

        Json ideal_polys = Json::array();
        for (const auto &f : ideal.basis) {
            ideal_polys.push_back(to_string(f));
        }
        Json left{{"pass", ideal.left_ideal.pass}, {"samples", ideal.left_ideal.samples}};
        if (!ideal.left_ideal.pass) {
            left["element"] = to_string(*ideal.left_ideal.element);
            left["multiplier"] = to_string(*ideal.left_ideal.multiplier);
            left["value"] = to_json(*ideal.left_ideal.value);
        }
        bool pass = ideal.left_ideal.pass && inside;
        const CheckOptions &o = s_.options_for("kernel");
        if (o.expect_dim) {
            pass = pass && *o.expect_dim == k.vectors.size();
        }
        if (o.expect_classical_dim) {
            pass = pass && *o.expect_classical_dim == classical_dim;
        }
        std::vector<std::string> quotient;
        for (std::size_t i : k.complement) {
            quotient.push_back(labels()[i]);
        }
        return Json{{"claim", "Gel'fand ideal of " + subject() + " is a left ideal with an order-0 reduction "
                                                                  "inside the classical kernel " +
                                  note_},
                    {"pass", pass},
                    {"ideal_basis", ideal_polys},
                    {"quotient_basis", quotient},
                    {"kernel", to_json(k, labels())},
                    {"left_ideal", left},
                    {"quantum_kernel_dim", k.vectors.size()},
                    {"quantum_kernel_order0_dim", reduced_dim},
                    {"classical_kernel_dim", classical_dim},
                    {"order0_reduction_inside_classical", inside},
                    {"proper_subspace", reduced_dim < classical_dim}};
    }

    Json check_gns()
    {
        const GnsResult &g = gns();
        const RepLevel &lvl = g.rep.levels.at(static_cast<std::size_t>(s_.degree));
        Json norms = Json::object();
        for (std::size_t i = 0; i < lvl.labels.size(); ++i) {
            norms[lvl.labels[i]] = to_json(lvl.gram(i, i));
        }
        return Json{{"claim", "GNS representation of " + subject() +
                                  " satisfies the state identity, *-compatibility and the representation "
                                  "property " +
                                  note_},
                    {"pass", g.checks.pass()},
                    {"checks", gns_checks_json(g.checks)},
                    {"inner_products", norms},
                    {"representation", to_json(g.rep)}};
    }

    Json check_classical_limit()
    {
        const GnsResult &g = gns();
        const ClassicalLimitResult c = classical_limit(g.rep);
        return Json{{"claim", "classical limit of the GNS representation of " + subject() +
                                  " respects composition, identities and inner products " + note_},
                    {"pass", c.functor_laws && c.inner_products && c.failures.empty()},
                    {"classical_limit", to_json(c, g.rep)}};
    }

    Json check_theorem()
    {
        const TheoremReport t = verify_main_theorem(functional(), generator(), s_.degree, s_.order, s_.observables);
        return Json{{"claim", "classical limit of the GNS representation of " + subject() +
                                  " is unitarily equivalent to the classical GNS representation " + note_},
                    {"pass", t.pass()},
                    {"theorem", to_json(t)}};
    }

    Json check_no_go()
    {
        const NoGoReport r = no_go_certificate(s_.order);
        bool pass = r.contradiction_order.has_value();
        const auto expect = s_.options_for("no-go").expect_order;
        if (expect) {
            pass = pass && *r.contradiction_order == *expect;
        }
        return Json{{"claim", "no rank-1 *-representation of [z, zb] = 2l with pi(z), pi(zb) vanishing at order 0 " +
                                  note_},
                    {"pass", pass},
                    {"certificate", to_json(r)}};
    }

    Json check_deform()
    {
        const CheckOptions &o = s_.options_for("deform");
        const DeformResult d =
            deform_functional(functional(), generator(), s_.degree, s_.order, o.cap.value_or(Rational(4)));
        Json r{{"claim", "smallest c making " + functional().name() + " o exp(c l L) positive under " +
                             generator().name() + " " + note_},
               {"deform", to_json(d)}};
        bool pass = d.success;
        if (d.success) {
            const auto labels = labels_of(d.gram.space, d.gram.basis);
            const KernelBasis k = kernel_extract(d.gram.entries, d.verdict);
            Json dirs = Json::array();
            for (const auto &v : k.vectors) {
                dirs.push_back(combination(d.gram.space, d.gram.basis, v));
            }
            r["kernel_directions"] = dirs;
        }
        if (o.expect_c) {
            r["expected_c"] = rational_to_string(*o.expect_c);
            pass = pass && d.c == *o.expect_c;
        }
        r["pass"] = pass;
        return r;
    }

    Json check_product_law(const std::string &c)
    {
        const CheckOptions &o = s_.options_for(c);
        const std::size_t count = o.samples.value_or(500);
        const int deg = o.max_degree.value_or(3);
        PropertyResult res;
        std::string what;
        if (c == "assoc") {
            res = assoc_check(generator(), sample_triples(s_.space, count, deg, s_.order, s_.seed));
            what = "(f * g) * h == f * (g * h)";
        } else {
            res = hermitian_check(generator(), sample_pairs(s_.space, count, deg, s_.order, s_.seed));
            what = "(f * g)* == g* * f*";
        }
        return Json{{"claim", what + " for " + generator().name() + " on " + std::to_string(count) +
                                  " samples of degree <= " + std::to_string(deg) + ", " + note_},
                    {"pass", res.pass},
                    {"seed", s_.seed},
                    {"result", to_json(res)}};
    }

    Json check_schrodinger_op()
    {
        const CheckOptions &o = s_.options_for("schrodinger-op");
        Json ops = Json::object();
        bool pass = true;
        for (std::size_t i = 0; i < s_.observables.size(); ++i) {
            const std::string got = schrodinger_operator(s_.observables[i]).to_string();
            ops[s_.observable_text[i]] = got;
            const auto it = o.operators.find(s_.observable_text[i]);
            if (it != o.operators.end() && it->second != got) {
                pass = false;
            }
        }
        return Json{{"claim", "Schrodinger operators of the observables (matching the expected forms) " + note_},
                    {"pass", pass},
                    {"operators", ops}};
    }

    Json check_schrodinger_member()
    {
        const CheckOptions &o = s_.options_for("schrodinger-member");
        Json rows = Json::array();
        bool pass = true;
        const auto test = [&](const std::string &text, bool expected) {
            const bool got = weyl_gelfand_member(parse_series_poly(text, s_.space, s_.order));
            rows.push_back(Json{{"element", text}, {"member", got}, {"expected", expected}});
            pass = pass && got == expected;
        };
        for (const auto &m : o.members) {
            test(m, true);
        }
        for (const auto &m : o.non_members) {
            test(m, false);
        }
        return Json{{"claim", "membership in the Gel'fand ideal of delta_0 under weyl-moyal via i*Nf == 0 " + note_},
                    {"pass", pass},
                    {"elements", rows}};
    }

    Json check_schrodinger_props()
    {
        const CheckOptions &o = s_.options_for("schrodinger-props");
        const std::size_t count = o.samples.value_or(200);
        const int deg = o.max_degree.value_or(4);
        const auto checks = schrodinger_properties(s_.space.n, count, deg, s_.order, s_.seed);
        Json rows = Json::array();
        bool pass = true;
        for (const auto &c : checks) {
            Json row{{"identity", c.name}, {"pass", c.pass}, {"samples", c.samples}};
            if (!c.pass) {
                row["failing_index"] = *c.failing_index;
                row["f"] = to_string(c.witness[0]);
                row["g"] = to_string(c.witness[1]);
                row["lhs"] = *c.lhs;
                row["rhs"] = *c.rhs;
            }
            rows.push_back(row);
            pass = pass && c.pass;
        }
        return Json{{"claim", "rho(f * g) == rho(f) rho(g) and rho(f*) == rho(f)^dagger on " + std::to_string(count) +
                                  " random pairs of degree <= " + std::to_string(deg) + ", " + note_},
                    {"pass", pass},
                    {"seed", s_.seed},
                    {"identities", rows}};
    }

    const Scenario &s_;
    std::string note_;
    std::optional<GramForm> gram_;
    std::optional<PsdVerdict> verdict_;
    std::optional<GnsResult> gns_;
};

Json echo(const Scenario &s)
{
    Json j{{"name", s.name}, {"chart", chart_name(s.space.chart)}, {"n", s.space.n}};
    if (s.generator) {
        j["product"] = s.generator->name();
    }
    if (s.functional) {
        j["functional"] = s.functional->name();
    }
    j["degree"] = s.degree;
    j["order"] = s.order;
    j["seed"] = s.seed;
    j["observables"] = s.observable_text;
    j["checks"] = s.checks;
    return j;
}

void strip_seeds(Json &j)
{
    if (j.is_object()) {
        j.erase("seed");
        for (auto &[k, v] : j.items()) {
            strip_seeds(v);
        }
    } else if (j.is_array()) {
        for (auto &v : j) {
            strip_seeds(v);
        }
    }
}

void write_file(const fs::path &p, const std::string &text)
{
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + p.string());
    }
    out << text;
}

} // namespace

ScenarioReport run_scenario(const Scenario &s)
{
    ScenarioReport rep;
    Runner runner(s);
    Json results = Json::array();
    rep.timings = Json::array();
    bool pass = true;
    for (const auto &c : s.checks) {
        const auto t0 = std::chrono::steady_clock::now();
        Json r = runner.run(c);
        const auto us =
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
        pass = pass && r.value("pass", false);
        results.push_back(std::move(r));
        rep.timings.push_back(Json{{"check", c}, {"microseconds", us}});
    }
    rep.pass = pass;
    rep.body = Json{{"scenario", echo(s)}, {"results", results}, {"pass", pass}};
    return rep;
}

Json full_report(const ScenarioReport &r)
{
    Json j = r.body;
    j["timings"] = r.timings;
    return j;
}

Json comparable(const Json &report)
{
    Json j = report;
    if (j.is_object()) {
        j.erase("timings");
    }
    strip_seeds(j);
    return j;
}

bool VerifySummary::pass() const
{
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const VerifyOutcome &o) { return o.checks_pass && o.matches; });
}

std::string VerifySummary::summary() const
{
    if (outcomes.empty()) {
        return "no scenarios found";
    }
    if (pass()) {
        return "all scenarios pass (" + std::to_string(outcomes.size()) + ")";
    }
    std::string failed;
    std::size_t n = 0;
    for (const auto &o : outcomes) {
        if (!(o.checks_pass && o.matches)) {
            failed += (n++ == 0 ? "" : ", ") + o.scenario;
        }
    }
    return std::to_string(n) + " of " + std::to_string(outcomes.size()) + " scenarios failed: " + failed;
}

VerifySummary verify_all(const fs::path &dir, std::optional<std::uint64_t> seed_override, bool bless,
                         const std::optional<fs::path> &out_dir)
{
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".toml") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());

    VerifySummary sum;
    sum.outcomes.resize(files.size());
    const auto count = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const fs::path &file = files[static_cast<std::size_t>(i)];
        VerifyOutcome &o = sum.outcomes[static_cast<std::size_t>(i)];
        o.scenario = file.stem().string();
        try {
            Scenario s = load_scenario(file);
            if (seed_override) {
                s.seed = *seed_override;
            }
            const ScenarioReport rep = run_scenario(s);
            o.checks_pass = rep.pass;
            o.body = rep.body;
            if (!rep.pass) {
                o.mismatch = "checks failed";
            }
            const fs::path golden = dir / "golden" / (o.scenario + ".json");
            if (bless) {
                write_file(golden, comparable(rep.body).dump(2) + "\n");
                o.matches = true;
            } else if (!fs::exists(golden)) {
                o.mismatch = "missing golden file " + golden.string();
            } else {
                std::ifstream in(golden);
                Json want;
                try {
                    want = Json::parse(in);
                } catch (const Json::parse_error &e) {
                    throw ValidationError("golden file " + golden.string() + " is not valid JSON: " + e.what());
                }
                const Json have = comparable(rep.body);
                want = comparable(want);
                if (have == want) {
                    o.matches = true;
                } else {
                    const Json patch = Json::diff(want, have);
                    const std::string where = patch.empty() ? "/" : patch[0].value("path", "/");
                    o.mismatch = "report differs from " + golden.string() + " at " + (where.empty() ? "/" : where);
                }
            }
            if (out_dir) {
                write_file(*out_dir / (o.scenario + ".json"), rep.body.dump(2) + "\n");
            }
        } catch (const std::exception &e) {
            o.checks_pass = false;
            o.matches = false;
            o.mismatch = e.what();
        }
    }
    return sum;
}

} // namespace starlab
