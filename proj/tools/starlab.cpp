#include "starlab/functional.hpp"
#include "starlab/gns.hpp"
#include "starlab/literal.hpp"
#include "starlab/psd.hpp"
#include "starlab/report.hpp"
#include "starlab/scenario.hpp"
#include "starlab/schrodinger.hpp"
#include "starlab/star.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace starlab;

namespace {

struct Common {
    std::string product = "wick";
    std::string chart;
    int n = 1;
    int order = 2;
    int degree = 1;
    std::uint64_t seed = 0;
    std::string functional = "delta-origin";
    std::string json_out;
    std::vector<std::string> observables;
    std::string cap = "4";
};

Space space_of(const Common &c)
{
    if (!c.chart.empty()) {
        return Space{chart_from_name(c.chart), c.n};
    }
    if (c.product == "weyl-moyal") {
        return Space{Chart::phase_space, c.n};
    }
    return Space{Chart::complex, c.n};
}

BidiffGenerator generator_of(const Common &c)
{
    const Space s = space_of(c);
    if (c.product == "pointwise") {
        return BidiffGenerator::pointwise(s);
    }
    const BidiffGenerator g = BidiffGenerator::by_name(c.product, c.n);
    if (!(g.space() == s)) {
        throw ValidationError("product " + c.product + " does not live on " + to_string(s));
    }
    return g;
}

Rational rational_of(const std::string &text)
{
    const Scalar s = parse_scalar(text);
    if (!s.is_real()) {
        throw ValidationError("'" + text + "' is not real");
    }
    return s.re();
}

// "delta-origin", "smoothed-delta:1/4", "gaussian-moment"
Functional functional_of(const Common &c)
{
    const Space s = space_of(c);
    const auto colon = c.functional.find(':');
    const std::string kind = c.functional.substr(0, colon);
    if (kind == "delta-origin") {
        return Functional::delta_origin(s);
    }
    if (kind == "smoothed-delta") {
        if (colon == std::string::npos) {
            throw ValidationError("smoothed-delta needs a parameter, e.g. smoothed-delta:1/4");
        }
        return Functional::smoothed_delta(s, rational_of(c.functional.substr(colon + 1)));
    }
    if (kind == "gaussian-moment") {
        if (s.chart != Chart::phase_space) {
            throw ValidationError("gaussian-moment needs the phase-space chart");
        }
        return Functional::gaussian_moment(s.n);
    }
    throw ValidationError("unknown functional '" + c.functional +
                          "' (delta-origin, smoothed-delta:<c>, gaussian-moment; tables need a scenario file)");
}

std::vector<SeriesPoly> observables_of(const Common &c)
{
    std::vector<SeriesPoly> out;
    for (const auto &o : c.observables) {
        out.push_back(parse_series_poly(o, space_of(c), c.order));
    }
    return out;
}

void emit(const Json &j, const Common &c)
{
    const std::string text = j.dump(2) + "\n";
    if (c.json_out.empty() || c.json_out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(c.json_out, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + c.json_out);
    }
    out << text;
}

void add_truncation(CLI::App *app, Common &c, bool with_degree)
{
    app->add_option("--order", c.order, "truncation order N in l")->check(CLI::Range(0, max_scenario_order));
    if (with_degree) {
        app->add_option("--degree", c.degree, "polynomial degree d")->check(CLI::Range(0, max_scenario_degree));
    }
    app->add_option("--json", c.json_out, "write the JSON report to this file ('-' for stdout)");
}

void add_algebra(CLI::App *app, Common &c)
{
    app->add_option("--product", c.product, "wick | weyl-moyal | pointwise");
    app->add_option("--chart", c.chart, "complex | phase-space (default follows the product)");
    app->add_option("--n", c.n, "number of degrees of freedom")->check(CLI::Range(1, max_scenario_n));
}

void add_functional(CLI::App *app, Common &c)
{
    app->add_option("--functional", c.functional, "delta-origin | smoothed-delta:<c> | gaussian-moment");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact star products, positivity and GNS representations over C[[l]]"};
    app.require_subcommand(1);
    Common c;
    int exit_code = 0;

    // star-expand
    std::string f_text;
    std::string g_text;
    auto *expand = app.add_subcommand("star-expand", "expand f * g exactly");
    expand->add_option("f", f_text, "left factor, e.g. \"z^2 + l*zb\"")->required();
    expand->add_option("g", g_text, "right factor")->required();
    add_algebra(expand, c);
    add_truncation(expand, c, false);
    expand->callback([&] {
        const BidiffGenerator gen = generator_of(c);
        const SeriesPoly f = parse_series_poly(f_text, gen.space(), c.order);
        const SeriesPoly g = parse_series_poly(g_text, gen.space(), c.order);
        emit(Json{{"product", gen.name()},
                  {"f", to_string(f)},
                  {"g", to_string(g)},
                  {"f*g", to_string(star_multiply(f, g, gen))},
                  {"claim", "exact up to order " + std::to_string(c.order)}},
             c);
    });

    auto *gram = app.add_subcommand("gram", "Gram form omega(e_i* * e_j) on monomials of degree <= d");
    auto *psd = app.add_subcommand("psd-check", "decide positivity of the Gram form up to order N");
    auto *kernel = app.add_subcommand("kernel", "Gel'fand ideal basis of the Gram form");
    auto *gns = app.add_subcommand("gns", "GNS representation with operator matrices");
    auto *climit = app.add_subcommand("classical-limit", "classical limit of the GNS representation");
    auto *theorem = app.add_subcommand("verify-theorem", "compare the classical limit with the classical GNS");
    auto *deform = app.add_subcommand("deform", "smallest positive deformation parameter");
    for (auto *sub : {gram, psd, kernel, gns, climit, theorem, deform}) {
        add_algebra(sub, c);
        add_functional(sub, c);
        add_truncation(sub, c, true);
    }
    for (auto *sub : {gns, climit, theorem}) {
        sub->add_option("--observable", c.observables, "observable f (repeatable)");
    }
    deform->add_option("--cap", c.cap, "upper bound for c");

    gram->callback([&] {
        emit(to_json(gram_matrix(functional_of(c), generator_of(c), c.degree, c.order)), c);
    });
    psd->callback([&] {
        const GramForm g = gram_matrix(functional_of(c), generator_of(c), c.degree, c.order);
        const PsdVerdict v = psd_decide(g.entries);
        Json j = to_json(v, labels_of(g.space, g.basis));
        if (v.witness) {
            j["witness_combination"] = combination(g.space, g.basis, *v.witness);
        }
        j["claim"] = g.functional + " under " + g.generator + ": " + v.status() + " " +
                     truncation_note(c.degree, c.order);
        emit(j, c);
    });
    kernel->callback([&] {
        const GramForm g = gram_matrix(functional_of(c), generator_of(c), c.degree, c.order);
        const KernelBasis k = kernel_extract(g.entries);
        const GelfandIdeal ideal = gelfand_ideal_basis(functional_of(c), generator_of(c), c.degree, c.order);
        Json polys = Json::array();
        for (const auto &f : ideal.basis) {
            polys.push_back(to_string(f));
        }
        emit(Json{{"ideal_basis", polys},
                  {"left_ideal_check", ideal.left_ideal.pass},
                  {"kernel", to_json(k, labels_of(g.space, g.basis))},
                  {"claim", "Gel'fand ideal " + truncation_note(c.degree, c.order)}},
             c);
    });
    gns->callback([&] {
        const GnsResult r = gns_build(functional_of(c), generator_of(c), c.degree, c.order, observables_of(c));
        emit(Json{{"representation", to_json(r.rep)},
                  {"checks_pass", r.checks.pass()},
                  {"failures", r.checks.failures},
                  {"claim", "GNS representation " + truncation_note(c.degree, c.order)}},
             c);
        exit_code = r.checks.pass() ? 0 : 1;
    });
    climit->callback([&] {
        const GnsResult r = gns_build(functional_of(c), generator_of(c), c.degree, c.order, observables_of(c));
        const ClassicalLimitResult cl = classical_limit(r.rep);
        Json j = to_json(cl, r.rep);
        j["claim"] = "classical limit " + truncation_note(c.degree, c.order);
        emit(j, c);
        exit_code = cl.functor_laws && cl.inner_products ? 0 : 1;
    });
    theorem->callback([&] {
        const TheoremReport t = verify_main_theorem(functional_of(c), generator_of(c), c.degree, c.order,
                                                    observables_of(c));
        Json j = to_json(t);
        j["claim"] = "classical limit of GNS == classical GNS " + truncation_note(c.degree, c.order);
        emit(j, c);
        exit_code = t.pass() ? 0 : 1;
    });
    deform->callback([&] {
        const DeformResult d =
            deform_functional(functional_of(c), generator_of(c), c.degree, c.order, rational_of(c.cap));
        Json j = to_json(d);
        j["claim"] = "minimal deformation " + truncation_note(c.degree, c.order);
        emit(j, c);
        exit_code = d.success ? 0 : 1;
    });

    auto *nogo = app.add_subcommand("no-go", "rank-1 obstruction for [z, zb] = 2l");
    add_truncation(nogo, c, false);
    nogo->callback([&] {
        const NoGoReport r = no_go_certificate(c.order);
        emit(to_json(r), c);
        exit_code = r.contradiction_order ? 0 : 1;
    });

    // schrodinger op|apply|member
    auto *schr = app.add_subcommand("schrodinger", "Schrodinger representation of Weyl-Moyal symbols");
    schr->require_subcommand(1);
    std::string psi_text;
    auto *sop = schr->add_subcommand("op", "differential operator of a symbol");
    auto *sapply = schr->add_subcommand("apply", "apply rho(f) to a wave function psi(q)");
    auto *smember = schr->add_subcommand("member", "membership in the Gel'fand ideal of delta_0");
    for (auto *sub : {sop, sapply, smember}) {
        sub->add_option("f", f_text, "phase-space symbol, e.g. \"q*p\"")->required();
        sub->add_option("--n", c.n, "number of degrees of freedom")->check(CLI::Range(1, max_scenario_n));
        add_truncation(sub, c, false);
    }
    sapply->add_option("psi", psi_text, "wave function in the q variables")->required();
    const auto phase = [&] { return Space{Chart::phase_space, c.n}; };
    sop->callback([&] {
        const SeriesPoly f = parse_series_poly(f_text, phase(), c.order);
        emit(Json{{"symbol", to_string(f)}, {"operator", schrodinger_operator(f).to_string()}}, c);
    });
    sapply->callback([&] {
        const SeriesPoly f = parse_series_poly(f_text, phase(), c.order);
        const SeriesPoly psi = parse_series_poly(psi_text, phase(), c.order);
        emit(Json{{"symbol", to_string(f)}, {"psi", to_string(psi)}, {"result", to_string(schrodinger_apply(f, psi))}},
             c);
    });
    smember->callback([&] {
        const SeriesPoly f = parse_series_poly(f_text, phase(), c.order);
        emit(Json{{"element", to_string(f)}, {"member", weyl_gelfand_member(f)}}, c);
    });

    // scenario run <file>
    auto *scen = app.add_subcommand("scenario", "scenario files");
    scen->require_subcommand(1);
    std::string scenario_file;
    std::optional<std::uint64_t> seed_override;
    auto *srun = scen->add_subcommand("run", "run one scenario file");
    srun->add_option("file", scenario_file, "scenario TOML file")->required()->check(CLI::ExistingFile);
    srun->add_option("--seed", seed_override, "override the scenario seed");
    srun->add_option("--json", c.json_out, "write the JSON report to this file ('-' for stdout)");
    srun->callback([&] {
        Scenario s = load_scenario(scenario_file);
        if (seed_override) {
            s.seed = *seed_override;
        }
        const ScenarioReport r = run_scenario(s);
        emit(full_report(r), c);
        exit_code = r.pass ? 0 : 1;
    });

    std::string dir = "scenarios";
    std::string out_dir;
    bool bless = false;
    auto *verify = app.add_subcommand("verify-all", "run every scenario and compare against its golden report");
    verify->add_option("dir", dir, "scenario directory")->check(CLI::ExistingDirectory);
    verify->add_option("--seed", seed_override, "override every scenario seed");
    verify->add_option("--out", out_dir, "also write each report body here");
    verify->add_flag("--bless", bless, "rewrite the golden reports");
    verify->callback([&] {
        const VerifySummary sum = verify_all(dir, seed_override, bless,
                                             out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir));
        for (const auto &o : sum.outcomes) {
            std::cout << (o.checks_pass && o.matches ? "ok    " : "FAIL  ") << o.scenario;
            if (!o.mismatch.empty()) {
                std::cout << ": " << o.mismatch;
            }
            std::cout << "\n";
        }
        std::cout << sum.summary() << "\n";
        exit_code = sum.pass() ? 0 : 1;
    });

    auto *list = app.add_subcommand("list", "built-in products, functionals and checks");
    list->callback([&] {
        std::cout << "products:    wick (complex), weyl-moyal (phase-space), pointwise, custom (scenario only)\n"
                  << "functionals: delta-origin, smoothed-delta:<c>, gaussian-moment (phase-space), table "
                     "(scenario only)\n"
                  << "charts:      complex, phase-space, unknowns\n"
                  << "checks:     ";
        for (const auto &k : known_checks()) {
            std::cout << " " << k;
        }
        std::cout << "\n";
    });

    std::string describe_name;
    auto *describe = app.add_subcommand("describe", "expansion formula of a built-in product");
    describe->add_option("product", describe_name, "wick | weyl-moyal | pointwise-complex | pointwise-phase-space")
        ->required();
    describe->add_option("--n", c.n)->check(CLI::Range(1, max_scenario_n));
    describe->callback([&] { std::cout << BidiffGenerator::by_name(describe_name, c.n).describe(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
