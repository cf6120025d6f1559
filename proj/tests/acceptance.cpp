// Acceptance run: one PASS/FAIL line per criterion. Expected values are
// written out by hand here, never read back from the library.

#include "starlab/functional.hpp"
#include "starlab/gns.hpp"
#include "starlab/literal.hpp"
#include "starlab/psd.hpp"
#include "starlab/random.hpp"
#include "starlab/scenario.hpp"
#include "starlab/schrodinger.hpp"
#include "starlab/star.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace starlab;

namespace {

const Space C1{Chart::complex, 1};
const Space P1{Chart::phase_space, 1};

SeriesPoly poly(const std::string &s, const Space &sp, int order)
{
    return parse_series_poly(s, sp, order);
}

ScalarSeries series(const std::string &s, int order)
{
    return parse_series(s, order);
}

// Collects the first reason a criterion failed.
struct Verdict {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string &msg)
    {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

Verdict wick_commutation()
{
    Verdict v;
    const auto wick = BidiffGenerator::wick(1);
    for (int n = 1; n <= 8; ++n) {
        const SeriesPoly z = poly("z", C1, n);
        const SeriesPoly zb = poly("zb", C1, n);
        const SeriesPoly comm = star_multiply(z, zb, wick) - star_multiply(zb, z, wick);
        v.require(comm == poly("2*l", C1, n), "z*zb - zb*z != 2l at N=" + std::to_string(n) + ": " + to_string(comm));
    }
    return v;
}

Verdict no_go()
{
    Verdict v;
    for (int n = 1; n <= 6; ++n) {
        const NoGoReport r = no_go_certificate(n);
        v.require(r.contradiction_order == 1, "contradiction order at N=" + std::to_string(n) + " is not 1");
    }
    return v;
}

Verdict fock()
{
    Verdict v;
    const int order = 2;
    const auto wick = BidiffGenerator::wick(1);
    const Functional delta = Functional::delta_origin(C1);
    const GelfandIdeal ideal = gelfand_ideal_basis(delta, wick, 2, order);
    std::vector<std::string> got;
    for (const auto &f : ideal.basis) {
        got.push_back(to_string(f));
    }
    v.require(got == std::vector<std::string>{"z", "z^2", "z*zb"}, "ideal basis differs");
    v.require(ideal.left_ideal.pass, "ideal is not a left ideal");

    const GnsResult g = gns_build(delta, wick, 2, order, {poly("z", C1, order), poly("zb", C1, order)});
    v.require(g.checks.pass(), "GNS checks failed");
    const RepLevel &l2 = g.rep.levels[2];
    v.require(l2.labels == std::vector<std::string>{"1", "zb", "zb^2"}, "quotient basis differs");
    v.require(l2.gram(1, 1) == series("2*l", order), "<zb, zb> != 2l");
    v.require(l2.gram(2, 2) == series("8*l^2", order), "<zb^2, zb^2> != 8l^2");
    v.require(l2.gram(0, 0) == series("1", order), "<1, 1> != 1");
    // pi(z) psi_zb at level 1 -> level 2 coordinates: 2l psi_1.
    const SeriesMatrix &pz = g.rep.op(0, 1);
    v.require(pz(0, 1) == series("2*l", order) && pz(1, 1).is_zero() && pz(2, 1).is_zero(),
              "pi(z) psi_zb != 2l psi_1");
    return v;
}

Verdict main_theorem(std::size_t &tables)
{
    Verdict v;
    const auto check = [&](const Functional &w, const BidiffGenerator &gen, int d, int order,
                           const std::vector<SeriesPoly> &obs, const std::string &tag) {
        const TheoremReport t = verify_main_theorem(w, gen, d, order, obs);
        for (const auto &c : t.checks) {
            v.require(c.pass && c.residuals.empty(), tag + ": residual check '" + c.name + "' failed");
        }
    };
    check(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, 2, {poly("z", C1, 2), poly("zb", C1, 2)},
          "fock");

    // Faithful regime: positive definite order-0 Gram, random Hermitian tails.
    const std::uint64_t seed = 4242;
    tables = 0;
    for (std::uint64_t i = 0; i < 120; ++i) {
        Rng rng = Rng::stream(seed, i);
        const int order = 1 + static_cast<int>(i % 3);
        if (i % 2 == 0) {
            const Functional w = random_table_functional(rng, C1, 3, order);
            check(w, BidiffGenerator::wick(1), 2, order, {poly("z", C1, order), poly("zb", C1, order)},
                  "wick table " + std::to_string(i));
        } else {
            const Functional w = random_table_functional(rng, P1, 2, order);
            check(w, BidiffGenerator::weyl_moyal(1), 1, order, {poly("q", P1, order), poly("p", P1, order)},
                  "weyl table " + std::to_string(i));
        }
        ++tables;
    }
    return v;
}

Verdict weyl_indefinite()
{
    Verdict v;
    const GramForm g = gram_matrix(Functional::delta_origin(P1), BidiffGenerator::weyl_moyal(1), 1, 1);
    const PsdVerdict r = psd_decide(g.entries);
    v.require(!r.psd, "Weyl delta_0 Gram form reported psd");
    if (!r.psd) {
        v.require(*r.witness_value == series("-l", 1), "witness value is " + to_string(*r.witness_value));
        v.require(quadratic_form(g.entries, *r.witness) == series("-l", 1), "witness does not evaluate to -l");
    }
    return v;
}

Verdict deformation()
{
    Verdict v;
    const DeformResult w = deform_functional(Functional::delta_origin(P1), BidiffGenerator::weyl_moyal(1), 1, 1);
    v.require(w.success && w.c == Rational(1, 4), "Weyl minimal c is " + rational_to_string(w.c));
    if (w.success) {
        const KernelBasis k = kernel_extract(w.gram.entries, w.verdict);
        // basis (1, q, p): q + ip.
        const SeriesVector expect{series("0", 1), series("1", 1), series("i", 1)};
        v.require(k.vectors.size() == 1 && k.vectors[0] == expect, "kernel direction is not q + ip");
    }
    const DeformResult z = deform_functional(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, 2);
    v.require(z.success && z.c == Rational(0), "Wick minimal c is " + rational_to_string(z.c));
    return v;
}

Verdict schrodinger()
{
    Verdict v;
    DiffOperator p_expected(1, 6);
    p_expected.add_term({1}, poly("-i*l", P1, 6));
    v.require(schrodinger_operator(poly("p", P1, 6)) == p_expected, "rho(p) != -il d/dq");
    v.require(schrodinger_operator(poly("q", P1, 6)) == DiffOperator::multiplication(poly("q", P1, 6)),
              "rho(q) != q");
    const auto checks = schrodinger_properties(1, 200, 4, 6, 77);
    for (const auto &c : checks) {
        v.require(c.pass && c.samples == 200, "identity " + c.name + " failed");
    }
    const auto two = schrodinger_properties(2, 24, 3, 3, 78);
    for (const auto &c : two) {
        v.require(c.pass, "n=2 identity " + c.name + " failed");
    }
    return v;
}

Verdict membership()
{
    Verdict v;
    v.require(weyl_gelfand_member(poly("p", P1, 2)), "p not a member");
    v.require(!weyl_gelfand_member(poly("q*p", P1, 2)), "qp is a member");
    v.require(weyl_gelfand_member(poly("q*p - l/(2i)", P1, 2)), "qp - l/(2i) not a member");

    const auto wick = BidiffGenerator::wick(1);
    const Functional delta = Functional::delta_origin(C1);
    const GramForm q = gram_matrix(delta, wick, 2, 2);
    const KernelBasis k = kernel_extract(q.entries);
    ScalarMatrix reduced(k.vectors.size(), q.basis.size(), Scalar());
    for (std::size_t i = 0; i < k.vectors.size(); ++i) {
        for (std::size_t j = 0; j < q.basis.size(); ++j) {
            reduced(i, j) = k.vectors[i][j][0];
        }
    }
    const GramForm c = gram_matrix(delta, BidiffGenerator::pointwise(C1), 2, 0);
    const std::size_t quantum = scalar_rank(reduced);
    const std::size_t classical = scalar_kernel(constant_part(c.entries)).vectors.size();
    v.require(quantum == 3 && classical == 5,
              "kernel dims " + std::to_string(quantum) + " vs " + std::to_string(classical));
    return v;
}

Verdict property_suites(const std::string &scenario_dir)
{
    Verdict v;
    for (const auto &[gen, space] : {std::pair{BidiffGenerator::wick(1), C1},
                                     std::pair{BidiffGenerator::weyl_moyal(1), P1}}) {
        for (int order : {2, 4}) {
            const auto a = assoc_check(gen, sample_triples(space, 500, 3, order, 1000 + order));
            const auto h = hermitian_check(gen, sample_pairs(space, 500, 3, order, 2000 + order));
            v.require(a.pass && a.samples == 500, gen.name() + " associativity failed");
            v.require(h.pass && h.samples == 500, gen.name() + " involution failed");
        }
    }

    // Every psd Gram form of the golden scenarios.
    std::size_t forms = 0;
    for (const auto &name : {"wick_delta", "classical_delta", "weyl_smoothed", "faithful_table"}) {
        const Scenario s = load_scenario(scenario_dir + "/" + name + ".toml");
        const GramForm g = gram_matrix(*s.functional, *s.generator, s.degree, s.order);
        const PsdVerdict r = psd_decide(g.entries);
        v.require(r.psd, std::string(name) + " Gram form not psd");
        const SoundnessReport rep = psd_soundness(g.entries, 10000, 31337);
        v.require(rep.vectors == 10000 && rep.violations == 0, std::string(name) + ": oracle found a negative value");
        v.require(!cauchy_schwarz_violation(g.entries), std::string(name) + ": Cauchy-Schwarz violated");
        ++forms;
    }
    v.require(forms == 4, "missing golden forms");

    // c(H1 (+) H2) == c(H1) (+) c(H2), block by block.
    const int order = 2;
    const std::vector<SeriesPoly> obs{poly("z", C1, order), poly("zb", C1, order)};
    const auto wick = BidiffGenerator::wick(1);
    Rng rng(555);
    const GnsResult a = gns_build(Functional::delta_origin(C1), wick, 2, order, obs);
    const GnsResult b = gns_build(random_table_functional(rng, C1, 3, order), wick, 2, order, obs);
    const RepPresentation lhs = classical_limit(orthogonal_sum({a.rep, b.rep})).classical;
    const RepPresentation rhs =
        orthogonal_sum({classical_limit(a.rep).classical, classical_limit(b.rep).classical});
    v.require(same_matrices(lhs, rhs), "classical limit does not preserve the orthogonal sum");
    return v;
}

Verdict determinism(const std::string &scenario_dir)
{
    Verdict v;
    const auto bodies = [&] {
        const VerifySummary s = verify_all(scenario_dir, 123456789);
        std::vector<std::string> out;
        for (const auto &o : s.outcomes) {
            out.push_back(o.body.dump(2));
        }
        return std::pair{s, out};
    };
    const auto [s1, b1] = bodies();
    const auto [s2, b2] = bodies();
    v.require(!b1.empty() && b1 == b2, "report bodies differ between runs");
    v.require(s1.pass() && s2.pass(), "verify-all did not pass: " + s1.summary());
    return v;
}

} // namespace

int main(int argc, char **argv)
{
    const std::string scenario_dir = argc > 1 ? argv[1] : STARLAB_SCENARIO_DIR;
    std::size_t tables = 0;
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"wick commutation z*zb - zb*z = 2l for N = 1..8", wick_commutation},
        {"no-go certificate: contradiction at order 1", no_go},
        {"Bargmann-Fock ideal, quotient, inner products 2l and 8l^2, pi(z) psi_zb = 2l psi_1", fock},
        {"main theorem residuals zero on Fock and random tables",
         [&] {
             Verdict v = main_theorem(tables);
             v.require(tables >= 100, "fewer than 100 random tables");
             return v;
         }},
        {"Weyl delta_0 at d=1 is indefinite with witness value -l", weyl_indefinite},
        {"minimal deformation c = 1/4 (kernel q + ip) for Weyl, c = 0 for Wick", deformation},
        {"Schrodinger operators, homomorphism and adjoint on 200 pairs", schrodinger},
        {"Weyl ideal membership and kernel dims 3 < 5 for Wick", membership},
        {"associativity, involution, psd soundness, Cauchy-Schwarz, classical limit of sums",
         [&] { return property_suites(scenario_dir); }},
        {"verify-all is byte-identical across runs", [&] { return determinism(scenario_dir); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception &e) {
            v.ok = false;
            v.why = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line.precision(3);
        line << (v.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " [" << std::fixed
             << secs << "s]";
        if (!v.ok) {
            line << " -- " << v.why;
            ++failed;
        }
        std::cout << line.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
