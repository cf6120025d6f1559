#include "starlab/report.hpp"

#include "starlab/literal.hpp"

namespace starlab {

Json to_json(const ScalarSeries &s)
{
    return to_string(s);
}

Json to_json(const SeriesVector &v)
{
    return to_strings(v);
}

Json to_json(const SeriesMatrix &m)
{
    return to_strings(m);
}

Json to_json(const ScalarMatrix &m)
{
    return to_strings(m);
}

Json to_json(const ScalarVector &v)
{
    Json a = Json::array();
    for (const auto &s : v) {
        a.push_back(s.to_string());
    }
    return a;
}

std::vector<std::string> labels_of(const Space &space, const std::vector<Monomial> &basis)
{
    std::vector<std::string> out;
    for (const auto &m : basis) {
        out.push_back(monomial_to_string(space, m));
    }
    return out;
}

std::string combination(const Space &space, const std::vector<Monomial> &basis, const SeriesVector &v)
{
    const int order = v.empty() ? 0 : v[0].order();
    SeriesPoly f = zero_series_poly(order, space);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (int r = 0; r <= order; ++r) {
            if (!v[i][r].is_zero()) {
                f[r] += Poly::monomial(space, basis[i], v[i][r]);
            }
        }
    }
    return to_string(f);
}

std::string truncation_note(int degree, int order)
{
    return "up to degree " + std::to_string(degree) + " and order " + std::to_string(order);
}

Json to_json(const GramForm &g)
{
    return Json{{"basis", labels_of(g.space, g.basis)},
                {"entries", to_json(g.entries)},
                {"functional", g.functional},
                {"generator", g.generator},
                {"degree", g.degree},
                {"order", g.order}};
}

namespace {

Json index_labels(const std::vector<std::size_t> &idx, const std::vector<std::string> &labels)
{
    Json a = Json::array();
    for (std::size_t i : idx) {
        a.push_back(i < labels.size() ? labels[i] : std::to_string(i));
    }
    return a;
}

} // namespace

Json to_json(const PsdVerdict &v, const std::vector<std::string> &labels)
{
    Json j{{"status", v.status()}, {"order", v.order}};
    if (v.psd) {
        Json piv = Json::array();
        for (std::size_t p : v.pivots) {
            piv.push_back(Json{{"index", p < labels.size() ? labels[p] : std::to_string(p)},
                               {"value", to_json(v.diagonal[p])}});
        }
        j["pivots"] = piv;
        j["zero_directions"] = index_labels(v.zero_directions, labels);
    } else {
        j["witness"] = to_json(*v.witness);
        j["witness_value"] = to_json(*v.witness_value);
        j["failing_layer"] = *v.failing_layer;
    }
    return j;
}

Json to_json(const KernelBasis &k, const std::vector<std::string> &labels)
{
    Json vs = Json::array();
    for (const auto &v : k.vectors) {
        vs.push_back(to_json(v));
    }
    return Json{{"vectors", vs},
                {"pivots", index_labels(k.pivots, labels)},
                {"complement", index_labels(k.complement, labels)},
                {"dims_by_order", k.dims_by_order},
                {"stable_from_order", k.stable_from}};
}

Json to_json(const RepPresentation &p)
{
    Json levels = Json::array();
    for (const auto &l : p.levels) {
        levels.push_back(Json{{"labels", l.labels}, {"gram", to_json(l.gram)}});
    }
    Json ops = Json::array();
    for (std::size_t i = 0; i < p.observables.size(); ++i) {
        Json mats = Json::array();
        for (const auto &m : p.operators[i]) {
            mats.push_back(to_json(m));
        }
        ops.push_back(Json{{"observable", to_string(p.observables[i])},
                           {"degree", p.observable_degrees[i]},
                           {"matrices_by_source_level", mats}});
    }
    Json incs = Json::array();
    for (const auto &m : p.inclusions) {
        incs.push_back(to_json(m));
    }
    return Json{{"functional", p.functional},
                {"generator", p.generator},
                {"degree", p.degree},
                {"top_level", p.top},
                {"order", p.order},
                {"levels", levels},
                {"inclusions", incs},
                {"cyclic", to_json(p.cyclic)},
                {"operators", ops}};
}

Json to_json(const ClassicalLimitResult &c, const RepPresentation &p)
{
    Json h0 = Json::array();
    Json dims = Json::array();
    for (std::size_t l = 0; l < c.h0.size(); ++l) {
        Json vs = Json::array();
        for (const auto &v : c.h0[l]) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                detail::append_term(s, v[i], "psi[" + p.levels[l].labels[i] + "]");
            }
            vs.push_back(s.empty() ? "0" : s);
        }
        h0.push_back(vs);
        dims.push_back(c.classical.levels[l].labels.size());
    }
    return Json{{"h0_by_level", h0},
                {"classical_dims_by_level", dims},
                {"classical", to_json(c.classical)},
                {"functor_laws", c.functor_laws},
                {"inner_products_preserved", c.inner_products},
                {"failures", c.failures}};
}

Json to_json(const TheoremReport &t)
{
    Json checks = Json::array();
    for (const auto &c : t.checks) {
        checks.push_back(
            Json{{"name", c.name}, {"pass", c.pass}, {"evaluated", c.evaluated}, {"residuals", c.residuals}});
    }
    Json us = Json::array();
    for (const auto &u : t.intertwiner) {
        us.push_back(to_json(u));
    }
    return Json{{"checks", checks},
                {"intertwiner_by_level", us},
                {"classical_limit_dims", t.classical_limit_dims},
                {"classical_gns_dims", t.classical_gns_dims},
                {"pass", t.pass()}};
}

Json to_json(const NoGoReport &r)
{
    Json j{{"order", r.order}, {"commutator", r.lhs}, {"target", r.target}};
    j["contradiction_order"] = r.contradiction_order ? Json(*r.contradiction_order) : Json(nullptr);
    return j;
}

Json to_json(const PropertyResult &r)
{
    Json j{{"pass", r.pass}, {"samples", r.samples}};
    if (!r.pass) {
        Json w = Json::array();
        for (const auto &f : r.witness) {
            w.push_back(to_string(f));
        }
        j["failing_index"] = *r.failing_index;
        j["witness"] = w;
        j["lhs"] = to_string(*r.lhs);
        j["rhs"] = to_string(*r.rhs);
    }
    return j;
}

Json to_json(const DeformResult &r)
{
    const auto labels = labels_of(r.gram.space, r.gram.basis);
    Json j{{"success", r.success},
           {"c", rational_to_string(r.c)},
           {"cap", rational_to_string(r.cap)},
           {"evaluations", r.evaluations},
           {"gram", to_json(r.gram)},
           {"verdict", to_json(r.verdict, labels)}};
    if (r.functional) {
        j["functional"] = r.functional->name();
    }
    return j;
}

Json to_json(const SoundnessReport &r)
{
    Json j{{"seed", r.seed}, {"vectors", r.vectors}, {"violations", r.violations}};
    if (r.first_violation) {
        j["first_violation"] = *r.first_violation;
    }
    return j;
}

} // namespace starlab
