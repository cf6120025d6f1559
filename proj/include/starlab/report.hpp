#pragma once

#include "starlab/functional.hpp"
#include "starlab/gns.hpp"
#include "starlab/psd.hpp"
#include "starlab/star.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace starlab {

using Json = nlohmann::ordered_json;

// Everything is serialized through the exact literal printers; no floats.
Json to_json(const ScalarSeries &s);
Json to_json(const SeriesVector &v);
Json to_json(const SeriesMatrix &m);
Json to_json(const ScalarMatrix &m);
Json to_json(const ScalarVector &v);

// Labels are the monomials of the form's basis.
Json to_json(const GramForm &g);
Json to_json(const PsdVerdict &v, const std::vector<std::string> &labels);
Json to_json(const KernelBasis &k, const std::vector<std::string> &labels);
Json to_json(const RepPresentation &p);
Json to_json(const ClassicalLimitResult &c, const RepPresentation &p);
Json to_json(const TheoremReport &t);
Json to_json(const NoGoReport &r);
Json to_json(const PropertyResult &r);
Json to_json(const DeformResult &r);
Json to_json(const SoundnessReport &r);

std::vector<std::string> labels_of(const Space &space, const std::vector<Monomial> &basis);
// sum_i v_i * label_i as a polynomial series literal.
std::string combination(const Space &space, const std::vector<Monomial> &basis, const SeriesVector &v);

// "up to degree d and order N"
std::string truncation_note(int degree, int order);

} // namespace starlab
