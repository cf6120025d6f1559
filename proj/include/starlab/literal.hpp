#pragma once

#include "starlab/poly.hpp"
#include "starlab/series.hpp"

#include <string>
#include <string_view>

namespace starlab {

// Text syntax shared by configs, the CLI and JSON reports.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | atom ['^' integer]
//   atom    := number | name | '(' expr ')'
//   number  := digits ['/' digits] ['i']      "3/2" is one token, "3/2i" = (3/2)*i
//   name    := 'l' | 'i' | variable            l is the formal parameter
//
// Variables are z, zb (complex chart), q, p (phase space), a, b (unknowns),
// with an optional 1-based index (z1, zb2); the bare form needs n == 1.
// Division is only allowed by a series without variables whose constant
// term is non-zero. Terms above the requested order are dropped.
//
// The printers emit the canonical form: ascending powers of l, monomials
// in the global order, e.g. "2*z*zb^2 - 1/3", "1 - 3/2*l + (2+1i)*l^2".
// parse(print(x)) == x for every value.

SeriesPoly parse_series_poly(std::string_view text, const Space &space, int order);
// A polynomial literal; 'l' is rejected.
Poly parse_poly(std::string_view text, const Space &space);
// A series literal without variables.
ScalarSeries parse_series(std::string_view text, int order);
Scalar parse_scalar(std::string_view text);
// A single monomial such as "z*zb^2" or "1".
Monomial parse_monomial(std::string_view text, const Space &space);

std::string to_string(const Poly &p);
std::string to_string(const SeriesPoly &f);
// "1", "z", "z*zb^2"
std::string monomial_to_string(const Space &space, const Monomial &m);

namespace detail {
// Appends one signed term "c*body" to out using the canonical sign rules.
void append_term(std::string &out, const Scalar &c, const std::string &body);
} // namespace detail

} // namespace starlab
