#pragma once

#include <string>

#include "genformal/poly.hpp"
#include "genformal/spinor.hpp"

namespace genformal {

// Expression grammar shared by all literals:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom (('^' | wedge) atom)*
//   atom   := rational | 'i' | variable | covector | vector | '(' expr ')'
// Rationals are single tokens ("3", "-2/7" via unary minus on "2/7"); there
// is no division operator. Covector tokens are d + variable ("dz0", "dzb1",
// "dx2"), vector tokens are d/d + variable ("d/dz0"). '^' means integer
// power after a scalar and wedge otherwise; the wedge sign (U+2227) always
// means wedge. '*' multiplies scalars, scales forms, and wedges forms.
// Canonical printing uses '^' only for powers and U+2227 only for wedges,
// so to_string output round-trips.
Poly parse_poly(const ChartPtr& chart, const std::string& text);
PolyForm parse_polyform(const ChartPtr& chart, const std::string& text);
GenVecP parse_genvec(const ChartPtr& chart, const std::string& text);

}  // namespace genformal
