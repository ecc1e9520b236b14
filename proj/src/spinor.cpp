#include "genformal/spinor.hpp"

#include <sstream>

namespace genformal {

MatQ materialize_spinor_op(const ChartPtr& chart, const SpinRep<GQ>& op) {
  int n = 1 << chart->dim();
  MatQ m(n, n);
  for (FormMask col = 0; col < (FormMask)n; ++col) {
    FormQ img = op.apply(FormQ::basis(chart, col, GQ(1)));
    for (const auto& [mask, c] : img.terms()) m(mask, col) = c;
  }
  return m;
}

MatQ spinor_eigenspace(const MatQ& op, const GQ& lambda) {
  return echelon_columns(kernel_basis(op - MatQ::identity(op.rows()) * lambda));
}

namespace {

// Shared term printer: sign separator handling identical to polynomial
// printing so every literal round-trips through the parser.
struct TermPrinter {
  std::ostringstream out;
  bool first = true;

  void constant_term(GQ coeff, const std::string& symbols) {
    std::string sign;
    bool negative =
        (coeff.im == 0 && coeff.re < 0) || (coeff.re == 0 && coeff.im < 0);
    if (!first) {
      sign = negative ? " - " : " + ";
      if (negative) coeff = -coeff;
    } else if (negative) {
      sign = "-";
      coeff = -coeff;
    }
    std::string cs;
    bool mixed = coeff.re != 0 && coeff.im != 0;
    if (symbols.empty()) cs = to_string(coeff);
    else if (mixed) cs = "(" + to_string(coeff) + ")*";
    else if (coeff == GQ(1)) cs = "";
    else cs = to_string(coeff) + "*";
    out << sign << cs << symbols;
    first = false;
  }

  void poly_term(const Poly& coeff, const std::string& symbols) {
    if (coeff.is_constant()) {
      constant_term(coeff.constant_term(), symbols);
      return;
    }
    out << (first ? "" : " + ") << "(" << to_string(coeff) << ")"
        << (symbols.empty() ? "" : "*" + symbols);
    first = false;
  }

  std::string str() const { return first ? "0" : out.str(); }
};

std::string mask_symbols(const ChartPtr& chart, FormMask mask) {
  std::string s;
  FormMask m = mask;
  while (m) {
    int k = std::countr_zero(m);
    m &= m - 1;
    if (!s.empty()) s += "∧";
    s += chart->covector_name(k);
  }
  return s;
}

}  // namespace

std::string to_string(const FormQ& f) {
  TermPrinter p;
  for (const auto& [mask, c] : f.terms())
    p.constant_term(c, mask_symbols(f.chart(), mask));
  return p.str();
}

std::string to_string(const PolyForm& f) {
  TermPrinter p;
  for (const auto& [mask, c] : f.terms())
    p.poly_term(c, mask_symbols(f.chart(), mask));
  return p.str();
}

std::string to_string(const GenVecQ& v) {
  TermPrinter p;
  for (int k = 0; k < v.m(); ++k)
    if (!v.vec(k).is_zero()) p.constant_term(v.vec(k), v.chart->vector_name(k));
  for (int k = 0; k < v.m(); ++k)
    if (!v.cov(k).is_zero()) p.constant_term(v.cov(k), v.chart->covector_name(k));
  return p.str();
}

std::string to_string(const GenVecP& v) {
  TermPrinter p;
  for (int k = 0; k < v.m(); ++k)
    if (!v.vec(k).is_zero()) p.poly_term(v.vec(k), v.chart->vector_name(k));
  for (int k = 0; k < v.m(); ++k)
    if (!v.cov(k).is_zero()) p.poly_term(v.cov(k), v.chart->covector_name(k));
  return p.str();
}

}  // namespace genformal
