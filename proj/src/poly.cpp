#include "genformal/poly.hpp"

#include <sstream>

namespace genformal {

std::string to_string(const GQ& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  if (x.re != 0) out << x.re.get_str();
  if (x.im != 0) {
    if (x.re != 0) out << (x.im > 0 ? "+" : "-");
    else if (x.im < 0) out << "-";
    mpq_class a = abs(x.im);
    if (a != 1) out << a.get_str() << "*";
    out << "i";
  }
  return out.str();
}

void Point::validate() const {
  require(chart != nullptr, ErrorKind::BadArgument, "point without chart");
  require((int)values.size() == chart->nvars(), ErrorKind::NonconformableShapes,
          "point has wrong number of coordinates");
  if (chart->is_complex()) {
    int d = chart->complex_dim();
    for (int k = 0; k < d; ++k)
      require(values[k + d] == values[k].conj(), ErrorKind::InconsistentConjugates,
              "value of " + chart->var_name(k + d) + " is not the conjugate of " +
                  chart->var_name(k));
  } else {
    for (int k = 0; k < chart->nvars(); ++k)
      require(values[k].is_real(), ErrorKind::InconsistentConjugates,
              "real coordinate " + chart->var_name(k) + " given a non-real value");
  }
}

Poly Poly::var(const ChartPtr& chart, int k, const GQ& coeff) {
  require(k >= 0 && k < chart->nvars(), ErrorKind::UnknownVariable,
          "variable index " + std::to_string(k));
  Poly p(chart);
  if (!coeff.is_zero()) {
    Mono m(chart->nvars(), 0);
    m[k] = 1;
    p.terms_[m] = coeff;
  }
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Mono& m = terms_.begin()->first;
  for (auto e : m)
    if (e) return false;
  return true;
}

GQ Poly::constant_term() const {
  Mono zero(chart_ ? chart_->nvars() : 0, 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? GQ(0) : it->second;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (auto e : m) t += e;
    if (t > d) d = t;
  }
  return d;
}

void Poly::add_term(const Mono& m, const GQ& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(chart_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

// A default-constructed Poly is the zero of every chart: accumulators start
// from it, so arithmetic adopts the other operand's chart in that case.
Poly Poly::operator+(const Poly& o) const {
  if (!chart_) return o;
  if (!o.chart_) return *this;
  check_same_chart(chart_, o.chart_);
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (!chart_) return -o;
  if (!o.chart_) return *this;
  check_same_chart(chart_, o.chart_);
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (!chart_) return *this;
  if (!o.chart_) return o;
  check_same_chart(chart_, o.chart_);
  Poly r(chart_);
  int n = chart_->nvars();
  Mono prod(n);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      for (int k = 0; k < n; ++k) prod[k] = (std::uint8_t)(ma[k] + mb[k]);
      r.add_term(prod, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const GQ& c) const {
  Poly r(chart_);
  if (c.is_zero()) return r;
  for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly acc(chart_, GQ(1));
  for (unsigned k = 0; k < e; ++k) acc *= *this;
  return acc;
}

Poly Poly::conj() const {
  if (!chart_) return *this;
  Poly r(chart_);
  int n = chart_->nvars();
  Mono cm(n);
  for (const auto& [m, c] : terms_) {
    for (int k = 0; k < n; ++k) cm[chart_->conj_var(k)] = m[k];
    r.terms_[cm] = c.conj();
  }
  return r;
}

Poly Poly::wirtinger(int k) const {
  if (!chart_) return *this;
  require(k >= 0 && k < chart_->nvars(), ErrorKind::UnknownVariable,
          "variable index " + std::to_string(k));
  Poly r(chart_);
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Mono d = m;
    d[k] -= 1;
    r.add_term(d, c * GQ((long)m[k]));
  }
  return r;
}

GQ Poly::eval(const Point& p) const {
  if (!chart_) return GQ(0);
  check_same_chart(chart_, p.chart);
  GQ sum(0);
  for (const auto& [m, c] : terms_) {
    GQ t = c;
    for (int k = 0; k < (int)m.size(); ++k)
      if (m[k]) t *= p.values[k].pow(m[k]);
    sum += t;
  }
  return sum;
}

bool Poly::is_holomorphic() const {
  if (!chart_->is_complex()) return false;
  int d = chart_->complex_dim();
  for (const auto& [m, c] : terms_)
    for (int k = d; k < 2 * d; ++k)
      if (m[k]) return false;
  return true;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    GQ coeff = c;
    std::string sign;
    if (!first) {
      // Pull a leading minus out of purely negative coefficients so the
      // canonical form reads naturally; mixed-sign complex coefficients stay
      // parenthesized with an explicit +.
      if ((coeff.im == 0 && coeff.re < 0) || (coeff.re == 0 && coeff.im < 0)) {
        sign = " - ";
        coeff = -coeff;
      } else {
        sign = " + ";
      }
    } else if (coeff.im == 0 && coeff.re < 0) {
      sign = "-";
      coeff = -coeff;
    } else if (coeff.re == 0 && coeff.im < 0) {
      sign = "-";
      coeff = -coeff;
    }
    std::string vars;
    for (int k = 0; k < (int)m.size(); ++k) {
      if (!m[k]) continue;
      if (!vars.empty()) vars += "*";
      vars += p.chart()->var_name(k);
      if (m[k] > 1) vars += "^" + std::to_string((int)m[k]);
    }
    std::string cs;
    bool mixed = coeff.re != 0 && coeff.im != 0;
    if (vars.empty()) {
      cs = to_string(coeff);
    } else if (mixed) {
      cs = "(" + to_string(coeff) + ")*";
    } else if (coeff == GQ(1)) {
      cs = "";
    } else {
      cs = to_string(coeff) + "*";
    }
    out << sign << cs << vars;
    first = false;
  }
  return out.str();
}

}  // namespace genformal
