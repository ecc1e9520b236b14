#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genformal/chart.hpp"
#include "genformal/scalar.hpp"

namespace genformal {

// Exponent vector over the chart's coordinates, lexicographic order.
using Mono = std::vector<std::uint8_t>;

// A point of the chart: one exact value per coordinate. On complex charts the
// zb-values must be the conjugates of the z-values; on real charts all values
// must be real. validate() enforces this once, after which eval is plain
// substitution.
struct Point {
  ChartPtr chart;
  std::vector<GQ> values;  // size nvars

  Point() = default;
  Point(ChartPtr c, std::vector<GQ> v) : chart(std::move(c)), values(std::move(v)) {
    validate();
  }
  void validate() const;
};

// Sparse multivariate polynomial over Q(i) in the chart's coordinates.
// Conjugate coordinates are formally independent; conj() swaps them and
// conjugates coefficients, and Wirtinger derivatives differentiate each
// symbol independently. Terms are kept in a canonical ordered map with no
// zero coefficients, so equality is structural equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}
  Poly(ChartPtr chart, const GQ& c) : chart_(std::move(chart)) {
    if (!c.is_zero()) terms_[Mono(chart_->nvars(), 0)] = c;
  }
  static Poly var(const ChartPtr& chart, int k, const GQ& coeff = GQ(1));

  const ChartPtr& chart() const { return chart_; }
  const std::map<Mono, GQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The constant term (the whole value if is_constant()).
  GQ constant_term() const;
  int total_degree() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GQ& c) const;
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned e) const;
  Poly conj() const;
  // Formal partial derivative in coordinate k (a Wirtinger derivative on
  // complex charts).
  Poly wirtinger(int k) const;
  GQ eval(const Point& p) const;
  // True if no antiholomorphic coordinate appears (complex charts).
  bool is_holomorphic() const;

  void add_term(const Mono& m, const GQ& c);

 private:
  ChartPtr chart_;
  std::map<Mono, GQ> terms_;
};

inline Poly operator*(const GQ& c, const Poly& p) { return p * c; }

std::string to_string(const Poly& p);

}  // namespace genformal
