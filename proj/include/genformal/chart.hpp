#pragma once

#include <memory>
#include <string>
#include <vector>

#include "genformal/errors.hpp"

namespace genformal {

// A chart fixes the coordinate substrate every object lives on: a list of m
// commuting coordinate symbols, the m basis covectors of V* in a fixed order,
// and the conjugation pairing between coordinates.
//
// Complex-paired chart on C^d (real dimension m = 2d): coordinates
//   z0..z{d-1}, zb0..zb{d-1}  (zbk is the conjugate of zk),
// basis covectors dz0..dz{d-1}, dzb0..dzb{d-1}, basis vectors d/dz*, d/dzb*.
// All matrices are written in this complexified basis; realness of an object
// is the statement that conjugation fixes it.
//
// Real chart on R^m: coordinates x0..x{m-1}, covectors dx0..dx{m-1}.
//
// Coordinate index k and basis covector index k always refer to the same
// symbol, so exterior derivatives pair var k with covector k directly.
class Chart {
 public:
  enum class Kind { Complex, Real };

  static std::shared_ptr<const Chart> complex_chart(int d) {
    require(d >= 1 && d <= 8, ErrorKind::BadArgument, "complex dim outside 1..8");
    return std::shared_ptr<const Chart>(new Chart(Kind::Complex, 2 * d));
  }
  static std::shared_ptr<const Chart> real_chart(int m) {
    require(m >= 1 && m <= 16, ErrorKind::BadArgument, "real dim outside 1..16");
    return std::shared_ptr<const Chart>(new Chart(Kind::Real, m));
  }

  Kind kind() const { return kind_; }
  bool is_complex() const { return kind_ == Kind::Complex; }
  // Real dimension m of V; V+V* has dimension 2m, the spinor space 2^m.
  int dim() const { return m_; }
  int complex_dim() const {
    require(is_complex(), ErrorKind::BadArgument, "not a complex chart");
    return m_ / 2;
  }
  int nvars() const { return m_; }

  // Conjugate coordinate index: zk <-> zbk on complex charts, identity on
  // real charts.
  int conj_var(int k) const {
    if (!is_complex()) return k;
    int d = m_ / 2;
    return k < d ? k + d : k - d;
  }

  std::string var_name(int k) const {
    require(k >= 0 && k < m_, ErrorKind::BadArgument, "variable index");
    if (!is_complex()) return "x" + std::to_string(k);
    int d = m_ / 2;
    return k < d ? "z" + std::to_string(k) : "zb" + std::to_string(k - d);
  }
  std::string covector_name(int k) const { return "d" + var_name(k); }
  std::string vector_name(int k) const { return "d/d" + var_name(k); }

  // -1 if the symbol is not a coordinate of this chart.
  int var_index(const std::string& name) const {
    for (int k = 0; k < m_; ++k)
      if (var_name(k) == name) return k;
    return -1;
  }

  bool same(const Chart& o) const { return kind_ == o.kind_ && m_ == o.m_; }

 private:
  Chart(Kind kind, int m) : kind_(kind), m_(m) {}
  Kind kind_;
  int m_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline void check_same_chart(const ChartPtr& a, const ChartPtr& b) {
  require(a && b && a->same(*b), ErrorKind::ChartMismatch,
          "objects live on different charts");
}

}  // namespace genformal
