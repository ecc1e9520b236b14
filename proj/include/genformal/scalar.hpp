#pragma once

#include <gmpxx.h>

#include <string>

#include "genformal/errors.hpp"

namespace genformal {

// Exact element of Q(i). All arithmetic is arbitrary precision; there is no
// floating point anywhere in the library.
struct GQ {
  mpq_class re, im;

  GQ() : re(0), im(0) {}
  GQ(long r) : re(r), im(0) {}
  GQ(const mpq_class& r) : re(r), im(0) {}
  GQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GQ i() { return GQ(mpq_class(0), mpq_class(1)); }
  static GQ of(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return GQ(q);
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GQ conj() const { return GQ(re, -im); }
  mpq_class norm() const { return re * re + im * im; }

  GQ operator-() const { return GQ(-re, -im); }
  GQ operator+(const GQ& o) const { return GQ(re + o.re, im + o.im); }
  GQ operator-(const GQ& o) const { return GQ(re - o.re, im - o.im); }
  GQ operator*(const GQ& o) const {
    return GQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GQ inv() const {
    require(!is_zero(), ErrorKind::BadArgument, "division by zero");
    mpq_class n = norm();
    return GQ(re / n, -im / n);
  }
  GQ operator/(const GQ& o) const { return *this * o.inv(); }

  GQ& operator+=(const GQ& o) { re += o.re; im += o.im; return *this; }
  GQ& operator-=(const GQ& o) { re -= o.re; im -= o.im; return *this; }
  GQ& operator*=(const GQ& o) { *this = *this * o; return *this; }

  bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GQ& o) const { return !(*this == o); }
  // Total order used only for canonical container ordering.
  bool operator<(const GQ& o) const {
    int c = cmp(re, o.re);
    if (c != 0) return c < 0;
    return cmp(im, o.im) < 0;
  }

  GQ pow(unsigned long e) const {
    GQ acc(1), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
};

inline GQ operator*(long a, const GQ& b) { return GQ(a) * b; }

// Canonical text form, reproducible bit for bit: "0", "2", "-1/3", "i",
// "-2/3*i", "1/2+i", "1-3/4*i". parse_scalar accepts exactly what this emits
// (and any other expression in the polynomial grammar that is constant).
std::string to_string(const GQ& x);

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace genformal
