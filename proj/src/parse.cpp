#include "genformal/parse.hpp"

#include <cctype>
#include <optional>

namespace genformal {
namespace {

enum class Tok { Number, Imag, Var, Covector, Vector, Plus, Minus, Star, Caret, Wedge, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  mpq_class number;  // for Number
  int var = -1;      // chart variable index for Var / Covector / Vector
};

class Lexer {
 public:
  Lexer(ChartPtr chart, const std::string& text)
      : chart_(std::move(chart)), s_(text) {
    advance();
  }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void bad(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  void advance() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    tok_ = Token{};
    if (pos_ >= s_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = s_[pos_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      default: break;
    }
    if (s_.compare(pos_, 3, "∧") == 0) {
      tok_.kind = Tok::Wedge;
      pos_ += 3;
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      std::string num = digits();
      if (pos_ < s_.size() && s_[pos_] == '/' &&
          pos_ + 1 < s_.size() && std::isdigit((unsigned char)s_[pos_ + 1])) {
        ++pos_;
        std::string den = digits();
        if (den == "0") bad("zero denominator");
        num += "/" + den;
      }
      tok_.kind = Tok::Number;
      tok_.number = mpq_class(num);
      tok_.number.canonicalize();
      return;
    }
    if (std::isalpha((unsigned char)c)) {
      // vector token d/d<var>
      if (s_.compare(pos_, 3, "d/d") == 0) {
        pos_ += 3;
        tok_.kind = Tok::Vector;
        tok_.var = var_index(word());
        return;
      }
      std::string w = word();
      if (w == "i") {
        tok_.kind = Tok::Imag;
        return;
      }
      int k = chart_->var_index(w);
      if (k >= 0) {
        tok_.kind = Tok::Var;
        tok_.var = k;
        return;
      }
      if (w.size() > 1 && w[0] == 'd') {
        int kk = chart_->var_index(w.substr(1));
        if (kk >= 0) {
          tok_.kind = Tok::Covector;
          tok_.var = kk;
          return;
        }
      }
      fail(ErrorKind::UnknownVariable, "unknown symbol '" + w + "'");
    }
    bad(std::string("unexpected character '") + c + "'");
  }

  std::string digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  std::string word() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
    if (start == pos_) bad("expected a name");
    return s_.substr(start, pos_ - start);
  }
  int var_index(const std::string& w) {
    int k = chart_->var_index(w);
    if (k < 0) fail(ErrorKind::UnknownVariable, "unknown variable '" + w + "'");
    return k;
  }

  ChartPtr chart_;
  std::string s_;
  size_t pos_ = 0;
  Token tok_;
};

// A parsed value is either a polyform (scalars live in degree zero) or a
// generalized vector; which covector tokens produce depends on the entry
// point.
struct Value {
  PolyForm form;
  std::optional<GenVecP> gv;

  bool is_scalar() const {
    return !gv && (form.is_zero() || form.max_degree() == 0);
  }
  Poly scalar() const {
    Poly p(form.chart());
    auto it = form.terms().find(0);
    return it == form.terms().end() ? p : it->second;
  }
};

class Parser {
 public:
  Parser(const ChartPtr& chart, const std::string& text, bool genvec_mode)
      : chart_(chart), lex_(chart, text), genvec_(genvec_mode) {}

  Value parse() {
    Value v = expr();
    if (lex_.peek().kind != Tok::End)
      fail(ErrorKind::ParseError, "trailing input after expression");
    return v;
  }

 private:
  Value expr() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    Value v = term();
    if (neg) v = negate(v);
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.take().kind == Tok::Minus;
      Value w = term();
      v = add(v, minus ? negate(w) : w);
    }
    return v;
  }

  Value term() {
    Value v = factor();
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      v = multiply(v, factor());
    }
    return v;
  }

  Value factor() {
    Value v = atom();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Caret) {
        lex_.take();
        // integer power when the base is scalar and the exponent a literal
        if (v.is_scalar() && lex_.peek().kind == Tok::Number) {
          Token e = lex_.take();
          require(e.number.get_den() == 1, ErrorKind::ParseError,
                  "exponent must be an integer");
          unsigned long n = e.number.get_num().get_ui();
          Value r;
          r.form = PolyForm(chart_, v.scalar().pow((unsigned)n));
          v = r;
        } else {
          v = multiply(v, atom());
        }
      } else if (k == Tok::Wedge) {
        lex_.take();
        v = multiply(v, atom());
      } else {
        break;
      }
    }
    return v;
  }

  Value atom() {
    Token t = lex_.take();
    Value v;
    switch (t.kind) {
      case Tok::Minus:
        return negate(atom());
      case Tok::Number:
        v.form = PolyForm(chart_, Poly(chart_, GQ(t.number)));
        return v;
      case Tok::Imag:
        v.form = PolyForm(chart_, Poly(chart_, GQ::i()));
        return v;
      case Tok::Var:
        v.form = PolyForm(chart_, Poly::var(chart_, t.var, GQ(1)));
        return v;
      case Tok::Covector:
        if (genvec_) {
          v.gv = GenVecP::basis_covector(chart_, t.var, Poly(chart_, GQ(1)));
          v.form = PolyForm(chart_);
        } else {
          v.form = PolyForm::basis(chart_, FormMask(1) << t.var,
                                   Poly(chart_, GQ(1)));
        }
        return v;
      case Tok::Vector:
        require(genvec_, ErrorKind::ParseError,
                "vector token in a form expression");
        v.gv = GenVecP::basis_vector(chart_, t.var, Poly(chart_, GQ(1)));
        v.form = PolyForm(chart_);
        return v;
      case Tok::LParen: {
        Value inner = expr();
        require(lex_.take().kind == Tok::RParen, ErrorKind::ParseError,
                "expected ')'");
        return inner;
      }
      default:
        fail(ErrorKind::ParseError, "expected a value");
    }
  }

  Value negate(Value v) {
    v.form = -v.form;
    if (v.gv) v.gv = -*v.gv;
    return v;
  }

  Value add(Value a, const Value& b) {
    if (a.gv || b.gv) {
      require(a.is_scalar() || a.gv, ErrorKind::ParseError,
              "cannot add a form and a generalized vector");
      require(b.is_scalar() || b.gv, ErrorKind::ParseError,
              "cannot add a form and a generalized vector");
      require((!a.gv.has_value() ? a.scalar().is_zero() : true) &&
                  (!b.gv.has_value() ? b.scalar().is_zero() : true),
              ErrorKind::ParseError,
              "cannot add a scalar and a generalized vector");
      GenVecP s(chart_);
      if (a.gv) s = s + *a.gv;
      if (b.gv) s = s + *b.gv;
      Value r;
      r.form = PolyForm(chart_);
      r.gv = s;
      return r;
    }
    a.form += b.form;
    return a;
  }

  Value multiply(const Value& a, const Value& b) {
    Value r;
    if (a.gv || b.gv) {
      require(!(a.gv && b.gv), ErrorKind::ParseError,
              "cannot multiply generalized vectors");
      const Value& gvec = a.gv ? a : b;
      const Value& sc = a.gv ? b : a;
      require(sc.is_scalar(), ErrorKind::ParseError,
              "generalized vectors only scale by scalars");
      r.form = PolyForm(chart_);
      r.gv = gvec.gv->scaled(sc.scalar());
      return r;
    }
    r.form = a.form.wedge(b.form);
    return r;
  }

  ChartPtr chart_;
  Lexer lex_;
  bool genvec_;
};

}  // namespace

Poly parse_poly(const ChartPtr& chart, const std::string& text) {
  Value v = Parser(chart, text, false).parse();
  require(v.is_scalar(), ErrorKind::ParseError,
          "expected a scalar expression");
  return v.scalar();
}

PolyForm parse_polyform(const ChartPtr& chart, const std::string& text) {
  return Parser(chart, text, false).parse().form;
}

GenVecP parse_genvec(const ChartPtr& chart, const std::string& text) {
  Value v = Parser(chart, text, true).parse();
  if (v.gv) return *v.gv;
  require(v.form.is_zero(), ErrorKind::ParseError,
          "expected a generalized vector expression");
  return GenVecP(chart);
}

}  // namespace genformal
