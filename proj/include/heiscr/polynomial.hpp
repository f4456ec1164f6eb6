#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heiscr/jet.hpp"
#include "heiscr/linalg.hpp"
#include "heiscr/rational.hpp"

namespace heiscr {

/// Exponent vector of a monomial in at most kMaxDim variables.
struct Monomial {
  std::array<uint8_t, kMaxDim> e{};

  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms with zero coefficient are never stored, so the zero polynomial has a
/// unique normal form (empty term map) and equality is structural.
class Polynomial {
public:
  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (!c.is_zero()) p.terms_[Monomial{}] = c;
    return p;
  }
  static Polynomial variable(int nvars, int index, const Rational& coeff = 1) {
    Polynomial p(nvars);
    if (!coeff.is_zero()) {
      Monomial m;
      m.e[static_cast<size_t>(index)] = 1;
      p.terms_[m] = coeff;
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.nvars_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (int i = 0; i < kMaxDim; ++i)
          m.e[i] = static_cast<uint8_t>(ma.e[i] + mb.e[i]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (s.is_zero()) return r;
    for (auto& [m, c] : p.terms_) r.terms_[m] = s * c;
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Exact partial derivative with respect to variable i.
  Polynomial derivative(int i) const {
    Polynomial r(nvars_);
    for (auto& [m, c] : terms_) {
      int e = m.e[static_cast<size_t>(i)];
      if (e == 0) continue;
      Monomial d = m;
      d.e[static_cast<size_t>(i)] = static_cast<uint8_t>(e - 1);
      r.add_term(d, Rational(e) * c);
    }
    return r;
  }

  double eval(const VecD& x) const {
    double s = 0;
    for (auto& [m, c] : terms_) {
      double t = c.to_double();
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }

  /// Evaluate as a second-order jet at x; gradient and Hessian come out exact
  /// up to rounding because the expansion is polynomial.
  Jet2 eval_jet(const VecD& x) const {
    Jet2 s(nvars_);
    for (auto& [m, c] : terms_) {
      Jet2 t = Jet2::constant(nvars_, c.to_double());
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t = t * Jet2::variable(nvars_, i, x[i]);
      s += t;
    }
    return s;
  }

  Rational eval_exact(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t *= x[static_cast<size_t>(i)];
      s += t;
    }
    return s;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) out += "*" + names[static_cast<size_t>(i)];
    }
    return out;
  }

private:
  int nvars_;
  std::map<Monomial, Rational> terms_;
};

} // namespace heiscr
