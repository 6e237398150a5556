// Copyright 2026 The HQC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>

#include "hqc/common.hpp"

namespace hqc {

// Sparse multivariate polynomial with complex coefficients.
//
// Keys are exponent vectors of length modes(). Exactly-zero coefficients are
// never stored, so an empty map is the zero polynomial.
class Poly {
 public:
  using Map = std::map<MultiIndex, cplx>;

  explicit Poly(int modes = 1);
  Poly(int modes, Map terms);

  static Poly constant(int modes, cplx c);
  static Poly variable(int modes, int k);
  static Poly monomial(const MultiIndex &n, cplx c = 1.0);

  int modes() const { return modes_; }
  const Map &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Maximal total degree, -1 for the zero polynomial.
  int degree() const;
  // Maximal exponent of z_k.
  int degree_in(int k) const;
  double max_abs_coeff() const;
  cplx coeff(const MultiIndex &n) const;

  void add_term(const MultiIndex &n, cplx c);

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(cplx s);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(const Poly &a, const Poly &b);

  Poly derivative(int k) const;
  Poly times_variable(int k) const;
  cplx evaluate(const CVec &z) const;

  // P(Uz): each z_k is replaced by sum_j U_kj z_j.
  Poly substitute_linear(const CMat &U) const;
  // P(z - w).
  Poly shift(const CVec &w) const;
  // P(..., f z_k, ...).
  Poly scale_variable(int k, cplx f) const;
  // Sets z_k = value for every k in `modes` and removes those variables.
  Poly restrict(const std::vector<int> &modes, const CVec &values) const;
  // Coefficient of z_k^j, as a polynomial in the same variables (z_k absent).
  Poly slice(int k, int j) const;
  // Tensor embedding: variables of `this` first, then `other`.
  Poly tensor(const Poly &other) const;

  // Drops coefficients below rel * max |c|. Returns *this.
  Poly &prune(double rel = kPruneRelative);

 private:
  int modes_;
  Map terms_;
};

}  // namespace hqc
