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

#include "hqc/poly.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

Poly::Poly(int modes) : modes_(modes) {
  if (modes < 1) throw ValidationError("polynomial needs at least one mode");
}

Poly::Poly(int modes, Map terms) : Poly(modes) {
  for (auto &[n, c] : terms) add_term(n, c);
}

Poly Poly::constant(int modes, cplx c) {
  Poly p(modes);
  p.add_term(MultiIndex(modes, 0), c);
  return p;
}

Poly Poly::variable(int modes, int k) {
  MultiIndex n(modes, 0);
  n.at(k) = 1;
  return monomial(n);
}

Poly Poly::monomial(const MultiIndex &n, cplx c) {
  Poly p(static_cast<int>(n.size()));
  p.add_term(n, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (auto &[n, c] : terms_) d = std::max(d, total_degree(n));
  return d;
}

int Poly::degree_in(int k) const {
  int d = -1;
  for (auto &[n, c] : terms_) d = std::max(d, n[k]);
  return d;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (auto &[n, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

cplx Poly::coeff(const MultiIndex &n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void Poly::add_term(const MultiIndex &n, cplx c) {
  if (static_cast<int>(n.size()) != modes_) {
    throw ValidationError("multi-index length does not match mode count");
  }
  for (int k : n) {
    if (k < 0) throw ValidationError("negative exponent in multi-index");
  }
  if (c == cplx(0.0)) return;
  auto [it, inserted] = terms_.emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

Poly &Poly::operator+=(const Poly &o) {
  if (o.modes_ != modes_) throw ValidationError("mode count mismatch in sum");
  for (auto &[n, c] : o.terms_) add_term(n, c);
  return prune();
}

Poly &Poly::operator-=(const Poly &o) {
  if (o.modes_ != modes_) throw ValidationError("mode count mismatch in sum");
  for (auto &[n, c] : o.terms_) add_term(n, -c);
  return prune();
}

Poly &Poly::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto &[n, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  if (a.modes_ != b.modes_) throw ValidationError("mode count mismatch in product");
  Poly r(a.modes_);
  MultiIndex n(a.modes_);
  for (auto &[na, ca] : a.terms_) {
    for (auto &[nb, cb] : b.terms_) {
      for (int k = 0; k < a.modes_; ++k) n[k] = na[k] + nb[k];
      r.add_term(n, ca * cb);
    }
  }
  return r.prune();
}

Poly Poly::derivative(int k) const {
  Poly r(modes_);
  for (auto &[n, c] : terms_) {
    if (n[k] == 0) continue;
    MultiIndex m = n;
    m[k] -= 1;
    r.add_term(m, c * static_cast<double>(n[k]));
  }
  return r;
}

Poly Poly::times_variable(int k) const {
  Poly r(modes_);
  for (auto &[n, c] : terms_) {
    MultiIndex m = n;
    m[k] += 1;
    r.terms_.emplace(std::move(m), c);
  }
  return r;
}

cplx Poly::evaluate(const CVec &z) const {
  if (z.size() != modes_) throw ValidationError("evaluation point has wrong dimension");
  cplx s = 0.0;
  for (auto &[n, c] : terms_) {
    cplx t = c;
    for (int k = 0; k < modes_; ++k) {
      if (n[k]) t *= std::pow(z[k], n[k]);
    }
    s += t;
  }
  return s;
}

Poly Poly::substitute_linear(const CMat &U) const {
  if (U.rows() != modes_ || U.cols() != modes_) {
    throw ValidationError("substitution matrix has wrong shape");
  }
  // powers[k][j] = (sum_l U_kl z_l)^j
  std::vector<std::vector<Poly>> powers(modes_);
  for (int k = 0; k < modes_; ++k) {
    Poly lin(modes_);
    for (int l = 0; l < modes_; ++l) {
      if (U(k, l) == cplx(0.0)) continue;
      MultiIndex e(modes_, 0);
      e[l] = 1;
      lin.add_term(e, U(k, l));
    }
    int dk = degree_in(k);
    powers[k].push_back(constant(modes_, 1.0));
    for (int j = 1; j <= dk; ++j) powers[k].push_back(powers[k].back() * lin);
  }
  Poly r(modes_);
  for (auto &[n, c] : terms_) {
    Poly t = constant(modes_, c);
    for (int k = 0; k < modes_; ++k) {
      if (n[k]) t = t * powers[k][n[k]];
    }
    for (auto &[m, d] : t.terms_) r.add_term(m, d);
  }
  return r.prune();
}

Poly Poly::shift(const CVec &w) const {
  if (w.size() != modes_) throw ValidationError("shift vector has wrong dimension");
  // Expand each (z_k - w_k)^n_k binomially.
  Poly r(modes_);
  for (auto &[n, c] : terms_) {
    std::vector<std::vector<cplx>> binom(modes_);
    for (int k = 0; k < modes_; ++k) {
      binom[k].resize(n[k] + 1);
      double b = 1.0;
      for (int j = 0; j <= n[k]; ++j) {
        // coefficient of z_k^j in (z_k - w_k)^{n_k}
        binom[k][j] = b * std::pow(-w[k], n[k] - j);
        b = b * (n[k] - j) / (j + 1);
      }
    }
    MultiIndex m(modes_, 0);
    while (true) {
      cplx t = c;
      for (int k = 0; k < modes_; ++k) t *= binom[k][m[k]];
      r.add_term(m, t);
      int k = 0;
      while (k < modes_ && ++m[k] > n[k]) m[k++] = 0;
      if (k == modes_) break;
    }
  }
  return r.prune();
}

Poly Poly::scale_variable(int k, cplx f) const {
  Poly r(modes_);
  for (auto &[n, c] : terms_) r.add_term(n, c * std::pow(f, n[k]));
  return r.prune();
}

Poly Poly::restrict(const std::vector<int> &modes, const CVec &values) const {
  if (static_cast<int>(modes.size()) != values.size()) {
    throw ValidationError("restriction values do not match mode list");
  }
  std::vector<int> keep;
  std::vector<int> pos(modes_, -1);
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= modes_ || pos[modes[i]] != -1) {
      throw ValidationError("invalid or repeated mode in restriction");
    }
    pos[modes[i]] = static_cast<int>(i);
  }
  for (int k = 0; k < modes_; ++k) {
    if (pos[k] < 0) keep.push_back(k);
  }
  if (keep.empty()) {
    // All variables fixed: the result is a constant on one dummy mode.
    Poly r(1);
    cplx s = 0.0;
    for (auto &[n, c] : terms_) {
      cplx t = c;
      for (int k = 0; k < modes_; ++k) t *= std::pow(values[pos[k]], n[k]);
      s += t;
    }
    r.add_term({0}, s);
    return r;
  }
  Poly r(static_cast<int>(keep.size()));
  MultiIndex m(keep.size());
  for (auto &[n, c] : terms_) {
    cplx t = c;
    for (int k = 0; k < modes_; ++k) {
      if (pos[k] >= 0 && n[k]) t *= std::pow(values[pos[k]], n[k]);
    }
    for (size_t i = 0; i < keep.size(); ++i) m[i] = n[keep[i]];
    r.add_term(m, t);
  }
  return r.prune();
}

Poly Poly::slice(int k, int j) const {
  Poly r(modes_);
  for (auto &[n, c] : terms_) {
    if (n[k] != j) continue;
    MultiIndex m = n;
    m[k] = 0;
    r.add_term(m, c);
  }
  return r;
}

Poly Poly::tensor(const Poly &other) const {
  Poly r(modes_ + other.modes_);
  MultiIndex m(modes_ + other.modes_);
  for (auto &[na, ca] : terms_) {
    for (auto &[nb, cb] : other.terms_) {
      std::copy(na.begin(), na.end(), m.begin());
      std::copy(nb.begin(), nb.end(), m.begin() + modes_);
      r.add_term(m, ca * cb);
    }
  }
  return r.prune();
}

Poly &Poly::prune(double rel) {
  double cut = rel * max_abs_coeff();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < cut || it->second == cplx(0.0)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

}  // namespace hqc
