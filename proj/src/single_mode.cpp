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

#include "hqc/single_mode.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hqc/calogero_moser.hpp"

namespace hqc {

namespace {

using Gauss3 = std::array<cplx, 3>;

void require_single(const StellarState &s) {
  if (s.modes() != 1) throw ValidationError("single-mode operation on a multimode state");
}

// (1 - cos(sqrt(w2) t)) / w2, continuous through w2 = 0.
cplx one_minus_cos_over(cplx w2, double t) {
  const cplx x = w2 * t * t;
  if (std::abs(x) < 1e-3) {
    return t * t * (0.5 - x / 24.0 + x * x / 720.0);
  }
  return (1.0 - cos_sqrt(w2, t)) / w2;
}

Gauss3 gauss_displacement(const Gauss3 &g, cplx alpha, double t) {
  const cplx ac = std::conj(alpha);
  return {g[0], g[1] + (alpha + ac * g[0]) * t,
          g[2] - ac * g[1] * t - 0.5 * (std::norm(alpha) + ac * ac * g[0]) * t * t};
}

Gauss3 gauss_phaseshift(const Gauss3 &g, int n, double phi, double t) {
  return {g[0] * std::polar(1.0, 2.0 * phi * t), g[1] * std::polar(1.0, phi * t),
          g[2] + kI * (n * phi * t)};
}

Gauss3 gauss_shearing(const Gauss3 &g, int n, double sh, double t) {
  const cplx u0 = 1.0 - g[0];
  const cplx ist = kI * (sh * t);
  const cplx D = 1.0 - ist * u0;
  return {(g[0] - ist * u0) / D, g[1] / D,
          g[2] + ist * g[1] * g[1] / (2.0 * D) - (n + 0.5) * std::log(D)};
}

Gauss3 gauss_squeezing(const Gauss3 &g, int n, cplx xi, double t) {
  if (xi == cplx(0.0)) return g;
  const double r = std::abs(xi);
  const cplx eth = std::polar(1.0, std::arg(xi));
  const cplx A0 = std::atanh(g[0] / eth);
  const cplx At = A0 - r * t;
  const cplx chA = std::cosh(A0), chAt = std::cosh(At);
  return {eth * std::tanh(At), g[1] * chA / chAt,
          g[2] + (n + 0.5) * (std::log(chA) - std::log(chAt)) -
              0.5 / eth * g[1] * g[1] * chA * chA * (std::tanh(A0) - std::tanh(At))};
}

struct Deriv {
  cplx da, db, dc;
};

Deriv gauss_rhs(const Hamiltonian1M &H, int n, cplx a, cplx b) {
  const cplx xc = std::conj(H.xi);
  const cplx ac = std::conj(H.alpha);
  const cplx iphi = kI * H.phi;
  return {xc * a * a + 2.0 * iphi * a - H.xi, (iphi + xc * a) * b + H.alpha + ac * a,
          0.5 * xc * a - 0.5 * xc * b * b - ac * b + static_cast<double>(n) * (xc * a + iphi) -
              kI * H.offset};
}

Gauss3 integrate_gauss(const Gauss3 &g0, int n, const Hamiltonian1M &H, double t, double dt) {
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt)));
  const double h = t / steps;
  Gauss3 g = g0;
  for (int i = 0; i < steps; ++i) {
    Deriv k1 = gauss_rhs(H, n, g[0], g[1]);
    Deriv k2 = gauss_rhs(H, n, g[0] + 0.5 * h * k1.da, g[1] + 0.5 * h * k1.db);
    Deriv k3 = gauss_rhs(H, n, g[0] + 0.5 * h * k2.da, g[1] + 0.5 * h * k2.db);
    Deriv k4 = gauss_rhs(H, n, g[0] + h * k3.da, g[1] + h * k3.db);
    g[0] += h / 6.0 * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da);
    g[1] += h / 6.0 * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db);
    g[2] += h / 6.0 * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc);
  }
  return g;
}

enum class Primitive { D, R, S, P, General };

Primitive classify(const Hamiltonian1M &H) {
  const bool a = H.alpha != cplx(0.0), x = H.xi != cplx(0.0), p = H.phi != 0.0;
  if (!x && !p && H.offset == 0.0) return Primitive::D;
  if (!a && !x && H.offset == 0.0) return Primitive::R;
  if (!a && !p && H.offset == 0.0) return Primitive::S;
  if (!a && H.xi == kI * H.phi && H.offset == -0.5 * H.phi) return Primitive::P;
  return Primitive::General;
}

Gauss3 gauss_closed(const Gauss3 &g, int n, const Hamiltonian1M &H, double t) {
  switch (classify(H)) {
    case Primitive::D: return gauss_displacement(g, H.alpha, t);
    case Primitive::R: return gauss_phaseshift(g, n, H.phi, t);
    case Primitive::S: return gauss_squeezing(g, n, H.xi, t);
    case Primitive::P: return gauss_shearing(g, n, H.phi, t);
    case Primitive::General: break;
  }
  return integrate_gauss(g, n, H, t, 1e-4 * std::max(1.0, std::abs(t)));
}

CVec to_cvec(const std::vector<cplx> &v) {
  CVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

// Matrix whose spectrum is the zero set at time t.
CMat zero_matrix(const CVec &lam0, const CVec &v0, const Hamiltonian1M &H, double t) {
  const cplx w2 = H.omega2();
  CMat L = cm_lambda(lam0, v0, H.coupling(), w2, t);
  const cplx shift = H.force() * one_minus_cos_over(w2, t);
  if (shift != cplx(0.0)) L += shift * CMat::Identity(lam0.size(), lam0.size());
  return L;
}

bool zeros_collide(const std::vector<cplx> &z) {
  return z.size() > 1 && min_pairwise_distance(to_cvec(z)) < kCollide;
}

StellarState zero_route(const StellarState &s, const Hamiltonian1M &H, double t,
                        StellarState (*fallback)(const StellarState &, cplx), cplx param) {
  require_single(s);
  if (t == 0.0) return s;
  ZeroForm z = to_zero_form(s);
  const int n = static_cast<int>(z.zeros.size());
  if (zeros_collide(z.zeros)) {
    warn("zeros closer than the collision threshold; using the direct route");
    return fallback(s, param);
  }
  Gauss3 g = gauss_closed({z.a, z.b, z.c}, n, H, t);
  ZeroForm out{{}, g[0], g[1], g[2]};
  if (n > 0) {
    CVec lam0 = to_cvec(z.zeros);
    CVec v0 = to_cvec(initial_velocities(z.zeros, z.a, z.b, H));
    out.zeros = eigenvalues(zero_matrix(lam0, v0, H, t));
  }
  return from_zero_form(out);
}

StellarState fallback_S(const StellarState &s, cplx xi) { return direct_apply_S(s, xi); }
StellarState fallback_P(const StellarState &s, cplx sh) { return direct_apply_P(s, sh.real()); }

}  // namespace

ZeroForm to_zero_form(const StellarState &s) {
  require_single(s);
  ZeroForm z;
  const int n = stellar_rank(s);
  const cplx lead = s.poly().coeff({n});
  if (n > 0) z.zeros = zeros_of(s);
  z.a = s.gauss().A(0, 0);
  z.b = s.gauss().B(0);
  z.c = s.gauss().C + std::log(lead);
  return z;
}

StellarState from_zero_form(const ZeroForm &z) { return from_zeros(z.zeros, z.a, z.b, z.c); }

Regime Hamiltonian1M::regime(double tol) const {
  const double d = std::abs(phi) - std::abs(xi);
  if (std::abs(d) <= tol) return Regime::Parabolic;
  return d > 0 ? Regime::Elliptic : Regime::Hyperbolic;
}

Hamiltonian1M hamiltonian_of(Gate::Kind kind, cplx drive) {
  Hamiltonian1M H;
  switch (kind) {
    case Gate::Kind::Displace: H.alpha = drive; break;
    case Gate::Kind::Squeeze: H.xi = drive; break;
    case Gate::Kind::Phase: H.phi = drive.real(); break;
    case Gate::Kind::Shear:
      // P(s) = exp(i s q^2) = exp(-i t (H^S_{is} + H^R_s - s/2)).
      H.xi = kI * drive.real();
      H.phi = drive.real();
      H.offset = -0.5 * drive.real();
      break;
    default: throw ValidationError("gate kind has no single-mode Hamiltonian");
  }
  return H;
}

StellarState evolve_displacement(const StellarState &s, cplx alpha, double t) {
  require_single(s);
  ZeroForm z = to_zero_form(s);
  Gauss3 g = gauss_displacement({z.a, z.b, z.c}, alpha, t);
  for (cplx &l : z.zeros) l += std::conj(alpha) * t;
  z.a = g[0];
  z.b = g[1];
  z.c = g[2];
  return from_zero_form(z);
}

StellarState evolve_phaseshift(const StellarState &s, double phi, double t) {
  require_single(s);
  ZeroForm z = to_zero_form(s);
  const int n = static_cast<int>(z.zeros.size());
  Gauss3 g = gauss_phaseshift({z.a, z.b, z.c}, n, phi, t);
  for (cplx &l : z.zeros) l *= std::polar(1.0, -phi * t);
  z.a = g[0];
  z.b = g[1];
  z.c = g[2];
  return from_zero_form(z);
}

StellarState evolve_shearing(const StellarState &s, double sh, double t) {
  return zero_route(s, hamiltonian_of(Gate::Kind::Shear, sh), t, fallback_P, sh * t);
}

StellarState evolve_squeezing(const StellarState &s, cplx xi, double t) {
  return zero_route(s, hamiltonian_of(Gate::Kind::Squeeze, xi), t, fallback_S, xi * t);
}

StellarState evolve_closed_form(const StellarState &s, Gate::Kind kind, cplx drive, double t) {
  switch (kind) {
    case Gate::Kind::Displace: return evolve_displacement(s, drive, t);
    case Gate::Kind::Phase: return evolve_phaseshift(s, drive.real(), t);
    case Gate::Kind::Shear: return evolve_shearing(s, drive.real(), t);
    case Gate::Kind::Squeeze: return evolve_squeezing(s, drive, t);
    default: throw ValidationError("gate kind has no closed-form evolution");
  }
}

StellarState direct_apply_D(const StellarState &s, cplx alpha) {
  require_single(s);
  CVec b(1);
  b[0] = alpha;
  return apply_displace(s, b);
}

StellarState direct_apply_R(const StellarState &s, double phi) {
  require_single(s);
  return apply_phase_mode(s, 0, phi);
}

StellarState direct_apply_S(const StellarState &s, cplx xi) {
  require_single(s);
  if (xi == cplx(0.0)) return s;
  const double r = std::abs(xi);
  const cplx emth = std::polar(1.0, -std::arg(xi));
  const double ch = std::cosh(r), sh = std::sinh(r);
  const cplx a = s.gauss().A(0, 0), b = s.gauss().B(0);
  const cplx den = ch - a * emth * sh;
  const cplx u = emth * std::tanh(r);
  GaussPart g = GaussPart::zero(1);
  g.A(0, 0) = (a * ch - sh / emth) / den;
  g.B(0) = b / den;
  g.C = s.gauss().C - 0.5 * std::log(ch) - 0.5 * std::log(1.0 - u * a) -
        u * b * b / (2.0 * (1.0 - u * a));
  Poly Q = apply_mode_operator(s.poly(), 0, ch, -emth * sh, g.A, g.B);
  return StellarState(Q, g);
}

StellarState direct_apply_P(const StellarState &s, double sh) {
  require_single(s);
  return apply_shear_mode(s, 0, sh);
}

std::vector<cplx> initial_velocities(const std::vector<cplx> &zeros, cplx a, cplx b,
                                     const Hamiltonian1M &H) {
  if (zeros_collide(zeros)) throw ValidationError("coincident zeros have no velocity");
  const cplx xc = std::conj(H.xi);
  const size_t n = zeros.size();
  std::vector<cplx> v(n);
  for (size_t k = 0; k < n; ++k) {
    cplx inter = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (j != k) inter += 1.0 / (zeros[k] - zeros[j]);
    }
    v[k] = -(xc * a + kI * H.phi) * zeros[k] + xc * b + std::conj(H.alpha) + xc * inter;
  }
  return v;
}

ZeroForm ZeroTrajectory::at(size_t i) const {
  ZeroForm z;
  for (int k = 0; k < zeros.rows(); ++k) z.zeros.push_back(zeros(k, i));
  z.a = gauss_path[i][0];
  z.b = gauss_path[i][1];
  z.c = gauss_path[i][2];
  return z;
}

ZeroTrajectory ode_evolve(const StellarState &s, const Hamiltonian1M &H, double t, double dt,
                          int record_stride) {
  require_single(s);
  if (!(dt > 0.0)) throw ValidationError("ode_evolve needs dt > 0");
  if (record_stride < 1) throw ValidationError("record stride must be positive");
  ZeroForm z0 = to_zero_form(s);
  const int n = static_cast<int>(z0.zeros.size());
  const cplx w2 = H.omega2(), f = H.force();
  const cplx g = H.coupling();
  const cplx two_g2 = 2.0 * g * g;

  // y = (a, b, c, lambda_1..n, dlambda_1..n)
  const int dim = 3 + 2 * n;
  CVec y(dim);
  y[0] = z0.a;
  y[1] = z0.b;
  y[2] = z0.c;
  std::vector<cplx> v0 = initial_velocities(z0.zeros, z0.a, z0.b, H);
  for (int k = 0; k < n; ++k) {
    y[3 + k] = z0.zeros[k];
    y[3 + n + k] = v0[k];
  }

  auto rhs = [&](const CVec &x) {
    CVec d(dim);
    Deriv gd = gauss_rhs(H, n, x[0], x[1]);
    d[0] = gd.da;
    d[1] = gd.db;
    d[2] = gd.dc;
    for (int k = 0; k < n; ++k) {
      cplx acc = -w2 * x[3 + k] + f;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const cplx diff = x[3 + k] - x[3 + j];
        acc += two_g2 / (diff * diff * diff);
      }
      d[3 + k] = x[3 + n + k];
      d[3 + n + k] = acc;
    }
    return d;
  };

  const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / dt)));
  const double h = t / static_cast<double>(steps);
  ZeroTrajectory tr;
  std::vector<CVec> rec;
  auto record = [&](double time) {
    tr.times.push_back(time);
    tr.gauss_path.push_back({y[0], y[1], y[2]});
    rec.push_back(y.segment(3, n));
  };
  record(0.0);
  for (long i = 1; i <= steps; ++i) {
    // Refine near close approaches, where the zero dynamics speeds up like 1/d^2.
    int sub = 1;
    if (n > 1) {
      const double d = min_pairwise_distance(y.segment(3, n));
      sub = std::max(1, static_cast<int>(std::min(4096.0, std::ceil(std::pow(0.5 / d, 2)))));
    }
    const double hs = h / sub;
    for (int k = 0; k < sub; ++k) {
      CVec k1 = rhs(y);
      CVec k2 = rhs(y + 0.5 * hs * k1);
      CVec k3 = rhs(y + 0.5 * hs * k2);
      CVec k4 = rhs(y + hs * k3);
      y += hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!y.allFinite() || !(std::abs(y[0]) < 1.0)) {
      std::ostringstream os;
      os << "ODE integration became unstable at t = " << h * i;
      throw NumericError(os.str());
    }
    if (n > 1 && min_pairwise_distance(y.segment(3, n)) < kCollide) {
      std::ostringstream os;
      os << "zero collision during ODE integration at t = " << h * i;
      throw NumericError(os.str());
    }
    if (i % record_stride == 0 || i == steps) record(h * i);
  }
  tr.zeros.resize(n, rec.size());
  for (size_t i = 0; i < rec.size(); ++i) tr.zeros.col(i) = rec[i];
  return tr;
}

StellarState ode_final_state(const StellarState &s, const Hamiltonian1M &H, double t, double dt) {
  ZeroTrajectory tr = ode_evolve(s, H, t, dt, std::numeric_limits<int>::max());
  return from_zero_form(tr.at(tr.times.size() - 1));
}

ZeroTrajectory closed_form_trajectory(const StellarState &s, const Hamiltonian1M &H,
                                      const std::vector<double> &times) {
  require_single(s);
  ZeroForm z0 = to_zero_form(s);
  const int n = static_cast<int>(z0.zeros.size());
  ZeroTrajectory tr;
  tr.times = times;
  tr.zeros.resize(n, times.size());
  for (double t : times) tr.gauss_path.push_back(gauss_closed({z0.a, z0.b, z0.c}, n, H, t));
  if (n > 0) {
    CVec lam0 = to_cvec(z0.zeros);
    CVec v0 = to_cvec(initial_velocities(z0.zeros, z0.a, z0.b, H));
    auto M = [&](double t) { return zero_matrix(lam0, v0, H, t); };
    std::vector<CVec> tracked = track_eigenvalues(M, lam0, times);
    for (size_t i = 0; i < times.size(); ++i) tr.zeros.col(i) = tracked[i];
  }
  return tr;
}

std::string trajectory_csv(const ZeroTrajectory &tr) {
  std::ostringstream os;
  char buf[64];
  os << "t";
  for (int k = 0; k < tr.zeros.rows(); ++k) os << ",re_l" << k + 1 << ",im_l" << k + 1;
  os << ",re_a,im_a,re_b,im_b,re_c,im_c\n";
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, ",%.17g", x);
    os << buf;
  };
  for (size_t i = 0; i < tr.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.times[i]);
    os << buf;
    for (int k = 0; k < tr.zeros.rows(); ++k) {
      put(tr.zeros(k, i).real());
      put(tr.zeros(k, i).imag());
    }
    for (const cplx &v : tr.gauss_path[i]) {
      put(v.real());
      put(v.imag());
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace hqc
