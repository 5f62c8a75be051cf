// Copyright 2026 The fockbench authors
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

#include "fockbench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fockbench::linalg {

namespace {

cplx unit_phase(cplx z) {
  const double a = std::abs(z);
  return a == 0.0 ? cplx(1.0) : z / a;
}

}  // namespace

// ---------------------------------------------------------------------------
// LU
// ---------------------------------------------------------------------------

LuFactors lu_factor(CMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("lu_factor: not square");
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const cplx pivot = a(k, k);
    if (pivot == cplx(0.0))
      throw std::runtime_error("lu_factor: exactly singular matrix");
    const cplx inv = cplx(1.0) / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx lik = a(i, k) * inv;
      a(i, k) = lik;
      if (lik != cplx(0.0))
        kernels::axpy(n - k - 1, -lik, a.row(k) + k + 1, a.row(i) + k + 1);
    }
  }
  return {std::move(a), std::move(piv)};
}

CMatrix lu_solve(const LuFactors& f, CMatrix b) {
  const std::size_t n = f.lu.rows();
  if (b.rows() != n) throw std::invalid_argument("lu_solve: shape mismatch");
  const std::size_t w = b.cols();
  for (std::size_t k = 0; k < n; ++k)
    if (f.piv[k] != k)
      for (std::size_t j = 0; j < w; ++j) std::swap(b(k, j), b(f.piv[k], j));
  // L y = P b
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) {
      const cplx l = f.lu(i, j);
      if (l != cplx(0.0)) kernels::axpy(w, -l, b.row(j), b.row(i));
    }
  // U x = y
  for (std::size_t jj = n; jj-- > 0;) {
    kernels::scal(w, cplx(1.0) / f.lu(jj, jj), b.row(jj));
    for (std::size_t i = 0; i < jj; ++i) {
      const cplx u = f.lu(i, jj);
      if (u != cplx(0.0)) kernels::axpy(w, -u, b.row(jj), b.row(i));
    }
  }
  return b;
}

CVector lu_solve(const LuFactors& f, CVector b) {
  CMatrix m(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) m(i, 0) = b[i];
  m = lu_solve(f, std::move(m));
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = m(i, 0);
  return b;
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem
// ---------------------------------------------------------------------------

namespace {

// Reduce Hermitian A to real symmetric tridiagonal (d, e) via Householder
// reflectors, then phase-normalize the subdiagonal. When `q` is non-null it
// accumulates the unitary with A = Q T Q^+.
void hermitian_tridiag(CMatrix a, std::vector<double>& d,
                       std::vector<double>& e, CMatrix* q) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (q) *q = CMatrix::identity(n);

  std::vector<CVector> us;
  std::vector<double> taus;
  if (n > 2) {
    us.reserve(n - 2);
    taus.reserve(n - 2);
  }

  for (std::size_t k = 0; n > 2 && k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the column below the diagonal
    CVector u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = a(k + 1 + i, k);
    const double xnorm = norm(u);
    if (xnorm == 0.0) {
      us.emplace_back();
      taus.push_back(0.0);
      continue;
    }
    const cplx alpha = -unit_phase(u[0]) * xnorm;
    u[0] -= alpha;
    const double unorm2 = kernels::nrm2sq(m, u.data());
    if (unorm2 == 0.0) {
      us.emplace_back();
      taus.push_back(0.0);
      continue;
    }
    const double tau = 2.0 / unorm2;

    // Column k collapses onto the subdiagonal.
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = 1; i < m; ++i) {
      a(k + 1 + i, k) = 0.0;
      a(k, k + 1 + i) = 0.0;
    }

    // Trailing Hermitian rank-2 update: T <- T - u w^+ - w u^+ with
    // p = tau T u, w = p - (tau/2)(u^+ p) u.
    CVector p(m, cplx(0.0));
    for (std::size_t i = 0; i < m; ++i)
      p[i] = tau * kernels::dotu(m, a.row(k + 1 + i) + k + 1, u.data());
    const cplx kappa =
        0.5 * tau * kernels::dotc(m, u.data(), p.data());
    CVector w = p;
    kernels::axpy(m, -kappa, u.data(), w.data());
    for (std::size_t i = 0; i < m; ++i) {
      const cplx ui = u[i];
      const cplx wi = w[i];
      for (std::size_t j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -=
            ui * std::conj(w[j]) + wi * std::conj(u[j]);
    }
    us.push_back(std::move(u));
    taus.push_back(tau);
  }

  // Accumulate Q = H_0 H_1 ... applied to the identity.
  if (q) {
    for (std::size_t k = us.size(); k-- > 0;) {
      if (taus[k] == 0.0) continue;
      const CVector& u = us[k];
      const std::size_t off = k + 1, m = u.size();
      // Q <- (I - tau u u^+) Q on rows off..n-1
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          s += std::conj(u[i]) * (*q)(off + i, j);
        s *= taus[k];
        for (std::size_t i = 0; i < m; ++i) (*q)(off + i, j) -= s * u[i];
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();

  // Rotate the complex subdiagonal onto the nonnegative reals: with
  // D = diag(e^{i theta_k}), theta_0 = 0 and e^{i theta_{k+1}} =
  // phase(beta_k) e^{i theta_k}, the similarity D^+ T D has |beta_k| on the
  // subdiagonal and Q absorbs D.
  cplx phase = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx b = a(k + 1, k);
    e[k] = std::abs(b);
    phase = unit_phase(b) * phase;
    if (q)
      for (std::size_t i = 0; i < n; ++i) (*q)(i, k + 1) *= phase;
  }
}

// Implicit-shift QL on a symmetric tridiagonal, rotations optionally applied
// to the columns of q.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, CMatrix* q) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("eigh: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (q) {
            for (std::size_t row = 0; row < q->rows(); ++row) {
              const cplx zi = (*q)(row, i);
              const cplx zi1 = (*q)(row, i + 1);
              (*q)(row, i + 1) = s * zi + c * zi1;
              (*q)(row, i) = c * zi - s * zi1;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

}  // namespace

EighResult eigh(const CMatrix& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: not square");
  if (!a.all_finite()) throw std::invalid_argument("eigh: non-finite entries");
  const std::size_t n = a.rows();
  EighResult res;
  if (n == 0) return res;

  std::vector<double> d, e;
  CMatrix q;
  hermitian_tridiag(a, d, e, want_vectors ? &q : nullptr);
  tql_implicit(d, e, want_vectors ? &q : nullptr);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  res.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.eigenvalues[i] = d[order[i]];
  if (want_vectors) {
    CMatrix v(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) v(i, j) = q(i, order[j]);
    res.vectors = std::move(v);
  }
  return res;
}

std::vector<double> singular_values(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("singular_values: not square");
  const std::size_t n = a.rows();
  CMatrix jw(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      jw(i, n + j) = a(i, j);
      jw(n + j, i) = std::conj(a(i, j));
    }
  std::vector<double> ev = eigh(jw).eigenvalues;  // -s_desc ... +s_asc
  std::vector<double> sv(ev.end() - n, ev.end());
  for (double& s : sv) s = std::max(s, 0.0);
  return sv;  // ascending
}

double power_sigma_max(const std::function<CVector(const CVector&)>& apply,
                       const std::function<CVector(const CVector&)>& apply_adj,
                       std::size_t dim, std::uint64_t seed, int max_iters,
                       double tol) {
  double best = 0.0;
  for (int restart = 0; restart < 2; ++restart) {
    std::mt19937_64 rng(seed + 977u * static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(dim);
    for (cplx& z : v) z = cplx(g(rng), g(rng));
    if (norm(v) == 0.0) continue;
    normalize(v);
    double sigma = 0.0;
    for (int it = 0; it < max_iters; ++it) {
      CVector w = apply(v);
      const double s = norm(w);
      if (s == 0.0) {
        sigma = 0.0;
        break;
      }
      kernels::scal(w.size(), cplx(1.0 / s), w.data());
      v = apply_adj(w);
      const double t = norm(v);
      if (t == 0.0) {
        sigma = s;
        break;
      }
      kernels::scal(v.size(), cplx(1.0 / t), v.data());
      if (std::abs(t - sigma) <= tol * std::max(1.0, t)) {
        sigma = t;
        break;
      }
      sigma = t;
    }
    best = std::max(best, sigma);
  }
  return best;
}

double sigma_max(const CMatrix& a, std::uint64_t seed) {
  CMatrix ah = a.adjoint();
  return power_sigma_max(
      [&](const CVector& v) { return matvec(a, v); },
      [&](const CVector& v) { return matvec(ah, v); }, a.cols(), seed);
}

CMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));

  // Householder QR; collect reflectors then form Q against the identity.
  std::vector<CVector> us;
  std::vector<double> taus;
  std::vector<cplx> rdiag(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = n - k;
    CVector u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = a(k + i, k);
    const double xnorm = norm(u);
    if (xnorm == 0.0) {
      us.emplace_back();
      taus.push_back(0.0);
      rdiag[k] = 1.0;
      continue;
    }
    const cplx alpha = -unit_phase(u[0]) * xnorm;
    u[0] -= alpha;
    const double unorm2 = kernels::nrm2sq(m, u.data());
    if (unorm2 == 0.0) {
      us.emplace_back();
      taus.push_back(0.0);
      rdiag[k] = u[0] + alpha;
      continue;
    }
    const double tau = 2.0 / unorm2;
    for (std::size_t j = k; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += std::conj(u[i]) * a(k + i, j);
      s *= tau;
      for (std::size_t i = 0; i < m; ++i) a(k + i, j) -= s * u[i];
    }
    rdiag[k] = a(k, k);
    us.push_back(std::move(u));
    taus.push_back(tau);
  }
  CMatrix q = CMatrix::identity(n);
  for (std::size_t k = n; k-- > 0;) {
    if (taus[k] == 0.0) continue;
    const CVector& u = us[k];
    const std::size_t m = u.size();
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += std::conj(u[i]) * q(k + i, j);
      s *= taus[k];
      for (std::size_t i = 0; i < m; ++i) q(k + i, j) -= s * u[i];
    }
  }
  // Phase fix makes the distribution Haar rather than QR-convention biased.
  for (std::size_t j = 0; j < n; ++j) {
    const cplx ph = unit_phase(rdiag[j]);
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= ph;
  }
  return q;
}

CVector null_vector(const CMatrix& m, const CVector& start, int iters) {
  if (m.rows() != m.cols()) throw std::invalid_argument("null_vector: not square");
  const double shift = 1e-13 * std::max(1.0, m.one_norm());
  CMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += shift;
  LuFactors f = lu_factor(std::move(shifted));
  CVector v = start;
  normalize(v);
  for (int it = 0; it < iters; ++it) {
    v = lu_solve(f, std::move(v));
    normalize(v);
  }
  return v;
}

}  // namespace fockbench::linalg
