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

#include <cmath>
#include <stdexcept>

#include "fockbench/linalg.hpp"

// Scaling-and-squaring with diagonal Pade approximants, order picked from
// the 1-norm (Higham's double-precision thresholds).

namespace fockbench::linalg {
namespace {

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

CMatrix pade_solve(CMatrix u, CMatrix v) {
  // (V - U) F = (V + U)
  CMatrix lhs = v;
  lhs -= u;
  v += u;
  return lu_solve(lu_factor(std::move(lhs)), std::move(v));
}

// Orders 3..9 share the even-power evaluation scheme.
CMatrix pade_low(const CMatrix& a, const std::vector<double>& b) {
  const std::size_t n = a.rows();
  std::vector<CMatrix> pow;  // A^2, A^4, ...
  pow.push_back(a * a);
  const std::size_t npow = (b.size() - 2) / 2;  // number of even powers used
  for (std::size_t i = 1; i < npow; ++i) pow.push_back(pow.back() * pow[0]);

  CMatrix usum = CMatrix::identity(n);
  usum *= cplx(b[1]);
  CMatrix vsum = CMatrix::identity(n);
  vsum *= cplx(b[0]);
  for (std::size_t i = 0; i < npow; ++i) {
    CMatrix t = pow[i];
    t *= cplx(b[2 * i + 3]);
    usum += t;
    t = pow[i];
    t *= cplx(b[2 * i + 2]);
    vsum += t;
  }
  return pade_solve(a * usum, std::move(vsum));
}

CMatrix pade13(const CMatrix& a) {
  static const double b[14] = {64764752532480000.0,
                               32382376266240000.0,
                               7771770303897600.0,
                               1187353796428800.0,
                               129060195264000.0,
                               10559470521600.0,
                               670442572800.0,
                               33522128640.0,
                               1323241920.0,
                               40840800.0,
                               960960.0,
                               16380.0,
                               182.0,
                               1.0};
  const std::size_t n = a.rows();
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a2 * a4;

  CMatrix w = CMatrix(n, n);
  w += a6;
  w *= cplx(b[13]);
  CMatrix t = a4;
  t *= cplx(b[11]);
  w += t;
  t = a2;
  t *= cplx(b[9]);
  w += t;
  CMatrix u = a6 * w;
  t = a6;
  t *= cplx(b[7]);
  u += t;
  t = a4;
  t *= cplx(b[5]);
  u += t;
  t = a2;
  t *= cplx(b[3]);
  u += t;
  t = CMatrix::identity(n);
  t *= cplx(b[1]);
  u += t;
  u = a * u;

  w = CMatrix(n, n);
  w += a6;
  w *= cplx(b[12]);
  t = a4;
  t *= cplx(b[10]);
  w += t;
  t = a2;
  t *= cplx(b[8]);
  w += t;
  CMatrix v = a6 * w;
  t = a6;
  t *= cplx(b[6]);
  v += t;
  t = a4;
  t *= cplx(b[4]);
  v += t;
  t = a2;
  t *= cplx(b[2]);
  v += t;
  t = CMatrix::identity(n);
  t *= cplx(b[0]);
  v += t;

  return pade_solve(std::move(u), std::move(v));
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: not square");
  if (!a.all_finite()) throw std::invalid_argument("expm: non-finite entries");
  const double nrm = a.one_norm();

  if (nrm <= kTheta9) {
    static const std::vector<double> b3 = {120.0, 60.0, 12.0, 1.0};
    static const std::vector<double> b5 = {30240.0, 15120.0, 3360.0,
                                           420.0,   30.0,    1.0};
    static const std::vector<double> b7 = {17297280.0, 8648640.0, 1995840.0,
                                           277200.0,   25200.0,   1512.0,
                                           56.0,       1.0};
    static const std::vector<double> b9 = {
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0,     110880.0,     3960.0,       90.0,        1.0};
    const std::vector<double>* b = &b9;
    if (nrm <= kTheta3)
      b = &b3;
    else if (nrm <= kTheta5)
      b = &b5;
    else if (nrm <= kTheta7)
      b = &b7;
    CMatrix f = pade_low(a, *b);
    if (!f.all_finite()) throw std::runtime_error("expm: overflow");
    return f;
  }

  int s = 0;
  double scaled = nrm;
  while (scaled > kTheta13 && s < 64) {
    scaled *= 0.5;
    ++s;
  }
  if (scaled > kTheta13) throw std::runtime_error("expm: norm too large");
  CMatrix b = a;
  b *= cplx(std::ldexp(1.0, -s));
  CMatrix f = pade13(b);
  for (int i = 0; i < s; ++i) f = f * f;
  if (!f.all_finite()) throw std::runtime_error("expm: overflow");
  return f;
}

CMatrix expm(const CMatrix& a, double scale) {
  CMatrix b = a;
  b *= cplx(scale);
  return expm(b);
}

}  // namespace fockbench::linalg
