// Copyright 2026 The casimir-sphere Authors.
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

#include "casimir/series_fit.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

using Matrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;

Real parse_number(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const Real v = std::stold(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    const Real p = std::stold(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(s);
    const std::string qs = s.substr(slash + 1);
    const Real q = std::stold(qs, &used);
    if (used != qs.size()) throw std::invalid_argument(s);
    return p / q;
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse number '" + s + "' in grid specification");
  }
}

Quad quad_log(const Quad& v) { return boost::multiprecision::log(v); }

}  // namespace

std::vector<Real> SampleGrid::deltas() const {
  validate();
  const long n = std::lround(static_cast<double>((delta_max - delta_min) / step));
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long j = 0; j <= n; ++j) out.push_back(delta_min + static_cast<Real>(j) * step);
  return out;
}

void SampleGrid::validate() const {
  if (!(delta_min >= Real(1e-4)) || !(delta_max <= Real(0.5)) || !(delta_min < delta_max) ||
      !(step > 0)) {
    throw DomainError("sample grid must satisfy 1e-4 <= min < max <= 0.5 and step > 0");
  }
  const Real n = (delta_max - delta_min) / step;
  if (std::fabs(n - std::round(n)) > Real(1e-6) * std::max<Real>(1, n)) {
    throw DomainError("sample grid step must divide max - min");
  }
}

SampleGrid SampleGrid::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw DomainError("grid must be min:max:step, got '" + spec + "'");
  SampleGrid g;
  g.delta_min = parse_number(parts[0]);
  g.delta_max = parse_number(parts[1]);
  g.step = parse_number(parts[2]);
  g.validate();
  return g;
}

std::string SampleGrid::canonical() const {
  std::ostringstream os;
  os.precision(21);
  os << delta_min << ":" << delta_max << ":" << step;
  return os.str();
}

FitCoefficients fit_series(std::span<const Real> deltas, std::span<const Quad> values, int N,
                           const FitOptions& options) {
  if (N < 0) throw DomainError("fit order N must be >= 0");
  if (deltas.size() != values.size()) throw DomainError("fit needs one value per delta");
  const int m = static_cast<int>(deltas.size());
  const int p = 2 * N + 5;
  if (m < 2 * N + 6) {
    throw DomainError("fit of order " + std::to_string(N) + " needs at least " +
                      std::to_string(2 * N + 6) + " samples, got " + std::to_string(m));
  }
  if (!(options.alpha > 0)) throw DomainError("alpha must be positive");

  Matrix A(m, p);
  Vector v(m);
  for (int i = 0; i < m; ++i) {
    if (!(deltas[i] > 0)) throw DomainError("fit deltas must be positive");
    const Quad x = Quad(options.alpha) * Quad(deltas[i]);
    const Quad lx = quad_log(x);
    Quad pw = 1 / (x * x * x);
    for (int n = -3; n <= N; ++n) {
      A(i, n + 3) = pw;
      if (n >= 0) A(i, N + 4 + n) = pw * lx;
      pw *= x;
    }
    v(i) = values[i];
  }

  Vector scale(p);
  for (int j = 0; j < p; ++j) {
    scale(j) = A.col(j).norm();
    A.col(j) /= scale(j);
  }

  const Eigen::HouseholderQR<Matrix> qr(A);
  const Vector z = qr.solve(v);
  const Matrix R = qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();

  const Eigen::JacobiSVD<Matrix> svd(R);
  const auto& sv = svd.singularValues();
  const Quad cond = sv(p - 1) > 0 ? sv(0) / sv(p - 1) : Quad(std::numeric_limits<double>::infinity());

  FitCoefficients f;
  f.N = N;
  f.alpha = options.alpha;
  f.samples = m;
  f.condition = static_cast<Real>(cond);
  if (f.condition > options.max_condition) {
    std::ostringstream os;
    os << "fit of order " << N << " has condition number " << static_cast<double>(f.condition)
       << " above " << static_cast<double>(options.max_condition);
    throw IllConditioned(os.str());
  }

  const Vector resid = v - A * z;
  f.residual_norm = static_cast<Real>(resid.norm());

  // cov(z) = s^2 (R^T R)^{-1}; only the a_0 diagonal entry is needed.
  const Matrix Rinv =
      R.template triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
  const int i0 = 3;
  const Quad var_unit = Rinv.row(i0).squaredNorm();
  const Quad s2 = m > p ? resid.squaredNorm() / Quad(m - p) : Quad(0);
  f.a0_stderr = static_cast<Real>(boost::multiprecision::sqrt(s2 * var_unit) / scale(i0));

  for (int j = 0; j < p; ++j) {
    const Real c = static_cast<Real>(z(j) / scale(j));
    if (j < N + 4) {
      f.a.push_back(c);
    } else {
      f.b.push_back(c);
    }
  }
  f.a0 = f.a_n(0);
  return f;
}

FitCoefficients fit_series(const std::vector<StressSample>& samples, int N,
                           const FitOptions& options) {
  std::vector<Real> d;
  std::vector<Quad> v;
  for (const auto& s : samples) {
    d.push_back(s.delta);
    v.emplace_back(s.value);
  }
  return fit_series(d, v, N, options);
}

Quad evaluate_series(const FitCoefficients& fit, Real delta) {
  const Quad x = Quad(fit.alpha) * Quad(delta);
  const Quad lx = quad_log(x);
  Quad pw = 1 / (x * x * x);
  Quad sum = 0;
  for (int n = -3; n <= fit.N; ++n) {
    sum += Quad(fit.a_n(n)) * pw;
    if (n >= 0) sum += Quad(fit.b_n(n)) * pw * lx;
    pw *= x;
  }
  return sum;
}

}  // namespace casimir
