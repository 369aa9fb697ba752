// Copyright 2026 The nestedgrover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Naive reference simulator used as an independent oracle in tests. It works
// on plain amplitude vectors and shares no code with the library kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace ngs_test {

using Amp = std::complex<double>;
using Vec = std::vector<Amp>;

inline Vec uniform(unsigned n) {
  const std::size_t dim = std::size_t{1} << n;
  return Vec(dim, Amp(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

inline std::uint64_t pick(std::uint64_t index, const std::vector<unsigned>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) out |= ((index >> qubits[j]) & 1u) << j;
  return out;
}

inline void flip(Vec& a, const std::vector<unsigned>& qubits,
                 const std::function<bool(std::uint64_t)>& marked) {
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (marked(pick(i, qubits))) a[i] = -a[i];
  }
}

// Inversion about the mean, independently within each assignment of the
// qubits outside `qubits`.
inline void diffuse(Vec& a, const std::vector<unsigned>& qubits) {
  std::uint64_t mask = 0;
  for (unsigned q : qubits) mask |= std::uint64_t{1} << q;
  std::vector<Amp> sum(a.size(), 0.0);
  std::vector<double> count(a.size(), 0.0);
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    sum[i & ~mask] += a[i];
    count[i & ~mask] += 1.0;
  }
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const Amp mean = sum[i & ~mask] / count[i & ~mask];
    a[i] = 2.0 * mean - a[i];
  }
}

inline std::vector<unsigned> range(unsigned lo, unsigned hi) {
  std::vector<unsigned> out;
  for (unsigned q = lo; q < hi; ++q) out.push_back(q);
  return out;
}

// Tr(rho_A^2) from the explicit reduced density matrix on `part`.
inline double purity(const Vec& a, unsigned n, const std::vector<unsigned>& part) {
  std::vector<unsigned> rest;
  for (unsigned q = 0; q < n; ++q) {
    bool in = false;
    for (unsigned p : part) in = in || p == q;
    if (!in) rest.push_back(q);
  }
  const std::size_t da = std::size_t{1} << part.size();
  const std::size_t db = std::size_t{1} << rest.size();
  std::vector<Vec> psi(da, Vec(db));
  for (std::uint64_t i = 0; i < a.size(); ++i) psi[pick(i, part)][pick(i, rest)] = a[i];
  double total = 0.0;
  for (std::size_t x = 0; x < da; ++x) {
    for (std::size_t y = 0; y < da; ++y) {
      Amp rho = 0.0;
      for (std::size_t b = 0; b < db; ++b) rho += psi[x][b] * std::conj(psi[y][b]);
      total += std::norm(rho);
    }
  }
  return total;
}

// sin^2((2r + 1) theta), sin theta = sqrt(k / n).
inline double grover_law(double n, double k, double r) {
  const double s = std::sin((2.0 * r + 1.0) * std::asin(std::sqrt(k / n)));
  return s * s;
}

inline std::uint64_t grover_rounds(double n, double k) {
  return static_cast<std::uint64_t>(std::floor(std::acos(-1.0) / 4.0 * std::sqrt(n / k)));
}

}  // namespace ngs_test
