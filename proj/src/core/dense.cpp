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

#include "core/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "core/errors.hpp"

namespace ngs {

namespace {

void check_dense_size(unsigned num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw ConfigError("dense path supports at most " + std::to_string(kMaxDenseQubits) +
                      " qubits, got " + std::to_string(num_qubits));
  }
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_permutation(std::span<const std::uint64_t> mapping) {
  DenseMatrix m(mapping.size());
  std::vector<char> seen(mapping.size(), 0);
  for (std::size_t col = 0; col < mapping.size(); ++col) {
    const auto row = mapping[col];
    if (row >= mapping.size() || seen[row]) throw ValidationError("mapping is not a bijection");
    seen[row] = 1;
    m(row, col) = 1.0;
  }
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw ConfigError("matrix dimensions differ");
  DenseMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Amplitude a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

double DenseMatrix::unitarity_defect() const {
  // (M M^dagger)_ij = sum_k M_ik conj(M_jk): accumulate per column k over the
  // pairs of rows that are nonzero in that column. Small matrices use a dense
  // accumulator, large (sparse) ones a hash map.
  const bool dense_gram = dim_ <= 256;
  std::vector<Amplitude> gram_dense(dense_gram ? dim_ * dim_ : 0);
  std::unordered_map<std::uint64_t, Amplitude> gram_sparse;
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < dim_; ++k) {
    rows.clear();
    for (std::size_t i = 0; i < dim_; ++i) {
      if ((*this)(i, k) != 0.0) rows.push_back(i);
    }
    for (std::size_t i : rows) {
      const Amplitude mik = (*this)(i, k);
      for (std::size_t j : rows) {
        const Amplitude term = mik * std::conj((*this)(j, k));
        if (dense_gram) {
          gram_dense[i * dim_ + j] += term;
        } else {
          gram_sparse[i * dim_ + j] += term;
        }
      }
    }
  }
  double defect = 0.0;
  if (dense_gram) {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        defect = std::max(defect, std::abs(gram_dense[i * dim_ + j] - (i == j ? 1.0 : 0.0)));
      }
    }
    return defect;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    auto it = gram_sparse.find(i * dim_ + i);
    const Amplitude d = it == gram_sparse.end() ? Amplitude(0.0) : it->second;
    defect = std::max(defect, std::abs(d - 1.0));
  }
  for (const auto& [key, value] : gram_sparse) {
    if (key / dim_ != key % dim_) defect = std::max(defect, std::abs(value));
  }
  return defect;
}

double DenseMatrix::max_abs_deviation(const DenseMatrix& other) const {
  if (dim_ != other.dim_) throw ConfigError("matrix dimensions differ");
  double dev = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    dev = std::max(dev, std::abs(data_[i] - other.data_[i]));
  }
  return dev;
}

void apply_dense_unchecked(Statevector& sv, const DenseMatrix& matrix) {
  if (matrix.dimension() != sv.dimension()) {
    throw ConfigError("matrix dimension " + std::to_string(matrix.dimension()) +
                      " does not match state dimension " + std::to_string(sv.dimension()));
  }
  auto amps = sv.amplitudes();
  std::vector<Amplitude> out(amps.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Amplitude acc = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) acc += matrix(i, j) * amps[j];
    out[i] = acc;
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_dense_unitary(Statevector& sv, const DenseMatrix& matrix) {
  if (matrix.dimension() != sv.dimension()) {
    throw ConfigError("matrix dimension " + std::to_string(matrix.dimension()) +
                      " does not match state dimension " + std::to_string(sv.dimension()));
  }
  const double defect = matrix.unitarity_defect();
  if (defect > 1e-9) {
    throw ValidationError("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  apply_dense_unchecked(sv, matrix);
}

DenseMatrix phase_flip_matrix(unsigned num_qubits, const BitPredicate& marks,
                              const QubitSet& on) {
  check_dense_size(num_qubits);
  on.check_within(num_qubits);
  DenseMatrix m(std::size_t{1} << num_qubits);
  for (std::size_t i = 0; i < m.dimension(); ++i) m(i, i) = marks(on.gather(i)) ? -1.0 : 1.0;
  return m;
}

DenseMatrix diffusion_matrix(unsigned num_qubits, const QubitSet& on) {
  check_dense_size(num_qubits);
  if (on.empty()) throw ConfigError("diffusion needs at least one qubit");
  on.check_within(num_qubits);
  const std::uint64_t rest = ~on.mask();
  const double two_over_d = 2.0 / static_cast<double>(std::size_t{1} << on.size());
  DenseMatrix m(std::size_t{1} << num_qubits);
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    for (std::size_t j = 0; j < m.dimension(); ++j) {
      if ((i & rest) != (j & rest)) continue;
      m(i, j) = two_over_d - (i == j ? 1.0 : 0.0);
    }
  }
  return m;
}

DenseMatrix permutation_matrix(unsigned num_qubits, std::span<const std::uint64_t> mapping,
                               const QubitSet& on) {
  check_dense_size(num_qubits);
  on.check_within(num_qubits);
  if (mapping.size() != (std::size_t{1} << on.size())) {
    throw ConfigError("permutation size does not match the qubit set");
  }
  const std::uint64_t mask = on.mask();
  std::vector<std::uint64_t> full(std::size_t{1} << num_qubits);
  for (std::uint64_t i = 0; i < full.size(); ++i) {
    full[i] = (i & ~mask) | on.scatter(mapping[on.gather(i)]);
  }
  return DenseMatrix::from_permutation(full);
}

}  // namespace ngs
