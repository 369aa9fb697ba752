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

#include <cstdint>
#include <span>
#include <vector>

#include "core/statevector.hpp"

namespace ngs {

// Dense reference path is limited to registers of this many qubits
// (a 2048 x 2048 complex matrix is 64 MiB).
inline constexpr unsigned kMaxDenseQubits = 11;

/// Square complex matrix in row-major order, used to cross-check the
/// in-place kernels.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static DenseMatrix identity(std::size_t dim);
  /// Column j has a single 1 in row mapping[j].
  static DenseMatrix from_permutation(std::span<const std::uint64_t> mapping);

  std::size_t dimension() const { return dim_; }
  Amplitude& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix transpose() const;

  /// Largest |(M M^dagger - I)_ij|. Work is proportional to the sum over
  /// columns of (nonzeros in column)^2, so sparse operators stay cheap.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-9) const { return unitarity_defect() <= tol; }

  double max_abs_deviation(const DenseMatrix& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Amplitude> data_;
};

/// amplitudes <- matrix * amplitudes. Throws ValidationError for a matrix that
/// is not unitary within 1e-9 and ConfigError for a dimension mismatch.
void apply_dense_unitary(Statevector& sv, const DenseMatrix& matrix);

/// Same product without the unitarity check.
void apply_dense_unchecked(Statevector& sv, const DenseMatrix& matrix);

// Full-register matrices equivalent to the kernels in statevector.hpp.
DenseMatrix phase_flip_matrix(unsigned num_qubits, const BitPredicate& marks,
                              const QubitSet& on);
DenseMatrix diffusion_matrix(unsigned num_qubits, const QubitSet& on);
DenseMatrix permutation_matrix(unsigned num_qubits, std::span<const std::uint64_t> mapping,
                               const QubitSet& on);

}  // namespace ngs
