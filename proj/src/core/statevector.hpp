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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ngs {

using Amplitude = std::complex<double>;

// Largest register the simulator will allocate (2^20 complex doubles).
inline constexpr unsigned kMaxQubits = 20;

// Reads a bit pattern gathered from a QubitSet: bit i of the argument is the
// value of the i-th qubit of the set.
using BitPredicate = std::function<bool(std::uint64_t)>;

// Basis index -> number of shots that produced it.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Ordered set of distinct qubit indices. Qubit q is bit q of a basis index.
class QubitSet {
 public:
  QubitSet() = default;
  explicit QubitSet(std::vector<unsigned> indices);
  QubitSet(std::initializer_list<unsigned> indices)
      : QubitSet(std::vector<unsigned>(indices)) {}

  /// Qubits [lo, hi).
  static QubitSet range(unsigned lo, unsigned hi);
  static QubitSet unite(const QubitSet& a, const QubitSet& b);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  unsigned operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<unsigned>& indices() const { return indices_; }

  bool contains(unsigned qubit) const;
  std::uint64_t mask() const;
  QubitSet complement(unsigned num_qubits) const;

  // Compresses the bits of `index` selected by this set into a local pattern.
  std::uint64_t gather(std::uint64_t index) const;
  // Inverse of gather on the selected bits; other bits are zero.
  std::uint64_t scatter(std::uint64_t local) const;

  // Throws ConfigError if any index is >= num_qubits.
  void check_within(unsigned num_qubits) const;

  friend bool operator==(const QubitSet&, const QubitSet&) = default;

 private:
  std::vector<unsigned> indices_;
};

/// A basis state written as a fixed-width bit string. Text form is MSB-left:
/// the leftmost character is qubit width-1, the rightmost is qubit 0.
struct BasisLabel {
  std::uint64_t value = 0;
  unsigned width = 0;

  static BasisLabel parse(std::string_view bits);
  static BasisLabel of(std::uint64_t value, unsigned width);
  std::string to_string() const;
  bool bit(unsigned qubit) const { return ((value >> qubit) & 1u) != 0; }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_bitstring(std::uint64_t value, unsigned width);

class Statevector {
 public:
  /// Uniform superposition over m qubits, every amplitude 2^(-m/2).
  static Statevector uniform(unsigned num_qubits);
  static Statevector basis(unsigned num_qubits, std::uint64_t index);
  /// Takes ownership of amplitudes; the length must be a power of two and the
  /// vector must be normalized within 1e-9.
  static Statevector from_amplitudes(std::vector<Amplitude> amplitudes);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const;

 private:
  Statevector(unsigned num_qubits, std::vector<Amplitude> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  unsigned num_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

inline Statevector init_uniform(unsigned num_qubits) {
  return Statevector::uniform(num_qubits);
}

/// Negates every amplitude whose bits on `on` satisfy `marks`.
void apply_phase_flip(Statevector& sv, const BitPredicate& marks, const QubitSet& on);

/// Inversion about the mean of the sub-vector over `on`, independently for
/// each assignment of the remaining qubits: (2|s><s| - I) on `on`, identity
/// elsewhere.
void apply_diffusion(Statevector& sv, const QubitSet& on);

/// Relabels basis states: the local pattern p on `on` becomes mapping[p].
/// `mapping` must be a bijection on [0, 2^|on|).
void apply_permutation(Statevector& sv, std::span<const std::uint64_t> mapping,
                       const QubitSet& on);

struct Control {
  unsigned qubit = 0;
  bool on_one = true;  // false: fires when the qubit is |0>
};

/// Multi-controlled X; an empty control list is a plain X.
void apply_controlled_x(Statevector& sv, std::span<const Control> controls,
                        unsigned target);

std::vector<double> probabilities(const Statevector& sv);

/// Probability distribution of the pattern on `part`.
std::vector<double> marginal_probabilities(const Statevector& sv, const QubitSet& part);

/// Multinomial draw of `shots` basis indices. Pure function of its arguments.
Histogram sample(const Statevector& sv, std::uint64_t shots, std::uint64_t seed);

/// Tr(rho^2) of the reduced density matrix on `part`. 1 exactly for product
/// states across the (part, complement) cut.
double partition_purity(const Statevector& sv, const QubitSet& part);

// Purity at or above this value counts as a product state.
inline constexpr double kProductPurity = 1.0 - 1e-9;

double max_abs_deviation(const Statevector& a, const Statevector& b);

}  // namespace ngs
