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

#include "core/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "core/errors.hpp"

namespace ngs {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> scatter_table(const QubitSet& set) {
  std::vector<std::uint64_t> table(std::size_t{1} << set.size());
  for (std::uint64_t p = 0; p < table.size(); ++p) table[p] = set.scatter(p);
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitSet

QubitSet::QubitSet(std::vector<unsigned> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw ConfigError("qubit set must be strictly increasing");
    }
  }
  if (!indices_.empty() && indices_.back() >= 64) {
    throw ConfigError("qubit index out of range");
  }
}

QubitSet QubitSet::range(unsigned lo, unsigned hi) {
  std::vector<unsigned> v;
  for (unsigned q = lo; q < hi; ++q) v.push_back(q);
  return QubitSet(std::move(v));
}

QubitSet QubitSet::unite(const QubitSet& a, const QubitSet& b) {
  std::vector<unsigned> v;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return QubitSet(std::move(v));
}

bool QubitSet::contains(unsigned qubit) const {
  return std::binary_search(indices_.begin(), indices_.end(), qubit);
}

std::uint64_t QubitSet::mask() const {
  std::uint64_t m = 0;
  for (unsigned q : indices_) m |= std::uint64_t{1} << q;
  return m;
}

QubitSet QubitSet::complement(unsigned num_qubits) const {
  std::vector<unsigned> v;
  for (unsigned q = 0; q < num_qubits; ++q) {
    if (!contains(q)) v.push_back(q);
  }
  return QubitSet(std::move(v));
}

std::uint64_t QubitSet::gather(std::uint64_t index) const {
  std::uint64_t local = 0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    local |= ((index >> indices_[i]) & 1u) << i;
  }
  return local;
}

std::uint64_t QubitSet::scatter(std::uint64_t local) const {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    index |= ((local >> i) & 1u) << indices_[i];
  }
  return index;
}

void QubitSet::check_within(unsigned num_qubits) const {
  if (!indices_.empty() && indices_.back() >= num_qubits) {
    throw ConfigError("qubit " + std::to_string(indices_.back()) +
                      " outside a register of " + std::to_string(num_qubits) +
                      " qubits");
  }
}

// ---------------------------------------------------------------------------
// BasisLabel

std::string to_bitstring(std::uint64_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned q = 0; q < width; ++q) {
    if ((value >> q) & 1u) s[width - 1 - q] = '1';
  }
  return s;
}

BasisLabel BasisLabel::parse(std::string_view bits) {
  if (bits.size() > 64) throw ConfigError("bit string longer than 64 bits");
  BasisLabel label;
  label.width = static_cast<unsigned>(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ConfigError("invalid bit string '" + std::string(bits) + "'");
    }
    label.value = (label.value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return label;
}

BasisLabel BasisLabel::of(std::uint64_t value, unsigned width) {
  if (width > 64 || (width < 64 && (value >> width) != 0)) {
    throw ConfigError("value " + std::to_string(value) + " does not fit in " +
                      std::to_string(width) + " bits");
  }
  return BasisLabel{value, width};
}

std::string BasisLabel::to_string() const { return to_bitstring(value, width); }

// ---------------------------------------------------------------------------
// Statevector

Statevector Statevector::uniform(unsigned num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ConfigError("qubit count " + std::to_string(num_qubits) +
                      " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  const double a = std::pow(2.0, -0.5 * num_qubits);
  return Statevector(num_qubits, std::vector<Amplitude>(dim, Amplitude(a, 0.0)));
}

Statevector Statevector::basis(unsigned num_qubits, std::uint64_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ConfigError("qubit count " + std::to_string(num_qubits) +
                      " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw ConfigError("basis index out of range");
  std::vector<Amplitude> amps(dim);
  amps[index] = 1.0;
  return Statevector(num_qubits, std::move(amps));
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw ConfigError("amplitude vector length must be a power of two >= 2");
  }
  const auto m = static_cast<unsigned>(std::countr_zero(dim));
  if (m > kMaxQubits) throw ConfigError("amplitude vector exceeds qubit cap");
  Statevector sv(m, std::move(amplitudes));
  if (std::abs(sv.norm() - 1.0) > 1e-9) {
    throw ValidationError("amplitude vector is not normalized");
  }
  return sv;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Kernels

void apply_phase_flip(Statevector& sv, const BitPredicate& marks, const QubitSet& on) {
  on.check_within(sv.num_qubits());
  std::vector<char> table(std::size_t{1} << on.size());
  for (std::uint64_t p = 0; p < table.size(); ++p) table[p] = marks(p) ? 1 : 0;
  auto amps = sv.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (table[on.gather(i)]) amps[i] = -amps[i];
  }
}

void apply_diffusion(Statevector& sv, const QubitSet& on) {
  if (on.empty()) throw ConfigError("diffusion needs at least one qubit");
  on.check_within(sv.num_qubits());
  const auto inner = scatter_table(on);
  const auto outer = scatter_table(on.complement(sv.num_qubits()));
  const double inv_dim = 1.0 / static_cast<double>(inner.size());
  auto amps = sv.amplitudes();
  for (std::uint64_t base : outer) {
    Amplitude sum = 0.0;
    for (std::uint64_t off : inner) sum += amps[base | off];
    const Amplitude twice_mean = 2.0 * sum * inv_dim;
    for (std::uint64_t off : inner) amps[base | off] = twice_mean - amps[base | off];
  }
}

void apply_permutation(Statevector& sv, std::span<const std::uint64_t> mapping,
                       const QubitSet& on) {
  on.check_within(sv.num_qubits());
  const std::size_t local_dim = std::size_t{1} << on.size();
  if (mapping.size() != local_dim) {
    throw ConfigError("permutation size does not match the qubit set");
  }
  std::vector<char> seen(local_dim, 0);
  for (std::uint64_t t : mapping) {
    if (t >= local_dim || seen[t]) throw ValidationError("mapping is not a bijection");
    seen[t] = 1;
  }
  const auto inner = scatter_table(on);
  const std::uint64_t mask = on.mask();
  auto amps = sv.amplitudes();
  std::vector<Amplitude> out(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    out[(i & ~mask) | inner[mapping[on.gather(i)]]] = amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_controlled_x(Statevector& sv, std::span<const Control> controls,
                        unsigned target) {
  if (target >= sv.num_qubits()) throw ConfigError("target qubit out of range");
  std::uint64_t cmask = 0;
  std::uint64_t cvalue = 0;
  for (const auto& c : controls) {
    if (c.qubit >= sv.num_qubits() || c.qubit == target) {
      throw ConfigError("invalid control qubit");
    }
    cmask |= std::uint64_t{1} << c.qubit;
    if (c.on_one) cvalue |= std::uint64_t{1} << c.qubit;
  }
  const std::uint64_t tbit = std::uint64_t{1} << target;
  auto amps = sv.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & tbit) == 0 && (i & cmask) == cvalue) std::swap(amps[i], amps[i | tbit]);
  }
}

std::vector<double> probabilities(const Statevector& sv) {
  std::vector<double> p(sv.dimension());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(sv[i]);
  return p;
}

std::vector<double> marginal_probabilities(const Statevector& sv, const QubitSet& part) {
  part.check_within(sv.num_qubits());
  std::vector<double> p(std::size_t{1} << part.size(), 0.0);
  for (std::uint64_t i = 0; i < sv.dimension(); ++i) p[part.gather(i)] += std::norm(sv[i]);
  return p;
}

Histogram sample(const Statevector& sv, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw ConfigError("shots must be >= 1");
  const auto p = probabilities(sv);
  std::vector<double> cumulative(p.size());
  std::partial_sum(p.begin(), p.end(), cumulative.begin());
  const double total = cumulative.back();
  std::mt19937_64 rng(seed);
  Histogram hist;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = unit_uniform(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // Zero-probability states never win: step back over flat plateaus.
    std::size_t idx = it == cumulative.end() ? cumulative.size() - 1
                                             : static_cast<std::size_t>(it - cumulative.begin());
    while (p[idx] == 0.0 && idx > 0) --idx;
    ++hist[idx];
  }
  return hist;
}

double partition_purity(const Statevector& sv, const QubitSet& part) {
  part.check_within(sv.num_qubits());
  if (part.empty() || part.size() >= sv.num_qubits()) {
    throw ConfigError("purity cut must leave qubits on both sides");
  }
  // Tr(rho_A^2) == Tr(rho_B^2): reduce onto the smaller side.
  QubitSet a = part;
  QubitSet b = part.complement(sv.num_qubits());
  if (a.size() > b.size()) std::swap(a, b);
  const auto a_off = scatter_table(a);
  const auto b_off = scatter_table(b);
  const std::size_t da = a_off.size();
  double purity = 0.0;
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = i; j < da; ++j) {
      Amplitude rho = 0.0;
      for (std::uint64_t off : b_off) {
        rho += sv[a_off[i] | off] * std::conj(sv[a_off[j] | off]);
      }
      purity += (i == j ? 1.0 : 2.0) * std::norm(rho);
    }
  }
  return purity;
}

double max_abs_deviation(const Statevector& a, const Statevector& b) {
  if (a.dimension() != b.dimension()) throw ConfigError("state dimensions differ");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

}  // namespace ngs
