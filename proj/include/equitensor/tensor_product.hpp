/* Copyright 2026 The equitensor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "equitensor/clebsch_gordan.hpp"
#include "equitensor/irreps.hpp"
#include "equitensor/linalg.hpp"

namespace equitensor {

/// Weight sharing pattern of one path. With u, v, w running over the
/// multiplicities of input 1, input 2 and the output:
///   uvw   out[w] = sum_{u,v} W[u,v,w] (x1[u] (x) x2[v])   weights m1*m2*mout
///   uvu   out[u] = sum_v   W[u,v]   (x1[u] (x) x2[v])   requires mout = m1, weights m1*m2
///   uuu   out[u] = W[u] (x1[u] (x) x2[u])               requires m1 = m2 = mout, weights m
///   uvuv  out[u*m2+v] = W[u,v] (x1[u] (x) x2[v])        requires mout = m1*m2, weights m1*m2
enum class ConnectionMode { uvw, uvu, uuu, uvuv };

std::string_view to_string(ConnectionMode mode);
ConnectionMode parse_connection_mode(std::string_view name);

/// One path (i_in1, i_in2) -> i_out. `path_weight` is filled in by
/// TensorProductSpec when left empty (mode normalization times
/// sqrt(1 / number of paths into i_out)).
struct Instruction {
  int i_in1 = 0;
  int i_in2 = 0;
  int i_out = 0;
  ConnectionMode mode = ConnectionMode::uvw;
  bool has_weight = true;
  std::optional<double> path_weight;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

/// Checks index ranges, the selection rule and the mode multiplicity
/// constraints; output entries with no incoming path produce a warning.
ValidationReport validate(const Irreps& in1, const Irreps& in2, const Irreps& out,
                          const std::vector<Instruction>& instructions);

/// Raised when a tensor product spec fails validation; carries the full report.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Validated bilinear equivariant map between two irreps lists.
///
/// The weight vector is the concatenation of one segment per weighted
/// instruction, in instruction order, each segment row-major over (u, v, w)
/// for uvw, (u, v) for uvu and uvuv, and u for uuu.
///
/// Each path contracts the inputs with the Clebsch-Gordan block scaled by
/// sqrt(2 l_out + 1), which makes the (l1 x l2 -> all l_out) change of basis
/// orthogonal. Paths are multiplied by their path_weight and summed.
class TensorProductSpec {
 public:
  TensorProductSpec(Irreps in1, Irreps in2, Irreps out, std::vector<Instruction> instructions);

  const Irreps& irreps_in1() const noexcept { return in1_; }
  const Irreps& irreps_in2() const noexcept { return in2_; }
  const Irreps& irreps_out() const noexcept { return out_; }
  const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  int weight_numel() const noexcept { return weight_offsets_.back(); }
  /// Number of weights consumed by instruction `i` (0 if unweighted).
  int instruction_weight_numel(std::size_t i) const;
  /// Start of instruction `i`'s weight segment.
  int weight_offset(std::size_t i) const { return weight_offsets_[i]; }
  int num_paths_into(int i_out) const { return paths_into_[static_cast<std::size_t>(i_out)]; }

  /// out = sum of paths; x1, x2 laid out per the input irreps.
  Vector evaluate(std::span<const double> weights, const Eigen::Ref<const Vector>& x1,
                  const Eigen::Ref<const Vector>& x2) const;
  Vector evaluate(const Vector& weights, const Eigen::Ref<const Vector>& x1,
                  const Eigen::Ref<const Vector>& x2) const {
    return evaluate(std::span<const double>(weights.data(), weights.size()), x1, x2);
  }

  /// Human readable path table, one line per instruction.
  std::string describe() const;

 private:
  Irreps in1_, in2_, out_;
  std::vector<Instruction> instructions_;
  std::vector<std::string> warnings_;
  std::vector<int> paths_into_;
  std::vector<int> weight_offsets_;
  std::vector<std::vector<CGEntry>> cg_;
  std::vector<int> off1_, off2_, off_out_;
};

/// Mode normalization: uvw 1/sqrt(m1 m2), uvu 1/sqrt(m2), uuu and uvuv 1.
double mode_normalization(ConnectionMode mode, int m1, int m2);

/// Every allowed (i1, i2, i_out) triple as a weighted uvw path.
TensorProductSpec fully_connected(const Irreps& in1, const Irreps& in2, const Irreps& out);

/// The complete bilinear product x (x) y: for every input pair and every allowed
/// output irrep, one unweighted uvuv path into its own output entry of
/// multiplicity m1*m2. Output entries are ordered by (i1, i2, l_out).
TensorProductSpec full_tensor_product(const Irreps& in1, const Irreps& in2);

/// full_tensor_product(irreps, irreps). The symmetric/antisymmetric duplicate
/// paths are kept.
TensorProductSpec tensor_square(const Irreps& irreps);

/// Equivariant linear map: weighted mixing between entries with equal irreps,
/// out[w] = 1/sqrt(m_in) sum_u W[u,w] in[u] for a single feeding entry.
/// Implemented as a uvw product with a constant 1x0e second input.
class Linear {
 public:
  Linear(const Irreps& in, const Irreps& out);

  const Irreps& irreps_in() const noexcept { return tp_.irreps_in1(); }
  const Irreps& irreps_out() const noexcept { return tp_.irreps_out(); }
  int weight_numel() const noexcept { return tp_.weight_numel(); }
  const std::vector<std::string>& warnings() const noexcept { return tp_.warnings(); }
  const TensorProductSpec& spec() const noexcept { return tp_; }

  Vector evaluate(std::span<const double> weights, const Eigen::Ref<const Vector>& x) const;
  Vector evaluate(const Vector& weights, const Eigen::Ref<const Vector>& x) const {
    return evaluate(std::span<const double>(weights.data(), weights.size()), x);
  }

 private:
  TensorProductSpec tp_;
};

Linear linear(const Irreps& in, const Irreps& out);

/// JSON form: {"irreps_in1", "irreps_in2", "irreps_out", "instructions": [{"i_in1",
/// "i_in2", "i_out", "mode", "has_weight", "path_weight"}]}. When "instructions"
/// is absent the spec is fully connected.
std::string to_json(const TensorProductSpec& spec);
TensorProductSpec tensor_product_from_json(std::string_view text);

}  // namespace equitensor
