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

#include "equitensor/tensor_product.hpp"

#include <cmath>
#include <sstream>

namespace equitensor {

namespace {

std::string describe_path(const Irreps& in1, const Irreps& in2, const Irreps& out,
                          const Instruction& ins) {
  return in1[ins.i_in1].str() + " x " + in2[ins.i_in2].str() + " -> " + out[ins.i_out].str();
}

int mode_weight_numel(ConnectionMode mode, int m1, int m2, int mout) {
  switch (mode) {
    case ConnectionMode::uvw:
      return m1 * m2 * mout;
    case ConnectionMode::uvu:
    case ConnectionMode::uvuv:
      return m1 * m2;
    case ConnectionMode::uuu:
      return m1;
  }
  return 0;
}

}  // namespace

std::string_view to_string(ConnectionMode mode) {
  switch (mode) {
    case ConnectionMode::uvw:
      return "uvw";
    case ConnectionMode::uvu:
      return "uvu";
    case ConnectionMode::uuu:
      return "uuu";
    case ConnectionMode::uvuv:
      return "uvuv";
  }
  return "uvw";
}

ConnectionMode parse_connection_mode(std::string_view name) {
  if (name == "uvw") return ConnectionMode::uvw;
  if (name == "uvu") return ConnectionMode::uvu;
  if (name == "uuu") return ConnectionMode::uuu;
  if (name == "uvuv") return ConnectionMode::uvuv;
  throw std::invalid_argument("unknown connection mode '" + std::string(name) +
                              "', expected uvw, uvu, uuu or uvuv");
}

double mode_normalization(ConnectionMode mode, int m1, int m2) {
  switch (mode) {
    case ConnectionMode::uvw:
      return m1 * m2 > 0 ? 1.0 / std::sqrt(double(m1) * m2) : 1.0;
    case ConnectionMode::uvu:
      return m2 > 0 ? 1.0 / std::sqrt(double(m2)) : 1.0;
    case ConnectionMode::uuu:
    case ConnectionMode::uvuv:
      return 1.0;
  }
  return 1.0;
}

ValidationReport validate(const Irreps& in1, const Irreps& in2, const Irreps& out,
                          const std::vector<Instruction>& instructions) {
  ValidationReport report;
  std::vector<int> incoming(out.size(), 0);
  for (std::size_t n = 0; n < instructions.size(); ++n) {
    const Instruction& ins = instructions[n];
    const std::string where = "instruction " + std::to_string(n) + ": ";
    auto in_range = [](int i, const Irreps& irreps) {
      return i >= 0 && static_cast<std::size_t>(i) < irreps.size();
    };
    bool indices_ok = true;
    if (!in_range(ins.i_in1, in1)) {
      report.errors.push_back(where + "i_in1=" + std::to_string(ins.i_in1) + " out of range");
      indices_ok = false;
    }
    if (!in_range(ins.i_in2, in2)) {
      report.errors.push_back(where + "i_in2=" + std::to_string(ins.i_in2) + " out of range");
      indices_ok = false;
    }
    if (!in_range(ins.i_out, out)) {
      report.errors.push_back(where + "i_out=" + std::to_string(ins.i_out) + " out of range");
      indices_ok = false;
    }
    if (!indices_ok) continue;
    ++incoming[static_cast<std::size_t>(ins.i_out)];

    const MulIrrep& a = in1[ins.i_in1];
    const MulIrrep& b = in2[ins.i_in2];
    const MulIrrep& c = out[ins.i_out];
    const std::string path = describe_path(in1, in2, out, ins);
    if (c.ir.l < std::abs(a.ir.l - b.ir.l) || c.ir.l > a.ir.l + b.ir.l) {
      report.errors.push_back(where + path + ": l out of range, need |l1-l2| <= l3 <= l1+l2");
    }
    if (c.ir.p != a.ir.p * b.ir.p) {
      report.errors.push_back(where + path + ": parity mismatch, p1*p2 = " +
                              std::string(a.ir.p * b.ir.p == 1 ? "e" : "o"));
    }
    switch (ins.mode) {
      case ConnectionMode::uvw:
        break;
      case ConnectionMode::uvu:
        if (c.mul != a.mul) report.errors.push_back(where + "uvu requires mul_out == mul_in1");
        break;
      case ConnectionMode::uuu:
        if (a.mul != b.mul || a.mul != c.mul) {
          report.errors.push_back(where + "uuu requires mul_in1 == mul_in2 == mul_out");
        }
        break;
      case ConnectionMode::uvuv:
        if (c.mul != a.mul * b.mul) {
          report.errors.push_back(where + "uvuv requires mul_out == mul_in1 * mul_in2");
        }
        break;
    }
    if (ins.path_weight && !std::isfinite(*ins.path_weight)) {
      report.errors.push_back(where + "path_weight is not finite");
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (incoming[i] == 0) {
      report.warnings.push_back("output " + std::to_string(i) + " (" + out[i].str() +
                                ") has no incoming path and is always zero");
    }
  }
  return report;
}

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

SpecError::SpecError(ValidationReport report)
    : std::invalid_argument("invalid tensor product spec:" + join_lines(report.errors)),
      report_(std::move(report)) {}

TensorProductSpec::TensorProductSpec(Irreps in1, Irreps in2, Irreps out,
                                     std::vector<Instruction> instructions)
    : in1_(std::move(in1)), in2_(std::move(in2)), out_(std::move(out)),
      instructions_(std::move(instructions)) {
  ValidationReport report = validate(in1_, in2_, out_, instructions_);
  if (!report.ok()) throw SpecError(std::move(report));
  warnings_ = std::move(report.warnings);

  paths_into_.assign(out_.size(), 0);
  for (const auto& ins : instructions_) ++paths_into_[static_cast<std::size_t>(ins.i_out)];

  weight_offsets_.assign(1, 0);
  for (auto& ins : instructions_) {
    const MulIrrep& a = in1_[ins.i_in1];
    const MulIrrep& b = in2_[ins.i_in2];
    const MulIrrep& c = out_[ins.i_out];
    if (!ins.path_weight) {
      ins.path_weight = mode_normalization(ins.mode, a.mul, b.mul) /
                        std::sqrt(double(paths_into_[static_cast<std::size_t>(ins.i_out)]));
    }
    const int n = ins.has_weight ? mode_weight_numel(ins.mode, a.mul, b.mul, c.mul) : 0;
    weight_offsets_.push_back(weight_offsets_.back() + n);
    cg_.push_back(cg_entries(a.ir.l, b.ir.l, c.ir.l, std::sqrt(2.0 * c.ir.l + 1.0)));
  }
  off1_ = in1_.offsets();
  off2_ = in2_.offsets();
  off_out_ = out_.offsets();
}

int TensorProductSpec::instruction_weight_numel(std::size_t i) const {
  return weight_offsets_[i + 1] - weight_offsets_[i];
}

Vector TensorProductSpec::evaluate(std::span<const double> weights,
                                   const Eigen::Ref<const Vector>& x1,
                                   const Eigen::Ref<const Vector>& x2) const {
  if (x1.size() != in1_.dim() || x2.size() != in2_.dim()) {
    throw std::invalid_argument("tensor product input dimension mismatch: got " +
                                std::to_string(x1.size()) + " and " + std::to_string(x2.size()) +
                                ", expected " + std::to_string(in1_.dim()) + " and " +
                                std::to_string(in2_.dim()));
  }
  if (weights.size() != static_cast<std::size_t>(weight_numel())) {
    throw std::invalid_argument("expected " + std::to_string(weight_numel()) + " weights, got " +
                                std::to_string(weights.size()));
  }
  Vector out = Vector::Zero(out_.dim());
  Vector t;
  for (std::size_t n = 0; n < instructions_.size(); ++n) {
    const Instruction& ins = instructions_[n];
    const MulIrrep& a = in1_[ins.i_in1];
    const MulIrrep& b = in2_[ins.i_in2];
    const MulIrrep& c = out_[ins.i_out];
    const int n1 = a.ir.dim(), n2 = b.ir.dim(), n3 = c.ir.dim();
    const double* w = weights.data() + weight_offsets_[n];
    const double pw = *ins.path_weight;
    const auto& cg = cg_[n];
    const double* p1 = x1.data() + off1_[ins.i_in1];
    const double* p2 = x2.data() + off2_[ins.i_in2];
    double* po = out.data() + off_out_[ins.i_out];
    t.resize(n3);

    auto contract = [&](int u, int v) {
      t.setZero();
      const double* xu = p1 + u * n1;
      const double* xv = p2 + v * n2;
      for (const auto& e : cg) t[e.k] += e.value * xu[e.i] * xv[e.j];
    };

    switch (ins.mode) {
      case ConnectionMode::uvw:
        for (int u = 0; u < a.mul; ++u) {
          for (int v = 0; v < b.mul; ++v) {
            contract(u, v);
            for (int ww = 0; ww < c.mul; ++ww) {
              const double coef = pw * (ins.has_weight ? w[(u * b.mul + v) * c.mul + ww] : 1.0);
              for (int k = 0; k < n3; ++k) po[ww * n3 + k] += coef * t[k];
            }
          }
        }
        break;
      case ConnectionMode::uvu:
        for (int u = 0; u < a.mul; ++u) {
          for (int v = 0; v < b.mul; ++v) {
            contract(u, v);
            const double coef = pw * (ins.has_weight ? w[u * b.mul + v] : 1.0);
            for (int k = 0; k < n3; ++k) po[u * n3 + k] += coef * t[k];
          }
        }
        break;
      case ConnectionMode::uuu:
        for (int u = 0; u < a.mul; ++u) {
          contract(u, u);
          const double coef = pw * (ins.has_weight ? w[u] : 1.0);
          for (int k = 0; k < n3; ++k) po[u * n3 + k] += coef * t[k];
        }
        break;
      case ConnectionMode::uvuv:
        for (int u = 0; u < a.mul; ++u) {
          for (int v = 0; v < b.mul; ++v) {
            contract(u, v);
            const double coef = pw * (ins.has_weight ? w[u * b.mul + v] : 1.0);
            for (int k = 0; k < n3; ++k) po[(u * b.mul + v) * n3 + k] += coef * t[k];
          }
        }
        break;
    }
  }
  return out;
}

std::string TensorProductSpec::describe() const {
  std::ostringstream os;
  os << in1_.str() << " x " << in2_.str() << " -> " << out_.str() << "\n";
  for (std::size_t n = 0; n < instructions_.size(); ++n) {
    const Instruction& ins = instructions_[n];
    os << "  " << n << ": [" << ins.i_in1 << "," << ins.i_in2 << "->" << ins.i_out << "] "
       << describe_path(in1_, in2_, out_, ins) << "  " << to_string(ins.mode)
       << "  weights=" << instruction_weight_numel(n) << "  path_weight=" << *ins.path_weight
       << "\n";
  }
  os << "paths: " << instructions_.size() << ", weights: " << weight_numel();
  return os.str();
}

TensorProductSpec fully_connected(const Irreps& in1, const Irreps& in2, const Irreps& out) {
  std::vector<Instruction> instructions;
  for (std::size_t i1 = 0; i1 < in1.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < in2.size(); ++i2) {
      for (std::size_t io = 0; io < out.size(); ++io) {
        if (path_allowed(in1[i1].ir, in2[i2].ir, out[io].ir)) {
          instructions.push_back(Instruction{static_cast<int>(i1), static_cast<int>(i2),
                                             static_cast<int>(io), ConnectionMode::uvw, true,
                                             std::nullopt});
        }
      }
    }
  }
  return TensorProductSpec(in1, in2, out, std::move(instructions));
}

TensorProductSpec full_tensor_product(const Irreps& in1, const Irreps& in2) {
  std::vector<MulIrrep> out;
  std::vector<Instruction> instructions;
  for (std::size_t i1 = 0; i1 < in1.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < in2.size(); ++i2) {
      for (const Irrep& ir : selection_rule(in1[i1].ir, in2[i2].ir)) {
        instructions.push_back(Instruction{static_cast<int>(i1), static_cast<int>(i2),
                                           static_cast<int>(out.size()), ConnectionMode::uvuv,
                                           false, std::nullopt});
        out.push_back(MulIrrep{in1[i1].mul * in2[i2].mul, ir});
      }
    }
  }
  return TensorProductSpec(in1, in2, Irreps(std::move(out)), std::move(instructions));
}

TensorProductSpec tensor_square(const Irreps& irreps) { return full_tensor_product(irreps, irreps); }

namespace {

TensorProductSpec linear_spec(const Irreps& in, const Irreps& out) {
  const Irreps scalar{MulIrrep{1, Irrep{0, 1}}};
  std::vector<Instruction> instructions;
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (std::size_t o = 0; o < out.size(); ++o) {
      if (in[i].ir == out[o].ir) {
        instructions.push_back(Instruction{static_cast<int>(i), 0, static_cast<int>(o),
                                           ConnectionMode::uvw, true, std::nullopt});
      }
    }
  }
  return TensorProductSpec(in, scalar, out, std::move(instructions));
}

}  // namespace

Linear::Linear(const Irreps& in, const Irreps& out) : tp_(linear_spec(in, out)) {}

Vector Linear::evaluate(std::span<const double> weights, const Eigen::Ref<const Vector>& x) const {
  return tp_.evaluate(weights, x, Vector::Ones(1));
}

Linear linear(const Irreps& in, const Irreps& out) { return Linear(in, out); }

}  // namespace equitensor
