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

#include <json.hpp>

#include "equitensor/tensor_product.hpp"

namespace equitensor {

using nlohmann::json;

std::string to_json(const TensorProductSpec& spec) {
  json j;
  j["irreps_in1"] = spec.irreps_in1().str();
  j["irreps_in2"] = spec.irreps_in2().str();
  j["irreps_out"] = spec.irreps_out().str();
  j["instructions"] = json::array();
  for (const auto& ins : spec.instructions()) {
    j["instructions"].push_back({{"i_in1", ins.i_in1},
                                 {"i_in2", ins.i_in2},
                                 {"i_out", ins.i_out},
                                 {"mode", std::string(to_string(ins.mode))},
                                 {"has_weight", ins.has_weight},
                                 {"path_weight", *ins.path_weight}});
  }
  j["weight_numel"] = spec.weight_numel();
  return j.dump(2);
}

TensorProductSpec tensor_product_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw std::invalid_argument("tensor product spec must be a JSON object");
  for (const char* field : {"irreps_in1", "irreps_in2", "irreps_out"}) {
    if (!j.contains(field) || !j[field].is_string()) {
      throw std::invalid_argument(std::string("missing string field '") + field + "'");
    }
  }
  const Irreps in1 = Irreps::parse(j["irreps_in1"].get<std::string>());
  const Irreps in2 = Irreps::parse(j["irreps_in2"].get<std::string>());
  const Irreps out = Irreps::parse(j["irreps_out"].get<std::string>());
  if (!j.contains("instructions")) return fully_connected(in1, in2, out);

  std::vector<Instruction> instructions;
  try {
    for (const auto& item : j.at("instructions")) {
      Instruction ins;
      ins.i_in1 = item.at("i_in1").get<int>();
      ins.i_in2 = item.at("i_in2").get<int>();
      ins.i_out = item.at("i_out").get<int>();
      ins.mode = parse_connection_mode(item.value("mode", std::string("uvw")));
      ins.has_weight = item.value("has_weight", true);
      if (item.contains("path_weight") && !item["path_weight"].is_null()) {
        ins.path_weight = item["path_weight"].get<double>();
      }
      instructions.push_back(ins);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instruction: ") + e.what());
  }
  return TensorProductSpec(in1, in2, out, std::move(instructions));
}

}  // namespace equitensor
