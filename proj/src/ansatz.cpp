// Copyright 2026 The qop Authors.
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

#include "qop/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qop/error.hpp"

namespace qop {

std::string to_string(Family f) {
  switch (f) {
    case Family::kHvaTfim: return "hva_tfim";
    case Family::kHea: return "hea";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

std::string to_string(Boundary b) { return b == Boundary::kOpen ? "open" : "closed"; }

std::string to_string(InputState s) {
  switch (s) {
    case InputState::kZero: return "zero_state";
    case InputState::kPlus: return "plus_state";
    case InputState::kCustom: return "custom";
  }
  return "custom";
}

Family parse_family(const std::string& s) {
  if (s == "hva_tfim") return Family::kHvaTfim;
  if (s == "hea") return Family::kHea;
  if (s == "custom") return Family::kCustom;
  throw ValidationError("unknown ansatz family \"" + s + "\" (expected hva_tfim, hea, custom)");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::kOpen;
  if (s == "closed") return Boundary::kClosed;
  throw ValidationError("unknown boundary \"" + s + "\" (expected open or closed)");
}

InputState parse_input_state(const std::string& s) {
  if (s == "zero_state" || s == "zero") return InputState::kZero;
  if (s == "plus_state" || s == "plus") return InputState::kPlus;
  if (s == "custom") return InputState::kCustom;
  throw ValidationError("unknown input state \"" + s + "\"");
}

Slot Slot::param(PauliSum generator) {
  Slot s;
  s.kind = Kind::kParam;
  s.generator = std::move(generator);
  return s;
}

Slot Slot::fixed(CliffordGate gate) {
  Slot s;
  s.kind = Kind::kFixed;
  s.gate = gate;
  return s;
}

namespace {

void validate_slots(const std::vector<Slot>& slots, int n, const char* where) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    const std::string tag = std::string(where) + " slot " + std::to_string(i);
    if (s.is_param()) {
      require(!s.generator.empty(), tag + ": generator is zero");
      require(s.generator.num_qubits() == n, tag + ": generator acts on " +
                                                 std::to_string(s.generator.num_qubits()) +
                                                 " qubits, ansatz has " + std::to_string(n));
      require(!s.generator.has_identity(), tag + ": generator must be traceless");
      require(s.generator.terms_commute(),
              tag + ": generator terms do not mutually commute; split it into separate slots");
    } else {
      s.gate.validate(n);
    }
  }
}

int count_params(const std::vector<Slot>& slots) {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(),
                                        [](const Slot& s) { return s.is_param(); }));
}

GateOp to_op(const Slot& s, int param) {
  GateOp op;
  if (s.is_param()) {
    op.param = param;
    op.terms = s.generator.numeric_terms();
  } else {
    op.gate = s.gate;
  }
  return op;
}

PauliSum rotation_generator(int n, int q, char axis) {
  return PauliSum(PauliTerm::single(n, q, axis), mpq_class(1, 2));
}

}  // namespace

AnsatzSpec::AnsatzSpec(int num_qubits, std::vector<Slot> prefix, std::vector<Slot> layer,
                       int layers, InputState input, Family family, Boundary boundary)
    : n_(num_qubits),
      prefix_(std::move(prefix)),
      layer_(std::move(layer)),
      layers_(layers),
      input_(input),
      family_(family),
      boundary_(boundary) {
  require(n_ >= 1 && n_ <= 20, "ansatz qubit count must be in [1, 20]");
  require(layers_ >= 0, "layer count must be non-negative");
  validate_slots(prefix_, n_, "prefix");
  validate_slots(layer_, n_, "layer");
  prefix_params_ = count_params(prefix_);
  per_layer_ = count_params(layer_);
  require(num_params() >= 1, "ansatz has no trainable parameters");

  int p = 0;
  for (const Slot& s : prefix_) program_.push_back(to_op(s, s.is_param() ? p++ : -1));
  for (int l = 0; l < layers_; ++l)
    for (const Slot& s : layer_) program_.push_back(to_op(s, s.is_param() ? p++ : -1));
  for (std::size_t k = 0; k < program_.size(); ++k)
    if (program_[k].is_rotation()) param_op_.push_back(static_cast<int>(k));
}

AnsatzSpec AnsatzSpec::hva_tfim(int num_qubits, int layers, Boundary boundary) {
  require(num_qubits >= 2, "hva_tfim needs at least 2 qubits");
  const int n = num_qubits;
  const int bonds = boundary == Boundary::kOpen ? n - 1 : n;
  PauliSum zz(n), xx(n);
  for (int i = 0; i < bonds; ++i) {
    const int j = (i + 1) % n;
    const PauliTerm t(n, 0, (std::uint64_t{1} << i) | (std::uint64_t{1} << j));
    zz.add_term(t, mpq_class(1, 2));
  }
  for (int i = 0; i < n; ++i) xx.add_term(PauliTerm::single(n, i, 'X'), mpq_class(1, 2));
  std::vector<Slot> layer{Slot::param(zz), Slot::param(xx)};
  return AnsatzSpec(n, {}, std::move(layer), layers, InputState::kPlus, Family::kHvaTfim,
                    boundary);
}

AnsatzSpec AnsatzSpec::hea(int num_qubits, int layers) {
  require(num_qubits >= 2, "hea needs at least 2 qubits");
  const int n = num_qubits;
  std::vector<Slot> prefix;
  for (int q = 0; q < n; ++q) {
    prefix.push_back(Slot::param(rotation_generator(n, q, 'Y')));
    prefix.push_back(Slot::param(rotation_generator(n, q, 'X')));
  }
  std::vector<Slot> layer;
  for (int offset : {0, 1}) {
    std::vector<int> touched;
    for (int a = offset; a + 1 < n; a += 2) {
      layer.push_back(Slot::fixed(CliffordGate::cz(a, a + 1)));
      touched.push_back(a);
      touched.push_back(a + 1);
    }
    for (int q : touched) {
      layer.push_back(Slot::param(rotation_generator(n, q, 'Y')));
      layer.push_back(Slot::param(rotation_generator(n, q, 'X')));
    }
  }
  return AnsatzSpec(n, std::move(prefix), std::move(layer), layers, InputState::kZero,
                    Family::kHea, Boundary::kOpen);
}

AnsatzSpec AnsatzSpec::with_layers(int layers) const {
  return AnsatzSpec(n_, prefix_, layer_, layers, input_, family_, boundary_);
}

Eigen::VectorXcd AnsatzSpec::input_state() const {
  const std::size_t d = dim();
  switch (input_) {
    case InputState::kZero: {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      v(0) = 1;
      return v;
    }
    case InputState::kPlus:
      return Eigen::VectorXcd::Constant(d, cplx(1.0 / std::sqrt(static_cast<double>(d)), 0));
    case InputState::kCustom:
      break;
  }
  throw ValidationError("ansatz input state is custom; supply the state explicitly");
}

std::vector<PauliSum> AnsatzSpec::effective_generators() const {
  std::vector<PauliSum> out;
  for (const auto* block : {&prefix_, &layer_}) {
    std::vector<CliffordGate> fixed;
    for (const Slot& s : *block) {
      if (!s.is_param()) {
        fixed.push_back(s.gate);
        continue;
      }
      // W = g_k ... g_1, W^dagger H W = g_1^dagger (... (g_k^dagger H g_k) ...) g_1
      PauliSum h = s.generator;
      for (auto it = fixed.rbegin(); it != fixed.rend(); ++it) h = conjugate_by_clifford(h, *it);
      out.push_back(std::move(h));
    }
  }
  return out;
}

namespace {

nlohmann::json slots_to_json(const std::vector<Slot>& slots) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Slot& s : slots) {
    if (s.is_param()) arr.push_back({{"generator", s.generator.to_string()}});
    else arr.push_back({{"fixed", s.gate.to_string()}});
  }
  return arr;
}

std::vector<Slot> slots_from_json(const nlohmann::json& arr, int n) {
  require(arr.is_array(), "slot list must be a JSON array");
  std::vector<Slot> out;
  for (const auto& item : arr) {
    require(item.is_object() && item.size() == 1,
            "each slot must be {\"generator\": ...} or {\"fixed\": ...}");
    if (item.contains("generator")) {
      PauliSum g = PauliSum::parse(item.at("generator").get<std::string>());
      require(g.num_qubits() == n, "custom generator qubit count does not match n");
      out.push_back(Slot::param(std::move(g)));
    } else if (item.contains("fixed")) {
      out.push_back(Slot::fixed(CliffordGate::parse(item.at("fixed").get<std::string>())));
    } else {
      throw ValidationError("unknown slot kind " + item.begin().key());
    }
  }
  return out;
}

}  // namespace

nlohmann::json AnsatzSpec::to_json() const {
  nlohmann::json j{{"family", to_string(family_)}, {"n", n_}, {"L", layers_}};
  if (family_ == Family::kHvaTfim) j["boundary"] = to_string(boundary_);
  if (family_ == Family::kCustom) {
    j["input_state"] = to_string(input_);
    j["prefix"] = slots_to_json(prefix_);
    j["layer"] = slots_to_json(layer_);
  }
  return j;
}

AnsatzSpec AnsatzSpec::from_json(const nlohmann::json& j) {
  require(j.is_object(), "ansatz description must be a JSON object");
  const Family family = parse_family(j.value("family", std::string("custom")));
  std::set<std::string> allowed{"family", "n", "L"};
  if (family == Family::kHvaTfim) allowed.insert("boundary");
  if (family == Family::kCustom) allowed.insert({"input_state", "prefix", "layer", "boundary"});
  for (const auto& [key, _] : j.items())
    require(allowed.count(key) > 0, "unknown ansatz field \"" + key + "\"");
  require(j.contains("n") && j.at("n").is_number_integer(), "ansatz field \"n\" (integer) is required");
  require(j.contains("L") && j.at("L").is_number_integer(), "ansatz field \"L\" (integer) is required");
  const int n = j.at("n").get<int>();
  const int L = j.at("L").get<int>();
  switch (family) {
    case Family::kHvaTfim:
      return hva_tfim(n, L, parse_boundary(j.value("boundary", std::string("open"))));
    case Family::kHea:
      return hea(n, L);
    case Family::kCustom:
      break;
  }
  std::vector<Slot> prefix =
      j.contains("prefix") ? slots_from_json(j.at("prefix"), n) : std::vector<Slot>{};
  require(j.contains("layer"), "custom ansatz needs a \"layer\" slot list");
  std::vector<Slot> layer = slots_from_json(j.at("layer"), n);
  const InputState input = parse_input_state(j.value("input_state", std::string("zero_state")));
  return AnsatzSpec(n, std::move(prefix), std::move(layer), L, input, Family::kCustom,
                    parse_boundary(j.value("boundary", std::string("open"))));
}

LieBasis ansatz_closure(const AnsatzSpec& ansatz) {
  return lie_closure(ansatz.effective_generators());
}

std::size_t dla_dimension(const AnsatzSpec& ansatz) { return ansatz_closure(ansatz).dim(); }

}  // namespace qop
