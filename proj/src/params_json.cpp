#include "bosonchain/params_json.hpp"

#include <array>
#include <string_view>

#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

constexpr std::array<std::string_view, 10> kKeys = {
    "t1", "delta1", "q_t", "q_delta", "phi_t", "phi_delta", "n_cells", "kappa", "n_th", "mu"};

double number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorCode::Config, std::string("params key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

ChainParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "params must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = it.key() == "delta2_abs";
    for (auto k : kKeys) known = known || it.key() == k;
    if (!known) throw Error(ErrorCode::Config, "unknown params key '" + it.key() + "'");
  }
  for (auto k : kKeys)
    if (!j.contains(std::string(k)))
      throw Error(ErrorCode::Config, "missing params key '" + std::string(k) + "'");

  ChainParams p;
  p.t1 = number(j, "t1");
  p.delta1 = number(j, "delta1");
  p.q_t = number(j, "q_t");
  p.q_delta = number(j, "q_delta");
  p.phi_t = number(j, "phi_t");
  p.phi_delta = number(j, "phi_delta");
  const auto& n = j.at("n_cells");
  if (!n.is_number_integer()) throw Error(ErrorCode::Config, "params key 'n_cells' must be an integer");
  p.n_cells = n.get<int>();
  p.kappa = number(j, "kappa");
  p.n_th = number(j, "n_th");
  p.mu = number(j, "mu");
  if (j.contains("delta2_abs") && !j.at("delta2_abs").is_null()) p.delta2_abs = number(j, "delta2_abs");
  return p;
}

nlohmann::json params_to_json(const ChainParams& p) {
  nlohmann::json j = {
      {"t1", p.t1},       {"delta1", p.delta1}, {"q_t", p.q_t},         {"q_delta", p.q_delta},
      {"phi_t", p.phi_t}, {"phi_delta", p.phi_delta}, {"n_cells", p.n_cells}, {"kappa", p.kappa},
      {"n_th", p.n_th},   {"mu", p.mu}};
  if (p.delta2_abs) j["delta2_abs"] = *p.delta2_abs;
  return j;
}

ChainParams params_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("params JSON parse error: ") + e.what());
  }
  return params_from_json(j);
}

std::string params_to_json_text(const ChainParams& p) { return params_to_json(p).dump(); }

}  // namespace bosonchain
