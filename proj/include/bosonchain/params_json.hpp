#pragma once

#include <string>

#include <json.hpp>

#include "bosonchain/chain_model.hpp"

namespace bosonchain {

// Keys: t1, delta1, q_t, q_delta, phi_t, phi_delta, n_cells, kappa, n_th, mu
// (all required), plus optional delta2_abs. Unknown keys are a config error.
ChainParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ChainParams& p);

ChainParams params_from_json_text(const std::string& text);
std::string params_to_json_text(const ChainParams& p);

}  // namespace bosonchain
