#pragma once

#include <nlohmann/json.hpp>

#include "uatk/activation.hpp"
#include "uatk/greedy.hpp"
#include "uatk/jackson.hpp"
#include "uatk/rbf.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

// {kind, params}
nlohmann::json to_json(const Activation& a);
Activation activation_from_json(const nlohmann::json& j);

// {input_dim, terms: [{c, w: [...], b, activation}]}
nlohmann::json to_json(const ShallowNet& net);
ShallowNet net_from_json(const nlohmann::json& j);

// {kind, radii, values}; radii/values only for tables.
nlohmann::json to_json(const RbfKernel& k);
RbfKernel rbf_kernel_from_json(const nlohmann::json& j);

// {dim, centers, weights, sigma, kernel}
nlohmann::json to_json(const RbfNet& net);
RbfNet rbf_net_from_json(const nlohmann::json& j);

// {degree, a: [...], b: [...]}
nlohmann::json to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GreedyTrace& trace);

} // namespace uatk
