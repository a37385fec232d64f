#include "uatk/serialize.hpp"

#include "uatk/errors.hpp"

namespace uatk {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

nlohmann::json to_json(const Activation& a)
{
    return {{"kind", std::string(to_string(a.kind()))}, {"params", a.params()}};
}

Activation activation_from_json(const nlohmann::json& j)
{
    const auto kind = activation_kind_from_string(field<std::string>(j, "kind"));
    std::vector<double> params;
    if (j.contains("params")) {
        params = field<std::vector<double>>(j, "params");
    }
    return Activation(kind, std::move(params));
}

nlohmann::json to_json(const ShallowNet& net)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : net.terms()) {
        terms.push_back({{"c", t.coeff}, {"w", t.weight}, {"b", t.bias}, {"activation", to_json(t.activation)}});
    }
    return {{"input_dim", net.input_dim()}, {"terms", terms}};
}

ShallowNet net_from_json(const nlohmann::json& j)
{
    const auto dim = field<std::size_t>(j, "input_dim");
    std::vector<Term> terms;
    for (const auto& t : field<nlohmann::json>(j, "terms")) {
        terms.push_back(Term{field<double>(t, "c"), field<std::vector<double>>(t, "w"), field<double>(t, "b"),
                             activation_from_json(field<nlohmann::json>(t, "activation"))});
    }
    return ShallowNet(dim, std::move(terms));
}

nlohmann::json to_json(const RbfKernel& k)
{
    nlohmann::json j{{"kind", std::string(to_string(k.kind()))}};
    if (k.kind() == RbfKernelKind::custom_table_radial) {
        j["radii"] = k.radii();
        j["values"] = k.values();
    }
    return j;
}

RbfKernel rbf_kernel_from_json(const nlohmann::json& j)
{
    const auto kind = rbf_kernel_kind_from_string(field<std::string>(j, "kind"));
    if (kind != RbfKernelKind::custom_table_radial) {
        return RbfKernel(kind);
    }
    return RbfKernel(kind, field<std::vector<double>>(j, "radii"), field<std::vector<double>>(j, "values"));
}

nlohmann::json to_json(const RbfNet& net)
{
    return {{"dim", net.dim},
            {"centers", net.centers},
            {"weights", net.weights},
            {"sigma", net.sigma},
            {"kernel", to_json(net.kernel)}};
}

RbfNet rbf_net_from_json(const nlohmann::json& j)
{
    RbfNet net;
    net.dim = field<std::size_t>(j, "dim");
    net.centers = field<std::vector<std::vector<double>>>(j, "centers");
    net.weights = field<std::vector<double>>(j, "weights");
    net.sigma = field<double>(j, "sigma");
    net.kernel = rbf_kernel_from_json(field<nlohmann::json>(j, "kernel"));
    if (net.centers.size() != net.weights.size()) {
        throw InputError("centers and weights differ in length");
    }
    for (const auto& c : net.centers) {
        if (c.size() != net.dim) {
            throw InputError("center dimension does not match dim");
        }
    }
    if (!(net.sigma > 0.0)) {
        throw InputError("sigma must be positive");
    }
    return net;
}

nlohmann::json to_json(const TrigPoly& p)
{
    return {{"degree", p.degree()}, {"a", p.a}, {"b", p.b}};
}

TrigPoly trig_poly_from_json(const nlohmann::json& j)
{
    TrigPoly p;
    p.a = field<std::vector<double>>(j, "a");
    p.b = field<std::vector<double>>(j, "b");
    if (p.a.size() != p.b.size()) {
        throw InputError("cosine and sine coefficient arrays differ in length");
    }
    return p;
}

nlohmann::json to_json(const GreedyTrace& trace)
{
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        nlohmann::json row{{"step", s.step}, {"atom", s.atom}, {"alpha", s.alpha}, {"error", s.error}, {"bound", s.bound}};
        if (trace.algorithm == GreedyAlgorithm::ks) {
            row["q"] = s.q;
            row["r"] = s.r;
            row["rho"] = s.rho;
        }
        steps.push_back(std::move(row));
    }
    nlohmann::json j{{"algorithm", std::string(to_string(trace.algorithm))},
                     {"exact_recovery", trace.exact_recovery},
                     {"steps", steps}};
    if (trace.algorithm == GreedyAlgorithm::ks) {
        j["tau"] = trace.tau;
    }
    if (trace.algorithm == GreedyAlgorithm::ddgs) {
        j["r"] = trace.r_support;
    }
    return j;
}

} // namespace uatk
