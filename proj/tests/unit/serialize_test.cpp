#include <gtest/gtest.h>

#include "uatk/errors.hpp"
#include "uatk/serialize.hpp"

using namespace uatk;

TEST(Serialize, NetRoundTrip)
{
    const ShallowNet net(2, {Term{1.5, {1.0, -2.0}, 0.25, Activation::logistic()},
                             Term{-0.1, {0.0, 3.0}, -1.0, Activation::table({0.0, 1.0}, {0.0, 1.0})}});
    const auto j = to_json(net);
    EXPECT_EQ(j["input_dim"], 2);
    ASSERT_EQ(j["terms"].size(), 2u);
    EXPECT_EQ(j["terms"][0]["c"], 1.5);
    EXPECT_EQ(j["terms"][0]["activation"]["kind"], "logistic");
    const auto back = net_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.input_dim(), net.input_dim());
    EXPECT_EQ(back.terms(), net.terms());
}

TEST(Serialize, RejectsMalformedNet)
{
    auto j = to_json(ShallowNet(1, {Term{1.0, {1.0}, 0.0, Activation::heaviside()}}));
    j["terms"][0]["w"] = {1.0, 2.0};
    EXPECT_THROW(net_from_json(j), InputError);
    auto k = to_json(Activation::logistic());
    k["kind"] = "relu";
    EXPECT_THROW(activation_from_json(k), InputError);
}

TEST(Serialize, RbfRoundTrip)
{
    RbfNet net;
    net.dim = 1;
    net.centers = {{-0.5}, {0.5}};
    net.weights = {0.1, 0.2};
    net.sigma = 0.3;
    net.kernel = RbfKernel::table({0.0, 1.0}, {1.0, 0.0});
    const auto j = to_json(net);
    for (const char* key : {"dim", "centers", "weights", "sigma", "kernel"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    const auto back = rbf_net_from_json(j);
    EXPECT_EQ(back.centers, net.centers);
    EXPECT_EQ(back.weights, net.weights);
    EXPECT_EQ(back.kernel, net.kernel);
    EXPECT_EQ(back(0.1), net(0.1));
}

TEST(Serialize, TrigPolyRoundTrip)
{
    const TrigPoly p{{1.0, 0.5, 0.0}, {0.0, -0.25, 0.125}};
    const auto j = to_json(p);
    EXPECT_EQ(j["degree"], 2);
    const auto back = trig_poly_from_json(j);
    EXPECT_EQ(back.a, p.a);
    EXPECT_EQ(back.b, p.b);
}

TEST(Serialize, DoublesSurviveTextRoundTrip)
{
    const double awkward = 0.1 + 0.2;
    const ShallowNet net(1, {Term{awkward, {1.0 / 3.0}, -2.0 / 7.0, Activation::exponential()}});
    const auto back = net_from_json(nlohmann::json::parse(to_json(net).dump()));
    EXPECT_EQ(back.terms()[0].coeff, awkward);
    EXPECT_EQ(back.terms()[0].weight[0], 1.0 / 3.0);
}
