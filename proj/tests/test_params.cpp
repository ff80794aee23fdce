#include <doctest.h>

#include "basefee/params.hpp"

using namespace basefee;

TEST_CASE("available_block_size follows the two-point demand model")
{
    auto const protocol = default_protocol();
    auto const demand = default_demand();
    double const b = demand.b_star;

    CHECK(available_block_size(b, protocol, demand) == 1.0);
    CHECK(available_block_size((1.0 - protocol.phi) * b, protocol, demand) == 2.0);
    CHECK(available_block_size(1.5 * b, protocol, demand) == 1.0);

    CHECK_THROWS_AS(available_block_size(0.0, protocol, demand), std::invalid_argument);
    CHECK_THROWS_AS(available_block_size(-1.0, protocol, demand), std::invalid_argument);
}

TEST_CASE("available_block_size is non-increasing and bounded")
{
    auto const protocol = default_protocol();
    auto const demand = default_demand();
    double previous = protocol.max_size();
    for (int i = 1; i <= 400; ++i)
    {
        double const fee = 0.005 * i;
        double const size = available_block_size(fee, protocol, demand);
        CHECK(size <= previous);
        CHECK(size <= protocol.max_size());
        previous = size;
    }
}

TEST_CASE("miner tip under attack and honest bidding")
{
    auto const protocol = default_protocol();
    auto const demand = default_demand();
    double const b = demand.b_star;
    double const lowered = (1.0 - protocol.phi) * b;

    CHECK(miner_tip_per_gas(lowered, demand, protocol, Bidding::Attack)
          == protocol.phi * b + (1.0 - demand.alpha) * demand.eps);
    CHECK(miner_tip_per_gas(b, demand, protocol, Bidding::Honest) == doctest::Approx(demand.eps).epsilon(1e-15));
    CHECK(miner_tip_per_gas(b, demand, protocol, Bidding::Attack)
          == doctest::Approx((1.0 - demand.alpha) * demand.eps).epsilon(1e-15));
    CHECK(miner_tip_per_gas(b + 2 * demand.eps, demand, protocol, Bidding::Honest) == 0.0);

    CHECK_THROWS_AS(miner_tip_per_gas(0.0, demand, protocol, Bidding::Honest), std::invalid_argument);
}

TEST_CASE("miner tip is non-increasing in the base fee and capped by the max tip")
{
    auto const protocol = default_protocol();
    auto const demand = default_demand();
    for (auto bidding : {Bidding::Honest, Bidding::Attack})
    {
        double previous = max_tip(demand, protocol, bidding);
        for (int i = 1; i <= 300; ++i)
        {
            double const tip = miner_tip_per_gas(0.005 * i, demand, protocol, bidding);
            CHECK(tip <= previous);
            CHECK(tip >= 0.0);
            CHECK(tip <= max_tip(demand, protocol, bidding));
            previous = tip;
        }
    }
}

TEST_CASE("parameter validation")
{
    auto protocol = default_protocol();
    CHECK_NOTHROW(validate(protocol));
    CHECK(protocol.max_size() == 2 * protocol.target_size);
    protocol.phi = 1.0;
    CHECK_THROWS_AS(validate(protocol), std::invalid_argument);
    protocol = default_protocol();
    protocol.target_size = 0.0;
    CHECK_THROWS_AS(validate(protocol), std::invalid_argument);
    protocol = default_protocol();
    protocol.initial_base_fee = -1.0;
    CHECK_THROWS_AS(validate(protocol), std::invalid_argument);

    auto demand = default_demand();
    CHECK_NOTHROW(validate(demand));
    demand.alpha = 0.0;
    CHECK_THROWS_AS(validate(demand), std::invalid_argument);
    demand = default_demand();
    demand.delta = 1.5;
    CHECK_THROWS_AS(validate(demand), std::invalid_argument);
    demand = default_demand();
    demand.eps = 0.0;
    CHECK_THROWS_AS(validate(demand), std::invalid_argument);

    CHECK_NOTHROW(validate(MinerPowers{0.3, 0.7}));
    CHECK_THROWS_AS(validate(MinerPowers{0.6, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(MinerPowers{-0.1, 0.0}), std::invalid_argument);
}
