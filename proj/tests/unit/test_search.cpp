#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "qcone/search.hpp"

using namespace qcone;

namespace {

SearchConfig config(int n, int bound) {
    SearchConfig cfg;
    cfg.rank = n;
    cfg.bound = bound;
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("tier names") {
    for (Tier t : {Tier::shortest, Tier::shortest_long, Tier::simple_basic, Tier::concat})
        CHECK(tier_from_string(to_string(t)) == t);
    CHECK(parse_tiers("shortest, concat") == std::vector<Tier>{Tier::shortest, Tier::concat});
    CHECK_THROWS(parse_tiers(""));
    CHECK_THROWS(tier_from_string("longest"));
}

TEST_CASE("rank 2 ends with an empty residual and replayable witnesses") {
    const SearchReport rep = concatenate_strategies(config(2, 4));
    CHECK(rep.total_considered == enumerate_normal(2, 4).size());
    REQUIRE(rep.tiers.size() == 4);
    CHECK(rep.residual.empty());
    for (std::size_t i = 1; i < rep.tiers.size(); ++i) CHECK(rep.tiers[i].unsolved_after <= rep.tiers[i - 1].unsolved_after);
    std::size_t seeds = 0;
    for (const auto& nd : rep.nodes) {
        if (!nd.seed) continue;
        ++seeds;
        CHECK(nd.solved);
        if (nd.defect > 0) CHECK(verify_witness(nd));
    }
    CHECK(seeds == rep.total_considered);
}

TEST_CASE("rank 3 residual is empty and every witness checks out") {
    const SearchReport rep = concatenate_strategies(config(3, 5));
    CHECK(rep.total_considered == 870);
    CHECK(rep.residual.empty());
    for (const auto& nd : rep.nodes)
        if (nd.solved && !nd.witness.empty()) CHECK(verify_witness(nd));
}

TEST_CASE("stopping after a tier leaves that tier's residual") {
    SearchConfig cfg = config(3, 4);
    cfg.tiers = {Tier::shortest};
    const SearchReport rep = concatenate_strategies(cfg);
    REQUIRE(rep.tiers.size() == 1);
    CHECK(rep.residual.size() == rep.tiers[0].unsolved_after);
    for (std::size_t i : rep.residual) CHECK_FALSE(rep.nodes[i].solved);
}

TEST_CASE("result does not depend on strategy order or thread count") {
    const SearchReport base = concatenate_strategies(config(3, 4));
    std::mt19937 rng(17);
    for (int t = 0; t < 3; ++t) {
        SearchConfig cfg = config(3, 4);
        cfg.strategy_order.resize(simple_basic_set(3).size());
        std::iota(cfg.strategy_order.begin(), cfg.strategy_order.end(), std::size_t(0));
        std::shuffle(cfg.strategy_order.begin(), cfg.strategy_order.end(), rng);
        cfg.threads = 1 + t;
        const SearchReport rep = concatenate_strategies(cfg);
        REQUIRE(rep.tiers.size() == base.tiers.size());
        for (std::size_t i = 0; i < rep.tiers.size(); ++i) CHECK(rep.tiers[i].unsolved_after == base.tiers[i].unsolved_after);
        CHECK(rep.residual_matrices() == base.residual_matrices());
    }
}

TEST_CASE("manual cases replay") {
    const auto results = replay_manual_cases();
    REQUIRE(results.size() == 8);
    for (const auto& r : results) {
        CAPTURE(r.id);
        CHECK(r.pass);
        CHECK(r.raw.exact);
    }
    CHECK(composition_to_strategy("e3 o e-1").to_string() == "-1, +3");
}

TEST_CASE("table check on rank 2 reports the scan") {
    const TableCheck chk = verify_table(2, 5);
    CHECK(chk.reference.total == 48);
    CHECK(chk.scan.size() >= 3);
    CHECK(chk.monotone);
    CHECK(chk.endpoint);
    CHECK(chk.report.residual.empty());
}

}
