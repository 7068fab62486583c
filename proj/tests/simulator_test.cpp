#include "lobjump/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lobjump/ingest.hpp"
#include "lobjump/labeler.hpp"
#include "lobjump/types.hpp"

using namespace lobjump;

namespace {

SimConfig small_config(uint64_t seed, size_t n_events = 2000) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.n_events = n_events;
    cfg.init_levels = 12;
    return cfg;
}

bool same_events(const std::vector<LobEvent>& a, const std::vector<LobEvent>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].seq != b[i].seq || a[i].timestamp_ms != b[i].timestamp_ms ||
            a[i].kind != b[i].kind || a[i].side != b[i].side ||
            a[i].price_ticks != b[i].price_ticks || a[i].size != b[i].size) {
            return false;
        }
    }
    return true;
}

TEST(Simulate, DeterministicInSeedAndSensitiveToIt) {
    SimOutput a = simulate(small_config(5));
    SimOutput b = simulate(small_config(5));
    EXPECT_TRUE(same_events(a.events, b.events));
    EXPECT_EQ(a.digests, b.digests);
    EXPECT_EQ(a.realized_sign, b.realized_sign);

    SimOutput c = simulate(small_config(6));
    EXPECT_FALSE(same_events(a.events, c.events));
}

TEST(Simulate, StreamParsesReplaysAndMatchesDigests) {
    SimConfig cfg = small_config(11, 3000);
    SimOutput out = simulate(cfg);
    ASSERT_EQ(out.events.size(), cfg.n_events);
    ASSERT_EQ(out.digests.size(), cfg.n_events);

    // Contiguous seq, nondecreasing time inside the session window.
    for (size_t i = 0; i < out.events.size(); ++i) {
        EXPECT_EQ(out.events[i].seq, i + 1);
        EXPECT_GE(out.events[i].timestamp_ms, cfg.window.start_ms);
        EXPECT_LT(out.events[i].timestamp_ms, cfg.window.end_ms);
        if (i) EXPECT_GE(out.events[i].timestamp_ms, out.events[i - 1].timestamp_ms);
    }

    // The CSV form parses back to the identical stream.
    const std::string path = std::string(::testing::TempDir()) + "sim_events.csv";
    write_events(path, out.events);
    ParseResult parsed = parse_events(path, cfg.window);
    EXPECT_EQ(parsed.dropped_out_of_window, 0u);
    EXPECT_TRUE(same_events(parsed.events, out.events));

    // Replay agrees with the generator's own per-event book digests.
    ReplayResult rr = replay(out.events, cfg.depth, cfg.tick_size, true);
    ASSERT_EQ(rr.book_digests.size(), out.digests.size());
    EXPECT_EQ(rr.book_digests, out.digests);

    // Market orders all have size at least 2 and leave v_mo defined.
    size_t trades = 0;
    for (const LobEvent& ev : out.events) {
        if (ev.kind != EventKind::MarketOrder) continue;
        ++trades;
        EXPECT_GE(ev.size, 2);
    }
    EXPECT_EQ(out.truth.size(), trades);
    EXPECT_GT(trades, 0u);
}

TEST(Simulate, BookStaysDeepEnoughForSnapshotsAfterWarmup) {
    SimConfig cfg = small_config(13, 2500);
    SimOutput out = simulate(cfg);
    ReplayResult rr = replay(out.events, cfg.depth, cfg.tick_size);
    const size_t warmup = 2 * static_cast<size_t>(cfg.init_levels);
    for (size_t i = warmup - 1; i < rr.snapshots.size(); ++i) {
        EXPECT_TRUE(rr.snapshots[i].complete) << "event index " << i;
    }
}

TEST(Simulate, ZeroMarketRateMeansNoTrades) {
    SimConfig cfg = small_config(17, 500);
    cfg.rate_market = 0.0;
    SimOutput out = simulate(cfg);
    for (const LobEvent& ev : out.events) {
        EXPECT_NE(ev.kind, EventKind::MarketOrder);
    }
    EXPECT_TRUE(out.truth.empty());
    EXPECT_TRUE(out.realized_sign.empty());
}

TEST(Simulate, HeavyMarketRateStillHitsTheExactEventBudget) {
    SimConfig cfg = small_config(19, 3000);
    cfg.rate_market = 0.5;
    cfg.rate_limit = 0.4;
    cfg.rate_cancel = 0.1;
    SimOutput out = simulate(cfg);
    EXPECT_EQ(out.events.size(), cfg.n_events);
    // Replay must succeed: every market order was sized within the book.
    EXPECT_NO_THROW(replay(out.events, cfg.depth, cfg.tick_size));
}

TEST(Simulate, TruthRowsAlignWithTradesAndCarrySentinels) {
    SimConfig cfg = small_config(23, 2000);
    SimOutput out = simulate(cfg);
    ReplayResult rr = replay(out.events, cfg.depth, cfg.tick_size);
    std::vector<LabeledTrade> trades = label_jumps(rr.snapshots);
    ASSERT_EQ(out.truth.size(), trades.size());
    for (size_t k = 0; k < trades.size(); ++k) {
        EXPECT_EQ(out.truth[k].seq, trades[k].t_seq);
        EXPECT_EQ(out.truth[k].true_p_jump_bid, -1.0);
        EXPECT_EQ(out.truth[k].true_p_jump_ask, -1.0);
        EXPECT_EQ(out.truth[k].true_p_buy, -1.0);
        EXPECT_EQ(out.realized_jump[k], kJumpUnset);
        EXPECT_EQ(out.realized_sign[k], trades[k].sign);
    }
}

// The generator commits each trade's jump outcome before steering the stream
// toward it; the labeler run on the replayed stream must land on exactly the
// committed outcome for every trade with a successor.
TEST(Simulate, PlantedJumpOutcomesMatchTheLabelerExactly) {
    for (Side side : {Side::Bid, Side::Ask}) {
        SimConfig cfg = small_config(29, 6000);
        cfg.planted_mode = PlantedMode::Jump;
        cfg.planted_side = side;
        cfg.planted_gamma0 = -0.5;
        cfg.planted_gamma = {{"VB1_0", -0.8}, {"BMO_0", 1.0}, {"VMO_0", 0.5}};
        SimOutput out = simulate(cfg);

        ReplayResult rr = replay(out.events, cfg.depth, cfg.tick_size);
        std::vector<LabeledTrade> trades = label_jumps(rr.snapshots);
        ASSERT_EQ(out.truth.size(), trades.size());
        ASSERT_GT(trades.size(), 50u);

        size_t ones = 0, zeros = 0;
        for (size_t k = 0; k < trades.size(); ++k) {
            const uint8_t committed = out.realized_jump[k];
            if (k + 1 < trades.size()) {
                ASSERT_NE(committed, kJumpUnset) << "trade " << k;
                ASSERT_EQ(trades[k].has_label, 1);
                const uint8_t label = side == Side::Bid ? trades[k].y_bid : trades[k].y_ask;
                ASSERT_EQ(committed, label) << "trade " << k << " seq " << trades[k].t_seq;
                (committed ? ones : zeros)++;
            } else {
                EXPECT_EQ(committed, kJumpUnset);
            }
            const double p = side == Side::Bid ? out.truth[k].true_p_jump_bid
                                               : out.truth[k].true_p_jump_ask;
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
        // Both outcomes occur, so the planted signal is non-degenerate.
        EXPECT_GT(ones, 0u);
        EXPECT_GT(zeros, 0u);
    }
}

TEST(Simulate, PlantedJumpKeepsTheStreamReplayableAndDeep) {
    SimConfig cfg = small_config(31, 6000);
    cfg.planted_mode = PlantedMode::Jump;
    cfg.planted_gamma0 = 0.2;
    cfg.planted_gamma = {{"VB1_0", -1.0}};
    SimOutput out = simulate(cfg);
    EXPECT_EQ(out.events.size(), cfg.n_events);
    ReplayResult rr = replay(out.events, cfg.depth, cfg.tick_size, true);
    EXPECT_EQ(rr.book_digests, out.digests);
    const size_t warmup = 2 * static_cast<size_t>(cfg.init_levels);
    for (size_t i = warmup - 1; i < rr.snapshots.size(); ++i) {
        ASSERT_TRUE(rr.snapshots[i].complete) << "event index " << i;
    }
}

TEST(Simulate, ConstantPlantedProbabilityScoresAucOneHalf) {
    SimConfig cfg = small_config(37, 4000);
    cfg.planted_mode = PlantedMode::Jump;
    cfg.planted_gamma0 = 0.0;  // p = 1/2 for every trade, no feature terms
    SimOutput out = simulate(cfg);
    for (const TruthRow& r : out.truth) {
        EXPECT_DOUBLE_EQ(r.true_p_jump_bid, 0.5);
    }
    EXPECT_DOUBLE_EQ(bayes_auc(out), 0.5);
}

TEST(Simulate, InformativePlantedProbabilityBeatsCoinFlips) {
    SimConfig cfg = small_config(41, 8000);
    cfg.planted_mode = PlantedMode::Jump;
    cfg.planted_gamma0 = -0.3;
    cfg.planted_gamma = {{"VB1_0", -2.0}, {"BMO_0", 1.5}, {"VMO_0", 1.2}};
    SimOutput out = simulate(cfg);
    EXPECT_GT(bayes_auc(out), 0.6);
}

TEST(Simulate, SignModeDrawsTradeDirectionFromTheImbalance) {
    SimConfig cfg = small_config(43, 4000);
    cfg.planted_mode = PlantedMode::Sign;
    cfg.planted_sign_c = 4.0;
    SimOutput out = simulate(cfg);

    std::unordered_map<uint64_t, Side> side_by_seq;
    for (const LobEvent& ev : out.events) {
        if (ev.kind == EventKind::MarketOrder) side_by_seq[ev.seq] = ev.side;
    }
    ASSERT_EQ(side_by_seq.size(), out.truth.size());
    size_t buys = 0;
    for (size_t k = 0; k < out.truth.size(); ++k) {
        EXPECT_GT(out.truth[k].true_p_buy, 0.0);
        EXPECT_LT(out.truth[k].true_p_buy, 1.0);
        EXPECT_EQ(out.truth[k].true_p_jump_bid, -1.0);
        const Side s = side_by_seq.at(out.truth[k].seq);
        EXPECT_EQ(out.realized_sign[k], s == Side::Ask ? 1 : -1);
        buys += out.realized_sign[k] > 0;
    }
    EXPECT_GT(buys, 0u);
    EXPECT_LT(buys, out.truth.size());
    EXPECT_GT(bayes_auc(out), 0.55);

    cfg.planted_sign_c = 0.0;
    SimOutput flat = simulate(cfg);
    for (const TruthRow& r : flat.truth) EXPECT_DOUBLE_EQ(r.true_p_buy, 0.5);
    EXPECT_DOUBLE_EQ(bayes_auc(flat), 0.5);
}

TEST(Simulate, RejectsBadConfigurations) {
    SimConfig cfg = small_config(47);
    cfg.n_events = 3;
    EXPECT_THROW(simulate(cfg), DataError);

    cfg = small_config(47);
    cfg.init_levels = cfg.depth + cfg.guard_margin - 1;
    EXPECT_THROW(simulate(cfg), DataError);

    cfg = small_config(47);
    cfg.mo_size_mean = 2.0;
    EXPECT_THROW(simulate(cfg), DataError);

    cfg = small_config(47);
    cfg.rate_limit = cfg.rate_cancel = cfg.rate_market = 0.0;
    EXPECT_THROW(simulate(cfg), DataError);

    cfg = small_config(47);
    cfg.planted_mode = PlantedMode::Jump;
    cfg.planted_gamma = {{"NOT_A_FEATURE", 1.0}};
    EXPECT_THROW(simulate(cfg), DataError);

    EXPECT_THROW(bayes_auc(simulate(small_config(47))), DataError);
}

TEST(TruthCsv, RoundTripsSentinelsAndProbabilities) {
    SimConfig cfg = small_config(53, 2500);
    cfg.planted_mode = PlantedMode::Jump;
    cfg.planted_gamma0 = -0.4;
    cfg.planted_gamma = {{"VB1_0", -1.0}};
    SimOutput out = simulate(cfg);

    const std::string path = std::string(::testing::TempDir()) + "truth_rt.csv";
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << truth_to_csv(out);
    }
    std::vector<TruthRow> back = truth_from_csv(path);
    ASSERT_EQ(back.size(), out.truth.size());
    for (size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].seq, out.truth[i].seq);
        EXPECT_DOUBLE_EQ(back[i].true_p_jump_bid, out.truth[i].true_p_jump_bid);
        EXPECT_DOUBLE_EQ(back[i].true_p_jump_ask, out.truth[i].true_p_jump_ask);
        EXPECT_DOUBLE_EQ(back[i].true_p_buy, out.truth[i].true_p_buy);
    }
}

}  // namespace
