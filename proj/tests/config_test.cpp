#include "lobjump/config.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "lobjump/types.hpp"

using namespace lobjump;

namespace {

TEST(RunConfigParse, EmptyTextKeepsDefaults) {
    RunConfig rc = run_config_from_text("");
    EXPECT_EQ(rc.depth, 5);
    EXPECT_EQ(rc.lags_book, 5);
    EXPECT_EQ(rc.lags_flow, 5);
    EXPECT_DOUBLE_EQ(rc.tick_size, 0.01);
    EXPECT_EQ(rc.session, "ALLDAY");
    EXPECT_EQ(rc.side, Side::Bid);
    EXPECT_DOUBLE_EQ(rc.split, 0.7);
    EXPECT_EQ(rc.split_mode, SplitMode::Chrono);
    EXPECT_EQ(rc.seed, 1u);
    EXPECT_EQ(rc.instrument, "SIM");
    EXPECT_EQ(rc.curve_points, 50);
    EXPECT_EQ(rc.curve_min_count, 50);
    EXPECT_EQ(rc.fit.lambda_count, 100);
    EXPECT_EQ(rc.fit.cv_folds, 10);
    EXPECT_EQ(rc.sim.n_events, 50000u);
    // The design registry defaults span 2 + 5*(4*5-1) + 6*5 columns.
    EXPECT_EQ(2 + rc.lags_book * (4 * rc.depth - 1) + 6 * rc.lags_flow, 127);
}

TEST(RunConfigParse, ParsesEveryKeyWithCommentsAndBlankLines) {
    const std::string text = R"(# run configuration
tick_size = 0.005
depth = 3
lags_book = 2
lags_flow = 4
session = MORNING     # trailing comment
side = ask

split = 0.8
split_mode = random
seed = 42
out_dir = /tmp/runs
instrument = TEST1
curve_points = 20
curve_min_count = 10
lambda_count = 60
lambda_min_ratio = 0.01
cv_folds = 5
cv_mode = chrono
tol = 1e-8
kkt_tol = 1e-8
max_iter = 200
standardize = false
sim_events = 9000
init_levels = 15
init_mid_ticks = 20000
guard_margin = 4
rate_limit = 0.6
rate_cancel = 0.25
rate_market = 0.15
place_window = 9
limit_size_mean = 30
mo_size_mean = 6
planted_mode = jump
planted_side = ask
planted_gamma0 = -0.5
planted_gamma = VB1_0:-2.0, BMO_0:1.5,VMO_0:1.2
planted_sign_c = 0.8
)";
    RunConfig rc = run_config_from_text(text);
    EXPECT_DOUBLE_EQ(rc.tick_size, 0.005);
    EXPECT_EQ(rc.depth, 3);
    EXPECT_EQ(rc.lags_book, 2);
    EXPECT_EQ(rc.lags_flow, 4);
    EXPECT_EQ(rc.session, "MORNING");
    EXPECT_EQ(rc.side, Side::Ask);
    EXPECT_DOUBLE_EQ(rc.split, 0.8);
    EXPECT_EQ(rc.split_mode, SplitMode::Random);
    EXPECT_EQ(rc.seed, 42u);
    EXPECT_EQ(rc.out_dir, "/tmp/runs");
    EXPECT_EQ(rc.instrument, "TEST1");
    EXPECT_EQ(rc.curve_points, 20);
    EXPECT_EQ(rc.curve_min_count, 10);
    EXPECT_EQ(rc.fit.lambda_count, 60);
    EXPECT_DOUBLE_EQ(rc.fit.lambda_min_ratio, 0.01);
    EXPECT_EQ(rc.fit.cv_folds, 5);
    EXPECT_EQ(rc.fit.cv_mode, CvMode::Chrono);
    EXPECT_DOUBLE_EQ(rc.fit.tol, 1e-8);
    EXPECT_DOUBLE_EQ(rc.fit.kkt_tol, 1e-8);
    EXPECT_EQ(rc.fit.max_iter, 200);
    EXPECT_FALSE(rc.fit.standardize);
    EXPECT_EQ(rc.sim.n_events, 9000u);
    EXPECT_EQ(rc.sim.init_levels, 15);
    EXPECT_EQ(rc.sim.init_mid_ticks, 20000);
    EXPECT_EQ(rc.sim.guard_margin, 4);
    EXPECT_DOUBLE_EQ(rc.sim.rate_limit, 0.6);
    EXPECT_DOUBLE_EQ(rc.sim.rate_cancel, 0.25);
    EXPECT_DOUBLE_EQ(rc.sim.rate_market, 0.15);
    EXPECT_EQ(rc.sim.place_window_ticks, 9);
    EXPECT_DOUBLE_EQ(rc.sim.limit_size_mean, 30.0);
    EXPECT_DOUBLE_EQ(rc.sim.mo_size_mean, 6.0);
    EXPECT_EQ(rc.sim.planted_mode, PlantedMode::Jump);
    EXPECT_EQ(rc.sim.planted_side, Side::Ask);
    EXPECT_DOUBLE_EQ(rc.sim.planted_gamma0, -0.5);
    ASSERT_EQ(rc.sim.planted_gamma.size(), 3u);
    EXPECT_EQ(rc.sim.planted_gamma[0].first, "VB1_0");
    EXPECT_DOUBLE_EQ(rc.sim.planted_gamma[0].second, -2.0);
    EXPECT_EQ(rc.sim.planted_gamma[1].first, "BMO_0");
    EXPECT_DOUBLE_EQ(rc.sim.planted_gamma[1].second, 1.5);
    EXPECT_EQ(rc.sim.planted_gamma[2].first, "VMO_0");
    EXPECT_DOUBLE_EQ(rc.sim.planted_gamma[2].second, 1.2);
    EXPECT_DOUBLE_EQ(rc.sim.planted_sign_c, 0.8);
}

TEST(RunConfigParse, OneSeedDrivesSimulatorFitAndSplits) {
    RunConfig rc = run_config_from_text("seed = 77\nsession = AFTERNOON\ndepth = 4\n");
    EXPECT_EQ(rc.seed, 77u);
    EXPECT_EQ(rc.sim.seed, 77u);
    EXPECT_EQ(rc.fit.seed, 77u);
    EXPECT_EQ(rc.sim.depth, 4);
    const SessionWindow w = SessionWindow::from_name("AFTERNOON");
    EXPECT_EQ(rc.sim.window.start_ms, w.start_ms);
    EXPECT_EQ(rc.sim.window.end_ms, w.end_ms);
}

TEST(RunConfigParse, RejectsUnknownKeysWithTheLineNumber) {
    try {
        run_config_from_text("depth = 5\nnot_a_key = 3\n");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("not_a_key"), std::string::npos) << msg;
    }
}

TEST(RunConfigParse, RejectsMalformedLinesAndValues) {
    EXPECT_THROW(run_config_from_text("depth 5\n"), DataError);       // no '='
    EXPECT_THROW(run_config_from_text("= 5\n"), DataError);           // empty key
    EXPECT_THROW(run_config_from_text("depth =\n"), DataError);       // empty value
    EXPECT_THROW(run_config_from_text("depth = abc\n"), DataError);   // bad int
    EXPECT_THROW(run_config_from_text("split = huge\n"), DataError);  // bad double
    EXPECT_THROW(run_config_from_text("side = mid\n"), DataError);
    EXPECT_THROW(run_config_from_text("split_mode = both\n"), DataError);
    EXPECT_THROW(run_config_from_text("cv_mode = kfold\n"), DataError);
    EXPECT_THROW(run_config_from_text("planted_mode = maybe\n"), DataError);
    EXPECT_THROW(run_config_from_text("standardize = yep\n"), DataError);
    EXPECT_THROW(run_config_from_text("planted_gamma = VB1_0\n"), DataError);
    EXPECT_THROW(run_config_from_text("planted_gamma = :2.0\n"), DataError);
}

TEST(RunConfigParse, RejectsOutOfRangeSettings) {
    EXPECT_THROW(run_config_from_text("depth = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("lags_book = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("lags_flow = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("split = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("split = 1\n"), DataError);
    EXPECT_THROW(run_config_from_text("split = 1.4\n"), DataError);
    EXPECT_THROW(run_config_from_text("curve_points = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("curve_min_count = 0\n"), DataError);
    EXPECT_THROW(run_config_from_text("session = BRUNCH\n"), DataError);
}

TEST(RunConfigParse, ReadsFromAFile) {
    const std::string path = std::string(::testing::TempDir()) + "run_cfg.txt";
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "# comment only line\nseed = 9\ndepth = 2\n\ninstrument = F7\n";
    }
    RunConfig rc = parse_run_config(path);
    EXPECT_EQ(rc.seed, 9u);
    EXPECT_EQ(rc.depth, 2);
    EXPECT_EQ(rc.instrument, "F7");
    EXPECT_THROW(parse_run_config(path + ".missing"), DataError);
}

}  // namespace
