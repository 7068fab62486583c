#include "lobjump/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lobjump/types.hpp"

using namespace lobjump;

namespace {

// Pair-enumeration AUC: every positive/negative pair contributes 1, 1/2, or
// 0. Quadratic and obviously correct.
double auc_by_pairs(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    size_t pairs = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

TEST(Auc, WorkedFourPointExample) {
    const std::vector<double> s = {0.1, 0.4, 0.35, 0.8};
    const std::vector<int> y = {0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(auc(s, y), 0.75);
    EXPECT_DOUBLE_EQ(auc_trapezoid(s, y), 0.75);
    EXPECT_DOUBLE_EQ(auc_by_pairs(s, y), 0.75);
}

TEST(Auc, PerfectAndInvertedSeparation) {
    const std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(auc(s, {0, 0, 1, 1}), 1.0);
    EXPECT_DOUBLE_EQ(auc(s, {1, 1, 0, 0}), 0.0);
}

TEST(Auc, ConstantScoresGiveHalf) {
    const std::vector<double> s(10, 3.25);
    std::vector<int> y(10, 0);
    y[2] = y[5] = y[7] = 1;
    EXPECT_DOUBLE_EQ(auc(s, y), 0.5);
    EXPECT_DOUBLE_EQ(auc_trapezoid(s, y), 0.5);
}

TEST(Auc, AgreesWithPairEnumerationUnderHeavyTies) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> score(0, 4);  // many exact ties
    std::uniform_int_distribution<int> label(0, 1);
    for (int inst = 0; inst < 50; ++inst) {
        std::vector<double> s(60);
        std::vector<int> y(60);
        bool pos = false, neg = false;
        for (size_t i = 0; i < s.size(); ++i) {
            s[i] = 0.25 * score(rng);
            y[i] = label(rng);
            (y[i] ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        const double want = auc_by_pairs(s, y);
        EXPECT_NEAR(auc(s, y), want, 1e-12) << "instance " << inst;
        EXPECT_NEAR(auc_trapezoid(s, y), want, 1e-12) << "instance " << inst;
        EXPECT_NEAR(auc(s, y), auc_trapezoid(s, y), 1e-12) << "instance " << inst;
    }
}

TEST(Auc, NegatedScoresComplementToOne) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(80);
    std::vector<int> y(80);
    for (size_t i = 0; i < s.size(); ++i) {
        s[i] = std::floor(u(rng) * 8.0) / 8.0;
        y[i] = u(rng) < 0.4 ? 1 : 0;
    }
    y[0] = 1;
    y[1] = 0;
    std::vector<double> neg(s);
    for (double& v : neg) v = -v;
    EXPECT_NEAR(auc(s, y) + auc(neg, y), 1.0, 1e-12);
}

TEST(Auc, RejectsDegenerateInputs) {
    EXPECT_THROW(auc({1.0, 2.0}, {1, 1}), DataError);
    EXPECT_THROW(auc({1.0, 2.0}, {0, 0}), DataError);
    EXPECT_THROW(auc({}, {}), DataError);
    EXPECT_THROW(auc({1.0}, {1, 0}), DataError);
    EXPECT_THROW(auc({1.0, 2.0}, {0, 2}), DataError);
}

TEST(RocCurve, EndpointsAndMonotonicity) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(120);
    std::vector<int> y(120);
    for (size_t i = 0; i < s.size(); ++i) {
        s[i] = std::floor(u(rng) * 10.0) / 10.0;
        y[i] = u(rng) < 0.3 ? 1 : 0;
    }
    y[0] = 1;
    y[1] = 0;
    const auto pts = roc_curve(s, y);
    ASSERT_GE(pts.size(), 2u);
    EXPECT_DOUBLE_EQ(pts.front().fpr, 0.0);
    EXPECT_DOUBLE_EQ(pts.front().tpr, 0.0);
    EXPECT_DOUBLE_EQ(pts.back().fpr, 1.0);
    EXPECT_DOUBLE_EQ(pts.back().tpr, 1.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        EXPECT_GE(pts[i].fpr + 1e-15, pts[i - 1].fpr);
        EXPECT_GE(pts[i].tpr + 1e-15, pts[i - 1].tpr);
        EXPECT_TRUE(pts[i].fpr > pts[i - 1].fpr || pts[i].tpr > pts[i - 1].tpr);
    }
    // One point per distinct score plus the origin.
    std::vector<double> uniq(s);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    EXPECT_EQ(pts.size(), uniq.size() + 1);
}

TEST(RocCurve, CollapsesTiedScoresIntoOnePoint) {
    // Two positives and two negatives all tied: the curve is the diagonal.
    const auto pts = roc_curve({1.0, 1.0, 1.0, 1.0}, {1, 0, 1, 0});
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_DOUBLE_EQ(pts[1].fpr, 1.0);
    EXPECT_DOUBLE_EQ(pts[1].tpr, 1.0);
}

TEST(Backtest, ChronoSplitSizesAndScores) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DesignMatrix d;
    d.width = 4;
    d.n_rows = 600;
    d.col_names = {"intercept", "x0", "x1", "x2"};
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double a = gauss(rng), b = gauss(rng), c = gauss(rng);
        d.values.insert(d.values.end(), {1.0, a, b, c});
        const double z = 1.8 * a - 1.2 * b;
        d.y.push_back(u(rng) < 1.0 / (1.0 + std::exp(-z)) ? 1.0 : 0.0);
    }
    FitConfig cfg;
    cfg.lambda_count = 20;
    cfg.cv_folds = 4;

    BacktestResult r = backtest(d, cfg, 0.7, SplitMode::Chrono);
    EXPECT_EQ(r.n_train, 420u);
    EXPECT_EQ(r.n_test, 180u);
    ASSERT_EQ(r.test_scores.size(), r.n_test);
    ASSERT_EQ(r.test_labels.size(), r.n_test);
    EXPECT_GT(r.auc, 0.6);  // strong planted signal

    // Chrono test rows are the suffix; labels must line up with the source.
    for (size_t i = 0; i < r.n_test; ++i) {
        EXPECT_EQ(r.test_labels[i], static_cast<int>(d.y[420 + i]));
    }
    // Scores are the linear predictor of the chosen model.
    const double* x = d.row(420);
    double z = 0.0;
    for (size_t j = 0; j < d.width; ++j) z += r.fit.beta[j] * x[j];
    EXPECT_NEAR(r.test_scores[0], z, 1e-12);

    BacktestResult again = backtest(d, cfg, 0.7, SplitMode::Chrono);
    EXPECT_EQ(r.auc, again.auc);
    EXPECT_EQ(r.fit.lambda, again.fit.lambda);
}

TEST(Backtest, RandomSplitIsSeededAndCoversAllRows) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DesignMatrix d;
    d.width = 3;
    d.n_rows = 300;
    d.col_names = {"intercept", "x0", "x1"};
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double a = gauss(rng), b = gauss(rng);
        d.values.insert(d.values.end(), {1.0, a, b});
        d.y.push_back(u(rng) < 1.0 / (1.0 + std::exp(-1.5 * a)) ? 1.0 : 0.0);
    }
    FitConfig cfg;
    cfg.lambda_count = 12;
    cfg.cv_folds = 4;
    cfg.seed = 5;
    BacktestResult r1 = backtest(d, cfg, 0.8, SplitMode::Random);
    BacktestResult r2 = backtest(d, cfg, 0.8, SplitMode::Random);
    EXPECT_EQ(r1.auc, r2.auc);
    EXPECT_EQ(r1.test_scores, r2.test_scores);
    EXPECT_EQ(r1.n_train, 240u);
    EXPECT_EQ(r1.n_test, 60u);

    cfg.seed = 6;
    BacktestResult r3 = backtest(d, cfg, 0.8, SplitMode::Random);
    EXPECT_NE(r1.test_scores, r3.test_scores);
}

TEST(Backtest, RejectsDegenerateTrainFraction) {
    DesignMatrix d;
    d.width = 2;
    d.n_rows = 40;
    d.col_names = {"intercept", "x0"};
    std::mt19937_64 rng(37);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double a = gauss(rng);
        d.values.insert(d.values.end(), {1.0, a});
        d.y.push_back(i % 2 ? 1.0 : 0.0);
    }
    FitConfig cfg;
    EXPECT_THROW(backtest(d, cfg, 0.0, SplitMode::Chrono), DataError);
    EXPECT_THROW(backtest(d, cfg, 1.0, SplitMode::Chrono), DataError);
    EXPECT_THROW(backtest(d, cfg, -0.3, SplitMode::Chrono), DataError);
}

TEST(AggregateSelection, CountsTopKMembershipWithStableOrdering) {
    const std::vector<std::vector<std::string>> orders = {
        {"VB1_0", "BMO_0", "VMO_0", "S_0"},
        {"BMO_0", "VB1_0", "GA1_0"},
        {"VB1_0", "VMO_0"},
        {"S_0"},
    };
    const auto counts = aggregate_selection(orders, 2);
    ASSERT_GE(counts.size(), 4u);
    EXPECT_EQ(counts[0].first, "VB1_0");
    EXPECT_EQ(counts[0].second, 3u);
    EXPECT_EQ(counts[1].first, "BMO_0");
    EXPECT_EQ(counts[1].second, 2u);
    // Ties break alphabetically.
    EXPECT_EQ(counts[2].first, "S_0");
    EXPECT_EQ(counts[2].second, 1u);
    EXPECT_EQ(counts[3].first, "VMO_0");
    EXPECT_EQ(counts[3].second, 1u);
}

TEST(EvaluationCsv, HeadersAndRowShapes) {
    const auto pts = roc_curve({0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
    const std::string roc = roc_to_csv(pts);
    EXPECT_EQ(roc.rfind("fpr,tpr\n", 0), 0u);
    EXPECT_EQ(std::count(roc.begin(), roc.end(), '\n'), static_cast<long>(pts.size()) + 1);

    AucSummaryRow row;
    row.instrument = "SIM";
    row.session = "ALLDAY";
    row.side = "bid";
    row.auc = 0.8125;
    row.n_train = 100;
    row.n_test = 50;
    row.lambda = 0.01;
    const std::string summary = auc_summary_to_csv({row});
    EXPECT_EQ(summary.rfind("instrument,session,side,auc,n_train,n_test,lambda\n", 0), 0u);
    EXPECT_NE(summary.find("SIM,ALLDAY,bid,0.8125,100,50,0.01"), std::string::npos);

    const std::string sel = selection_report_to_csv({{"VB1_0", 18}, {"BMO_0", 17}});
    EXPECT_EQ(sel.rfind("rank,variable,count\n", 0), 0u);
    EXPECT_NE(sel.find("1,VB1_0,18"), std::string::npos);
    EXPECT_NE(sel.find("2,BMO_0,17"), std::string::npos);
}

}  // namespace
