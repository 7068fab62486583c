#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lobjump/features.hpp"
#include "lobjump/lasso.hpp"

namespace lobjump {

// Tie-aware AUC from midranks: U statistic of the positive class over
// positive*negative pairs. Needs at least one row of each class.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// ROC points swept over unique score thresholds, descending, from (0,0) to
// (1,1); ties collapse into a single point.
std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels);

// Area under roc_curve by the trapezoid rule, accumulated in exact integer
// arithmetic on true/false positive counts before the final division.
double auc_trapezoid(const std::vector<double>& scores, const std::vector<int>& labels);

enum class SplitMode : uint8_t { Chrono, Random };

struct BacktestResult {
    FitResult fit;  // cross-validated fit on the training rows
    double auc = 0.0;
    size_t n_train = 0;
    size_t n_test = 0;
    std::vector<double> test_scores;  // linear predictor per held-out row
    std::vector<int> test_labels;
};

// Split rows (chronological prefix by default, or seeded random subset),
// cross-validate on the training part, score the held-out part.
BacktestResult backtest(const DesignMatrix& d, const FitConfig& cfg, double train_fraction,
                        SplitMode mode);

// Across runs, count how often each variable appears among the first `top_k`
// entries of the selection order. Sorted by count (desc), then name.
std::vector<std::pair<std::string, size_t>> aggregate_selection(
    const std::vector<std::vector<std::string>>& orders, size_t top_k);

struct AucSummaryRow {
    std::string instrument;
    std::string session;
    std::string side;
    double auc = 0.0;
    size_t n_train = 0;
    size_t n_test = 0;
    double lambda = 0.0;
};

std::string roc_to_csv(const std::vector<RocPoint>& points);
std::string auc_summary_to_csv(const std::vector<AucSummaryRow>& rows);
std::string selection_report_to_csv(const std::vector<std::pair<std::string, size_t>>& counts);

}  // namespace lobjump
