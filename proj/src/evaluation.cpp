#include "lobjump/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lobjump/csv.hpp"
#include "lobjump/types.hpp"

namespace lobjump {

namespace {

void check_scored(const std::vector<double>& scores, const std::vector<int>& labels,
                  size_t& n_pos, size_t& n_neg) {
    if (scores.size() != labels.size()) throw DataError("scores/labels length mismatch");
    if (scores.empty()) throw DataError("empty score vector");
    n_pos = n_neg = 0;
    for (int v : labels) {
        if (v == 1) {
            ++n_pos;
        } else if (v == 0) {
            ++n_neg;
        } else {
            throw DataError("labels must be 0/1");
        }
    }
    if (n_pos == 0 || n_neg == 0) {
        throw DataError("AUC needs both classes: " + std::to_string(n_pos) + " positive, " +
                        std::to_string(n_neg) + " negative");
    }
}

}  // namespace

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    size_t n_pos = 0, n_neg = 0;
    check_scored(scores, labels, n_pos, n_neg);
    const size_t n = scores.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        // 1-based midrank shared by the tie group [i, j).
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += midrank;
        }
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double u = rank_sum_pos - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels) {
    size_t n_pos = 0, n_neg = 0;
    check_scored(scores, labels, n_pos, n_neg);
    const size_t n = scores.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> pts;
    pts.push_back({0.0, 0.0});
    uint64_t tp = 0, fp = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) {
                ++tp;
            } else {
                ++fp;
            }
        }
        pts.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                       static_cast<double>(tp) / static_cast<double>(n_pos)});
        i = j;
    }
    return pts;
}

double auc_trapezoid(const std::vector<double>& scores, const std::vector<int>& labels) {
    size_t n_pos = 0, n_neg = 0;
    check_scored(scores, labels, n_pos, n_neg);
    const size_t n = scores.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    // 2 * integer area under the (fp, tp) step curve with trapezoids across
    // tie groups; exact until the single final division.
    uint64_t area2 = 0;
    uint64_t tp = 0, fp = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        uint64_t tp_prev = tp, fp_prev = fp;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) {
                ++tp;
            } else {
                ++fp;
            }
        }
        area2 += (fp - fp_prev) * (tp_prev + tp);
        i = j;
    }
    return static_cast<double>(area2) /
           (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

BacktestResult backtest(const DesignMatrix& d, const FitConfig& cfg, double train_fraction,
                        SplitMode mode) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw DataError("train_fraction must lie in (0,1)");
    }
    if (d.n_rows < 4) throw DataError("too few rows to split");
    size_t n_train = static_cast<size_t>(std::llround(train_fraction * d.n_rows));
    n_train = std::clamp<size_t>(n_train, 1, d.n_rows - 1);

    std::vector<uint8_t> in_train(d.n_rows, 0);
    if (mode == SplitMode::Chrono) {
        std::fill(in_train.begin(), in_train.begin() + n_train, 1);
    } else {
        std::vector<size_t> idx(d.n_rows);
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::mt19937_64 rng(cfg.seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t i = 0; i < n_train; ++i) in_train[idx[i]] = 1;
    }

    DesignMatrix train, test;
    train.col_names = test.col_names = d.col_names;
    train.width = test.width = d.width;
    for (size_t i = 0; i < d.n_rows; ++i) {
        DesignMatrix& dst = in_train[i] ? train : test;
        const double* x = d.row(i);
        dst.values.insert(dst.values.end(), x, x + d.width);
        dst.y.push_back(d.y[i]);
        ++dst.n_rows;
    }

    BacktestResult out;
    out.n_train = train.n_rows;
    out.n_test = test.n_rows;
    out.fit = cross_validate(train, cfg);
    out.test_scores.resize(test.n_rows);
    out.test_labels.resize(test.n_rows);
    for (size_t i = 0; i < test.n_rows; ++i) {
        const double* x = test.row(i);
        double z = 0.0;
        for (size_t j = 0; j < d.width; ++j) z += out.fit.beta[j] * x[j];
        out.test_scores[i] = z;
        out.test_labels[i] = static_cast<int>(test.y[i]);
    }
    out.auc = auc(out.test_scores, out.test_labels);
    return out;
}

std::vector<std::pair<std::string, size_t>> aggregate_selection(
    const std::vector<std::vector<std::string>>& orders, size_t top_k) {
    std::vector<std::pair<std::string, size_t>> counts;
    for (const auto& order : orders) {
        const size_t take = std::min(top_k, order.size());
        for (size_t i = 0; i < take; ++i) {
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [&](const auto& c) { return c.first == order[i]; });
            if (it == counts.end()) {
                counts.emplace_back(order[i], 1);
            } else {
                ++it->second;
            }
        }
    }
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return counts;
}

std::string roc_to_csv(const std::vector<RocPoint>& points) {
    std::string out = "fpr,tpr\n";
    for (const RocPoint& p : points) {
        out += format_double(p.fpr);
        out += ",";
        out += format_double(p.tpr);
        out += "\n";
    }
    return out;
}

std::string auc_summary_to_csv(const std::vector<AucSummaryRow>& rows) {
    std::string out = "instrument,session,side,auc,n_train,n_test,lambda\n";
    for (const AucSummaryRow& r : rows) {
        out += r.instrument + "," + r.session + "," + r.side + ",";
        out += format_double(r.auc);
        out += "," + std::to_string(r.n_train) + "," + std::to_string(r.n_test) + ",";
        out += format_double(r.lambda);
        out += "\n";
    }
    return out;
}

std::string selection_report_to_csv(
    const std::vector<std::pair<std::string, size_t>>& counts) {
    std::string out = "rank,variable,count\n";
    for (size_t i = 0; i < counts.size(); ++i) {
        out += std::to_string(i + 1) + "," + counts[i].first + "," +
               std::to_string(counts[i].second) + "\n";
    }
    return out;
}

}  // namespace lobjump
