#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobjump/book.hpp"
#include "lobjump/labeler.hpp"

namespace lobjump {

enum class CurveSide : uint8_t { Buy, Sell };

struct CurvePoint {
    double x = 0.0;
    size_t n = 0;
    double p_hat = 0.0;
};

// Conditional trade-sign frequencies against the cumulative bid/ask volume
// ratio W(depth), measured at the event just before each trade. The buy
// curve conditions on W >= x (ask-light books), the sell curve on W <= x.
// Grid points whose conditioning set is smaller than min_count are omitted.
struct CondProbCurve {
    int depth = 0;
    CurveSide side = CurveSide::Buy;
    std::vector<CurvePoint> points;
};

// W(depth) just before each signed trade, paired with the trade sign
// (+1 buy, -1 sell). Trades whose prior snapshot lacks depth on either side,
// or that open the stream, are skipped.
std::vector<std::pair<double, int>> w_before_trades(const std::vector<LabeledTrade>& trades,
                                                    const std::vector<BookSnapshot>& snapshots,
                                                    int depth);

// Evenly spaced threshold grid spanning the empirical W range.
std::vector<double> w_threshold_grid(const std::vector<std::pair<double, int>>& samples,
                                     int n_points);

CondProbCurve tradesign_curve(const std::vector<LabeledTrade>& trades,
                              const std::vector<BookSnapshot>& snapshots, int depth,
                              const std::vector<double>& grid, size_t min_count,
                              CurveSide side);

std::string curves_to_csv(const std::vector<CondProbCurve>& curves);

}  // namespace lobjump
