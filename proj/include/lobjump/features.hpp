#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobjump/book.hpp"
#include "lobjump/labeler.hpp"

namespace lobjump {

// Per-event book profile, ordered
//   [G^b_{L-1}..G^b_1, S, G^a_1..G^a_{L-1}, V^b_L..V^b_1, V^a_1..V^a_L],
// length 4L-1. Valid only for complete snapshots.
std::vector<double> r1_vector(const BookSnapshot& snap);

// Event-nature dummies ordered [BMO, AMO, BLO, ALO, BTT, ATT].
std::vector<double> r2_vector(const BookSnapshot& snap);

// Column names for one R1 lag, matching r1_vector's ordering:
// GB{L-1}_lag..GB1_lag, S_lag, GA1_lag.., VB{L}_lag..VB1_lag, VA1_lag...
std::vector<std::string> r1_names(int L, int lag);
std::vector<std::string> r2_names(int lag);

// Full design-row registry: intercept, VMO_0, m R1 lag blocks, n R2 lag
// blocks. Width 2 + m(4L-1) + 6n.
std::vector<std::string> design_column_names(int L, int m, int n);

// Bid-ask volume ratio at depth i: log of cumulative bid shares over
// cumulative ask shares down to depth i. Empty when the snapshot lacks i
// levels on either side.
std::optional<double> w_ratio(const BookSnapshot& snap, int depth);

struct DesignMatrix {
    std::vector<std::string> col_names;  // width entries, intercept first
    std::vector<double> values;          // row-major, n_rows * width
    std::vector<double> y;
    std::vector<uint64_t> row_seq;  // originating trade seq per row; empty
                                    // when loaded from CSV
    size_t n_rows = 0;
    size_t width = 0;
    uint64_t dropped_short_history = 0;
    uint64_t dropped_incomplete = 0;

    const double* row(size_t i) const { return values.data() + i * width; }
};

// Builds one row per labeled trade with a full m/n lag window of complete
// snapshots; lags index all events, not just trades. y comes from the bid or
// ask jump label per `side`. Rows with missing history or an incomplete
// snapshot anywhere in the window are dropped and counted.
DesignMatrix build_design(const std::vector<BookSnapshot>& snapshots,
                          const std::vector<LabeledTrade>& trades, int m, int n, Side side);

// Design CSV: header `y,intercept,<feature names...>`, one row per trade.
std::string design_to_csv(const DesignMatrix& d);
DesignMatrix design_from_csv(const std::string& path);

}  // namespace lobjump
