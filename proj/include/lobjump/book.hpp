#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lobjump/types.hpp"

namespace lobjump {

// Full-depth book: price -> resting size, bids descending, asks ascending.
// Depth beyond the visible L levels is retained so refills after trades are
// exact. All arithmetic is in integer ticks; log transforms happen only at
// snapshot time.
struct BookState {
    std::map<int64_t, int64_t, std::greater<int64_t>> bids;
    std::map<int64_t, int64_t> asks;

    std::optional<int64_t> best_bid() const {
        if (bids.empty()) return std::nullopt;
        return bids.begin()->first;
    }
    std::optional<int64_t> best_ask() const {
        if (asks.empty()) return std::nullopt;
        return asks.begin()->first;
    }
    size_t depth(Side s) const { return s == Side::Bid ? bids.size() : asks.size(); }
    int64_t total_size(Side s) const;
};

struct Fill {
    int64_t price_ticks = 0;
    int64_t size = 0;
};

// What apply_event did. For market orders it records the fill detail per
// level plus the pre-event best level (price and size), which downstream
// labeling needs: the trade price convention is the pre-consumption best
// quote, and trade-through is judged against the pre-event best-level size.
struct ExecutionReport {
    uint64_t seq = 0;
    EventKind kind = EventKind::LimitArrival;
    Side side = Side::Bid;
    int64_t requested = 0;
    int64_t filled = 0;
    std::vector<Fill> fills;
    int64_t best_before_ticks = 0;       // consumed side, 0 if side was empty
    int64_t best_after_ticks = 0;        // 0 if side emptied
    int64_t best_level_size_before = 0;  // resting size at best_before_ticks
    bool consumed_beyond_best = false;   // order size > best_level_size_before
};

// Applies one event in place and reports what happened.
//   LIMIT_ARRIVAL  adds size at price (creating the level if absent);
//   LIMIT_CANCEL   removes size (deleting the level at zero);
//   MARKET_ORDER   consumes from the best level of `side`, walking deeper
//                  levels until filled.
// Throws DataError for: cancel exceeding the resting size, cancel at an
// absent level, market order exceeding total visible side depth, limit
// arrival that would cross the book, and size < 1.
ExecutionReport apply_event(BookState& state, const LobEvent& ev);

// L-level truncation of the book just after an event, in the log domain.
// Level arrays may be shorter than `depth` when a side is thin; `complete`
// marks snapshots with L populated levels on both sides. Gaps and spread are
// filled only where both participating levels exist.
struct BookSnapshot {
    uint64_t seq = 0;
    int64_t timestamp_ms = 0;
    int depth = 0;
    bool complete = false;

    std::vector<double> bid_logp, bid_logv;  // level 1 first
    std::vector<double> ask_logp, ask_logv;
    std::vector<double> bid_gap, ask_gap;  // gap i between levels i and i+1
    double spread = 0.0;

    // Trade fields; zero when the event is not a market order. p_mo is the
    // log of the pre-consumption best quote on the consumed side.
    double p_mo = 0.0;
    double v_mo = 0.0;

    // Exact tick-domain companions used for label comparisons.
    int64_t best_bid_ticks = 0;
    int64_t best_ask_ticks = 0;
    int64_t p_mo_ticks = 0;

    EventFlags flags;
};

// Snapshot of `state` to depth L. `report` supplies the trade fields when the
// event was a market order; pass nullptr for limit events.
BookSnapshot take_snapshot(const BookState& state, int L, double tick_size,
                           uint64_t seq, int64_t timestamp_ms,
                           const ExecutionReport* report = nullptr);

// Order-sensitive digest of the full book (all levels, both sides). Two books
// hash equal iff every level matches; used for replay-vs-simulator oracles.
uint64_t book_hash(const BookState& state);

}  // namespace lobjump
