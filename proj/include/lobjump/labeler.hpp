#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobjump/book.hpp"

namespace lobjump {

// Classifies one event into the six nature dummies. Limit-order flags cover
// both arrivals and cancellations; a market order is additionally a
// trade-through when its size strictly exceeds the pre-event best-level size
// on the consumed side (ties are regular trades).
EventFlags classify_event(const LobEvent& ev, const ExecutionReport& report);

// Per-market-order record. Trade k is labeled from the relation between
// trade k+1's execution price and the best quotes just after trade k:
//   y_bid = 1  iff  p_mo(k+1) < best_bid(k)
//   y_ask = 1  iff  p_mo(k+1) > best_ask(k)
// The final trade of a session has no successor and carries no labels.
struct LabeledTrade {
    int64_t k = 0;       // trade ordinal within the session, 0-based
    uint64_t t_seq = 0;  // event seq of the market order
    int sign = 0;        // +1 buy (ask-side MO), -1 sell (bid-side MO)
    double v_mo_log = 0.0;
    uint8_t tt = 0;
    uint8_t has_label = 0;
    uint8_t y_bid = 0;
    uint8_t y_ask = 0;
};

// Scans a replayed snapshot sequence and labels every trade. Comparisons run
// on the exact tick-domain fields; a missing best quote after trade k (side
// emptied in a thin handcrafted book) yields label 0 on that side, since the
// strict inequality has no reference to exceed.
std::vector<LabeledTrade> label_jumps(const std::vector<BookSnapshot>& snapshots);

// Labeled-trade CSV: k,t_seq,sign,v_mo_log,tt,y_bid,y_ask (y fields empty on
// the final, unlabeled trade).
std::string labeled_trades_to_csv(const std::vector<LabeledTrade>& trades);
std::vector<LabeledTrade> labeled_trades_from_csv(const std::string& path);

}  // namespace lobjump
