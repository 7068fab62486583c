#include "lobjump/labeler.hpp"

#include <sstream>

#include "lobjump/csv.hpp"

namespace lobjump {

EventFlags classify_event(const LobEvent& ev, const ExecutionReport& report) {
    EventFlags f;
    switch (ev.kind) {
        case EventKind::LimitArrival:
        case EventKind::LimitCancel:
            (ev.side == Side::Bid ? f.blo : f.alo) = 1;
            break;
        case EventKind::MarketOrder:
            if (ev.side == Side::Bid) {
                f.bmo = 1;
                f.btt = report.consumed_beyond_best ? 1 : 0;
            } else {
                f.amo = 1;
                f.att = report.consumed_beyond_best ? 1 : 0;
            }
            break;
    }
    return f;
}

std::vector<LabeledTrade> label_jumps(const std::vector<BookSnapshot>& snapshots) {
    std::vector<LabeledTrade> trades;
    for (const auto& snap : snapshots) {
        if (!snap.flags.bmo && !snap.flags.amo) continue;
        LabeledTrade t;
        t.k = static_cast<int64_t>(trades.size());
        t.t_seq = snap.seq;
        t.sign = snap.flags.amo ? +1 : -1;
        t.v_mo_log = snap.v_mo;
        t.tt = snap.flags.btt | snap.flags.att;
        trades.push_back(t);
    }
    if (trades.size() < 2) {
        for (auto& t : trades) t.has_label = 0;
        return trades;
    }

    // Post-trade references come from the snapshot at the trade's own seq;
    // the next trade's price is its pre-consumption best quote.
    std::vector<const BookSnapshot*> trade_snaps;
    trade_snaps.reserve(trades.size());
    for (const auto& snap : snapshots) {
        if (snap.flags.bmo || snap.flags.amo) trade_snaps.push_back(&snap);
    }
    for (size_t i = 0; i + 1 < trades.size(); ++i) {
        const BookSnapshot& here = *trade_snaps[i];
        const BookSnapshot& next = *trade_snaps[i + 1];
        trades[i].has_label = 1;
        trades[i].y_bid =
            (here.best_bid_ticks > 0 && next.p_mo_ticks < here.best_bid_ticks) ? 1 : 0;
        trades[i].y_ask =
            (here.best_ask_ticks > 0 && next.p_mo_ticks > here.best_ask_ticks) ? 1 : 0;
    }
    return trades;
}

std::string labeled_trades_to_csv(const std::vector<LabeledTrade>& trades) {
    std::ostringstream out;
    out << "k,t_seq,sign,v_mo_log,tt,y_bid,y_ask\n";
    for (const auto& t : trades) {
        out << t.k << ',' << t.t_seq << ',' << t.sign << ',' << format_double(t.v_mo_log) << ','
            << int(t.tt) << ',';
        if (t.has_label) {
            out << int(t.y_bid) << ',' << int(t.y_ask);
        } else {
            out << ',';
        }
        out << '\n';
    }
    return out.str();
}

std::vector<LabeledTrade> labeled_trades_from_csv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "k,t_seq,sign,v_mo_log,tt,y_bid,y_ask") {
        throw DataError("bad labeled-trade header in " + path, 1);
    }
    std::vector<LabeledTrade> trades;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 7) {
            throw DataError("line " + std::to_string(i + 1) + ": expected 7 fields in " + path,
                            i + 1);
        }
        LabeledTrade t;
        t.k = parse_int(f[0], "k", i + 1);
        t.t_seq = static_cast<uint64_t>(parse_int(f[1], "t_seq", i + 1));
        t.sign = static_cast<int>(parse_int(f[2], "sign", i + 1));
        t.v_mo_log = parse_double(f[3], "v_mo_log", i + 1);
        t.tt = static_cast<uint8_t>(parse_int(f[4], "tt", i + 1));
        if (f[5].empty() && f[6].empty()) {
            t.has_label = 0;
        } else {
            t.has_label = 1;
            t.y_bid = static_cast<uint8_t>(parse_int(f[5], "y_bid", i + 1));
            t.y_ask = static_cast<uint8_t>(parse_int(f[6], "y_ask", i + 1));
        }
        trades.push_back(t);
    }
    return trades;
}

}  // namespace lobjump
