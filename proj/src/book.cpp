#include "lobjump/book.hpp"

#include <cmath>
#include <numeric>

namespace lobjump {

namespace {

std::string describe(const LobEvent& ev) {
    return std::string(to_string(ev.kind)) + "/" + to_string(ev.side) +
           " price=" + std::to_string(ev.price_ticks) +
           " size=" + std::to_string(ev.size);
}

template <typename Map>
ExecutionReport consume(Map& levels, BookState& state, const LobEvent& ev) {
    ExecutionReport rep;
    rep.seq = ev.seq;
    rep.kind = ev.kind;
    rep.side = ev.side;
    rep.requested = ev.size;

    int64_t available = 0;
    for (const auto& [p, sz] : levels) available += sz;
    if (ev.size > available) {
        throw DataError("market order size " + std::to_string(ev.size) +
                            " exceeds visible depth " + std::to_string(available) +
                            " at seq " + std::to_string(ev.seq),
                        ev.seq);
    }

    rep.best_before_ticks = levels.begin()->first;
    rep.best_level_size_before = levels.begin()->second;
    rep.consumed_beyond_best = ev.size > rep.best_level_size_before;

    int64_t remaining = ev.size;
    while (remaining > 0) {
        auto it = levels.begin();
        int64_t take = std::min(remaining, it->second);
        rep.fills.push_back({it->first, take});
        rep.filled += take;
        remaining -= take;
        it->second -= take;
        if (it->second == 0) levels.erase(it);
    }
    rep.best_after_ticks = levels.empty() ? 0 : levels.begin()->first;
    (void)state;
    return rep;
}

}  // namespace

int64_t BookState::total_size(Side s) const {
    auto sum = [](const auto& m) {
        int64_t t = 0;
        for (const auto& [p, sz] : m) t += sz;
        return t;
    };
    return s == Side::Bid ? sum(bids) : sum(asks);
}

ExecutionReport apply_event(BookState& state, const LobEvent& ev) {
    if (ev.size < 1) {
        throw DataError("event size must be >= 1 at seq " + std::to_string(ev.seq), ev.seq);
    }

    switch (ev.kind) {
        case EventKind::LimitArrival: {
            if (ev.price_ticks < 1) {
                throw DataError("limit price must be >= 1 tick at seq " + std::to_string(ev.seq),
                                ev.seq);
            }
            if (ev.side == Side::Bid) {
                auto ask = state.best_ask();
                if (ask && ev.price_ticks >= *ask) {
                    throw DataError("bid arrival at " + std::to_string(ev.price_ticks) +
                                        " crosses best ask " + std::to_string(*ask) +
                                        " at seq " + std::to_string(ev.seq),
                                    ev.seq);
                }
                state.bids[ev.price_ticks] += ev.size;
            } else {
                auto bid = state.best_bid();
                if (bid && ev.price_ticks <= *bid) {
                    throw DataError("ask arrival at " + std::to_string(ev.price_ticks) +
                                        " crosses best bid " + std::to_string(*bid) +
                                        " at seq " + std::to_string(ev.seq),
                                    ev.seq);
                }
                state.asks[ev.price_ticks] += ev.size;
            }
            ExecutionReport rep;
            rep.seq = ev.seq;
            rep.kind = ev.kind;
            rep.side = ev.side;
            rep.requested = ev.size;
            return rep;
        }
        case EventKind::LimitCancel: {
            auto cancel = [&](auto& levels) {
                auto it = levels.find(ev.price_ticks);
                if (it == levels.end() || it->second < ev.size) {
                    int64_t resting = it == levels.end() ? 0 : it->second;
                    throw DataError("cancel of " + std::to_string(ev.size) + " exceeds resting " +
                                        std::to_string(resting) + " (" + describe(ev) +
                                        ") at seq " + std::to_string(ev.seq),
                                    ev.seq);
                }
                it->second -= ev.size;
                if (it->second == 0) levels.erase(it);
            };
            if (ev.side == Side::Bid)
                cancel(state.bids);
            else
                cancel(state.asks);
            ExecutionReport rep;
            rep.seq = ev.seq;
            rep.kind = ev.kind;
            rep.side = ev.side;
            rep.requested = ev.size;
            return rep;
        }
        case EventKind::MarketOrder: {
            if (state.depth(ev.side) == 0) {
                throw DataError("market order against empty " +
                                    std::string(to_string(ev.side)) + " side at seq " +
                                    std::to_string(ev.seq),
                                ev.seq);
            }
            return ev.side == Side::Bid ? consume(state.bids, state, ev)
                                        : consume(state.asks, state, ev);
        }
    }
    throw DataError("unknown event kind at seq " + std::to_string(ev.seq), ev.seq);
}

BookSnapshot take_snapshot(const BookState& state, int L, double tick_size, uint64_t seq,
                           int64_t timestamp_ms, const ExecutionReport* report) {
    BookSnapshot snap;
    snap.seq = seq;
    snap.timestamp_ms = timestamp_ms;
    snap.depth = L;

    auto log_price = [tick_size](int64_t ticks) {
        return std::log(static_cast<double>(ticks) * tick_size);
    };

    auto fill_side = [&](const auto& levels, std::vector<double>& logp,
                         std::vector<double>& logv) {
        int i = 0;
        for (const auto& [price, size] : levels) {
            if (i++ == L) break;
            logp.push_back(log_price(price));
            logv.push_back(std::log(static_cast<double>(size)));
        }
    };
    fill_side(state.bids, snap.bid_logp, snap.bid_logv);
    fill_side(state.asks, snap.ask_logp, snap.ask_logv);
    snap.complete = static_cast<int>(snap.bid_logp.size()) == L &&
                    static_cast<int>(snap.ask_logp.size()) == L;

    if (auto bb = state.best_bid()) snap.best_bid_ticks = *bb;
    if (auto ba = state.best_ask()) snap.best_ask_ticks = *ba;
    if (!snap.bid_logp.empty() && !snap.ask_logp.empty()) {
        snap.spread = snap.ask_logp[0] - snap.bid_logp[0];
    }
    for (size_t i = 0; i + 1 < snap.bid_logp.size(); ++i) {
        snap.bid_gap.push_back(snap.bid_logp[i] - snap.bid_logp[i + 1]);
    }
    for (size_t i = 0; i + 1 < snap.ask_logp.size(); ++i) {
        snap.ask_gap.push_back(snap.ask_logp[i + 1] - snap.ask_logp[i]);
    }

    if (report && report->kind == EventKind::MarketOrder) {
        snap.p_mo_ticks = report->best_before_ticks;
        snap.p_mo = log_price(report->best_before_ticks);
        snap.v_mo = std::log(static_cast<double>(report->filled));
    }
    return snap;
}

uint64_t book_hash(const BookState& state) {
    // FNV-1a over the ordered (price, size) stream with side separators.
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(0xb1d5);
    for (const auto& [p, s] : state.bids) {
        mix(static_cast<uint64_t>(p));
        mix(static_cast<uint64_t>(s));
    }
    mix(0xa5c5);
    for (const auto& [p, s] : state.asks) {
        mix(static_cast<uint64_t>(p));
        mix(static_cast<uint64_t>(s));
    }
    return h;
}

}  // namespace lobjump
