#include "lobjump/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lobjump/book.hpp"
#include "lobjump/csv.hpp"
#include "lobjump/evaluation.hpp"
#include "lobjump/features.hpp"
#include "lobjump/labeler.hpp"

namespace lobjump {

namespace {

inline double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Position of a planted coefficient in lag-0 feature space.
struct PlantedTerm {
    int block;   // 0 = r1, 1 = r2, 2 = v_mo
    size_t idx;  // index within the block
    double coef;
};

std::vector<PlantedTerm> resolve_planted(const SimConfig& cfg) {
    std::vector<PlantedTerm> terms;
    const std::vector<std::string> r1 = r1_names(cfg.depth, 0);
    const std::vector<std::string> r2 = r2_names(0);
    for (const auto& [name, coef] : cfg.planted_gamma) {
        bool found = false;
        if (name == "VMO_0") {
            terms.push_back({2, 0, coef});
            found = true;
        }
        for (size_t i = 0; !found && i < r1.size(); ++i) {
            if (r1[i] == name) {
                terms.push_back({0, i, coef});
                found = true;
            }
        }
        for (size_t i = 0; !found && i < r2.size(); ++i) {
            if (r2[i] == name) {
                terms.push_back({1, i, coef});
                found = true;
            }
        }
        if (!found) {
            throw DataError("planted coefficient names unknown lag-0 feature: " + name);
        }
    }
    return terms;
}

void validate(const SimConfig& cfg) {
    if (cfg.n_events < 4) throw DataError("n_events too small");
    if (cfg.depth < 1) throw DataError("depth must be at least 1");
    if (cfg.guard_margin < 1) throw DataError("guard_margin must be at least 1");
    if (cfg.init_levels < cfg.depth + cfg.guard_margin) {
        throw DataError("init_levels must cover depth + guard_margin");
    }
    if (cfg.rate_limit < 0 || cfg.rate_cancel < 0 || cfg.rate_market < 0 ||
        cfg.rate_limit + cfg.rate_cancel + cfg.rate_market <= 0) {
        throw DataError("event rates must be non-negative with a positive sum");
    }
    if (cfg.place_window_ticks < 1) throw DataError("place_window_ticks must be positive");
    if (cfg.limit_size_mean <= 1.0) throw DataError("limit_size_mean must exceed 1");
    if (cfg.mo_size_mean <= 2.0) throw DataError("mo_size_mean must exceed 2");
    if (cfg.init_mid_ticks < cfg.init_levels + cfg.place_window_ticks + 2) {
        throw DataError("init_mid_ticks too low for the initial book");
    }
    if (!(cfg.tick_size > 0)) throw DataError("tick_size must be positive");
    if (cfg.window.end_ms <= cfg.window.start_ms) throw DataError("empty session window");
}

struct Generator {
    const SimConfig& cfg;
    std::mt19937_64 rng;
    BookState book;
    SimOutput out;
    uint64_t next_seq = 1;
    int64_t ts = 0;
    double mean_dt_ms = 1.0;
    int min_levels = 0;
    std::vector<PlantedTerm> terms;

    // Jump steering: outcome committed for the most recent trade, to be
    // realized by the next market order.
    bool pending = false;
    uint8_t pending_j = 0;
    int64_t pending_ref = 0;   // best quote on the planted side after that trade
    size_t pending_truth = 0;  // its index in out.truth / out.realized_jump

    explicit Generator(const SimConfig& c) : cfg(c), rng(c.seed) {
        min_levels = cfg.depth + cfg.guard_margin;
        terms = resolve_planted(cfg);
        ts = cfg.window.start_ms;
        mean_dt_ms = 0.9 * static_cast<double>(cfg.window.end_ms - cfg.window.start_ms) /
                     static_cast<double>(cfg.n_events);
    }

    size_t budget_left() const {
        return cfg.n_events >= next_seq - 1 ? cfg.n_events - (next_seq - 1) : 0;
    }

    void advance_clock() {
        std::exponential_distribution<double> exp_dt(1.0 / mean_dt_ms);
        ts = std::min<int64_t>(ts + std::llround(exp_dt(rng)), cfg.window.end_ms - 1);
    }

    ExecutionReport emit(EventKind kind, Side side, int64_t price, int64_t size) {
        advance_clock();
        LobEvent ev{next_seq++, ts, kind, side, price, size};
        ExecutionReport rep = apply_event(book, ev);
        out.events.push_back(ev);
        out.digests.push_back(book_hash(book));
        return rep;
    }

    int64_t draw_limit_size() {
        std::geometric_distribution<int64_t> g(1.0 / cfg.limit_size_mean);
        return 1 + g(rng);
    }

    int64_t draw_mo_size() {
        std::geometric_distribution<int64_t> g(1.0 / (cfg.mo_size_mean - 2.0 + 1.0));
        return 2 + g(rng);
    }

    int64_t uniform_in(int64_t lo, int64_t hi) {
        return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
    }

    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

    // Ask arrivals are pushed above the bid reference while a no-jump outcome
    // is pending on the bid side (mirrored for asks), so the reference quote
    // can always be restored without crossing.
    void limit_arrival(Side side) {
        const int64_t k = cfg.place_window_ticks;
        int64_t price;
        if (side == Side::Bid) {
            int64_t anchor = *book.best_ask();
            if (pending && pending_j == 0 && cfg.planted_side == Side::Ask) {
                anchor = std::min(anchor, pending_ref);
            }
            const int64_t hi = anchor - 1;
            const int64_t lo = std::max<int64_t>(1, anchor - k);
            if (lo > hi) return;
            price = uniform_in(lo, hi);
        } else {
            int64_t anchor = *book.best_bid();
            if (pending && pending_j == 0 && cfg.planted_side == Side::Bid) {
                anchor = std::max(anchor, pending_ref);
            }
            price = uniform_in(anchor + 1, anchor + k);
        }
        emit(EventKind::LimitArrival, side, price, draw_limit_size());
    }

    void cancel_something() {
        for (int attempt = 0; attempt < 4; ++attempt) {
            const Side side = coin() ? Side::Bid : Side::Ask;
            const size_t depth = book.depth(side);
            if (depth == 0) continue;
            const size_t pick = static_cast<size_t>(uniform_in(0, static_cast<int64_t>(depth) - 1));
            int64_t price = 0, resting = 0;
            if (side == Side::Bid) {
                auto it = book.bids.begin();
                std::advance(it, pick);
                price = it->first;
                resting = it->second;
            } else {
                auto it = book.asks.begin();
                std::advance(it, pick);
                price = it->first;
                resting = it->second;
            }
            int64_t amount = uniform_in(1, resting);
            if (amount == resting && depth <= static_cast<size_t>(min_levels)) {
                if (resting == 1) continue;  // cannot shrink, try another level
                amount = uniform_in(1, resting - 1);
            }
            emit(EventKind::LimitCancel, side, price, amount);
            return;
        }
        limit_arrival(coin() ? Side::Bid : Side::Ask);
    }

    // Add a level behind the worst price of `side`.
    void deepen(Side side) {
        if (side == Side::Bid) {
            const int64_t worst = book.bids.rbegin()->first;
            if (worst <= 1) throw DataError("price floor reached; raise init_mid_ticks");
            emit(EventKind::LimitArrival, Side::Bid, worst - 1, draw_limit_size());
        } else {
            const int64_t worst = book.asks.rbegin()->first;
            emit(EventKind::LimitArrival, Side::Ask, worst + 1, draw_limit_size());
        }
    }

    // Largest market-order size that leaves min_levels levels resting.
    int64_t mo_allowance(Side side) const {
        std::vector<int64_t> sizes;
        if (side == Side::Bid) {
            for (const auto& [p, s] : book.bids) sizes.push_back(s);
        } else {
            for (const auto& [p, s] : book.asks) sizes.push_back(s);
        }
        if (sizes.size() <= static_cast<size_t>(min_levels)) {
            return sizes.empty() ? 0 : sizes[0] - 1;
        }
        const size_t full = sizes.size() - static_cast<size_t>(min_levels);
        int64_t allowed = 0;
        for (size_t i = 0; i < full; ++i) allowed += sizes[i];
        allowed += sizes[full] - 1;
        return allowed;
    }

    size_t levels_beyond_ref(Side side, int64_t ref) const {
        // Levels at or inside the reference: bids >= ref, asks <= ref.
        size_t n = 0;
        if (side == Side::Bid) {
            for (const auto& [p, s] : book.bids) {
                if (p >= ref) {
                    ++n;
                } else {
                    break;
                }
            }
        } else {
            for (const auto& [p, s] : book.asks) {
                if (p <= ref) {
                    ++n;
                } else {
                    break;
                }
            }
        }
        return n;
    }

    // Upper bound on the events a market order may need right now, counting
    // steering prologue and depth guards.
    size_t mo_event_estimate() const {
        size_t n = 1 + 4;
        if (pending && pending_j == 1) {
            n += levels_beyond_ref(cfg.planted_side, pending_ref);
            n += static_cast<size_t>(min_levels);
        }
        if (pending && pending_j == 0) n += 1;
        return n;
    }

    // Lag-0 feature row of the trade just applied; the post-trade snapshot is
    // complete by the depth guard.
    double planted_probability(const LobEvent& ev, const ExecutionReport& rep) {
        BookSnapshot snap =
            take_snapshot(book, cfg.depth, cfg.tick_size, ev.seq, ev.timestamp_ms, &rep);
        snap.flags = classify_event(ev, rep);
        const std::vector<double> r1 = r1_vector(snap);
        const std::vector<double> r2 = r2_vector(snap);
        double z = cfg.planted_gamma0;
        for (const PlantedTerm& t : terms) {
            if (t.block == 0) {
                z += t.coef * r1[t.idx];
            } else if (t.block == 1) {
                z += t.coef * r2[t.idx];
            } else {
                z += t.coef * snap.v_mo;
            }
        }
        return sigmoid(z);
    }

    void market_order() {
        // Steering prologue for the committed outcome, if any.
        Side mo_side = coin() ? Side::Bid : Side::Ask;
        double p_buy = -1.0;
        if (cfg.planted_mode == PlantedMode::Sign) {
            const double w = std::log(static_cast<double>(book.bids.begin()->second)) -
                             std::log(static_cast<double>(book.asks.begin()->second));
            p_buy = sigmoid(cfg.planted_sign_c * w);
            std::bernoulli_distribution buy(p_buy);
            mo_side = buy(rng) ? Side::Ask : Side::Bid;
        } else if (pending && pending_j == 1) {
            const Side ps = cfg.planted_side;
            // Keep enough depth strictly beyond the reference, then clear
            // every level at or inside it; the next trade must gap past R.
            if (ps == Side::Bid) {
                while (book.depth(Side::Bid) - levels_beyond_ref(ps, pending_ref) <
                       static_cast<size_t>(min_levels)) {
                    int64_t p = std::min(book.bids.rbegin()->first, pending_ref) - 1;
                    if (p < 1) throw DataError("price floor reached; raise init_mid_ticks");
                    emit(EventKind::LimitArrival, Side::Bid, p, draw_limit_size());
                }
                while (!book.bids.empty() && book.bids.begin()->first >= pending_ref) {
                    emit(EventKind::LimitCancel, Side::Bid, book.bids.begin()->first,
                         book.bids.begin()->second);
                }
            } else {
                while (book.depth(Side::Ask) - levels_beyond_ref(ps, pending_ref) <
                       static_cast<size_t>(min_levels)) {
                    int64_t p = std::max(book.asks.rbegin()->first, pending_ref) + 1;
                    emit(EventKind::LimitArrival, Side::Ask, p, draw_limit_size());
                }
                while (!book.asks.empty() && book.asks.begin()->first <= pending_ref) {
                    emit(EventKind::LimitCancel, Side::Ask, book.asks.begin()->first,
                         book.asks.begin()->second);
                }
            }
            mo_side = ps;
        } else if (pending && pending_j == 0) {
            // Restore the reference quote if background flow wore it away.
            if (cfg.planted_side == Side::Bid && *book.best_bid() < pending_ref) {
                emit(EventKind::LimitArrival, Side::Bid, pending_ref, draw_limit_size());
            } else if (cfg.planted_side == Side::Ask && *book.best_ask() > pending_ref) {
                emit(EventKind::LimitArrival, Side::Ask, pending_ref, draw_limit_size());
            }
        }

        int64_t allowed = mo_allowance(mo_side);
        while (allowed < 2) {
            deepen(mo_side);
            allowed = mo_allowance(mo_side);
        }
        const int64_t size = std::clamp<int64_t>(draw_mo_size(), 2, allowed);
        advance_clock();
        const LobEvent ev{next_seq++, ts, EventKind::MarketOrder, mo_side, 0, size};
        const ExecutionReport rep = apply_event(book, ev);
        out.events.push_back(ev);
        out.digests.push_back(book_hash(book));

        // Realize the outcome committed at the previous trade.
        if (pending) {
            const bool jumped = cfg.planted_side == Side::Bid
                                    ? (mo_side == Side::Bid && rep.best_before_ticks < pending_ref)
                                    : (mo_side == Side::Ask && rep.best_before_ticks > pending_ref);
            if (jumped != (pending_j == 1)) {
                throw std::logic_error("jump steering failed to realize committed outcome");
            }
            out.realized_jump[pending_truth] = pending_j;
            pending = false;
        }

        TruthRow row;
        row.seq = ev.seq;
        row.true_p_buy = p_buy;
        out.realized_sign.push_back(mo_side == Side::Ask ? int8_t{1} : int8_t{-1});
        out.realized_jump.push_back(kJumpUnset);

        if (cfg.planted_mode == PlantedMode::Jump) {
            const double p = planted_probability(ev, rep);
            if (cfg.planted_side == Side::Bid) {
                row.true_p_jump_bid = p;
            } else {
                row.true_p_jump_ask = p;
            }
            std::bernoulli_distribution jump(p);
            pending = true;
            pending_j = jump(rng) ? 1 : 0;
            pending_ref = cfg.planted_side == Side::Bid ? *book.best_bid() : *book.best_ask();
            pending_truth = out.truth.size();
        }
        out.truth.push_back(row);
    }

    SimOutput run() {
        // Seed the book as explicit arrival events so replay sees everything.
        for (int i = 0; i < cfg.init_levels; ++i) {
            emit(EventKind::LimitArrival, Side::Bid, cfg.init_mid_ticks - 1 - i,
                 draw_limit_size());
            emit(EventKind::LimitArrival, Side::Ask, cfg.init_mid_ticks + 1 + i,
                 draw_limit_size());
        }

        const double total = cfg.rate_limit + cfg.rate_cancel + cfg.rate_market;
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        while (budget_left() > 0) {
            const double u = u01(rng) * total;
            if (u < cfg.rate_limit) {
                limit_arrival(coin() ? Side::Bid : Side::Ask);
            } else if (u < cfg.rate_limit + cfg.rate_cancel) {
                cancel_something();
            } else {
                if (budget_left() >= mo_event_estimate()) {
                    market_order();
                } else {
                    limit_arrival(coin() ? Side::Bid : Side::Ask);
                }
            }
        }
        out.planted_mode = cfg.planted_mode;
        out.planted_side = cfg.planted_side;
        return std::move(out);
    }
};

}  // namespace

SimOutput simulate(const SimConfig& cfg) {
    validate(cfg);
    Generator gen(cfg);
    return gen.run();
}

double bayes_auc(const SimOutput& out) {
    std::vector<double> scores;
    std::vector<int> labels;
    if (out.planted_mode == PlantedMode::Jump) {
        for (size_t i = 0; i < out.truth.size(); ++i) {
            if (out.realized_jump[i] == kJumpUnset) continue;
            scores.push_back(out.planted_side == Side::Bid ? out.truth[i].true_p_jump_bid
                                                           : out.truth[i].true_p_jump_ask);
            labels.push_back(out.realized_jump[i]);
        }
    } else if (out.planted_mode == PlantedMode::Sign) {
        for (size_t i = 0; i < out.truth.size(); ++i) {
            scores.push_back(out.truth[i].true_p_buy);
            labels.push_back(out.realized_sign[i] > 0 ? 1 : 0);
        }
    } else {
        throw DataError("bayes_auc needs planted simulator output");
    }
    return auc(scores, labels);
}

std::string truth_to_csv(const SimOutput& out) {
    std::string s = "seq,true_p_jump_bid,true_p_jump_ask,true_p_buy\n";
    for (const TruthRow& r : out.truth) {
        s += std::to_string(r.seq) + ",";
        s += format_double(r.true_p_jump_bid);
        s += ",";
        s += format_double(r.true_p_jump_ask);
        s += ",";
        s += format_double(r.true_p_buy);
        s += "\n";
    }
    return s;
}

std::vector<TruthRow> truth_from_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "seq,true_p_jump_bid,true_p_jump_ask,true_p_buy") {
        throw DataError("bad truth file header in " + path);
    }
    std::vector<TruthRow> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        if (f.size() != 4) throw DataError("truth line " + std::to_string(i + 1) + " malformed");
        TruthRow r;
        r.seq = static_cast<uint64_t>(parse_int(f[0], "seq", i + 1));
        r.true_p_jump_bid = parse_double(f[1], "true_p_jump_bid", i + 1);
        r.true_p_jump_ask = parse_double(f[2], "true_p_jump_ask", i + 1);
        r.true_p_buy = parse_double(f[3], "true_p_buy", i + 1);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace lobjump
