#include "lobjump/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lobjump/csv.hpp"
#include "lobjump/labeler.hpp"

namespace lobjump {

namespace {

constexpr const char* kEventHeader = "seq,timestamp_ms,kind,side,price_ticks,size";

EventKind parse_kind(const std::string& s, uint64_t line_no) {
    if (s == "LA") return EventKind::LimitArrival;
    if (s == "LC") return EventKind::LimitCancel;
    if (s == "MO") return EventKind::MarketOrder;
    throw DataError("line " + std::to_string(line_no) + ": bad kind '" + s + "'", line_no);
}

Side parse_side(const std::string& s, uint64_t line_no) {
    if (s == "B") return Side::Bid;
    if (s == "A") return Side::Ask;
    throw DataError("line " + std::to_string(line_no) + ": bad side '" + s + "'", line_no);
}

}  // namespace

SessionWindow SessionWindow::from_name(const std::string& name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (up == "MORNING") return morning();
    if (up == "AFTERNOON") return afternoon();
    if (up == "ALLDAY") return allday();
    throw DataError("unknown session window '" + name + "'", 0);
}

ParseResult parse_events(const std::string& path, const SessionWindow& window) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kEventHeader) {
        throw DataError("missing or bad event header in " + path + " (expected '" +
                            kEventHeader + "')",
                        1);
    }
    ParseResult result;
    uint64_t prev_seq = 0;
    int64_t prev_ts = 0;
    bool first = true;
    for (size_t i = 1; i < lines.size(); ++i) {
        const uint64_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 6) {
            throw DataError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                std::to_string(f.size()),
                            line_no);
        }
        LobEvent ev;
        ev.seq = static_cast<uint64_t>(parse_int(f[0], "seq", line_no));
        ev.timestamp_ms = parse_int(f[1], "timestamp_ms", line_no);
        ev.kind = parse_kind(f[2], line_no);
        ev.side = parse_side(f[3], line_no);
        ev.price_ticks = parse_int(f[4], "price_ticks", line_no);
        ev.size = parse_int(f[5], "size", line_no);

        if (!first && ev.seq <= prev_seq) {
            throw DataError("line " + std::to_string(line_no) + ": seq " +
                                std::to_string(ev.seq) + " not strictly increasing (prev " +
                                std::to_string(prev_seq) + ")",
                            line_no);
        }
        if (!first && ev.timestamp_ms < prev_ts) {
            throw DataError("line " + std::to_string(line_no) + ": timestamp " +
                                std::to_string(ev.timestamp_ms) + " decreases",
                            line_no);
        }
        if (ev.size < 1) {
            throw DataError("line " + std::to_string(line_no) + ": size must be >= 1", line_no);
        }
        if (ev.kind == EventKind::MarketOrder && ev.price_ticks != 0) {
            throw DataError("line " + std::to_string(line_no) +
                                ": market order rows must carry price_ticks=0",
                            line_no);
        }
        if (ev.kind != EventKind::MarketOrder && ev.price_ticks < 1) {
            throw DataError("line " + std::to_string(line_no) + ": limit price must be >= 1",
                            line_no);
        }
        prev_seq = ev.seq;
        prev_ts = ev.timestamp_ms;
        first = false;

        if (!window.contains(ev.timestamp_ms)) {
            ++result.dropped_out_of_window;
            continue;
        }
        result.events.push_back(ev);
    }
    return result;
}

std::string events_to_csv(const std::vector<LobEvent>& events) {
    std::ostringstream out;
    out << kEventHeader << '\n';
    for (const auto& ev : events) {
        out << ev.seq << ',' << ev.timestamp_ms << ',' << to_string(ev.kind) << ','
            << to_string(ev.side) << ',' << ev.price_ticks << ',' << ev.size << '\n';
    }
    return out.str();
}

void write_events(const std::string& path, const std::vector<LobEvent>& events) {
    write_text_file(path, events_to_csv(events));
}

ReplayResult replay(const std::vector<LobEvent>& events, int L, double tick_size,
                    bool with_digests) {
    ReplayResult result;
    result.snapshots.reserve(events.size());
    if (with_digests) result.book_digests.reserve(events.size());
    BookState book;
    for (const auto& ev : events) {
        ExecutionReport rep = apply_event(book, ev);
        BookSnapshot snap = take_snapshot(book, L, tick_size, ev.seq, ev.timestamp_ms,
                                          ev.kind == EventKind::MarketOrder ? &rep : nullptr);
        snap.flags = classify_event(ev, rep);
        result.snapshots.push_back(std::move(snap));
        if (with_digests) result.book_digests.push_back(book_hash(book));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Snapshot CSV
// ---------------------------------------------------------------------------

namespace {

std::string snapshot_header(int L) {
    std::ostringstream h;
    h << "seq,timestamp_ms,depth,complete";
    for (int i = 1; i <= L; ++i) h << ",pb" << i;
    for (int i = 1; i <= L; ++i) h << ",vb" << i;
    for (int i = 1; i <= L; ++i) h << ",pa" << i;
    for (int i = 1; i <= L; ++i) h << ",va" << i;
    h << ",s";
    for (int i = 1; i < L; ++i) h << ",gb" << i;
    for (int i = 1; i < L; ++i) h << ",ga" << i;
    h << ",pmo,vmo,bb_ticks,ba_ticks,pmo_ticks,blo,alo,bmo,amo,btt,att";
    return h.str();
}

void append_padded(std::ostringstream& out, const std::vector<double>& v, int count) {
    for (int i = 0; i < count; ++i) {
        out << ',';
        if (i < static_cast<int>(v.size())) out << format_double(v[i]);
    }
}

}  // namespace

std::string snapshots_to_csv(const std::vector<BookSnapshot>& snapshots, int L) {
    std::ostringstream out;
    out << snapshot_header(L) << '\n';
    for (const auto& s : snapshots) {
        out << s.seq << ',' << s.timestamp_ms << ',' << s.depth << ',' << (s.complete ? 1 : 0);
        append_padded(out, s.bid_logp, L);
        append_padded(out, s.bid_logv, L);
        append_padded(out, s.ask_logp, L);
        append_padded(out, s.ask_logv, L);
        out << ',';
        if (!s.bid_logp.empty() && !s.ask_logp.empty()) out << format_double(s.spread);
        append_padded(out, s.bid_gap, L - 1);
        append_padded(out, s.ask_gap, L - 1);
        out << ',' << format_double(s.p_mo) << ',' << format_double(s.v_mo) << ','
            << s.best_bid_ticks << ',' << s.best_ask_ticks << ',' << s.p_mo_ticks << ','
            << int(s.flags.blo) << ',' << int(s.flags.alo) << ',' << int(s.flags.bmo) << ','
            << int(s.flags.amo) << ',' << int(s.flags.btt) << ',' << int(s.flags.att) << '\n';
    }
    return out.str();
}

std::vector<BookSnapshot> snapshots_from_csv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw DataError("empty snapshot file: " + path, 1);
    auto header = split_csv_line(lines[0]);
    if (header.size() < 5 || header[0] != "seq") {
        throw DataError("bad snapshot header in " + path, 1);
    }
    // Depth is recoverable from the header shape: 4 fixed + 4L levels + 1
    // spread + 2(L-1) gaps + 11 tail columns.
    int L = static_cast<int>((header.size() - 14) / 6);
    if (static_cast<size_t>(4 + 4 * L + 1 + 2 * (L - 1) + 11) != header.size()) {
        throw DataError("snapshot header of unexpected width in " + path, 1);
    }

    std::vector<BookSnapshot> snaps;
    for (size_t i = 1; i < lines.size(); ++i) {
        const uint64_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": field count mismatch in " +
                                path,
                            line_no);
        }
        BookSnapshot s;
        size_t c = 0;
        s.seq = static_cast<uint64_t>(parse_int(f[c++], "seq", line_no));
        s.timestamp_ms = parse_int(f[c++], "timestamp_ms", line_no);
        s.depth = static_cast<int>(parse_int(f[c++], "depth", line_no));
        s.complete = parse_int(f[c++], "complete", line_no) != 0;
        auto read_block = [&](std::vector<double>& dst, int count) {
            for (int j = 0; j < count; ++j, ++c) {
                if (!f[c].empty()) dst.push_back(parse_double(f[c], "level", line_no));
            }
        };
        read_block(s.bid_logp, L);
        read_block(s.bid_logv, L);
        read_block(s.ask_logp, L);
        read_block(s.ask_logv, L);
        if (!f[c].empty()) s.spread = parse_double(f[c], "spread", line_no);
        ++c;
        read_block(s.bid_gap, L - 1);
        read_block(s.ask_gap, L - 1);
        s.p_mo = parse_double(f[c++], "pmo", line_no);
        s.v_mo = parse_double(f[c++], "vmo", line_no);
        s.best_bid_ticks = parse_int(f[c++], "bb_ticks", line_no);
        s.best_ask_ticks = parse_int(f[c++], "ba_ticks", line_no);
        s.p_mo_ticks = parse_int(f[c++], "pmo_ticks", line_no);
        s.flags.blo = static_cast<uint8_t>(parse_int(f[c++], "blo", line_no));
        s.flags.alo = static_cast<uint8_t>(parse_int(f[c++], "alo", line_no));
        s.flags.bmo = static_cast<uint8_t>(parse_int(f[c++], "bmo", line_no));
        s.flags.amo = static_cast<uint8_t>(parse_int(f[c++], "amo", line_no));
        s.flags.btt = static_cast<uint8_t>(parse_int(f[c++], "btt", line_no));
        s.flags.att = static_cast<uint8_t>(parse_int(f[c++], "att", line_no));
        snaps.push_back(std::move(s));
    }
    return snaps;
}

}  // namespace lobjump
