#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobjump/book.hpp"
#include "lobjump/types.hpp"

namespace lobjump {

// Session time window, milliseconds since midnight, [start, end). The presets
// split the trading day the same way the AM/PM datasets do.
struct SessionWindow {
    int64_t start_ms = 0;
    int64_t end_ms = 0;

    bool contains(int64_t ts) const { return ts >= start_ms && ts < end_ms; }

    static SessionWindow morning() { return {32700000, 47700000}; }    // 09:05-13:15
    static SessionWindow afternoon() { return {47700000, 62700000}; }  // 13:15-17:25
    static SessionWindow allday() { return {32700000, 62700000}; }     // 09:05-17:25

    // Accepts MORNING, AFTERNOON, ALLDAY (case-insensitive).
    static SessionWindow from_name(const std::string& name);
};

struct ParseResult {
    std::vector<LobEvent> events;
    uint64_t dropped_out_of_window = 0;
};

// Event-stream CSV: header `seq,timestamp_ms,kind,side,price_ticks,size`,
// kind in {LA,LC,MO}, side in {B,A}. Rows outside the window are dropped and
// counted; malformed rows and non-monotone seq raise DataError with the line
// number.
ParseResult parse_events(const std::string& path, const SessionWindow& window);

std::string events_to_csv(const std::vector<LobEvent>& events);
void write_events(const std::string& path, const std::vector<LobEvent>& events);

struct ReplayResult {
    std::vector<BookSnapshot> snapshots;   // one per event, post-application
    std::vector<uint64_t> book_digests;    // filled when with_digests is set
};

// Drives the book through the event sequence and takes one L-level snapshot
// instantaneously after each event, trade fields and nature flags included.
// apply_event failures propagate with their seq context.
ReplayResult replay(const std::vector<LobEvent>& events, int L, double tick_size,
                    bool with_digests = false);

// Snapshot CSV round-trip for the stage pipeline (this artifact format is
// ours; see README). Empty fields mark levels absent from thin books.
std::string snapshots_to_csv(const std::vector<BookSnapshot>& snapshots, int L);
std::vector<BookSnapshot> snapshots_from_csv(const std::string& path);

}  // namespace lobjump
