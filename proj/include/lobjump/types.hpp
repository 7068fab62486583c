#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lobjump {

// Book side. For market orders the side names the book side being consumed:
// Side::Bid means a sell market order hitting the resting bids.
enum class Side : uint8_t { Bid, Ask };

enum class EventKind : uint8_t { LimitArrival, LimitCancel, MarketOrder };

inline const char* to_string(Side s) { return s == Side::Bid ? "B" : "A"; }

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::LimitArrival: return "LA";
        case EventKind::LimitCancel: return "LC";
        case EventKind::MarketOrder: return "MO";
    }
    return "?";
}

// One timestamped order-flow event. Prices live on the integer tick grid;
// market orders carry price_ticks = 0.
struct LobEvent {
    uint64_t seq = 0;
    int64_t timestamp_ms = 0;
    EventKind kind = EventKind::LimitArrival;
    Side side = Side::Bid;
    int64_t price_ticks = 0;
    int64_t size = 0;
};

// Per-event nature dummies. Exactly one of {blo, alo, bmo, amo} is set for a
// valid event; btt/att imply the matching market-order flag. Limit-order
// flags cover both arrivals and cancellations.
struct EventFlags {
    uint8_t blo = 0;
    uint8_t alo = 0;
    uint8_t bmo = 0;
    uint8_t amo = 0;
    uint8_t btt = 0;
    uint8_t att = 0;
};

// Raised for malformed events and file-format violations. Carries the seq
// (or line number) that triggered the problem so callers can surface it.
class DataError : public std::runtime_error {
  public:
    explicit DataError(std::string msg, uint64_t seq = 0)
        : std::runtime_error(std::move(msg)), seq_(seq) {}
    uint64_t seq() const { return seq_; }

  private:
    uint64_t seq_;
};

}  // namespace lobjump
