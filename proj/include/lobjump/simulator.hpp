#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lobjump/ingest.hpp"
#include "lobjump/types.hpp"

namespace lobjump {

enum class PlantedMode : uint8_t { None, Jump, Sign };

struct SimConfig {
    uint64_t seed = 1;
    size_t n_events = 50000;  // total stream length, initial book included
    SessionWindow window = SessionWindow::allday();

    int depth = 5;            // visible depth L the downstream stages will use
    double tick_size = 0.01;
    int init_levels = 30;     // starting levels per side
    int64_t init_mid_ticks = 10000;
    int guard_margin = 3;     // book never drops below depth + margin levels

    double rate_limit = 0.70;   // event-kind weights, normalized internally
    double rate_cancel = 0.18;
    double rate_market = 0.12;
    int place_window_ticks = 12;   // limit placement within K ticks of the opposite best
    double limit_size_mean = 40.0; // sizes are 1 + geometric
    double mo_size_mean = 8.0;     // sizes are 2 + geometric

    PlantedMode planted_mode = PlantedMode::None;
    Side planted_side = Side::Bid;  // which jump label the planted model drives
    double planted_gamma0 = 0.0;
    // Coefficients over lag-0 design columns (registry names, e.g. VB1_0,
    // BMO_0, VMO_0). Unknown names are rejected up front.
    std::vector<std::pair<std::string, double>> planted_gamma;
    double planted_sign_c = 2.0;  // P(buy) = sigmoid(c * W(1)) in sign mode
};

struct TruthRow {
    uint64_t seq = 0;  // market-order event
    double true_p_jump_bid = -1.0;  // -1 marks quantities the run did not plant
    double true_p_jump_ask = -1.0;
    double true_p_buy = -1.0;
};

constexpr uint8_t kJumpUnset = 255;

struct SimOutput {
    std::vector<LobEvent> events;
    std::vector<uint64_t> digests;  // ground-truth book hash after each event
    std::vector<TruthRow> truth;    // one row per market order, stream order
    // Per market order: the jump outcome the generator committed to for that
    // trade's own label (kJumpUnset when unplanted or never realized), and
    // the trade sign (+1 buy, -1 sell).
    std::vector<uint8_t> realized_jump;
    std::vector<int8_t> realized_sign;
    PlantedMode planted_mode = PlantedMode::None;
    Side planted_side = Side::Bid;
};

// Deterministic in cfg.seed. The emitted stream parses under the ingest
// grammar, replays without error, and keeps at least depth + guard_margin
// levels per side so depth-L snapshots stay complete.
SimOutput simulate(const SimConfig& cfg);

// AUC of the planted true probabilities against the outcomes the generator
// realized; the ceiling for any fitted model on this data. Jump mode scores
// trades with a realized next-trade outcome; sign mode scores every trade.
double bayes_auc(const SimOutput& out);

std::string truth_to_csv(const SimOutput& out);
std::vector<TruthRow> truth_from_csv(const std::string& path);

}  // namespace lobjump
