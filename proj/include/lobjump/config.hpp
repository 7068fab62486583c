#pragma once

#include <cstdint>
#include <string>

#include "lobjump/evaluation.hpp"
#include "lobjump/lasso.hpp"
#include "lobjump/simulator.hpp"
#include "lobjump/types.hpp"

namespace lobjump {

// Flat key = value run configuration; one pair per line, '#' comments.
// Unknown keys are rejected. The single `seed` feeds the simulator, fold
// assignment, and random splits alike.
struct RunConfig {
    double tick_size = 0.01;
    int depth = 5;      // visible book depth L
    int lags_book = 5;  // m: snapshot lags entering the design
    int lags_flow = 5;  // n: event-dummy lags entering the design
    std::string session = "ALLDAY";
    Side side = Side::Bid;  // which jump label downstream stages fit
    double split = 0.7;
    SplitMode split_mode = SplitMode::Chrono;
    uint64_t seed = 1;
    std::string out_dir = ".";
    std::string instrument = "SIM";
    int curve_points = 50;
    int curve_min_count = 50;
    FitConfig fit;
    SimConfig sim;
};

RunConfig run_config_from_text(const std::string& text);
RunConfig parse_run_config(const std::string& path);

}  // namespace lobjump
