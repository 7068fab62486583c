#include "lobjump/config.hpp"

#include <algorithm>
#include <sstream>

#include "lobjump/csv.hpp"

namespace lobjump {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, size_t line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw DataError("line " + std::to_string(line) + ": expected true/false, got '" + v + "'");
}

Side parse_side(const std::string& v, size_t line) {
    if (v == "bid") return Side::Bid;
    if (v == "ask") return Side::Ask;
    throw DataError("line " + std::to_string(line) + ": expected bid/ask, got '" + v + "'");
}

std::vector<std::pair<std::string, double>> parse_gamma(const std::string& v, size_t line) {
    std::vector<std::pair<std::string, double>> out;
    if (v.empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const size_t colon = item.find(':');
        if (colon == std::string::npos || colon == 0) {
            throw DataError("line " + std::to_string(line) +
                            ": planted_gamma entries are name:value, got '" + item + "'");
        }
        out.emplace_back(trim(item.substr(0, colon)),
                         parse_double(trim(item.substr(colon + 1)), "planted_gamma", line));
    }
    return out;
}

}  // namespace

RunConfig run_config_from_text(const std::string& text) {
    RunConfig rc;
    std::stringstream ss(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        const size_t eq = raw.find('=');
        if (eq == std::string::npos) {
            throw DataError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(raw.substr(0, eq));
        const std::string val = trim(raw.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw DataError("line " + std::to_string(line_no) + ": empty key or value");
        }

        if (key == "tick_size") {
            rc.tick_size = parse_double(val, key, line_no);
        } else if (key == "depth") {
            rc.depth = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "lags_book") {
            rc.lags_book = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "lags_flow") {
            rc.lags_flow = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "session") {
            rc.session = val;
        } else if (key == "side") {
            rc.side = parse_side(val, line_no);
        } else if (key == "split") {
            rc.split = parse_double(val, key, line_no);
        } else if (key == "split_mode") {
            if (val == "chrono") {
                rc.split_mode = SplitMode::Chrono;
            } else if (val == "random") {
                rc.split_mode = SplitMode::Random;
            } else {
                throw DataError("line " + std::to_string(line_no) + ": bad split_mode '" + val +
                                "'");
            }
        } else if (key == "seed") {
            rc.seed = static_cast<uint64_t>(parse_int(val, key, line_no));
        } else if (key == "out_dir") {
            rc.out_dir = val;
        } else if (key == "instrument") {
            rc.instrument = val;
        } else if (key == "curve_points") {
            rc.curve_points = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "curve_min_count") {
            rc.curve_min_count = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "lambda_count") {
            rc.fit.lambda_count = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "lambda_min_ratio") {
            rc.fit.lambda_min_ratio = parse_double(val, key, line_no);
        } else if (key == "cv_folds") {
            rc.fit.cv_folds = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "cv_mode") {
            if (val == "stratified") {
                rc.fit.cv_mode = CvMode::Stratified;
            } else if (val == "chrono") {
                rc.fit.cv_mode = CvMode::Chrono;
            } else {
                throw DataError("line " + std::to_string(line_no) + ": bad cv_mode '" + val + "'");
            }
        } else if (key == "tol") {
            rc.fit.tol = parse_double(val, key, line_no);
        } else if (key == "kkt_tol") {
            rc.fit.kkt_tol = parse_double(val, key, line_no);
        } else if (key == "max_iter") {
            rc.fit.max_iter = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "standardize") {
            rc.fit.standardize = parse_bool(val, line_no);
        } else if (key == "sim_events") {
            rc.sim.n_events = static_cast<size_t>(parse_int(val, key, line_no));
        } else if (key == "init_levels") {
            rc.sim.init_levels = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "init_mid_ticks") {
            rc.sim.init_mid_ticks = parse_int(val, key, line_no);
        } else if (key == "guard_margin") {
            rc.sim.guard_margin = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "rate_limit") {
            rc.sim.rate_limit = parse_double(val, key, line_no);
        } else if (key == "rate_cancel") {
            rc.sim.rate_cancel = parse_double(val, key, line_no);
        } else if (key == "rate_market") {
            rc.sim.rate_market = parse_double(val, key, line_no);
        } else if (key == "place_window") {
            rc.sim.place_window_ticks = static_cast<int>(parse_int(val, key, line_no));
        } else if (key == "limit_size_mean") {
            rc.sim.limit_size_mean = parse_double(val, key, line_no);
        } else if (key == "mo_size_mean") {
            rc.sim.mo_size_mean = parse_double(val, key, line_no);
        } else if (key == "planted_mode") {
            if (val == "none") {
                rc.sim.planted_mode = PlantedMode::None;
            } else if (val == "jump") {
                rc.sim.planted_mode = PlantedMode::Jump;
            } else if (val == "sign") {
                rc.sim.planted_mode = PlantedMode::Sign;
            } else {
                throw DataError("line " + std::to_string(line_no) + ": bad planted_mode '" + val +
                                "'");
            }
        } else if (key == "planted_side") {
            rc.sim.planted_side = parse_side(val, line_no);
        } else if (key == "planted_gamma0") {
            rc.sim.planted_gamma0 = parse_double(val, key, line_no);
        } else if (key == "planted_gamma") {
            rc.sim.planted_gamma = parse_gamma(val, line_no);
        } else if (key == "planted_sign_c") {
            rc.sim.planted_sign_c = parse_double(val, key, line_no);
        } else {
            throw DataError("line " + std::to_string(line_no) + ": unknown config key '" + key +
                            "'");
        }
    }

    if (rc.depth < 1 || rc.lags_book < 1 || rc.lags_flow < 1) {
        throw DataError("depth and lag counts must be at least 1");
    }
    if (!(rc.split > 0.0 && rc.split < 1.0)) throw DataError("split must lie in (0,1)");
    if (rc.curve_points < 1 || rc.curve_min_count < 1) {
        throw DataError("curve_points and curve_min_count must be positive");
    }

    rc.sim.window = SessionWindow::from_name(rc.session);
    rc.sim.depth = rc.depth;
    rc.sim.tick_size = rc.tick_size;
    rc.sim.seed = rc.seed;
    rc.fit.seed = rc.seed;
    return rc;
}

RunConfig parse_run_config(const std::string& path) {
    std::string text;
    for (const std::string& line : read_lines(path)) text += line + "\n";
    return run_config_from_text(text);
}

}  // namespace lobjump
