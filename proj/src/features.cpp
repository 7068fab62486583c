#include "lobjump/features.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "lobjump/csv.hpp"

namespace lobjump {

std::vector<double> r1_vector(const BookSnapshot& snap) {
    if (!snap.complete) {
        throw DataError("r1_vector needs a complete snapshot (seq " +
                            std::to_string(snap.seq) + ")",
                        snap.seq);
    }
    const int L = snap.depth;
    std::vector<double> r;
    r.reserve(4 * L - 1);
    for (int i = L - 1; i >= 1; --i) r.push_back(snap.bid_gap[i - 1]);
    r.push_back(snap.spread);
    for (int i = 1; i <= L - 1; ++i) r.push_back(snap.ask_gap[i - 1]);
    for (int i = L; i >= 1; --i) r.push_back(snap.bid_logv[i - 1]);
    for (int i = 1; i <= L; ++i) r.push_back(snap.ask_logv[i - 1]);
    return r;
}

std::vector<double> r2_vector(const BookSnapshot& snap) {
    const EventFlags& f = snap.flags;
    return {double(f.bmo), double(f.amo), double(f.blo),
            double(f.alo), double(f.btt), double(f.att)};
}

std::vector<std::string> r1_names(int L, int lag) {
    std::vector<std::string> names;
    names.reserve(4 * L - 1);
    auto tag = [lag](const std::string& base) { return base + "_" + std::to_string(lag); };
    for (int i = L - 1; i >= 1; --i) names.push_back(tag("GB" + std::to_string(i)));
    names.push_back(tag("S"));
    for (int i = 1; i <= L - 1; ++i) names.push_back(tag("GA" + std::to_string(i)));
    for (int i = L; i >= 1; --i) names.push_back(tag("VB" + std::to_string(i)));
    for (int i = 1; i <= L; ++i) names.push_back(tag("VA" + std::to_string(i)));
    return names;
}

std::vector<std::string> r2_names(int lag) {
    std::vector<std::string> names;
    for (const char* base : {"BMO", "AMO", "BLO", "ALO", "BTT", "ATT"}) {
        names.push_back(std::string(base) + "_" + std::to_string(lag));
    }
    return names;
}

std::vector<std::string> design_column_names(int L, int m, int n) {
    std::vector<std::string> names;
    names.reserve(2 + m * (4 * L - 1) + 6 * n);
    names.push_back("intercept");
    names.push_back("VMO_0");
    for (int lag = 0; lag < m; ++lag) {
        auto block = r1_names(L, lag);
        names.insert(names.end(), block.begin(), block.end());
    }
    for (int lag = 0; lag < n; ++lag) {
        auto block = r2_names(lag);
        names.insert(names.end(), block.begin(), block.end());
    }
    return names;
}

std::optional<double> w_ratio(const BookSnapshot& snap, int depth) {
    if (depth < 1 || static_cast<int>(snap.bid_logv.size()) < depth ||
        static_cast<int>(snap.ask_logv.size()) < depth) {
        return std::nullopt;
    }
    double bid_sum = 0.0, ask_sum = 0.0;
    for (int j = 0; j < depth; ++j) {
        bid_sum += std::exp(snap.bid_logv[j]);
        ask_sum += std::exp(snap.ask_logv[j]);
    }
    return std::log(bid_sum) - std::log(ask_sum);
}

DesignMatrix build_design(const std::vector<BookSnapshot>& snapshots,
                          const std::vector<LabeledTrade>& trades, int m, int n, Side side) {
    if (m < 1 || n < 1) throw DataError("build_design requires m, n >= 1", 0);
    const int L = snapshots.empty() ? 0 : snapshots.front().depth;

    std::unordered_map<uint64_t, size_t> seq_to_index;
    seq_to_index.reserve(snapshots.size());
    for (size_t i = 0; i < snapshots.size(); ++i) seq_to_index.emplace(snapshots[i].seq, i);

    DesignMatrix d;
    d.col_names = design_column_names(L, m, n);
    d.width = d.col_names.size();

    const int max_lag = std::max(m, n) - 1;
    for (const auto& t : trades) {
        if (!t.has_label) continue;
        auto it = seq_to_index.find(t.t_seq);
        if (it == seq_to_index.end()) {
            throw DataError("labeled trade seq " + std::to_string(t.t_seq) +
                                " has no snapshot",
                            t.t_seq);
        }
        const size_t pos = it->second;
        if (static_cast<int>(pos) < max_lag) {
            ++d.dropped_short_history;
            continue;
        }
        bool window_complete = true;
        for (int lag = 0; lag <= max_lag; ++lag) {
            if (!snapshots[pos - lag].complete) {
                window_complete = false;
                break;
            }
        }
        if (!window_complete) {
            ++d.dropped_incomplete;
            continue;
        }

        d.values.push_back(1.0);
        d.values.push_back(snapshots[pos].v_mo);
        for (int lag = 0; lag < m; ++lag) {
            auto r1 = r1_vector(snapshots[pos - lag]);
            d.values.insert(d.values.end(), r1.begin(), r1.end());
        }
        for (int lag = 0; lag < n; ++lag) {
            auto r2 = r2_vector(snapshots[pos - lag]);
            d.values.insert(d.values.end(), r2.begin(), r2.end());
        }
        d.y.push_back(side == Side::Bid ? double(t.y_bid) : double(t.y_ask));
        d.row_seq.push_back(t.t_seq);
        ++d.n_rows;
    }
    return d;
}

std::string design_to_csv(const DesignMatrix& d) {
    std::ostringstream out;
    out << "y";
    for (const auto& name : d.col_names) out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < d.n_rows; ++i) {
        out << static_cast<int>(d.y[i]);
        const double* row = d.row(i);
        for (size_t j = 0; j < d.width; ++j) out << ',' << format_double(row[j]);
        out << '\n';
    }
    return out.str();
}

DesignMatrix design_from_csv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw DataError("empty design file: " + path, 1);
    auto header = split_csv_line(lines[0]);
    if (header.size() < 3 || header[0] != "y" || header[1] != "intercept") {
        throw DataError("bad design header in " + path, 1);
    }
    DesignMatrix d;
    d.col_names.assign(header.begin() + 1, header.end());
    d.width = d.col_names.size();
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != header.size()) {
            throw DataError("line " + std::to_string(i + 1) + ": field count mismatch in " +
                                path,
                            i + 1);
        }
        d.y.push_back(parse_double(f[0], "y", i + 1));
        for (size_t j = 1; j < f.size(); ++j) {
            d.values.push_back(parse_double(f[j], "feature", i + 1));
        }
        ++d.n_rows;
    }
    return d;
}

}  // namespace lobjump
