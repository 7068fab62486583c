#include "lobjump/empirics.hpp"

#include <algorithm>
#include <unordered_map>

#include "lobjump/csv.hpp"
#include "lobjump/features.hpp"
#include "lobjump/types.hpp"

namespace lobjump {

std::vector<std::pair<double, int>> w_before_trades(const std::vector<LabeledTrade>& trades,
                                                    const std::vector<BookSnapshot>& snapshots,
                                                    int depth) {
    if (depth < 1) throw DataError("curve depth must be at least 1");
    std::unordered_map<uint64_t, size_t> by_seq;
    by_seq.reserve(snapshots.size());
    for (size_t i = 0; i < snapshots.size(); ++i) by_seq.emplace(snapshots[i].seq, i);

    std::vector<std::pair<double, int>> out;
    out.reserve(trades.size());
    for (const LabeledTrade& tr : trades) {
        auto it = by_seq.find(tr.t_seq);
        if (it == by_seq.end()) {
            throw DataError("trade seq " + std::to_string(tr.t_seq) + " has no snapshot",
                            tr.t_seq);
        }
        if (it->second == 0) continue;  // trade opens the stream, no prior state
        const BookSnapshot& before = snapshots[it->second - 1];
        if (auto w = w_ratio(before, depth)) out.emplace_back(*w, tr.sign);
    }
    return out;
}

std::vector<double> w_threshold_grid(const std::vector<std::pair<double, int>>& samples,
                                     int n_points) {
    if (samples.empty() || n_points < 1) return {};
    double lo = samples[0].first, hi = samples[0].first;
    for (const auto& [w, sign] : samples) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    if (lo == hi || n_points == 1) return {lo};
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n_points - 1);
    }
    return grid;
}

CondProbCurve tradesign_curve(const std::vector<LabeledTrade>& trades,
                              const std::vector<BookSnapshot>& snapshots, int depth,
                              const std::vector<double>& grid, size_t min_count,
                              CurveSide side) {
    CondProbCurve curve;
    curve.depth = depth;
    curve.side = side;
    auto samples = w_before_trades(trades, snapshots, depth);
    if (samples.empty()) return curve;

    std::sort(samples.begin(), samples.end());
    const size_t n = samples.size();
    // match_prefix[i] = trades with the requested sign among the i smallest W.
    std::vector<size_t> match_prefix(n + 1, 0);
    const int want = side == CurveSide::Buy ? +1 : -1;
    for (size_t i = 0; i < n; ++i) {
        match_prefix[i + 1] = match_prefix[i] + (samples[i].second == want ? 1 : 0);
    }

    for (double x : grid) {
        size_t count, matches;
        if (side == CurveSide::Buy) {
            // Condition on W >= x.
            const size_t idx = static_cast<size_t>(
                std::lower_bound(samples.begin(), samples.end(), x,
                                 [](const auto& a, double v) { return a.first < v; }) -
                samples.begin());
            count = n - idx;
            matches = match_prefix[n] - match_prefix[idx];
        } else {
            // Condition on W <= x.
            const size_t idx = static_cast<size_t>(
                std::upper_bound(samples.begin(), samples.end(), x,
                                 [](double v, const auto& a) { return v < a.first; }) -
                samples.begin());
            count = idx;
            matches = match_prefix[idx];
        }
        if (count < min_count || count == 0) continue;
        curve.points.push_back(
            {x, count, static_cast<double>(matches) / static_cast<double>(count)});
    }
    return curve;
}

std::string curves_to_csv(const std::vector<CondProbCurve>& curves) {
    std::string out = "depth,x,n,p_hat,side\n";
    for (const CondProbCurve& c : curves) {
        const char* side = c.side == CurveSide::Buy ? "buy" : "sell";
        for (const CurvePoint& p : c.points) {
            out += std::to_string(c.depth) + ",";
            out += format_double(p.x);
            out += "," + std::to_string(p.n) + ",";
            out += format_double(p.p_hat);
            out += ",";
            out += side;
            out += "\n";
        }
    }
    return out;
}

}  // namespace lobjump
