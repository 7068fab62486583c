#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lobjump/config.hpp"
#include "lobjump/csv.hpp"
#include "lobjump/empirics.hpp"
#include "lobjump/evaluation.hpp"
#include "lobjump/features.hpp"
#include "lobjump/ingest.hpp"
#include "lobjump/labeler.hpp"
#include "lobjump/lasso.hpp"
#include "lobjump/simulator.hpp"
#include "lobjump/types.hpp"

namespace fs = std::filesystem;
using namespace lobjump;

namespace {

RunConfig load_config(const std::string& config_path, std::optional<uint64_t> seed) {
    RunConfig rc = config_path.empty() ? RunConfig{} : parse_run_config(config_path);
    if (seed) {
        rc.seed = *seed;
        rc.fit.seed = *seed;
        rc.sim.seed = *seed;
    }
    return rc;
}

std::string artifact(const RunConfig& rc, const std::string& flag_value,
                     const std::string& default_name) {
    if (!flag_value.empty()) return flag_value;
    return (fs::path(rc.out_dir) / default_name).string();
}

void need_input(const std::string& path, const std::string& producer) {
    if (!fs::exists(path)) {
        std::cerr << "error: missing input " << path << "; run `lobjump " << producer
                  << "` first\n";
        std::exit(2);
    }
}

int cmd_simulate(const RunConfig& rc, const std::string& out, const std::string& truth) {
    SimOutput so = simulate(rc.sim);
    write_events(out, so.events);
    write_text_file(truth, truth_to_csv(so));
    std::cout << "wrote " << out << " (" << so.events.size() << " events, " << so.truth.size()
              << " trades) and " << truth << "\n";
    return 0;
}

int cmd_replay(const RunConfig& rc, const std::string& in, const std::string& out) {
    need_input(in, "simulate");
    ParseResult pr = parse_events(in, SessionWindow::from_name(rc.session));
    if (pr.events.empty()) throw DataError("no events inside session window " + rc.session);
    ReplayResult rr = replay(pr.events, rc.depth, rc.tick_size);
    write_text_file(out, snapshots_to_csv(rr.snapshots, rc.depth));
    std::cout << "wrote " << out << " (" << rr.snapshots.size() << " snapshots, "
              << pr.dropped_out_of_window << " events outside window)\n";
    return 0;
}

int cmd_label(const std::string& in, const std::string& out) {
    need_input(in, "replay");
    const std::vector<BookSnapshot> snaps = snapshots_from_csv(in);
    const std::vector<LabeledTrade> trades = label_jumps(snaps);
    size_t labeled = 0;
    for (const LabeledTrade& t : trades) labeled += t.has_label;
    write_text_file(out, labeled_trades_to_csv(trades));
    std::cout << "wrote " << out << " (" << trades.size() << " trades, " << labeled
              << " labeled)\n";
    return 0;
}

int cmd_featurize(const RunConfig& rc, const std::string& snapshots, const std::string& trades,
                  const std::string& out) {
    need_input(snapshots, "replay");
    need_input(trades, "label");
    const std::vector<BookSnapshot> snaps = snapshots_from_csv(snapshots);
    const std::vector<LabeledTrade> lts = labeled_trades_from_csv(trades);
    DesignMatrix d = build_design(snaps, lts, rc.lags_book, rc.lags_flow, rc.side);
    write_text_file(out, design_to_csv(d));
    std::cout << "wrote " << out << " (" << d.n_rows << " rows, width " << d.width << ", dropped "
              << d.dropped_short_history << " short-history / " << d.dropped_incomplete
              << " incomplete)\n";
    return 0;
}

int cmd_fit(const RunConfig& rc, const std::string& in, const std::string& out_path,
            const std::string& out_cv, const std::string& out_meta) {
    need_input(in, "featurize");
    DesignMatrix d = design_from_csv(in);
    FitResult fr = cross_validate(d, rc.fit);
    size_t stalled = 0;
    for (uint8_t c : fr.path.converged) stalled += (c == 0);
    if (stalled > 0) {
        std::cerr << "warning: " << stalled << " grid points stopped at max_iter\n";
    }
    write_text_file(out_path, path_to_csv(fr.path));
    write_text_file(out_cv, cv_curve_to_csv(fr));
    write_text_file(out_meta, fit_meta_to_json(fr, rc.fit));
    std::cout << "wrote " << out_path << ", " << out_cv << ", " << out_meta << " (lambda "
              << format_double(fr.lambda) << ", " << fr.path.nonzeros[fr.lambda_index]
              << " nonzero)\n";
    return 0;
}

int cmd_evaluate(const RunConfig& rc, const std::string& in, const std::string& out_roc,
                 const std::string& out_summary) {
    need_input(in, "featurize");
    DesignMatrix d = design_from_csv(in);
    BacktestResult br = backtest(d, rc.fit, rc.split, rc.split_mode);
    write_text_file(out_roc, roc_to_csv(roc_curve(br.test_scores, br.test_labels)));
    AucSummaryRow row{rc.instrument,
                      rc.session,
                      rc.side == Side::Bid ? "bid" : "ask",
                      br.auc,
                      br.n_train,
                      br.n_test,
                      br.fit.lambda};
    write_text_file(out_summary, auc_summary_to_csv({row}));
    std::cout << "wrote " << out_roc << " and " << out_summary << " (auc "
              << format_double(br.auc) << ", n_test " << br.n_test << ")\n";
    return 0;
}

int cmd_curve(const RunConfig& rc, const std::string& snapshots, const std::string& trades,
              int depth, const std::string& out) {
    need_input(snapshots, "replay");
    need_input(trades, "label");
    const std::vector<BookSnapshot> snaps = snapshots_from_csv(snapshots);
    const std::vector<LabeledTrade> lts = labeled_trades_from_csv(trades);
    std::vector<int> depths;
    if (depth > 0) {
        depths.push_back(depth);
    } else {
        for (int i = 1; i <= rc.depth; ++i) depths.push_back(i);
    }
    std::vector<CondProbCurve> curves;
    bool any_points = false;
    for (int i : depths) {
        const auto samples = w_before_trades(lts, snaps, i);
        const std::vector<double> grid = w_threshold_grid(samples, rc.curve_points);
        for (CurveSide side : {CurveSide::Buy, CurveSide::Sell}) {
            curves.push_back(tradesign_curve(lts, snaps, i, grid,
                                             static_cast<size_t>(rc.curve_min_count), side));
            any_points = any_points || !curves.back().points.empty();
        }
    }
    if (!any_points) {
        std::cerr << "warning: every conditioning set fell below curve_min_count\n";
    }
    write_text_file(out, curves_to_csv(curves));
    std::cout << "wrote " << out << " (" << curves.size() << " curves)\n";
    return 0;
}

int cmd_report(const std::string& in_dir, size_t top_k, const std::string& out) {
    if (!fs::is_directory(in_dir)) {
        std::cerr << "error: missing input " << in_dir << "; run `lobjump fit` first\n";
        return 2;
    }
    std::vector<fs::path> metas;
    for (const auto& entry : fs::directory_iterator(in_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            metas.push_back(entry.path());
        }
    }
    std::sort(metas.begin(), metas.end());
    if (metas.empty()) {
        std::cerr << "error: no fit metadata (*.json) in " << in_dir
                  << "; run `lobjump fit` first\n";
        return 2;
    }
    std::vector<std::vector<std::string>> orders;
    for (const fs::path& p : metas) {
        std::ifstream f(p);
        nlohmann::json j = nlohmann::json::parse(f);
        if (!j.contains("selection_order")) {
            throw DataError(p.string() + " lacks a selection_order field");
        }
        orders.push_back(j["selection_order"].get<std::vector<std::string>>());
    }
    write_text_file(out, selection_report_to_csv(aggregate_selection(orders, top_k)));
    std::cout << "wrote " << out << " (" << orders.size() << " fits aggregated)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-book jump labeling and prediction pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<uint64_t> seed;
    app.add_option("--config", config_path, "run configuration file (key = value lines)");
    app.add_option("--seed", seed, "override the configured seed");

    std::string in, out, truth, snapshots, trades, out_path, out_cv, out_meta, out_roc,
        out_summary, in_dir;
    int depth = 0;
    size_t top_k = 3;

    CLI::App* c_sim = app.add_subcommand("simulate", "generate a synthetic event stream");
    c_sim->add_option("--out", out, "events CSV");
    c_sim->add_option("--truth", truth, "ground-truth probabilities CSV");

    CLI::App* c_replay = app.add_subcommand("replay", "rebuild the book and take snapshots");
    c_replay->add_option("--in", in, "events CSV");
    c_replay->add_option("--out", out, "snapshots CSV");

    CLI::App* c_label = app.add_subcommand("label", "label inter-trade price jumps");
    c_label->add_option("--in", in, "snapshots CSV");
    c_label->add_option("--out", out, "labeled trades CSV");

    CLI::App* c_feat = app.add_subcommand("featurize", "assemble the lagged design matrix");
    c_feat->add_option("--snapshots", snapshots, "snapshots CSV");
    c_feat->add_option("--trades", trades, "labeled trades CSV");
    c_feat->add_option("--out", out, "design CSV");

    CLI::App* c_fit = app.add_subcommand("fit", "cross-validated L1 logistic path");
    c_fit->add_option("--in", in, "design CSV");
    c_fit->add_option("--out-path", out_path, "coefficient path CSV");
    c_fit->add_option("--out-cv", out_cv, "cross-validation curve CSV");
    c_fit->add_option("--out-meta", out_meta, "fit metadata JSON");

    CLI::App* c_eval = app.add_subcommand("evaluate", "split, fit, and score held-out trades");
    c_eval->add_option("--in", in, "design CSV");
    c_eval->add_option("--out-roc", out_roc, "ROC curve CSV");
    c_eval->add_option("--out-summary", out_summary, "AUC summary CSV");

    CLI::App* c_curve = app.add_subcommand("curve", "conditional trade-sign curves");
    c_curve->add_option("--snapshots", snapshots, "snapshots CSV");
    c_curve->add_option("--trades", trades, "labeled trades CSV");
    c_curve->add_option("--depth", depth, "volume-ratio depth (default: all up to L)");
    c_curve->add_option("--out", out, "curve CSV");

    CLI::App* c_report = app.add_subcommand("report", "aggregate selection orders across fits");
    c_report->add_option("--in-dir", in_dir, "directory of fit metadata JSON files");
    c_report->add_option("--top-k", top_k, "selection ranks to count (default 3)");
    c_report->add_option("--out", out, "selection report CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig rc = load_config(config_path, seed);
        if (c_sim->parsed()) {
            return cmd_simulate(rc, artifact(rc, out, "events.csv"),
                                artifact(rc, truth, "truth.csv"));
        }
        if (c_replay->parsed()) {
            return cmd_replay(rc, artifact(rc, in, "events.csv"),
                              artifact(rc, out, "snapshots.csv"));
        }
        if (c_label->parsed()) {
            return cmd_label(artifact(rc, in, "snapshots.csv"), artifact(rc, out, "trades.csv"));
        }
        if (c_feat->parsed()) {
            return cmd_featurize(rc, artifact(rc, snapshots, "snapshots.csv"),
                                 artifact(rc, trades, "trades.csv"),
                                 artifact(rc, out, "design.csv"));
        }
        if (c_fit->parsed()) {
            return cmd_fit(rc, artifact(rc, in, "design.csv"), artifact(rc, out_path, "path.csv"),
                           artifact(rc, out_cv, "cv.csv"), artifact(rc, out_meta, "fit_meta.json"));
        }
        if (c_eval->parsed()) {
            return cmd_evaluate(rc, artifact(rc, in, "design.csv"),
                                artifact(rc, out_roc, "roc.csv"),
                                artifact(rc, out_summary, "auc_summary.csv"));
        }
        if (c_curve->parsed()) {
            return cmd_curve(rc, artifact(rc, snapshots, "snapshots.csv"),
                             artifact(rc, trades, "trades.csv"), depth,
                             artifact(rc, out, "curve.csv"));
        }
        if (c_report->parsed()) {
            return cmd_report(in_dir.empty() ? rc.out_dir : in_dir, top_k,
                              artifact(rc, out, "selection_report.csv"));
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: unexpected: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
