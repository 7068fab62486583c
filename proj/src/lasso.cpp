#include "lobjump/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "lobjump/csv.hpp"
#include "lobjump/types.hpp"
#include "json.hpp"

namespace lobjump {

namespace {

inline double log1pexp(double z) {
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

inline double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

void check_labels(const DesignMatrix& d) {
    if (d.n_rows == 0) throw DataError("empty design matrix");
    if (d.width == 0 || d.y.size() != d.n_rows) {
        throw DataError("design matrix shape mismatch");
    }
    for (size_t i = 0; i < d.n_rows; ++i) {
        if (d.y[i] != 0.0 && d.y[i] != 1.0) {
            throw DataError("label at row " + std::to_string(i) + " is not 0/1");
        }
    }
}

constexpr double kMinWeight = 1e-6;
constexpr double kSdFloor = 1e-12;

// Column-major standardized copy of the design. Column 0 (intercept) is left
// untouched; constant columns get factor 0 and an all-zero standardized
// column, which keeps their coefficient pinned at zero.
struct Workspace {
    size_t n = 0;
    size_t p = 0;  // total width, intercept included
    std::vector<double> cols;  // p columns of length n, contiguous
    std::vector<double> mean;
    std::vector<double> factor;  // sd, or 1 when standardize=false; 0 = excluded
    const std::vector<double>* y = nullptr;

    const double* col(size_t j) const { return cols.data() + j * n; }
    double* col(size_t j) { return cols.data() + j * n; }
};

Workspace make_workspace(const DesignMatrix& d, bool standardize) {
    Workspace w;
    w.n = d.n_rows;
    w.p = d.width;
    w.y = &d.y;
    w.cols.assign(w.n * w.p, 0.0);
    w.mean.assign(w.p, 0.0);
    w.factor.assign(w.p, 1.0);
    const double n = static_cast<double>(w.n);
    for (size_t j = 0; j < w.p; ++j) {
        double* c = w.col(j);
        for (size_t i = 0; i < w.n; ++i) c[i] = d.values[i * w.p + j];
        if (j == 0) continue;  // intercept column stays as-is
        double m = std::accumulate(c, c + w.n, 0.0) / n;
        double ss = 0.0;
        for (size_t i = 0; i < w.n; ++i) ss += (c[i] - m) * (c[i] - m);
        const double sd = std::sqrt(ss / n);
        if (sd < kSdFloor) {
            w.mean[j] = m;
            w.factor[j] = 0.0;
            std::fill(c, c + w.n, 0.0);
            continue;
        }
        if (standardize) {
            w.mean[j] = m;
            w.factor[j] = sd;
            for (size_t i = 0; i < w.n; ++i) c[i] = (c[i] - m) / sd;
        }
    }
    return w;
}

// Gradient of nll/N on the standardized scale, all columns.
void std_gradient(const Workspace& w, const std::vector<double>& z, std::vector<double>& g) {
    const size_t n = w.n;
    std::vector<double> res(n);
    for (size_t i = 0; i < n; ++i) res[i] = sigmoid(z[i]) - (*w.y)[i];
    g.assign(w.p, 0.0);
    for (size_t j = 0; j < w.p; ++j) {
        if (j > 0 && w.factor[j] == 0.0) continue;
        const double* c = w.col(j);
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) acc += res[i] * c[i];
        g[j] = acc / static_cast<double>(n);
    }
}

double penalized_objective(const Workspace& w, const std::vector<double>& z,
                           const std::vector<double>& beta, double lambda) {
    double f = 0.0;
    for (size_t i = 0; i < w.n; ++i) f += log1pexp(z[i]) - (*w.y)[i] * z[i];
    f /= static_cast<double>(w.n);
    double pen = 0.0;
    for (size_t j = 1; j < w.p; ++j) pen += std::abs(beta[j]);
    return f + lambda * pen;
}

void linear_predictor(const Workspace& w, const std::vector<double>& beta, std::vector<double>& z) {
    z.assign(w.n, 0.0);
    for (size_t j = 0; j < w.p; ++j) {
        const double b = beta[j];
        if (b == 0.0) continue;
        const double* c = w.col(j);
        for (size_t i = 0; i < w.n; ++i) z[i] += b * c[i];
    }
    for (size_t i = 0; i < w.n; ++i) z[i] = std::clamp(z[i], -500.0, 500.0);
}

double kkt_term(double g, double beta, double lambda) {
    if (beta > 0.0) return std::abs(g + lambda);
    if (beta < 0.0) return std::abs(g - lambda);
    return std::max(0.0, std::abs(g) - lambda);
}

double kkt_residual_std(const Workspace& w, const std::vector<double>& g,
                        const std::vector<double>& beta, double lambda) {
    double worst = std::abs(g[0]);
    for (size_t j = 1; j < w.p; ++j) {
        if (w.factor[j] == 0.0) continue;
        worst = std::max(worst, kkt_term(g[j], beta[j], lambda));
    }
    return worst;
}

// Stationarity over the intercept and the working set only; coordinates the
// inner solver is not touching are the growth step's responsibility.
double kkt_residual_working(const std::set<size_t>& working, const std::vector<double>& g,
                            const std::vector<double>& beta, double lambda) {
    double worst = std::abs(g[0]);
    for (size_t j : working) worst = std::max(worst, kkt_term(g[j], beta[j], lambda));
    return worst;
}

struct SolveStats {
    bool converged = false;
    std::vector<double> trace;
};

// Solve one lambda to stationarity: outer quadratic approximations, inner
// cyclic coordinate descent over the working set, working set grown from
// full-gradient violation checks. beta and z are updated in place and carry
// the warm start in.
SolveStats solve_lambda(const Workspace& w, double lambda, const FitConfig& cfg,
                        std::vector<double>& beta, std::vector<double>& z) {
    const size_t n = w.n;
    const size_t p = w.p;
    const double dn = static_cast<double>(n);
    SolveStats stats;

    std::set<size_t> working;
    for (size_t j = 1; j < p; ++j) {
        if (beta[j] != 0.0) working.insert(j);
    }

    std::vector<double> g;
    std::vector<double> r(n), wgt(n), d2(p);
    double f_cur = penalized_objective(w, z, beta, lambda);
    if (cfg.record_trace) stats.trace.push_back(f_cur);

    int outer_used = 0;
    while (true) {
        bool inner_converged = false;
        for (; outer_used < cfg.max_iter; ++outer_used) {
            // Quadratic model at the current iterate.
            for (size_t i = 0; i < n; ++i) {
                const double pr = sigmoid(z[i]);
                wgt[i] = std::max(pr * (1.0 - pr), kMinWeight);
                r[i] = (*w.y)[i] - pr;
            }
            d2[0] = std::accumulate(wgt.begin(), wgt.end(), 0.0) / dn;
            for (size_t j : working) {
                const double* c = w.col(j);
                double acc = 0.0;
                for (size_t i = 0; i < n; ++i) acc += wgt[i] * c[i] * c[i];
                d2[j] = acc / dn;
            }

            std::vector<double> beta_old = beta;
            // Cyclic coordinate descent on the quadratic.
            for (int sweep = 0; sweep < 1000; ++sweep) {
                double max_step = 0.0;
                {   // intercept, unpenalized
                    double num = std::accumulate(r.begin(), r.end(), 0.0) / dn + d2[0] * beta[0];
                    double bnew = num / d2[0];
                    double delta = bnew - beta[0];
                    if (delta != 0.0) {
                        const double* c = w.col(0);
                        for (size_t i = 0; i < n; ++i) r[i] -= wgt[i] * c[i] * delta;
                        beta[0] = bnew;
                        max_step = std::max(max_step, d2[0] * delta * delta);
                    }
                }
                for (size_t j : working) {
                    const double* c = w.col(j);
                    double acc = 0.0;
                    for (size_t i = 0; i < n; ++i) acc += c[i] * r[i];
                    const double num = acc / dn + d2[j] * beta[j];
                    const double bnew = soft_threshold(num, lambda) / d2[j];
                    const double delta = bnew - beta[j];
                    if (delta != 0.0) {
                        for (size_t i = 0; i < n; ++i) r[i] -= wgt[i] * c[i] * delta;
                        beta[j] = bnew;
                        max_step = std::max(max_step, d2[j] * delta * delta);
                    }
                }
                if (max_step < 1e-15) break;
            }

            // Objective safeguard: never accept an increase; halve back
            // toward the previous iterate if the quadratic overshot.
            linear_predictor(w, beta, z);
            double f_new = penalized_objective(w, z, beta, lambda);
            if (f_new > f_cur + 1e-12 * (1.0 + std::abs(f_cur))) {
                std::vector<double> proposal = beta;
                bool accepted = false;
                for (int h = 0; h < 30; ++h) {
                    for (size_t j = 0; j < p; ++j) {
                        beta[j] = 0.5 * (beta[j] + beta_old[j]);
                    }
                    linear_predictor(w, beta, z);
                    f_new = penalized_objective(w, z, beta, lambda);
                    if (f_new <= f_cur + 1e-12 * (1.0 + std::abs(f_cur))) {
                        accepted = true;
                        break;
                    }
                }
                if (!accepted) {
                    beta = beta_old;
                    linear_predictor(w, beta, z);
                    f_new = f_cur;
                }
            }
            const double rel_change = std::abs(f_cur - f_new) / (1.0 + std::abs(f_cur));
            f_cur = f_new;
            if (cfg.record_trace) stats.trace.push_back(f_cur);
            if (rel_change < cfg.tol) {
                std_gradient(w, z, g);
                if (kkt_residual_working(working, g, beta, lambda) <= cfg.kkt_tol) {
                    inner_converged = true;
                    ++outer_used;
                    break;
                }
            }
        }

        // Admit every coordinate that violates stationarity at the solved
        // point, except that within a group of exactly tied violations only
        // the lowest-indexed coordinate enters this pass. Complementary
        // dummy columns are collinear after centering and tie to the last
        // ulp; admitting both at once would leave the split between them to
        // floating-point noise in the inner solver.
        std_gradient(w, z, g);
        std::vector<std::pair<double, size_t>> violators;
        for (size_t j = 1; j < p; ++j) {
            if (w.factor[j] == 0.0 || working.count(j)) continue;
            const double v = std::abs(g[j]);
            if (v > lambda * (1.0 + 1e-9) + cfg.kkt_tol * 0.5) violators.emplace_back(v, j);
        }
        std::sort(violators.begin(), violators.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        bool grew = false;
        size_t i = 0;
        while (i < violators.size()) {
            // One admission per tie group; the group spans everything within
            // relative 1e-9 of its head, far wider than the ulp differences
            // collinear twins show and far tighter than distinct features.
            size_t group_end = i + 1;
            size_t admit = violators[i].second;
            while (group_end < violators.size() &&
                   violators[group_end].first > violators[i].first * (1.0 - 1e-9)) {
                admit = std::min(admit, violators[group_end].second);
                ++group_end;
            }
            working.insert(admit);
            grew = true;
            i = group_end;
        }
        if (!grew) {
            stats.converged =
                inner_converged && kkt_residual_std(w, g, beta, lambda) <= cfg.kkt_tol;
            break;
        }
        if (outer_used >= cfg.max_iter) {
            stats.converged = false;
            break;
        }
    }
    return stats;
}

std::vector<double> to_original_scale(const Workspace& w, const std::vector<double>& beta_s) {
    std::vector<double> b(w.p, 0.0);
    double shift = 0.0;
    for (size_t j = 1; j < w.p; ++j) {
        if (w.factor[j] == 0.0) continue;
        b[j] = beta_s[j] / w.factor[j];
        shift += b[j] * w.mean[j];
    }
    b[0] = beta_s[0] - shift;
    return b;
}

RegPath fit_path_impl(const DesignMatrix& d, const FitConfig& cfg,
                      const std::vector<double>* fixed_grid) {
    check_labels(d);
    if (cfg.lambda_count < 1) throw DataError("lambda_count must be positive");
    if (!(cfg.lambda_min_ratio > 0.0 && cfg.lambda_min_ratio < 1.0)) {
        throw DataError("lambda_min_ratio must lie in (0,1)");
    }
    double ybar = std::accumulate(d.y.begin(), d.y.end(), 0.0) / static_cast<double>(d.n_rows);
    if (ybar <= 0.0 || ybar >= 1.0) {
        throw DataError("labels are single-class; nothing to fit");
    }

    Workspace w = make_workspace(d, cfg.standardize);
    const size_t p = w.p;

    // Null model: intercept at log-odds of the base rate, everything else 0.
    std::vector<double> beta_s(p, 0.0);
    beta_s[0] = std::log(ybar / (1.0 - ybar));
    std::vector<double> z;
    linear_predictor(w, beta_s, z);

    std::vector<double> g;
    std_gradient(w, z, g);
    double lambda_max = 0.0;
    for (size_t j = 1; j < p; ++j) lambda_max = std::max(lambda_max, std::abs(g[j]));
    if (lambda_max <= 0.0) lambda_max = 1e-3;

    std::vector<double> grid;
    if (fixed_grid) {
        grid = *fixed_grid;
    } else {
        grid.resize(cfg.lambda_count);
        if (cfg.lambda_count == 1) {
            grid[0] = lambda_max;
        } else {
            const double step = std::log(cfg.lambda_min_ratio) / (cfg.lambda_count - 1);
            for (int k = 0; k < cfg.lambda_count; ++k) {
                grid[k] = lambda_max * std::exp(step * k);
            }
        }
    }

    RegPath path;
    path.lambdas = grid;
    path.col_names = d.col_names;
    path.penalty_factors.assign(w.factor.begin(), w.factor.end());
    path.center_means.assign(w.mean.begin(), w.mean.end());
    path.n_rows = d.n_rows;
    path.width = p;

    std::vector<uint8_t> ever_active(p, 0);
    std::vector<double> prev_grad = g;
    int prev_nonzeros = 0;

    for (size_t k = 0; k < grid.size(); ++k) {
        SolveStats st = solve_lambda(w, grid[k], cfg, beta_s, z);

        // First-activation bookkeeping; ties broken by the gradient magnitude
        // where the variable sat before this grid point, then by position.
        std::vector<size_t> fresh;
        for (size_t j = 1; j < p; ++j) {
            if (beta_s[j] != 0.0 && !ever_active[j]) fresh.push_back(j);
        }
        std::sort(fresh.begin(), fresh.end(), [&](size_t a, size_t b) {
            const double ga = std::abs(prev_grad[a]);
            const double gb = std::abs(prev_grad[b]);
            if (ga != gb) return ga > gb;
            return a < b;
        });
        for (size_t j : fresh) {
            ever_active[j] = 1;
            path.selection_order.push_back(d.col_names.empty() ? "col" + std::to_string(j)
                                                               : d.col_names[j]);
        }

        int nz = 0;
        for (size_t j = 1; j < p; ++j) {
            if (beta_s[j] != 0.0) ++nz;
        }
        if (k > 0 && nz < prev_nonzeros) ++path.sparsity_drops;
        prev_nonzeros = nz;

        double dev = 0.0;
        for (size_t i = 0; i < w.n; ++i) dev += log1pexp(z[i]) - (*w.y)[i] * z[i];
        dev = 2.0 * dev / static_cast<double>(w.n);

        path.betas.push_back(to_original_scale(w, beta_s));
        path.objective.push_back(penalized_objective(w, z, beta_s, grid[k]));
        path.mean_deviance.push_back(dev);
        path.nonzeros.push_back(nz);
        path.converged.push_back(st.converged ? 1 : 0);
        if (cfg.record_trace) path.trace.push_back(std::move(st.trace));

        std_gradient(w, z, prev_grad);
    }
    return path;
}

}  // namespace

double nll(const DesignMatrix& d, const std::vector<double>& beta) {
    check_labels(d);
    if (beta.size() != d.width) throw DataError("beta width mismatch");
    double f = 0.0;
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double* x = d.row(i);
        double z = 0.0;
        for (size_t j = 0; j < d.width; ++j) z += beta[j] * x[j];
        f += log1pexp(z) - d.y[i] * z;
    }
    return f;
}

std::vector<double> grad_nll(const DesignMatrix& d, const std::vector<double>& beta) {
    check_labels(d);
    if (beta.size() != d.width) throw DataError("beta width mismatch");
    std::vector<double> g(d.width, 0.0);
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double* x = d.row(i);
        double z = 0.0;
        for (size_t j = 0; j < d.width; ++j) z += beta[j] * x[j];
        const double res = sigmoid(z) - d.y[i];
        for (size_t j = 0; j < d.width; ++j) g[j] += res * x[j];
    }
    return g;
}

RegPath fit_path(const DesignMatrix& d, const FitConfig& cfg) {
    return fit_path_impl(d, cfg, nullptr);
}

RegPath fit_path_on_grid(const DesignMatrix& d, const FitConfig& cfg,
                         const std::vector<double>& grid) {
    if (grid.empty()) throw DataError("empty lambda grid");
    for (size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] < grid[k - 1])) throw DataError("lambda grid must be strictly decreasing");
    }
    return fit_path_impl(d, cfg, &grid);
}

double kkt_residual(const DesignMatrix& d, const std::vector<double>& beta, double lambda,
                    const std::vector<double>& penalty_factors,
                    const std::vector<double>& center_means) {
    check_labels(d);
    if (beta.size() != d.width || penalty_factors.size() != d.width ||
        center_means.size() != d.width) {
        throw DataError("kkt_residual: width mismatch");
    }
    const double dn = static_cast<double>(d.n_rows);
    std::vector<double> res(d.n_rows);
    for (size_t i = 0; i < d.n_rows; ++i) {
        const double* x = d.row(i);
        double z = 0.0;
        for (size_t j = 0; j < d.width; ++j) z += beta[j] * x[j];
        res[i] = sigmoid(z) - d.y[i];
    }
    double g0 = std::accumulate(res.begin(), res.end(), 0.0) / dn;
    double worst = std::abs(g0);
    for (size_t j = 1; j < d.width; ++j) {
        if (penalty_factors[j] == 0.0) continue;
        double gj = 0.0;
        for (size_t i = 0; i < d.n_rows; ++i) gj += res[i] * d.values[i * d.width + j];
        gj /= dn;
        // Gradient of the standardized problem recovered from original data.
        const double gs = (gj - center_means[j] * g0) / penalty_factors[j];
        double r;
        if (beta[j] > 0.0) {
            r = std::abs(gs + lambda);
        } else if (beta[j] < 0.0) {
            r = std::abs(gs - lambda);
        } else {
            r = std::max(0.0, std::abs(gs) - lambda);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

FitResult cross_validate(const DesignMatrix& d, const FitConfig& cfg) {
    check_labels(d);
    if (cfg.cv_folds < 2) throw DataError("cv_folds must be at least 2");
    if (d.n_rows < static_cast<size_t>(cfg.cv_folds)) {
        throw DataError("not enough rows (" + std::to_string(d.n_rows) + ") for " +
                        std::to_string(cfg.cv_folds) + " folds");
    }

    size_t n_pos = 0;
    for (double v : d.y) n_pos += (v == 1.0);
    const size_t n_neg = d.n_rows - n_pos;
    if (n_pos < static_cast<size_t>(cfg.cv_folds) || n_neg < static_cast<size_t>(cfg.cv_folds)) {
        throw DataError("class counts too small for " + std::to_string(cfg.cv_folds) +
                        "-fold cross-validation: " + std::to_string(n_pos) + " positive, " +
                        std::to_string(n_neg) + " negative");
    }

    // Fold assignment per row.
    std::vector<int> fold(d.n_rows, -1);
    if (cfg.cv_mode == CvMode::Stratified) {
        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < d.n_rows; ++i) (d.y[i] == 1.0 ? pos : neg).push_back(i);
        std::mt19937_64 rng(cfg.seed);
        std::shuffle(pos.begin(), pos.end(), rng);
        std::shuffle(neg.begin(), neg.end(), rng);
        for (size_t i = 0; i < pos.size(); ++i) fold[pos[i]] = static_cast<int>(i % cfg.cv_folds);
        for (size_t i = 0; i < neg.size(); ++i) fold[neg[i]] = static_cast<int>(i % cfg.cv_folds);
    } else {
        // Contiguous blocks in row order.
        for (size_t i = 0; i < d.n_rows; ++i) {
            fold[i] = static_cast<int>(i * cfg.cv_folds / d.n_rows);
        }
        for (int f = 0; f < cfg.cv_folds; ++f) {
            size_t fp = 0, fn = 0;
            for (size_t i = 0; i < d.n_rows; ++i) {
                if (fold[i] == f) (d.y[i] == 1.0 ? fp : fn)++;
            }
            if (fp == 0 || fn == 0) {
                throw DataError("chronological fold " + std::to_string(f) +
                                " is single-class: " + std::to_string(fp) + " positive, " +
                                std::to_string(fn) + " negative");
            }
        }
    }

    RegPath full = fit_path(d, cfg);
    const size_t n_grid = full.lambdas.size();

    FitResult out;
    out.n_rows = d.n_rows;
    out.cv_fold_deviance.assign(cfg.cv_folds, std::vector<double>(n_grid, 0.0));
    out.fold_sizes.assign(cfg.cv_folds, 0);
    std::vector<double> total_dev(n_grid, 0.0);

    for (int f = 0; f < cfg.cv_folds; ++f) {
        DesignMatrix train, test;
        train.col_names = d.col_names;
        test.col_names = d.col_names;
        train.width = test.width = d.width;
        for (size_t i = 0; i < d.n_rows; ++i) {
            DesignMatrix& dst = (fold[i] == f) ? test : train;
            const double* x = d.row(i);
            dst.values.insert(dst.values.end(), x, x + d.width);
            dst.y.push_back(d.y[i]);
            ++dst.n_rows;
        }
        out.fold_sizes[f] = test.n_rows;

        RegPath fold_path = fit_path_on_grid(train, cfg, full.lambdas);
        for (size_t k = 0; k < n_grid; ++k) {
            const std::vector<double>& b = fold_path.betas[k];
            double dev = 0.0;
            for (size_t i = 0; i < test.n_rows; ++i) {
                const double* x = test.row(i);
                double z = 0.0;
                for (size_t j = 0; j < d.width; ++j) z += b[j] * x[j];
                dev += 2.0 * (log1pexp(z) - test.y[i] * z);
            }
            out.cv_fold_deviance[f][k] = dev / static_cast<double>(test.n_rows);
            total_dev[k] += dev;
        }
    }

    out.cv_mean_deviance.resize(n_grid);
    for (size_t k = 0; k < n_grid; ++k) {
        out.cv_mean_deviance[k] = total_dev[k] / static_cast<double>(d.n_rows);
    }

    // Scan from the most regularized end; strict improvement required, so
    // exact ties resolve toward larger lambda.
    size_t best = 0;
    for (size_t k = 1; k < n_grid; ++k) {
        if (out.cv_mean_deviance[k] < out.cv_mean_deviance[best]) best = k;
    }
    out.lambda_min_index = static_cast<int>(best);

    // Deviances close to the minimum are indistinguishable; treat them as
    // ties too and take the largest lambda among them, which keeps null data
    // at a null model. "Close" covers two noise sources: the fold-to-fold
    // standard error of the curve, and the spurious dip the single luckiest
    // of p null features produces, which concentrates around 2*log(p)/N.
    const double kf = static_cast<double>(cfg.cv_folds);
    double fold_mean = 0.0;
    for (int f = 0; f < cfg.cv_folds; ++f) fold_mean += out.cv_fold_deviance[f][best];
    fold_mean /= kf;
    double ss = 0.0;
    for (int f = 0; f < cfg.cv_folds; ++f) {
        const double c = out.cv_fold_deviance[f][best] - fold_mean;
        ss += c * c;
    }
    out.cv_se = cfg.cv_folds > 1 ? std::sqrt(ss / (kf * (kf - 1.0))) : 0.0;
    const double spurious =
        2.0 * std::log(static_cast<double>(std::max<size_t>(2, d.width - 1))) /
        static_cast<double>(d.n_rows);
    const double tie_tol = out.cv_se + spurious;

    size_t chosen = 0;
    while (chosen < best &&
           out.cv_mean_deviance[chosen] > out.cv_mean_deviance[best] + tie_tol) {
        ++chosen;
    }
    out.lambda_index = static_cast<int>(chosen);
    out.lambda = full.lambdas[chosen];
    out.beta = full.betas[chosen];
    out.path = std::move(full);
    return out;
}

std::string path_to_csv(const RegPath& path) {
    std::string out = "lambda,deviance,nonzeros";
    for (const std::string& name : path.col_names) out += "," + name;
    out += "\n";
    for (size_t k = 0; k < path.lambdas.size(); ++k) {
        out += format_double(path.lambdas[k]);
        out += ",";
        out += format_double(path.mean_deviance[k]);
        out += ",";
        out += std::to_string(path.nonzeros[k]);
        for (size_t j = 0; j < path.width; ++j) {
            out += ",";
            out += format_double(path.betas[k][j]);
        }
        out += "\n";
    }
    return out;
}

std::string cv_curve_to_csv(const FitResult& fit) {
    std::string out = "lambda,mean_deviance";
    for (size_t f = 0; f < fit.cv_fold_deviance.size(); ++f) {
        out += ",fold" + std::to_string(f);
    }
    out += "\n";
    for (size_t k = 0; k < fit.path.lambdas.size(); ++k) {
        out += format_double(fit.path.lambdas[k]);
        out += ",";
        out += format_double(fit.cv_mean_deviance[k]);
        for (size_t f = 0; f < fit.cv_fold_deviance.size(); ++f) {
            out += ",";
            out += format_double(fit.cv_fold_deviance[f][k]);
        }
        out += "\n";
    }
    return out;
}

std::string fit_meta_to_json(const FitResult& fit, const FitConfig& cfg) {
    nlohmann::ordered_json j;
    j["chosen_lambda"] = fit.lambda;
    j["lambda_index"] = fit.lambda_index;
    j["lambda_min_index"] = fit.lambda_min_index;
    j["cv_se"] = fit.cv_se;
    j["n_rows"] = fit.n_rows;
    j["nonzeros"] =
        fit.lambda_index >= 0 && !fit.path.nonzeros.empty() ? fit.path.nonzeros[fit.lambda_index] : 0;
    j["lambda_count"] = cfg.lambda_count;
    j["lambda_min_ratio"] = cfg.lambda_min_ratio;
    j["cv_folds"] = cfg.cv_folds;
    j["cv_mode"] = cfg.cv_mode == CvMode::Stratified ? "stratified" : "chrono";
    j["tol"] = cfg.tol;
    j["kkt_tol"] = cfg.kkt_tol;
    j["max_iter"] = cfg.max_iter;
    j["standardize"] = cfg.standardize;
    j["seed"] = cfg.seed;
    j["selection_order"] = fit.path.selection_order;
    return j.dump(2) + "\n";
}

}  // namespace lobjump
