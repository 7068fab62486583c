#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobjump/features.hpp"

namespace lobjump {

enum class CvMode : uint8_t { Stratified, Chrono };

struct FitConfig {
    int lambda_count = 100;
    double lambda_min_ratio = 1e-3;
    int cv_folds = 10;
    double tol = 1e-7;       // relative change of the penalized objective
    double kkt_tol = 1e-7;   // max stationarity residual, standardized scale
    int max_iter = 500;      // outer iterations per lambda
    bool standardize = true;
    CvMode cv_mode = CvMode::Stratified;
    uint64_t seed = 1;
    bool record_trace = false;  // keep per-iteration objectives (tests)
};

// Coefficient path over a descending log-spaced lambda grid. Coefficients are
// reported on the original feature scale; penalty_factors and center_means
// record the standardization actually applied so stationarity can be
// re-checked from the original data (factor 0 marks a constant column that
// was excluded from the fit).
struct RegPath {
    std::vector<double> lambdas;
    std::vector<std::vector<double>> betas;  // [grid][width]
    std::vector<double> objective;           // penalized, 1/N-normalized
    std::vector<double> mean_deviance;       // 2*nll/N at the solution
    std::vector<int> nonzeros;               // penalized coefficients only
    std::vector<uint8_t> converged;
    std::vector<std::string> selection_order;
    std::vector<std::string> col_names;
    std::vector<double> penalty_factors;
    std::vector<double> center_means;
    size_t n_rows = 0;
    size_t width = 0;
    int sparsity_drops = 0;  // grid steps where the nonzero count decreased
    std::vector<std::vector<double>> trace;  // per lambda, when recorded
};

struct FitResult {
    double lambda = 0.0;       // chosen: largest lambda within one SE of the minimum
    int lambda_index = -1;
    int lambda_min_index = -1; // raw deviance argmin (exact ties to larger lambda)
    double cv_se = 0.0;        // standard error over folds at the argmin
    std::vector<double> beta;  // original scale, at the chosen lambda
    std::vector<double> cv_mean_deviance;
    std::vector<std::vector<double>> cv_fold_deviance;  // [fold][grid]
    std::vector<size_t> fold_sizes;
    size_t n_rows = 0;
    RegPath path;  // full-data path
};

// Negative log-likelihood of the logistic model, sum over rows:
//   sum_i log(1 + exp(b.x_i)) - y_i b.x_i
// and its gradient sum_i (sigma(b.x_i) - y_i) x_i. Column 0 of the design is
// the intercept. Stable for linear predictors up to +-500. Rejects labels
// outside {0,1}.
double nll(const DesignMatrix& d, const std::vector<double>& beta);
std::vector<double> grad_nll(const DesignMatrix& d, const std::vector<double>& beta);

// L1-penalized logistic path: minimizes nll/N + lambda * sum_j |beta_j| over
// penalized columns (everything but the intercept), by coordinate descent on
// the local quadratic approximation with warm starts down the grid. The grid
// starts at the smallest lambda that zeroes every penalized coefficient.
RegPath fit_path(const DesignMatrix& d, const FitConfig& cfg);

// Same fit on a caller-supplied descending grid (cross-validation folds
// reuse the full-data grid).
RegPath fit_path_on_grid(const DesignMatrix& d, const FitConfig& cfg,
                         const std::vector<double>& grid);

// Max stationarity residual of `beta` (original scale) at `lambda`, measured
// on the standardized problem the solver actually saw; pass the path's
// penalty_factors and center_means. Zero is a perfect KKT point.
double kkt_residual(const DesignMatrix& d, const std::vector<double>& beta, double lambda,
                    const std::vector<double>& penalty_factors,
                    const std::vector<double>& center_means);

// K-fold cross-validation over the full-data grid. Mean held-out deviances
// within one standard error (over folds) of the minimum count as ties, and
// ties go to the larger lambda, so the chosen model is the sparsest one the
// held-out data cannot distinguish from the best. Ends with the full-data
// fit at that lambda. Stratified folds need at least cv_folds rows of each
// class.
FitResult cross_validate(const DesignMatrix& d, const FitConfig& cfg);

// Artifact serialization.
std::string path_to_csv(const RegPath& path);
std::string cv_curve_to_csv(const FitResult& fit);
std::string fit_meta_to_json(const FitResult& fit, const FitConfig& cfg);

}  // namespace lobjump
