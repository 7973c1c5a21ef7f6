// SPDX-License-Identifier: Apache-2.0

#ifndef GEPSR_METRICS_HPP
#define GEPSR_METRICS_HPP

#include <span>
#include <string>
#include <vector>

namespace gepsr {

/// Paired measured/predicted values. Lengths must match and be >= 1.
struct PredictionSet {
    std::vector<double> y_meas;
    std::vector<double> y_pred;

    std::size_t size() const { return y_meas.size(); }
};

struct MetricsReport {
    double mape = 0.0; ///< percent
    double r2 = 0.0;   ///< squared Pearson correlation
    double rmse = 0.0; ///< same unit as the target
};

/// Mean absolute percentage error: (100/N) * sum |(meas - pred)/meas|.
/// Throws std::domain_error when any measured value is zero.
double mape(const PredictionSet& p);

/// Squared Pearson correlation between measured and predicted values.
/// Requires N >= 2 and nonzero variance on both sides.
double r_squared(const PredictionSet& p);

/// The 1 - SS_res/SS_tot variant (coefficient of determination about the
/// measured mean). Exposed separately from r_squared; the Pearson form is
/// the one matching the bundled case-study results.
double r2_residual(const PredictionSet& p);

/// Root mean square error.
double rmse(const PredictionSet& p);

MetricsReport compute_metrics(const PredictionSet& p);

/// JSON object {"mape": ..., "r2": ..., "rmse": ...} with 6 decimals.
std::string to_json(const MetricsReport& report);

} // namespace gepsr

#endif
