// SPDX-License-Identifier: Apache-2.0

#include "gepsr/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gepsr {

namespace {

void check_shape(const PredictionSet& p)
{
    if (p.y_meas.size() != p.y_pred.size())
        throw std::invalid_argument("y_meas and y_pred must have equal length");
    if (p.y_meas.empty())
        throw std::invalid_argument("prediction set must not be empty");
}

} // namespace

double mape(const PredictionSet& p)
{
    check_shape(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.y_meas[i] == 0.0)
            throw std::domain_error("mape undefined for zero measured value");
        sum += std::fabs((p.y_meas[i] - p.y_pred[i]) / p.y_meas[i]);
    }
    return sum / static_cast<double>(p.size()) * 100.0;
}

double r_squared(const PredictionSet& p)
{
    check_shape(p);
    const auto n = static_cast<double>(p.size());
    if (p.size() < 2) throw std::domain_error("r_squared needs at least 2 points");

    double mean_m = 0.0, mean_p = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mean_m += p.y_meas[i];
        mean_p += p.y_pred[i];
    }
    mean_m /= n;
    mean_p /= n;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double dm = p.y_meas[i] - mean_m;
        const double dp = p.y_pred[i] - mean_p;
        sxy += dm * dp;
        sxx += dm * dm;
        syy += dp * dp;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::domain_error("r_squared undefined for zero variance");
    return (sxy * sxy) / (sxx * syy);
}

double r2_residual(const PredictionSet& p)
{
    check_shape(p);
    const auto n = static_cast<double>(p.size());
    if (p.size() < 2) throw std::domain_error("r2_residual needs at least 2 points");

    double mean_m = 0.0;
    for (double m : p.y_meas) mean_m += m;
    mean_m /= n;

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = p.y_meas[i] - p.y_pred[i];
        const double d = p.y_meas[i] - mean_m;
        ss_res += e * e;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0)
        throw std::domain_error("r2_residual undefined for zero variance");
    return 1.0 - ss_res / ss_tot;
}

double rmse(const PredictionSet& p)
{
    check_shape(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = p.y_meas[i] - p.y_pred[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(p.size()));
}

MetricsReport compute_metrics(const PredictionSet& p)
{
    return MetricsReport{ mape(p), r_squared(p), rmse(p) };
}

std::string to_json(const MetricsReport& report)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "{\"mape\": %.6f, \"r2\": %.6f, \"rmse\": %.6f}",
                  report.mape, report.r2, report.rmse);
    return buf;
}

} // namespace gepsr
