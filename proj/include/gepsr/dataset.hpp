// SPDX-License-Identifier: Apache-2.0
//
// Rock-sample data model, porosity from density measurements, CSV
// ingestion (header `n_percent,v_mps,ucs_mpa`), random train/test
// splitting, and the bundled 39-sample carbonate test set.

#ifndef GEPSR_DATASET_HPP
#define GEPSR_DATASET_HPP

#include <istream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gepsr {

/// CSV or config parsing failure; the message names the offending
/// row/column where applicable.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One specimen: porosity n in percent, P-wave velocity v in m/s, and
/// optionally the measured unconfined compressive strength in MPa.
struct RockSample {
    double n = 0.0;
    double v = 0.0;
    std::optional<double> ucs;
};

struct DensityMeasurement {
    double rho_d = 0.0; ///< dry density
    double rho_s = 0.0; ///< density of the solid part, same units
};

/// Porosity as a fraction in [0,1): 1 - rho_d/rho_s.
/// Throws std::domain_error for non-positive densities or rho_d > rho_s.
double porosity(const DensityMeasurement& m);

/// porosity() scaled to percent.
double porosity_percent(const DensityMeasurement& m);

/// Samples plus the fixed feature schema (n, v -> ucs). Targets are
/// all-or-none across the samples.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<RockSample> samples);

    static const std::vector<std::string>& feature_names(); // {"n", "v"}
    static const std::string& target_name();                // "ucs"

    const std::vector<RockSample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool has_targets() const;

private:
    std::vector<RockSample> samples_;
};

/// Parse the CSV format: UTF-8, comma separated, header exactly
/// `n_percent,v_mps,ucs_mpa` (or `n_percent,v_mps` for prediction
/// inputs), LF or CRLF. Errors name the row and column.
Dataset load_csv(std::istream& in);
Dataset load_csv_file(const std::string& path);

/// Uniformly random partition without replacement. Train size is
/// round(train_fraction * N) with ties rounding toward train. Throws
/// std::invalid_argument when either side would be empty.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::mt19937_64& rng);

/// The bundled 39-sample published test set, in publication order.
const Dataset& table1();

/// Feature-matrix view consumed by the evolver: per-row feature values,
/// targets, and the single-character terminal ids naming each feature.
struct TrainingSet {
    std::vector<char> feature_ids;
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;

    std::size_t size() const { return rows.size(); }
};

/// Rock dataset as a TrainingSet with terminal ids {n, v}. Requires
/// targets to be present.
TrainingSet to_training_set(const Dataset& ds);

} // namespace gepsr

#endif
