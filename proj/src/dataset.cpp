// SPDX-License-Identifier: Apache-2.0

#include "gepsr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gepsr {

double porosity(const DensityMeasurement& m)
{
    if (!(m.rho_d > 0.0) || !(m.rho_s > 0.0))
        throw std::domain_error("densities must be positive");
    if (m.rho_d > m.rho_s)
        throw std::domain_error("dry density exceeds solid density");
    return 1.0 - m.rho_d / m.rho_s;
}

double porosity_percent(const DensityMeasurement& m)
{
    return porosity(m) * 100.0;
}

namespace {

void check_sample(const RockSample& s, std::size_t row, const char* source)
{
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << source << ": row " << row << ": " << what;
        throw ParseError(os.str());
    };
    if (!(s.n > 0.0 && s.n < 100.0)) fail("porosity must be in (0, 100) percent");
    if (!(s.v > 0.0)) fail("P-wave velocity must be positive");
    if (s.ucs && !(*s.ucs > 0.0)) fail("UCS must be positive when present");
}

} // namespace

Dataset::Dataset(std::vector<RockSample> samples)
    : samples_(std::move(samples))
{
    std::size_t row = 1;
    for (const auto& s : samples_) check_sample(s, row++, "dataset");
    if (!samples_.empty()) {
        const bool first = samples_.front().ucs.has_value();
        for (const auto& s : samples_) {
            if (s.ucs.has_value() != first)
                throw ParseError("dataset: ucs must be present for all samples or none");
        }
    }
}

const std::vector<std::string>& Dataset::feature_names()
{
    static const std::vector<std::string> names = { "n", "v" };
    return names;
}

const std::string& Dataset::target_name()
{
    static const std::string name = "ucs";
    return name;
}

bool Dataset::has_targets() const
{
    return !samples_.empty() && samples_.front().ucs.has_value();
}

namespace {

std::vector<std::string> split_fields(std::string line)
{
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column)
{
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        std::ostringstream os;
        os << "csv: row " << row << ", column " << column << ": not a number: '" << cell << "'";
        throw ParseError(os.str());
    }
    return value;
}

} // namespace

Dataset load_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input");
    const auto header = split_fields(line);

    bool with_ucs = false;
    if (header == std::vector<std::string>{ "n_percent", "v_mps", "ucs_mpa" }) {
        with_ucs = true;
    } else if (header != std::vector<std::string>{ "n_percent", "v_mps" }) {
        throw ParseError("csv: header must be 'n_percent,v_mps,ucs_mpa' or 'n_percent,v_mps'");
    }

    std::vector<RockSample> samples;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_fields(line);
        const std::size_t expected = with_ucs ? 3 : 2;
        if (fields.size() != expected) {
            std::ostringstream os;
            os << "csv: row " << row << ": expected " << expected << " columns, got " << fields.size();
            throw ParseError(os.str());
        }
        RockSample s;
        s.n = parse_cell(fields[0], row, "n_percent");
        s.v = parse_cell(fields[1], row, "v_mps");
        if (with_ucs) s.ucs = parse_cell(fields[2], row, "ucs_mpa");
        check_sample(s, row, "csv");
        samples.push_back(s);
        ++row;
    }
    return Dataset(std::move(samples));
}

Dataset load_csv_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    return load_csv(in);
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::mt19937_64& rng)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0, 1)");
    const std::size_t n = ds.size();
    if (n < 2) throw std::invalid_argument("dataset too small to split");

    // Nearest integer, ties toward train.
    const auto train_size = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
    if (train_size == 0 || train_size == n)
        throw std::invalid_argument("split would leave one side empty");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<RockSample> train, test;
    train.reserve(train_size);
    test.reserve(n - train_size);
    for (std::size_t i = 0; i < n; ++i) {
        (i < train_size ? train : test).push_back(ds.samples()[order[i]]);
    }
    return { Dataset(std::move(train)), Dataset(std::move(test)) };
}

const Dataset& table1()
{
    static const Dataset ds = [] {
        const double raw[39][3] = {
            { 24.9, 2551.2, 69.1 }, { 18.9, 2766, 66.5 }, { 23, 2618.4, 65.6 },
            { 19.8, 2900, 64 },     { 19.7, 2679, 63.6 }, { 29.3, 3135, 60.9 },
            { 33.3, 2775, 69.5 },   { 35.5, 2903.3, 71.8 }, { 31.8, 3341.1, 59.1 },
            { 24.2, 3033.1, 57.2 }, { 14.1, 3016.5, 56.2 }, { 20.6, 3107.8, 53.8 },
            { 35.3, 3832.7, 61.3 }, { 28.5, 3560.8, 58 },  { 18.8, 3552.7, 50.9 },
            { 31.5, 3884.7, 50.8 }, { 18, 3973.4, 46.6 },  { 25.7, 4297.6, 44.5 },
            { 15.9, 4014.4, 44.4 }, { 31.7, 4390.1, 54.2 }, { 29.4, 4392.8, 53.9 },
            { 21.5, 4383.5, 43.9 }, { 18.5, 4330.2, 42.7 }, { 18.3, 4518.2, 41.8 },
            { 22.2, 4548.3, 41.4 }, { 20.4, 4651.9, 40.9 }, { 24.9, 4395.8, 50.6 },
            { 14.2, 4240.8, 40.4 }, { 34.6, 4822, 48.8 },  { 14.9, 4586.4, 38.2 },
            { 12.6, 4870.8, 36 },   { 20, 4990.9, 35.5 },  { 9.9, 5030.4, 35.4 },
            { 23.2, 5047, 44.8 },   { 10.1, 4532, 34.4 },  { 14.1, 5580.5, 32.8 },
            { 17.3, 5051.6, 36.6 }, { 15.3, 5217.8, 34.6 }, { 11.2, 4946.1, 34.5 },
        };
        std::vector<RockSample> samples;
        samples.reserve(39);
        for (const auto& r : raw) samples.push_back({ r[0], r[1], r[2] });
        return Dataset(std::move(samples));
    }();
    return ds;
}

TrainingSet to_training_set(const Dataset& ds)
{
    if (!ds.has_targets()) throw std::invalid_argument("dataset has no targets");
    TrainingSet out;
    out.feature_ids = { 'n', 'v' };
    out.rows.reserve(ds.size());
    out.targets.reserve(ds.size());
    for (const auto& s : ds.samples()) {
        out.rows.push_back({ s.n, s.v });
        out.targets.push_back(*s.ucs);
    }
    return out;
}

} // namespace gepsr
