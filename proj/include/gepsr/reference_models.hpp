// SPDX-License-Identifier: Apache-2.0
//
// The bundled closed-form UCS predictor, its Karva encoding (used to
// cross-validate the decode/evaluate path), and a small feed-forward
// backpropagation network baseline (2 inputs, 3 sigmoid hidden units,
// linear output).

#ifndef GEPSR_REFERENCE_MODELS_HPP
#define GEPSR_REFERENCE_MODELS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gepsr/dataset.hpp"
#include "gepsr/karva.hpp"

namespace gepsr {

/// Published closed-form UCS estimate in MPa from porosity n (percent)
/// and P-wave velocity v (m/s):
///   -(1/88) * (n^3 + v)/(1 + n^2) + v*(n - 2)/(4 + v) + 120000/v
/// Throws std::domain_error for v <= 0.
double predict_ucs_eq2(double n, double v);

/// The same formula as a 3-gene add-linked chromosome (one gene per
/// summand) with constants {1/88, 1, 2, 4, 120000} resolved through the
/// RNC machinery. Evaluating it through decode/evaluate reproduces
/// predict_ucs_eq2 bit-for-bit on the same inputs.
Chromosome eq2_chromosome();

/// Alphabet the eq2 chromosome is written in: functions
/// {add, sub, mul, div, neg}, terminals {n, v, ?}.
const Alphabet& eq2_alphabet();

/// 2-3-1 network with sigmoid hidden layer and linear output. Inputs and
/// target are min-max normalized to [0,1] once training has set the
/// normalization ranges.
struct AnnNetwork {
    std::array<std::array<double, 2>, 3> hidden_w{};
    std::array<double, 3> hidden_b{};
    std::array<double, 3> out_w{};
    double out_b = 0.0;

    // previous-update buffers for the momentum term
    std::array<std::array<double, 2>, 3> hidden_w_prev{};
    std::array<double, 3> hidden_b_prev{};
    std::array<double, 3> out_w_prev{};
    double out_b_prev = 0.0;

    struct Normalization {
        std::array<double, 2> n{};
        std::array<double, 2> v{};
        std::array<double, 2> ucs{};
    };
    std::optional<Normalization> norm;
};

struct TrainParams {
    double learning_rate = 0.3;
    double momentum = 0.2;
    int epochs = 500;
    std::uint64_t seed = 0;
};

/// Weights and biases uniform in [-0.5, 0.5] (hidden weights row-major,
/// then hidden biases, output weights, output bias); momentum buffers
/// zero; normalization unset.
AnnNetwork ann_init(std::uint64_t seed);

/// Forward pass on already-normalized (or deliberately raw) inputs; no
/// min-max scaling on either side.
double ann_forward_raw(const AnnNetwork& net, double x0, double x1);

/// Normalizing forward pass: scales (n, v) into [0,1], runs the network,
/// and maps the output back to MPa. Throws std::logic_error when the
/// normalization ranges are unset.
double ann_forward(const AnnNetwork& net, const RockSample& sample);

/// Online backpropagation on the squared error of the normalized target,
/// with momentum: delta(t) = -lr * dE/dw + momentum * delta(t-1).
/// Samples are visited in a freshly shuffled order each epoch (seeded by
/// params.seed). Sets the normalization from the training data. Returns
/// the trained network and the per-epoch mean squared (normalized) error.
std::pair<AnnNetwork, std::vector<double>> ann_train(AnnNetwork net, const Dataset& train,
                                                     const TrainParams& params);

/// Analytic-vs-central-finite-difference check (step 1e-5) of all weight
/// and bias gradients of the squared error at one raw-space sample.
/// Returns max |analytic - numeric| / max(|analytic|, |numeric|, 1e-6).
double ann_gradient_check(const AnnNetwork& net, double x0, double x1, double target);

/// Analytic gradient of E = 1/2 (pred - target)^2 in raw space, flattened
/// as hidden_w row-major, hidden_b, out_w, out_b.
std::array<double, 13> ann_gradients(const AnnNetwork& net, double x0, double x1, double target);

/// JSON round-trip at full precision ({"hidden_w", "hidden_b", "out_w",
/// "out_b", "norm"}).
std::string ann_to_json(const AnnNetwork& net);
AnnNetwork ann_from_json(const std::string& text);

} // namespace gepsr

#endif
