// SPDX-License-Identifier: Apache-2.0

#include "gepsr/reference_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace gepsr {

double predict_ucs_eq2(double n, double v)
{
    if (!(v > 0.0)) throw std::domain_error("P-wave velocity must be positive");
    const double term1 = -(1.0 / 88.0) * ((n * n * n + v) / (1.0 + n * n));
    const double term2 = v * (n - 2.0) / (4.0 + v);
    const double term3 = 120000.0 / v;
    return term1 + term2 + term3;
}

const Alphabet& eq2_alphabet()
{
    static const Alphabet alphabet{
        FunctionSet::from_names({ "add", "sub", "mul", "div", "neg" }),
        TerminalSet::variables({ 'n', 'v' }, /*with_constants=*/true),
    };
    return alphabet;
}

Chromosome eq2_chromosome()
{
    // head 11 / tail 12 for max arity 2; one gene per summand.
    constexpr int kHead = 11;
    constexpr int kTail = 12;

    auto make_gene = [](std::string coding, std::vector<int> dc_coding,
                        std::vector<double> constants) {
        Gene gene;
        gene.head_length = kHead;
        gene.symbols = std::move(coding);
        // pad the head with inert terminals, then fill the tail
        while (gene.symbols.size() < kHead) gene.symbols.push_back('n');
        while (gene.symbols.size() < kHead + kTail) gene.symbols.push_back('n');
        gene.dc = std::move(dc_coding);
        gene.dc.resize(kTail, 0);
        gene.constants = std::move(constants);
        return gene;
    };

    Chromosome chrom;
    chrom.linking = function_symbol(Func::Add);
    // -(1/88) * (n^3 + v) / (1 + n^2); dc order: 1/88 first, then 1
    chrom.genes.push_back(make_gene("~*?/++*v?**nnnnn", { 0, 1 }, { 1.0 / 88.0, 1.0 }));
    // v * (n - 2) / (4 + v); dc order: 4 first, then 2
    chrom.genes.push_back(make_gene("/*+v-?vn?", { 1, 0 }, { 2.0, 4.0 }));
    // 120000 / v
    chrom.genes.push_back(make_gene("/?v", { 0 }, { 120000.0 }));
    return chrom;
}

namespace {

double sigmoid(double x)
{
    return 1.0 / (1.0 + std::exp(-x));
}

struct Forward {
    std::array<double, 3> hidden;
    double pred;
};

Forward forward_raw(const AnnNetwork& net, double x0, double x1)
{
    Forward f{};
    f.pred = net.out_b;
    for (int j = 0; j < 3; ++j) {
        f.hidden[j] = sigmoid(net.hidden_w[j][0] * x0 + net.hidden_w[j][1] * x1 + net.hidden_b[j]);
        f.pred += net.out_w[j] * f.hidden[j];
    }
    return f;
}

double normalize(double x, const std::array<double, 2>& range)
{
    return (x - range[0]) / (range[1] - range[0]);
}

double denormalize(double y, const std::array<double, 2>& range)
{
    return range[0] + y * (range[1] - range[0]);
}

} // namespace

AnnNetwork ann_init(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    AnnNetwork net;
    for (auto& row : net.hidden_w)
        for (auto& w : row) w = dist(rng);
    for (auto& b : net.hidden_b) b = dist(rng);
    for (auto& w : net.out_w) w = dist(rng);
    net.out_b = dist(rng);
    return net;
}

double ann_forward_raw(const AnnNetwork& net, double x0, double x1)
{
    return forward_raw(net, x0, x1).pred;
}

double ann_forward(const AnnNetwork& net, const RockSample& sample)
{
    if (!net.norm) throw std::logic_error("normalization ranges are unset; train first");
    const double x0 = normalize(sample.n, net.norm->n);
    const double x1 = normalize(sample.v, net.norm->v);
    return denormalize(forward_raw(net, x0, x1).pred, net.norm->ucs);
}

std::array<double, 13> ann_gradients(const AnnNetwork& net, double x0, double x1, double target)
{
    const Forward f = forward_raw(net, x0, x1);
    const double err = f.pred - target; // dE/dpred for E = 1/2 err^2

    std::array<double, 13> grad{};
    for (int j = 0; j < 3; ++j) {
        const double dpre = err * net.out_w[j] * f.hidden[j] * (1.0 - f.hidden[j]);
        grad[2 * j] = dpre * x0;
        grad[2 * j + 1] = dpre * x1;
        grad[6 + j] = dpre;
    }
    for (int j = 0; j < 3; ++j) grad[9 + j] = err * f.hidden[j];
    grad[12] = err;
    return grad;
}

namespace {

// Flattened parameter access matching ann_gradients order.
double* param_at(AnnNetwork& net, std::size_t k)
{
    if (k < 6) return &net.hidden_w[k / 2][k % 2];
    if (k < 9) return &net.hidden_b[k - 6];
    if (k < 12) return &net.out_w[k - 9];
    return &net.out_b;
}

} // namespace

double ann_gradient_check(const AnnNetwork& net, double x0, double x1, double target)
{
    constexpr double kStep = 1e-5;
    const auto analytic = ann_gradients(net, x0, x1, target);

    double worst = 0.0;
    AnnNetwork probe = net;
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        double* p = param_at(probe, k);
        const double saved = *p;
        *p = saved + kStep;
        const double ep = forward_raw(probe, x0, x1).pred - target;
        *p = saved - kStep;
        const double em = forward_raw(probe, x0, x1).pred - target;
        *p = saved;
        const double numeric = (0.5 * ep * ep - 0.5 * em * em) / (2.0 * kStep);
        const double denom = std::max({ std::fabs(analytic[k]), std::fabs(numeric), 1e-6 });
        worst = std::max(worst, std::fabs(analytic[k] - numeric) / denom);
    }
    return worst;
}

std::pair<AnnNetwork, std::vector<double>> ann_train(AnnNetwork net, const Dataset& train,
                                                     const TrainParams& params)
{
    if (train.size() == 0) throw std::invalid_argument("training set must not be empty");
    if (!train.has_targets()) throw std::invalid_argument("training set has no targets");
    if (!(params.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (!(params.momentum >= 0.0 && params.momentum < 1.0))
        throw std::invalid_argument("momentum must be in [0, 1)");

    AnnNetwork::Normalization norm;
    norm.n = { train.samples().front().n, train.samples().front().n };
    norm.v = { train.samples().front().v, train.samples().front().v };
    norm.ucs = { *train.samples().front().ucs, *train.samples().front().ucs };
    for (const auto& s : train.samples()) {
        norm.n = { std::min(norm.n[0], s.n), std::max(norm.n[1], s.n) };
        norm.v = { std::min(norm.v[0], s.v), std::max(norm.v[1], s.v) };
        norm.ucs = { std::min(norm.ucs[0], *s.ucs), std::max(norm.ucs[1], *s.ucs) };
    }
    if (norm.n[0] == norm.n[1] || norm.v[0] == norm.v[1] || norm.ucs[0] == norm.ucs[1])
        throw std::domain_error("cannot normalize a constant column");
    net.norm = norm;

    std::mt19937_64 rng(params.seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(std::max(params.epochs, 0)));
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double sq_sum = 0.0;
        for (std::size_t idx : order) {
            const RockSample& s = train.samples()[idx];
            const double x0 = normalize(s.n, norm.n);
            const double x1 = normalize(s.v, norm.v);
            const double y = normalize(*s.ucs, norm.ucs);

            const auto grad = ann_gradients(net, x0, x1, y);
            const Forward f = forward_raw(net, x0, x1);
            const double err = f.pred - y;
            sq_sum += err * err;

            std::size_t k = 0;
            auto step = [&](double& w, double& prev) {
                const double delta = -params.learning_rate * grad[k++] + params.momentum * prev;
                w += delta;
                prev = delta;
            };
            for (int j = 0; j < 3; ++j) {
                step(net.hidden_w[j][0], net.hidden_w_prev[j][0]);
                step(net.hidden_w[j][1], net.hidden_w_prev[j][1]);
            }
            for (int j = 0; j < 3; ++j) step(net.hidden_b[j], net.hidden_b_prev[j]);
            for (int j = 0; j < 3; ++j) step(net.out_w[j], net.out_w_prev[j]);
            step(net.out_b, net.out_b_prev);
        }
        history.push_back(sq_sum / static_cast<double>(train.size()));
    }
    return { std::move(net), std::move(history) };
}

std::string ann_to_json(const AnnNetwork& net)
{
    nlohmann::ordered_json j;
    j["hidden_w"] = net.hidden_w;
    j["hidden_b"] = net.hidden_b;
    j["out_w"] = net.out_w;
    j["out_b"] = net.out_b;
    if (net.norm) {
        j["norm"] = { { "n", net.norm->n }, { "v", net.norm->v }, { "ucs", net.norm->ucs } };
    } else {
        j["norm"] = nullptr;
    }
    return j.dump(2) + "\n";
}

AnnNetwork ann_from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    AnnNetwork net;
    j.at("hidden_w").get_to(net.hidden_w);
    j.at("hidden_b").get_to(net.hidden_b);
    j.at("out_w").get_to(net.out_w);
    j.at("out_b").get_to(net.out_b);
    if (!j.at("norm").is_null()) {
        AnnNetwork::Normalization norm;
        j["norm"].at("n").get_to(norm.n);
        j["norm"].at("v").get_to(norm.v);
        j["norm"].at("ucs").get_to(norm.ucs);
        net.norm = norm;
    }
    return net;
}

} // namespace gepsr
