// SPDX-License-Identifier: Apache-2.0

#include "gepsr/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gepsr {

namespace {

// One uniform draw in [0,1); strict < keeps rate 0 an exact identity and
// rate 1 a certainty.
bool chance(Rng& rng, double rate)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < rate;
}

int draw_int(Rng& rng, int lo, int hi) // inclusive bounds
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

char draw_symbol(Rng& rng, const std::string& ids)
{
    return ids[static_cast<std::size_t>(draw_int(rng, 0, static_cast<int>(ids.size()) - 1))];
}

std::string head_ids(const Alphabet& alphabet)
{
    std::string ids;
    for (const auto& f : alphabet.functions.symbols()) ids.push_back(f.id);
    for (const auto& t : alphabet.terminals.symbols()) ids.push_back(t.id);
    return ids;
}

std::string tail_ids(const Alphabet& alphabet)
{
    std::string ids;
    for (const auto& t : alphabet.terminals.symbols()) ids.push_back(t.id);
    return ids;
}

void require_same_shape(const Chromosome& a, const Chromosome& b)
{
    bool ok = a.genes.size() == b.genes.size();
    for (std::size_t g = 0; ok && g < a.genes.size(); ++g) {
        const Gene& ga = a.genes[g];
        const Gene& gb = b.genes[g];
        ok = ga.symbols.size() == gb.symbols.size() && ga.head_length == gb.head_length
            && ga.dc.size() == gb.dc.size() && ga.constants.size() == gb.constants.size();
    }
    if (!ok) throw std::invalid_argument("chromosome shapes do not match");
}

// Flattened crossover space: per gene, symbols then Dc indices,
// concatenated across genes. Constants arrays stay put (only gene
// recombination moves them).
std::size_t flat_length(const Chromosome& c)
{
    std::size_t n = 0;
    for (const auto& g : c.genes) n += g.symbols.size() + g.dc.size();
    return n;
}

void swap_flat_range(Chromosome& a, Chromosome& b, std::size_t from, std::size_t to)
{
    std::size_t offset = 0;
    for (std::size_t g = 0; g < a.genes.size(); ++g) {
        Gene& ga = a.genes[g];
        Gene& gb = b.genes[g];
        for (std::size_t i = 0; i < ga.symbols.size(); ++i, ++offset) {
            if (offset >= from && offset < to) std::swap(ga.symbols[i], gb.symbols[i]);
        }
        for (std::size_t i = 0; i < ga.dc.size(); ++i, ++offset) {
            if (offset >= from && offset < to) std::swap(ga.dc[i], gb.dc[i]);
        }
    }
}

} // namespace

void EvolutionConfig::validate() const
{
    auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (generations < 0) throw ConfigError("generations must be >= 0");
    if (head_length < 1) throw ConfigError("head_length must be >= 1");
    if (num_genes < 1) throw ConfigError("num_genes must be >= 1");
    if (function_set.empty()) throw ConfigError("function_set must not be empty");
    for (const auto& rate : { mutation_rate, inversion_rate, is_rate, ris_rate,
                              gene_transposition_rate, one_point_rate, two_point_rate,
                              gene_recombination_rate, rnc_mutation_rate }) {
        if (!rate_ok(rate)) throw ConfigError("operator rates must be in [0, 1]");
    }
    if (!(rnc_range[0] < rnc_range[1])) throw ConfigError("rnc_range must satisfy lo < hi");
    if (elitism_count < 0 || elitism_count >= population_size)
        throw ConfigError("elitism_count must be in [0, population_size)");
    try {
        (void)FunctionSet::from_names(function_set);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (function_symbol(linking).arity != 2)
        throw ConfigError("linking function must be binary");
}

Alphabet EvolutionConfig::make_alphabet(const std::vector<char>& feature_ids) const
{
    if (feature_ids.empty()) throw ConfigError("terminal set must not be empty");
    return Alphabet{ FunctionSet::from_names(function_set),
                     TerminalSet::variables(feature_ids, rnc_enabled) };
}

Population init_population(const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng)
{
    config.validate();
    const std::string head_pool = head_ids(alphabet);
    const std::string tail_pool = tail_ids(alphabet);
    const int h = config.head_length;
    const int t = tail_length(h, alphabet.max_arity());

    const FunctionSymbol link = function_symbol(config.linking);

    Population pop;
    pop.individuals.reserve(static_cast<std::size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i) {
        Chromosome chrom;
        chrom.linking = link;
        chrom.genes.reserve(static_cast<std::size_t>(config.num_genes));
        for (int g = 0; g < config.num_genes; ++g) {
            Gene gene;
            gene.head_length = h;
            gene.symbols.reserve(static_cast<std::size_t>(h + t));
            for (int k = 0; k < h; ++k) gene.symbols.push_back(draw_symbol(rng, head_pool));
            for (int k = 0; k < t; ++k) gene.symbols.push_back(draw_symbol(rng, tail_pool));
            if (config.rnc_enabled) {
                gene.dc.resize(static_cast<std::size_t>(t));
                for (auto& idx : gene.dc) idx = draw_int(rng, 0, kRncArraySize - 1);
                gene.constants.resize(kRncArraySize);
                std::uniform_real_distribution<double> dist(config.rnc_range[0], config.rnc_range[1]);
                for (auto& c : gene.constants) c = dist(rng);
            }
            chrom.genes.push_back(std::move(gene));
        }
        pop.individuals.push_back(std::move(chrom));
    }
    pop.fitnesses.assign(pop.individuals.size(), kUnevaluated);
    return pop;
}

double fitness(const Chromosome& chrom, const Alphabet& alphabet, const TrainingSet& train)
{
    if (train.size() == 0) throw std::invalid_argument("training set must not be empty");
    const auto trees = decode_chromosome(chrom, alphabet);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double pred = evaluate_linked(trees, chrom.linking, train.rows[i]);
        if (!std::isfinite(pred)) return 0.0;
        const double e = pred - train.targets[i];
        sum_sq += e * e;
    }
    const double rmse = std::sqrt(sum_sq / static_cast<double>(train.size()));
    if (!std::isfinite(rmse)) return 0.0; // squared-error overflow
    return 1000.0 / (1.0 + rmse);
}

void evaluate_population(Population& pop, const Alphabet& alphabet, const TrainingSet& train)
{
    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
        if (pop.fitnesses[i] == kUnevaluated)
            pop.fitnesses[i] = fitness(pop.individuals[i], alphabet, train);
    }
}

std::vector<std::size_t> elite_indices(const Population& pop, int count)
{
    std::vector<std::size_t> order(pop.individuals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pop.fitnesses[a] > pop.fitnesses[b];
    });
    order.resize(static_cast<std::size_t>(std::min<std::size_t>(order.size(), static_cast<std::size_t>(count))));
    return order;
}

std::vector<Chromosome> select(const Population& pop, const EvolutionConfig& config, Rng& rng)
{
    for (double f : pop.fitnesses) {
        if (f == kUnevaluated) throw std::logic_error("select requires an evaluated population");
    }
    const auto pool_size = static_cast<std::size_t>(config.population_size - config.elitism_count);
    const double total = std::accumulate(pop.fitnesses.begin(), pop.fitnesses.end(), 0.0);

    std::vector<Chromosome> pool;
    pool.reserve(pool_size);
    if (total <= 0.0) {
        for (std::size_t k = 0; k < pool_size; ++k) {
            const int idx = draw_int(rng, 0, static_cast<int>(pop.individuals.size()) - 1);
            pool.push_back(pop.individuals[static_cast<std::size_t>(idx)]);
        }
        return pool;
    }
    for (std::size_t k = 0; k < pool_size; ++k) {
        const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
        double acc = 0.0;
        std::size_t picked = pop.individuals.size() - 1;
        for (std::size_t i = 0; i < pop.fitnesses.size(); ++i) {
            acc += pop.fitnesses[i];
            if (u < acc) {
                picked = i;
                break;
            }
        }
        pool.push_back(pop.individuals[picked]);
    }
    return pool;
}

Chromosome mutate(Chromosome chrom, const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng)
{
    const std::string head_pool = head_ids(alphabet);
    const std::string tail_pool = tail_ids(alphabet);
    for (auto& gene : chrom.genes) {
        for (std::size_t i = 0; i < gene.symbols.size(); ++i) {
            if (!chance(rng, config.mutation_rate)) continue;
            const bool in_head = static_cast<int>(i) < gene.head_length;
            gene.symbols[i] = draw_symbol(rng, in_head ? head_pool : tail_pool);
        }
        for (auto& idx : gene.dc) {
            if (!chance(rng, config.mutation_rate)) continue;
            idx = draw_int(rng, 0, static_cast<int>(gene.constants.size()) - 1);
        }
    }
    return chrom;
}

Chromosome invert(Chromosome chrom, const EvolutionConfig& config, Rng& rng)
{
    if (!chance(rng, config.inversion_rate)) return chrom;
    Gene& gene = chrom.genes[static_cast<std::size_t>(draw_int(rng, 0, static_cast<int>(chrom.genes.size()) - 1))];
    const int h = gene.head_length;
    int i = draw_int(rng, 0, h - 1);
    int j = draw_int(rng, 0, h - 1);
    if (i > j) std::swap(i, j);
    std::reverse(gene.symbols.begin() + i, gene.symbols.begin() + j + 1);
    return chrom;
}

Chromosome is_transpose(Chromosome chrom, const EvolutionConfig& config, Rng& rng)
{
    if (!chance(rng, config.is_rate)) return chrom;
    const int gene_count = static_cast<int>(chrom.genes.size());
    const Gene& src = chrom.genes[static_cast<std::size_t>(draw_int(rng, 0, gene_count - 1))];
    const int len = static_cast<int>(src.symbols.size());
    const int seg_len = std::min(draw_int(rng, 1, 3), len);
    const int start = draw_int(rng, 0, len - seg_len);
    const std::string segment = src.symbols.substr(static_cast<std::size_t>(start),
                                                   static_cast<std::size_t>(seg_len));

    Gene& dst = chrom.genes[static_cast<std::size_t>(draw_int(rng, 0, gene_count - 1))];
    const int h = dst.head_length;
    if (h < 2) return chrom; // no insertion point at or after 1
    const int pos = draw_int(rng, 1, h - 1);

    std::string head = dst.symbols.substr(0, static_cast<std::size_t>(h));
    head.insert(static_cast<std::size_t>(pos), segment);
    head.resize(static_cast<std::size_t>(h));
    dst.symbols.replace(0, static_cast<std::size_t>(h), head);
    return chrom;
}

Chromosome ris_transpose(Chromosome chrom, const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng)
{
    if (!chance(rng, config.ris_rate)) return chrom;
    Gene& gene = chrom.genes[static_cast<std::size_t>(draw_int(rng, 0, static_cast<int>(chrom.genes.size()) - 1))];
    const int h = gene.head_length;
    const int scan_start = draw_int(rng, 0, h - 1);
    const int seg_len = draw_int(rng, 1, 3);

    int fpos = -1;
    for (int i = scan_start; i < h; ++i) {
        if (alphabet.functions.find(gene.symbols[static_cast<std::size_t>(i)]) != nullptr) {
            fpos = i;
            break;
        }
    }
    if (fpos < 0) return chrom;

    const int len = static_cast<int>(gene.symbols.size());
    const std::string segment = gene.symbols.substr(
        static_cast<std::size_t>(fpos),
        static_cast<std::size_t>(std::min(seg_len, len - fpos)));

    std::string head = segment + gene.symbols.substr(0, static_cast<std::size_t>(h));
    head.resize(static_cast<std::size_t>(h));
    gene.symbols.replace(0, static_cast<std::size_t>(h), head);
    return chrom;
}

Chromosome gene_transpose(Chromosome chrom, const EvolutionConfig& config, Rng& rng)
{
    if (!chance(rng, config.gene_transposition_rate)) return chrom;
    if (chrom.genes.size() < 2) return chrom;
    const int idx = draw_int(rng, 1, static_cast<int>(chrom.genes.size()) - 1);
    std::rotate(chrom.genes.begin(), chrom.genes.begin() + idx, chrom.genes.begin() + idx + 1);
    return chrom;
}

Chromosome rnc_mutate(Chromosome chrom, const EvolutionConfig& config, Rng& rng)
{
    if (!config.rnc_enabled) return chrom;
    std::uniform_real_distribution<double> dist(config.rnc_range[0], config.rnc_range[1]);
    for (auto& gene : chrom.genes) {
        for (auto& c : gene.constants) {
            if (chance(rng, config.rnc_mutation_rate)) c = dist(rng);
        }
    }
    return chrom;
}

std::pair<Chromosome, Chromosome> recombine_one_point(Chromosome a, Chromosome b,
                                                      const EvolutionConfig& config, Rng& rng)
{
    require_same_shape(a, b);
    if (!chance(rng, config.one_point_rate)) return { std::move(a), std::move(b) };
    const std::size_t length = flat_length(a);
    const auto cut = static_cast<std::size_t>(draw_int(rng, 0, static_cast<int>(length) - 1));
    swap_flat_range(a, b, cut, length);
    return { std::move(a), std::move(b) };
}

std::pair<Chromosome, Chromosome> recombine_two_point(Chromosome a, Chromosome b,
                                                      const EvolutionConfig& config, Rng& rng)
{
    require_same_shape(a, b);
    if (!chance(rng, config.two_point_rate)) return { std::move(a), std::move(b) };
    const std::size_t length = flat_length(a);
    int p = draw_int(rng, 0, static_cast<int>(length) - 1);
    int q = draw_int(rng, 0, static_cast<int>(length) - 1);
    if (p > q) std::swap(p, q);
    swap_flat_range(a, b, static_cast<std::size_t>(p), static_cast<std::size_t>(q) + 1);
    return { std::move(a), std::move(b) };
}

std::pair<Chromosome, Chromosome> recombine_gene(Chromosome a, Chromosome b,
                                                 const EvolutionConfig& config, Rng& rng)
{
    require_same_shape(a, b);
    if (!chance(rng, config.gene_recombination_rate)) return { std::move(a), std::move(b) };
    const auto idx = static_cast<std::size_t>(draw_int(rng, 0, static_cast<int>(a.genes.size()) - 1));
    std::swap(a.genes[idx], b.genes[idx]);
    return { std::move(a), std::move(b) };
}

EvolutionResult evolve(const EvolutionConfig& config, const TrainingSet& train)
{
    config.validate();
    if (train.size() == 0) throw std::invalid_argument("training set must not be empty");
    const Alphabet alphabet = config.make_alphabet(train.feature_ids);

    Rng rng(config.seed);
    Population pop = init_population(config, alphabet, rng);
    evaluate_population(pop, alphabet, train);

    EvolutionResult result;
    auto record = [&](const Population& p) {
        const auto best = std::max_element(p.fitnesses.begin(), p.fitnesses.end());
        const auto idx = static_cast<std::size_t>(best - p.fitnesses.begin());
        result.history.push_back(*best);
        if (result.history.size() == 1 || *best > result.best_fitness) {
            result.best_fitness = *best;
            result.best = p.individuals[idx];
        }
    };
    record(pop);

    auto reached_target = [&] {
        return config.target_fitness && result.best_fitness >= *config.target_fitness;
    };

    for (int gen = 0; gen < config.generations && !reached_target(); ++gen) {
        const auto elites = elite_indices(pop, config.elitism_count);

        auto pool = select(pop, config, rng);
        for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
            std::tie(pool[i], pool[i + 1]) =
                recombine_one_point(std::move(pool[i]), std::move(pool[i + 1]), config, rng);
            std::tie(pool[i], pool[i + 1]) =
                recombine_two_point(std::move(pool[i]), std::move(pool[i + 1]), config, rng);
            std::tie(pool[i], pool[i + 1]) =
                recombine_gene(std::move(pool[i]), std::move(pool[i + 1]), config, rng);
        }
        for (auto& c : pool) {
            c = mutate(std::move(c), config, alphabet, rng);
            c = invert(std::move(c), config, rng);
            c = is_transpose(std::move(c), config, rng);
            c = ris_transpose(std::move(c), config, alphabet, rng);
            c = gene_transpose(std::move(c), config, rng);
            c = rnc_mutate(std::move(c), config, rng);
        }

        Population next;
        next.individuals.reserve(pop.individuals.size());
        next.fitnesses.reserve(pop.individuals.size());
        for (std::size_t e : elites) {
            next.individuals.push_back(pop.individuals[e]);
            next.fitnesses.push_back(pop.fitnesses[e]);
        }
        for (auto& c : pool) {
            next.individuals.push_back(std::move(c));
            next.fitnesses.push_back(kUnevaluated);
        }
        evaluate_population(next, alphabet, train);
        pop = std::move(next);
        record(pop);
        result.generations_run = gen + 1;
    }
    return result;
}

} // namespace gepsr
