// SPDX-License-Identifier: Apache-2.0
//
// Population evolution over Karva chromosomes: seeded initialization,
// RMSE-based fitness, roulette selection with elitism, the full operator
// set (mutation, inversion, IS/RIS/gene transposition, one-point,
// two-point and gene recombination, RNC mutation) and the generational
// loop.
//
// Reproducibility: one std::mt19937_64 stream seeded from
// EvolutionConfig::seed drives a run, consumed in a fixed order --
// initialization first, then per generation: selection draws, pair
// recombination draws, per-individual operator draws (mutate, invert,
// IS, RIS, gene transposition, RNC mutation, in that order). Identical
// seed + config + data give bitwise-identical results within one build;
// cross-build identity is not promised (distribution implementations
// differ).

#ifndef GEPSR_EVOLVE_HPP
#define GEPSR_EVOLVE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "gepsr/dataset.hpp"
#include "gepsr/karva.hpp"

namespace gepsr {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

/// Number of random numeric constants held by each gene when RNC is
/// enabled (the Dc indices range over this array).
inline constexpr int kRncArraySize = 10;

struct EvolutionConfig {
    int population_size = 100;
    int generations = 100;
    int head_length = 8;
    int num_genes = 3;
    Func linking = Func::Add;
    std::vector<std::string> function_set = { "add", "sub", "mul", "div" };

    double mutation_rate = 0.044;          ///< per symbol
    double inversion_rate = 0.1;           ///< per chromosome
    double is_rate = 0.1;                  ///< per chromosome
    double ris_rate = 0.1;                 ///< per chromosome
    double gene_transposition_rate = 0.1;  ///< per chromosome
    double one_point_rate = 0.3;           ///< per pair
    double two_point_rate = 0.3;           ///< per pair
    double gene_recombination_rate = 0.1;  ///< per pair

    bool rnc_enabled = true;
    std::array<double, 2> rnc_range = { -10.0, 10.0 };
    double rnc_mutation_rate = 0.044; ///< per constant

    int elitism_count = 1;
    std::uint64_t seed = 0;
    std::optional<double> target_fitness;

    /// Throws ConfigError on out-of-range rates, empty function set,
    /// elitism >= population, etc.
    void validate() const;

    /// Alphabet for a run over the given feature terminals ('?' included
    /// when RNC is enabled).
    Alphabet make_alphabet(const std::vector<char>& feature_ids) const;
};

/// Fitness sentinel for not-yet-evaluated individuals.
inline constexpr double kUnevaluated = -1.0;

struct Population {
    std::vector<Chromosome> individuals;
    std::vector<double> fitnesses; ///< kUnevaluated until scored
};

struct EvolutionResult {
    Chromosome best;
    double best_fitness = 0.0;
    std::vector<double> history; ///< best fitness per generation, gen 0 first
    int generations_run = 0;     ///< breeding iterations actually executed
};

/// Random population: head symbols uniform over functions+terminals,
/// tail symbols uniform over terminals, Dc indices and constants uniform
/// when RNC is enabled. Fitnesses are left at kUnevaluated.
Population init_population(const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng);

/// 1000/(1 + RMSE) over the training set; 0 if any prediction is
/// non-finite. Perfect predictions score exactly 1000.
double fitness(const Chromosome& chrom, const Alphabet& alphabet, const TrainingSet& train);

/// Scores every individual still at kUnevaluated.
void evaluate_population(Population& pop, const Alphabet& alphabet, const TrainingSet& train);

/// Roulette-wheel sampling proportional to fitness, with replacement;
/// pool size is population_size - elitism_count. Zero total fitness
/// falls back to uniform sampling.
std::vector<Chromosome> select(const Population& pop, const EvolutionConfig& config, Rng& rng);

/// Indices of the elitism_count fittest individuals (ties keep the
/// lower index), fittest first.
std::vector<std::size_t> elite_indices(const Population& pop, int count);

Chromosome mutate(Chromosome chrom, const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng);
Chromosome invert(Chromosome chrom, const EvolutionConfig& config, Rng& rng);
Chromosome is_transpose(Chromosome chrom, const EvolutionConfig& config, Rng& rng);
Chromosome ris_transpose(Chromosome chrom, const EvolutionConfig& config, const Alphabet& alphabet, Rng& rng);
Chromosome gene_transpose(Chromosome chrom, const EvolutionConfig& config, Rng& rng);
Chromosome rnc_mutate(Chromosome chrom, const EvolutionConfig& config, Rng& rng);

std::pair<Chromosome, Chromosome> recombine_one_point(Chromosome a, Chromosome b,
                                                      const EvolutionConfig& config, Rng& rng);
std::pair<Chromosome, Chromosome> recombine_two_point(Chromosome a, Chromosome b,
                                                      const EvolutionConfig& config, Rng& rng);
std::pair<Chromosome, Chromosome> recombine_gene(Chromosome a, Chromosome b,
                                                 const EvolutionConfig& config, Rng& rng);

/// Full generational loop. The initial population counts as generation 0
/// and is always evaluated and recorded, so history.size() ==
/// generations_run + 1 (generations == 0 yields a single entry). Stops
/// early once best fitness reaches target_fitness, when set.
EvolutionResult evolve(const EvolutionConfig& config, const TrainingSet& train);

} // namespace gepsr

#endif
