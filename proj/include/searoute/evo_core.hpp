#ifndef SEAROUTE_EVO_CORE_HPP
#define SEAROUTE_EVO_CORE_HPP

#include "searoute/geo_env.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace searoute {

// Binary genotype: `resolution` bits per free ordinate, MSB first.
struct Chromosome {
    std::vector<std::uint8_t> bits;
    int resolution = 0;

    std::size_t free_count() const { return bits.size() / resolution; }
    bool operator==(const Chromosome&) const = default;
};

Chromosome make_chromosome(std::vector<std::uint8_t> bits, int resolution);

inline std::uint32_t to_gray(std::uint32_t x) { return x ^ (x >> 1); }

inline std::uint32_t from_gray(std::uint32_t g) {
    for (std::uint32_t shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
    return g;
}

// Maps each n-bit code onto [-d, +d]: the lowest code decodes to -d, the
// highest to +d. Free abscissae are uniform between the pinned endpoints
// (0,0) and (d,0). With `gray` set the bits are read as a Gray code, so
// adjacent levels differ in a single bit.
Route decode(const Chromosome& c, double span, bool gray = false);

// Encodes free ordinates to the nearest representable code; the decode
// round-trip lands within half a cell.
Chromosome encode_ordinates(std::span<const double> ordinates, double span, int resolution,
                            bool gray = false);

// Integer level of each ordinate under the chosen bit interpretation.
std::vector<std::uint32_t> chromosome_codes(const Chromosome& c, bool gray = false);

Chromosome codes_to_chromosome(std::span<const std::uint32_t> codes, int resolution,
                               bool gray = false);

// Search-space cell area d^2/(M * 2^(n-1)): the exploration-exploitation dial.
double cell_area(double span, int free_count, int resolution);

// Per-bit Bernoulli marginals of an island's elite, the migration payload.
struct DistributionModel {
    std::vector<double> marginals;
    int resolution = 0;
    std::size_t fitted_from = 0;
};

struct Member {
    Chromosome chromosome;
    double fitness = 0.0;    // generalized cost E, lower is better
    std::uint64_t birth = 0; // generation the member first appeared in
};

struct GaParams {
    double crossover_prob = 0.9;
    double mutation_prob = -1.0; // < 0 means 1/(chromosome length)
    int tournament_size = 2;
};

using FitnessFn = std::function<double(const Chromosome&)>;

// Fixed-size population kept sorted by ascending fitness, ties broken
// older-first then by lexicographic bits.
class Population {
public:
    Population(std::vector<Member> members, std::uint64_t generation);

    static Population random(std::size_t size, std::size_t free_count, int resolution,
                             const FitnessFn& evaluate, std::mt19937_64& rng);

    const std::vector<Member>& members() const { return members_; }
    const Member& best() const { return members_.front(); }
    std::size_t size() const { return members_.size(); }
    std::uint64_t generation() const { return generation_; }

    // Top `fraction` of the population (at least one member).
    std::vector<Chromosome> elite(double fraction) const;

private:
    std::vector<Member> members_;
    std::uint64_t generation_ = 0;
};

// Tournament selection, single-point crossover, per-bit mutation.
std::vector<Chromosome> ga_offspring(const Population& pop, std::size_t count,
                                     const GaParams& params, std::mt19937_64& rng);

// Univariate marginal frequencies of the selected chromosomes, clamped to
// [1/(2L), 1 - 1/(2L)] so no bit fixates from a finite sample.
DistributionModel eda_fit(std::span<const Chromosome> selected);

std::vector<Chromosome> eda_sample(const DistributionModel& model, std::size_t count,
                                   std::mt19937_64& rng);

// Steady-state merge: re-evaluates parents and offspring with the supplied
// fitness, keeps the best `size` of the combined pools. Elitist at fixed
// fitness: the best member never worsens.
Population next_generation(const Population& pop, std::span<const Chromosome> ga_off,
                           std::span<const Chromosome> eda_off, const FitnessFn& evaluate);

} // namespace searoute

#endif
