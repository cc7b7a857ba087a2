#include "searoute/evo_core.hpp"

#include "searoute/errors.hpp"

#include <algorithm>
#include <cmath>

namespace searoute {

namespace {

bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool member_order(const Member& a, const Member& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    if (a.birth != b.birth) return a.birth < b.birth;
    return lex_less(a.chromosome.bits, b.chromosome.bits);
}

} // namespace

Chromosome make_chromosome(std::vector<std::uint8_t> bits, int resolution) {
    if (resolution < 1) throw InvalidInput("chromosome resolution must be at least 1 bit");
    if (bits.empty() || bits.size() % resolution != 0) {
        throw InvalidInput("chromosome length must be a positive multiple of the resolution");
    }
    for (const auto b : bits) {
        if (b > 1) throw InvalidInput("chromosome bits must be 0 or 1");
    }
    return Chromosome{std::move(bits), resolution};
}

Route decode(const Chromosome& c, double span, bool gray) {
    const int n = c.resolution;
    if (n < 1 || n > 30) throw InvalidInput("resolution out of range");
    const double levels = static_cast<double>((std::uint32_t{1} << n) - 1);

    const auto codes = chromosome_codes(c, gray);
    std::vector<double> ys(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        ys[i] = -span + static_cast<double>(codes[i]) * (2.0 * span) / levels;
    }
    return Route::from_ordinates(ys, span);
}

Chromosome encode_ordinates(std::span<const double> ordinates, double span, int resolution,
                            bool gray) {
    if (resolution < 1 || resolution > 30) throw InvalidInput("resolution out of range");
    if (!(span > 0.0)) throw InvalidInput("span must be positive");
    const std::uint32_t levels = (std::uint32_t{1} << resolution) - 1;

    std::vector<std::uint32_t> codes;
    codes.reserve(ordinates.size());
    for (const double y : ordinates) {
        const double frac = std::clamp((y + span) / (2.0 * span), 0.0, 1.0);
        codes.push_back(static_cast<std::uint32_t>(std::lround(frac * levels)));
    }
    return codes_to_chromosome(codes, resolution, gray);
}

std::vector<std::uint32_t> chromosome_codes(const Chromosome& c, bool gray) {
    const int n = c.resolution;
    std::vector<std::uint32_t> codes(c.free_count());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::uint32_t code = 0;
        for (int b = 0; b < n; ++b) {
            code = (code << 1) | c.bits[i * n + b];
        }
        codes[i] = gray ? from_gray(code) : code;
    }
    return codes;
}

Chromosome codes_to_chromosome(std::span<const std::uint32_t> codes, int resolution, bool gray) {
    std::vector<std::uint8_t> bits;
    bits.reserve(codes.size() * resolution);
    for (const std::uint32_t raw : codes) {
        const std::uint32_t code = gray ? to_gray(raw) : raw;
        for (int b = resolution - 1; b >= 0; --b) {
            bits.push_back(static_cast<std::uint8_t>((code >> b) & 1u));
        }
    }
    return Chromosome{std::move(bits), resolution};
}

double cell_area(double span, int free_count, int resolution) {
    if (!(span > 0.0) || free_count < 1 || resolution < 1) {
        throw InvalidInput("cell_area needs d > 0, M >= 1, n >= 1");
    }
    return span * span / (free_count * std::ldexp(1.0, resolution - 1));
}

Population::Population(std::vector<Member> members, std::uint64_t generation)
    : members_(std::move(members)), generation_(generation) {
    if (members_.empty()) throw InvalidInput("population cannot be empty");
    for (const Member& m : members_) {
        if (!std::isfinite(m.fitness)) throw InvalidInput("member fitness must be finite");
        if (m.chromosome.resolution != members_.front().chromosome.resolution ||
            m.chromosome.bits.size() != members_.front().chromosome.bits.size()) {
            throw InvalidInput("population members must share one encoding");
        }
    }
    std::sort(members_.begin(), members_.end(), member_order);
}

Population Population::random(std::size_t size, std::size_t free_count, int resolution,
                              const FitnessFn& evaluate, std::mt19937_64& rng) {
    if (size < 2) throw InvalidInput("population size must be at least 2");
    std::vector<Member> members;
    members.reserve(size);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < size; ++i) {
        std::vector<std::uint8_t> bits(free_count * resolution);
        for (auto& b : bits) b = coin(rng) ? 1 : 0;
        Chromosome c{std::move(bits), resolution};
        const double fit = evaluate(c);
        members.push_back({std::move(c), fit, 0});
    }
    return Population(std::move(members), 0);
}

std::vector<Chromosome> Population::elite(double fraction) const {
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(members_.size()))));
    std::vector<Chromosome> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count && i < members_.size(); ++i) {
        out.push_back(members_[i].chromosome);
    }
    return out;
}

std::vector<Chromosome> ga_offspring(const Population& pop, std::size_t count,
                                     const GaParams& params, std::mt19937_64& rng) {
    std::vector<Chromosome> out;
    out.reserve(count);
    if (count == 0) return out;

    const auto& members = pop.members();
    const std::size_t len = members.front().chromosome.bits.size();
    const double pm = params.mutation_prob >= 0.0 ? params.mutation_prob
                                                  : 1.0 / static_cast<double>(len);
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto tournament = [&]() -> const Chromosome& {
        std::size_t best = pick(rng);
        for (int t = 1; t < params.tournament_size; ++t) {
            const std::size_t other = pick(rng);
            if (other < best) best = other; // members are sorted by fitness
        }
        return members[best].chromosome;
    };

    while (out.size() < count) {
        Chromosome a = tournament();
        Chromosome b = tournament();
        if (len > 1 && unit(rng) < params.crossover_prob) {
            std::uniform_int_distribution<std::size_t> cut_dist(1, len - 1);
            const std::size_t cut = cut_dist(rng);
            for (std::size_t i = cut; i < len; ++i) std::swap(a.bits[i], b.bits[i]);
        }
        for (Chromosome* child : {&a, &b}) {
            for (auto& bit : child->bits) {
                if (unit(rng) < pm) bit ^= 1u;
            }
        }
        out.push_back(std::move(a));
        if (out.size() < count) out.push_back(std::move(b));
    }
    return out;
}

DistributionModel eda_fit(std::span<const Chromosome> selected) {
    if (selected.empty()) throw InvalidInput("eda_fit needs a nonempty selection");
    const std::size_t len = selected.front().bits.size();
    const int resolution = selected.front().resolution;
    for (const Chromosome& c : selected) {
        if (c.bits.size() != len || c.resolution != resolution) {
            throw InvalidInput("eda_fit selection mixes encodings");
        }
    }

    const double L = static_cast<double>(selected.size());
    const double floor = 1.0 / (2.0 * L);
    DistributionModel model;
    model.resolution = resolution;
    model.fitted_from = selected.size();
    model.marginals.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        double ones = 0.0;
        for (const Chromosome& c : selected) ones += c.bits[i];
        model.marginals[i] = std::clamp(ones / L, floor, 1.0 - floor);
    }
    return model;
}

std::vector<Chromosome> eda_sample(const DistributionModel& model, std::size_t count,
                                   std::mt19937_64& rng) {
    std::vector<Chromosome> out;
    out.reserve(count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<std::uint8_t> bits(model.marginals.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            bits[i] = unit(rng) < model.marginals[i] ? 1 : 0;
        }
        out.push_back(Chromosome{std::move(bits), model.resolution});
    }
    return out;
}

Population next_generation(const Population& pop, std::span<const Chromosome> ga_off,
                           std::span<const Chromosome> eda_off, const FitnessFn& evaluate) {
    const std::uint64_t next_gen = pop.generation() + 1;
    std::vector<Member> candidates;
    candidates.reserve(pop.size() + ga_off.size() + eda_off.size());

    for (const Member& m : pop.members()) {
        candidates.push_back({m.chromosome, evaluate(m.chromosome), m.birth});
    }
    for (const auto* pool : {&ga_off, &eda_off}) {
        for (const Chromosome& c : *pool) {
            candidates.push_back({c, evaluate(c), next_gen});
        }
    }

    std::sort(candidates.begin(), candidates.end(), member_order);
    candidates.resize(pop.size());
    return Population(std::move(candidates), next_gen);
}

} // namespace searoute
