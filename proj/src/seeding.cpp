#include "sqc/seeding.hpp"

#include <limits>

namespace sqc {

namespace {

void check_cloud(const PixelCloud& cloud) {
    if (cloud.points.empty())
        throw InvalidInput("seeding: empty cloud");
}

// Weighted draw by inverse CDF over the cumulative weight vector.
std::size_t draw_weighted(const std::vector<double>& weights, double total,
                          RngStream& rng) {
    const double u = rng.next_double() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0)
            continue;
        acc += weights[i];
        last_positive = i;
        if (u < acc)
            return i;
    }
    return last_positive;  // guards against accumulated rounding at u ~ total
}

}  // namespace

Palette seed_uniform(const PixelCloud& cloud, std::size_t k, RngStream& rng) {
    check_cloud(cloud);
    if (k < 1)
        throw InvalidInput("seed_uniform: K must be >= 1");
    Palette palette;
    palette.colors.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        palette.colors.push_back(cloud.points[rng.next_index(cloud.size())]);
    return palette;
}

std::vector<double> seeding_weights(const PixelCloud& cloud,
                                    const Palette& chosen) {
    check_cloud(cloud);
    if (chosen.colors.empty())
        throw InvalidInput("seeding_weights: no chosen entries");
    std::vector<double> w(cloud.size());
    CompensatedSum total;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : chosen.colors)
            best = std::min(best, distance_sq(cloud.points[i], y));
        w[i] = best;
        total.add(best);
    }
    const double t = total.value();
    if (t <= 0.0)
        throw DegenerateSeeding(
            "seeding_weights: every point coincides with a chosen entry");
    for (auto& v : w)
        v /= t;
    return w;
}

Palette seed_dsquared(const PixelCloud& cloud, std::size_t k, RngStream& rng) {
    check_cloud(cloud);
    if (k < 1)
        throw InvalidInput("seed_dsquared: K must be >= 1");

    Palette palette;
    palette.colors.reserve(k);
    palette.colors.push_back(cloud.points[rng.next_index(cloud.size())]);

    // Incrementally maintained squared distance to the nearest chosen entry.
    std::vector<double> min_d2(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        min_d2[i] = distance_sq(cloud.points[i], palette.colors[0]);

    while (palette.colors.size() < k) {
        CompensatedSum total;
        for (double d : min_d2)
            total.add(d);
        const double t = total.value();
        if (t <= 0.0)
            throw DegenerateSeeding(
                "seed_dsquared: fewer distinct points than K");
        const std::size_t idx = draw_weighted(min_d2, t, rng);
        const ColorPoint& picked = cloud.points[idx];
        palette.colors.push_back(picked);
        for (std::size_t i = 0; i < cloud.size(); ++i)
            min_d2[i] = std::min(min_d2[i], distance_sq(cloud.points[i], picked));
    }
    return palette;
}

Palette seed(const PixelCloud& cloud, std::size_t k, SeedingStrategy strategy,
             RngStream& rng) {
    return strategy == SeedingStrategy::Uniform ? seed_uniform(cloud, k, rng)
                                                : seed_dsquared(cloud, k, rng);
}

}  // namespace sqc
