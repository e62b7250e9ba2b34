#pragma once

#include "sqc/color.hpp"
#include "sqc/rng.hpp"

namespace sqc {

enum class SeedingStrategy { Uniform, DSquared };

// K points drawn independently and uniformly by pixel index.
Palette seed_uniform(const PixelCloud& cloud, std::size_t k, RngStream& rng);

// Per-point selection weights for the next D^2 draw: squared distance to
// the nearest already-chosen entry, normalized to sum 1. Throws
// DegenerateSeeding when every point coincides with a chosen entry.
std::vector<double> seeding_weights(const PixelCloud& cloud,
                                    const Palette& chosen);

// D^2 seeding: first entry uniform, each subsequent entry drawn with
// probability proportional to its squared distance from the nearest
// already-chosen entry. Requires >= k distinct points in the cloud.
Palette seed_dsquared(const PixelCloud& cloud, std::size_t k, RngStream& rng);

Palette seed(const PixelCloud& cloud, std::size_t k, SeedingStrategy strategy,
             RngStream& rng);

}  // namespace sqc
