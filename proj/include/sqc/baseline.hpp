#pragma once

#include "sqc/color.hpp"
#include "sqc/rng.hpp"

namespace sqc {

struct BaselineResult {
    Palette palette;
    double objective_r2 = 0.0;  // weighted mean squared nearest-distance
    std::size_t iterations_used = 0;
};

// Lloyd's K-Means from a D^2 seeding. Stops when no center moves more
// than tol (max-norm) or after max_iters. Empty clusters are re-seeded
// from the point farthest from its current center.
BaselineResult lloyd_kmeans(const PixelCloud& cloud, std::size_t k,
                            std::size_t max_iters, double tol, RngStream& rng);

// Exhaustive oracle for tiny instances (<= 12 points, K <= 3): enumerates
// every assignment of points to groups and solves each group's single
// center exactly (weighted centroid for r=2, grid + coordinate descent
// otherwise). Returns the globally optimal palette for objective(., r).
Palette brute_force_palette(const PixelCloud& cloud, std::size_t k, double r);

}  // namespace sqc
