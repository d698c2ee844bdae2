#ifndef CVBELL_OPTIMIZER_HPP
#define CVBELL_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cvbell {

enum class Direction { maximize, minimize, maximize_abs };

using Objective = std::function<double(std::span<const double>)>;

struct OptimizeSpec {
    Objective functional;
    Direction direction = Direction::maximize;
    int dim = 0;
    std::vector<double> lower;  // per-parameter box
    std::vector<double> upper;
    int restarts = 32;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> seed_points;  // extra start points, tried first
    int max_iterations = 4000;                     // per Nelder-Mead run
    int refine_rounds = 5;                         // shrinking restarts at the incumbent
};

struct OptimizeResult {
    double value = 0.0;              // raw functional value at the best point
    double score = 0.0;              // value in the optimization direction
    std::vector<double> point;
    int iterations = 0;
    int restarts = 0;
    bool converged = false;
};

// Multi-start Nelder-Mead over the box. Start points: the seed points, the
// box center, then low-discrepancy (Halton) points jittered by the seeded
// RNG. Each start is followed by refine_rounds restarts at its best point
// with a shrinking initial simplex. Deterministic for a fixed spec+seed;
// the result is never worse than the best start point. Throws if the
// functional returns a non-finite value (the offending point is reported).
OptimizeResult optimize(const OptimizeSpec& spec);

struct SweepSpec {
    std::function<double(double, std::span<const double>)> functional;  // (grid param, settings)
    Direction direction = Direction::maximize;
    int dim = 0;
    // fills the box for a given grid parameter (optimum scales move with it)
    std::function<void(double, std::vector<double>&, std::vector<double>&)> box_for;
    int restarts = 32;
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

// One optimize per grid point, warm-started from the previous optimum.
// Grid points are processed in order; restarts run as a deterministic
// parallel map (results merged by index).
std::vector<OptimizeResult> sweep(const SweepSpec& spec, const std::vector<double>& grid);

// Halton low-discrepancy point in [0,1)^dim, index i >= 0.
std::vector<double> halton_point(int index, int dim);

} // namespace cvbell

#endif
