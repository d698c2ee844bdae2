#include "cvbell/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cvbell {

namespace {

double radical_inverse(int index, int base) {
    double inv = 1.0 / base, f = inv, x = 0.0;
    for (int i = index + 1; i > 0; i /= base) {
        x += (i % base) * f;
        f *= inv;
    }
    return x;
}

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

struct ScoredPoint {
    double score = -std::numeric_limits<double>::infinity();
    double value = 0.0;
    std::vector<double> x;
    int iterations = 0;
    bool converged = false;
};

class BoxObjective {
public:
    BoxObjective(const OptimizeSpec& spec) : spec_(spec) {}

    double score(const std::vector<double>& x, double& raw) const {
        raw = spec_.functional(std::span<const double>(x));
        if (!std::isfinite(raw)) {
            std::ostringstream oss;
            oss << "optimize: non-finite functional value at point (";
            for (size_t i = 0; i < x.size(); ++i) oss << (i ? ", " : "") << x[i];
            oss << ")";
            throw std::runtime_error(oss.str());
        }
        switch (spec_.direction) {
            case Direction::maximize: return raw;
            case Direction::minimize: return -raw;
            case Direction::maximize_abs: return std::abs(raw);
        }
        return raw;
    }

    void clamp(std::vector<double>& x) const {
        for (int i = 0; i < spec_.dim; ++i) x[i] = std::clamp(x[i], spec_.lower[i], spec_.upper[i]);
    }

private:
    const OptimizeSpec& spec_;
};

// One Nelder-Mead run maximizing the score from x0 with initial step
// step_frac of the box width per axis. Updates `best` with every point it
// evaluates.
void nelder_mead(const OptimizeSpec& spec, const BoxObjective& obj, const std::vector<double>& x0,
                 double step_frac, ScoredPoint& best) {
    const int n = spec.dim;
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> verts(n + 1, x0);
    for (int i = 0; i < n; ++i) {
        const double width = spec.upper[i] - spec.lower[i];
        double h = step_frac * width;
        if (h == 0.0) h = step_frac;
        if (x0[i] + h > spec.upper[i]) h = -h;
        verts[i + 1][i] += h;
        obj.clamp(verts[i + 1]);
    }

    auto consider = [&](const std::vector<double>& x, double s, double raw) {
        if (s > best.score) {
            best.score = s;
            best.value = raw;
            best.x = x;
        }
    };

    std::vector<double> fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        double raw;
        fs[i] = obj.score(verts[i], raw);
        consider(verts[i], fs[i], raw);
    }

    std::vector<int> order(n + 1);
    int iter = 0;
    for (; iter < spec.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] > fs[b]; });
        const int ibest = order[0], iworst = order[n], isecond = order[n - 1];
        if (std::abs(fs[ibest] - fs[iworst]) < spec.tol) {
            best.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (int k = 0; k <= n; ++k) {
            if (k == iworst) continue;
            for (int i = 0; i < n; ++i) centroid[i] += verts[k][i];
        }
        for (int i = 0; i < n; ++i) centroid[i] /= n;

        auto moved = [&](double coeff) {
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i) x[i] = centroid[i] + coeff * (centroid[i] - verts[iworst][i]);
            obj.clamp(x);
            return x;
        };

        std::vector<double> xr = moved(alpha);
        double raw_r;
        const double fr = obj.score(xr, raw_r);
        consider(xr, fr, raw_r);

        if (fr > fs[ibest]) {
            std::vector<double> xe = moved(alpha * gamma);
            double raw_e;
            const double fe = obj.score(xe, raw_e);
            consider(xe, fe, raw_e);
            if (fe > fr) {
                verts[iworst] = std::move(xe);
                fs[iworst] = fe;
            } else {
                verts[iworst] = std::move(xr);
                fs[iworst] = fr;
            }
        } else if (fr > fs[isecond]) {
            verts[iworst] = std::move(xr);
            fs[iworst] = fr;
        } else {
            const bool outside = fr > fs[iworst];
            std::vector<double> xc = moved(outside ? rho * alpha : -rho);
            double raw_c;
            const double fc = obj.score(xc, raw_c);
            consider(xc, fc, raw_c);
            if (fc > (outside ? fr : fs[iworst])) {
                verts[iworst] = std::move(xc);
                fs[iworst] = fc;
            } else {
                for (int k = 0; k <= n; ++k) {
                    if (k == ibest) continue;
                    for (int i = 0; i < n; ++i)
                        verts[k][i] = verts[ibest][i] + sigma * (verts[k][i] - verts[ibest][i]);
                    obj.clamp(verts[k]);
                    double raw;
                    fs[k] = obj.score(verts[k], raw);
                    consider(verts[k], fs[k], raw);
                }
            }
        }
    }
    best.iterations += iter;
}

ScoredPoint run_start(const OptimizeSpec& spec, const BoxObjective& obj,
                      const std::vector<double>& x0) {
    ScoredPoint best;
    double raw;
    best.score = obj.score(x0, raw);
    best.value = raw;
    best.x = x0;
    nelder_mead(spec, obj, x0, 0.10, best);
    double frac = 0.03;
    for (int round = 0; round < spec.refine_rounds; ++round) {
        nelder_mead(spec, obj, best.x, frac, best);
        frac *= 0.3;
    }
    return best;
}

// Deterministic parallel map: results land by index, exceptions rethrown.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int workers = std::max(1, std::min(count, hw > 0 ? hw : 4));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

std::vector<double> halton_point(int index, int dim) {
    if (dim > static_cast<int>(std::size(kHaltonBases)))
        throw std::invalid_argument("halton_point: dimension too large");
    std::vector<double> x(dim);
    for (int i = 0; i < dim; ++i) x[i] = radical_inverse(index, kHaltonBases[i]);
    return x;
}

OptimizeResult optimize(const OptimizeSpec& spec) {
    if (spec.dim <= 0 || static_cast<int>(spec.lower.size()) != spec.dim ||
        static_cast<int>(spec.upper.size()) != spec.dim)
        throw std::invalid_argument("optimize: box does not match dim");
    if (!(spec.tol > 0.0)) throw std::invalid_argument("optimize: tol must be > 0");
    const BoxObjective obj(spec);

    // All start points are fixed up front so threading cannot perturb them.
    std::vector<std::vector<double>> starts;
    for (const auto& p : spec.seed_points) {
        if (static_cast<int>(p.size()) != spec.dim)
            throw std::invalid_argument("optimize: seed point has wrong dimension");
        std::vector<double> q = p;
        obj.clamp(q);
        starts.push_back(std::move(q));
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (int k = 0; k < spec.restarts; ++k) {
        std::vector<double> x(spec.dim);
        if (k == 0) {
            for (int i = 0; i < spec.dim; ++i) x[i] = 0.5 * (spec.lower[i] + spec.upper[i]);
        } else {
            const std::vector<double> h = halton_point(k - 1, spec.dim);
            for (int i = 0; i < spec.dim; ++i) {
                const double width = spec.upper[i] - spec.lower[i];
                x[i] = spec.lower[i] + width * h[i] + 0.05 * width * jitter(rng);
            }
        }
        obj.clamp(x);
        starts.push_back(std::move(x));
    }

    std::vector<ScoredPoint> results(starts.size());
    parallel_for(static_cast<int>(starts.size()),
                 [&](int i) { results[i] = run_start(spec, obj, starts[i]); });

    int best_idx = 0;
    for (size_t i = 1; i < results.size(); ++i)
        if (results[i].score > results[best_idx].score) best_idx = static_cast<int>(i);

    OptimizeResult out;
    out.value = results[best_idx].value;
    out.score = results[best_idx].score;
    out.point = results[best_idx].x;
    out.converged = results[best_idx].converged;
    out.restarts = static_cast<int>(starts.size());
    for (const auto& r : results) out.iterations += r.iterations;
    return out;
}

std::vector<OptimizeResult> sweep(const SweepSpec& spec, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<OptimizeResult> out;
    out.reserve(grid.size());
    std::vector<double> warm;
    for (size_t g = 0; g < grid.size(); ++g) {
        const double param = grid[g];
        OptimizeSpec os;
        os.functional = [&spec, param](std::span<const double> x) { return spec.functional(param, x); };
        os.direction = spec.direction;
        os.dim = spec.dim;
        spec.box_for(param, os.lower, os.upper);
        os.restarts = spec.restarts;
        os.tol = spec.tol;
        os.seed = spec.seed + g;
        if (!warm.empty()) os.seed_points.push_back(warm);
        OptimizeResult r = optimize(os);
        warm = r.point;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace cvbell
