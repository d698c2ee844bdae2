// Command-line surface: single optimizations, parameter sweeps, figure-data
// exports, the rotation-fidelity scan, and the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include "cvbell/bell.hpp"
#include "cvbell/fock.hpp"
#include "cvbell/observables.hpp"
#include "cvbell/optimizer.hpp"
#include "cvbell/phase_space.hpp"
#include "cvbell/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

using namespace cvbell;
using nlohmann::json;

namespace {

std::string output_path(const std::string& out) {
    if (out.empty() || std::filesystem::path(out).is_absolute()) return out;
    const char* dir = std::getenv("CVBELL_OUTPUT_DIR");
    if (!dir || !*dir) return out;
    return (std::filesystem::path(dir) / out).string();
}

std::string timestamp_line() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string("# generated ") + buf + " by cvbell\n";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + path);
    f << text;
}

StateKind parse_state(const std::string& s) {
    if (s == "tmss") return StateKind::tmss;
    if (s == "ecs") return StateKind::ecs;
    if (s == "single_photon") return StateKind::single_photon;
    throw CLI::ValidationError("--state", "unknown state: " + s);
}

Formalism parse_formalism(const std::string& s) {
    if (s == "pseudospin") return Formalism::pseudospin;
    if (s == "bw") return Formalism::bw;
    if (s == "gbw") return Formalism::gbw;
    if (s == "gisin_peres") return Formalism::gisin_peres;
    if (s == "ch_qubit") return Formalism::ch_qubit;
    if (s == "ch_q") return Formalism::ch_q;
    if (s == "ch_parity") return Formalism::ch_parity;
    throw CLI::ValidationError("--formalism", "unknown formalism: " + s);
}

// A Bell functional over raw optimizer parameters, rebuildable per sweep
// parameter; the box moves with it.
struct Functional {
    std::function<double(double, std::span<const double>)> eval;
    std::function<void(double, std::vector<double>&, std::vector<double>&)> box_for;
    std::function<BellSettings(std::span<const double>)> decode;
    std::function<std::vector<std::vector<double>>(double)> seeds;  // known-good start families
    int dim = 0;
    Direction direction = Direction::maximize_abs;
};

[[noreturn]] void unsupported(StateKind state, Formalism formalism) {
    throw CLI::ValidationError(
        "--formalism", to_string(formalism) + " is not available for state " + to_string(state) +
                           " (single_photon pairs with CH formalisms; bw/gbw/pseudospin/"
                           "gisin_peres/ch_q/ch_parity with tmss or ecs)");
}

Functional make_functional(StateKind state, Formalism formalism, int cutoff_override) {
    Functional f;
    const bool ecs = state == StateKind::ecs;
    switch (formalism) {
        case Formalism::pseudospin: {
            if (state == StateKind::single_photon) unsupported(state, formalism);
            f.dim = 6;
            auto decode = [](std::span<const double> x) -> PseudospinSettings {
                return {{x[0], x[4]}, {x[1], x[5]}, {x[2], 0.0}, {x[3], 0.0}};
            };
            f.eval = [state, decode](double p, std::span<const double> x) {
                return chsh_pseudospin_analytic(state, p, decode(x));
            };
            f.decode = [decode](std::span<const double> x) { return BellSettings(decode(x)); };
            f.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
                lo.assign(6, -M_PI);
                hi.assign(6, M_PI);
            };
            break;
        }
        case Formalism::bw:
        case Formalism::gbw: {
            if (state == StateKind::single_photon) unsupported(state, formalism);
            const bool restricted = formalism == Formalism::bw;
            f.dim = restricted ? 2 : 4;
            // TMSS optima sit on the real axis, ECS optima on the imaginary
            // axis (the cat-rotation correspondence uses D(i alpha))
            auto decode = [restricted, ecs](std::span<const double> x) -> DisplacementSettings {
                auto mk = [ecs](double v) { return ecs ? Complex(0.0, v) : Complex(v, 0.0); };
                if (restricted)
                    return {{Complex(0.0, 0.0)}, {mk(x[0])}, {Complex(0.0, 0.0)}, {mk(x[1])}};
                return {{mk(x[0])}, {mk(x[1])}, {mk(x[2])}, {mk(x[3])}};
            };
            f.eval = [state, decode](double p, std::span<const double> x) {
                return chsh_gbw(state, p, decode(x));
            };
            f.decode = [decode](std::span<const double> x) { return BellSettings(decode(x)); };
            if (!restricted) {
                f.seeds = [ecs](double p) -> std::vector<std::vector<double>> {
                    if (ecs) {
                        const double u = M_PI / (16.0 * p);
                        const double s1 = 0.0305507 * M_PI / p, s2 = 0.0927347 * M_PI / p;
                        return {{0.0, 2.0 * u, 5.0 * u, 3.0 * u}, {-s1, s2, s1, -s2}};
                    }
                    const double xq = std::sqrt(std::log(3.0) / (16.0 * std::cosh(2.0 * p)));
                    return {{xq, -xq, 0.0, 2.0 * xq}};
                };
            }
            f.box_for = [ecs, dim = f.dim](double p, std::vector<double>& lo, std::vector<double>& hi) {
                const double box = ecs ? 2.5 / std::max(p, 0.05) : 1.0;
                lo.assign(dim, -box);
                hi.assign(dim, box);
            };
            break;
        }
        case Formalism::gisin_peres: {
            if (state == StateKind::single_photon) unsupported(state, formalism);
            const int n_max = cutoff_override > 0 ? cutoff_override : 63;
            f.dim = 4;
            // finite-N formalism: the state is truncated at the observable's
            // dimension; one correlation table per sweep parameter
            auto cache = std::make_shared<std::pair<double, std::shared_ptr<GisinPeresCorrelations>>>(
                -1.0, nullptr);
            f.eval = [state, n_max, cache](double p, std::span<const double> x) {
                if (!cache->second || cache->first != p) {
                    const FockCutoff cut(n_max);
                    const TwoModeState psi =
                        state == StateKind::tmss ? make_tmss(p, cut) : make_ecs(p, cut);
                    cache->second = std::make_shared<GisinPeresCorrelations>(psi);
                    cache->first = p;
                }
                return cache->second->chsh({{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.decode = [](std::span<const double> x) {
                return BellSettings(ProjectorSettings{{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
                lo.assign(4, -M_PI);
                hi.assign(4, M_PI);
            };
            break;
        }
        case Formalism::ch_qubit: {
            if (state != StateKind::single_photon) unsupported(state, formalism);
            f.dim = 4;
            f.eval = [](double, std::span<const double> x) {
                return ch_qubit_single_photon({{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.decode = [](std::span<const double> x) {
                return BellSettings(ProjectorSettings{{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
                lo.assign(4, -M_PI);
                hi.assign(4, M_PI);
            };
            f.direction = Direction::maximize;
            break;
        }
        case Formalism::ch_q: {
            f.dim = 8;
            auto decode = [](std::span<const double> x) -> DisplacementSettings {
                return {{Complex(x[0], x[1])},
                        {Complex(x[2], x[3])},
                        {Complex(x[4], x[5])},
                        {Complex(x[6], x[7])}};
            };
            f.eval = [state, decode](double p, std::span<const double> x) {
                return ch_q(state, p, decode(x));
            };
            f.decode = [decode](std::span<const double> x) { return BellSettings(decode(x)); };
            f.box_for = [state](double p, std::vector<double>& lo, std::vector<double>& hi) {
                const double box = state == StateKind::ecs ? p + 1.5 : 2.0;
                lo.assign(8, -box);
                hi.assign(8, box);
            };
            f.direction = state == StateKind::tmss ? Direction::maximize : Direction::minimize;
            break;
        }
        case Formalism::ch_parity: {
            if (state == StateKind::single_photon) unsupported(state, formalism);
            f.dim = 4;
            f.eval = [state](double p, std::span<const double> x) {
                return ch_parity(state, p, {{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.decode = [](std::span<const double> x) {
                return BellSettings(ProjectorSettings{{x[0]}, {x[1]}, {x[2]}, {x[3]}});
            };
            f.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
                lo.assign(4, -M_PI);
                hi.assign(4, M_PI);
            };
            f.direction = state == StateKind::tmss ? Direction::maximize : Direction::minimize;
            break;
        }
    }
    if (formalism == Formalism::pseudospin || formalism == Formalism::bw ||
        formalism == Formalism::gbw || formalism == Formalism::gisin_peres)
        f.direction = Direction::maximize_abs;
    return f;
}

Direction parse_direction(const std::string& s, Direction fallback) {
    if (s.empty()) return fallback;
    if (s == "max") return Direction::maximize;
    if (s == "min") return Direction::minimize;
    if (s == "max_abs") return Direction::maximize_abs;
    throw CLI::ValidationError("--direction", "expected max|min|max_abs");
}

json settings_json(const BellSettings& s) {
    json j;
    std::visit(
        [&j](const auto& v) {
            auto one = [](const auto& setting) -> json {
                using S = std::decay_t<decltype(setting)>;
                if constexpr (std::is_same_v<S, PseudospinSetting>)
                    return {{"theta", setting.theta}, {"phi", setting.phi}};
                else if constexpr (std::is_same_v<S, DisplacementSetting>)
                    return {{"re", setting.alpha.real()}, {"im", setting.alpha.imag()}};
                else
                    return {{"theta", setting.theta}};
            };
            j["a"] = one(v.a);
            j["a_prime"] = one(v.a_prime);
            j["b"] = one(v.b);
            j["b_prime"] = one(v.b_prime);
        },
        s);
    return j;
}

json result_to_json(const BellResult& br, const OptimizeResult& r, double param) {
    json j;
    j["param"] = param;
    j["value"] = br.value;
    j["score"] = r.score;
    j["formalism"] = to_string(br.formalism);
    j["settings"] = settings_json(br.settings);
    j["raw_settings"] = r.point;
    j["iterations"] = br.iterations;
    j["restarts"] = br.restarts;
    j["converged"] = br.converged;
    return j;
}

TwoModeState single_photon_state(FockCutoff cut) {
    CMat c = CMat::Zero(cut.dim(), cut.dim());
    c(0, 1) = 1.0 / std::sqrt(2.0);
    c(1, 0) = -1.0 / std::sqrt(2.0);
    return TwoModeState{c, cut, 0.0};
}

// Re-evaluates the functional through the truncated-matrix route at the
// optimum so residuals are attributable; skipped when the required cutoff is
// impractically large (deep-squeezing TMSS).
json oracle_diagnostics(StateKind state, Formalism formalism, double param,
                        const BellSettings& settings, double closed_value, int gp_cutoff) {
    json j;
    FockCutoff cut(32);
    switch (state) {
        case StateKind::tmss: cut = tmss_default_cutoff(param); break;
        case StateKind::ecs: cut = default_cutoff(param * param); break;
        case StateKind::single_photon: cut = FockCutoff(32); break;
    }
    // the Gisin-Peres formalism is defined at the run's finite dimension
    if (formalism == Formalism::gisin_peres) cut = FockCutoff(gp_cutoff);
    if (cut.n_max > 400) {
        j["oracle_check"] = "skipped";
        j["required_cutoff"] = cut.n_max;
        return j;
    }
    TwoModeState psi = state == StateKind::tmss ? make_tmss(param, cut)
                       : state == StateKind::ecs ? make_ecs(param, cut)
                                                 : single_photon_state(cut);
    double matrix_value = 0.0;
    switch (formalism) {
        case Formalism::pseudospin:
            matrix_value = chsh_pseudospin(psi, std::get<PseudospinSettings>(settings));
            break;
        case Formalism::bw:
        case Formalism::gbw:
            matrix_value = chsh_bw_state(psi, std::get<DisplacementSettings>(settings));
            break;
        case Formalism::gisin_peres:
            matrix_value = chsh_gisin_peres(psi, std::get<ProjectorSettings>(settings));
            break;
        case Formalism::ch_qubit:
            matrix_value = ch_qubit(psi, std::get<ProjectorSettings>(settings));
            break;
        case Formalism::ch_q:
            matrix_value = ch_q_state(psi, std::get<DisplacementSettings>(settings));
            break;
        case Formalism::ch_parity:
            matrix_value = ch_parity_state(psi, std::get<ProjectorSettings>(settings));
            break;
    }
    j["cutoff"] = cut.n_max;
    j["tail_mass"] = psi.tail_mass;
    j["oracle_value"] = matrix_value;
    j["oracle_residual"] = std::abs(matrix_value - closed_value);
    return j;
}

struct CommonOpts {
    std::string state = "tmss";
    std::string formalism = "pseudospin";
    std::string direction;
    std::string out;
    std::string format;
    int restarts = 32;
    int cutoff = 0;
    std::uint64_t seed = 0;
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_model) {
    if (with_model) {
        cmd->add_option("--state", o.state, "tmss | ecs | single_photon");
        cmd->add_option("--formalism", o.formalism,
                        "pseudospin | bw | gbw | gisin_peres | ch_qubit | ch_q | ch_parity");
        cmd->add_option("--direction", o.direction, "max | min | max_abs (formalism default)");
        cmd->add_option("--restarts", o.restarts, "multi-start count")->check(CLI::PositiveNumber);
        cmd->add_option("--cutoff", o.cutoff, "Fock cutoff override (gisin_peres dimension - 1)");
    }
    cmd->add_option("--seed", o.seed, "RNG seed (deterministic outputs per seed)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv | json");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp header line in CSV");
}

std::string csv_header_for_settings(int dim) {
    std::string h = "param,value,converged,iterations";
    for (int i = 0; i < dim; ++i) h += ",setting_" + std::to_string(i);
    return h + "\n";
}

std::string csv_row(double param, const OptimizeResult& r) {
    std::string row = fmt(param) + "," + fmt(r.value) + "," + (r.converged ? "1" : "0") + "," +
                      std::to_string(r.iterations);
    for (double v : r.point) row += "," + fmt(v);
    return row + "\n";
}

json run_config_json(const CommonOpts& o, const std::string& command) {
    json j;
    j["command"] = command;
    j["state"] = o.state;
    j["formalism"] = o.formalism;
    j["restarts"] = o.restarts;
    j["seed"] = o.seed;
    if (o.cutoff > 0) j["cutoff"] = o.cutoff;
    return j;
}

// ---- figure data ----------------------------------------------------------

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::string figure_curves(const std::string& id, int points, std::uint64_t seed) {
    const auto optimize_curve = [&](StateKind state, Formalism formalism,
                                    const std::vector<double>& grid,
                                    Direction dir_override = Direction::maximize_abs,
                                    bool use_override = false) {
        Functional f = make_functional(state, formalism, 0);
        SweepSpec spec;
        spec.functional = f.eval;
        spec.direction = use_override ? dir_override : f.direction;
        spec.dim = f.dim;
        spec.box_for = f.box_for;
        spec.restarts = 16;
        spec.seed = seed;
        std::vector<double> vals;
        for (const auto& r : sweep(spec, grid)) vals.push_back(r.score);
        return vals;
    };

    std::string body;
    if (id == "1a" || id == "2a") {
        const bool tmss = id == "1a";
        const StateKind st = tmss ? StateKind::tmss : StateKind::ecs;
        const auto grid = tmss ? linspace(0.0, 3.0, points) : linspace(0.05, 3.0, points);
        const auto bw = optimize_curve(st, Formalism::bw, grid);
        const auto gbw = optimize_curve(st, Formalism::gbw, grid);
        const auto ps = optimize_curve(st, Formalism::pseudospin, grid);
        body = tmss ? "r,B_bw,B_gbw,B_pseudospin\n" : "gamma,B_bw,B_gbw,B_pseudospin\n";
        for (int i = 0; i < points; ++i)
            body += fmt(grid[i]) + "," + fmt(bw[i]) + "," + fmt(gbw[i]) + "," + fmt(ps[i]) + "\n";
    } else if (id == "1b") {
        const auto grid = linspace(0.0, 3.0, points);
        body = "alpha,P_n1,P_n2,P_n3\n";
        for (double a : grid) {
            body += fmt(a);
            for (int n = 1; n <= 3; ++n) body += "," + fmt(parity_expectation_number_state(n, a));
            body += "\n";
        }
    } else if (id == "2b") {
        const auto grid = linspace(0.0, 3.0, points);
        body = "alpha,P_cat_g2,P_cat_g5,F_rot_g2,F_rot_g5\n";
        const auto cat_parity = [](double g, double a) {
            // <e|Pi(i a)|e> = parity of D(-i a)|e>
            const FockCutoff cut = default_cutoff((g + a) * (g + a));
            const auto e = make_cat(g, CatParity::even, cut);
            const CVec w = apply_displacement(Complex(0.0, -a), e.coeffs, cut);
            double p = 0.0;
            for (int m = 0; m < cut.dim(); ++m) p += ((m % 2 == 0) ? 1.0 : -1.0) * std::norm(w(m));
            return p;
        };
        for (double a : grid) {
            body += fmt(a) + "," + fmt(cat_parity(2.0, a)) + "," + fmt(cat_parity(5.0, a)) + "," +
                    fmt(cat_rotation_fidelity(2.0, a)) + "," + fmt(cat_rotation_fidelity(5.0, a)) +
                    "\n";
        }
    } else if (id == "3a" || id == "3b") {
        const bool tmss = id == "3a";
        const StateKind st = tmss ? StateKind::tmss : StateKind::ecs;
        const Direction dir = tmss ? Direction::maximize : Direction::minimize;
        const auto grid = tmss ? linspace(0.0, 3.0, points) : linspace(0.05, 3.0, points);
        // restricted BW: same functional with alpha = beta = 0
        Functional gen = make_functional(st, Formalism::ch_q, 0);
        SweepSpec res_spec;
        res_spec.functional = [&gen](double p, std::span<const double> x) {
            const double full[8] = {0.0, 0.0, x[0], x[1], 0.0, 0.0, x[2], x[3]};
            return gen.eval(p, std::span<const double>(full, 8));
        };
        res_spec.direction = dir;
        res_spec.dim = 4;
        res_spec.box_for = [&gen](double p, std::vector<double>& lo, std::vector<double>& hi) {
            gen.box_for(p, lo, hi);
            lo.resize(4);
            hi.resize(4);
        };
        res_spec.restarts = 16;
        res_spec.seed = seed;
        std::vector<double> bw_vals;
        for (const auto& r : sweep(res_spec, grid)) bw_vals.push_back(r.score);

        const auto gbw_vals = optimize_curve(st, Formalism::ch_q, grid, dir, true);
        const auto par_vals = optimize_curve(st, Formalism::ch_parity, grid, dir, true);
        body = std::string(tmss ? "r" : "gamma") + ",Bch_bw,Bch_gbw,Bch_parity\n";
        for (int i = 0; i < points; ++i) {
            const double sign = dir == Direction::minimize ? -1.0 : 1.0;
            body += fmt(grid[i]) + "," + fmt(sign * bw_vals[i]) + "," + fmt(sign * gbw_vals[i]) +
                    "," + fmt(sign * par_vals[i]) + "\n";
        }
    } else {
        throw CLI::ValidationError("--id", "expected one of 1a, 1b, 2a, 2b, 3a, 3b");
    }
    return body;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-CHSH / Bell-CH functionals for continuous-variable states"};
    app.require_subcommand(1);

    CommonOpts opt_o, sweep_o, fig_o, ver_o, fid_o;
    double param = 0.0;
    auto* cmd_opt = app.add_subcommand("optimize", "maximize/minimize one Bell functional");
    add_common(cmd_opt, opt_o, true);
    cmd_opt->add_option("--param", param, "state parameter (r for tmss, gamma for ecs)")->required();

    double pmin = 0.0, pmax = 3.0;
    int npoints = 61;
    auto* cmd_sweep = app.add_subcommand("sweep", "optimize over a parameter grid");
    add_common(cmd_sweep, sweep_o, true);
    cmd_sweep->add_option("--param-min", pmin, "grid start");
    cmd_sweep->add_option("--param-max", pmax, "grid end");
    cmd_sweep->add_option("--points", npoints, "grid size")->check(CLI::PositiveNumber);

    std::string fig_id;
    int fig_points = 61;
    auto* cmd_fig = app.add_subcommand("figure", "emit the dataset behind one figure panel");
    cmd_fig->add_option("--id", fig_id, "1a | 1b | 2a | 2b | 3a | 3b")->required();
    cmd_fig->add_option("--points", fig_points, "grid size")->check(CLI::PositiveNumber);
    add_common(cmd_fig, fig_o, false);

    bool quiet = false;
    auto* cmd_ver = app.add_subcommand("verify", "run the acceptance checks");
    add_common(cmd_ver, ver_o, false);
    cmd_ver->add_flag("--quiet", quiet, "suppress the table on stdout");

    double fid_gamma = 1.0, fid_alpha_max = 0.5;
    int fid_points = 51;
    auto* cmd_fid = app.add_subcommand("fidelity", "cat rotation fidelity scan and K identity");
    cmd_fid->add_option("--gamma", fid_gamma, "coherent amplitude")->required();
    cmd_fid->add_option("--alpha-max", fid_alpha_max, "scan limit for alpha_i");
    cmd_fid->add_option("--points", fid_points, "grid size")->check(CLI::PositiveNumber);
    add_common(cmd_fid, fid_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_opt->parsed()) {
            const StateKind st = parse_state(opt_o.state);
            const Formalism fm = parse_formalism(opt_o.formalism);
            Functional f = make_functional(st, fm, opt_o.cutoff);
            OptimizeSpec spec;
            spec.functional = [&](std::span<const double> x) { return f.eval(param, x); };
            spec.direction = parse_direction(opt_o.direction, f.direction);
            spec.dim = f.dim;
            f.box_for(param, spec.lower, spec.upper);
            spec.restarts = opt_o.restarts;
            spec.seed = opt_o.seed;
            if (f.seeds) spec.seed_points = f.seeds(param);
            const OptimizeResult r = optimize(spec);
            const BellSettings settings = f.decode(std::span<const double>(r.point));
            const BellResult br =
                make_bell_result(r.value, settings, fm, r.iterations, r.restarts, r.converged);
            if (opt_o.format == "csv") {
                std::string body = opt_o.no_timestamp ? "" : timestamp_line();
                body += csv_header_for_settings(f.dim);
                body += csv_row(param, r);
                write_text(output_path(opt_o.out), body);
            } else {
                json j;
                j["config"] = run_config_json(opt_o, "optimize");
                j["config"]["param"] = param;
                j["results"] = json::array({result_to_json(br, r, param)});
                j["diagnostics"] = {{"direction", spec.direction == Direction::maximize ? "max"
                                                  : spec.direction == Direction::minimize
                                                      ? "min"
                                                      : "max_abs"},
                                    {"box_lower", spec.lower},
                                    {"box_upper", spec.upper}};
                j["diagnostics"]["oracle"] = oracle_diagnostics(
                    st, fm, param, settings, r.value, opt_o.cutoff > 0 ? opt_o.cutoff : 63);
                write_text(output_path(opt_o.out), j.dump(2) + "\n");
            }
        } else if (cmd_sweep->parsed()) {
            const StateKind st = parse_state(sweep_o.state);
            const Formalism fm = parse_formalism(sweep_o.formalism);
            Functional f = make_functional(st, fm, sweep_o.cutoff);
            SweepSpec spec;
            spec.functional = f.eval;
            spec.direction = parse_direction(sweep_o.direction, f.direction);
            spec.dim = f.dim;
            spec.box_for = f.box_for;
            spec.restarts = sweep_o.restarts;
            spec.seed = sweep_o.seed;
            const auto grid = linspace(pmin, pmax, npoints);
            const auto results = sweep(spec, grid);
            if (sweep_o.format == "json") {
                json j;
                j["config"] = run_config_json(sweep_o, "sweep");
                j["config"]["grid"] = grid;
                j["results"] = json::array();
                for (size_t i = 0; i < results.size(); ++i) {
                    const OptimizeResult& r = results[i];
                    const BellSettings settings = f.decode(std::span<const double>(r.point));
                    const BellResult br = make_bell_result(r.value, settings, fm, r.iterations,
                                                           r.restarts, r.converged);
                    j["results"].push_back(result_to_json(br, r, grid[i]));
                }
                j["diagnostics"] = {{"points", npoints}};
                write_text(output_path(sweep_o.out), j.dump(2) + "\n");
            } else {
                std::string body = sweep_o.no_timestamp ? "" : timestamp_line();
                body += csv_header_for_settings(f.dim);
                for (size_t i = 0; i < results.size(); ++i) body += csv_row(grid[i], results[i]);
                write_text(output_path(sweep_o.out), body);
            }
        } else if (cmd_fig->parsed()) {
            std::string body = fig_o.no_timestamp ? "" : timestamp_line();
            body += figure_curves(fig_id, fig_points, fig_o.seed);
            write_text(output_path(fig_o.out), body);
        } else if (cmd_ver->parsed()) {
            const VerifyReport rep = run_verification(ver_o.seed);
            if (!quiet) std::cout << format_report(rep);
            if (!ver_o.out.empty()) {
                json j;
                j["config"] = {{"command", "verify"}, {"seed", ver_o.seed}};
                j["results"] = json::array();
                for (const auto& c : rep.checks)
                    j["results"].push_back({{"id", c.id},
                                            {"name", c.name},
                                            {"passed", c.passed},
                                            {"detail", c.detail}});
                j["diagnostics"] = rep.diagnostics;
                write_text(output_path(ver_o.out), j.dump(2) + "\n");
            }
            return rep.all_passed() ? 0 : 1;
        } else if (cmd_fid->parsed()) {
            const double k = k_of_gamma(fid_gamma);
            const FockCutoff cut = default_cutoff(fid_gamma * fid_gamma);
            const auto e = make_cat(fid_gamma, CatParity::even, cut);
            const auto d = make_cat(fid_gamma, CatParity::odd, cut);
            const double fid_k = std::norm(matrix_element(d, parity_rotation(M_PI / 2.0, cut), e));
            if (fid_o.format == "json") {
                json j;
                j["config"] = {{"command", "fidelity"}, {"gamma", fid_gamma}};
                j["results"] = json::array();
                for (double a : linspace(0.0, fid_alpha_max, fid_points))
                    j["results"].push_back({{"alpha_i", a}, {"fidelity", cat_rotation_fidelity(fid_gamma, a)}});
                j["diagnostics"] = {{"k_gamma", k},
                                    {"rotation_fidelity", fid_k},
                                    {"k_identity_residual", std::abs(fid_k - k)}};
                write_text(output_path(fid_o.out), j.dump(2) + "\n");
            } else {
                std::string body = fid_o.no_timestamp ? "" : timestamp_line();
                body += "alpha_i,fidelity\n";
                for (double a : linspace(0.0, fid_alpha_max, fid_points))
                    body += fmt(a) + "," + fmt(cat_rotation_fidelity(fid_gamma, a)) + "\n";
                body += "# K(gamma) = " + fmt(k) + ", |<d|U(pi/2)|e>|^2 = " + fmt(fid_k) + "\n";
                write_text(output_path(fid_o.out), body);
            }
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
