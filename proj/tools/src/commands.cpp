#include "biphoton/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "biphoton/cli/report.hpp"
#include "biphoton/correlate.hpp"
#include "biphoton/entangle.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/sampler.hpp"
#include "biphoton/version.hpp"

namespace biphoton::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kDefaultSeed = 1;

double to_radians(double value, bool degrees) { return degrees ? value * kPi / 180.0 : value; }

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw std::runtime_error(std::string(what) + ": not an unsigned integer: '" + text + "'");
    }
    return value;
}

// Explicit --seed wins over the BIPHOTON_SEED environment variable.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
    if (seed_given) return seed_flag;
    if (const char* env = std::getenv("BIPHOTON_SEED")) {
        return parse_u64(env, "BIPHOTON_SEED");
    }
    return kDefaultSeed;
}

ShifterPlacement parse_placement(const std::string& name) {
    const auto arm = [](char c) {
        return c == '1' ? ShifterArm::path1 : ShifterArm::path2;
    };
    if (name.size() == 4 && name[0] == 'a' && name[2] == 'b' &&
        (name[1] == '1' || name[1] == '2') && (name[3] == '1' || name[3] == '2')) {
        return {arm(name[1]), arm(name[3])};
    }
    throw std::runtime_error("unknown placement '" + name + "'");
}

struct IoOpts {
    std::string format = "csv";
    std::string out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out, "Output file path (default: standard output)");
    }

    void finish(Table& table, RunManifest& manifest) const {
        manifest.parameters.emplace_back("format", format);
        emit(table, manifest, parse_format(format), out);
    }
};

void add_mzi(CLI::App& app) {
    auto cmd = app.add_subcommand("mzi", "Single-photon interferometer sweep over phi1");
    struct Opts {
        std::uint64_t points = 25;
        double phi2 = 0.0;
        bool degrees = false;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--points", o->points, "Grid points for phi1 over [0, 2*pi]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--phi2", o->phi2, "Fixed phase on path 2 (radians)");
    cmd->add_flag("--degrees", o->degrees, "Interpret input phases as degrees");
    o->io.attach(cmd);
    cmd->callback([o] {
        const double phi2 = to_radians(o->phi2, o->degrees);
        Table t{{"phi1_rad", "phi2_rad", "p_1d", "p_2d"}, {}};
        for (double phi1 : closed_grid(o->points, 0.0, 2.0 * kPi)) {
            const auto p = mzi_probabilities({.phi1 = phi1, .phi2 = phi2});
            t.rows.push_back({phi1, phi2, p.p_1d, p.p_2d});
        }
        RunManifest m{.command = "mzi",
                      .parameters = {{"points", std::to_string(o->points)},
                                     {"phi2_rad", format_double(phi2)}},
                      .version = kVersion,
                      .checksum = {}};
        o->io.finish(t, m);
    });
}

void add_rto(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "rto", "Two-photon interferometer at one phase setting (calibrated)");
    struct Opts {
        double phase_a = 0.0;
        double phase_b = 0.0;
        double w = 0.0;
        std::string placement = "a1b2";
        std::uint64_t trials = 0;
        std::uint64_t seed = 0;
        bool degrees = false;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--phase-a", o->phase_a, "Shifter dial at station A (radians)");
    cmd->add_option("--phase-b", o->phase_b, "Shifter dial at station B (radians)");
    cmd->add_option("--w", o->w, "Extra fixed offset added to the delta axis (radians)");
    cmd->add_option("--placement", o->placement, "Shifter arms, e.g. a1b2")
        ->check(CLI::IsMember({"a1b2", "a1b1", "a2b1", "a2b2"}));
    auto* trials_opt =
        cmd->add_option("--trials", o->trials, "Also sample this many trials")
            ->check(CLI::PositiveNumber);
    auto* seed_opt = cmd->add_option("--seed", o->seed, "Sampling seed");
    cmd->add_flag("--degrees", o->degrees, "Interpret input phases as degrees");
    o->io.attach(cmd);
    cmd->callback([o, trials_opt, seed_opt] {
        const double phase_a = to_radians(o->phase_a, o->degrees);
        const double phase_b = to_radians(o->phase_b, o->degrees);
        const double w_user = to_radians(o->w, o->degrees);
        const ShifterPlacement placement = parse_placement(o->placement);

        const double comp = offset_compensation(calibrate_offset({}, placement));
        const RtoConfig cfg{phase_a, phase_b, comp + w_user, placement};
        const auto jd = joint_probs_from_state(cfg);
        const double delta = effective_delta({phase_a, phase_b, w_user, placement});
        const auto rep = correlation_degree(jd, delta);

        Table t{{"delta_rad", "w_rad", "p11", "p22", "p12", "p21", "p_corr", "p_anti", "degree"},
                {{delta, w_user, jd.p11, jd.p22, jd.p12, jd.p21, rep.p_corr, rep.p_anti,
                  rep.degree}}};
        RunManifest m{.command = "rto",
                      .parameters = {{"phase_a_rad", format_double(phase_a)},
                                     {"phase_b_rad", format_double(phase_b)},
                                     {"w_rad", format_double(w_user)},
                                     {"placement", o->placement}},
                      .version = kVersion,
                      .checksum = {}};
        if (trials_opt->count() > 0) {
            const std::uint64_t seed = resolve_seed(seed_opt->count() > 0, o->seed);
            const auto counts = sample_outcomes(jd, o->trials, {seed});
            const auto est = estimate_correlation(counts);
            for (const char* col : {"n11", "n22", "n12", "n21", "c_hat", "std_err", "n"}) {
                t.columns.emplace_back(col);
            }
            auto& row = t.rows.front();
            row.insert(row.end(), {counts.n11, counts.n22, counts.n12, counts.n21,
                                   Cell{est.c_hat}, Cell{est.std_err}, Cell{est.n}});
            m.parameters.emplace_back("trials", std::to_string(o->trials));
            m.parameters.emplace_back("seed", std::to_string(seed));
        }
        o->io.finish(t, m);
    });
}

void add_sweep(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "sweep", "Degree-of-correlation curve over a calibrated delta grid");
    struct Opts {
        std::uint64_t points = 25;
        double w = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t seed = 0;
        bool degrees = false;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--points", o->points, "Grid points for delta over [0, 2*pi]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--w", o->w, "Fixed offset added inside the cosine (radians)");
    auto* trials_opt =
        cmd->add_option("--trials", o->trials, "Sample this many trials per grid point")
            ->check(CLI::PositiveNumber);
    auto* seed_opt = cmd->add_option("--seed", o->seed, "Sampling seed");
    cmd->add_flag("--degrees", o->degrees, "Interpret --w as degrees");
    o->io.attach(cmd);
    cmd->callback([o, trials_opt, seed_opt] {
        const double w = to_radians(o->w, o->degrees);
        const bool sampled = trials_opt->count() > 0;
        const std::uint64_t seed = sampled ? resolve_seed(seed_opt->count() > 0, o->seed) : 0;

        const auto grid = closed_grid(o->points, 0.0, 2.0 * kPi);
        const auto reports = correlation_sweep(grid, w);

        Table t{{"delta_rad", "p_corr", "p_anti", "degree"}, {}};
        if (sampled) {
            for (const char* col : {"c_hat", "std_err", "n"}) t.columns.emplace_back(col);
        }
        for (std::size_t k = 0; k < reports.size(); ++k) {
            const auto& r = reports[k];
            std::vector<Cell> row{r.delta, r.p_corr, r.p_anti, r.degree};
            if (sampled) {
                const RngSeed point_seed = mix_seed(derive_stream_seed({seed}, k));
                const auto counts =
                    sample_outcomes(joint_probs_analytic(r.delta, w), o->trials, point_seed);
                const auto est = estimate_correlation(counts);
                row.insert(row.end(), {Cell{est.c_hat}, Cell{est.std_err}, Cell{est.n}});
            }
            t.rows.push_back(std::move(row));
        }
        RunManifest m{.command = "sweep",
                      .parameters = {{"points", std::to_string(o->points)},
                                     {"w_rad", format_double(w)}},
                      .version = kVersion,
                      .checksum = {}};
        if (sampled) {
            m.parameters.emplace_back("trials", std::to_string(o->trials));
            m.parameters.emplace_back("seed", std::to_string(seed));
        }
        o->io.finish(t, m);
    });
}

void add_table1(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "table1", "Simple-superposition vs entangled-pair comparison table");
    auto o = std::make_shared<IoOpts>();
    o->attach(cmd);
    cmd->callback([o] {
        Table t{{"phase_rad", "simple_p1", "local_p1_a", "local_p1_b", "p_corr", "p_anti",
                 "paper_claim", "flag"},
                {}};
        for (const auto& row : table1_report()) {
            t.rows.push_back({row.phase, row.simple_p1, row.local_p1_a, row.local_p1_b,
                              row.p_corr, row.p_anti, row.paper_claim, row.flagged});
        }
        RunManifest m{.command = "table1", .parameters = {}, .version = kVersion, .checksum = {}};
        o->finish(t, m);
    });
}

void add_chsh(CLI::App& app) {
    auto cmd = app.add_subcommand("chsh", "CHSH S value for the cosine correlation law");
    struct Opts {
        ChshSetting s{};
        bool degrees = false;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--a", o->s.a, "Station A setting a (radians)");
    cmd->add_option("--a-prime", o->s.a_prime, "Station A setting a' (radians)");
    cmd->add_option("--b", o->s.b, "Station B setting b (radians)");
    cmd->add_option("--b-prime", o->s.b_prime, "Station B setting b' (radians)");
    cmd->add_flag("--degrees", o->degrees, "Interpret input settings as degrees");
    o->io.attach(cmd);
    cmd->callback([o] {
        const ChshSetting s{to_radians(o->s.a, o->degrees), to_radians(o->s.a_prime, o->degrees),
                            to_radians(o->s.b, o->degrees), to_radians(o->s.b_prime, o->degrees)};
        const double value = chsh_value(s);
        Table t{{"a_rad", "a_prime_rad", "b_rad", "b_prime_rad", "s_value", "violated"},
                {{s.a, s.a_prime, s.b, s.b_prime, value, value > 2.0}}};
        RunManifest m{.command = "chsh",
                      .parameters = {{"a_rad", format_double(s.a)},
                                     {"a_prime_rad", format_double(s.a_prime)},
                                     {"b_rad", format_double(s.b)},
                                     {"b_prime_rad", format_double(s.b_prime)}},
                      .version = kVersion,
                      .checksum = {}};
        o->io.finish(t, m);
    });
}

void add_whichpath(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "whichpath", "Fringe scan with a which-path detector of given overlap");
    struct Opts {
        double overlap = 0.0;
        std::uint64_t points = 25;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--overlap", o->overlap, "Pointer-state overlap |c| in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--points", o->points, "Grid points over [0, 2*pi]")
        ->check(CLI::PositiveNumber);
    o->io.attach(cmd);
    cmd->callback([o] {
        const double r = 1.0 / std::sqrt(2.0);
        const auto sys = StateVector::two_path_state("A", {r, 0.0}, {r, 0.0});
        const auto grid = closed_grid(o->points, 0.0, 2.0 * kPi);
        Table t{{"phi_rad", "p_port1"}, {}};
        for (const auto& point : fringe_scan(sys, {Complex{o->overlap, 0.0}}, grid)) {
            t.rows.push_back({point.phi, point.p_port1});
        }
        RunManifest m{.command = "whichpath",
                      .parameters = {{"overlap", format_double(o->overlap)},
                                     {"points", std::to_string(o->points)}},
                      .version = kVersion,
                      .checksum = {}};
        o->io.finish(t, m);
    });
}

void add_ledger(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "ledger", "Coherence ledger of a premeasured equal superposition");
    struct Opts {
        double overlap = 0.0;
        std::uint64_t sweep_points = 24;
        IoOpts io;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--overlap", o->overlap, "Pointer-state overlap |c| in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sweep-points", o->sweep_points,
                    "Points of the correlation sweep used for the visibility fit")
        ->check(CLI::PositiveNumber);
    o->io.attach(cmd);
    cmd->callback([o] {
        const double r = 1.0 / std::sqrt(2.0);
        const auto sys = StateVector::two_path_state("A", {r, 0.0}, {r, 0.0});
        const auto joint = premeasure(sys, {Complex{o->overlap, 0.0}}, "B");
        const auto sweep = correlation_phase_sweep(joint, o->sweep_points);
        const auto led = coherence_ledger(joint, sweep);
        Table t{{"global_purity", "local_purity_a", "local_purity_b", "local_l1_a", "local_l1_b",
                 "correlation_visibility"},
                {{led.global_purity, led.local_purity_a, led.local_purity_b, led.local_l1_a,
                  led.local_l1_b, led.correlation_visibility.value()}}};
        RunManifest m{.command = "ledger",
                      .parameters = {{"overlap", format_double(o->overlap)},
                                     {"sweep_points", std::to_string(o->sweep_points)}},
                      .version = kVersion,
                      .checksum = {}};
        o->io.finish(t, m);
    });
}

} // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Single- and two-photon interferometry simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    add_mzi(app);
    add_rto(app);
    add_sweep(app);
    add_table1(app);
    add_chsh(app);
    add_whichpath(app);
    add_ledger(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace biphoton::cli
