// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "xdiff/entropy.hpp"
#include "xdiff/experiments.hpp"
#include "xdiff/gronwall.hpp"
#include "xdiff/reference.hpp"
#include "xdiff/rng.hpp"
#include "xdiff/solver.hpp"

using namespace xdiff;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void guarded(int id, const std::string& name, const std::function<void(int, const std::string&)>& body) {
    try {
        body(id, name);
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

State random_state(Rng& rng, const Grid1D& grid, double hi, double zero_prob) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = rng.next_unit() < zero_prob ? 0.0 : rng.uniform(0.0, hi);
        g[i] = rng.next_unit() < zero_prob ? 0.0 : rng.uniform(0.0, hi);
    }
    return make_state(grid, std::move(f), std::move(g));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria ----

void criterion_parameter_gate(int id, const std::string& name) {
    Rng rng(101);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = rng.uniform(-0.5, 2.5);
        const double b = rng.uniform(-0.5, 2.5);
        const double c = rng.uniform(-0.5, 2.5);
        const double d = rng.uniform(-0.5, 2.5);
        const bool expect = a > 0 && b > 0 && c > 0 && d > 0 && a * d > b * c;
        bool got = true;
        std::string reason;
        try {
            ModelParams p(a, b, c, d);
        } catch (const InvalidParameters& e) {
            got = false;
            reason = e.reason();
        }
        if (got != expect) {
            ++disagreements;
        } else if (!got) {
            const std::string want =
                (a > 0 && b > 0 && c > 0 && d > 0) ? "ad<=bc" : "nonpositive";
            if (reason != want) ++disagreements;
        }
    }
    report(id, name, disagreements == 0,
           "10^4 random quadruples vs direct re-check, disagreements = " +
               std::to_string(disagreements));
}

struct SolverBatteryResult {
    double worst_drift = 0.0;
    double min_cell = 0.0;
    double degenerate_f_max = 0.0;
    double degenerate_g_max = 0.0;
};

SolverBatteryResult solver_battery() {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, 128);
    SolverConfig cfg;
    cfg.dt = 5e-4;
    // random states carry vacuum cells under cross-pressure; the donor-cell
    // mobility is the positivity-robust option there
    cfg.mobility_average = MobilityAverage::Upwind;
    Rng rng(202);

    SolverBatteryResult out;
    out.min_cell = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        State s = random_state(rng, grid, 2.0, 0.15);
        const Masses m0 = mass(s);
        for (int k = 0; k < 200; ++k) {
            s = step(p, s, cfg).state;
            for (std::size_t i = 0; i < s.f.size(); ++i) {
                out.min_cell = std::min({out.min_cell, s.f[i], s.g[i]});
            }
        }
        const Masses m1 = mass(s);
        out.worst_drift = std::max(out.worst_drift,
                                   std::abs(m1.f - m0.f) / std::max(1.0, std::abs(m0.f)));
        out.worst_drift = std::max(out.worst_drift,
                                   std::abs(m1.g - m0.g) / std::max(1.0, std::abs(m0.g)));
    }

    { // degenerate components stay identically zero
        State s = make_state(grid, std::vector<double>(128, 0.0),
                             random_state(rng, grid, 2.0, 0.0).g);
        for (int k = 0; k < 200; ++k) {
            s = step(p, s, cfg).state;
            for (double v : s.f) out.degenerate_f_max = std::max(out.degenerate_f_max, std::abs(v));
        }
        State t = make_state(grid, random_state(rng, grid, 2.0, 0.0).f,
                             std::vector<double>(128, 0.0));
        for (int k = 0; k < 200; ++k) {
            t = step(p, t, cfg).state;
            for (double v : t.g) out.degenerate_g_max = std::max(out.degenerate_g_max, std::abs(v));
        }
    }
    return out;
}

void criterion_entropy_pointwise(int id, const std::string& name) {
    Rng rng(303);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform(0.0, 10.0);
        const double y = rng.uniform(1e-6, 10.0);
        const auto qb = pointwise_quadratic_bound(x, y);
        worst = std::min(worst, qb.lhs - qb.rhs);
    }
    report(id, name, worst >= -1e-12, "10^5 samples, worst slack = " + fmt(worst));
}

struct PairBatteryResult {
    double worst_quad = std::numeric_limits<double>::infinity();
    double worst_eta_gap = -std::numeric_limits<double>::infinity();
    double worst_eta_mono = std::numeric_limits<double>::infinity();
    double worst_ti = std::numeric_limits<double>::infinity();
    double worst_tii = std::numeric_limits<double>::infinity();
};

PairBatteryResult pair_battery() {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, 64);
    Rng rng(404);
    PairBatteryResult out;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(grid.n_cells());
        std::vector<double> f1(n), g1(n), f2(n), g2(n);
        for (std::size_t i = 0; i < n; ++i) {
            f1[i] = rng.next_unit() < 0.1 ? 0.0 : rng.uniform(0.0, 3.0);
            g1[i] = rng.next_unit() < 0.1 ? 0.0 : rng.uniform(0.0, 3.0);
            f2[i] = rng.uniform(0.1, 3.0);
            g2[i] = rng.uniform(0.1, 3.0);
        }
        const State u1 = make_state(grid, std::move(f1), std::move(g1));
        const State u2 = make_state(grid, std::move(f2), std::move(g2));

        const double H = relative_entropy(p, u1, u2);
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sup = std::max({sup, u1.f[i], u1.g[i], u2.f[i], u2.g[i]});
        }
        out.worst_quad = std::min(out.worst_quad,
                                  H - weighted_l2_sq(p, u1, u2) / (2.0 * sup));

        const double h2 = relative_entropy_regularized(p, u1, u2, 1e-2);
        const double h4 = relative_entropy_regularized(p, u1, u2, 1e-4);
        const double h6 = relative_entropy_regularized(p, u1, u2, 1e-6);
        out.worst_eta_mono = std::min({out.worst_eta_mono, h2 - h4, h4 - h6, h6 - H});
        out.worst_eta_gap = std::max(out.worst_eta_gap, std::abs(h6 - H) / (1.0 + H));

        const auto dec = production_decomposition(p, u1, u2);
        out.worst_ti = std::min(out.worst_ti, dec.bound_I - dec.T2_I);
        out.worst_tii = std::min(out.worst_tii, dec.bound_II - dec.T2_II / p.a());
    }
    return out;
}

void criterion_pme(int id, const std::string& name) {
    const auto cfg = parse_config_text("preset = pme\nx_lo = -2\nx_hi = 2\nn_cells = 128\n"
                                       "levels = 3\ndt = 4e-3\nt_end = 0.25\n"
                                       "barenblatt_t0 = 0.1\nbarenblatt_mass = 1\n");
    const auto rep = pme_validation(cfg);
    std::string detail;
    for (const auto& c : rep.checks) {
        detail += c.name + " = " + fmt(c.value) + (c.pass ? " ok; " : " FAIL; ");
    }
    report(id, name, rep.pass, detail);
}

void criterion_manufactured(int id, const std::string& name) {
    const auto cfg = parse_config_text("kind = convergence\nn_cells = 32\nlevels = 3\n"
                                       "dt = 4e-3\nt_end = 0.1\n");
    const auto rep = convergence_experiment(cfg);
    std::string detail;
    for (const auto& c : rep.checks) {
        detail += c.name + " = " + fmt(c.value) + (c.pass ? " ok; " : " FAIL; ");
    }
    report(id, name, rep.pass, detail);
}

void criterion_weak_strong(int id, const std::string& name) {
    const auto cfg = parse_config_text("kind = weak_strong\nn_cells = 64\nlevels = 3\n"
                                       "ref_factor = 16\ndt = 2e-3\nt_end = 0.1\n"
                                       "perturb_amp = 0\n");
    const auto rep = weak_strong_experiment(cfg);
    std::string detail = "H(t_end) per level:";
    for (const auto& [tag, series] : rep.aux_series) {
        detail += " " + tag + " = " + fmt(series.back().H) + ";";
    }
    for (const auto& c : rep.checks) {
        if (!c.pass) detail += " " + c.name + " FAIL;";
    }
    report(id, name, rep.pass, detail);
}

void criterion_gronwall(int id, const std::string& name) {
    bool pass = true;
    std::string detail;

    const auto cfg = parse_config_text("kind = gronwall\nn_cells = 64\ndt = 1e-3\n"
                                       "t_end = 0.1\nperturb_amp = 0.1\n");
    const auto rep = gronwall_experiment(cfg);
    pass = pass && rep.pass;
    const auto fit = gronwall_fit(rep.series);
    detail += "perturbed run: C_fit = " + fmt(fit.C_fit) +
              ", residual_max = " + fmt(fit.residual_max) +
              (fit.exp_bound_ok ? ", exp bound ok; " : ", exp bound FAIL; ");
    pass = pass && std::isfinite(fit.C_fit) && fit.residual_max <= 0.0 && fit.exp_bound_ok;

    std::vector<EntropyRecord> synth;
    for (int k = 0; k <= 1000; ++k) {
        EntropyRecord r;
        r.time = 1e-3 * k;
        r.H = 0.7 * std::exp(r.time);
        synth.push_back(r);
    }
    const auto sfit = gronwall_fit(synth);
    detail += "synthetic e^t: C_fit = " + fmt(sfit.C_fit);
    pass = pass && std::abs(sfit.C_fit - 1.0) <= 0.02;
    report(id, name, pass, detail);
}

void criterion_chain_rule(int id, const std::string& name) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, 64);
    const double pi = 3.14159265358979323846;
    const State s0 = sample_state(
        grid, [&](double x) { return 0.6 + 0.4 * std::cos(pi * x); },
        [&](double x) { return 0.8 + 0.2 * std::cos(2.0 * pi * x); });

    auto collect = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        std::vector<State> series{s0};
        run(p, s0, cfg, 0.1, [&](const State& s) { series.push_back(s); });
        return series;
    };
    const auto coarse = collect(5e-3);
    const auto fine = collect(2.5e-3);

    const double rx_c = chain_rule_residual(coarse, ChainRulePhi::XLogXEta, 1e-2);
    const double rx_f = chain_rule_residual(fine, ChainRulePhi::XLogXEta, 1e-2);
    const double rs_c = chain_rule_residual(coarse, ChainRulePhi::Square);
    const double rs_f = chain_rule_residual(fine, ChainRulePhi::Square);

    const bool xlog_ok = rx_c / rx_f >= 1.8;
    // the midpoint bracket is exact for quadratics, so the square residual
    // sits at rounding level; a ratio is only meaningful above that floor
    const bool square_ok = (rs_c <= 1e-12 && rs_f <= 1e-12) || rs_c / rs_f >= 1.8;
    report(id, name, xlog_ok && square_ok,
           "xlogx ratio = " + fmt(rx_c / rx_f) + " (residuals " + fmt(rx_c) + " -> " + fmt(rx_f) +
               "); square residuals " + fmt(rs_c) + ", " + fmt(rs_f));
}

void criterion_cli_determinism(int id, const std::string& name) {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "xdiff_acceptance_cli";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const fs::path cfgp = tmp / "exp.toml";
    std::ofstream(cfgp) << "kind = gronwall\nn_cells = 64\ndt = 1e-3\nt_end = 0.05\nseed = 42\n";

    const std::string cli = XDIFF_CLI_PATH;
    auto invoke = [&](const std::string& config, const fs::path& out) {
        const std::string cmd = "\"" + cli + "\" run --config \"" + config + "\" --out \"" +
                                out.string() + "\" > \"" + (out.string() + ".log") + "\" 2>&1";
        return std::system(cmd.c_str());
    };

    const fs::path out1 = tmp / "a", out2 = tmp / "b", out3 = tmp / "c";
    const int rc1 = invoke(cfgp.string(), out1);
    const int rc2 = invoke(cfgp.string(), out2);
    bool pass = rc1 == 0 && rc2 == 0;
    std::string detail;
    if (!pass) {
        detail = "CLI exited nonzero";
    } else {
        const std::string s1 = slurp(out1 / "series.csv");
        pass = !s1.empty() && s1 == slurp(out2 / "series.csv");
        detail = pass ? "repeat run byte-identical" : "series.csv differs between identical runs";
        if (pass) {
            const int rc3 = invoke((out1 / "resolved.toml").string(), out3);
            pass = rc3 == 0 && slurp(out3 / "series.csv") == s1;
            detail += pass ? "; resolved-config round-trip byte-identical"
                           : "; resolved-config round-trip FAILED";
        }
    }
    report(id, name, pass, detail);
    fs::remove_all(tmp);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    guarded(1, "parameter gate (positivity and ad > bc)", criterion_parameter_gate);

    SolverBatteryResult battery;
    guarded(2, "mass conservation, 100 states x 200 steps", [&](int id, const std::string& n) {
        battery = solver_battery();
        report(id, n, battery.worst_drift <= 1e-12,
               "worst relative drift = " + fmt(battery.worst_drift));
    });
    guarded(3, "positivity and degeneracy", [&](int id, const std::string& n) {
        const bool pass = battery.min_cell >= 0.0 && battery.degenerate_f_max == 0.0 &&
                          battery.degenerate_g_max == 0.0;
        report(id, n, pass,
               "min cell = " + fmt(battery.min_cell) + ", max |f| with f(0)=0: " +
                   fmt(battery.degenerate_f_max) + ", max |g| with g(0)=0: " +
                   fmt(battery.degenerate_g_max));
    });

    guarded(4, "pointwise entropy inequality", criterion_entropy_pointwise);

    PairBatteryResult pairs;
    guarded(5, "quadratic control of H", [&](int id, const std::string& n) {
        pairs = pair_battery();
        report(id, n, pairs.worst_quad >= -1e-10,
               "10^3 state pairs, worst slack = " + fmt(pairs.worst_quad));
    });
    guarded(6, "regularization limit of H_eta", [&](int id, const std::string& n) {
        const bool pass = pairs.worst_eta_mono >= -1e-12 && pairs.worst_eta_gap <= 1e-4;
        report(id, n, pass,
               "worst |H_eta - H|/(1+H) = " + fmt(pairs.worst_eta_gap) +
                   ", worst monotonicity slack = " + fmt(pairs.worst_eta_mono));
    });
    guarded(7, "production decomposition bounds", [&](int id, const std::string& n) {
        const bool pass = pairs.worst_ti >= -1e-10 && pairs.worst_tii >= -1e-10;
        report(id, n, pass,
               "worst T2_I slack = " + fmt(pairs.worst_ti) + ", worst T2_II slack = " +
                   fmt(pairs.worst_tii));
    });

    guarded(8, "porous-medium validation vs closed form", criterion_pme);
    guarded(9, "manufactured convergence orders", criterion_manufactured);
    guarded(10, "weak-strong uniqueness surrogate", criterion_weak_strong);
    guarded(11, "integral inequality fit", criterion_gronwall);
    guarded(12, "discrete chain-rule residual order", criterion_chain_rule);
    guarded(13, "determinism and provenance via the CLI", criterion_cli_determinism);

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
