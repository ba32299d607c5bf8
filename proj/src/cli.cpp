#include "sblab/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "sblab/dynamics.hpp"
#include "sblab/io.hpp"
#include "sblab/levelshift.hpp"
#include "sblab/mourre.hpp"

namespace sblab::cli {

namespace {

using io::json;
using io::RunConfig;

enum class Format { csv, json_fmt };

struct Emitter {
    std::filesystem::path out_dir;
    Format format;
    std::string config_hash;
    std::string command;

    std::filesystem::path path(const std::string& stem, const std::string& ext) const {
        return out_dir / (stem + "." + ext);
    }

    void table(const std::string& stem, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::optional<double>>>& rows) const {
        if (format == Format::csv) {
            std::ostringstream os;
            os << "# config_hash=" << config_hash << "\n";
            for (std::size_t c = 0; c < columns.size(); ++c)
                os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
            for (const auto& row : rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (row[c]) os << io::format_double(*row[c]);
                    os << (c + 1 < row.size() ? "," : "\n");
                }
            }
            io::atomic_write(path(stem, "csv"), os.str());
        } else {
            json doc;
            doc["config_hash"] = config_hash;
            doc["columns"] = columns;
            json jrows = json::array();
            for (const auto& row : rows) {
                json jr = json::array();
                for (const auto& cell : row)
                    jr.push_back(cell ? json(*cell) : json(nullptr));
                jrows.push_back(jr);
            }
            doc["rows"] = jrows;
            io::atomic_write(path(stem, "json"), doc.dump(2) + "\n");
        }
    }

    void object(const std::string& stem, json doc) const {
        doc["config_hash"] = config_hash;
        io::atomic_write(path(stem, "json"), doc.dump(2) + "\n");
    }

    void manifest(const RunConfig& cfg) const {
        json doc;
        doc["command"] = command;
        doc["config_hash"] = config_hash;
        doc["profile"] = cfg.profile.name;
        doc["grid"] = {{"modes", cfg.profile.n_modes},
                       {"n_max", cfg.profile.n_max},
                       {"k_max", cfg.profile.k_max}};
        doc["params"] = {{"e1", cfg.params.e1},
                         {"m", cfg.params.m},
                         {"lambda_uv", cfg.params.lambda_uv},
                         {"g", cfg.params.g}};
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        doc["timestamp_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
        io::atomic_write(path(command + "_manifest", "json"), doc.dump(2) + "\n");
    }
};

json complex_pair(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

void cmd_resonance(const RunConfig& cfg, const Emitter& em) {
    const auto ls = levelshift::compute_level_shift(cfg.params, cfg.quad);
    const auto res = levelshift::resonance(cfg.params, ls);
    json doc;
    doc["gamma_minus0"] = complex_pair(ls.gamma_minus0);
    doc["theta0"] = ls.theta0;
    doc["gamma0"] = ls.gamma0_gs;
    doc["lambda1_tilde"] = complex_pair(res.lambda1_tilde);
    doc["lambda0"] = res.lambda0_approx;
    doc["decay_rate"] = res.decay_rate;
    em.object("resonance", std::move(doc));
}

void cmd_survival(const RunConfig& cfg, const Emitter& em) {
    const auto res = levelshift::resonance(cfg.params, cfg.quad);

    std::optional<fock::AssembledHamiltonian> ham;
    std::optional<fock::EigenDecomposition> eig;
    double t_max = cfg.survival.t_max;
    if (cfg.survival.oracle) {
        const auto grid = fock::build_grid(cfg.profile.n_modes, cfg.profile.k_max);
        ham = fock::assemble(cfg.params, grid, cfg.profile.n_max);
        eig = fock::decompose(*ham);
        const double spacing = fock::mean_level_spacing(*eig, cfg.params);
        t_max = std::min(t_max, M_PI / spacing); // half the revival time
    }
    std::vector<double> times(cfg.survival.n_times);
    for (int i = 0; i < cfg.survival.n_times; ++i)
        times[i] = t_max * i / (cfg.survival.n_times - 1);

    const auto analytic = dynamics::survival_curve_residue(times, res);
    std::optional<dynamics::SurvivalCurve> oracle;
    if (cfg.survival.oracle) oracle = fock::survival_oracle(*ham, *eig, times);
    if (cfg.survival.oracle && cfg.survival.dump_eigenvalues) {
        std::vector<std::vector<std::optional<double>>> evrows;
        for (int n = 0; n < eig->values.size(); ++n)
            evrows.push_back({static_cast<double>(n), eig->values(n)});
        em.table("eigenvalues", {"index", "energy"}, evrows);
    }

    std::vector<std::vector<std::optional<double>>> rows;
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::optional<double>> row{times[i], analytic.amplitudes[i].real(),
                                               analytic.amplitudes[i].imag(),
                                               std::nullopt, std::nullopt, std::nullopt};
        if (oracle) {
            row[3] = oracle->amplitudes[i].real();
            row[4] = oracle->amplitudes[i].imag();
            row[5] = std::abs(oracle->amplitudes[i] - analytic.amplitudes[i]);
        }
        rows.push_back(std::move(row));
    }
    em.table("survival", {"t", "analytic_re", "analytic_im", "oracle_re", "oracle_im", "abs_err"},
             rows);
}

void cmd_tmatrix(const RunConfig& cfg, const Emitter& em) {
    if (cfg.packets.empty())
        throw ConfigError("tmatrix: config must define at least one packet");
    const auto ls = levelshift::compute_level_shift(cfg.params, cfg.quad);
    const double lambda0 = cfg.params.e0 - cfg.params.g * cfg.params.g * ls.gamma0_gs;

    const auto grid = fock::build_grid(cfg.profile.n_modes, cfg.profile.k_max);
    const auto ham = fock::assemble(cfg.params, grid, cfg.profile.n_max);
    const auto eig = fock::decompose(ham);
    const auto [lambda0_num, psi0] = fock::ground_state(ham);
    const double spacing = fock::mean_level_spacing(eig, cfg.params);
    const double eta = cfg.tmatrix.eta > 0.0 ? cfg.tmatrix.eta : 5.0 * spacing;

    json entries = json::array();
    for (const auto& spec : cfg.packets) {
        const auto packet = spec.build();
        const auto tp = scattering::transition_lorentzian(packet, packet, ls, lambda0, 1.0,
                                                          cfg.params, cfg.quad);
        const auto to = fock::tmatrix_oracle(ham, eig, psi0, packet, packet, eta,
                                             lambda0_num, cfg.quad);
        json e;
        e["support"] = {spec.lo, spec.hi};
        e["t_lorentzian"] = complex_pair(tp);
        e["t_oracle"] = complex_pair(to);
        e["abs_t_lorentzian"] = std::abs(tp);
        e["abs_t_oracle"] = std::abs(to);
        e["rel_diff"] = std::abs(tp) > 0.0 ? std::abs(to - tp) / std::abs(tp) : 0.0;
        entries.push_back(std::move(e));
    }
    json doc;
    doc["eta"] = eta;
    doc["level_spacing"] = spacing;
    doc["lambda0_num"] = lambda0_num;
    doc["lambda0_analytic"] = lambda0;
    doc["packets"] = std::move(entries);
    em.object("tmatrix", std::move(doc));
}

void cmd_kernel(const RunConfig& cfg, const Emitter& em) {
    const auto ls = levelshift::compute_level_shift(cfg.params, cfg.quad);
    const double lambda0 = cfg.params.e0 - cfg.params.g * cfg.params.g * ls.gamma0_gs;
    std::vector<std::vector<std::optional<double>>> rows;
    for (int i = 0; i < cfg.kernel.n_points; ++i) {
        const double r = cfg.kernel.r_min +
                         (cfg.kernel.r_max - cfg.kernel.r_min) * i / (cfg.kernel.n_points - 1);
        const auto k = scattering::onshell_kernel(r, ls, lambda0, 1.0, cfg.params);
        rows.push_back({r, k.real(), k.imag(), std::abs(k)});
    }
    em.table("kernel", {"r", "re", "im", "abs"}, rows);
}

void cmd_groundstate(const RunConfig& cfg, const Emitter& em) {
    const double gamma0 = levelshift::gamma0_groundshift(cfg.params, cfg.quad);
    const auto grid = fock::build_grid(cfg.profile.n_modes, cfg.profile.k_max);
    std::vector<std::vector<std::optional<double>>> rows;
    for (double g : cfg.groundstate.g_sweep) {
        ModelParams p = cfg.params;
        p.g = g;
        const auto ham = fock::assemble(p, grid, cfg.profile.n_max);
        const auto [lam, psi] = fock::ground_state(ham);
        const double predicted = -g * g * gamma0;
        rows.push_back({g, lam, predicted, std::abs(lam - predicted)});
    }
    em.table("groundstate", {"g", "lambda0_num", "minus_g2_gamma0", "residual"}, rows);
}

void cmd_mourre(const RunConfig& cfg, const Emitter& em) {
    const auto grid = fock::build_grid(cfg.profile.n_modes, cfg.profile.k_max);
    const auto report = mourre::mourre_constant(cfg.params, grid, cfg.profile.n_max);

    const auto probe_grid = fock::build_grid(cfg.mourre.probe_modes, cfg.profile.k_max);
    const auto probe =
        mourre::weighted_resolvent_probe(cfg.params, probe_grid, cfg.mourre.z,
                                         cfg.mourre.eps_sweep);

    json doc;
    doc["alpha_num"] = report.alpha_num;
    doc["coupling_norm"] = report.coupling_norm;
    doc["reference_bound"] = report.reference_bound;
    doc["g"] = report.g;
    doc["window"] = {report.window_lo, report.window_hi};
    doc["window_dim"] = report.window_dim;
    doc["grid"] = {{"modes", report.n_modes}, {"n_max", report.n_max}, {"k_max", report.k_max}};
    doc["probe_spacing"] = probe.spacing;
    doc["probe_z"] = probe.z;
    doc["probe_modes"] = cfg.mourre.probe_modes;
    em.object("mourre", std::move(doc));

    std::vector<std::vector<std::optional<double>>> rows;
    for (const auto& pt : probe.points) rows.push_back({pt.eps, pt.weighted, pt.unweighted});
    em.table("mourre_sweep", {"eps", "weighted_norm", "unweighted_norm"}, rows);
}

void emit_error(const std::string& type, const std::string& what) {
    json doc;
    doc["error"] = {{"type", type}, {"message", what}};
    std::cerr << doc.dump() << "\n";
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"spin-boson resonance, scattering and oracle toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string profile_override;
    std::string format_name = "csv";

    const std::vector<std::string> commands = {"resonance", "survival", "tmatrix",
                                               "kernel", "groundstate", "mourre"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--profile", profile_override, "experiment profile")
            ->check(CLI::IsMember({"static", "dynamic"}));
        sub->add_option("--format", format_name, "table format")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        emit_error("config", e.what());
        return 2;
    }

    if (const char* threads = std::getenv("SBLAB_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    try {
        cfg = io::load_config(config_path);
    } catch (const Error& e) { // everything at load time is validation
        emit_error("config", e.what());
        return 2;
    }
    try {
        if (profile_override == "static") cfg.profile = fock::static_profile();
        if (profile_override == "dynamic") cfg.profile = fock::dynamic_profile();
        if (!cfg.mourre.z_set) cfg.mourre.z = cfg.params.e1;

        Emitter em{out_dir, format_name == "csv" ? Format::csv : Format::json_fmt,
                   cfg.config_hash, command};
        std::filesystem::create_directories(em.out_dir);

        if (command == "resonance") cmd_resonance(cfg, em);
        else if (command == "survival") cmd_survival(cfg, em);
        else if (command == "tmatrix") cmd_tmatrix(cfg, em);
        else if (command == "kernel") cmd_kernel(cfg, em);
        else if (command == "groundstate") cmd_groundstate(cfg, em);
        else if (command == "mourre") cmd_mourre(cfg, em);
        em.manifest(cfg);
    } catch (const ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("numeric", e.what());
        return 3;
    }
    return 0;
}

} // namespace sblab::cli
