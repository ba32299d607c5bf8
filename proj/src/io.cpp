#include "sblab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sblab::io {

namespace {

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    if (!obj.is_object())
        throw ConfigError("config: '" + where + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("config: unknown key '" + where + "." + it.key() + "'");
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("config: missing key '" + where + "." + key + "'");
    if (!obj[key].is_number())
        throw ConfigError("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    if (v == 0.0) return "0"; // collapse signed zeros
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("atomic_write: cannot open " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown(doc, {"params", "profile", "grid", "quadrature", "packets", "survival",
                         "kernel", "mourre", "tmatrix", "groundstate"},
                   "$");

    RunConfig cfg;
    cfg.config_hash = fnv1a_hex(text);

    if (!doc.contains("params")) throw ConfigError("config: missing key '$.params'");
    const json& pj = doc["params"];
    reject_unknown(pj, {"e1", "m", "lambda_uv", "g"}, "params");
    cfg.params = ModelParams::make(require_number(pj, "e1", "params"),
                                   require_number(pj, "m", "params"),
                                   require_number(pj, "lambda_uv", "params"),
                                   require_number(pj, "g", "params"));

    if (doc.contains("profile")) {
        const auto prof = doc["profile"].get<std::string>();
        if (prof == "static")
            cfg.profile = fock::static_profile();
        else if (prof == "dynamic")
            cfg.profile = fock::dynamic_profile();
        else if (prof == "custom")
            cfg.profile.name = "custom";
        else
            throw ConfigError("config: '$.profile' must be static|dynamic|custom");
    }
    if (doc.contains("grid")) {
        const json& gj = doc["grid"];
        reject_unknown(gj, {"modes", "k_max", "n_max"}, "grid");
        cfg.profile.n_modes = static_cast<int>(number_or(gj, "modes", cfg.profile.n_modes, "grid"));
        cfg.profile.k_max = number_or(gj, "k_max", cfg.profile.k_max, "grid");
        cfg.profile.n_max = static_cast<int>(number_or(gj, "n_max", cfg.profile.n_max, "grid"));
    }
    if (doc.contains("quadrature")) {
        const json& qj = doc["quadrature"];
        reject_unknown(qj, {"abs_tol", "rel_tol", "max_subdivisions", "truncation_threshold"},
                       "quadrature");
        cfg.quad.abs_tol = number_or(qj, "abs_tol", cfg.quad.abs_tol, "quadrature");
        cfg.quad.rel_tol = number_or(qj, "rel_tol", cfg.quad.rel_tol, "quadrature");
        cfg.quad.max_subdivisions = static_cast<int>(
            number_or(qj, "max_subdivisions", cfg.quad.max_subdivisions, "quadrature"));
        cfg.quad.truncation_threshold = number_or(qj, "truncation_threshold",
                                                  cfg.quad.truncation_threshold, "quadrature");
        if (!(cfg.quad.abs_tol > 0.0) || !(cfg.quad.rel_tol > 0.0) ||
            cfg.quad.max_subdivisions < 1)
            throw ConfigError("config: quadrature tolerances must be positive");
    }
    if (doc.contains("packets")) {
        if (!doc["packets"].is_array())
            throw ConfigError("config: '$.packets' must be an array");
        int i = 0;
        for (const json& pk : doc["packets"]) {
            const std::string where = "packets[" + std::to_string(i) + "]";
            reject_unknown(pk, {"type", "support", "amplitude"}, where);
            if (pk.value("type", "bump") != std::string("bump"))
                throw ConfigError("config: '" + where + ".type' must be \"bump\"");
            if (!pk.contains("support") || !pk["support"].is_array() ||
                pk["support"].size() != 2)
                throw ConfigError("config: '" + where + ".support' must be [lo, hi]");
            PacketSpec spec{pk["support"][0].get<double>(), pk["support"][1].get<double>(),
                            number_or(pk, "amplitude", 1.0, where)};
            if (!(spec.lo > 0.0 && spec.lo < spec.hi))
                throw ConfigError("config: '" + where + ".support' must satisfy 0 < lo < hi");
            cfg.packets.push_back(spec);
            ++i;
        }
    }
    if (doc.contains("survival")) {
        const json& sj = doc["survival"];
        reject_unknown(sj, {"t_max", "n_times", "oracle", "dump_eigenvalues"}, "survival");
        cfg.survival.t_max = number_or(sj, "t_max", cfg.survival.t_max, "survival");
        cfg.survival.n_times =
            static_cast<int>(number_or(sj, "n_times", cfg.survival.n_times, "survival"));
        if (sj.contains("oracle")) cfg.survival.oracle = sj["oracle"].get<bool>();
        if (sj.contains("dump_eigenvalues"))
            cfg.survival.dump_eigenvalues = sj["dump_eigenvalues"].get<bool>();
        if (cfg.survival.n_times < 2 || !(cfg.survival.t_max > 0.0))
            throw ConfigError("config: survival grid must have t_max > 0 and n_times >= 2");
    }
    if (doc.contains("kernel")) {
        const json& kj = doc["kernel"];
        reject_unknown(kj, {"r_min", "r_max", "n_points"}, "kernel");
        cfg.kernel.r_min = number_or(kj, "r_min", cfg.kernel.r_min, "kernel");
        cfg.kernel.r_max = number_or(kj, "r_max", cfg.kernel.r_max, "kernel");
        cfg.kernel.n_points =
            static_cast<int>(number_or(kj, "n_points", cfg.kernel.n_points, "kernel"));
        if (!(0.0 < cfg.kernel.r_min && cfg.kernel.r_min < cfg.kernel.r_max) ||
            cfg.kernel.n_points < 2)
            throw ConfigError("config: kernel grid must satisfy 0 < r_min < r_max, n >= 2");
    }
    if (doc.contains("mourre")) {
        const json& mj = doc["mourre"];
        reject_unknown(mj, {"eps_sweep", "z", "probe_modes"}, "mourre");
        if (mj.contains("eps_sweep")) {
            cfg.mourre.eps_sweep.clear();
            for (const json& e : mj["eps_sweep"]) cfg.mourre.eps_sweep.push_back(e.get<double>());
        }
        if (mj.contains("z")) {
            cfg.mourre.z = mj["z"].get<double>();
            cfg.mourre.z_set = true;
        }
        cfg.mourre.probe_modes =
            static_cast<int>(number_or(mj, "probe_modes", cfg.mourre.probe_modes, "mourre"));
    }
    if (doc.contains("tmatrix")) {
        const json& tj = doc["tmatrix"];
        reject_unknown(tj, {"eta"}, "tmatrix");
        cfg.tmatrix.eta = number_or(tj, "eta", 0.0, "tmatrix");
    }
    if (doc.contains("groundstate")) {
        const json& gj = doc["groundstate"];
        reject_unknown(gj, {"g_sweep", "contour_nodes"}, "groundstate");
        if (gj.contains("g_sweep")) {
            cfg.groundstate.g_sweep.clear();
            for (const json& e : gj["g_sweep"]) cfg.groundstate.g_sweep.push_back(e.get<double>());
        }
        cfg.groundstate.contour_nodes = static_cast<int>(
            number_or(gj, "contour_nodes", cfg.groundstate.contour_nodes, "groundstate"));
    }
    if (!cfg.mourre.z_set) cfg.mourre.z = cfg.params.e1;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace sblab::io
