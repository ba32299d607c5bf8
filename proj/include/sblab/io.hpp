#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "sblab/fock.hpp"
#include "sblab/model.hpp"
#include "sblab/quadrature.hpp"
#include "sblab/scattering.hpp"

namespace sblab::io {

using json = nlohmann::json;

struct PacketSpec {
    double lo, hi, amplitude;
    scattering::WavePacket build() const { return scattering::bump_packet(lo, hi, amplitude); }
};

struct SurvivalOptions {
    double t_max = 30.0;
    int n_times = 121;
    bool oracle = false;
    bool dump_eigenvalues = false;
};

struct KernelOptions {
    double r_min = 1.0;
    double r_max = 3.5;
    int n_points = 251;
};

struct MourreOptions {
    std::vector<double> eps_sweep{0.2, 0.1, 0.05};
    double z;      // defaults to e1
    int probe_modes = 400; // denser grid so the eps floor clears the sweep
    bool z_set = false;
};

struct TmatrixOptions {
    double eta = 0.0; // 0 means the 5 x spacing default
};

struct GroundstateOptions {
    std::vector<double> g_sweep{0.02, 0.04, 0.08};
    int contour_nodes = 64;
};

/// Parsed and validated run configuration. Unknown keys anywhere in the
/// document are rejected with a pointer to the offending key.
struct RunConfig {
    ModelParams params = ModelParams::reference();
    fock::ExperimentProfile profile = fock::dynamic_profile();
    quadrature::QuadratureConfig quad;
    std::vector<PacketSpec> packets;
    SurvivalOptions survival;
    KernelOptions kernel;
    MourreOptions mourre;
    TmatrixOptions tmatrix;
    GroundstateOptions groundstate;
    std::string config_hash; // FNV-1a of the raw config bytes
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Fixed shortest-round-trip formatting for payload numbers.
std::string format_double(double v);

} // namespace sblab::io
