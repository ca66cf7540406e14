#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcf/numerics.hpp"
#include "gcf/sphere_maps.hpp"

namespace gcf {

/// Sample counts for the verification suites.
struct SampleConfig {
    int points = 100;    // per-point diagnostics (harmonic, minimal, duality)
    int fibers = 50;     // fibers for the riccati suite
    int t_nodes = 64;    // t-grid nodes per fiber
    int certify = 1000;  // dilation certification samples
    int trials = 10000;  // algebraic identity trials
};

struct RunConfig {
    MapSpec map = MapSpec::constant(Quat::i());
    std::vector<std::string> suites;  // empty = all suites
    ToleranceConfig tolerances;
    QuadratureSpec grid;
    SampleConfig samples;
    std::uint64_t seed = 20240915;
    std::string output_dir = "out";
};

/// The known suite names, in execution order.
const std::vector<std::string>& all_suites();

/// Parse a config document (JSON). Unknown suite names and invalid map
/// parameters (e.g. CapContraction eps outside (0, 1/2)) are rejected here.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Serialize; parse(emit(cfg)) reproduces cfg exactly.
std::string emit_config(const RunConfig& cfg);
void save_config(const RunConfig& cfg, const std::string& path);

}  // namespace gcf
