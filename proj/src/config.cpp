#include "gcf/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gcf {

namespace {

using nlohmann::json;

json quat_to_json(const Quat& q) { return json::array({q.x, q.y, q.z}); }

Quat imag_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument(std::string(what) + ": expected [x, y, z]");
    return Quat::imag(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json map_to_json(const MapSpec& g) {
    json j;
    j["name"] = g.name;
    switch (g.kind) {
        case MapSpec::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = quat_to_json(g.q);
            break;
        case MapSpec::Kind::CapContraction:
            j["kind"] = "cap_contraction";
            j["axis"] = quat_to_json(g.q);
            j["eps"] = g.eps;
            break;
        case MapSpec::Kind::PreRotated:
            j["kind"] = "pre_rotated";
            j["rotation"] = g.rot;
            j["inner"] = map_to_json(*g.inner);
            break;
    }
    return j;
}

MapSpec map_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.value("name", kind);
    if (kind == "constant")
        return MapSpec::constant(imag_from_json(j.at("value"), "map.value").normalized(), name);
    if (kind == "cap_contraction")
        return MapSpec::cap_contraction(imag_from_json(j.at("axis"), "map.axis").normalized(),
                                        j.at("eps").get<double>(), name);
    if (kind == "pre_rotated") {
        const auto rot = j.at("rotation").get<std::array<double, 9>>();
        return MapSpec::pre_rotated(rot, map_from_json(j.at("inner")), name);
    }
    throw std::invalid_argument("map.kind: unknown kind '" + kind + "'");
}

}  // namespace

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names = {"algebra", "duality",  "riccati",
                                                   "harmonic", "minimal", "functionals"};
    return names;
}

RunConfig parse_config(const std::string& text) {
    const json j = json::parse(text);
    RunConfig cfg;
    if (j.contains("map")) cfg.map = map_from_json(j["map"]);
    if (j.contains("suites")) {
        cfg.suites = j["suites"].get<std::vector<std::string>>();
        for (const auto& s : cfg.suites) {
            bool known = false;
            for (const auto& k : all_suites()) known = known || k == s;
            if (!known) throw std::invalid_argument("suites: unknown suite '" + s + "'");
        }
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        cfg.tolerances.solver_tol = t.value("solver_tol", cfg.tolerances.solver_tol);
        cfg.tolerances.solver_max_iter = t.value("solver_max_iter", cfg.tolerances.solver_max_iter);
        cfg.tolerances.fd_first = t.value("fd_first", cfg.tolerances.fd_first);
        cfg.tolerances.fd_second = t.value("fd_second", cfg.tolerances.fd_second);
        cfg.tolerances.margin_decreasing =
            t.value("margin_decreasing", cfg.tolerances.margin_decreasing);
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        cfg.grid.n_theta = g.value("n_theta", cfg.grid.n_theta);
        cfg.grid.n_phi1 = g.value("n_phi1", cfg.grid.n_phi1);
        cfg.grid.n_phi2 = g.value("n_phi2", cfg.grid.n_phi2);
    }
    if (j.contains("samples")) {
        const json& s = j["samples"];
        cfg.samples.points = s.value("points", cfg.samples.points);
        cfg.samples.fibers = s.value("fibers", cfg.samples.fibers);
        cfg.samples.t_nodes = s.value("t_nodes", cfg.samples.t_nodes);
        cfg.samples.certify = s.value("certify", cfg.samples.certify);
        cfg.samples.trials = s.value("trials", cfg.samples.trials);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
    json j;
    j["map"] = map_to_json(cfg.map);
    j["suites"] = cfg.suites;
    j["tolerances"] = {{"solver_tol", cfg.tolerances.solver_tol},
                       {"solver_max_iter", cfg.tolerances.solver_max_iter},
                       {"fd_first", cfg.tolerances.fd_first},
                       {"fd_second", cfg.tolerances.fd_second},
                       {"margin_decreasing", cfg.tolerances.margin_decreasing}};
    j["grid"] = {{"n_theta", cfg.grid.n_theta},
                 {"n_phi1", cfg.grid.n_phi1},
                 {"n_phi2", cfg.grid.n_phi2}};
    j["samples"] = {{"points", cfg.samples.points},
                    {"fibers", cfg.samples.fibers},
                    {"t_nodes", cfg.samples.t_nodes},
                    {"certify", cfg.samples.certify},
                    {"trials", cfg.samples.trials}};
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot open '" + path + "'");
    out << emit_config(cfg);
}

}  // namespace gcf
