// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace latham::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': expected a number, got '" + v + "'");
    }
}

Index to_index(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    const auto i = static_cast<Index>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config: key '" + key + "': expected an integer, got '" + v + "'");
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<Index> to_index_list(const std::string& key, const std::string& v) {
    std::vector<Index> out;
    for (const auto& tok : split_ws(v)) out.push_back(to_index(key, tok));
    if (out.empty()) throw ConfigError("config: key '" + key + "': empty list");
    return out;
}

}  // namespace

LatticeSystem ExperimentConfig::system(const std::array<Index, 3>& L_override) const {
    LatticeSystem sys;
    sys.b = b;
    sys.L = L_override;
    sys.n = n;
    sys.nbar = nbar;
    sys.quad_M = quad_M;
    sys.nuclei = nuclei;
    sys.basis = basis;
    sys.eps_ov = eps_ov;
    return sys;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    ExperimentConfig cfg;
    cfg.nuclei.nuclei.clear();
    std::map<std::string, std::string> kv;
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key or value");

        if (key == "nucleus") {
            const auto f = split_ws(value);
            if (f.size() != 4)
                throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": nucleus wants 'x y z Z'");
            Nucleus nuc;
            for (int i = 0; i < 3; ++i) nuc.position[static_cast<size_t>(i)] = to_double(key, f[static_cast<size_t>(i)]);
            nuc.charge = to_double(key, f[3]);
            cfg.nuclei.nuclei.push_back(nuc);
            cfg.resolved.emplace_back(key, value);
            continue;
        }
        if (key == "basis") {
            const auto f = split_ws(value);
            if (f.size() != 4 && f.size() != 7)
                throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": basis wants 'x y z alpha [dx dy dz]'");
            GtoFunction fn;
            for (int i = 0; i < 3; ++i) fn.center[static_cast<size_t>(i)] = to_double(key, f[static_cast<size_t>(i)]);
            fn.exponent = to_double(key, f[3]);
            if (f.size() == 7)
                for (int i = 0; i < 3; ++i)
                    fn.degrees[static_cast<size_t>(i)] = static_cast<int>(to_index(key, f[static_cast<size_t>(4 + i)]));
            cfg.basis.functions.push_back(fn);
            cfg.resolved.emplace_back(key, value);
            continue;
        }
        if (kv.count(key))
            throw ConfigError("config: line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        kv[key] = value;
    }

    auto take = [&](const char* key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end()) return "";
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (auto v = take("cell.b"); !v.empty()) cfg.b = to_double("cell.b", v);
    if (auto v = take("grid.n"); !v.empty()) cfg.n = to_index("grid.n", v);
    if (auto v = take("grid.nbar"); !v.empty()) cfg.nbar = to_index("grid.nbar", v);
    if (auto v = take("grid.n0"); !v.empty()) cfg.n0 = to_index("grid.n0", v);
    if (auto v = take("quad.M"); !v.empty()) cfg.quad_M = to_index("quad.M", v);
    if (auto v = take("lattice.L"); !v.empty()) {
        const auto f = to_index_list("lattice.L", v);
        if (f.size() != 3) throw ConfigError("config: lattice.L wants three integers");
        cfg.L = {f[0], f[1], f[2]};
    }
    if (auto v = take("boundary"); !v.empty()) {
        if (v == "box") cfg.boundary = Boundary::Box;
        else if (v == "periodic") cfg.boundary = Boundary::Periodic;
        else if (v == "both") cfg.boundary = Boundary::Both;
        else throw ConfigError("config: boundary must be box, periodic or both");
    }
    if (auto v = take("eps_ov"); !v.empty()) cfg.eps_ov = to_double("eps_ov", v);
    if (auto v = take("n_occ"); !v.empty()) cfg.n_occ = to_index("n_occ", v);
    bool threads_from_config = false;
    if (auto v = take("threads"); !v.empty()) {
        cfg.threads = to_index("threads", v);
        threads_from_config = true;
    }
    if (auto v = take("caps.dense"); !v.empty()) cfg.cap_dense = to_index("caps.dense", v);
    if (auto v = take("caps.materialize"); !v.empty())
        cfg.cap_materialize = to_index("caps.materialize", v);
    if (auto v = take("caps.acknowledge"); !v.empty())
        cfg.cap_acknowledge = to_bool("caps.acknowledge", v);
    if (auto v = take("solve.eigenvectors"); !v.empty())
        cfg.solve_eigenvectors = to_bool("solve.eigenvectors", v);
    if (auto v = take("bench.L_list"); !v.empty()) cfg.bench_L = to_index_list("bench.L_list", v);
    if (auto v = take("energy.L_list"); !v.empty())
        cfg.energy_L = to_index_list("energy.L_list", v);

    if (!kv.empty()) throw ConfigError("config: unknown key '" + kv.begin()->first + "'");

    // environment override for thread count; the config key wins
    if (cfg.threads <= 0) throw ConfigError("config: threads must be positive");
    if (const char* env = std::getenv("LATHAM_THREADS"); env && !threads_from_config) {
        try {
            cfg.threads = std::max<Index>(1, std::stol(env));
        } catch (const std::exception&) {
            throw ConfigError("config: LATHAM_THREADS is not an integer");
        }
    }

    // field-level validation before any computation
    if (cfg.b <= 0.0) throw ConfigError("config: cell.b must be positive");
    if (cfg.n < 1 || cfg.nbar < 1) throw ConfigError("config: grid sizes must be >= 1");
    if (2 * cfg.n0 < cfg.n) throw ConfigError("config: grid.n0 must be at least n/2");
    if (cfg.quad_M < 1) throw ConfigError("config: quad.M must be >= 1");
    for (Index l : cfg.L)
        if (l < 1) throw ConfigError("config: lattice.L entries must be >= 1");
    if (cfg.nuclei.nuclei.empty()) throw ConfigError("config: at least one nucleus line required");
    if (cfg.basis.functions.empty()) throw ConfigError("config: at least one basis line required");
    if (cfg.eps_ov <= 0.0) throw ConfigError("config: eps_ov must be positive");
    if (cfg.n_occ < 1 || cfg.n_occ > cfg.basis.m0())
        throw ConfigError("config: n_occ must be in [1, m0]");
    cfg.nuclei.cell_size = cfg.b;
    try {
        cfg.nuclei.validate();
        cfg.basis.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if ((cfg.cap_dense != kDefaultDenseCap || cfg.cap_materialize != kDefaultMaterializeCap) &&
        (cfg.cap_dense > kDefaultDenseCap || cfg.cap_materialize > kDefaultMaterializeCap) &&
        !cfg.cap_acknowledge)
        throw ConfigError("config: raising caps.dense or caps.materialize requires "
                          "caps.acknowledge = true");

    // canonical resolved view (scalars after the repeated lines)
    auto put = [&](const std::string& k, const std::string& v) { cfg.resolved.emplace_back(k, v); };
    std::ostringstream os;
    os << cfg.b;
    put("cell.b", os.str());
    put("grid.n", std::to_string(cfg.n));
    put("grid.nbar", std::to_string(cfg.nbar));
    put("grid.n0", std::to_string(cfg.n0));
    put("quad.M", std::to_string(cfg.quad_M));
    put("lattice.L", std::to_string(cfg.L[0]) + " " + std::to_string(cfg.L[1]) + " " +
                          std::to_string(cfg.L[2]));
    put("boundary", cfg.boundary == Boundary::Box        ? "box"
                    : cfg.boundary == Boundary::Periodic ? "periodic"
                                                         : "both");
    os.str("");
    os << cfg.eps_ov;
    put("eps_ov", os.str());
    put("n_occ", std::to_string(cfg.n_occ));
    put("threads", std::to_string(cfg.threads));
    put("caps.dense", std::to_string(cfg.cap_dense));
    put("caps.materialize", std::to_string(cfg.cap_materialize));
    return cfg;
}

}  // namespace latham::cli
