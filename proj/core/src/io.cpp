// Copyright 2026 The lowtrot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lowtrot/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lowtrot/error.hpp"
#include "lowtrot/models.hpp"
#include "lowtrot/product_formula.hpp"

namespace lowtrot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw Error(Errc::ConfigParse, where + ": " + what); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ConfigParse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(std::string_view text, const std::string& origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const long line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte > 0 ? byte - 1 : 0), '\n');
        fail(origin + ":" + std::to_string(line), "syntax error");
    }
}

void skip_space(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

template <class T>
T get(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        fail(path, "wrong type");
    }
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
            fail(path + "." + key, "unknown field");
    }
}

}  // namespace

PauliOperator parse_pauli_operator(std::string_view text) {
    const std::size_t on = text.rfind(" on ");
    if (on == std::string_view::npos) throw Error(Errc::ConfigParse, "operator '" + std::string(text) + "' lacks 'on [sites]'");
    const std::string_view lhs = text.substr(0, on);
    const std::string_view rhs = text.substr(on + 4);

    PauliOperator out;
    std::size_t i = 0;
    skip_space(rhs, i);
    if (i >= rhs.size() || rhs[i] != '[') throw Error(Errc::ConfigParse, "expected '[' in site list");
    ++i;
    while (true) {
        skip_space(rhs, i);
        int site = 0;
        const auto res = std::from_chars(rhs.data() + i, rhs.data() + rhs.size(), site);
        if (res.ec != std::errc()) throw Error(Errc::ConfigParse, "bad site index in '" + std::string(rhs) + "'");
        out.support.push_back(site);
        i = static_cast<std::size_t>(res.ptr - rhs.data());
        skip_space(rhs, i);
        if (i < rhs.size() && rhs[i] == ',') {
            ++i;
            continue;
        }
        if (i < rhs.size() && rhs[i] == ']') {
            ++i;
            break;
        }
        throw Error(Errc::ConfigParse, "expected ',' or ']' in site list");
    }
    skip_space(rhs, i);
    if (i != rhs.size()) throw Error(Errc::ConfigParse, "trailing text after site list");

    const std::size_t k = out.support.size();
    const long dim = 1L << k;
    out.op = Matrix::Zero(dim, dim);
    i = 0;
    bool first = true;
    while (true) {
        skip_space(lhs, i);
        if (i >= lhs.size()) break;
        double sign = 1.0;
        if (lhs[i] == '+' || lhs[i] == '-') {
            sign = lhs[i] == '-' ? -1.0 : 1.0;
            ++i;
            skip_space(lhs, i);
        } else if (!first) {
            throw Error(Errc::ConfigParse, "expected '+' or '-' between Pauli strings");
        }
        double c = 1.0;
        if (i < lhs.size() && (std::isdigit(static_cast<unsigned char>(lhs[i])) || lhs[i] == '.')) {
            const auto res = std::from_chars(lhs.data() + i, lhs.data() + lhs.size(), c);
            if (res.ec != std::errc()) throw Error(Errc::ConfigParse, "bad number in operator");
            i = static_cast<std::size_t>(res.ptr - lhs.data());
            skip_space(lhs, i);
            if (i < lhs.size() && lhs[i] == '*') {
                ++i;
                skip_space(lhs, i);
            }
        }
        const std::size_t start = i;
        while (i < lhs.size() && std::string_view("IXYZ").find(lhs[i]) != std::string_view::npos) ++i;
        const std::string_view letters = lhs.substr(start, i - start);
        if (letters.empty()) throw Error(Errc::ConfigParse, "expected a Pauli string in '" + std::string(lhs) + "'");
        if (letters.size() != k)
            throw Error(Errc::ConfigParse, "Pauli string '" + std::string(letters) + "' does not match " + std::to_string(k) + " sites");
        out.op += sign * c * pauli_string(letters);
        first = false;
    }
    if (first) throw Error(Errc::ConfigParse, "empty operator");
    return out;
}

HamiltonianDescription parse_hamiltonian_json(std::string_view text, const std::string& origin) {
    const json j = parse_json(text, origin);
    check_keys(j, origin, {"sites", "locality", "total_time", "terms", "groups"});
    HamiltonianDescription d;
    if (!j.contains("sites")) fail(origin + ".sites", "missing");
    d.n_sites = get<int>(j["sites"], origin + ".sites");
    if (j.contains("locality")) d.locality = get<int>(j["locality"], origin + ".locality");
    if (j.contains("total_time")) d.total_time = get<double>(j["total_time"], origin + ".total_time");
    if (!j.contains("terms") || !j["terms"].is_array()) fail(origin + ".terms", "missing term list");
    for (std::size_t t = 0; t < j["terms"].size(); ++t) {
        const std::string path = origin + ".terms[" + std::to_string(t) + "]";
        const json& tj = j["terms"][t];
        check_keys(tj, path, {"op", "coef", "label"});
        TermDescription td;
        if (!tj.contains("op")) fail(path + ".op", "missing");
        td.op = get<std::string>(tj["op"], path + ".op");
        td.coef = tj.contains("coef") ? get<std::string>(tj["coef"], path + ".coef") : "1";
        td.label = tj.contains("label") ? get<std::string>(tj["label"], path + ".label") : "t" + std::to_string(t);
        d.terms.push_back(std::move(td));
    }
    if (j.contains("groups")) d.groups = get<std::vector<std::vector<int>>>(j["groups"], origin + ".groups");
    return d;
}

HamiltonianDescription load_hamiltonian_file(const std::string& path) { return parse_hamiltonian_json(read_file(path), path); }

TimeDependentHamiltonian build_hamiltonian(const HamiltonianDescription& desc, std::optional<double> total_time, int max_derivative_order) {
    const double T = total_time.value_or(desc.total_time);
    std::vector<TermSpec> specs;
    for (const auto& td : desc.terms) {
        PauliOperator po = parse_pauli_operator(td.op);
        CoefficientFn coef;
        try {
            coef = parse_coefficient(td.coef, T);
        } catch (const Error& e) {
            throw Error(Errc::ConfigParse, "term '" + td.label + "': " + e.what());
        }
        specs.push_back({std::move(po.support), std::move(po.op), std::move(coef), td.label});
    }
    if (desc.locality) {
        for (const auto& s : specs)
            if (static_cast<int>(s.support.size()) > *desc.locality)
                throw Error(Errc::ConfigParse, "term '" + s.label + "' exceeds the declared locality");
    }
    ChainOptions opts;
    opts.total_time = T;
    opts.max_derivative_order = max_derivative_order;
    opts.groups = desc.groups;
    return build_chain(desc.n_sites, std::move(specs), opts);
}

BenchConfig parse_config(std::string_view text, const std::string& base_dir, const std::string& origin) {
    const json j = parse_json(text, origin);
    check_keys(j, origin, {"version", "scenarios"});
    BenchConfig cfg;
    if (j.contains("version")) cfg.version = get<int>(j["version"], origin + ".version");
    if (cfg.version != 1) fail(origin + ".version", "unsupported version " + std::to_string(cfg.version));
    if (!j.contains("scenarios") || !j["scenarios"].is_array()) fail(origin + ".scenarios", "missing scenario list");

    std::set<std::string> names;
    for (std::size_t n = 0; n < j["scenarios"].size(); ++n) {
        const json& sj = j["scenarios"][n];
        const std::string path = origin + ".scenarios[" + std::to_string(n) + "]";
        check_keys(sj, path, {"name", "hamiltonian", "sigma", "eps", "kinds", "p", "r", "T", "solve", "seed", "n_bits", "sparsity", "schedules"});
        Scenario sc;
        if (!sj.contains("name")) fail(path + ".name", "missing");
        sc.name = get<std::string>(sj["name"], path + ".name");
        if (!names.insert(sc.name).second) fail(path + ".name", "duplicate scenario name '" + sc.name + "'");

        if (!sj.contains("hamiltonian")) fail(path + ".hamiltonian", "missing");
        const json& hj = sj["hamiltonian"];
        const std::string hpath = path + ".hamiltonian";
        check_keys(hj, hpath, {"builtin", "file", "params"});
        if (hj.contains("builtin") == hj.contains("file")) fail(hpath, "need exactly one of 'builtin' or 'file'");
        if (hj.contains("builtin")) {
            sc.hamiltonian.builtin = get<std::string>(hj["builtin"], hpath + ".builtin");
            static const std::map<std::string, std::set<std::string>> known = {
                {"driven-heisenberg-chain", {"n_sites", "coupling", "anisotropy", "field_z", "field_x", "drive_depth", "omega", "random"}},
                {"adiabatic-single-spin", {}},
                {"linear-interpolation-ising", {"n_sites", "field_z"}},
                {"parity-instance", {}},
            };
            const auto it = known.find(sc.hamiltonian.builtin);
            if (it == known.end()) fail(hpath + ".builtin", "unknown builtin '" + sc.hamiltonian.builtin + "'");
            if (hj.contains("params")) {
                if (!hj["params"].is_object()) fail(hpath + ".params", "expected an object");
                for (const auto& [key, value] : hj["params"].items()) {
                    if (!it->second.count(key)) fail(hpath + ".params." + key, "unknown parameter");
                    sc.hamiltonian.params[key] = get<double>(value, hpath + ".params." + key);
                }
            }
        } else {
            if (hj.contains("params")) fail(hpath + ".params", "only builtins take parameters");
            const std::filesystem::path file = get<std::string>(hj["file"], hpath + ".file");
            sc.hamiltonian.file = file.is_absolute() ? file.string() : (std::filesystem::path(base_dir) / file).string();
        }

        if (sj.contains("sigma")) sc.sigma = get<int>(sj["sigma"], path + ".sigma");
        if (sc.sigma < 1) fail(path + ".sigma", "must be positive");
        if (sj.contains("eps")) sc.eps = get<double>(sj["eps"], path + ".eps");
        if (!(sc.eps > 0.0 && sc.eps < 1.0)) fail(path + ".eps", "must lie in (0, 1)");
        if (sj.contains("kinds")) sc.kinds = get<std::vector<std::string>>(sj["kinds"], path + ".kinds");
        for (const auto& k : sc.kinds)
            if (k != "generalized" && k != "standard") fail(path + ".kinds", "unknown kind '" + k + "'");
        if (sj.contains("p")) sc.p = get<std::vector<int>>(sj["p"], path + ".p");
        for (int p : sc.p)
            if (p != 1 && p != 2 && p != 4 && p != 6) fail(path + ".p", "unsupported order " + std::to_string(p));
        if (sj.contains("r")) sc.r = get<std::vector<long>>(sj["r"], path + ".r");
        for (long r : sc.r)
            if (r < 1) fail(path + ".r", "sweep values must be positive");
        if (sj.contains("T")) sc.T = get<std::vector<double>>(sj["T"], path + ".T");
        for (double T : sc.T)
            if (!(T > 0.0)) fail(path + ".T", "sweep values must be positive");
        if (sj.contains("solve")) sc.solve = get<bool>(sj["solve"], path + ".solve");
        if (sj.contains("seed")) sc.seed = get<std::uint64_t>(sj["seed"], path + ".seed");
        if (sj.contains("n_bits")) sc.n_bits = get<std::vector<int>>(sj["n_bits"], path + ".n_bits");
        for (int b : sc.n_bits)
            if (b < 1) fail(path + ".n_bits", "sweep values must be positive");
        if (sj.contains("sparsity")) sc.sparsity = get<int>(sj["sparsity"], path + ".sparsity");
        if (sj.contains("schedules")) sc.schedules = get<std::vector<std::string>>(sj["schedules"], path + ".schedules");

        if (sc.hamiltonian.builtin == "parity-instance") {
            for (std::size_t s = 0; s < sc.schedules.size(); ++s) {
                try {
                    (void)parse_coefficient(sc.schedules[s], 1.0);
                } catch (const Error& e) {
                    fail(path + ".schedules[" + std::to_string(s) + "]", e.what());
                }
            }
        } else if (!sc.hamiltonian.file.empty()) {
            try {
                (void)load_hamiltonian_file(sc.hamiltonian.file);
            } catch (const Error& e) {
                fail(hpath + ".file", e.what());
            }
        }
        cfg.scenarios.push_back(std::move(sc));
    }
    return cfg;
}

BenchConfig load_config(const std::string& path) {
    const std::string base = std::filesystem::path(path).parent_path().string();
    return parse_config(read_file(path), base.empty() ? "." : base, path);
}

TimeDependentHamiltonian scenario_hamiltonian(const Scenario& sc, double T) {
    const auto& src = sc.hamiltonian;
    auto param = [&](const char* key, double fallback) {
        const auto it = src.params.find(key);
        return it == src.params.end() ? fallback : it->second;
    };
    if (!src.file.empty()) return build_hamiltonian(load_hamiltonian_file(src.file), T);
    if (src.builtin == "driven-heisenberg-chain") {
        DrivenChainParams p;
        p.n_sites = static_cast<int>(param("n_sites", p.n_sites));
        p.total_time = T;
        p.coupling = param("coupling", p.coupling);
        p.anisotropy = param("anisotropy", p.anisotropy);
        p.field_z = param("field_z", p.field_z);
        p.field_x = param("field_x", p.field_x);
        p.drive_depth = param("drive_depth", p.drive_depth);
        p.omega = param("omega", p.omega);
        if (param("random", 0.0) != 0.0) p.seed = sc.seed.value_or(0);
        return driven_heisenberg_chain(p);
    }
    if (src.builtin == "adiabatic-single-spin") return adiabatic_single_spin(T);
    if (src.builtin == "linear-interpolation-ising") {
        IsingParams p;
        p.n_sites = static_cast<int>(param("n_sites", p.n_sites));
        p.total_time = T;
        p.field_z = param("field_z", p.field_z);
        return linear_interpolation_ising(p);
    }
    throw Error(Errc::InvalidArgument, "scenario '" + sc.name + "' has no Hamiltonian matrix form");
}

}  // namespace lowtrot
