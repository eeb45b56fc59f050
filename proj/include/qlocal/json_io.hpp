#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "local_function.hpp"
#include "qcircuit.hpp"
#include "tree.hpp"

namespace qlocal {

using nlohmann::json;

// ExactDist: {"len": int, "pmf": {"bitstring": "num/2^e", ...}}
inline json to_json(const ExactDist& d) {
    json pmf = json::object();
    for (const auto& [key, mass] : d.pmf()) pmf[key.to_string()] = mass.to_string();
    return json{{"len", d.len()}, {"pmf", pmf}};
}

inline ExactDist exact_dist_from_json(const json& j) {
    size_t len = j.at("len").get<size_t>();
    ExactDist::Pmf pmf;
    for (const auto& [key, val] : j.at("pmf").items())
        pmf[BitString::from_string(key)] = Dyadic::parse(val.get<std::string>());
    return ExactDist(len, std::move(pmf));
}

// Tree: {"vertices": int, "edges": [[u,v],...], "root": int}
inline json to_json(const Tree& t) {
    json edges = json::array();
    for (auto [u, v] : t.edges) edges.push_back(json::array({u, v}));
    return json{{"vertices", t.vertex_count}, {"edges", edges}, {"root", t.root}};
}

inline Tree tree_from_json(const json& j) {
    Tree t;
    t.vertex_count = j.at("vertices").get<int>();
    t.root = j.at("root").get<int>();
    for (const auto& e : j.at("edges")) t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    t.validate();
    return t;
}

// QCircuit: {"qubits": int, "layers": [[{"kind": ..., "qubits": [...]}]],
//            "layout": [[row, col], ...] (optional)}
inline json to_json(const QCircuit& c) {
    json layers = json::array();
    for (const auto& layer : c.layers) {
        json jl = json::array();
        for (const Gate& g : layer) jl.push_back(json{{"kind", gate_name(g.kind)}, {"qubits", g.qubits}});
        layers.push_back(jl);
    }
    json out{{"qubits", c.qubit_count}, {"layers", layers}};
    if (c.layout) {
        json cells = json::array();
        for (auto [r, col] : c.layout->coords) cells.push_back(json::array({r, col}));
        out["layout"] = cells;
    }
    return out;
}

inline QCircuit circuit_from_json(const json& j) {
    QCircuit c;
    c.qubit_count = j.at("qubits").get<int>();
    for (const auto& jl : j.at("layers")) {
        std::vector<Gate> layer;
        for (const auto& jg : jl)
            layer.push_back({gate_kind_from_name(jg.at("kind").get<std::string>()),
                             jg.at("qubits").get<std::vector<int>>()});
        c.layers.push_back(std::move(layer));
    }
    if (j.contains("layout")) {
        GridLayout g;
        for (const auto& cell : j.at("layout")) g.coords.push_back({cell.at(0).get<int>(), cell.at(1).get<int>()});
        c.layout = g;
    }
    c.check_well_formed();
    return c;
}

// LocalFunction: {"inputs": int, "outputs": [{"deps": [...], "table": "bits"}]}
// Table row r is the character at position r; deps[0] is the low bit of r.
inline json to_json(const LocalFunction& f) {
    json outs = json::array();
    for (const auto& o : f.outputs()) {
        std::string table(o.table.size(), '0');
        for (size_t r = 0; r < o.table.size(); ++r)
            if (o.table[r]) table[r] = '1';
        outs.push_back(json{{"deps", o.deps}, {"table", table}});
    }
    return json{{"inputs", f.input_count()}, {"outputs", outs}};
}

inline LocalFunction local_function_from_json(const json& j) {
    std::vector<OutputBit> outs;
    for (const auto& jo : j.at("outputs")) {
        OutputBit o;
        o.deps = jo.at("deps").get<std::vector<int>>();
        std::string table = jo.at("table").get<std::string>();
        for (char ch : table) o.table.push_back(ch == '1' ? 1 : 0);
        outs.push_back(std::move(o));
    }
    return LocalFunction(j.at("inputs").get<int>(), std::move(outs));
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qlocal
