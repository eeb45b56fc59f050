#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlocal {

enum class GateKind { H, CS, CNOT, TOFFOLI };

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::H: return 1;
        case GateKind::CS: return 2;
        case GateKind::CNOT: return 2;
        case GateKind::TOFFOLI: return 3;
    }
    return 0;
}

inline std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::CS: return "CS";
        case GateKind::CNOT: return "CNOT";
        case GateKind::TOFFOLI: return "TOFFOLI";
    }
    return "?";
}

inline GateKind gate_kind_from_name(const std::string& s) {
    if (s == "H") return GateKind::H;
    if (s == "CS") return GateKind::CS;
    if (s == "CNOT") return GateKind::CNOT;
    if (s == "TOFFOLI") return GateKind::TOFFOLI;
    throw std::invalid_argument("unknown gate kind: " + s);
}

// Qubit order conventions: CNOT = [control, target], TOFFOLI = [c1, c2,
// target], CS is symmetric.
struct Gate {
    GateKind kind;
    std::vector<int> qubits;
};

struct GridLayout {
    // qubit -> (row, col); must be injective.
    std::vector<std::pair<int, int>> coords;
};

struct QCircuit {
    int qubit_count = 0;
    std::vector<std::vector<Gate>> layers;
    std::optional<GridLayout> layout;

    int depth() const { return static_cast<int>(layers.size()); }

    void check_well_formed() const {
        for (size_t li = 0; li < layers.size(); ++li) {
            std::set<int> used;
            for (const Gate& g : layers[li]) {
                if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind))
                    throw std::invalid_argument("gate arity mismatch in layer " + std::to_string(li + 1));
                for (int q : g.qubits) {
                    if (q < 0 || q >= qubit_count)
                        throw std::invalid_argument("qubit index out of range in layer " + std::to_string(li + 1));
                    if (!used.insert(q).second)
                        throw std::invalid_argument("overlapping gates in layer " + std::to_string(li + 1));
                }
            }
        }
    }
};

struct CircuitConstraints {
    std::optional<int> max_depth;
    std::optional<std::set<GateKind>> gate_set;
    bool hadamard_first_last_only = false;
    bool geometric = false;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string why) {
        ok = false;
        violations.push_back(std::move(why));
    }
};

inline bool cells_adjacent(std::pair<int, int> a, std::pair<int, int> b) {
    return std::abs(a.first - b.first) + std::abs(a.second - b.second) == 1;
}

// Checks structural constraints; geometric locality means every consecutive
// qubit pair of each multi-qubit gate sits on Manhattan-adjacent grid cells.
inline ValidationReport validate(const QCircuit& c, const CircuitConstraints& constraints) {
    ValidationReport report;
    try {
        c.check_well_formed();
    } catch (const std::exception& e) {
        report.fail(e.what());
        return report;
    }
    if (constraints.max_depth && c.depth() > *constraints.max_depth)
        report.fail("depth " + std::to_string(c.depth()) + " exceeds " + std::to_string(*constraints.max_depth));
    for (size_t li = 0; li < c.layers.size(); ++li) {
        for (const Gate& g : c.layers[li]) {
            if (constraints.gate_set && !constraints.gate_set->count(g.kind))
                report.fail("layer " + std::to_string(li + 1) + ": gate " + gate_name(g.kind) + " outside gate set");
            if (constraints.hadamard_first_last_only && g.kind == GateKind::H && li != 0 &&
                li + 1 != c.layers.size())
                report.fail("layer " + std::to_string(li + 1) + ": interior Hadamard");
        }
    }
    if (constraints.geometric) {
        if (!c.layout) {
            report.fail("geometric check requested but circuit has no layout");
            return report;
        }
        const auto& coords = c.layout->coords;
        if (static_cast<int>(coords.size()) != c.qubit_count) {
            report.fail("layout size mismatch");
            return report;
        }
        std::set<std::pair<int, int>> seen;
        for (auto cell : coords)
            if (!seen.insert(cell).second) report.fail("layout is not injective");
        for (size_t li = 0; li < c.layers.size(); ++li)
            for (const Gate& g : c.layers[li])
                for (size_t i = 0; i + 1 < g.qubits.size(); ++i)
                    if (!cells_adjacent(coords[g.qubits[i]], coords[g.qubits[i + 1]]))
                        report.fail("layer " + std::to_string(li + 1) + ": " + gate_name(g.kind) +
                                    " on non-adjacent cells");
    }
    return report;
}

}  // namespace qlocal
