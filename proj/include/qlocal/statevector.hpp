#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "budget.hpp"
#include "dist.hpp"
#include "qcircuit.hpp"

namespace qlocal {

inline constexpr int kStatevectorBudgetQubits = 26;

// Exact statevector over the gate set {H, CS, CNOT, TOFFOLI}.  Amplitudes are
// Gaussian integers (re + im*i) divided by sqrt(2)^sqrt2_exp; the gate set is
// closed over this ring, so the norm identity sum(re^2 + im^2) = 2^sqrt2_exp
// holds exactly after every layer.  Qubit 0 is the least significant bit of
// the amplitude index.
struct ExactState {
    int qubit_count = 0;
    unsigned sqrt2_exp = 0;
    std::vector<int64_t> re, im;

    static ExactState basis(const BitString& input) {
        ExactState s;
        s.qubit_count = static_cast<int>(input.size());
        check_budget(s.qubit_count, kStatevectorBudgetQubits);
        s.re.assign(size_t{1} << s.qubit_count, 0);
        s.im.assign(size_t{1} << s.qubit_count, 0);
        s.re[input.to_ullong()] = 1;
        return s;
    }

    size_t dim() const { return size_t{1} << qubit_count; }

    mpz_class norm_squared_numerator() const {
        mpz_class acc = 0;
        for (size_t i = 0; i < dim(); ++i) {
            acc += mpz_class(static_cast<long>(re[i])) * static_cast<long>(re[i]);
            acc += mpz_class(static_cast<long>(im[i])) * static_cast<long>(im[i]);
        }
        return acc;
    }

    bool norm_ok() const {
        mpz_class want = 1;
        want <<= sqrt2_exp;
        return norm_squared_numerator() == want;
    }
};

namespace detail {

inline void apply_h(ExactState& s, int q) {
    const uint64_t bit = uint64_t{1} << q;
    for (uint64_t i = 0; i < s.dim(); ++i) {
        if (i & bit) continue;
        uint64_t j = i | bit;
        int64_t r0 = s.re[i], i0 = s.im[i], r1 = s.re[j], i1 = s.im[j];
        s.re[i] = r0 + r1;
        s.im[i] = i0 + i1;
        s.re[j] = r0 - r1;
        s.im[j] = i0 - i1;
    }
    ++s.sqrt2_exp;
    assert(s.sqrt2_exp < 120 && "amplitude growth would overflow int64");
}

inline void apply_cs(ExactState& s, int q1, int q2) {
    const uint64_t mask = (uint64_t{1} << q1) | (uint64_t{1} << q2);
    for (uint64_t i = 0; i < s.dim(); ++i) {
        if ((i & mask) != mask) continue;
        int64_t r = s.re[i];
        s.re[i] = -s.im[i];  // multiply by i
        s.im[i] = r;
    }
}

inline void apply_cnot(ExactState& s, int control, int target) {
    const uint64_t cbit = uint64_t{1} << control;
    const uint64_t tbit = uint64_t{1} << target;
    for (uint64_t i = 0; i < s.dim(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            uint64_t j = i | tbit;
            std::swap(s.re[i], s.re[j]);
            std::swap(s.im[i], s.im[j]);
        }
    }
}

inline void apply_toffoli(ExactState& s, int c1, int c2, int target) {
    const uint64_t cmask = (uint64_t{1} << c1) | (uint64_t{1} << c2);
    const uint64_t tbit = uint64_t{1} << target;
    for (uint64_t i = 0; i < s.dim(); ++i) {
        if ((i & cmask) == cmask && !(i & tbit)) {
            uint64_t j = i | tbit;
            std::swap(s.re[i], s.re[j]);
            std::swap(s.im[i], s.im[j]);
        }
    }
}

}  // namespace detail

inline void apply_gate(ExactState& s, const Gate& g) {
    for (int q : g.qubits)
        if (q < 0 || q >= s.qubit_count) throw std::invalid_argument("gate qubit out of range");
    switch (g.kind) {
        case GateKind::H: detail::apply_h(s, g.qubits[0]); break;
        case GateKind::CS: detail::apply_cs(s, g.qubits[0], g.qubits[1]); break;
        case GateKind::CNOT: detail::apply_cnot(s, g.qubits[0], g.qubits[1]); break;
        case GateKind::TOFFOLI: detail::apply_toffoli(s, g.qubits[0], g.qubits[1], g.qubits[2]); break;
    }
}

// Optional double-precision path.  Performance experiments only; every
// verification check runs on the exact representation.
struct FloatState {
    int qubit_count = 0;
    std::vector<std::complex<double>> amps;

    static FloatState basis(const BitString& input) {
        FloatState s;
        s.qubit_count = static_cast<int>(input.size());
        check_budget(s.qubit_count, kStatevectorBudgetQubits);
        s.amps.assign(size_t{1} << s.qubit_count, {0.0, 0.0});
        s.amps[input.to_ullong()] = 1.0;
        return s;
    }
};

inline void apply_gate(FloatState& s, const Gate& g) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto dim = s.amps.size();
    switch (g.kind) {
        case GateKind::H: {
            uint64_t bit = uint64_t{1} << g.qubits[0];
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & bit) continue;
                auto a0 = s.amps[i], a1 = s.amps[i | bit];
                s.amps[i] = (a0 + a1) * inv_sqrt2;
                s.amps[i | bit] = (a0 - a1) * inv_sqrt2;
            }
            break;
        }
        case GateKind::CS: {
            uint64_t mask = (uint64_t{1} << g.qubits[0]) | (uint64_t{1} << g.qubits[1]);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & mask) == mask) s.amps[i] *= std::complex<double>(0.0, 1.0);
            break;
        }
        case GateKind::CNOT: {
            uint64_t c = uint64_t{1} << g.qubits[0], t = uint64_t{1} << g.qubits[1];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
            break;
        }
        case GateKind::TOFFOLI: {
            uint64_t cm = (uint64_t{1} << g.qubits[0]) | (uint64_t{1} << g.qubits[1]);
            uint64_t t = uint64_t{1} << g.qubits[2];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & cm) == cm && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
            break;
        }
    }
}

inline FloatState run_float(const QCircuit& circuit, const BitString& input) {
    circuit.check_well_formed();
    FloatState s = FloatState::basis(input);
    for (const auto& layer : circuit.layers)
        for (const Gate& g : layer) apply_gate(s, g);
    return s;
}

inline ExactState apply_layer(ExactState state, const std::vector<Gate>& layer) {
    std::set<int> used;
    for (const Gate& g : layer) {
        if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind))
            throw std::invalid_argument("gate arity mismatch");
        for (int q : g.qubits)
            if (!used.insert(q).second) throw std::invalid_argument("overlapping gates in layer");
    }
    for (const Gate& g : layer) apply_gate(state, g);
    return state;
}

inline ExactState run_state(const QCircuit& circuit, ExactState state) {
    if (circuit.qubit_count != state.qubit_count) throw std::invalid_argument("state size mismatch");
    for (const auto& layer : circuit.layers) state = apply_layer(std::move(state), layer);
    return state;
}

inline ExactState run(const QCircuit& circuit, const BitString& input) {
    if (static_cast<int>(input.size()) != circuit.qubit_count)
        throw std::invalid_argument("input length must equal qubit count");
    return run_state(circuit, ExactState::basis(input));
}

// Born-rule marginal on the given coordinates, exact because every amplitude
// norm is (re^2 + im^2) / 2^sqrt2_exp.
inline ExactDist measure_dist(const ExactState& s, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("empty coordinate set");
    for (int c : coords)
        if (c < 0 || c >= s.qubit_count) throw std::invalid_argument("coordinate out of range");
    check_budget(static_cast<long>(coords.size()));
    std::vector<mpz_class> acc(size_t{1} << coords.size());
    for (uint64_t i = 0; i < s.dim(); ++i) {
        if (s.re[i] == 0 && s.im[i] == 0) continue;
        uint64_t key = 0;
        for (size_t j = 0; j < coords.size(); ++j) key |= ((i >> coords[j]) & 1) << j;
        acc[key] += mpz_class(static_cast<long>(s.re[i])) * static_cast<long>(s.re[i]) +
                    mpz_class(static_cast<long>(s.im[i])) * static_cast<long>(s.im[i]);
    }
    ExactDist::Pmf pmf;
    for (uint64_t key = 0; key < acc.size(); ++key) {
        if (acc[key] == 0) continue;
        pmf[BitString::from_index(key, coords.size())] = Dyadic(acc[key], s.sqrt2_exp);
    }
    return ExactDist(coords.size(), std::move(pmf));
}

}  // namespace qlocal
