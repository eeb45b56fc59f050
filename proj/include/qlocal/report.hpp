#pragma once

#include <array>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "classify.hpp"
#include "elimination.hpp"
#include "experiments.hpp"
#include "factored.hpp"
#include "json_io.hpp"
#include "samplers.hpp"

namespace qlocal {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string tv;  // exact value when the check measures a distance
    std::string detail;
};

struct ReportConfig {
    uint64_t seed = 20240501;
    int budget_bits = kDefaultBudgetBits;
    std::string fault;   // empty = no injected fault
    bool quick = false;  // skip the larger factored instances, shrink trial counts
};

struct Report {
    ReportConfig config;
    std::vector<CheckResult> checks;
    bool all_ok = true;

    void add(CheckResult c) {
        all_ok = all_ok && c.ok;
        checks.push_back(std::move(c));
    }
};

inline const std::vector<std::string>& known_faults() {
    static const std::vector<std::string> faults{
        "prop51-table", "prop52-table", "remark-table", "reduction-table",
        "dhost-gate-kind", "dhost-gate-drop", "php-gate-drop"};
    return faults;
}

namespace detail {

inline void flip_table_bit(LocalFunction& f, int output) {
    std::vector<OutputBit> outs(f.outputs().begin(), f.outputs().end());
    outs[output].table[0] ^= 1;
    f = LocalFunction(f.input_count(), std::move(outs));
}

inline CheckResult check_sampler(const std::string& name, SamplerSpec spec, int max_locality,
                                 bool flip_fault, int budget_bits) {
    if (flip_fault) flip_table_bit(spec.function, spec.function.output_count() - 1);
    CheckResult r;
    r.name = name;
    Dyadic tv = spec.exactness_tv(budget_bits);
    r.tv = tv.to_string();
    int loc = spec.function.locality();
    r.ok = tv.is_zero() && loc <= max_locality;
    r.detail = "locality " + std::to_string(loc) + " (claimed <= " + std::to_string(max_locality) + ")";
    return r;
}

inline CheckResult check_quantum_full(const std::string& name, const Tree& tree, const std::string& fault) {
    CheckResult r;
    r.name = name;
    QCircuit c = build_dhost_circuit(tree);
    if (fault == "dhost-gate-kind") {
        for (auto& layer : c.layers)
            for (auto& g : layer)
                if (g.kind == GateKind::CS) {
                    g.kind = GateKind::CNOT;
                    goto mutated;
                }
    } else if (fault == "dhost-gate-drop") {
        for (auto& layer : c.layers)
            for (size_t i = 0; i < layer.size(); ++i)
                if (layer[i].kind == GateKind::CNOT) {
                    layer.erase(layer.begin() + i);
                    goto mutated;
                }
    }
mutated:
    ExactState st = run(c, BitString(static_cast<size_t>(c.qubit_count)));
    ExactDist meas = measure_dist(st, DhostRegisters{tree.vertex_count}.xyw_coords());
    Dyadic tv = tv_distance(meas, dhost_exact(tree));
    r.tv = tv.to_string();
    r.ok = tv.is_zero();
    r.detail = "depth " + std::to_string(c.depth());
    return r;
}

}  // namespace detail

// The full verification battery behind `report`: quantum exactness, circuit
// structure, PHP behavior, the potential identity, classical upper bounds and
// the reduction, the adversary floor, the decay bound, decomposition and
// elimination, and the direct-product experiment.  A named fault perturbs one
// truth table or gate so sensitivity can be demonstrated end to end.
inline Report run_report(const ReportConfig& config) {
    Report report;
    report.config = config;
    const std::string& fault = config.fault;

    // quantum exactness, full statevector route
    report.add(detail::check_quantum_full("quantum-edge", make_edge(), ""));
    report.add(detail::check_quantum_full("quantum-path3", make_path(3), ""));
    report.add(detail::check_quantum_full("quantum-comb2", comb_tree(2),
                                          fault.rfind("dhost-", 0) == 0 ? fault : ""));
    // factored route
    std::vector<std::pair<std::string, Tree>> factored_cases{{"quantum-path5-factored", make_path(5)}};
    if (!config.quick) {
        factored_cases.push_back({"quantum-path7-factored", make_path(7)});
        factored_cases.push_back({"quantum-path9-factored", make_path(9)});
        factored_cases.push_back({"quantum-comb3-factored", comb_tree(3)});
    }
    for (const auto& [name, tree] : factored_cases) {
        CheckResult r;
        r.name = name;
        Dyadic tv = dhost_sim_tv(tree);
        r.tv = tv.to_string();
        r.ok = tv.is_zero();
        report.add(std::move(r));
    }

    // circuit structure of the comb:3 instance
    {
        CheckResult r;
        r.name = "circuit-structure-comb3";
        Tree t = comb_tree(3);
        QCircuit c = build_dhost_circuit(t);
        c.layout = grid_layout_for(t);
        CircuitConstraints cons;
        cons.max_depth = 7;
        cons.gate_set = std::set<GateKind>{GateKind::H, GateKind::CS, GateKind::CNOT, GateKind::TOFFOLI};
        cons.hadamard_first_last_only = true;
        cons.geometric = true;
        auto v = validate(c, cons);
        bool depth_exact = c.depth() == 7;
        r.ok = v.ok && depth_exact;
        r.detail = "depth " + std::to_string(c.depth()) + (v.ok ? "" : "; " + v.violations.front());
        report.add(std::move(r));
    }

    // PHP behavior for n <= 6, all inputs
    {
        CheckResult r;
        r.name = "php-exactness";
        r.ok = true;
        for (int n = 1; n <= 6 && r.ok; ++n) {
            QCircuit c = build_php(n);
            if (fault == "php-gate-drop" && n == 2) c.layers[0].pop_back();
            std::vector<int> ycoords;
            for (int i = 0; i < n; ++i) ycoords.push_back(n + i);
            for (uint64_t xi = 0; xi < (uint64_t{1} << n) && r.ok; ++xi) {
                BitString x = BitString::from_index(xi, static_cast<size_t>(n));
                ExactDist y = measure_dist(run_state(c, php_input_state(x)), ycoords);
                size_t w = x.popcount();
                ExactDist want = (w & 1) ? (n == 1 ? ProductDist::unbiased(1).expand()
                                                   : ProductDist::unbiased(static_cast<size_t>(n)).expand())
                                         : parity_uniform_dist(n, static_cast<int>((w / 2) & 1));
                Dyadic tv = tv_distance(y, want);
                if (!tv.is_zero()) {
                    r.ok = false;
                    r.tv = tv.to_string();
                    r.detail = "n=" + std::to_string(n) + " x=" + x.to_string();
                }
            }
        }
        if (r.ok) r.tv = Dyadic::zero().to_string();
        report.add(std::move(r));
    }

    // potential identity
    {
        CheckResult r;
        r.name = "potential-identity";
        r.ok = true;
        for (int n = 1; n <= 6 && r.ok; ++n)
            for (int m = 1; m <= 4 && r.ok; ++m) {
                GaussSqrt2 got = expected_h(dhard_exact({n, m, false}, config.budget_bits), n);
                GaussSqrt2 want = GaussSqrt2::from_dyadic(Dyadic::one_half() + Dyadic::pow2(n + 1));
                if (!(got == want)) {
                    r.ok = false;
                    r.detail = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " got " + got.to_string();
                }
            }
        report.add(std::move(r));
    }

    // classical upper bounds and the reduction
    report.add(detail::check_sampler("classical-prop51", build_prop_nc0_upper(2), 6,
                                     fault == "prop51-table", config.budget_bits));
    report.add(detail::check_sampler("classical-prop52", build_prop_nc0_upper2(3), 6,
                                     fault == "prop52-table", config.budget_bits));
    report.add(detail::check_sampler("classical-remark-c1", build_remark_extension(3, 1, true), 7,
                                     fault == "remark-table", config.budget_bits));
    report.add(detail::check_sampler("classical-remark-c2", build_remark_extension(4, 2, true), 8, false,
                                     config.budget_bits));
    for (const auto& [name, tree] : {std::pair<std::string, Tree>{"classical-reduction-edge", make_edge()},
                                     {"classical-reduction-path3", make_path(3)}}) {
        CheckResult r;
        r.name = name;
        ReductionInfo red = build_reduction(tree);
        if (fault == "reduction-table" && name == "classical-reduction-edge")
            detail::flip_table_bit(red.function, red.function.output_count() - 1);
        ExactDist got = output_dist_on(red.function, dhost_exact(tree, config.budget_bits), config.budget_bits);
        ExactDist want = dhard_exact(
            {tree.vertex_count, tree.vertex_count + static_cast<int>(red.k), false}, config.budget_bits);
        Dyadic tv = tv_distance(got, want);
        r.tv = tv.to_string();
        r.ok = tv.is_zero() && red.function.locality() <= 5;
        r.detail = "K=" + std::to_string(red.k) + ", locality " + std::to_string(red.function.locality());
        report.add(std::move(r));
    }

    // adversary floor at d = 1 against dhard(1,1)
    {
        CheckResult r;
        r.name = "adversary-floor";
        auto adv = adversary_search(1, dhard_exact({1, 1, false}, config.budget_bits));
        Dyadic recheck = tv_distance(output_dist(adv.witness, adv.witness_biases, config.budget_bits),
                                     dhard_exact({1, 1, false}, config.budget_bits));
        bool witness_consistent = recheck == adv.best_tv;
        r.tv = adv.best_tv.to_string();
        r.ok = adv.best_tv == Dyadic(1, 3) && witness_consistent;
        r.detail = "found " + adv.best_tv.to_string() + " (exact optimum " + adv.rational_optimum_str +
                   "), witness recheck " + std::string(witness_consistent ? "consistent" : "INCONSISTENT");
        report.add(std::move(r));
    }

    // decay bound on seeded random mod-4 distributions plus edge cases
    {
        CheckResult r;
        r.name = "decay-bound";
        r.ok = decay_bound_check({Dyadic::one(), 0, 0, 0}).holds &&
               decay_bound_check({Dyadic::one_half(), Dyadic::one_half(), 0, 0}).holds &&
               decay_bound_check({Dyadic(1, 2), Dyadic(1, 2), Dyadic(1, 2), Dyadic(1, 2)}).holds;
        SplitMix64 rng(config.seed);
        int decay_trials = config.quick ? 1000 : 10000;
        for (int trial = 0; trial < decay_trials && r.ok; ++trial) {
            std::array<uint64_t, 3> cuts{rng.next() % 1025, rng.next() % 1025, rng.next() % 1025};
            std::sort(cuts.begin(), cuts.end());
            std::array<Dyadic, 4> p{Dyadic(mpz_class(static_cast<unsigned long>(cuts[0])), 10),
                                    Dyadic(mpz_class(static_cast<unsigned long>(cuts[1] - cuts[0])), 10),
                                    Dyadic(mpz_class(static_cast<unsigned long>(cuts[2] - cuts[1])), 10),
                                    Dyadic(mpz_class(static_cast<unsigned long>(1024 - cuts[2])), 10)};
            if (!decay_bound_check(p).holds) {
                r.ok = false;
                r.detail = "failed at trial " + std::to_string(trial);
            }
        }
        report.add(std::move(r));
    }

    // decomposition and elimination on seeded random instances
    {
        CheckResult r;
        r.name = "decompose-eliminate";
        r.ok = true;
        SplitMix64 rng(config.seed ^ 0xD1CEULL);
        int mix_trials = config.quick ? 40 : 200;
        for (int trial = 0; trial < mix_trials && r.ok; ++trial) {
            int inputs = 6 + static_cast<int>(rng.next() % 5);
            int outputs = 4 + static_cast<int>(rng.next() % 4);
            std::vector<OutputBit> outs;
            for (int j = 0; j < outputs; ++j) {
                std::set<int> deps;
                int d = 1 + static_cast<int>(rng.next() % 3);
                while (static_cast<int>(deps.size()) < d)
                    deps.insert(static_cast<int>(rng.next() % static_cast<uint64_t>(inputs)));
                OutputBit o;
                o.deps.assign(deps.begin(), deps.end());
                for (size_t row = 0; row < (size_t{1} << o.deps.size()); ++row)
                    o.table.push_back(rng.next_bit() ? 1 : 0);
                outs.push_back(std::move(o));
            }
            LocalFunction f(inputs, std::move(outs));
            std::vector<Dyadic> biases;
            for (int i = 0; i < inputs; ++i)
                biases.push_back(Dyadic(mpz_class(static_cast<unsigned long>(rng.next() % 17)), 4));
            ProductDist pi(biases);
            std::vector<int> s;
            for (int i = 0; i < inputs && s.size() < 3; ++i)
                if (rng.next_bit()) s.push_back(i);
            if (!decompose_check(f, pi, s, config.budget_bits)) {
                r.ok = false;
                r.detail = "decompose_check failed at trial " + std::to_string(trial);
                break;
            }
            DepGraph g = dep_graph(f);
            int d = std::max(1, g.left_degree_bound());
            Dyadic beta = Dyadic::one();
            Dyadic lambda(detail::vertex_hypothesis_bound(d, beta), 0);
            auto ve = eliminate_vertices(g, beta, lambda);
            if (!verify_nonconnected_vertices(g, ve.removed_inputs, ve.nonconnected_outputs)) {
                r.ok = false;
                r.detail = "vertex elimination verifier failed at trial " + std::to_string(trial);
                break;
            }
            auto ne = eliminate_neighborhoods(
                g, [](int) { return Dyadic::one(); }, Dyadic(g.left_count), Dyadic(g.left_count));
            if (ne.ok) {
                int t = 0;
                if (!verify_nonconnected_neighborhoods(g, ne.removed_inputs, ne.indices, &t) || t > ne.t) {
                    r.ok = false;
                    r.detail = "neighborhood elimination verifier failed at trial " + std::to_string(trial);
                    break;
                }
            }
        }
        report.add(std::move(r));
    }

    // direct product mechanism with the shared-input witness of distance 1/8
    {
        CheckResult r;
        r.name = "direct-product";
        LocalFunction shared(1, {OutputBit{{0}, {0, 1}}, OutputBit{{0}, {0, 1}}});
        ProductDist pd(std::vector<Dyadic>{Dyadic(1, 3)});
        ExactDist target = dhard_exact({1, 1, false}, config.budget_bits);
        r.ok = tv_distance(output_dist(shared, pd, config.budget_bits), target) == Dyadic(1, 3);
        Dyadic prev;
        for (int k = 1; k <= 4 && r.ok; ++k) {
            auto rep = direct_product_experiment(shared, pd, target, k, config.budget_bits);
            if (k > 1 && rep.kfold_tv < prev) {
                r.ok = false;
                r.detail = "k-fold distance not monotone at k=" + std::to_string(k);
            }
            if (!rep.bound_holds) {
                r.ok = false;
                r.detail = "concentration bound violated at k=" + std::to_string(k);
            }
            prev = rep.kfold_tv;
        }
        report.add(std::move(r));
    }

    return report;
}

inline json report_to_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"tv", c.tv}, {"detail", c.detail}});
    return json{{"version", kArtifactVersion},
                {"seed", r.config.seed},
                {"budget", r.config.budget_bits},
                {"fault", r.config.fault},
                {"checks", checks},
                {"all_ok", r.all_ok}};
}

}  // namespace qlocal
