// Acceptance suite: runs every headline criterion at its stated tolerance and
// prints one pass/fail line per criterion.  Exits nonzero if any fail.
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "qlocal/report.hpp"

using namespace qlocal;

namespace {

int failures = 0;

void line(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what
              << (detail.empty() ? "" : " -- " + detail) << "\n";
}

int cli_exit_code(const std::string& args) {
    std::string cmd = std::string(QLOCAL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion1_quantum_exactness() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, tree] : {std::pair<std::string, Tree>{"edge", make_edge()},
                                     {"path:3", make_path(3)},
                                     {"comb:2", comb_tree(2)}}) {
        QCircuit c = build_dhost_circuit(tree);
        ExactState st = run(c, BitString(static_cast<size_t>(c.qubit_count)));
        ExactDist meas = measure_dist(st, DhostRegisters{tree.vertex_count}.xyw_coords());
        Dyadic tv = tv_distance(meas, dhost_exact(tree));
        ok = ok && tv.is_zero();
        detail << name << "=" << tv.to_string() << " ";
    }
    for (int k = 5; k <= 9; ++k) {
        Dyadic tv = dhost_sim_tv(make_path(k));
        ok = ok && tv.is_zero();
        detail << "path:" << k << "=" << tv.to_string() << " ";
    }
    Dyadic tv = dhost_sim_tv(comb_tree(3));
    ok = ok && tv.is_zero();
    detail << "comb:3=" << tv.to_string();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 300.0;
    line(1, ok, "quantum circuits reproduce the host distribution exactly",
         detail.str() + " (" + std::to_string(secs) + "s)");
}

void criterion2_circuit_structure() {
    Tree t = comb_tree(3);
    QCircuit c = build_dhost_circuit(t);
    c.layout = grid_layout_for(t);
    CircuitConstraints cons;
    cons.max_depth = 7;
    cons.gate_set = std::set<GateKind>{GateKind::H, GateKind::CS, GateKind::CNOT, GateKind::TOFFOLI};
    cons.hadamard_first_last_only = true;
    cons.geometric = true;
    ValidationReport v = validate(c, cons);
    bool ok = v.ok && c.depth() == 7;
    line(2, ok, "comb:3 circuit has depth 7, the stated gate set, boundary Hadamards, and a valid layout",
         "depth=" + std::to_string(c.depth()) +
             (v.violations.empty() ? "" : ", " + v.violations.front()));
}

void criterion3_php() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 6 && ok; ++n) {
        QCircuit c = build_php(n);
        std::vector<int> ycoords;
        for (int i = 0; i < n; ++i) ycoords.push_back(n + i);
        for (uint64_t xi = 0; xi < (uint64_t{1} << n) && ok; ++xi) {
            BitString x = BitString::from_index(xi, static_cast<size_t>(n));
            ExactDist y = measure_dist(run_state(c, php_input_state(x)), ycoords);
            size_t w = x.popcount();
            ExactDist want = (w % 2 == 0)
                                 ? parity_uniform_dist(n, static_cast<int>((w / 2) % 2))
                                 : ProductDist::unbiased(static_cast<size_t>(n)).expand();
            if (!tv_distance(y, want).is_zero()) {
                ok = false;
                detail = "n=" + std::to_string(n) + " x=" + x.to_string();
            }
        }
    }
    line(3, ok, "parity-halving circuit marginals are exact for all n <= 6 and every x", detail);
}

void criterion4_potential() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 6 && ok; ++n)
        for (int m = 1; m <= 4 && ok; ++m) {
            GaussSqrt2 got = expected_h(dhard_exact({n, m, false}), n);
            GaussSqrt2 want = GaussSqrt2::from_dyadic(Dyadic::one_half() + Dyadic::pow2(n + 1));
            if (!(got == want)) {
                ok = false;
                detail = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " got " + got.to_string();
            }
        }
    line(4, ok, "E[h] over the hard distribution equals 1/2 + 2^-(n+1) exactly", detail);
}

void criterion5_upper_bounds() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    auto check = [&](const SamplerSpec& s, int max_locality, const std::string& tag) {
        Dyadic tv = s.exactness_tv();
        bool good = tv.is_zero() && s.function.locality() <= max_locality;
        if (!good && ok) {
            ok = false;
            detail = tag + " tv=" + tv.to_string() + " locality=" + std::to_string(s.function.locality());
        }
    };
    for (int n : {1, 2, 3}) check(build_prop_nc0_upper(n), 6, "prop51 n=" + std::to_string(n));
    for (int n : {2, 3, 4}) check(build_prop_nc0_upper2(n), 6, "prop52 n=" + std::to_string(n));
    check(build_remark_extension(3, 1, true), 1 + 6, "remark C=1");
    check(build_remark_extension(4, 2, true), 2 + 6, "remark C=2");
    check(build_remark_extension(4, 2, false), 2 + 6, "remark C=2 plain");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 120.0;
    line(5, ok, "classical samplers hit their targets exactly within the claimed locality",
         detail.empty() ? std::to_string(secs) + "s" : detail);
}

void criterion6_reduction() {
    bool ok = true;
    std::string detail;
    for (const auto& [name, tree] :
         {std::pair<std::string, Tree>{"edge", make_edge()}, {"path:3", make_path(3)}}) {
        ReductionInfo red = build_reduction(tree);
        ExactDist got = output_dist_on(red.function, dhost_exact(tree));
        ExactDist want =
            dhard_exact({tree.vertex_count, tree.vertex_count + static_cast<int>(red.k), false});
        Dyadic tv = tv_distance(got, want);
        bool good = tv.is_zero() && red.function.locality() <= 5;
        if (!good) detail = name + " tv=" + tv.to_string();
        ok = ok && good;
    }
    line(6, ok, "the host-to-hard reduction is exact and 5-local", detail);
}

void criterion7_adversary_floor() {
    auto adv = adversary_search(1, dhard_exact({1, 1, false}));
    Dyadic recheck = tv_distance(output_dist(adv.witness, adv.witness_biases), dhard_exact({1, 1, false}));
    bool witness_ok = recheck == adv.best_tv;
    bool ok = adv.best_tv == Dyadic(1, 3) && witness_ok;
    line(7, ok, "1-local adversary floor for the (1,1) hard distribution equals 1/8 exactly",
         "search returned " + adv.best_tv.to_string() + " (exact optimum " + adv.rational_optimum_str +
             " at independent biases), witness recheck " + (witness_ok ? "matches" : "MISMATCH"));
}

void criterion8_decay() {
    bool ok = decay_bound_check({Dyadic::one(), 0, 0, 0}).holds &&
              decay_bound_check({Dyadic::one_half(), Dyadic::one_half(), 0, 0}).holds &&
              decay_bound_check({Dyadic(1, 2), Dyadic(1, 2), Dyadic(1, 2), Dyadic(1, 2)}).holds;
    SplitMix64 rng(20240501);
    std::string detail;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        std::array<uint64_t, 3> cuts{rng.next() % 1025, rng.next() % 1025, rng.next() % 1025};
        std::sort(cuts.begin(), cuts.end());
        std::array<Dyadic, 4> p{Dyadic(mpz_class(static_cast<unsigned long>(cuts[0])), 10),
                                Dyadic(mpz_class(static_cast<unsigned long>(cuts[1] - cuts[0])), 10),
                                Dyadic(mpz_class(static_cast<unsigned long>(cuts[2] - cuts[1])), 10),
                                Dyadic(mpz_class(static_cast<unsigned long>(1024 - cuts[2])), 10)};
        if (!decay_bound_check(p).holds) {
            ok = false;
            detail = "trial " + std::to_string(trial);
        }
    }
    line(8, ok, "|E[i^A]| <= 1 - eta/4 on 10000 seeded mod-4 distributions plus edge cases", detail);
}

void criterion9_decompose_eliminate() {
    bool ok = true;
    std::string detail;
    SplitMix64 rng(20240501 ^ 0xD1CEULL);
    for (int trial = 0; trial < 200 && ok; ++trial) {
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
        if (!decompose_check(f, pi, s)) {
            ok = false;
            detail = "decompose trial " + std::to_string(trial);
            break;
        }
        DepGraph g = dep_graph(f);
        int d = std::max(1, g.left_degree_bound());
        auto ve = eliminate_vertices(g, Dyadic::one(),
                                     Dyadic(detail::vertex_hypothesis_bound(d, Dyadic::one()), 0));
        if (!verify_nonconnected_vertices(g, ve.removed_inputs, ve.nonconnected_outputs)) {
            ok = false;
            detail = "vertex elimination trial " + std::to_string(trial);
            break;
        }
        auto ne = eliminate_neighborhoods(
            g, [](int) { return Dyadic::one(); }, Dyadic(g.left_count), Dyadic(g.left_count));
        if (ne.ok) {
            int t = 0;
            if (!verify_nonconnected_neighborhoods(g, ne.removed_inputs, ne.indices, &t) || t > ne.t ||
                Dyadic(static_cast<long>(ne.removed_inputs.size())) >
                    Dyadic(static_cast<long>(ne.indices.size()))) {
                ok = false;
                detail = "neighborhood elimination trial " + std::to_string(trial);
                break;
            }
        }
    }
    line(9, ok, "decomposition holds on 200 seeded instances and eliminations pass the independent checker",
         detail);
}

void criterion10_direct_product() {
    // the distance-1/8 witness: both outputs mirror one input of bias 1/8
    LocalFunction shared(1, {OutputBit{{0}, {0, 1}}, OutputBit{{0}, {0, 1}}});
    ProductDist pd(std::vector<Dyadic>{Dyadic(1, 3)});
    ExactDist target = dhard_exact({1, 1, false});
    bool ok = tv_distance(output_dist(shared, pd), target) == Dyadic(1, 3);
    std::string detail;
    Dyadic prev = Dyadic(1, 3);
    for (int k = 2; k <= 4 && ok; ++k) {
        auto r = direct_product_experiment(shared, pd, target, k);
        if (r.kfold_tv < prev || !r.bound_holds) {
            ok = false;
            detail = "k=" + std::to_string(k);
        }
        prev = r.kfold_tv;
    }
    line(10, ok, "k-fold distance of the 1/8 witness is monotone and beats 1 - 2 exp(-k/128)", detail);
}

void criterion11_fault_sensitivity() {
    bool ok = true;
    std::string detail;
    const std::map<std::string, std::string> fault_to_check{
        {"prop51-table", "classical-prop51"},    {"prop52-table", "classical-prop52"},
        {"remark-table", "classical-remark-c1"}, {"reduction-table", "classical-reduction-edge"},
        {"dhost-gate-kind", "quantum-comb2"},    {"dhost-gate-drop", "quantum-comb2"},
        {"php-gate-drop", "php-exactness"}};
    ReportConfig clean;
    clean.quick = true;
    Report base = run_report(clean);
    std::map<std::string, bool> base_ok;
    for (const auto& c : base.checks) base_ok[c.name] = c.ok;
    for (const auto& [fault, check] : fault_to_check) {
        if (!base_ok.at(check)) {
            ok = false;
            detail = check + " fails even without a fault";
            continue;
        }
        ReportConfig config;
        config.quick = true;
        config.fault = fault;
        Report r = run_report(config);
        bool detected = false;
        for (const auto& c : r.checks)
            if (c.name == check && !c.ok) detected = true;
        if (!detected || r.all_ok) {
            ok = false;
            detail = fault + " not detected";
        }
        int code = cli_exit_code("report --quick --inject-fault " + fault);
        if (code == 0) {
            ok = false;
            detail = fault + " did not produce a nonzero exit";
        }
    }
    line(11, ok, "every injected truth-table or gate fault is reported with nonzero distance and exit code",
         detail);
}

}  // namespace

int main() {
    criterion1_quantum_exactness();
    criterion2_circuit_structure();
    criterion3_php();
    criterion4_potential();
    criterion5_upper_bounds();
    criterion6_reduction();
    criterion7_adversary_floor();
    criterion8_decay();
    criterion9_decompose_eliminate();
    criterion10_direct_product();
    criterion11_fault_sensitivity();
    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) failed\n";
    return 1;
}
