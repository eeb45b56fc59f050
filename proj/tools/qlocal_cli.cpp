// Command-line front end: builds the circuits and samplers, verifies them
// against the exact target distributions, and emits JSON artifacts.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qlocal/report.hpp"

using namespace qlocal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

Tree parse_tree(const std::string& spec) {
    if (spec == "edge") return make_edge();
    if (spec.rfind("path:", 0) == 0) return make_path(std::stoi(spec.substr(5)));
    if (spec.rfind("comb:", 0) == 0) return comb_tree(std::stoi(spec.substr(5)));
    if (spec.rfind("file:", 0) == 0) return tree_from_json(load_json_file(spec.substr(5)));
    throw CLI::ValidationError("--tree must be edge, path:k, comb:k, or file:PATH");
}

void print_or_json(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_verify_quantum(const std::string& tree_spec, bool factored, const std::string& emit_circuit,
                       bool as_json, int budget) {
    Tree tree = parse_tree(tree_spec);
    QCircuit c = build_dhost_circuit(tree);
    std::string layout_note = "unsupported shape";
    try {
        c.layout = grid_layout_for(tree);
        layout_note = "constructed";
    } catch (const std::invalid_argument&) {
    }
    CircuitConstraints cons;
    cons.gate_set = std::set<GateKind>{GateKind::H, GateKind::CS, GateKind::CNOT, GateKind::TOFFOLI};
    cons.hadamard_first_last_only = true;
    cons.geometric = c.layout.has_value();
    ValidationReport vr = validate(c, cons);
    Dyadic tv;
    std::string mode;
    if (factored || 5 * tree.vertex_count - 1 > kStatevectorBudgetQubits) {
        tv = dhost_sim_tv(tree);
        mode = "factored";
    } else {
        ExactState st = run(c, BitString(static_cast<size_t>(c.qubit_count)));
        ExactDist meas = measure_dist(st, DhostRegisters{tree.vertex_count}.xyw_coords());
        tv = tv_distance(meas, dhost_exact(tree, budget));
        mode = "full";
    }
    if (!emit_circuit.empty()) write_json_file(emit_circuit, to_json(c));
    json j{{"tree", tree_spec},    {"mode", mode},          {"depth", c.depth()},
           {"qubits", c.qubit_count}, {"tv", tv.to_string()}, {"validation_ok", vr.ok},
           {"layout", layout_note},   {"violations", vr.violations}};
    print_or_json(j, as_json,
                  "tree " + tree_spec + " (" + mode + "): depth " + std::to_string(c.depth()) + ", tv = " +
                      tv.to_string() + ", structure " + (vr.ok ? "ok" : "VIOLATED") + "\n");
    return (tv.is_zero() && vr.ok) ? kExitOk : kExitCheckFailed;
}

int cmd_verify_classical(const std::string& name, int n, int m, int c_param, bool star, int parity,
                         const std::string& tree_spec, const std::string& emit_function, bool as_json,
                         int budget) {
    Dyadic tv;
    int locality = 0, claimed = 0;
    LocalFunction emitted;
    if (name == "reduction") {
        Tree tree = parse_tree(tree_spec.empty() ? "edge" : tree_spec);
        ReductionInfo red = build_reduction(tree);
        ExactDist got = output_dist_on(red.function, dhost_exact(tree, budget), budget);
        ExactDist want =
            dhard_exact({tree.vertex_count, tree.vertex_count + static_cast<int>(red.k), false}, budget);
        tv = tv_distance(got, want);
        locality = red.function.locality();
        claimed = 5;
        emitted = red.function;
    } else {
        SamplerSpec spec;
        if (name == "parity")
            spec = parity_sampler(n, parity);
        else if (name == "prop51")
            spec = build_prop_nc0_upper(n, m);
        else if (name == "prop52")
            spec = build_prop_nc0_upper2(n);
        else if (name == "remark")
            spec = build_remark_extension(n, c_param, star);
        else
            throw CLI::ValidationError("--name must be parity, prop51, prop52, remark, or reduction");
        tv = spec.exactness_tv(budget);
        locality = spec.function.locality();
        claimed = spec.claimed_locality;
        emitted = spec.function;
    }
    if (!emit_function.empty()) write_json_file(emit_function, to_json(emitted));
    bool ok = tv.is_zero() && locality <= claimed;
    json j{{"name", name}, {"tv", tv.to_string()}, {"locality", locality}, {"claimed_locality", claimed}};
    print_or_json(j, as_json,
                  name + ": locality " + std::to_string(locality) + " (claimed <= " + std::to_string(claimed) +
                      "), tv = " + tv.to_string() + "\n");
    return ok ? kExitOk : kExitCheckFailed;
}

ExactDist make_target(const std::string& target, int n, int m, int parity, const std::string& tree_spec,
                      int budget) {
    if (target == "dhard") return dhard_exact({n, m, false}, budget);
    if (target == "dhard-star") return dhard_exact({n, m, true}, budget);
    if (target == "dhost") return dhost_exact(parse_tree(tree_spec.empty() ? "edge" : tree_spec), budget);
    if (target == "parity") return parity_uniform_dist(n, parity, budget);
    if (target == "uniform") return ProductDist::unbiased(static_cast<size_t>(n)).expand(budget);
    throw CLI::ValidationError("--target must be dhard, dhard-star, dhost, parity, or uniform");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlocal: exact shallow-circuit sampling laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string tree_spec, name, target, file_a, file_b, emit_circuit, emit_function, out_path, fault;
    bool factored = false, as_json = false, star = false;
    int n = 1, m = -1, c_param = 1, parity = 0, d_local = 1, k_copies = 2;
    uint64_t seed = 20240501;
    int budget = kDefaultBudgetBits;
    size_t count = 10;
    std::string mode = "vertices";
    std::string beta_str = "1/2^0", lambda_str, kappa_str;

    app.add_option("--seed", seed, "PRNG seed recorded in every output");
    app.add_option("--budget", budget, "enumeration budget in bits (refuse beyond 2^budget)");

    auto* vq = app.add_subcommand("verify-quantum", "check the quantum circuit against the exact target");
    vq->add_option("--tree", tree_spec, "edge | path:k | comb:k | file:PATH")->required();
    vq->add_flag("--factored", factored, "force the factored simulation route");
    vq->add_option("--emit-circuit", emit_circuit, "write the circuit JSON here");
    vq->add_flag("--json", as_json);

    auto* vc = app.add_subcommand("verify-classical", "check a classical sampler against its target");
    vc->alias("verify-sampler");
    vc->add_option("--name", name, "parity | prop51 | prop52 | remark | reduction")->required();
    vc->add_option("--n", n);
    vc->add_option("--m", m);
    vc->add_option("--c", c_param, "steering block size for remark");
    vc->add_flag("--star", star);
    vc->add_option("--parity", parity);
    vc->add_option("--tree", tree_spec);
    vc->add_option("--emit-function", emit_function, "write the LocalFunction JSON here");
    vc->add_flag("--json", as_json);

    auto* ex = app.add_subcommand("exact", "emit an exact distribution as JSON");
    ex->add_option("--target", target)->required();
    ex->add_option("--n", n);
    ex->add_option("--m", m);
    ex->add_flag("--star", star);
    ex->add_option("--parity", parity);
    ex->add_option("--tree", tree_spec);
    ex->add_option("--out", out_path, "output path (stdout when omitted)");

    auto* tv = app.add_subcommand("tv", "exact total variation distance between two distribution files");
    tv->add_option("--a", file_a)->required();
    tv->add_option("--b", file_b)->required();

    auto* sa = app.add_subcommand("sample", "draw reproducible samples from a target");
    sa->add_option("--target", target)->required();
    sa->add_option("--n", n);
    sa->add_option("--m", m);
    sa->add_option("--parity", parity);
    sa->add_option("--tree", tree_spec);
    sa->add_option("--count", count);
    sa->add_flag("--star", star);
    sa->add_flag("--factored", factored, "sample dhost through the factored circuit route");

    auto* adv = app.add_subcommand("adversary", "minimize exact TV over bounded-locality functions");
    adv->add_option("--d", d_local);
    adv->add_option("--target", target)->required();
    adv->add_option("--n", n);
    adv->add_option("--m", m);
    adv->add_option("--parity", parity);
    adv->add_option("--tree", tree_spec);
    adv->add_flag("--json", as_json);

    auto* pot = app.add_subcommand("potential", "exact E[i^(|x|+2|y|)] of a target");
    pot->add_option("--target", target)->required();
    pot->add_option("--n", n);
    pot->add_option("--m", m);
    pot->add_option("--tree", tree_spec);
    pot->add_flag("--json", as_json);

    auto* dp = app.add_subcommand("directprod", "k-fold product experiment for the distance-1/8 witness");
    dp->add_option("--k", k_copies);
    dp->add_flag("--json", as_json);

    auto* el = app.add_subcommand("eliminate", "graph elimination on a LocalFunction dependency graph");
    el->add_option("--function", file_a, "LocalFunction JSON")->required();
    el->add_option("--mode", mode, "vertices | neighborhoods");
    el->add_option("--beta", beta_str, "dyadic, e.g. 1/2^0");
    el->add_option("--lambda", lambda_str, "dyadic; defaults to the hypothesis bound");
    el->add_option("--kappa", kappa_str, "dyadic; defaults to the left vertex count");
    el->add_flag("--json", as_json);

    bool quick = false;
    auto* rep = app.add_subcommand("report", "run the full verification battery");
    rep->add_flag("--json", as_json);
    rep->add_flag("--quick", quick, "skip the larger factored instances and shrink trial counts");
    rep->add_option("--inject-fault", fault, "perturb one truth table or gate (see docs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (vq->parsed()) return cmd_verify_quantum(tree_spec, factored, emit_circuit, as_json, budget);
        if (vc->parsed())
            return cmd_verify_classical(name, n, m, c_param, star, parity, tree_spec, emit_function,
                                        as_json, budget);
        if (ex->parsed()) {
            if (m < 0) m = n;
            if (star && target == "dhard") target = "dhard-star";
            json j = to_json(make_target(target, n, m, parity, tree_spec, budget));
            if (out_path.empty())
                std::cout << j.dump(2) << "\n";
            else
                write_json_file(out_path, j);
            return kExitOk;
        }
        if (tv->parsed()) {
            ExactDist a = exact_dist_from_json(load_json_file(file_a));
            ExactDist b = exact_dist_from_json(load_json_file(file_b));
            Dyadic dist = tv_distance(a, b);
            std::cout << dist.to_string() << " (" << dist.to_double() << ")\n";
            return kExitOk;
        }
        if (sa->parsed()) {
            if (m < 0) m = n;
            std::vector<BitString> samples;
            if (target == "dhard")
                samples = dhard_sampler({n, m, star}, seed, count);
            else if (target == "dhost" && factored)
                samples = factored_sampler(parse_tree(tree_spec.empty() ? "edge" : tree_spec), seed, count);
            else if (target == "dhost")
                samples = dhost_sampler(parse_tree(tree_spec.empty() ? "edge" : tree_spec), seed, count);
            else
                samples = sample(make_target(target, n, m, parity, tree_spec, budget), seed, count);
            for (const auto& s : samples) std::cout << s.to_string() << "\n";
            return kExitOk;
        }
        if (adv->parsed()) {
            if (m < 0) m = n;
            ExactDist t = make_target(target, n, m, parity, tree_spec, budget);
            auto result = adversary_search(d_local, t);
            json biases = json::array();
            for (const auto& bias : result.witness_biases.biases()) biases.push_back(bias.to_string());
            json j{{"d", d_local},
                   {"best_tv", result.best_tv.to_string()},
                   {"best_tv_decimal", result.best_tv.to_double()},
                   {"exact_optimum", result.rational_optimum_str},
                   {"complete_family", result.complete},
                   {"witness", to_json(result.witness)},
                   {"witness_biases", biases}};
            print_or_json(j, as_json,
                          "best_tv = " + result.best_tv.to_string() + " (" +
                              std::to_string(result.best_tv.to_double()) + "), exact optimum " +
                              result.rational_optimum_str + "\n");
            return kExitOk;
        }
        if (pot->parsed()) {
            if (m < 0) m = n;
            ExactDist t = make_target(target, n, m, parity, tree_spec, budget);
            GaussSqrt2 h = expected_h(t, n);
            json j{{"target", target},
                   {"n", n},
                   {"m", m},
                   {"E_h", h.to_string()},
                   {"modulus_squared", h.modulus_squared().to_string()}};
            print_or_json(j, as_json, "E[h] = " + h.to_string() + "\n");
            return kExitOk;
        }
        if (dp->parsed()) {
            LocalFunction shared(1, {OutputBit{{0}, {0, 1}}, OutputBit{{0}, {0, 1}}});
            ProductDist pd(std::vector<Dyadic>{Dyadic(1, 3)});
            auto repnow =
                direct_product_experiment(shared, pd, dhard_exact({1, 1, false}, budget), k_copies, budget);
            json j{{"k", k_copies},
                   {"per_copy_tv", repnow.per_copy_tv.to_string()},
                   {"kfold_tv", repnow.kfold_tv.to_string()},
                   {"kfold_tv_decimal", repnow.kfold_tv.to_double()},
                   {"bound", repnow.bound},
                   {"bound_holds", repnow.bound_holds}};
            print_or_json(j, as_json,
                          "k=" + std::to_string(k_copies) + ": kfold_tv = " + repnow.kfold_tv.to_string() +
                              ", bound = " + std::to_string(repnow.bound) + "\n");
            return repnow.bound_holds ? kExitOk : kExitCheckFailed;
        }
        if (el->parsed()) {
            LocalFunction f = local_function_from_json(load_json_file(file_a));
            DepGraph g = dep_graph(f);
            if (mode == "vertices") {
                Dyadic beta = Dyadic::parse(beta_str);
                Dyadic lambda =
                    lambda_str.empty()
                        ? Dyadic(detail::vertex_hypothesis_bound(std::max(1, g.left_degree_bound()), beta), 0)
                        : Dyadic::parse(lambda_str);
                auto r = eliminate_vertices(g, beta, lambda);
                bool verified = verify_nonconnected_vertices(g, r.removed_inputs, r.nonconnected_outputs);
                json j{{"mode", mode},
                       {"S", r.removed_inputs},
                       {"R", r.nonconnected_outputs},
                       {"bounds_met", r.bounds_met},
                       {"verified", verified}};
                print_or_json(j, as_json,
                              "|S| = " + std::to_string(r.removed_inputs.size()) + ", |R| = " +
                                  std::to_string(r.nonconnected_outputs.size()) + ", bounds " +
                                  (r.bounds_met ? "met" : "not met") + ", verified " +
                                  (verified ? "yes" : "NO") + "\n");
                return verified ? kExitOk : kExitCheckFailed;
            }
            Dyadic lambda = lambda_str.empty() ? Dyadic(g.left_count) : Dyadic::parse(lambda_str);
            Dyadic kappa = kappa_str.empty() ? Dyadic(g.left_count) : Dyadic::parse(kappa_str);
            auto r = eliminate_neighborhoods(
                g, [](int) { return Dyadic::one(); }, lambda, kappa);
            int t = 0;
            bool verified =
                r.ok && verify_nonconnected_neighborhoods(g, r.removed_inputs, r.indices, &t) && t <= r.t;
            json j{{"mode", mode},         {"ok", r.ok}, {"S", r.removed_inputs},
                   {"indices", r.indices}, {"t", r.t},   {"verified", verified},
                   {"message", r.message}};
            print_or_json(j, as_json,
                          r.ok ? ("r = " + std::to_string(r.indices.size()) + ", t = " + std::to_string(r.t) +
                                  ", verified " + (verified ? "yes" : "NO") + "\n")
                               : ("infeasible: " + r.message + "\n"));
            return r.ok && verified ? kExitOk : kExitCheckFailed;
        }
        if (rep->parsed()) {
            if (!fault.empty()) {
                const auto& ff = known_faults();
                if (std::find(ff.begin(), ff.end(), fault) == ff.end())
                    throw CLI::ValidationError("unknown fault: " + fault);
            }
            ReportConfig config;
            config.seed = seed;
            config.budget_bits = budget;
            config.fault = fault;
            config.quick = quick;
            Report r = run_report(config);
            if (as_json) {
                std::cout << report_to_json(r).dump(2) << "\n";
            } else {
                for (const auto& c : r.checks)
                    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name
                              << (c.tv.empty() ? "" : "  tv=" + c.tv)
                              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
                std::cout << (r.all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
            }
            return r.all_ok ? kExitOk : kExitCheckFailed;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
