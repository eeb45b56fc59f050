#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "qlocal/builders.hpp"
#include "qlocal/json_io.hpp"
#include "qlocal/report.hpp"
#include "qlocal/samplers.hpp"

using namespace qlocal;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QLOCAL_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& name) {
    return std::string(::testing::TempDir()) + "/" + name;
}

}  // namespace

TEST(JsonRoundTrip, ExactDist) {
    ExactDist d = dhard_exact({2, 2, false});
    json j = to_json(d);
    EXPECT_EQ(exact_dist_from_json(j), d);
    // the documented shape
    EXPECT_TRUE(j.contains("len"));
    EXPECT_TRUE(j.contains("pmf"));
    EXPECT_EQ(j["pmf"]["0000"].get<std::string>(), "9/2^5");
}

TEST(JsonRoundTrip, Tree) {
    for (const Tree& t : {make_edge(), make_path(4), comb_tree(3)}) {
        Tree back = tree_from_json(to_json(t));
        EXPECT_EQ(back.vertex_count, t.vertex_count);
        EXPECT_EQ(back.edges, t.edges);
        EXPECT_EQ(back.root, t.root);
    }
}

TEST(JsonRoundTrip, CircuitWithLayout) {
    Tree t = comb_tree(2);
    QCircuit c = build_dhost_circuit(t);
    c.layout = grid_layout_for(t);
    QCircuit back = circuit_from_json(to_json(c));
    EXPECT_EQ(back.qubit_count, c.qubit_count);
    EXPECT_EQ(back.depth(), c.depth());
    ASSERT_TRUE(back.layout.has_value());
    EXPECT_EQ(back.layout->coords, c.layout->coords);
    // semantics preserved: same measurement distribution
    ExactDist a = measure_dist(run(c, BitString(static_cast<size_t>(c.qubit_count))),
                               DhostRegisters{t.vertex_count}.xyw_coords());
    ExactDist b = measure_dist(run(back, BitString(static_cast<size_t>(back.qubit_count))),
                               DhostRegisters{t.vertex_count}.xyw_coords());
    EXPECT_EQ(a, b);
}

TEST(JsonRoundTrip, LocalFunction) {
    SamplerSpec s = build_prop_nc0_upper(2);
    LocalFunction back = local_function_from_json(to_json(s.function));
    EXPECT_EQ(back.input_count(), s.function.input_count());
    EXPECT_EQ(back.output_count(), s.function.output_count());
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        BitString in = BitString::from_index(rng.next() % (uint64_t{1} << s.function.input_count()),
                                             static_cast<size_t>(s.function.input_count()));
        EXPECT_EQ(back.evaluate(in), s.function.evaluate(in));
    }
}

TEST(Cli, VerifyQuantumAndClassical) {
    auto q = run_cli("verify-quantum --tree edge");
    EXPECT_EQ(q.exit_code, 0) << q.output;
    EXPECT_NE(q.output.find("tv = 0/2^0"), std::string::npos);
    auto c = run_cli("verify-classical --name prop52 --n 3");
    EXPECT_EQ(c.exit_code, 0) << c.output;
    EXPECT_NE(c.output.find("tv = 0/2^0"), std::string::npos);
    auto r = run_cli("verify-classical --name reduction --tree edge --json");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(json::parse(r.output).at("tv").get<std::string>(), "0/2^0");
}

TEST(Cli, DeterministicOutputBytes) {
    auto a = run_cli("sample --target dhard --n 2 --m 2 --count 20 --seed 99");
    auto b = run_cli("sample --target dhard --n 2 --m 2 --count 20 --seed 99");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.output, b.output);
    auto c = run_cli("report --json --quick --seed 5");
    auto d = run_cli("report --json --quick --seed 5");
    EXPECT_EQ(c.output, d.output);
}

TEST(Cli, ExactTvPipeline) {
    std::string pa = temp_path("dhard11.json");
    std::string pb = temp_path("mixed.json");
    ASSERT_EQ(run_cli("exact --target dhard --n 1 --m 1 --out " + pa).exit_code, 0);
    {
        ExactDist mixed =
            product(ProductDist::biased(1, Dyadic(1, 2)).expand(), ProductDist::unbiased(1).expand());
        write_json_file(pb, to_json(mixed));
    }
    auto r = run_cli("tv --a " + pa + " --b " + pb);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("3/2^3"), std::string::npos);
}

TEST(Cli, EmitCircuitRoundTrips) {
    std::string path = temp_path("compb2.json");
    auto r = run_cli("verify-quantum --tree comb:2 --emit-circuit " + path);
    EXPECT_EQ(r.exit_code, 0);
    QCircuit c = circuit_from_json(load_json_file(path));
    EXPECT_EQ(c.qubit_count, 19);
    EXPECT_EQ(c.depth(), 5);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run_cli("verify-quantum --tree hexagon").exit_code, 2);
    EXPECT_EQ(run_cli("verify-classical --name nope --n 2").exit_code, 2);
    EXPECT_EQ(run_cli("report --inject-fault bogus").exit_code, 2);
    EXPECT_EQ(run_cli("exact --target dhard --n 30 --m 1").exit_code, 2);  // budget
}

TEST(Report, JsonSchemaAndDeterminism) {
    ReportConfig config;
    config.seed = 11;
    config.quick = true;
    Report r = run_report(config);
    json j = report_to_json(r);
    EXPECT_TRUE(j.contains("version"));
    EXPECT_TRUE(j.contains("seed"));
    EXPECT_TRUE(j.contains("checks"));
    EXPECT_TRUE(j.contains("all_ok"));
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c.contains("name"));
        EXPECT_TRUE(c.contains("ok"));
    }
}

TEST(Report, FaultSensitivity) {
    ReportConfig clean;
    clean.quick = true;
    Report base = run_report(clean);
    std::map<std::string, bool> base_ok;
    for (const auto& c : base.checks) base_ok[c.name] = c.ok;
    const std::map<std::string, std::string> fault_to_check{
        {"prop51-table", "classical-prop51"},       {"prop52-table", "classical-prop52"},
        {"remark-table", "classical-remark-c1"},    {"reduction-table", "classical-reduction-edge"},
        {"dhost-gate-kind", "quantum-comb2"},       {"dhost-gate-drop", "quantum-comb2"},
        {"php-gate-drop", "php-exactness"}};
    for (const auto& [fault, check] : fault_to_check) {
        ASSERT_TRUE(base_ok.at(check)) << check << " must pass on the clean run";
        ReportConfig config;
        config.fault = fault;
        config.quick = true;
        Report r = run_report(config);
        bool found = false;
        for (const auto& c : r.checks) {
            if (c.name != check) continue;
            found = true;
            EXPECT_FALSE(c.ok) << "fault " << fault << " was not detected by " << check;
        }
        EXPECT_TRUE(found);
        EXPECT_FALSE(r.all_ok);
    }
}
