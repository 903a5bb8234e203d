#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "spikeadd/circuit_io.hpp"
#include "spikeadd/cli.hpp"

namespace spikeadd::cli {
namespace {

struct Output {
    int code = 0;
    std::string out;
    std::string err;
};

template <typename Request, typename Fn>
Output call(Fn fn, const Request& req, const HardwareModel& hw = {}) {
    std::ostringstream out, err;
    const int code = fn(req, hw, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        result.push_back(line);
    }
    return result;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) {
        fields.push_back(f);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::size_t column(const std::string& name) {
    const auto& cols = sweep_csv_columns();
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
}

TEST(Parsing, BitRangesAndLists) {
    EXPECT_EQ(parse_bit_range("1..6").first, 1U);
    EXPECT_EQ(parse_bit_range("1..6").last, 6U);
    EXPECT_EQ(parse_bit_range("17").first, 17U);
    EXPECT_EQ(parse_bit_range("17").last, 17U);
    EXPECT_THROW((void)parse_bit_range("6..1"), std::invalid_argument);
    EXPECT_THROW((void)parse_bit_range("0..3"), std::invalid_argument);
    EXPECT_THROW((void)parse_bit_range("a..b"), std::invalid_argument);
    EXPECT_EQ(parse_adder_list("all").size(), 3U);
    EXPECT_EQ(parse_adder_list("dcta3,sequential"),
              (std::vector<AdderKind>{AdderKind::Dcta3, AdderKind::Sequential}));
    EXPECT_THROW((void)parse_adder_list("dcta4"), std::invalid_argument);
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_THROW((void)parse_format("xml"), std::invalid_argument);
}

TEST(CmdAdd, Examples) {
    AddRequest req;
    req.kind = AdderKind::Dcta2;
    req.bits = 8;
    req.x = "127";
    req.y = "127";
    req.format = Format::Json;
    auto r = call(cmd_add, req);
    EXPECT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("value"), "254");
    EXPECT_EQ(j.at("total_steps"), 4);
    EXPECT_TRUE(j.at("passed").get<bool>());

    req = AddRequest{};
    req.kind = AdderKind::Sequential;
    req.bits = 4;
    r = call(cmd_add, req);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("0 + 0 = 0"), std::string::npos) << r.out;

    req = AddRequest{};
    req.kind = AdderKind::Dcta3;
    req.bits = 17;
    req.x = "1";
    req.y = "1";
    r = call(cmd_add, req);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("1 + 1 = 2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("exact count"), std::string::npos) << r.out;
}

TEST(CmdAdd, ConstraintViolationExitsTwo) {
    AddRequest req;
    req.kind = AdderKind::Dcta2;
    req.bits = 17;
    req.x = "1";
    req.y = "1";
    const auto r = call(cmd_add, req);
    EXPECT_EQ(r.code, kExitConstraint);
    EXPECT_NE(r.err.find("WeightOverflow"), std::string::npos) << r.err;
}

TEST(CmdAdd, WritesSpikeCsv) {
    const auto path = std::filesystem::temp_directory_path() / "spikeadd_cli_spikes.csv";
    AddRequest req;
    req.kind = AdderKind::Sequential;
    req.bits = 2;
    req.x = "1";
    req.y = "1";
    req.spikes_csv = path;
    ASSERT_EQ(call(cmd_add, req).code, kExitOk);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto rows = lines(buffer.str());
    // The record is of the bare adder (ids as in export-circuit): C0 at step
    // 1 and S1 at step 3.
    const auto adder = build_sequential(2);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(rows[0], "step,neuron_id");
    EXPECT_EQ(rows[1], "1," + std::to_string(adder.carry[0].value));
    EXPECT_EQ(rows[2], "3," + std::to_string(adder.sum[1].value));
    std::filesystem::remove(path);
}

TEST(CmdInfo, Examples) {
    auto r = call(cmd_info, InfoRequest{AdderKind::Sequential, 8, {}, Format::Json});
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("theoretical").at("time"), 9);
    EXPECT_EQ(j.at("theoretical").at("neurons"), 16);
    EXPECT_EQ(j.at("theoretical").at("synapses"), 54);
    EXPECT_EQ(j.at("constructed").at("synapses"), 54);

    r = call(cmd_info, InfoRequest{AdderKind::Dcta2, 16, {}, Format::Json});
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("theoretical").at("synapses"), 335);
    EXPECT_EQ(j.at("status"), "at maximum");

    r = call(cmd_info, InfoRequest{AdderKind::Dcta3, 42, {}, Format::Human});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("status: at maximum"), std::string::npos) << r.out;

    r = call(cmd_info, InfoRequest{AdderKind::Dcta3, 43, {}, Format::Human});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("status: unsupported"), std::string::npos) << r.out;
}

TEST(CmdVerify, Examples) {
    VerifyRequest req;
    req.kinds = parse_adder_list("all");
    req.bits = parse_bit_range("1..6");
    EXPECT_EQ(call(cmd_verify, req).code, kExitOk);

    req.kinds = {AdderKind::Dcta2};
    req.bits = parse_bit_range("17");
    auto r = call(cmd_verify, req);
    EXPECT_EQ(r.code, kExitConstraint);
    EXPECT_NE(r.err.find("WeightOverflow"), std::string::npos) << r.err;

    req.kinds = {AdderKind::Sequential};
    req.bits = parse_bit_range("100");
    req.mode = VerifyMode::Random;
    req.trials = 200;
    req.options.relay_layers = 1;
    req.format = Format::Json;
    r = call(cmd_verify, req);
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out).at("passed").get<bool>());
}

TEST(CmdSweep, SequentialStepsAreNPlusThree) {
    SweepSpec spec;
    spec.kinds = {AdderKind::Sequential};
    spec.bits = parse_bit_range("1..70");
    const auto r = call(cmd_sweep, spec);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.err.find("clipping"), std::string::npos);
    EXPECT_TRUE(check_sweep_csv(r.out).empty());
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 63U);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        EXPECT_EQ(std::stoul(f[column("total_steps")]), std::stoul(f[column("n")]) + 3);
        EXPECT_EQ(f[column("passed")], "1");
    }
}

TEST(CmdSweep, Dcta2StepsConstant) {
    SweepSpec spec;
    spec.kinds = {AdderKind::Dcta2};
    spec.bits = parse_bit_range("1..16");
    const auto r = call(cmd_sweep, spec);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 17U);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(split(rows[i])[column("total_steps")], "4");
    }
}

TEST(CmdSweep, Dcta3SquareSynapses) {
    SweepSpec spec;
    spec.kinds = {AdderKind::Dcta3};
    spec.bits = parse_bit_range("1..36");
    const auto r = call(cmd_sweep, spec);
    for (const auto& row : lines(r.out)) {
        const auto f = split(row);
        if (f[0] == "adder") continue;
        const auto n = std::stoul(f[column("n")]);
        for (unsigned root : {2U, 3U, 4U, 5U, 6U}) {
            if (n == root * root) {
                EXPECT_EQ(std::stoul(f[column("synapses")]), 3 * n * root + 7 * n - 1) << n;
            }
        }
    }
}

TEST(CmdSweep, DeterministicOrderAndSchema) {
    SweepSpec spec;
    spec.kinds = {AdderKind::Sequential, AdderKind::Dcta3, AdderKind::Dcta2};
    spec.bits = parse_bit_range("1..20");
    spec.policy = InputPolicy::Random;
    spec.repeat = 2;
    const auto a = call(cmd_sweep, spec);
    const auto b = call(cmd_sweep, spec);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(check_sweep_csv(a.out).empty());
    const auto rows = lines(a.out);
    EXPECT_EQ(rows[0].substr(0, 6), "adder,");
    EXPECT_EQ(split(rows[1])[0], "dcta2");
    EXPECT_EQ(split(rows.back())[0], "sequential");
}

TEST(CheckSweepCsv, RejectsMalformed) {
    EXPECT_FALSE(check_sweep_csv("").empty());
    EXPECT_FALSE(check_sweep_csv("adder,n\n").empty());
    SweepSpec spec;
    spec.kinds = {AdderKind::Dcta2};
    spec.bits = parse_bit_range("1..3");
    const auto csv = call(cmd_sweep, spec).out;
    auto rows = lines(csv);
    std::swap(rows[1], rows[2]);
    std::string shuffled;
    for (const auto& r : rows) shuffled += r + "\n";
    EXPECT_FALSE(check_sweep_csv(shuffled).empty());
}

TEST(CmdExport, RoundTripsThroughCircuitJson) {
    ExportRequest req{AdderKind::Dcta3, 9, {}, std::nullopt};
    const auto r = call(cmd_export_circuit, req);
    ASSERT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("adder").at("kind"), "dcta3");
    const auto circuit = circuit_from_json(j);
    EXPECT_EQ(circuit.neuron_count(), 36U);
    EXPECT_EQ(circuit.synapse_count(), 3U * 9 * 3 + 7 * 9 - 1);
}

// End-to-end through the installed binary: exit codes only.
int run_binary(const std::string& args) {
    const std::string command = std::string(SPIKEADD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_binary("add --adder dcta2 --bits 8 --x 127 --y 127"), kExitOk);
    EXPECT_EQ(run_binary("verify --adder all --bits 1..6 --mode exhaustive"), kExitOk);
    EXPECT_EQ(run_binary("verify --adder dcta2 --bits 17"), kExitConstraint);
    EXPECT_EQ(run_binary("verify --adder sequential --bits 100 --relay-layers 1 --mode random --trials 100"),
              kExitOk);
    EXPECT_EQ(run_binary("info --adder dcta3 --bits 42"), kExitOk);
    EXPECT_EQ(run_binary("add --adder nope --bits 4 --x 1 --y 1"), kExitUsage);
    EXPECT_NE(run_binary("frobnicate"), kExitOk);
}

TEST(Binary, HardwareConfigFlag) {
    const auto path = std::filesystem::temp_directory_path() / "spikeadd_cli_hw.json";
    {
        std::ofstream out(path);
        out << R"({"max_delay": 10})";
    }
    EXPECT_EQ(run_binary("--hw-config " + path.string() + " add --adder sequential --bits 12 --x 1 --y 1"),
              kExitConstraint);
    EXPECT_EQ(run_binary("--hw-config " + path.string() + " add --adder sequential --bits 9 --x 1 --y 1"),
              kExitOk);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace spikeadd::cli
