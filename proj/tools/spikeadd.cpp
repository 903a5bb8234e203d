// Command-line front end: add, info, verify, sweep, export-circuit.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spikeadd/cli.hpp"

namespace sc = spikeadd::cli;

namespace {

struct CommonFlags {
    std::string adder = "sequential";
    std::uint32_t bits = 8;
    std::uint32_t relay_layers = 0;
    bool per_neuron_thresholds = false;
    std::string format = "human";

    [[nodiscard]] spikeadd::AdderOptions options() const {
        return spikeadd::AdderOptions{relay_layers, per_neuron_thresholds};
    }
};

void add_adder_flags(CLI::App* cmd, CommonFlags& flags, bool with_bits = true) {
    if (with_bits) {
        cmd->add_option("--bits,-n", flags.bits, "Operand width in bits")->check(CLI::Range(1U, 4096U));
    }
    cmd->add_option("--relay-layers", flags.relay_layers, "Relay neuron layers (sequential adder)");
    cmd->add_flag("--per-neuron-thresholds", flags.per_neuron_thresholds,
                  "DCTA3: individual thresholds instead of shared threshold plus bias");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spiking threshold-gate adders: simulate, verify and profile"};
    app.require_subcommand(1);

    std::optional<std::string> hw_config;
    app.add_option("--hw-config", hw_config,
                   std::string("Hardware model JSON (default: $") + spikeadd::HardwareModel::kConfigEnv + ")");

    CommonFlags add_flags;
    std::string add_x = "0";
    std::string add_y = "0";
    std::optional<std::string> spikes_path;
    auto* add = app.add_subcommand("add", "Add two numbers with one adder and check the result");
    add->add_option("--adder,-a", add_flags.adder, "sequential | dcta2 | dcta3")->required();
    add_adder_flags(add, add_flags);
    add->add_option("--x", add_x, "First operand")->required();
    add->add_option("--y", add_y, "Second operand")->required();
    add->add_option("--format", add_flags.format, "human | json | csv");
    add->add_option("--spikes", spikes_path, "Write the spike record (step,neuron_id) to this CSV");

    CommonFlags info_flags;
    auto* info = app.add_subcommand("info", "Show resource counts, latency and limits of an adder");
    info->add_option("--adder,-a", info_flags.adder, "sequential | dcta2 | dcta3")->required();
    add_adder_flags(info, info_flags);
    info->add_option("--format", info_flags.format, "human | json");

    CommonFlags verify_flags;
    verify_flags.adder = "all";
    std::string verify_bits = "1..6";
    std::string verify_mode = "exhaustive";
    std::uint64_t verify_trials = 10000;
    std::uint64_t verify_seed = 42;
    auto* verify = app.add_subcommand("verify", "Compare adders against integer addition");
    verify->add_option("--adder,-a", verify_flags.adder, "all, one adder or a comma-separated list");
    verify->add_option("--bits,-n", verify_bits, "Width or inclusive range a..b");
    add_adder_flags(verify, verify_flags, false);
    verify->add_option("--mode", verify_mode, "exhaustive | random");
    verify->add_option("--trials", verify_trials, "Pairs per width in random mode");
    verify->add_option("--seed", verify_seed, "Seed for random mode");
    verify->add_option("--format", verify_flags.format, "human | json | csv");

    CommonFlags sweep_flags;
    sweep_flags.adder = "all";
    std::string sweep_bits = "1..16";
    std::string sweep_input = "worst-case";
    std::string sweep_x = "0";
    std::string sweep_y = "0";
    std::uint64_t sweep_seed = 42;
    std::uint32_t sweep_repeat = 1;
    std::optional<std::string> sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Profile adders over a bit range and write CSV");
    sweep->add_option("--adder,-a", sweep_flags.adder, "all, one adder or a comma-separated list");
    sweep->add_option("--bits,-n", sweep_bits, "Inclusive range a..b, clipped per adder");
    add_adder_flags(sweep, sweep_flags, false);
    sweep->add_option("--input", sweep_input, "worst-case | random | fixed");
    sweep->add_option("--x", sweep_x, "First operand for --input fixed");
    sweep->add_option("--y", sweep_y, "Second operand for --input fixed");
    sweep->add_option("--seed", sweep_seed, "Seed for --input random");
    sweep->add_option("--repeat", sweep_repeat, "Runs per point; counters must agree")->check(CLI::PositiveNumber);
    sweep->add_option("--out,-o", sweep_out, "Output CSV path (default stdout)");

    CommonFlags export_flags;
    std::optional<std::string> export_out;
    auto* export_cmd = app.add_subcommand("export-circuit", "Write an adder circuit as JSON");
    export_cmd->add_option("--adder,-a", export_flags.adder, "sequential | dcta2 | dcta3")->required();
    add_adder_flags(export_cmd, export_flags);
    export_cmd->add_option("--out,-o", export_out, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<std::filesystem::path> config;
        if (hw_config) {
            config = *hw_config;
        }
        const auto hw = spikeadd::resolve_hardware_model(config);

        if (*add) {
            sc::AddRequest req;
            req.kind = spikeadd::parse_adder_kind(add_flags.adder);
            req.bits = add_flags.bits;
            req.x = add_x;
            req.y = add_y;
            req.options = add_flags.options();
            req.format = sc::parse_format(add_flags.format);
            if (spikes_path) {
                req.spikes_csv = *spikes_path;
            }
            return sc::cmd_add(req, hw, std::cout, std::cerr);
        }
        if (*info) {
            sc::InfoRequest req{spikeadd::parse_adder_kind(info_flags.adder), info_flags.bits,
                                info_flags.options(), sc::parse_format(info_flags.format)};
            return sc::cmd_info(req, hw, std::cout, std::cerr);
        }
        if (*verify) {
            sc::VerifyRequest req;
            req.kinds = sc::parse_adder_list(verify_flags.adder);
            req.bits = sc::parse_bit_range(verify_bits);
            if (verify_mode == "exhaustive") {
                req.mode = spikeadd::VerifyMode::Exhaustive;
            } else if (verify_mode == "random") {
                req.mode = spikeadd::VerifyMode::Random;
            } else {
                throw std::invalid_argument("unknown mode '" + verify_mode + "'");
            }
            req.trials = verify_trials;
            req.seed = verify_seed;
            req.options = verify_flags.options();
            req.format = sc::parse_format(verify_flags.format);
            return sc::cmd_verify(req, hw, std::cout, std::cerr);
        }
        if (*sweep) {
            sc::SweepSpec spec;
            spec.kinds = sc::parse_adder_list(sweep_flags.adder);
            spec.bits = sc::parse_bit_range(sweep_bits);
            spec.policy = sc::parse_input_policy(sweep_input);
            spec.x = sweep_x;
            spec.y = sweep_y;
            spec.seed = sweep_seed;
            spec.repeat = sweep_repeat;
            spec.options = sweep_flags.options();
            if (sweep_out) {
                spec.output = *sweep_out;
            }
            return sc::cmd_sweep(spec, hw, std::cout, std::cerr);
        }
        if (*export_cmd) {
            sc::ExportRequest req{spikeadd::parse_adder_kind(export_flags.adder), export_flags.bits,
                                  export_flags.options(), std::nullopt};
            if (export_out) {
                req.output = *export_out;
            }
            return sc::cmd_export_circuit(req, hw, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sc::kExitUsage;
    }
    return sc::kExitUsage;
}
