#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spikeadd/adders.hpp"
#include "spikeadd/hardware.hpp"
#include "spikeadd/profiler.hpp"

namespace spikeadd::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitConstraint = 2;
inline constexpr int kExitUsage = 3;

enum class Format { Human, Json, Csv };

[[nodiscard]] Format parse_format(const std::string& name);

struct BitRange {
    std::uint32_t first = 1;
    std::uint32_t last = 1;
};

/// "a..b" (inclusive) or a single width "a". Throws std::invalid_argument.
[[nodiscard]] BitRange parse_bit_range(const std::string& text);

/// "all", a single kind, or a comma-separated list.
[[nodiscard]] std::vector<AdderKind> parse_adder_list(const std::string& text);

struct AddRequest {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t bits = 8;
    std::string x = "0";
    std::string y = "0";
    AdderOptions options;
    Format format = Format::Human;
    std::optional<std::filesystem::path> spikes_csv;
};

struct InfoRequest {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t bits = 8;
    AdderOptions options;
    Format format = Format::Human;
};

struct VerifyRequest {
    std::vector<AdderKind> kinds;
    BitRange bits;
    VerifyMode mode = VerifyMode::Exhaustive;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
    AdderOptions options;
    Format format = Format::Human;
};

enum class InputPolicy { WorstCase, Random, Fixed };

[[nodiscard]] InputPolicy parse_input_policy(const std::string& name);

struct SweepSpec {
    std::vector<AdderKind> kinds;
    BitRange bits;
    InputPolicy policy = InputPolicy::WorstCase;
    std::string x = "0";  // Fixed policy
    std::string y = "0";
    std::uint64_t seed = 42;
    std::uint32_t repeat = 1;
    AdderOptions options;
    std::optional<std::filesystem::path> output;  // stdout when empty
};

struct ExportRequest {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t bits = 8;
    AdderOptions options;
    std::optional<std::filesystem::path> output;
};

int cmd_add(const AddRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& err);
int cmd_info(const InfoRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepSpec& spec, const HardwareModel& hw, std::ostream& out, std::ostream& err);
int cmd_export_circuit(const ExportRequest& req, const HardwareModel& hw, std::ostream& out,
                       std::ostream& err);

/// Profile columns, reference constants for the von Neumann and streaming
/// adders, then an error note.
[[nodiscard]] const std::vector<std::string>& sweep_csv_columns();

/// Checks header, field count and types of every row, and (adder, n) order.
/// Returns the problems found; empty means the CSV conforms.
[[nodiscard]] std::vector<std::string> check_sweep_csv(const std::string& csv);

}  // namespace spikeadd::cli
