#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spikeadd/circuit.hpp"

namespace spikeadd {

/// Precision and capacity limits of the neuromorphic target.
///
/// Weights are sign-magnitude: |mantissa| < 2^weight_mantissa_bits, and the
/// exponent is a multiple of weight_mantissa_bits up to max_weight_exponent
/// (one synapse group per exponent step). Biases must satisfy
/// |bias| <= bias_limit.
struct HardwareModel {
    static constexpr const char* kConfigEnv = "SPIKEADD_HW_CONFIG";

    std::uint32_t max_delay = 63;
    std::uint32_t weight_mantissa_bits = 8;
    std::uint32_t max_weight_exponent = 8;
    std::int64_t bias_limit = 126;
    std::uint32_t neurons_per_core_base = 8192;
    bool delay_bits_halving = true;

    /// Throws std::invalid_argument if any limit is not positive.
    void check() const;

    friend bool operator==(const HardwareModel&, const HardwareModel&) = default;
};

void to_json(nlohmann::json& j, const HardwareModel& hw);
/// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, HardwareModel& hw);

[[nodiscard]] HardwareModel load_hardware_model(const std::filesystem::path& path);

/// Explicit path if given, otherwise the file named by SPIKEADD_HW_CONFIG,
/// otherwise the defaults.
[[nodiscard]] HardwareModel resolve_hardware_model(const std::optional<std::filesystem::path>& path);

struct QuantizedWeight {
    std::int64_t mantissa = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const QuantizedWeight&, const QuantizedWeight&) = default;
};

/// Smallest admissible exponent whose mantissa is integral and in range.
/// Throws WeightOverflow.
[[nodiscard]] QuantizedWeight quantize_weight(std::int64_t weight, const HardwareModel& hw);
[[nodiscard]] std::optional<QuantizedWeight> try_quantize_weight(std::int64_t weight,
                                                                 const HardwareModel& hw);

/// Largest weight magnitude the model can express.
[[nodiscard]] std::int64_t max_weight_magnitude(const HardwareModel& hw);

enum class LimitKind { DelayExceeded, WeightOverflow, BiasExceeded };

[[nodiscard]] std::string to_string(LimitKind kind);

struct Violation {
    std::string element;  // "synapse 12", "neuron 3"
    LimitKind limit;
    std::int64_t required = 0;
    std::int64_t allowed = 0;
};

struct ViolationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool deployable() const { return violations.empty(); }
    [[nodiscard]] std::size_t count(LimitKind kind) const;
    [[nodiscard]] std::string summary() const;

    /// Throws DelayOverflow, WeightOverflow or BiasOverflow for the first
    /// violation, prefixed with `context`.
    void raise(const std::string& context) const;
};

[[nodiscard]] ViolationReport validate(const Circuit& circuit, const HardwareModel& hw);

struct CoreUsage {
    std::uint32_t max_delay = 0;
    std::uint32_t delay_bits = 0;
    std::uint64_t capacity = 0;
    std::size_t neurons = 0;
    double fraction = 0.0;
};

/// Bits needed to store a delay value: ceil(log2(max_delay + 1)).
[[nodiscard]] std::uint32_t delay_bits(std::uint32_t max_delay);

/// Fraction of one core's neuron capacity used. Capacity halves per delay bit
/// when hw.delay_bits_halving is set.
[[nodiscard]] CoreUsage core_usage(const Circuit& circuit, const HardwareModel& hw);
[[nodiscard]] CoreUsage core_usage(std::size_t neurons, std::uint32_t max_delay,
                                   const HardwareModel& hw);

}  // namespace spikeadd
