#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spikeadd/adders.hpp"
#include "spikeadd/encoding.hpp"
#include "spikeadd/hardware.hpp"
#include "spikeadd/simulator.hpp"

namespace spikeadd {

/// ((x + y) mod 2^n, x + y >= 2^n) by big-integer arithmetic only.
/// Throws ValueOutOfRange unless both operands fit in n bits.
[[nodiscard]] DecodedSum reference_add(const UInt& x, const UInt& y, std::uint32_t n);

/// Default width cap for exhaustive verification.
inline constexpr std::uint32_t kExhaustiveCap = 8;

/// Operand source for randomized runs: std::mt19937_64 (fully specified by
/// the C++ standard) seeded with the run seed. An n-bit operand is built
/// from ceil(n / 64) consecutive 64-bit outputs, least significant word
/// first, truncated to n bits; x is drawn before y.
class OperandGenerator {
public:
    explicit OperandGenerator(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] UInt next(std::uint32_t n);
    [[nodiscard]] std::pair<UInt, UInt> next_pair(std::uint32_t n);

private:
    std::mt19937_64 engine_;
};

/// 2^(n-1) - 1, the operand that maximizes spiking when added to itself.
[[nodiscard]] UInt worst_case_operand(std::uint32_t n);

/// Builds the stimulus, runs the adder for latency + max_delay + 1 steps and
/// decodes the result strictly (SpuriousSpike on off-schedule output spikes).
[[nodiscard]] DecodedSum simulate_addition(const Simulator& sim, const AdderDescriptor& adder,
                                           const UInt& x, const UInt& y);

enum class VerifyMode { Exhaustive, Random };

struct VerificationFailure {
    UInt x;
    UInt y;
    DecodedSum expected;
    std::optional<DecodedSum> got;  // empty when decoding itself failed
    std::string error;
};

struct VerificationReport {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t n = 0;
    AdderOptions options;
    VerifyMode mode = VerifyMode::Exhaustive;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::vector<VerificationFailure> failures;  // ordered by (x, y)
    std::uint64_t spurious_spikes = 0;          // failures caused by off-schedule outputs

    [[nodiscard]] bool passed() const { return failures.empty(); }
};

[[nodiscard]] nlohmann::json to_json(const VerificationReport& report);

/// Every operand pair of width n. Throws the constraint errors of
/// build_adder, then CapExceeded above `cap`.
[[nodiscard]] VerificationReport verify_exhaustive(AdderKind kind, std::uint32_t n,
                                                   const AdderOptions& options = {},
                                                   const HardwareModel& hw = {},
                                                   std::uint32_t cap = kExhaustiveCap);

/// `trials` pairs (at least three): (0, 0), (2^n - 1, 2^n - 1) and the
/// worst-case pair first, then seeded random pairs.
[[nodiscard]] VerificationReport verify_random(AdderKind kind, std::uint32_t n, std::uint64_t trials,
                                               std::uint64_t seed, const AdderOptions& options = {},
                                               const HardwareModel& hw = {});

/// Checks an explicit list of pairs against reference_add.
[[nodiscard]] VerificationReport verify_pairs(const AdderDescriptor& adder,
                                              const std::vector<std::pair<UInt, UInt>>& pairs);

}  // namespace spikeadd
