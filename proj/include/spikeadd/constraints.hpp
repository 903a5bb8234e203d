#pragma once

#include <cstdint>

#include "spikeadd/adders.hpp"
#include "spikeadd/hardware.hpp"

namespace spikeadd {

/// Upper end of the width search in max_supported_bits.
inline constexpr std::uint32_t kMaxSearchBits = 4096;

/// Largest n for which the adder builds and validates under `hw`, found by
/// scanning upward from 1 until the first rejected width. Returns 0 if even
/// one bit is rejected, kMaxSearchBits if nothing was rejected.
[[nodiscard]] std::uint32_t max_supported_bits(AdderKind kind, const HardwareModel& hw = {},
                                               const AdderOptions& options = {});

/// True iff make_adder(kind, n, options, hw) validates cleanly.
[[nodiscard]] bool supports_width(AdderKind kind, std::uint32_t n, const HardwareModel& hw = {},
                                  const AdderOptions& options = {});

}  // namespace spikeadd
