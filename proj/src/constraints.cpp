#include "spikeadd/constraints.hpp"

#include "spikeadd/errors.hpp"

namespace spikeadd {

bool supports_width(AdderKind kind, std::uint32_t n, const HardwareModel& hw,
                    const AdderOptions& options) {
    try {
        return validate(make_adder(kind, n, options, hw).circuit, hw).deployable();
    } catch (const ValueOutOfRange&) {
        // weights beyond 64-bit integers
        return false;
    }
}

std::uint32_t max_supported_bits(AdderKind kind, const HardwareModel& hw, const AdderOptions& options) {
    for (std::uint32_t n = 1; n <= kMaxSearchBits; ++n) {
        if (!supports_width(kind, n, hw, options)) {
            return n - 1;
        }
    }
    return kMaxSearchBits;
}

}  // namespace spikeadd
