#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "spikeadd/bits.hpp"
#include "spikeadd/simulator.hpp"

namespace spikeadd {

/// Arbitrary-width unsigned operand. Adders go past 64 bits (relay and
/// per-neuron-threshold variants), so plain uint64_t is not enough.
using UInt = boost::multiprecision::cpp_int;

/// 2^n
[[nodiscard]] UInt pow2(std::uint32_t n);

/// Binary expansion, LSB at index 0. Throws ValueOutOfRange unless 0 <= value < 2^n.
[[nodiscard]] BitVector encode_uint(const UInt& value, std::uint32_t n);

[[nodiscard]] UInt to_uint(const BitVector& bits);

/// Where to read one addition's result from a record.
struct Readout {
    std::string sum_port = "sum";
    std::string overflow_port = "overflow";
    Step sum_step = 0;
    Step overflow_step = 0;
};

struct DecodedSum {
    UInt value;
    bool overflow = false;

    friend bool operator==(const DecodedSum&, const DecodedSum&) = default;
};

/// Reads the sum bits at `readout.sum_step` and the overflow bit at
/// `readout.overflow_step`. Throws SpuriousSpike if any neuron of either port
/// fired at another step, and ValueOutOfRange if a read step is past the horizon.
[[nodiscard]] DecodedSum decode_output(const SpikeRecord& record, const Readout& readout);

/// Same read without the off-schedule check, for records holding several
/// pipelined additions.
[[nodiscard]] DecodedSum read_output(const SpikeRecord& record, const Readout& readout);

}  // namespace spikeadd
