#include "spikeadd/encoding.hpp"

#include "spikeadd/errors.hpp"

namespace spikeadd {

UInt pow2(std::uint32_t n) {
    UInt v = 1;
    return v << n;
}

BitVector encode_uint(const UInt& value, std::uint32_t n) {
    if (value < 0 || value >= pow2(n)) {
        throw ValueOutOfRange("value " + value.str() + " does not fit in " + std::to_string(n) +
                              " bits");
    }
    BitVector bits(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        bits.set(i, boost::multiprecision::bit_test(value, i));
    }
    return bits;
}

UInt to_uint(const BitVector& bits) {
    UInt v = 0;
    for (auto i : bits.ones()) {
        boost::multiprecision::bit_set(v, i);
    }
    return v;
}

DecodedSum read_output(const SpikeRecord& record, const Readout& readout) {
    if (readout.sum_step >= record.horizon() || readout.overflow_step >= record.horizon()) {
        throw ValueOutOfRange("read step lies beyond the record horizon");
    }
    DecodedSum out;
    out.value = to_uint(record.port_view(readout.sum_port, readout.sum_step));
    out.overflow = !record.port_view(readout.overflow_port, readout.overflow_step).none();
    return out;
}

namespace {

void require_on_schedule(const SpikeRecord& record, const std::string& port, Step expected) {
    for (auto step : record.port_active_steps(port)) {
        if (step != expected) {
            throw SpuriousSpike("port '" + port + "' fired at step " + std::to_string(step) +
                                ", expected only step " + std::to_string(expected));
        }
    }
}

}  // namespace

DecodedSum decode_output(const SpikeRecord& record, const Readout& readout) {
    auto out = read_output(record, readout);
    require_on_schedule(record, readout.sum_port, readout.sum_step);
    require_on_schedule(record, readout.overflow_port, readout.overflow_step);
    return out;
}

}  // namespace spikeadd
