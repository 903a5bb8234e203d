#include "spikeadd/profiler.hpp"

#include <cstdio>

#include "spikeadd/errors.hpp"

namespace spikeadd {

Harness wrap_with_harness(const AdderDescriptor& adder) {
    const auto& inner = adder.circuit;
    const auto n = adder.n;
    CircuitBuilder b;
    for (const auto& neuron : inner.neurons()) {
        b.add_neuron(neuron.threshold, neuron.bias);
    }
    b.add_input_port(adder.x_port, n);
    b.add_input_port(adder.y_port, n);

    Harness h;
    h.x_inputs = b.add_neurons(n, 1);
    h.y_inputs = b.add_neurons(n, 1);
    h.outputs = b.add_neurons(n, 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        b.connect(b.input_bit(adder.x_port, i), h.x_inputs[i], 1, 0, 1);
        b.connect(b.input_bit(adder.y_port, i), h.y_inputs[i], 1, 0, 1);
    }

    const auto x_index = inner.input_port_index(adder.x_port);
    const auto y_index = inner.input_port_index(adder.y_port);
    for (const auto& s : inner.synapses()) {
        Source pre = s.pre;
        if (const auto* bit = std::get_if<InputBit>(&s.pre)) {
            if (bit->port == x_index) {
                pre = h.x_inputs[bit->bit];
            } else if (bit->port == y_index) {
                pre = h.y_inputs[bit->bit];
            } else {
                throw InvalidCircuit("adder has an input port other than its operands");
            }
        }
        b.connect(pre, s.post, s.mantissa, s.exponent, s.delay);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        b.connect(adder.sum[i], h.outputs[i], 1, 0, 1);
    }
    b.add_output_port(adder.sum_port, h.outputs);
    b.add_output_port(adder.overflow_port, {adder.carry.back()});
    h.circuit = std::move(b).build();

    // One step into the input group, one step out of the output group.
    h.total_steps = adder.latency + 2;
    h.horizon = h.total_steps + 1;
    h.readout = Readout{adder.sum_port, adder.overflow_port, h.total_steps, adder.overflow_latency + 1};
    return h;
}

ProfileReport profile(const AdderDescriptor& adder, const UInt& x, const UInt& y, const HardwareModel& hw) {
    validate(adder.circuit, hw).raise(to_string(adder.kind) + " adder with " + std::to_string(adder.n) +
                                      " bits");
    const auto expected = reference_add(x, y, adder.n);
    const auto harness = wrap_with_harness(adder);

    ProfileReport r;
    r.kind = adder.kind;
    r.n = adder.n;
    r.x = x;
    r.y = y;
    r.total_steps = harness.total_steps;
    r.neurons = harness.circuit.neuron_count();
    r.synapses = adder.circuit.synapse_count();
    r.core_fraction = core_usage(adder.circuit, hw).fraction;

    const Simulator sim(harness.circuit);
    const auto record = sim.run(adder.schedule(x, y, 0), harness.horizon);
    r.spikes = record.spike_count();
    r.synaptic_events = record.synaptic_events();

    try {
        const auto got = decode_output(record, harness.readout);
        r.result = got.value;
        r.overflow = got.overflow;
        r.passed = got == expected;
        if (!r.passed) {
            r.error = "result differs from reference " + expected.value.str();
        }
    } catch (const SpuriousSpike& e) {
        const auto got = read_output(record, harness.readout);
        r.result = got.value;
        r.overflow = got.overflow;
        r.passed = false;
        r.error = e.what();
    }
    return r;
}

const std::vector<std::string>& profile_csv_columns() {
    static const std::vector<std::string> columns{
        "adder", "n",        "x",             "y",      "total_steps", "spikes", "synaptic_events",
        "neurons", "synapses", "core_fraction", "result", "overflow",    "passed"};
    return columns;
}

std::vector<std::string> profile_csv_fields(const ProfileReport& r) {
    char fraction[32];
    std::snprintf(fraction, sizeof fraction, "%.6f", r.core_fraction);
    return {to_string(r.kind),
            std::to_string(r.n),
            r.x.str(),
            r.y.str(),
            std::to_string(r.total_steps),
            std::to_string(r.spikes),
            std::to_string(r.synaptic_events),
            std::to_string(r.neurons),
            std::to_string(r.synapses),
            fraction,
            r.result.str(),
            r.overflow ? "1" : "0",
            r.passed ? "1" : "0"};
}

}  // namespace spikeadd
