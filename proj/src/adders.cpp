#include "spikeadd/adders.hpp"

#include <algorithm>
#include <stdexcept>

#include "spikeadd/errors.hpp"

namespace spikeadd {

namespace {

std::uint32_t ceil_sqrt(std::uint32_t n) {
    std::uint32_t r = 0;
    while (std::uint64_t{r} * r < n) {
        ++r;
    }
    return r;
}

bool is_perfect_square(std::uint32_t n) {
    const auto r = ceil_sqrt(n);
    return std::uint64_t{r} * r == n;
}

std::int64_t pow2i(std::uint32_t k) {
    if (k > 62) {
        throw ValueOutOfRange("weight 2^" + std::to_string(k) + " does not fit in 64 bits");
    }
    return std::int64_t{1} << k;
}

void require_width(std::uint32_t n) {
    if (n == 0) {
        throw ValueOutOfRange("adder width must be at least 1 bit");
    }
}

/// Quantized when representable; otherwise stored raw so validate() reports it.
void connect_weight(CircuitBuilder& b, Source pre, NeuronId post, std::int64_t weight,
                    std::uint32_t delay, const HardwareModel& hw) {
    if (auto q = try_quantize_weight(weight, hw)) {
        b.connect(pre, post, q->mantissa, q->exponent, delay);
    } else {
        b.connect(pre, post, weight, 0, delay);
    }
}

CircuitBuilder adder_builder(std::uint32_t n) {
    CircuitBuilder b;
    b.add_input_port("x", n);
    b.add_input_port("y", n);
    return b;
}

void finish_ports(CircuitBuilder& b, AdderDescriptor& d) {
    b.add_output_port(d.sum_port, d.sum);
    b.add_output_port(d.overflow_port, {d.carry.back()});
}

void check_descriptor(const AdderDescriptor& d, const HardwareModel& hw) {
    validate(d.circuit, hw).raise(to_string(d.kind) + " adder with " + std::to_string(d.n) + " bits");
}

}  // namespace

std::string to_string(AdderKind kind) {
    switch (kind) {
        case AdderKind::Sequential:
            return "sequential";
        case AdderKind::Dcta2:
            return "dcta2";
        case AdderKind::Dcta3:
            return "dcta3";
    }
    return "?";
}

AdderKind parse_adder_kind(const std::string& name) {
    for (auto kind : kAllAdderKinds) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown adder '" + name + "'");
}

std::uint32_t GroupPartition::largest() const {
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

GroupPartition partition_groups(std::uint32_t n) {
    require_width(n);
    const std::uint32_t group_size = (n + ceil_sqrt(n) - 1) / ceil_sqrt(n);
    GroupPartition p;
    for (std::uint32_t first = 0; first < n; first += group_size) {
        p.first_bit.push_back(first);
        p.sizes.push_back(std::min(group_size, n - first));
    }
    for (std::uint32_t g = 0; g < p.sizes.size(); ++g) {
        for (std::uint32_t j = 0; j < p.sizes[g]; ++j) {
            p.group_of.push_back(g);
            p.index_in_group.push_back(j);
        }
    }
    return p;
}

Readout AdderDescriptor::readout(Step injected_at) const {
    return Readout{sum_port, overflow_port, injected_at + latency, injected_at + overflow_latency};
}

InputSchedule AdderDescriptor::schedule(const UInt& x, const UInt& y, Step at) const {
    InputSchedule s;
    s.add(at, x_port, encode_uint(x, n));
    s.add(at, y_port, encode_uint(y, n));
    return s;
}

ResourceCounts theoretical_resources(AdderKind kind, std::uint32_t n) {
    require_width(n);
    const std::uint64_t w = n;
    switch (kind) {
        case AdderKind::Sequential:
            return {w + 1, 2 * w, 7 * w - 2, true};
        case AdderKind::Dcta2:
            return {2, 2 * w, w * w + 5 * w - 1, true};
        case AdderKind::Dcta3: {
            if (is_perfect_square(n)) {
                const std::uint64_t root = ceil_sqrt(n);
                return {3, 4 * w, 3 * w * root + 7 * w - 1, true};
            }
            // Sum gates, then per group: generate and propagate fan-in of the
            // positions, carries with two own inputs plus two per lower group.
            const auto p = partition_groups(n);
            std::uint64_t synapses = 4 * w - 1;
            for (std::uint64_t i = 0; i < p.groups(); ++i) {
                const std::uint64_t s = p.sizes[i];
                synapses += 2 * s * (s + 1) + s * (2 + 2 * i);
            }
            return {3, 4 * w, synapses, false};
        }
    }
    throw std::invalid_argument("unknown adder kind");
}

std::vector<NeuronId> attach_sum_gates(CircuitBuilder& b, std::uint32_t n,
                                       std::span<const NeuronId> carries, const SumTiming& timing) {
    if (carries.size() != n) {
        throw InvalidCircuit("sum gates need one carry neuron per bit");
    }
    auto sums = b.add_neurons(n, 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        b.connect(b.input_bit("x", i), sums[i], 1, 0, timing.operand[i]);
        b.connect(b.input_bit("y", i), sums[i], 1, 0, timing.operand[i]);
        if (i > 0) {
            b.connect(carries[i - 1], sums[i], 1, 0, timing.carry_in[i]);
        }
        b.connect(carries[i], sums[i], -2, 0, timing.carry_out[i]);
    }
    return sums;
}

Circuit insert_relays(const Circuit& circuit, std::uint32_t max_delay, std::uint32_t layers,
                      std::vector<NeuronId>* relays) {
    CircuitBuilder b;
    for (const auto& n : circuit.neurons()) {
        b.add_neuron(n.threshold, n.bias);
    }
    for (const auto& p : circuit.input_ports()) {
        b.add_input_port(p.name, p.width);
    }
    for (const auto& s : circuit.synapses()) {
        const std::uint32_t hops = (s.delay + max_delay - 1) / max_delay;
        if (hops <= 1 || hops - 1 > layers) {
            b.connect(s.pre, s.post, s.mantissa, s.exponent, s.delay);
            continue;
        }
        Source from = s.pre;
        for (std::uint32_t k = 0; k + 1 < hops; ++k) {
            const auto relay = b.add_neuron(1);
            if (relays != nullptr) {
                relays->push_back(relay);
            }
            b.connect(from, relay, 1, 0, max_delay);
            from = relay;
        }
        b.connect(from, s.post, s.mantissa, s.exponent, s.delay - (hops - 1) * max_delay);
    }
    for (const auto& p : circuit.output_ports()) {
        b.add_output_port(p.name, p.neurons);
    }
    return std::move(b).build();
}

AdderDescriptor make_sequential(std::uint32_t n, std::uint32_t relay_layers, const HardwareModel& hw) {
    require_width(n);
    AdderDescriptor d;
    d.kind = AdderKind::Sequential;
    d.n = n;
    d.latency = n + 1;
    d.overflow_latency = n;
    d.relay_layers = relay_layers;

    auto b = adder_builder(n);
    // C_i fires at t0 + i + 1: operand bits wait i + 1 steps, the previous
    // carry arrives after one hop.
    d.carry = b.add_neurons(n, 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        b.connect(b.input_bit("x", i), d.carry[i], 1, 0, i + 1);
        b.connect(b.input_bit("y", i), d.carry[i], 1, 0, i + 1);
        if (i > 0) {
            b.connect(d.carry[i - 1], d.carry[i], 1, 0, 1);
        }
    }
    // Every S_i fires at t0 + n + 1.
    SumTiming timing;
    for (std::uint32_t i = 0; i < n; ++i) {
        timing.operand.push_back(n + 1);
        timing.carry_in.push_back(n + 1 - i);
        timing.carry_out.push_back(n - i);
    }
    d.sum = attach_sum_gates(b, n, d.carry, timing);
    finish_ports(b, d);
    d.circuit = std::move(b).build();
    if (d.circuit.max_delay() > hw.max_delay && relay_layers > 0) {
        d.circuit = insert_relays(d.circuit, hw.max_delay, relay_layers, &d.relays);
    }
    return d;
}

AdderDescriptor make_dcta2(std::uint32_t n, const HardwareModel& hw) {
    require_width(n);
    AdderDescriptor d;
    d.kind = AdderKind::Dcta2;
    d.n = n;
    d.latency = 2;
    d.overflow_latency = 1;

    auto b = adder_builder(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        d.carry.push_back(b.add_neuron(pow2i(i + 1)));
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j <= i; ++j) {
            connect_weight(b, b.input_bit("x", j), d.carry[i], pow2i(j), 1, hw);
            connect_weight(b, b.input_bit("y", j), d.carry[i], pow2i(j), 1, hw);
        }
    }
    SumTiming timing{std::vector<std::uint32_t>(n, 2), std::vector<std::uint32_t>(n, 1),
                     std::vector<std::uint32_t>(n, 1)};
    d.sum = attach_sum_gates(b, n, d.carry, timing);
    finish_ports(b, d);
    d.circuit = std::move(b).build();
    return d;
}

AdderDescriptor make_dcta3(std::uint32_t n, bool per_neuron_thresholds, const HardwareModel& hw) {
    require_width(n);
    AdderDescriptor d;
    d.kind = AdderKind::Dcta3;
    d.n = n;
    d.latency = 3;
    d.overflow_latency = 2;
    d.per_neuron_thresholds = per_neuron_thresholds;
    d.partition = partition_groups(n);
    const auto& p = *d.partition;

    auto b = adder_builder(n);

    // With shared thresholds every neuron group (generate/propagate, carry)
    // uses its largest threshold and the bias lowers it per position.
    const std::int64_t gp_shared = per_neuron_thresholds ? 0 : pow2i(p.largest());
    const std::int64_t carry_shared =
        per_neuron_thresholds ? 0 : pow2i(static_cast<std::uint32_t>(p.groups()));
    auto gate = [&](std::int64_t threshold, std::int64_t shared, std::int64_t extra_bias) {
        if (per_neuron_thresholds) {
            return b.add_neuron(threshold, extra_bias);
        }
        return b.add_neuron(shared, shared - threshold + extra_bias);
    };

    for (std::uint32_t bit = 0; bit < n; ++bit) {
        d.generate.push_back(gate(pow2i(p.index_in_group[bit] + 1), gp_shared, 0));
    }
    // Propagate: same inputs, threshold lowered by one.
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        d.propagate.push_back(gate(pow2i(p.index_in_group[bit] + 1), gp_shared, 1));
    }
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        d.carry.push_back(gate(pow2i(p.group_of[bit] + 1), carry_shared, 0));
    }

    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const auto group = p.group_of[bit];
        const auto first = p.first_bit[group];
        for (std::uint32_t k = 0; k <= p.index_in_group[bit]; ++k) {
            for (const char* port : {"x", "y"}) {
                connect_weight(b, b.input_bit(port, first + k), d.generate[bit], pow2i(k), 1, hw);
                connect_weight(b, b.input_bit(port, first + k), d.propagate[bit], pow2i(k), 1, hw);
            }
        }
        connect_weight(b, d.generate[bit], d.carry[bit], pow2i(group), 1, hw);
        connect_weight(b, d.propagate[bit], d.carry[bit], pow2i(group), 1, hw);
        for (std::uint32_t lower = 0; lower < group; ++lower) {
            const auto msb = p.msb(lower);
            connect_weight(b, d.generate[msb], d.carry[bit], pow2i(lower), 1, hw);
            connect_weight(b, d.propagate[msb], d.carry[bit], pow2i(lower), 1, hw);
        }
    }

    SumTiming timing{std::vector<std::uint32_t>(n, 3), std::vector<std::uint32_t>(n, 1),
                     std::vector<std::uint32_t>(n, 1)};
    d.sum = attach_sum_gates(b, n, d.carry, timing);
    finish_ports(b, d);
    d.circuit = std::move(b).build();
    return d;
}

AdderDescriptor make_adder(AdderKind kind, std::uint32_t n, const AdderOptions& options,
                           const HardwareModel& hw) {
    switch (kind) {
        case AdderKind::Sequential:
            return make_sequential(n, options.relay_layers, hw);
        case AdderKind::Dcta2:
            return make_dcta2(n, hw);
        case AdderKind::Dcta3:
            return make_dcta3(n, options.per_neuron_thresholds, hw);
    }
    throw std::invalid_argument("unknown adder kind");
}

AdderDescriptor build_sequential(std::uint32_t n, std::uint32_t relay_layers, const HardwareModel& hw) {
    auto d = make_sequential(n, relay_layers, hw);
    check_descriptor(d, hw);
    return d;
}

AdderDescriptor build_dcta2(std::uint32_t n, const HardwareModel& hw) {
    auto d = make_dcta2(n, hw);
    check_descriptor(d, hw);
    return d;
}

AdderDescriptor build_dcta3(std::uint32_t n, bool per_neuron_thresholds, const HardwareModel& hw) {
    auto d = make_dcta3(n, per_neuron_thresholds, hw);
    check_descriptor(d, hw);
    return d;
}

AdderDescriptor build_adder(AdderKind kind, std::uint32_t n, const AdderOptions& options,
                            const HardwareModel& hw) {
    auto d = make_adder(kind, n, options, hw);
    check_descriptor(d, hw);
    return d;
}

}  // namespace spikeadd
