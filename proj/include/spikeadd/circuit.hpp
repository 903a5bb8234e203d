#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace spikeadd {

/// Dense index of a neuron inside one Circuit.
struct NeuronId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(NeuronId, NeuronId) = default;
};

/// One bit slot of a named input port; spikes are injected here by a schedule.
struct InputBit {
    std::uint32_t port = 0;  // index into Circuit::input_ports()
    std::uint32_t bit = 0;

    friend constexpr auto operator<=>(InputBit, InputBit) = default;
};

using Source = std::variant<NeuronId, InputBit>;

/// Threshold gate. Fires at a step iff the weighted arrivals plus bias reach
/// the threshold. Nothing carries over to the next step.
struct Neuron {
    NeuronId id;
    std::int64_t threshold = 1;
    std::int64_t bias = 0;
};

struct Synapse {
    Source pre;
    NeuronId post;
    std::int64_t mantissa = 1;
    std::uint32_t exponent = 0;
    std::uint32_t delay = 1;

    /// mantissa * 2^exponent
    [[nodiscard]] std::int64_t weight() const;
};

struct InputPort {
    std::string name;
    std::uint32_t width = 0;
};

struct OutputPort {
    std::string name;
    std::vector<NeuronId> neurons;  // index 0 is the least significant bit
};

/// Immutable netlist of neurons and delayed weighted synapses with named ports.
/// Only CircuitBuilder can create one, and it checks all endpoints first.
class Circuit {
public:
    Circuit() = default;

    [[nodiscard]] const std::vector<Neuron>& neurons() const { return neurons_; }
    [[nodiscard]] const std::vector<Synapse>& synapses() const { return synapses_; }
    [[nodiscard]] const std::vector<InputPort>& input_ports() const { return inputs_; }
    [[nodiscard]] const std::vector<OutputPort>& output_ports() const { return outputs_; }

    [[nodiscard]] std::size_t neuron_count() const { return neurons_.size(); }
    [[nodiscard]] std::size_t synapse_count() const { return synapses_.size(); }

    /// Throws UnknownPort.
    [[nodiscard]] std::uint32_t input_port_index(const std::string& name) const;
    [[nodiscard]] const InputPort& input_port(const std::string& name) const;
    [[nodiscard]] const OutputPort& output_port(const std::string& name) const;
    [[nodiscard]] bool has_output_port(const std::string& name) const;

    /// Largest synaptic delay, 0 for a circuit without synapses.
    [[nodiscard]] std::uint32_t max_delay() const;

    /// Number of synapses leaving each neuron.
    [[nodiscard]] std::vector<std::uint32_t> out_degrees() const;

private:
    friend class CircuitBuilder;

    std::vector<Neuron> neurons_;
    std::vector<Synapse> synapses_;
    std::vector<InputPort> inputs_;
    std::vector<OutputPort> outputs_;
};

class CircuitBuilder {
public:
    CircuitBuilder() = default;

    /// Starts from a copy of an existing circuit.
    explicit CircuitBuilder(const Circuit& base);

    NeuronId add_neuron(std::int64_t threshold, std::int64_t bias = 0);
    std::vector<NeuronId> add_neurons(std::size_t count, std::int64_t threshold, std::int64_t bias = 0);

    /// Returns the index of the new port. Port names must be unique.
    std::uint32_t add_input_port(const std::string& name, std::uint32_t width);
    void add_output_port(const std::string& name, std::vector<NeuronId> neurons);

    [[nodiscard]] InputBit input_bit(const std::string& port, std::uint32_t bit) const;

    void connect(Source pre, NeuronId post, std::int64_t mantissa, std::uint32_t exponent,
                 std::uint32_t delay);

    [[nodiscard]] std::size_t neuron_count() const { return circuit_.neurons_.size(); }
    [[nodiscard]] const Neuron& neuron(NeuronId id) const { return circuit_.neurons_.at(id.value); }

    /// Throws InvalidCircuit on dangling endpoints, zero delays or bad ports.
    [[nodiscard]] Circuit build() &&;
    [[nodiscard]] Circuit build() const&;

private:
    void check() const;

    Circuit circuit_;
};

}  // namespace spikeadd
