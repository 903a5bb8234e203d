#include "spikeadd/circuit.hpp"

#include <algorithm>

#include "spikeadd/errors.hpp"

namespace spikeadd {

std::int64_t Synapse::weight() const {
    return mantissa * (std::int64_t{1} << exponent);
}

std::uint32_t Circuit::input_port_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < inputs_.size(); ++i) {
        if (inputs_[i].name == name) {
            return i;
        }
    }
    throw UnknownPort("unknown input port '" + name + "'");
}

const InputPort& Circuit::input_port(const std::string& name) const {
    return inputs_[input_port_index(name)];
}

const OutputPort& Circuit::output_port(const std::string& name) const {
    auto it = std::find_if(outputs_.begin(), outputs_.end(),
                           [&](const OutputPort& p) { return p.name == name; });
    if (it == outputs_.end()) {
        throw UnknownPort("unknown output port '" + name + "'");
    }
    return *it;
}

bool Circuit::has_output_port(const std::string& name) const {
    return std::any_of(outputs_.begin(), outputs_.end(),
                       [&](const OutputPort& p) { return p.name == name; });
}

std::uint32_t Circuit::max_delay() const {
    std::uint32_t d = 0;
    for (const auto& s : synapses_) {
        d = std::max(d, s.delay);
    }
    return d;
}

std::vector<std::uint32_t> Circuit::out_degrees() const {
    std::vector<std::uint32_t> deg(neurons_.size(), 0);
    for (const auto& s : synapses_) {
        if (const auto* n = std::get_if<NeuronId>(&s.pre)) {
            ++deg[n->value];
        }
    }
    return deg;
}

CircuitBuilder::CircuitBuilder(const Circuit& base) : circuit_(base) {}

NeuronId CircuitBuilder::add_neuron(std::int64_t threshold, std::int64_t bias) {
    NeuronId id{static_cast<std::uint32_t>(circuit_.neurons_.size())};
    circuit_.neurons_.push_back(Neuron{id, threshold, bias});
    return id;
}

std::vector<NeuronId> CircuitBuilder::add_neurons(std::size_t count, std::int64_t threshold,
                                                  std::int64_t bias) {
    std::vector<NeuronId> ids;
    ids.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        ids.push_back(add_neuron(threshold, bias));
    }
    return ids;
}

std::uint32_t CircuitBuilder::add_input_port(const std::string& name, std::uint32_t width) {
    for (const auto& p : circuit_.inputs_) {
        if (p.name == name) {
            throw InvalidCircuit("duplicate input port '" + name + "'");
        }
    }
    circuit_.inputs_.push_back(InputPort{name, width});
    return static_cast<std::uint32_t>(circuit_.inputs_.size() - 1);
}

void CircuitBuilder::add_output_port(const std::string& name, std::vector<NeuronId> neurons) {
    if (circuit_.has_output_port(name)) {
        throw InvalidCircuit("duplicate output port '" + name + "'");
    }
    circuit_.outputs_.push_back(OutputPort{name, std::move(neurons)});
}

InputBit CircuitBuilder::input_bit(const std::string& port, std::uint32_t bit) const {
    const std::uint32_t index = circuit_.input_port_index(port);
    if (bit >= circuit_.inputs_[index].width) {
        throw UnknownPort("bit " + std::to_string(bit) + " outside input port '" + port + "'");
    }
    return InputBit{index, bit};
}

void CircuitBuilder::connect(Source pre, NeuronId post, std::int64_t mantissa,
                             std::uint32_t exponent, std::uint32_t delay) {
    circuit_.synapses_.push_back(Synapse{pre, post, mantissa, exponent, delay});
}

void CircuitBuilder::check() const {
    const auto n = circuit_.neurons_.size();
    for (std::size_t i = 0; i < circuit_.synapses_.size(); ++i) {
        const auto& s = circuit_.synapses_[i];
        const auto where = "synapse " + std::to_string(i);
        if (s.post.value >= n) {
            throw InvalidCircuit(where + ": post neuron does not exist");
        }
        if (s.delay < 1) {
            throw InvalidCircuit(where + ": delay must be at least 1");
        }
        if (s.exponent > 62) {
            throw InvalidCircuit(where + ": weight exponent too large");
        }
        if (const auto* pre = std::get_if<NeuronId>(&s.pre)) {
            if (pre->value >= n) {
                throw InvalidCircuit(where + ": pre neuron does not exist");
            }
        } else {
            const auto& bit = std::get<InputBit>(s.pre);
            if (bit.port >= circuit_.inputs_.size() || bit.bit >= circuit_.inputs_[bit.port].width) {
                throw InvalidCircuit(where + ": pre input bit does not exist");
            }
        }
    }
    for (const auto& port : circuit_.outputs_) {
        for (auto id : port.neurons) {
            if (id.value >= n) {
                throw InvalidCircuit("output port '" + port.name + "' references a missing neuron");
            }
        }
    }
}

Circuit CircuitBuilder::build() && {
    check();
    return std::move(circuit_);
}

Circuit CircuitBuilder::build() const& {
    check();
    return circuit_;
}

}  // namespace spikeadd
