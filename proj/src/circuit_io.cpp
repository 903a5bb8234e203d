#include "spikeadd/circuit_io.hpp"

#include "spikeadd/errors.hpp"

namespace spikeadd {

using nlohmann::ordered_json;

ordered_json circuit_to_json(const Circuit& circuit) {
    ordered_json doc;
    auto& neurons = doc["neurons"] = ordered_json::array();
    for (const auto& n : circuit.neurons()) {
        neurons.push_back({{"id", n.id.value}, {"threshold", n.threshold}, {"bias", n.bias}});
    }
    auto& synapses = doc["synapses"] = ordered_json::array();
    for (const auto& s : circuit.synapses()) {
        ordered_json pre;
        if (const auto* id = std::get_if<NeuronId>(&s.pre)) {
            pre = id->value;
        } else {
            const auto& bit = std::get<InputBit>(s.pre);
            pre = {{"port", circuit.input_ports()[bit.port].name}, {"bit", bit.bit}};
        }
        synapses.push_back({{"pre", pre},
                            {"post", s.post.value},
                            {"mantissa", s.mantissa},
                            {"exponent", s.exponent},
                            {"delay", s.delay}});
    }
    ordered_json inputs = ordered_json::object();
    for (const auto& p : circuit.input_ports()) {
        inputs[p.name] = p.width;
    }
    ordered_json outputs = ordered_json::object();
    for (const auto& p : circuit.output_ports()) {
        auto& ids = outputs[p.name] = ordered_json::array();
        for (auto id : p.neurons) {
            ids.push_back(id.value);
        }
    }
    doc["ports"] = {{"inputs", inputs}, {"outputs", outputs}};
    return doc;
}

Circuit circuit_from_json(const ordered_json& doc) {
    try {
        CircuitBuilder builder;
        const auto& neurons = doc.at("neurons");
        for (std::size_t i = 0; i < neurons.size(); ++i) {
            const auto& n = neurons[i];
            if (n.at("id").get<std::uint32_t>() != i) {
                throw InvalidCircuit("neuron ids must be dense and in order");
            }
            builder.add_neuron(n.at("threshold").get<std::int64_t>(), n.value("bias", std::int64_t{0}));
        }
        const auto& ports = doc.at("ports");
        for (const auto& [name, width] : ports.at("inputs").items()) {
            builder.add_input_port(name, width.get<std::uint32_t>());
        }
        for (const auto& s : doc.at("synapses")) {
            const auto& pre_doc = s.at("pre");
            Source pre;
            if (pre_doc.is_object()) {
                pre = builder.input_bit(pre_doc.at("port").get<std::string>(),
                                        pre_doc.at("bit").get<std::uint32_t>());
            } else {
                pre = NeuronId{pre_doc.get<std::uint32_t>()};
            }
            builder.connect(pre, NeuronId{s.at("post").get<std::uint32_t>()},
                            s.at("mantissa").get<std::int64_t>(), s.value("exponent", 0U),
                            s.at("delay").get<std::uint32_t>());
        }
        for (const auto& [name, ids] : ports.at("outputs").items()) {
            std::vector<NeuronId> neurons_of_port;
            for (const auto& id : ids) {
                neurons_of_port.push_back(NeuronId{id.get<std::uint32_t>()});
            }
            builder.add_output_port(name, std::move(neurons_of_port));
        }
        return std::move(builder).build();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidCircuit(std::string("malformed circuit JSON: ") + e.what());
    } catch (const UnknownPort& e) {
        throw InvalidCircuit(e.what());
    }
}

}  // namespace spikeadd
