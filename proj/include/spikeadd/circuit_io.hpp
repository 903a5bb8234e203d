#pragma once

#include <string>

#include <json.hpp>

#include "spikeadd/circuit.hpp"

namespace spikeadd {

/// Circuit as JSON:
///   {"neurons":  [{"id", "threshold", "bias"}],
///    "synapses": [{"pre", "post", "mantissa", "exponent", "delay"}],
///    "ports":    {"inputs": {name: width}, "outputs": {name: [neuron ids]}}}
/// `pre` is a neuron id, or {"port": name, "bit": index} for an input bit.
/// Port order is preserved.
[[nodiscard]] nlohmann::ordered_json circuit_to_json(const Circuit& circuit);

/// Throws InvalidCircuit on malformed documents.
[[nodiscard]] Circuit circuit_from_json(const nlohmann::ordered_json& doc);

}  // namespace spikeadd
