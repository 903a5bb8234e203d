#include "spikeadd/hardware.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spikeadd/errors.hpp"

namespace spikeadd {

void HardwareModel::check() const {
    if (max_delay == 0 || weight_mantissa_bits == 0 || weight_mantissa_bits > 30 ||
        max_weight_exponent > 62 || bias_limit <= 0 || neurons_per_core_base == 0) {
        throw std::invalid_argument("hardware model limits must be positive");
    }
}

void to_json(nlohmann::json& j, const HardwareModel& hw) {
    j = nlohmann::json{{"max_delay", hw.max_delay},
                       {"weight_mantissa_bits", hw.weight_mantissa_bits},
                       {"max_weight_exponent", hw.max_weight_exponent},
                       {"bias_limit", hw.bias_limit},
                       {"neurons_per_core_base", hw.neurons_per_core_base},
                       {"delay_bits_halving", hw.delay_bits_halving}};
}

void from_json(const nlohmann::json& j, HardwareModel& hw) {
    hw.max_delay = j.value("max_delay", hw.max_delay);
    hw.weight_mantissa_bits = j.value("weight_mantissa_bits", hw.weight_mantissa_bits);
    hw.max_weight_exponent = j.value("max_weight_exponent", hw.max_weight_exponent);
    hw.bias_limit = j.value("bias_limit", hw.bias_limit);
    hw.neurons_per_core_base = j.value("neurons_per_core_base", hw.neurons_per_core_base);
    hw.delay_bits_halving = j.value("delay_bits_halving", hw.delay_bits_halving);
}

HardwareModel load_hardware_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open hardware config " + path.string());
    }
    HardwareModel hw = nlohmann::json::parse(in).get<HardwareModel>();
    hw.check();
    return hw;
}

HardwareModel resolve_hardware_model(const std::optional<std::filesystem::path>& path) {
    if (path) {
        return load_hardware_model(*path);
    }
    if (const char* env = std::getenv(HardwareModel::kConfigEnv); env != nullptr && *env != '\0') {
        return load_hardware_model(env);
    }
    return HardwareModel{};
}

std::optional<QuantizedWeight> try_quantize_weight(std::int64_t weight, const HardwareModel& hw) {
    const std::int64_t limit = std::int64_t{1} << hw.weight_mantissa_bits;
    for (std::uint32_t e = 0; e <= hw.max_weight_exponent; e += hw.weight_mantissa_bits) {
        const std::int64_t scale = std::int64_t{1} << e;
        if (weight % scale != 0) {
            break;
        }
        const std::int64_t m = weight / scale;
        if (m > -limit && m < limit) {
            return QuantizedWeight{m, e};
        }
    }
    return std::nullopt;
}

QuantizedWeight quantize_weight(std::int64_t weight, const HardwareModel& hw) {
    if (auto q = try_quantize_weight(weight, hw)) {
        return *q;
    }
    throw WeightOverflow("weight " + std::to_string(weight) +
                         " exceeds the representable mantissa/exponent range");
}

std::int64_t max_weight_magnitude(const HardwareModel& hw) {
    const std::uint32_t top = hw.max_weight_exponent - hw.max_weight_exponent % hw.weight_mantissa_bits;
    return ((std::int64_t{1} << hw.weight_mantissa_bits) - 1) << top;
}

std::string to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::DelayExceeded:
            return "DelayExceeded";
        case LimitKind::WeightOverflow:
            return "WeightOverflow";
        case LimitKind::BiasExceeded:
            return "BiasExceeded";
    }
    return "?";
}

std::size_t ViolationReport::count(LimitKind kind) const {
    std::size_t c = 0;
    for (const auto& v : violations) {
        c += v.limit == kind ? 1 : 0;
    }
    return c;
}

std::string ViolationReport::summary() const {
    if (violations.empty()) {
        return "no violations";
    }
    const auto& v = violations.front();
    std::ostringstream out;
    out << violations.size() << " violation(s), first: " << to_string(v.limit) << " at " << v.element
        << " (required " << v.required << ", allowed " << v.allowed << ")";
    return out.str();
}

void ViolationReport::raise(const std::string& context) const {
    if (violations.empty()) {
        return;
    }
    const auto message = context + ": " + summary();
    switch (violations.front().limit) {
        case LimitKind::DelayExceeded:
            throw DelayOverflow(message);
        case LimitKind::WeightOverflow:
            throw WeightOverflow(message);
        case LimitKind::BiasExceeded:
            throw BiasOverflow(message);
    }
}

namespace {

bool stored_form_fits(const Synapse& s, const HardwareModel& hw) {
    const std::int64_t limit = std::int64_t{1} << hw.weight_mantissa_bits;
    return s.mantissa > -limit && s.mantissa < limit && s.exponent <= hw.max_weight_exponent &&
           s.exponent % hw.weight_mantissa_bits == 0;
}

}  // namespace

ViolationReport validate(const Circuit& circuit, const HardwareModel& hw) {
    ViolationReport report;
    const auto& synapses = circuit.synapses();
    for (std::size_t i = 0; i < synapses.size(); ++i) {
        const auto& s = synapses[i];
        const auto element = "synapse " + std::to_string(i);
        if (s.delay > hw.max_delay) {
            report.violations.push_back({element, LimitKind::DelayExceeded, s.delay, hw.max_delay});
        }
        if (!try_quantize_weight(s.weight(), hw) || !stored_form_fits(s, hw)) {
            report.violations.push_back(
                {element, LimitKind::WeightOverflow, s.weight(), max_weight_magnitude(hw)});
        }
    }
    for (const auto& n : circuit.neurons()) {
        if (n.bias > hw.bias_limit || n.bias < -hw.bias_limit) {
            report.violations.push_back({"neuron " + std::to_string(n.id.value), LimitKind::BiasExceeded,
                                         n.bias, hw.bias_limit});
        }
    }
    return report;
}

std::uint32_t delay_bits(std::uint32_t max_delay) {
    return static_cast<std::uint32_t>(std::bit_width(max_delay));
}

CoreUsage core_usage(std::size_t neurons, std::uint32_t max_delay, const HardwareModel& hw) {
    CoreUsage u;
    u.max_delay = max_delay;
    u.delay_bits = delay_bits(max_delay);
    u.capacity = hw.neurons_per_core_base;
    if (hw.delay_bits_halving) {
        u.capacity = u.delay_bits >= 63 ? 0 : u.capacity >> u.delay_bits;
    }
    u.neurons = neurons;
    u.fraction = u.capacity == 0 ? static_cast<double>(neurons)
                                 : static_cast<double>(neurons) / static_cast<double>(u.capacity);
    return u;
}

CoreUsage core_usage(const Circuit& circuit, const HardwareModel& hw) {
    return core_usage(circuit.neuron_count(), circuit.max_delay(), hw);
}

}  // namespace spikeadd
