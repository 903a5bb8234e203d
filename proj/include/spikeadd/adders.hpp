#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spikeadd/circuit.hpp"
#include "spikeadd/encoding.hpp"
#include "spikeadd/hardware.hpp"

namespace spikeadd {

enum class AdderKind { Sequential, Dcta2, Dcta3 };

inline constexpr AdderKind kAllAdderKinds[] = {AdderKind::Sequential, AdderKind::Dcta2,
                                               AdderKind::Dcta3};

[[nodiscard]] std::string to_string(AdderKind kind);
/// Accepts "sequential", "dcta2", "dcta3". Throws std::invalid_argument.
[[nodiscard]] AdderKind parse_adder_kind(const std::string& name);

struct AdderOptions {
    /// Sequential only: relay neurons allowed per over-long synapse.
    std::uint32_t relay_layers = 0;
    /// Dcta3 only: give every neuron its own threshold instead of one shared
    /// threshold per neuron group with bias offsets.
    bool per_neuron_thresholds = false;
};

/// Split of n bits into least-significant-first groups for DCTA3.
struct GroupPartition {
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint32_t> group_of;        // per bit
    std::vector<std::uint32_t> index_in_group;  // per bit
    std::vector<std::uint32_t> first_bit;       // per group

    [[nodiscard]] std::size_t groups() const { return sizes.size(); }
    [[nodiscard]] std::uint32_t largest() const;
    /// Global bit index of a group's most significant position.
    [[nodiscard]] std::uint32_t msb(std::size_t group) const { return first_bit[group] + sizes[group] - 1; }
};

/// Groups of ceil(n / ceil(sqrt n)) bits; the most significant group takes
/// the remainder.
[[nodiscard]] GroupPartition partition_groups(std::uint32_t n);

struct AdderDescriptor {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t n = 0;
    /// Steps from input injection to the synchronized sum spikes.
    Step latency = 0;
    /// Steps from input injection to the MSB carry (overflow) spike.
    Step overflow_latency = 0;
    std::uint32_t relay_layers = 0;
    bool per_neuron_thresholds = false;
    Circuit circuit;

    std::string x_port = "x";
    std::string y_port = "y";
    std::string sum_port = "sum";
    std::string overflow_port = "overflow";

    /// Neurons by role, indexed by bit. generate/propagate are Dcta3 only.
    std::vector<NeuronId> carry;
    std::vector<NeuronId> sum;
    std::vector<NeuronId> generate;
    std::vector<NeuronId> propagate;
    std::vector<NeuronId> relays;
    std::optional<GroupPartition> partition;

    [[nodiscard]] Readout readout(Step injected_at = 0) const;
    /// Stimulus for one addition; operands must fit in n bits.
    [[nodiscard]] InputSchedule schedule(const UInt& x, const UInt& y, Step at = 0) const;
};

struct ResourceCounts {
    std::uint64_t time_steps = 0;
    std::uint64_t neurons = 0;
    std::uint64_t synapses = 0;
    /// False when the figure is an exact count outside the known closed
    /// form (Dcta3 with non-square n).
    bool closed_form = true;

    friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

/// Closed-form time, neuron and synapse counts. Dcta3 with non-square n
/// falls back to the exact count implied by the group partition.
[[nodiscard]] ResourceCounts theoretical_resources(AdderKind kind, std::uint32_t n);

/// Delay of each synapse feeding sum gate i.
struct SumTiming {
    std::vector<std::uint32_t> operand;    // X_i, Y_i -> S_i
    std::vector<std::uint32_t> carry_in;   // C_{i-1} -> S_i, unused for i = 0
    std::vector<std::uint32_t> carry_out;  // C_i -> S_i
};

/// Adds S_i = [X_i + Y_i + C_{i-1} - 2 C_i >= 1] for every bit. Operand bits
/// come from the builder's "x" and "y" input ports.
std::vector<NeuronId> attach_sum_gates(CircuitBuilder& builder, std::uint32_t n,
                                       std::span<const NeuronId> carries, const SumTiming& timing);

/// Replaces every synapse longer than `max_delay` by a chain of relay neurons
/// (threshold 1, incoming weight 1) whose hops add up to the original delay.
/// Synapses needing more than `layers` relays are left untouched.
[[nodiscard]] Circuit insert_relays(const Circuit& circuit, std::uint32_t max_delay,
                                    std::uint32_t layers, std::vector<NeuronId>* relays = nullptr);

/// Unchecked constructors: the circuit may violate `hw`; see validate().
[[nodiscard]] AdderDescriptor make_sequential(std::uint32_t n, std::uint32_t relay_layers,
                                              const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor make_dcta2(std::uint32_t n, const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor make_dcta3(std::uint32_t n, bool per_neuron_thresholds = false,
                                         const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor make_adder(AdderKind kind, std::uint32_t n, const AdderOptions& options = {},
                                         const HardwareModel& hw = {});

/// Checked constructors. Throw DelayOverflow, WeightOverflow or BiasOverflow
/// when the circuit does not fit `hw`.
[[nodiscard]] AdderDescriptor build_sequential(std::uint32_t n, std::uint32_t relay_layers = 0,
                                               const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor build_dcta2(std::uint32_t n, const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor build_dcta3(std::uint32_t n, bool per_neuron_thresholds = false,
                                          const HardwareModel& hw = {});
[[nodiscard]] AdderDescriptor build_adder(AdderKind kind, std::uint32_t n, const AdderOptions& options = {},
                                          const HardwareModel& hw = {});

}  // namespace spikeadd
