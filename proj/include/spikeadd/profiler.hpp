#pragma once

#include <cstdint>
#include <string>

#include "spikeadd/adders.hpp"
#include "spikeadd/hardware.hpp"
#include "spikeadd/oracle.hpp"

namespace spikeadd {

/// Counters for one addition. Spikes, synaptic events and neurons include the
/// input and output harness; synapses are those of the adder itself.
struct ProfileReport {
    AdderKind kind = AdderKind::Sequential;
    std::uint32_t n = 0;
    UInt x;
    UInt y;
    /// Steps after injection until the output harness fires: latency + 2.
    std::uint64_t total_steps = 0;
    std::uint64_t spikes = 0;
    std::uint64_t synaptic_events = 0;
    std::uint64_t neurons = 0;
    std::uint64_t synapses = 0;
    /// Core fraction of the adder itself (harness excluded).
    double core_fraction = 0.0;
    UInt result;
    bool overflow = false;
    bool passed = false;
    std::string error;

    friend bool operator==(const ProfileReport&, const ProfileReport&) = default;
};

/// Adder wrapped by two n-neuron input groups and one n-neuron output group.
/// The external ports "x" and "y" drive the input groups with delay 1 and
/// the output group listens to the sum gates with delay 1.
struct Harness {
    Circuit circuit;
    std::vector<NeuronId> x_inputs;
    std::vector<NeuronId> y_inputs;
    std::vector<NeuronId> outputs;
    Readout readout;        // for injection at step 0
    Step horizon = 0;       // steps 0 .. latency + 2
    Step total_steps = 0;   // latency + 2
};

[[nodiscard]] Harness wrap_with_harness(const AdderDescriptor& adder);

/// Validates the adder against `hw` (throwing its constraint error), runs one
/// addition through the harness and compares with reference_add. A mismatch
/// or off-schedule output leaves passed = false with `error` set.
[[nodiscard]] ProfileReport profile(const AdderDescriptor& adder, const UInt& x, const UInt& y,
                                    const HardwareModel& hw = {});

/// adder,n,x,y,total_steps,spikes,synaptic_events,neurons,synapses,core_fraction,result,overflow,passed
[[nodiscard]] const std::vector<std::string>& profile_csv_columns();
[[nodiscard]] std::vector<std::string> profile_csv_fields(const ProfileReport& report);

}  // namespace spikeadd
