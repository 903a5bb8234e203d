#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spikeadd/bits.hpp"
#include "spikeadd/circuit.hpp"

namespace spikeadd {

using Step = std::uint32_t;

/// True iff input_sum + bias >= threshold.
[[nodiscard]] bool fires(const Neuron& neuron, std::int64_t input_sum);

struct SpikeEvent {
    Step step = 0;
    NeuronId neuron;

    friend constexpr auto operator<=>(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Spikes injected into input port bits. Each entry is one spike.
class InputSchedule {
public:
    struct Entry {
        Step step;
        std::string port;
        std::uint32_t bit;
    };

    void add(Step step, const std::string& port, std::uint32_t bit);
    /// One spike for every set bit of `bits`.
    void add(Step step, const std::string& port, const BitVector& bits);

    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }

private:
    std::vector<Entry> entries_;
};

/// Complete firing history of one run.
class SpikeRecord {
public:
    SpikeRecord() = default;
    SpikeRecord(Step horizon, std::size_t neuron_count, std::vector<SpikeEvent> events,
                std::vector<OutputPort> outputs, std::uint64_t synaptic_events);

    [[nodiscard]] Step horizon() const { return horizon_; }
    [[nodiscard]] std::size_t neuron_count() const { return neuron_count_; }
    /// Sorted by (step, neuron).
    [[nodiscard]] const std::vector<SpikeEvent>& events() const { return events_; }
    [[nodiscard]] std::size_t spike_count() const { return events_.size(); }

    /// Deliveries of neuron spikes across synapses that arrived before the horizon.
    [[nodiscard]] std::uint64_t synaptic_events() const { return synaptic_events_; }

    [[nodiscard]] bool fired(NeuronId neuron, Step step) const;
    [[nodiscard]] std::vector<Step> firing_steps(NeuronId neuron) const;
    [[nodiscard]] std::vector<NeuronId> fired_at(Step step) const;

    /// Bits of an output port that fired at `step`. Throws UnknownPort.
    [[nodiscard]] BitVector port_view(const std::string& port, Step step) const;
    /// Steps at which any neuron of the port fired, ascending and unique.
    [[nodiscard]] std::vector<Step> port_active_steps(const std::string& port) const;

    /// "step,neuron_id" CSV with header.
    [[nodiscard]] std::string to_csv() const;

    friend bool operator==(const SpikeRecord& a, const SpikeRecord& b) {
        return a.horizon_ == b.horizon_ && a.neuron_count_ == b.neuron_count_ &&
               a.events_ == b.events_ && a.synaptic_events_ == b.synaptic_events_;
    }

private:
    const OutputPort& output(const std::string& port) const;

    Step horizon_ = 0;
    std::size_t neuron_count_ = 0;
    std::vector<SpikeEvent> events_;
    std::vector<OutputPort> outputs_;
    std::uint64_t synaptic_events_ = 0;
};

class Simulator;

/// In-flight spikes. Accumulators are keyed by arrival step modulo the ring
/// length, which exceeds the circuit's largest delay.
class DelayLineState {
public:
    [[nodiscard]] std::uint64_t synaptic_events() const { return neuron_deliveries_; }

private:
    friend class Simulator;

    std::size_t neuron_count = 0;
    std::size_t slots = 0;
    std::vector<std::int64_t> accumulator;          // slots * neuron_count
    std::vector<std::uint8_t> touched_flag;         // slots * neuron_count
    std::vector<std::vector<std::uint32_t>> touched;  // per slot
    std::vector<std::uint64_t> pending_deliveries;  // neuron-spike deliveries per slot
    std::uint64_t neuron_deliveries_ = 0;
};

/// Compiled, read-only view of a circuit. One Simulator may drive many runs
/// concurrently; each run owns its DelayLineState.
class Simulator {
public:
    explicit Simulator(const Circuit& circuit);

    [[nodiscard]] const Circuit& circuit() const { return circuit_; }

    [[nodiscard]] DelayLineState initial_state() const;

    /// Emits a spike from an input bit at `step`.
    void inject(DelayLineState& state, InputBit bit, Step step) const;

    /// Evaluates every neuron at `step` against the arrivals scheduled for it,
    /// forwards the resulting spikes and clears that step's accumulators.
    /// Returns the fired neurons in ascending id order.
    std::vector<NeuronId> step(DelayLineState& state, Step step) const;

    /// Throws UnknownPort for schedule entries naming missing ports or bits.
    [[nodiscard]] SpikeRecord run(const InputSchedule& schedule, Step horizon) const;

private:
    struct Edge {
        std::uint32_t post;
        std::uint32_t delay;
        std::int64_t weight;
    };

    void emit(DelayLineState& state, std::size_t source, Step step, bool from_neuron) const;

    Circuit circuit_;
    std::vector<std::uint32_t> input_offset_;  // first source index of each input port
    std::vector<std::uint32_t> edge_begin_;    // CSR over sources: neurons then input bits
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> spontaneous_;   // neurons whose bias alone reaches threshold
    std::uint32_t max_delay_ = 0;
};

}  // namespace spikeadd
