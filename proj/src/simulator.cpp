#include "spikeadd/simulator.hpp"

#include <algorithm>
#include <sstream>

#include "spikeadd/errors.hpp"

namespace spikeadd {

bool fires(const Neuron& neuron, std::int64_t input_sum) {
    return input_sum + neuron.bias >= neuron.threshold;
}

void InputSchedule::add(Step step, const std::string& port, std::uint32_t bit) {
    entries_.push_back(Entry{step, port, bit});
}

void InputSchedule::add(Step step, const std::string& port, const BitVector& bits) {
    for (auto i : bits.ones()) {
        add(step, port, i);
    }
}

SpikeRecord::SpikeRecord(Step horizon, std::size_t neuron_count, std::vector<SpikeEvent> events,
                         std::vector<OutputPort> outputs, std::uint64_t synaptic_events)
    : horizon_(horizon),
      neuron_count_(neuron_count),
      events_(std::move(events)),
      outputs_(std::move(outputs)),
      synaptic_events_(synaptic_events) {
    std::sort(events_.begin(), events_.end());
}

bool SpikeRecord::fired(NeuronId neuron, Step step) const {
    return std::binary_search(events_.begin(), events_.end(), SpikeEvent{step, neuron});
}

std::vector<Step> SpikeRecord::firing_steps(NeuronId neuron) const {
    std::vector<Step> steps;
    for (const auto& e : events_) {
        if (e.neuron == neuron) {
            steps.push_back(e.step);
        }
    }
    return steps;
}

std::vector<NeuronId> SpikeRecord::fired_at(Step step) const {
    auto lo = std::lower_bound(events_.begin(), events_.end(), SpikeEvent{step, NeuronId{0}});
    std::vector<NeuronId> out;
    for (auto it = lo; it != events_.end() && it->step == step; ++it) {
        out.push_back(it->neuron);
    }
    return out;
}

const OutputPort& SpikeRecord::output(const std::string& port) const {
    auto it = std::find_if(outputs_.begin(), outputs_.end(),
                           [&](const OutputPort& p) { return p.name == port; });
    if (it == outputs_.end()) {
        throw UnknownPort("unknown output port '" + port + "'");
    }
    return *it;
}

BitVector SpikeRecord::port_view(const std::string& port, Step step) const {
    const auto& p = output(port);
    BitVector bits(p.neurons.size());
    for (std::size_t i = 0; i < p.neurons.size(); ++i) {
        bits.set(i, fired(p.neurons[i], step));
    }
    return bits;
}

std::vector<Step> SpikeRecord::port_active_steps(const std::string& port) const {
    const auto& p = output(port);
    std::vector<std::uint8_t> member(neuron_count_, 0);
    for (auto id : p.neurons) {
        member[id.value] = 1;
    }
    std::vector<Step> steps;
    for (const auto& e : events_) {
        if (member[e.neuron.value] != 0 && (steps.empty() || steps.back() != e.step)) {
            steps.push_back(e.step);
        }
    }
    return steps;
}

std::string SpikeRecord::to_csv() const {
    std::ostringstream out;
    out << "step,neuron_id\n";
    for (const auto& e : events_) {
        out << e.step << ',' << e.neuron.value << '\n';
    }
    return out.str();
}

Simulator::Simulator(const Circuit& circuit) : circuit_(circuit) {
    const auto neurons = static_cast<std::uint32_t>(circuit_.neuron_count());
    std::uint32_t sources = neurons;
    for (const auto& port : circuit_.input_ports()) {
        input_offset_.push_back(sources);
        sources += port.width;
    }

    auto source_index = [&](const Source& pre) -> std::uint32_t {
        if (const auto* n = std::get_if<NeuronId>(&pre)) {
            return n->value;
        }
        const auto& bit = std::get<InputBit>(pre);
        return input_offset_[bit.port] + bit.bit;
    };

    std::vector<std::uint32_t> count(sources + 1, 0);
    for (const auto& s : circuit_.synapses()) {
        ++count[source_index(s.pre) + 1];
        max_delay_ = std::max(max_delay_, s.delay);
    }
    for (std::size_t i = 1; i < count.size(); ++i) {
        count[i] += count[i - 1];
    }
    edge_begin_ = count;
    edges_.resize(circuit_.synapse_count());
    auto cursor = count;
    for (const auto& s : circuit_.synapses()) {
        edges_[cursor[source_index(s.pre)]++] = Edge{s.post.value, s.delay, s.weight()};
    }

    for (const auto& n : circuit_.neurons()) {
        if (fires(n, 0)) {
            spontaneous_.push_back(n.id.value);
        }
    }
}

DelayLineState Simulator::initial_state() const {
    DelayLineState s;
    s.neuron_count = circuit_.neuron_count();
    s.slots = std::size_t{max_delay_} + 1;
    s.accumulator.assign(s.slots * s.neuron_count, 0);
    s.touched_flag.assign(s.slots * s.neuron_count, 0);
    s.touched.assign(s.slots, {});
    s.pending_deliveries.assign(s.slots, 0);
    return s;
}

void Simulator::emit(DelayLineState& state, std::size_t source, Step step, bool from_neuron) const {
    for (auto e = edge_begin_[source]; e < edge_begin_[source + 1]; ++e) {
        const auto& edge = edges_[e];
        const std::size_t slot = (std::size_t{step} + edge.delay) % state.slots;
        const std::size_t cell = slot * state.neuron_count + edge.post;
        state.accumulator[cell] += edge.weight;
        if (state.touched_flag[cell] == 0) {
            state.touched_flag[cell] = 1;
            state.touched[slot].push_back(edge.post);
        }
        if (from_neuron) {
            ++state.pending_deliveries[slot];
        }
    }
}

void Simulator::inject(DelayLineState& state, InputBit bit, Step step) const {
    emit(state, std::size_t{input_offset_.at(bit.port)} + bit.bit, step, false);
}

std::vector<NeuronId> Simulator::step(DelayLineState& state, Step step) const {
    if (state.neuron_count != circuit_.neuron_count() || state.slots != std::size_t{max_delay_} + 1) {
        throw InvalidCircuit("delay-line state belongs to a different circuit");
    }
    const std::size_t slot = step % state.slots;
    const std::size_t base = slot * state.neuron_count;
    auto& candidates = state.touched[slot];

    std::vector<std::uint32_t> fired;
    for (auto post : candidates) {
        if (fires(circuit_.neurons()[post], state.accumulator[base + post])) {
            fired.push_back(post);
        }
    }
    for (auto id : spontaneous_) {
        if (state.touched_flag[base + id] == 0) {
            fired.push_back(id);
        }
    }
    for (auto post : candidates) {
        state.accumulator[base + post] = 0;
        state.touched_flag[base + post] = 0;
    }
    candidates.clear();
    state.neuron_deliveries_ += state.pending_deliveries[slot];
    state.pending_deliveries[slot] = 0;

    std::sort(fired.begin(), fired.end());
    std::vector<NeuronId> out;
    out.reserve(fired.size());
    for (auto id : fired) {
        emit(state, id, step, true);
        out.push_back(NeuronId{id});
    }
    return out;
}

SpikeRecord Simulator::run(const InputSchedule& schedule, Step horizon) const {
    if (horizon < 1) {
        throw ValueOutOfRange("horizon must be at least 1");
    }
    struct Injection {
        Step step;
        InputBit bit;
    };
    std::vector<Injection> injections;
    injections.reserve(schedule.entries().size());
    for (const auto& entry : schedule.entries()) {
        const auto port = circuit_.input_port_index(entry.port);
        if (entry.bit >= circuit_.input_ports()[port].width) {
            throw UnknownPort("bit " + std::to_string(entry.bit) + " outside input port '" +
                              entry.port + "'");
        }
        injections.push_back(Injection{entry.step, InputBit{port, entry.bit}});
    }
    std::stable_sort(injections.begin(), injections.end(),
                     [](const Injection& a, const Injection& b) { return a.step < b.step; });

    auto state = initial_state();
    std::vector<SpikeEvent> events;
    std::size_t next = 0;
    for (Step t = 0; t < horizon; ++t) {
        // Inputs emitted at t cannot arrive before t + 1, so the order relative
        // to evaluating step t does not matter.
        for (; next < injections.size() && injections[next].step == t; ++next) {
            inject(state, injections[next].bit, t);
        }
        for (auto id : step(state, t)) {
            events.push_back(SpikeEvent{t, id});
        }
    }
    return SpikeRecord(horizon, circuit_.neuron_count(), std::move(events), circuit_.output_ports(),
                       state.synaptic_events());
}

}  // namespace spikeadd
