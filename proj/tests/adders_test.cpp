#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "spikeadd/adders.hpp"
#include "spikeadd/errors.hpp"
#include "spikeadd/oracle.hpp"

namespace spikeadd {
namespace {

// Sum gate driven by explicit carry values: carries are relay neurons fed
// from a "c" port so every combination of (X, Y, C_in, C_out) is reachable.
TEST(SumGates, TruthTableMatchesThresholdRule) {
    CircuitBuilder b;
    b.add_input_port("x", 2);
    b.add_input_port("y", 2);
    b.add_input_port("c", 2);
    auto carries = b.add_neurons(2, 1);
    b.connect(b.input_bit("c", 0), carries[0], 1, 0, 1);
    b.connect(b.input_bit("c", 1), carries[1], 1, 0, 1);
    const SumTiming timing{{2, 2}, {1, 1}, {1, 1}};
    const auto sums = attach_sum_gates(b, 2, carries, timing);
    b.add_output_port("sum", sums);
    const Simulator sim(std::move(b).build());

    for (int combo = 0; combo < 16; ++combo) {
        const int x = combo & 1, y = (combo >> 1) & 1, cin = (combo >> 2) & 1, cout = (combo >> 3) & 1;
        InputSchedule s;
        if (x) s.add(0, "x", 1);
        if (y) s.add(0, "y", 1);
        if (cin) s.add(0, "c", 0);
        if (cout) s.add(0, "c", 1);
        const bool fired = sim.run(s, 3).port_view("sum", 2)[1];
        EXPECT_EQ(fired, x + y + cin - 2 * cout >= 1) << combo;
        if (cout == ((x + y + cin) >= 2 ? 1 : 0)) {
            // Consistent carry: the gate is the full-adder sum bit.
            EXPECT_EQ(fired, ((x + y + cin) & 1) == 1) << combo;
        }
    }
}

TEST(SumGates, SpecExamples) {
    auto gate = [](int x, int y, int cin, int cout) { return x + y + cin - 2 * cout >= 1; };
    EXPECT_TRUE(gate(1, 0, 0, 0));
    EXPECT_FALSE(gate(1, 1, 0, 1));
    EXPECT_TRUE(gate(1, 1, 1, 1));
}

TEST(Sequential, ResourcesAndLatency) {
    const auto a = build_sequential(4);
    EXPECT_EQ(a.circuit.neuron_count(), 8U);
    EXPECT_EQ(a.circuit.synapse_count(), 26U);
    EXPECT_EQ(a.latency, 5U);
}

TEST(Sequential, OnePlusOneTwoBits) {
    const auto a = build_sequential(2);
    EXPECT_EQ(simulate_addition(Simulator(a.circuit), a, 1, 1), (DecodedSum{2, false}));
}

TEST(Sequential, DelayCap) {
    EXPECT_NO_THROW((void)build_sequential(62));
    EXPECT_EQ(build_sequential(62).circuit.max_delay(), 63U);
    EXPECT_THROW((void)build_sequential(63, 0), DelayOverflow);
}

TEST(Sequential, CarryChainTiming) {
    const auto a = build_sequential(6);
    const Simulator sim(a.circuit);
    const auto record = sim.run(a.schedule(63, 1), a.latency + 1);
    for (std::uint32_t i = 0; i < 6; ++i) {
        EXPECT_EQ(record.firing_steps(a.carry[i]), std::vector<Step>{i + 1}) << i;
    }
}

TEST(Sequential, RelayLayersExtendWidth) {
    const auto a = build_sequential(100, 1);
    EXPECT_FALSE(a.relays.empty());
    EXPECT_LE(a.circuit.max_delay(), 63U);
    EXPECT_EQ(a.latency, 101U);
    const Simulator sim(a.circuit);
    const UInt x = (UInt(1) << 99) + 12345, y = (UInt(1) << 99) - 1;
    EXPECT_EQ(simulate_addition(sim, a, x, y), reference_add(x, y, 100));
    EXPECT_THROW((void)build_sequential(126, 1), DelayOverflow);
    EXPECT_NO_THROW((void)build_sequential(125, 1));
}

TEST(Dcta2, ResourcesAndLatency) {
    const auto a = build_dcta2(16);
    EXPECT_EQ(a.circuit.neuron_count(), 32U);
    EXPECT_EQ(a.circuit.synapse_count(), 335U);
    EXPECT_EQ(a.latency, 2U);
}

TEST(Dcta2, CarryWeightsUseSecondSynapseGroup) {
    const auto a = build_dcta2(16);
    bool saw_group2 = false;
    for (const auto& s : a.circuit.synapses()) {
        if (s.weight() >= 256) {
            EXPECT_EQ(s.exponent, 8U);
            saw_group2 = true;
        }
    }
    EXPECT_TRUE(saw_group2);
    EXPECT_THROW((void)build_dcta2(17), WeightOverflow);
}

TEST(Dcta2, OnePlusThreeOverflows) {
    const auto a = build_dcta2(2);
    const Simulator sim(a.circuit);
    const auto record = sim.run(a.schedule(1, 3), 3);
    EXPECT_TRUE(record.fired(a.carry[1], 1));
    EXPECT_EQ(decode_output(record, a.readout()), (DecodedSum{0, true}));
}

TEST(Dcta2, ZeroInputIsSilent) {
    const auto a = build_dcta2(1);
    EXPECT_EQ(Simulator(a.circuit).run(a.schedule(0, 0), 4).spike_count(), 0U);
}

TEST(PartitionGroups, Examples) {
    EXPECT_EQ(partition_groups(16).sizes, (std::vector<std::uint32_t>{4, 4, 4, 4}));
    EXPECT_EQ(partition_groups(1).sizes, (std::vector<std::uint32_t>{1}));
    EXPECT_EQ(partition_groups(10).sizes, (std::vector<std::uint32_t>{3, 3, 3, 1}));
}

TEST(PartitionGroups, Bounds) {
    for (std::uint32_t n = 1; n <= 300; ++n) {
        const auto p = partition_groups(n);
        const auto root = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
        std::uint32_t total = 0;
        for (auto s : p.sizes) {
            total += s;
            EXPECT_GE(s, 1U);
            EXPECT_LE(s, (n + root - 1) / root);
        }
        EXPECT_EQ(total, n);
        EXPECT_LE(p.groups(), root) << n;
        ASSERT_EQ(p.group_of.size(), n);
        for (std::uint32_t bit = 0; bit < n; ++bit) {
            EXPECT_EQ(p.first_bit[p.group_of[bit]] + p.index_in_group[bit], bit);
        }
    }
}

TEST(Dcta3, ResourcesAndLatency) {
    const auto a = build_dcta3(16);
    EXPECT_EQ(a.circuit.neuron_count(), 64U);
    EXPECT_EQ(a.circuit.synapse_count(), 303U);
    EXPECT_EQ(a.latency, 3U);
}

TEST(Dcta3, GenerateAndPropagateOfOneGroup) {
    // n = 4 splits into two groups of two; X = 0b0011 fills group 0.
    const auto a = build_dcta3(4);
    const auto record = Simulator(a.circuit).run(a.schedule(3, 0), 4);
    EXPECT_FALSE(record.fired(a.generate[1], 1));  // 1 + 2 < 4
    EXPECT_TRUE(record.fired(a.propagate[1], 1));  // 3 >= 3
}

TEST(Dcta3, PropagatedCarry) {
    // 7 + 1: group 0 generates (3 + 1 >= 4), bit 2 only propagates, so the
    // carry at bit 2 (group 1, position 0) fires: GP = 0 + 2 + 1 + 1 = 4.
    const auto a = build_dcta3(4);
    const auto record = Simulator(a.circuit).run(a.schedule(7, 1), 4);
    EXPECT_TRUE(record.fired(a.generate[1], 1));
    EXPECT_TRUE(record.fired(a.propagate[1], 1));
    EXPECT_FALSE(record.fired(a.generate[2], 1));
    EXPECT_TRUE(record.fired(a.propagate[2], 1));
    EXPECT_TRUE(record.fired(a.carry[2], 2));
    EXPECT_EQ(decode_output(record, a.readout()), (DecodedSum{8, false}));
}

TEST(Dcta3, SharedThresholdsUseBiasOffsets) {
    const auto a = build_dcta3(16);
    std::int64_t gp_threshold = a.circuit.neurons()[a.generate[0].value].threshold;
    for (std::uint32_t bit = 0; bit < 16; ++bit) {
        const auto& g = a.circuit.neurons()[a.generate[bit].value];
        const auto& p = a.circuit.neurons()[a.propagate[bit].value];
        EXPECT_EQ(g.threshold, gp_threshold);
        EXPECT_EQ(p.threshold, gp_threshold);
        EXPECT_EQ(p.bias, g.bias + 1);
        // Effective generate threshold is 2^(j+1).
        EXPECT_EQ(g.threshold - g.bias, std::int64_t{2} << a.partition->index_in_group[bit]);
    }
}

TEST(Dcta3, BiasLimitCapsWidth) {
    EXPECT_NO_THROW((void)build_dcta3(42));
    EXPECT_THROW((void)build_dcta3(43), BiasOverflow);
    EXPECT_NO_THROW((void)build_dcta3(43, true));
}

TEST(Dcta3, PerNeuronThresholdsAdd) {
    const auto a = build_dcta3(49, true);
    const Simulator sim(a.circuit);
    OperandGenerator gen(3);
    for (int i = 0; i < 200; ++i) {
        const auto [x, y] = gen.next_pair(49);
        ASSERT_EQ(simulate_addition(sim, a, x, y), reference_add(x, y, 49));
    }
}

TEST(TheoreticalResources, Examples) {
    EXPECT_EQ(theoretical_resources(AdderKind::Sequential, 8), (ResourceCounts{9, 16, 54, true}));
    EXPECT_EQ(theoretical_resources(AdderKind::Dcta2, 16), (ResourceCounts{2, 32, 335, true}));
    EXPECT_EQ(theoretical_resources(AdderKind::Dcta3, 25), (ResourceCounts{3, 100, 549, true}));
    EXPECT_FALSE(theoretical_resources(AdderKind::Dcta3, 17).closed_form);
}

/// Synapses by the role of their target neuron.
std::map<std::string, std::size_t> synapses_by_target(const AdderDescriptor& a) {
    std::map<std::uint32_t, std::string> role;
    for (auto id : a.sum) role[id.value] = "sum";
    for (auto id : a.carry) role[id.value] = "carry";
    for (auto id : a.generate) role[id.value] = "gp";
    for (auto id : a.propagate) role[id.value] = "gp";
    std::map<std::string, std::size_t> counts;
    for (const auto& s : a.circuit.synapses()) {
        ++counts[role.at(s.post.value)];
    }
    return counts;
}

TEST(StructuralAudit, CountsMatchClosedForms) {
    for (std::uint32_t n = 1; n <= 62; ++n) {
        const auto a = build_sequential(n);
        const auto t = theoretical_resources(AdderKind::Sequential, n);
        ASSERT_EQ(a.circuit.neuron_count(), t.neurons) << n;
        ASSERT_EQ(a.circuit.synapse_count(), t.synapses) << n;
        ASSERT_EQ(a.latency, t.time_steps);
        auto by = synapses_by_target(a);
        EXPECT_EQ(by["sum"], 4 * n - 1);
        EXPECT_EQ(by["carry"], 3 * n - 1);
    }
    for (std::uint32_t n = 1; n <= 16; ++n) {
        const auto a = build_dcta2(n);
        const auto t = theoretical_resources(AdderKind::Dcta2, n);
        ASSERT_EQ(a.circuit.neuron_count(), t.neurons) << n;
        ASSERT_EQ(a.circuit.synapse_count(), t.synapses) << n;
        ASSERT_EQ(a.latency, t.time_steps);
        auto by = synapses_by_target(a);
        EXPECT_EQ(by["sum"], 4 * n - 1);
        EXPECT_EQ(by["carry"], n * n + n);
    }
    for (std::uint32_t root = 1; root <= 6; ++root) {
        const auto n = root * root;
        const auto a = build_dcta3(n);
        const auto t = theoretical_resources(AdderKind::Dcta3, n);
        ASSERT_TRUE(t.closed_form);
        ASSERT_EQ(a.circuit.neuron_count(), t.neurons) << n;
        ASSERT_EQ(a.circuit.synapse_count(), t.synapses) << n;
        auto by = synapses_by_target(a);
        EXPECT_EQ(by["sum"], 4 * n - 1);
        EXPECT_EQ(by["gp"], 2 * n * root + 2 * n);
        EXPECT_EQ(by["carry"], n * root + n);
    }
    // Non-square widths: the fallback count is exact.
    for (std::uint32_t n = 1; n <= 42; ++n) {
        EXPECT_EQ(build_dcta3(n).circuit.synapse_count(), theoretical_resources(AdderKind::Dcta3, n).synapses)
            << n;
    }
}

TEST(Properties, GenerateImpliesPropagate) {
    std::mt19937_64 rng(17);
    for (std::uint32_t n : {4U, 10U, 25U, 42U}) {
        const auto a = build_dcta3(n);
        const Simulator sim(a.circuit);
        OperandGenerator gen(rng());
        for (int trial = 0; trial < 100; ++trial) {
            const auto [x, y] = gen.next_pair(n);
            const auto record = sim.run(a.schedule(x, y), 4);
            for (std::uint32_t bit = 0; bit < n; ++bit) {
                if (record.fired(a.generate[bit], 1)) {
                    ASSERT_TRUE(record.fired(a.propagate[bit], 1)) << n << " bit " << bit;
                }
            }
        }
    }
}

TEST(Properties, Dcta3GenerateEqualsGroupDcta2Carry) {
    for (std::uint32_t n : {9U, 10U, 16U}) {
        const auto a = build_dcta3(n);
        const auto& p = *a.partition;
        const Simulator sim(a.circuit);
        OperandGenerator gen(n);
        for (int trial = 0; trial < 50; ++trial) {
            const auto [x, y] = gen.next_pair(n);
            const auto record = sim.run(a.schedule(x, y), 4);
            for (std::size_t g = 0; g < p.groups(); ++g) {
                const auto width = p.sizes[g];
                const UInt mask = (UInt(1) << width) - 1;
                const UInt gx = (x >> p.first_bit[g]) & mask;
                const UInt gy = (y >> p.first_bit[g]) & mask;
                const auto group_adder = build_dcta2(width);
                const auto group_record = Simulator(group_adder.circuit).run(group_adder.schedule(gx, gy), 3);
                for (std::uint32_t j = 0; j < width; ++j) {
                    ASSERT_EQ(record.fired(a.generate[p.first_bit[g] + j], 1),
                              group_record.fired(group_adder.carry[j], 1))
                        << "n=" << n << " group " << g << " pos " << j;
                }
            }
        }
    }
}

TEST(Properties, OutputsSynchronizedAndCrossAdderEquivalent) {
    for (std::uint32_t n = 1; n <= 16; ++n) {
        std::vector<AdderDescriptor> adders;
        std::vector<Simulator> sims;
        for (auto kind : kAllAdderKinds) {
            adders.push_back(build_adder(kind, n));
        }
        for (const auto& a : adders) {
            sims.emplace_back(a.circuit);
        }
        OperandGenerator gen(100 + n);
        for (int trial = 0; trial < 40; ++trial) {
            const auto [x, y] = gen.next_pair(n);
            std::vector<DecodedSum> results;
            for (std::size_t k = 0; k < adders.size(); ++k) {
                const auto record = sims[k].run(adders[k].schedule(x, y), adders[k].latency + 4);
                const auto steps = record.port_active_steps("sum");
                ASSERT_LE(steps.size(), 1U);
                if (!steps.empty()) {
                    ASSERT_EQ(steps.front(), adders[k].latency);
                }
                results.push_back(decode_output(record, adders[k].readout()));
            }
            ASSERT_EQ(results[0], results[1]) << "n=" << n;
            ASSERT_EQ(results[0], results[2]) << "n=" << n;
            ASSERT_EQ(results[0], reference_add(x, y, n));
        }
    }
}

TEST(Properties, EndToEndExhaustiveSmallWidths) {
    for (auto kind : kAllAdderKinds) {
        for (std::uint32_t n = 1; n <= 6; ++n) {
            const auto report = verify_exhaustive(kind, n);
            EXPECT_TRUE(report.passed()) << to_string(kind) << " n=" << n;
            EXPECT_EQ(report.trials, std::uint64_t{1} << (2 * n));
        }
    }
}

TEST(Properties, EndToEndRandomAcrossRanges) {
    for (std::uint32_t n : {7U, 13U, 31U, 62U}) {
        EXPECT_TRUE(verify_random(AdderKind::Sequential, n, 200, n).passed()) << n;
    }
    for (std::uint32_t n : {7U, 11U, 16U}) {
        EXPECT_TRUE(verify_random(AdderKind::Dcta2, n, 200, n).passed()) << n;
    }
    for (std::uint32_t n : {7U, 17U, 30U, 42U}) {
        EXPECT_TRUE(verify_random(AdderKind::Dcta3, n, 200, n).passed()) << n;
    }
}

TEST(AdderKind, ParseAndPrint) {
    for (auto kind : kAllAdderKinds) {
        EXPECT_EQ(parse_adder_kind(to_string(kind)), kind);
    }
    EXPECT_THROW((void)parse_adder_kind("vn"), std::invalid_argument);
}

}  // namespace
}  // namespace spikeadd
