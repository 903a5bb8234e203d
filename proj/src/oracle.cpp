#include "spikeadd/oracle.hpp"

#include <algorithm>
#include <mutex>

#include "spikeadd/errors.hpp"
#include "spikeadd/parallel.hpp"

namespace spikeadd {

DecodedSum reference_add(const UInt& x, const UInt& y, std::uint32_t n) {
    const UInt modulus = UInt(1) << n;
    if (x < 0 || y < 0 || x >= modulus || y >= modulus) {
        throw ValueOutOfRange("operands must fit in " + std::to_string(n) + " bits");
    }
    const UInt total = x + y;
    return DecodedSum{total % modulus, total >= modulus};
}

UInt OperandGenerator::next(std::uint32_t n) {
    UInt v = 0;
    for (std::uint32_t shift = 0; shift < n; shift += 64) {
        v |= UInt(engine_()) << shift;
    }
    return v & ((UInt(1) << n) - 1);
}

std::pair<UInt, UInt> OperandGenerator::next_pair(std::uint32_t n) {
    auto x = next(n);
    auto y = next(n);
    return {std::move(x), std::move(y)};
}

UInt worst_case_operand(std::uint32_t n) {
    if (n == 0) {
        throw ValueOutOfRange("width must be at least 1 bit");
    }
    return (UInt(1) << (n - 1)) - 1;
}

DecodedSum simulate_addition(const Simulator& sim, const AdderDescriptor& adder, const UInt& x,
                             const UInt& y) {
    // Run past the read step by the longest delay so any late output spike
    // would land inside the window the strict decoder checks.
    const auto record = sim.run(adder.schedule(x, y, 0), adder.latency + adder.circuit.max_delay() + 1);
    return decode_output(record, adder.readout(0));
}

namespace {

const char* mode_name(VerifyMode mode) {
    return mode == VerifyMode::Exhaustive ? "exhaustive" : "random";
}

struct Outcome {
    std::optional<VerificationFailure> failure;
    bool spurious = false;
};

Outcome check_pair(const Simulator& sim, const AdderDescriptor& adder, const UInt& x, const UInt& y) {
    Outcome out;
    const auto expected = reference_add(x, y, adder.n);
    try {
        const auto got = simulate_addition(sim, adder, x, y);
        if (!(got == expected)) {
            out.failure = VerificationFailure{x, y, expected, got, "mismatch"};
        }
    } catch (const SpuriousSpike& e) {
        out.spurious = true;
        out.failure = VerificationFailure{x, y, expected, std::nullopt, e.what()};
    }
    return out;
}

void run_pairs(VerificationReport& report, const AdderDescriptor& adder,
               const std::vector<std::pair<UInt, UInt>>& pairs) {
    const Simulator sim(adder.circuit);
    std::vector<Outcome> outcomes(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        outcomes[i] = check_pair(sim, adder, pairs[i].first, pairs[i].second);
    });
    report.trials = pairs.size();
    for (auto& o : outcomes) {
        report.spurious_spikes += o.spurious ? 1 : 0;
        if (o.failure) {
            report.failures.push_back(std::move(*o.failure));
        }
    }
    std::stable_sort(report.failures.begin(), report.failures.end(),
                     [](const VerificationFailure& a, const VerificationFailure& b) {
                         return std::tie(a.x, a.y) < std::tie(b.x, b.y);
                     });
}

}  // namespace

VerificationReport verify_pairs(const AdderDescriptor& adder,
                                const std::vector<std::pair<UInt, UInt>>& pairs) {
    VerificationReport report;
    report.kind = adder.kind;
    report.n = adder.n;
    report.options = AdderOptions{adder.relay_layers, adder.per_neuron_thresholds};
    run_pairs(report, adder, pairs);
    return report;
}

VerificationReport verify_exhaustive(AdderKind kind, std::uint32_t n, const AdderOptions& options,
                                     const HardwareModel& hw, std::uint32_t cap) {
    // Build first so an unrepresentable width reports its constraint, not the cap.
    const auto adder = build_adder(kind, n, options, hw);
    if (n > cap) {
        throw CapExceeded("exhaustive verification is capped at " + std::to_string(cap) + " bits, got " +
                          std::to_string(n));
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<std::pair<UInt, UInt>> pairs;
    pairs.reserve(count * count);
    for (std::uint64_t x = 0; x < count; ++x) {
        for (std::uint64_t y = 0; y < count; ++y) {
            pairs.emplace_back(UInt(x), UInt(y));
        }
    }
    VerificationReport report;
    report.kind = kind;
    report.n = n;
    report.options = options;
    report.mode = VerifyMode::Exhaustive;
    run_pairs(report, adder, pairs);
    return report;
}

VerificationReport verify_random(AdderKind kind, std::uint32_t n, std::uint64_t trials, std::uint64_t seed,
                                 const AdderOptions& options, const HardwareModel& hw) {
    const auto adder = build_adder(kind, n, options, hw);
    const UInt top = (UInt(1) << n) - 1;
    const UInt worst = worst_case_operand(n);
    std::vector<std::pair<UInt, UInt>> pairs{{0, 0}, {top, top}, {worst, worst}};
    OperandGenerator gen(seed);
    while (pairs.size() < trials) {
        pairs.push_back(gen.next_pair(n));
    }
    VerificationReport report;
    report.kind = kind;
    report.n = n;
    report.options = options;
    report.mode = VerifyMode::Random;
    report.seed = seed;
    run_pairs(report, adder, pairs);
    return report;
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : report.failures) {
        nlohmann::json entry{{"x", f.x.str()},
                             {"y", f.y.str()},
                             {"expected", {{"value", f.expected.value.str()}, {"overflow", f.expected.overflow}}},
                             {"error", f.error}};
        if (f.got) {
            entry["got"] = {{"value", f.got->value.str()}, {"overflow", f.got->overflow}};
        } else {
            entry["got"] = nullptr;
        }
        failures.push_back(std::move(entry));
    }
    nlohmann::json doc{{"adder", to_string(report.kind)},
                       {"n", report.n},
                       {"mode", mode_name(report.mode)},
                       {"relay_layers", report.options.relay_layers},
                       {"per_neuron_thresholds", report.options.per_neuron_thresholds},
                       {"trials", report.trials},
                       {"passed", report.passed()},
                       {"spurious_spikes", report.spurious_spikes},
                       {"failures", failures}};
    doc["seed"] = report.seed ? nlohmann::json(*report.seed) : nlohmann::json(nullptr);
    return doc;
}

}  // namespace spikeadd
