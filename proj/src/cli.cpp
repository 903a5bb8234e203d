#include "spikeadd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spikeadd/circuit_io.hpp"
#include "spikeadd/constraints.hpp"
#include "spikeadd/errors.hpp"
#include "spikeadd/oracle.hpp"
#include "spikeadd/parallel.hpp"

namespace spikeadd::cli {

namespace {

UInt parse_operand(const std::string& text) {
    if (text.empty() || text.front() == '-') {
        throw std::invalid_argument("operand must be a non-negative integer: '" + text + "'");
    }
    try {
        return UInt(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("operand is not an integer: '" + text + "'");
    }
}

std::string join(const std::vector<std::string>& fields, char sep = ',') {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            line.push_back(sep);
        }
        line += fields[i];
    }
    return line;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string describe(AdderKind kind, std::uint32_t n, const AdderOptions& options) {
    std::string s = to_string(kind) + " " + std::to_string(n) + "-bit";
    if (kind == AdderKind::Sequential && options.relay_layers > 0) {
        s += " (" + std::to_string(options.relay_layers) + " relay layer" +
             (options.relay_layers > 1 ? "s" : "") + ")";
    }
    if (kind == AdderKind::Dcta3 && options.per_neuron_thresholds) {
        s += " (per-neuron thresholds)";
    }
    return s;
}

nlohmann::json report_json(const ProfileReport& r, const ResourceCounts& theory) {
    return nlohmann::json{{"adder", to_string(r.kind)},
                          {"n", r.n},
                          {"x", r.x.str()},
                          {"y", r.y.str()},
                          {"value", r.result.str()},
                          {"overflow", r.overflow},
                          {"latency", theory.time_steps},
                          {"total_steps", r.total_steps},
                          {"spikes", r.spikes},
                          {"synaptic_events", r.synaptic_events},
                          {"neurons", r.neurons},
                          {"synapses", r.synapses},
                          {"core_fraction", r.core_fraction},
                          {"passed", r.passed},
                          {"error", r.error}};
}

void write_text(const std::optional<std::filesystem::path>& path, const std::string& text,
                std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path);
    if (!file) {
        throw std::runtime_error("cannot write " + path->string());
    }
    file << text;
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "human") {
        return Format::Human;
    }
    if (name == "json") {
        return Format::Json;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    throw std::invalid_argument("unknown format '" + name + "'");
}

BitRange parse_bit_range(const std::string& text) {
    auto to_width = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad bit range '" + text + "'");
        }
        const auto v = std::stoul(s);
        if (v == 0 || v > kMaxSearchBits) {
            throw std::invalid_argument("bit width out of range in '" + text + "'");
        }
        return static_cast<std::uint32_t>(v);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto n = to_width(text);
        return {n, n};
    }
    BitRange r{to_width(text.substr(0, dots)), to_width(text.substr(dots + 2))};
    if (r.first > r.last) {
        throw std::invalid_argument("empty bit range '" + text + "'");
    }
    return r;
}

std::vector<AdderKind> parse_adder_list(const std::string& text) {
    if (text == "all") {
        return {std::begin(kAllAdderKinds), std::end(kAllAdderKinds)};
    }
    std::vector<AdderKind> kinds;
    for (const auto& name : split(text, ',')) {
        const auto kind = parse_adder_kind(name);
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
            kinds.push_back(kind);
        }
    }
    if (kinds.empty()) {
        throw std::invalid_argument("no adder given");
    }
    return kinds;
}

InputPolicy parse_input_policy(const std::string& name) {
    if (name == "worst-case") {
        return InputPolicy::WorstCase;
    }
    if (name == "random") {
        return InputPolicy::Random;
    }
    if (name == "fixed") {
        return InputPolicy::Fixed;
    }
    throw std::invalid_argument("unknown input policy '" + name + "'");
}

int cmd_add(const AddRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& err) {
    UInt x;
    UInt y;
    try {
        x = parse_operand(req.x);
        y = parse_operand(req.y);
        (void)reference_add(x, y, req.bits);  // range check
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    AdderDescriptor adder;
    ProfileReport report;
    try {
        adder = build_adder(req.kind, req.bits, req.options, hw);
        report = profile(adder, x, y, hw);
    } catch (const ConstraintError& e) {
        err << "constraint violation: " << e.what() << '\n';
        return kExitConstraint;
    }
    const auto theory = theoretical_resources(req.kind, req.bits);
    const auto expected = reference_add(x, y, req.bits);

    if (req.spikes_csv) {
        const Simulator sim(adder.circuit);
        write_text(req.spikes_csv, sim.run(adder.schedule(x, y), adder.latency + 1).to_csv(), out);
    }

    switch (req.format) {
        case Format::Json:
            out << report_json(report, theory).dump(2) << '\n';
            break;
        case Format::Csv:
            out << join(profile_csv_columns()) << '\n' << join(profile_csv_fields(report)) << '\n';
            break;
        case Format::Human:
            out << describe(req.kind, req.bits, req.options) << ": " << x << " + " << y << " = "
                << report.result << '\n'
                << "overflow: " << (report.overflow ? "yes" : "no") << '\n'
                << "latency: " << adder.latency << " steps (" << report.total_steps
                << " with input and output)\n"
                << "spikes: " << report.spikes << ", synaptic events: " << report.synaptic_events << '\n'
                << "adder synapses: " << adder.circuit.synapse_count()
                << (theory.closed_form ? "" : " (exact count, no closed form for this width)") << '\n'
                << "reference: " << expected.value << (expected.overflow ? " with overflow" : "") << " -> "
                << (report.passed ? "PASS" : "FAIL") << '\n';
            if (!report.error.empty()) {
                out << "error: " << report.error << '\n';
            }
            break;
    }
    return report.passed ? kExitOk : kExitMismatch;
}

int cmd_info(const InfoRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& /*err*/) {
    const auto theory = theoretical_resources(req.kind, req.bits);
    const auto adder = make_adder(req.kind, req.bits, req.options, hw);
    const auto violations = validate(adder.circuit, hw);
    const auto usage = core_usage(adder.circuit, hw);
    const auto max_bits = max_supported_bits(req.kind, hw, req.options);

    std::string status;
    if (!violations.deployable()) {
        status = "unsupported: " + violations.summary();
    } else if (req.bits == max_bits) {
        status = "at maximum";
    } else {
        status = "supported";
    }

    if (req.format == Format::Json) {
        nlohmann::json doc{
            {"adder", to_string(req.kind)},
            {"n", req.bits},
            {"theoretical",
             {{"time", theory.time_steps},
              {"neurons", theory.neurons},
              {"synapses", theory.synapses},
              {"closed_form", theory.closed_form}}},
            {"constructed",
             {{"time", adder.latency},
              {"neurons", adder.circuit.neuron_count()},
              {"synapses", adder.circuit.synapse_count()},
              {"relay_neurons", adder.relays.size()}}},
            {"latency_with_io", adder.latency + 2},
            {"max_delay", usage.max_delay},
            {"core_fraction", usage.fraction},
            {"core_capacity", usage.capacity},
            {"max_supported_bits", max_bits},
            {"status", status}};
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    out << "adder: " << describe(req.kind, req.bits, req.options) << '\n'
        << "theoretical: time " << theory.time_steps << ", neurons " << theory.neurons << ", synapses "
        << theory.synapses << (theory.closed_form ? "" : " (exact count; closed form needs a square width)")
        << '\n'
        << "constructed: time " << adder.latency << ", neurons " << adder.circuit.neuron_count()
        << ", synapses " << adder.circuit.synapse_count();
    if (!adder.relays.empty()) {
        out << " (" << adder.relays.size() << " relay neurons)";
    }
    out << '\n'
        << "latency with input/output: " << adder.latency + 2 << " steps\n"
        << "max delay: " << usage.max_delay << '\n'
        << "core fraction: " << usage.fraction << " of " << usage.capacity << " neurons\n"
        << "max supported bits: " << max_bits << '\n'
        << "status: " << status << '\n';
    return kExitOk;
}

int cmd_verify(const VerifyRequest& req, const HardwareModel& hw, std::ostream& out, std::ostream& err) {
    bool constraint = false;
    bool mismatch = false;
    nlohmann::json reports = nlohmann::json::array();
    if (req.format == Format::Csv) {
        out << "adder,n,mode,trials,failures,spurious_spikes,passed\n";
    }
    for (auto kind : req.kinds) {
        for (auto n = req.bits.first; n <= req.bits.last; ++n) {
            try {
                const auto report = req.mode == VerifyMode::Exhaustive
                                        ? verify_exhaustive(kind, n, req.options, hw)
                                        : verify_random(kind, n, req.trials, req.seed, req.options, hw);
                mismatch = mismatch || !report.passed();
                switch (req.format) {
                    case Format::Json:
                        reports.push_back(to_json(report));
                        break;
                    case Format::Csv:
                        out << to_string(kind) << ',' << n << ','
                            << (req.mode == VerifyMode::Exhaustive ? "exhaustive" : "random") << ','
                            << report.trials << ',' << report.failures.size() << ',' << report.spurious_spikes
                            << ',' << (report.passed() ? 1 : 0) << '\n';
                        break;
                    case Format::Human:
                        out << describe(kind, n, req.options) << ": " << report.trials << " trials, "
                            << report.failures.size() << " failures -> " << (report.passed() ? "PASS" : "FAIL")
                            << '\n';
                        for (std::size_t i = 0; i < std::min<std::size_t>(report.failures.size(), 5); ++i) {
                            const auto& f = report.failures[i];
                            out << "  " << f.x << " + " << f.y << ": expected " << f.expected.value << ", "
                                << (f.got ? f.got->value.str() : std::string("no result")) << " (" << f.error
                                << ")\n";
                        }
                        break;
                }
            } catch (const ConstraintError& e) {
                constraint = true;
                err << "constraint violation: " << e.what() << '\n';
                if (req.format == Format::Json) {
                    reports.push_back({{"adder", to_string(kind)}, {"n", n}, {"error", e.what()}});
                }
            } catch (const CapExceeded& e) {
                constraint = true;
                err << "error: " << e.what() << '\n';
                if (req.format == Format::Json) {
                    reports.push_back({{"adder", to_string(kind)}, {"n", n}, {"error", e.what()}});
                }
            }
        }
    }
    if (req.format == Format::Json) {
        out << nlohmann::json{{"passed", !constraint && !mismatch}, {"reports", reports}}.dump(2) << '\n';
    }
    if (constraint) {
        return kExitConstraint;
    }
    return mismatch ? kExitMismatch : kExitOk;
}

const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> columns = [] {
        auto c = profile_csv_columns();
        for (const char* extra : {"vn_time", "vn_neurons", "vn_synapses", "vn_max_bits", "streaming_time",
                                  "streaming_neurons", "streaming_synapses", "streaming_max_bits", "error"}) {
            c.emplace_back(extra);
        }
        return c;
    }();
    return columns;
}

namespace {

struct SweepPoint {
    AdderKind kind;
    std::uint32_t n;
};

std::vector<std::string> reference_fields(std::uint32_t n) {
    // Reference figures of the two adders that are compared against but not built.
    const std::uint64_t w = n;
    return {std::to_string(w + 1), std::to_string(4 * w - 1), std::to_string(12 * w - 6), "63",
            std::to_string(w + 1), "4",                       "9",                        "inf"};
}

std::string csv_escape(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::pair<UInt, UInt> sweep_operands(const SweepSpec& spec, std::uint32_t n) {
    switch (spec.policy) {
        case InputPolicy::WorstCase: {
            const auto w = worst_case_operand(n);
            return {w, w};
        }
        case InputPolicy::Random: {
            // One pair per width, seeded by seed + n so a point's operands do
            // not depend on which other widths are swept.
            OperandGenerator gen(spec.seed + n);
            return gen.next_pair(n);
        }
        case InputPolicy::Fixed:
            return {parse_operand(spec.x), parse_operand(spec.y)};
    }
    throw std::invalid_argument("unknown input policy");
}

std::string sweep_row(const SweepSpec& spec, const SweepPoint& point, const HardwareModel& hw) {
    std::vector<std::string> fields;
    std::string error;
    try {
        const auto [x, y] = sweep_operands(spec, point.n);
        const auto adder = build_adder(point.kind, point.n, spec.options, hw);
        auto report = profile(adder, x, y, hw);
        for (std::uint32_t r = 1; r < spec.repeat; ++r) {
            const auto again = profile(adder, x, y, hw);
            if (profile_csv_fields(again) != profile_csv_fields(report)) {
                report.passed = false;
                report.error = "repeated run produced different counters";
            }
        }
        fields = profile_csv_fields(report);
        error = report.error;
    } catch (const std::exception& e) {
        fields.assign(profile_csv_columns().size(), "");
        fields[0] = to_string(point.kind);
        fields[1] = std::to_string(point.n);
        fields[12] = "0";
        error = e.what();
    }
    for (auto& f : reference_fields(point.n)) {
        fields.push_back(std::move(f));
    }
    fields.push_back(csv_escape(error));
    return join(fields);
}

}  // namespace

int cmd_sweep(const SweepSpec& spec, const HardwareModel& hw, std::ostream& out, std::ostream& err) {
    auto kinds = spec.kinds;
    std::sort(kinds.begin(), kinds.end(),
              [](AdderKind a, AdderKind b) { return to_string(a) < to_string(b); });
    std::vector<SweepPoint> points;
    for (auto kind : kinds) {
        const auto max_bits = max_supported_bits(kind, hw, spec.options);
        auto last = spec.bits.last;
        if (last > max_bits) {
            err << "warning: " << to_string(kind) << " supports at most " << max_bits << " bits; clipping "
                << spec.bits.first << ".." << spec.bits.last << '\n';
            last = max_bits;
        }
        for (auto n = spec.bits.first; n <= last; ++n) {
            points.push_back({kind, n});
        }
    }

    std::vector<std::string> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) { rows[i] = sweep_row(spec, points[i], hw); });

    std::ostringstream csv;
    csv << join(sweep_csv_columns()) << '\n';
    bool all_passed = true;
    for (const auto& row : rows) {
        csv << row << '\n';
        all_passed = all_passed && split(row, ',')[12] == "1";
    }
    write_text(spec.output, csv.str(), out);
    if (spec.output) {
        err << "wrote " << rows.size() << " rows to " << spec.output->string() << '\n';
    }
    return all_passed ? kExitOk : kExitMismatch;
}

int cmd_export_circuit(const ExportRequest& req, const HardwareModel& hw, std::ostream& out,
                       std::ostream& err) {
    AdderDescriptor adder;
    try {
        adder = build_adder(req.kind, req.bits, req.options, hw);
    } catch (const ConstraintError& e) {
        err << "constraint violation: " << e.what() << '\n';
        return kExitConstraint;
    }
    nlohmann::ordered_json doc;
    doc["adder"] = {{"kind", to_string(adder.kind)},
                    {"n", adder.n},
                    {"latency", adder.latency},
                    {"relay_layers", adder.relay_layers}};
    const auto circuit = circuit_to_json(adder.circuit);
    for (const auto& [key, value] : circuit.items()) {
        doc[key] = value;
    }
    write_text(req.output, doc.dump(2) + "\n", out);
    return kExitOk;
}

std::vector<std::string> check_sweep_csv(const std::string& csv) {
    std::vector<std::string> problems;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != join(sweep_csv_columns())) {
        problems.push_back("header does not match the sweep schema");
        return problems;
    }
    const auto width = sweep_csv_columns().size();
    auto is_uint = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    std::pair<std::string, std::uint64_t> previous{"", 0};
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto where = "row " + std::to_string(row) + ": ";
        const auto f = split(line, ',');
        if (f.size() != width) {
            problems.push_back(where + "expected " + std::to_string(width) + " fields");
            continue;
        }
        try {
            (void)parse_adder_kind(f[0]);
        } catch (const std::exception&) {
            problems.push_back(where + "unknown adder '" + f[0] + "'");
        }
        if (!is_uint(f[1])) {
            problems.push_back(where + "n is not an unsigned integer");
            continue;
        }
        if (f[12] != "0" && f[12] != "1") {
            problems.push_back(where + "passed must be 0 or 1");
        }
        if (f[12] == "1") {
            for (std::size_t c : {2, 3, 4, 5, 6, 7, 8, 10}) {
                if (!is_uint(f[c])) {
                    problems.push_back(where + profile_csv_columns()[c] + " is not an unsigned integer");
                }
            }
            try {
                if (std::stod(f[9]) < 0) {
                    problems.push_back(where + "negative core_fraction");
                }
            } catch (const std::exception&) {
                problems.push_back(where + "core_fraction is not a number");
            }
            if (f[11] != "0" && f[11] != "1") {
                problems.push_back(where + "overflow must be 0 or 1");
            }
        }
        std::pair<std::string, std::uint64_t> key{f[0], std::stoull(f[1])};
        if (row > 1 && key <= previous) {
            problems.push_back(where + "rows are not sorted by (adder, n)");
        }
        previous = key;
    }
    return problems;
}

}  // namespace spikeadd::cli
