#include "smlr/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace smlr {

std::string_view to_string(PlannerKind kind) {
    return kind == PlannerKind::kSmlr ? "smlr" : "flat";
}

PlannerKind parse_planner_kind(std::string_view name) {
    if (name == "smlr") return PlannerKind::kSmlr;
    if (name == "flat") return PlannerKind::kFlat;
    throw std::invalid_argument("unknown planner \"" + std::string(name) + "\" (expected smlr or flat)");
}

PlannerConfig ConfigOverrides::apply(PlannerConfig base, std::uint64_t seed) const {
    if (max_failures) base.max_failures = *max_failures;
    if (delta_fraction) base.delta_fraction = *delta_fraction;
    if (eta) base.eta = *eta;
    if (stretch_t) base.stretch_t = *stretch_t;
    if (time_limit) base.time_limit = *time_limit;
    if (check_resolution) base.check_resolution = *check_resolution;
    base.seed = seed;
    base.validate();
    return base;
}

RunRow make_row(const std::string& scenario, PlannerKind planner, std::uint64_t seed, const PlannerResult& result) {
    RunRow row;
    row.scenario = scenario;
    row.planner = std::string(to_string(planner));
    row.seed = seed;
    row.status = std::string(to_string(result.status));
    row.seconds = result.seconds;
    if (result.status == PlannerStatus::kFeasible) row.cost = result.cost;
    for (const LevelReport& lr : result.levels) {
        row.levels.push_back({lr.level, lr.vertices, lr.edges, lr.failures, lr.coverage});
    }
    return row;
}

RunOutcome run_single(const Scenario& scenario, PlannerKind planner, std::uint64_t seed,
                      const ConfigOverrides& overrides) {
    RunOutcome out;
    out.row.scenario = scenario.name;
    out.row.planner = std::string(to_string(planner));
    out.row.seed = seed;
    try {
        const PlannerConfig cfg = overrides.apply(scenario.defaults, seed);
        PlannerResult result;
        if (planner == PlannerKind::kFlat) {
            const FiberBundleSequence flat = scenario.flat_sequence();
            result = smlr_solve(flat, scenario.start, scenario.goal, cfg);
        } else {
            result = smlr_solve(scenario.levels(), scenario.start, scenario.goal, cfg);
        }
        out.row = make_row(scenario.name, planner, seed, result);
        out.result = std::move(result);
    } catch (const std::exception& e) {
        out.row.status = "error";
        out.error = scenario.name + " / " + out.row.planner + " / seed " + std::to_string(seed) + ": " + e.what();
    }
    return out;
}

ResultTable run_benchmark(const std::vector<Scenario>& scenarios, const std::vector<PlannerKind>& planners,
                          const std::vector<std::uint64_t>& seeds, const ConfigOverrides& overrides,
                          std::size_t workers) {
    struct Job {
        const Scenario* scenario;
        PlannerKind planner;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const Scenario& sc : scenarios) {
        for (PlannerKind p : planners) {
            for (std::uint64_t s : seeds) jobs.push_back({&sc, p, s});
        }
    }

    std::vector<RunOutcome> outcomes(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            outcomes[i] = run_single(*jobs[i].scenario, jobs[i].planner, jobs[i].seed, overrides);
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(1, jobs.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    ResultTable table;
    for (RunOutcome& o : outcomes) {
        if (!o.error.empty()) table.errors.push_back(o.error);
        table.rows.push_back(std::move(o.row));
    }
    table.summary = summarize(table.rows);
    return table;
}

std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows) {
    std::vector<SummaryRow> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    std::vector<double> totals;
    for (const RunRow& r : rows) {
        auto [it, inserted] = index.try_emplace({r.scenario, r.planner}, out.size());
        if (inserted) {
            out.push_back({.scenario = r.scenario, .planner = r.planner});
            totals.push_back(0.0);
        }
        SummaryRow& s = out[it->second];
        ++s.runs;
        totals[it->second] += r.seconds;
        if (r.status == "feasible") {
            ++s.feasible;
        } else if (r.status == "infeasible") {
            ++s.infeasible;
        } else if (r.status == "timeout") {
            ++s.timeout;
        } else {
            ++s.error;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].mean_seconds = totals[i] / static_cast<double>(out[i].runs);
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number \"" + text + "\"");
    }
    return value;
}

void check_field(const std::string& text, const char* what) {
    if (text.find_first_of(",\n\r\"") != std::string::npos) {
        throw std::invalid_argument(std::string(what) + " contains a character not allowed in csv: " + text);
    }
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << kCsvHeader << '\n';
    for (const RunRow& r : rows) {
        check_field(r.scenario, "scenario name");
        check_field(r.planner, "planner name");
        const std::string prefix = r.scenario + ',' + r.planner + ',' + std::to_string(r.seed) + ',' + r.status +
                                   ',' + format_double(r.seconds) + ',' + (r.cost ? format_double(*r.cost) : "") +
                                   ',';
        if (r.levels.empty()) {
            out << prefix << ",,,,\n";
            continue;
        }
        for (const LevelRow& l : r.levels) {
            out << prefix << l.level << ',' << l.vertices << ',' << l.edges << ',' << l.failures << ','
                << format_double(l.coverage) << '\n';
        }
    }
}

std::vector<RunRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or wrong header");
    std::vector<RunRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11) {
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected 11 fields");
        }
        RunRow r;
        r.scenario = f[0];
        r.planner = f[1];
        r.seed = parse_number<std::uint64_t>(f[2], lineno);
        r.status = f[3];
        r.seconds = parse_number<double>(f[4], lineno);
        if (!f[5].empty()) r.cost = parse_number<double>(f[5], lineno);

        const bool continues = !rows.empty() && !f[6].empty() && rows.back().scenario == r.scenario &&
                               rows.back().planner == r.planner && rows.back().seed == r.seed &&
                               !rows.back().levels.empty() &&
                               parse_number<std::size_t>(f[6], lineno) == rows.back().levels.back().level + 1;
        if (!continues) rows.push_back(r);
        if (!f[6].empty()) {
            rows.back().levels.push_back({parse_number<std::size_t>(f[6], lineno),
                                          parse_number<std::size_t>(f[7], lineno),
                                          parse_number<std::size_t>(f[8], lineno),
                                          parse_number<std::uint64_t>(f[9], lineno),
                                          parse_number<double>(f[10], lineno)});
        }
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
    out << "scenario,planner,runs,mean_seconds,feasible,infeasible,timeout,error\n";
    for (const SummaryRow& s : summary) {
        out << s.scenario << ',' << s.planner << ',' << s.runs << ',' << format_double(s.mean_seconds) << ','
            << s.feasible << ',' << s.infeasible << ',' << s.timeout << ',' << s.error << '\n';
    }
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary) {
    std::size_t width = 8;
    for (const SummaryRow& s : summary) width = std::max(width, s.scenario.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "scenario" << std::setw(8) << "planner"
        << "mean s / f|i|t\n";
    for (const SummaryRow& s : summary) {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(3) << s.mean_seconds << " / " << s.feasible << '|' << s.infeasible
             << '|' << s.timeout;
        if (s.error > 0) cell << " (" << s.error << " errors)";
        out << std::left << std::setw(static_cast<int>(width) + 2) << s.scenario << std::setw(8) << s.planner
            << cell.str() << '\n';
    }
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    const std::string s(text);
    auto number = [](const std::string& t) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            throw std::invalid_argument("bad seed \"" + t + "\"");
        }
        return v;
    };
    std::vector<std::uint64_t> out;
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const std::uint64_t lo = number(s.substr(0, dots));
        const std::uint64_t hi = number(s.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty seed range " + s);
        for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    for (const std::string& part : split(s, ',')) out.push_back(number(part));
    if (out.empty()) throw std::invalid_argument("empty seed list");
    return out;
}

}  // namespace smlr
