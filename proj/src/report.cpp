#include "impactsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <system_error>
#include <tuple>

namespace impactsim {

namespace {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_count(const scenario::Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", scenario::to_double(x));
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

std::string format_percent(const scenario::Rational& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f%%", scenario::to_double(x));
    return buf;
}

void table_row(std::ostream& out, const std::string& label, std::initializer_list<std::string> cells) {
    out << std::left << std::setw(12) << label << std::right;
    for (const auto& c : cells) out << std::setw(14) << c;
    out << '\n';
}

}  // namespace

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

void emit_sweep_csv(std::span<const SweepCell> cells, std::ostream& out) {
    if (cells.empty()) throw std::invalid_argument("no sweep cells to write");
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t i) {
        const SweepCell& c = cells[i];
        return std::make_tuple(c.sigma_r2, c.m, indicator_name(c.indicator.kind), c.indicator.weight_if, c.sigma_c2);
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    out << "schema_version,sigma_r2,sigma_c2,sigma_v2,m,n,alpha,indicator,weight_if,runs,"
           "accuracy_mean,accuracy_stderr,master_seed\n";
    for (std::size_t i : order) {
        const SweepCell& c = cells[i];
        out << kSweepSchemaVersion << ',' << format_fixed6(c.sigma_r2) << ',' << format_fixed6(c.sigma_c2) << ','
            << format_fixed6(c.sigma_v2) << ',' << c.m << ',' << c.n << ',' << format_fixed6(c.alpha) << ','
            << indicator_name(c.indicator.kind) << ',' << format_fixed6(c.indicator.weight_if) << ',' << c.runs
            << ',' << format_fixed6(c.accuracy_mean) << ',' << format_fixed6(c.accuracy_stderr) << ','
            << c.master_seed << '\n';
    }
}

void emit_simulation_csv(const SimulationOutcome& outcome, std::ostream& out) {
    out << "article_id,journal,value,citations\n";
    for (const Article& a : outcome.articles) {
        out << a.id << ',' << a.journal << ',' << format_g17(a.value) << ',' << format_g17(a.citations) << '\n';
    }
}

ScenarioResults evaluate_scenario(const scenario::DiscreteScenario& s, std::int64_t select_count) {
    ScenarioResults r;
    r.scenario = s;
    r.breakdown = scenario::breakdown(s);
    r.select_count = select_count > 0 ? select_count : scenario::default_select_count(s);
    r.if_accuracy = scenario::if_selection_accuracy(s, r.select_count);
    r.citation_accuracy = scenario::citation_selection_accuracy(s);
    return r;
}

void emit_scenario_report(const ScenarioResults& r, std::ostream& out) {
    using scenario::Rational;
    const auto& s = r.scenario;

    out << "Probability of being lowly or highly cited, by value\n";
    table_row(out, "", {"Lowly cited", "Highly cited"});
    table_row(out, "Low value", {format_count(Rational(1) - s.r), format_count(s.r)});
    table_row(out, "High value", {format_count(Rational(1) - s.q), format_count(s.q)});

    for (const auto& j : r.breakdown.journals) {
        out << "\nJournal " << j.name << "\n";
        table_row(out, "", {"Lowly cited", "Highly cited", "Total"});
        table_row(out, "Low value", {format_count(j.low_value_lowly_cited), format_count(j.low_value_highly_cited),
                                     format_count(j.low_value_total())});
        table_row(out, "High value", {format_count(j.high_value_lowly_cited), format_count(j.high_value_highly_cited),
                                      format_count(j.high_value_total())});
        table_row(out, "Total", {format_count(j.lowly_cited_total()), format_count(j.highly_cited_total()),
                                 format_count(j.total())});
    }

    out << "\nIF ranking:";
    for (std::size_t j : scenario::if_ranking(r.breakdown)) out << ' ' << r.breakdown.journals[j].name;
    const auto all = r.breakdown.combined();
    out << "\nIF route: top " << r.select_count << " articles by journal\n";
    out << "Citation route: " << format_count(all.highly_cited_total()) << " highly cited articles\n";
    out << "\nIF selection: " << format_percent(r.if_accuracy)
        << "  citation selection: " << format_percent(r.citation_accuracy) << "\n";
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

}  // namespace impactsim
