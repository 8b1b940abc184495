#include "impactsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace impactsim::scenario {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const std::int64_t den = parse_int(text.substr(slash + 1), whole);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        return {parse_int(text.substr(0, slash), whole), den};
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 15 ||
        (!int_part.empty() && int_part.front() == '-') || (!frac_part.empty() && frac_part.front() == '-')) {
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    Rational value = Rational(ip) + Rational(fp, scale);
    return negative ? -value : value;
}

DiscreteScenario scenario_one() {
    return {Rational(9, 10), Rational(1, 10), {{"A", 80, 20}, {"B", 20, 80}}};
}

DiscreteScenario scenario_two() {
    return {Rational(7, 10), Rational(3, 10), {{"A", 80, 20}, {"B", 20, 80}}};
}

void validate(const DiscreteScenario& s) {
    auto probability = [](const Rational& p, const char* name) {
        if (p < 0 || p > 1) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
        }
    };
    probability(s.q, "q");
    probability(s.r, "r");
    if (s.journals.empty()) throw std::invalid_argument("a scenario needs at least one journal");
    std::int64_t total = 0;
    for (const auto& j : s.journals) {
        if (j.high_value < 0 || j.low_value < 0) {
            throw std::invalid_argument("journal " + j.name + " has a negative article count");
        }
        total += j.size();
    }
    if (total < 1) throw std::invalid_argument("a scenario needs at least one article");
}

JournalBreakdown ScenarioBreakdown::combined() const {
    JournalBreakdown sum;
    sum.name = "all";
    for (const auto& j : journals) {
        sum.low_value_lowly_cited += j.low_value_lowly_cited;
        sum.low_value_highly_cited += j.low_value_highly_cited;
        sum.high_value_lowly_cited += j.high_value_lowly_cited;
        sum.high_value_highly_cited += j.high_value_highly_cited;
    }
    return sum;
}

ScenarioBreakdown breakdown(const DiscreteScenario& s) {
    validate(s);
    ScenarioBreakdown out;
    for (const auto& j : s.journals) {
        const Rational high(j.high_value);
        const Rational low(j.low_value);
        out.journals.push_back({j.name, (1 - s.r) * low, s.r * low, (1 - s.q) * high, s.q * high});
    }
    return out;
}

std::vector<std::size_t> if_ranking(const ScenarioBreakdown& b) {
    std::vector<Rational> share;
    for (const auto& j : b.journals) {
        const Rational total = j.total();
        share.push_back(total == Rational(0) ? Rational(0) : j.highly_cited_total() / total);
    }
    std::vector<std::size_t> order(b.journals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t c) { return share[a] > share[c]; });
    return order;
}

Rational if_selection_accuracy(const DiscreteScenario& s, std::int64_t select_count) {
    if (select_count < 1) throw std::invalid_argument("select_count must be >= 1");
    const ScenarioBreakdown b = breakdown(s);
    std::int64_t taken = 0;
    std::int64_t high = 0;
    for (std::size_t j : if_ranking(b)) {
        if (taken == select_count) break;
        taken += s.journals[j].size();
        high += s.journals[j].high_value;
    }
    if (taken != select_count) {
        throw std::invalid_argument("select_count " + std::to_string(select_count) +
                                    " does not fall on a journal boundary of the IF ranking");
    }
    return Rational(100 * high, select_count);
}

Rational citation_selection_accuracy(const DiscreteScenario& s) {
    const JournalBreakdown all = breakdown(s).combined();
    const Rational highly = all.highly_cited_total();
    if (highly == Rational(0)) throw std::invalid_argument("no article is expected to be highly cited");
    return 100 * all.high_value_highly_cited / highly;
}

std::int64_t default_select_count(const DiscreteScenario& s) {
    const ScenarioBreakdown b = breakdown(s);
    for (std::size_t j : if_ranking(b)) {
        if (s.journals[j].size() > 0) return s.journals[j].size();
    }
    throw std::invalid_argument("a scenario needs at least one article");
}

double to_double(const Rational& x) {
    return boost::rational_cast<double>(x);
}

}  // namespace impactsim::scenario
