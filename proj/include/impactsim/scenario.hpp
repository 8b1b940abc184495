#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace impactsim::scenario {

/// Expected-value arithmetic is exact: probabilities and counts are rationals.
///
/// Compare a Rational only against another Rational: with Boost 1.74 in
/// C++20 mode, rational == integer recurses through the rewritten reversed
/// operator and never returns.
using Rational = boost::rational<std::int64_t>;

/// Parses "0.9", "7/10" or "3" into an exact rational. Throws
/// std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

struct JournalComposition {
    std::string name;
    std::int64_t high_value = 0;
    std::int64_t low_value = 0;

    std::int64_t size() const { return high_value + low_value; }
    bool operator==(const JournalComposition&) const = default;
};

/// Two-valued world: articles are of high or low value and end up highly or
/// lowly cited with value-dependent probabilities.
struct DiscreteScenario {
    Rational q{9, 10};  ///< P(highly cited | high value)
    Rational r{1, 10};  ///< P(highly cited | low value)
    std::vector<JournalComposition> journals;

    bool operator==(const DiscreteScenario&) const = default;
};

/// q = 0.9, r = 0.1; journal A = 80 high / 20 low, journal B = 20 / 80.
DiscreteScenario scenario_one();
/// As scenario_one with q = 0.7, r = 0.3.
DiscreteScenario scenario_two();

/// Throws std::invalid_argument naming the violated constraint.
void validate(const DiscreteScenario& s);

/// Expected 2x2 breakdown (value x citedness) of one journal.
struct JournalBreakdown {
    std::string name;
    Rational low_value_lowly_cited;
    Rational low_value_highly_cited;
    Rational high_value_lowly_cited;
    Rational high_value_highly_cited;

    Rational low_value_total() const { return low_value_lowly_cited + low_value_highly_cited; }
    Rational high_value_total() const { return high_value_lowly_cited + high_value_highly_cited; }
    Rational lowly_cited_total() const { return low_value_lowly_cited + high_value_lowly_cited; }
    Rational highly_cited_total() const { return low_value_highly_cited + high_value_highly_cited; }
    Rational total() const { return lowly_cited_total() + highly_cited_total(); }
};

struct ScenarioBreakdown {
    std::vector<JournalBreakdown> journals;

    /// Cell-wise sum over journals.
    JournalBreakdown combined() const;
};

ScenarioBreakdown breakdown(const DiscreteScenario& s);

/// Journal indices by descending share of highly cited articles (the
/// journal's impact factor in this two-level world); ties keep listed order.
/// Empty journals have share 0.
std::vector<std::size_t> if_ranking(const ScenarioBreakdown& b);

/// Percentage of high-value articles among the whole journals taken from the
/// top of the IF ranking until select_count articles are reached. Throws
/// std::invalid_argument when select_count does not fall on a journal
/// boundary.
Rational if_selection_accuracy(const DiscreteScenario& s, std::int64_t select_count);

/// Expected percentage of high-value articles among all highly cited ones.
/// Throws std::invalid_argument when no article is expected to be highly
/// cited.
Rational citation_selection_accuracy(const DiscreteScenario& s);

/// Default selection size for the IF route: the size of the top-ranked journal.
std::int64_t default_select_count(const DiscreteScenario& s);

double to_double(const Rational& x);

}  // namespace impactsim::scenario
