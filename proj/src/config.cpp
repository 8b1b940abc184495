#include "impactsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace impactsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string_view> out;
    s = trim(s);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, std::string_view text, const char* expected) {
    text = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(key, std::string("expected ") + expected + ", got '" + std::string(text) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) throw ConfigError(key, std::string("expected ") + expected + ", got '" + std::string(text) + "'");
    }
    return v;
}

int parse_int(const std::string& key, std::string_view text) {
    return parse_number<int>(key, text, "an integer");
}

double parse_real(const std::string& key, std::string_view text) {
    return parse_number<double>(key, text, "a real number");
}

std::uint64_t parse_seed(const std::string& key, std::string_view text) {
    return parse_number<std::uint64_t>(key, text, "an unsigned 64-bit integer");
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, std::string_view text, F&& parse_one) {
    std::vector<T> out;
    for (std::string_view item : split_list(text)) out.push_back(parse_one(key, item));
    return out;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& format) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += format(items[i]);
    }
    return out;
}

std::string format_rational(const scenario::Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

scenario::Rational parse_probability(const std::string& key, std::string_view text) {
    try {
        return scenario::parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

std::vector<scenario::JournalComposition> parse_journals(const std::string& key, std::string_view text) {
    std::vector<scenario::JournalComposition> out;
    for (std::string_view item : split_list(text)) {
        const auto parts = split_list(item, ':');
        if (parts.size() != 3 || parts[0].empty()) {
            throw ConfigError(key, "expected name:high_value:low_value entries, got '" + std::string(item) + "'");
        }
        out.push_back({std::string(parts[0]), parse_number<std::int64_t>(key, parts[1], "an integer"),
                       parse_number<std::int64_t>(key, parts[2], "an integer")});
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"model.n", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.n = parse_int(k, v); }},
        {"model.m", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.m = parse_int(k, v); }},
        {"model.sigma_v2", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.sigma_v2 = parse_real(k, v); }},
        {"model.sigma_c2", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.sigma_c2 = parse_real(k, v); }},
        {"model.sigma_r2", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.sigma_r2 = parse_real(k, v); }},
        {"model.seed", [](RunConfig& c, const std::string& k, std::string_view v) { c.model.seed = parse_seed(k, v); }},
        {"sweep.runs", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.runs = parse_int(k, v); }},
        {"sweep.n", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.n = parse_int(k, v); }},
        {"sweep.alpha", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.alpha = parse_real(k, v); }},
        {"sweep.total_log_variance", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.total_log_variance = parse_real(k, v); }},
        {"sweep.master_seed", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.master_seed = parse_seed(k, v); }},
        {"sweep.sigma_r2_list", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.sigma_r2_list = parse_list<double>(k, v, parse_real); }},
        {"sweep.sigma_c2_grid", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.sigma_c2_grid = parse_list<double>(k, v, parse_real); }},
        {"sweep.m_list", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.m_list = parse_list<int>(k, v, parse_int); }},
        {"sweep.weight_if_list", [](RunConfig& c, const std::string& k, std::string_view v) { c.sweep.weight_if_list = parse_list<double>(k, v, parse_real); }},
        {"sweep.indicators", [](RunConfig& c, const std::string& k, std::string_view v) {
             c.sweep.indicators = parse_list<IndicatorKind>(k, v, [](const std::string& key, std::string_view item) {
                 try {
                     return parse_indicator_kind(item);
                 } catch (const std::invalid_argument& e) {
                     throw ConfigError(key, e.what());
                 }
             });
         }},
        {"scenario.q", [](RunConfig& c, const std::string& k, std::string_view v) { c.scenario.q = parse_probability(k, v); }},
        {"scenario.r", [](RunConfig& c, const std::string& k, std::string_view v) { c.scenario.r = parse_probability(k, v); }},
        {"scenario.journals", [](RunConfig& c, const std::string& k, std::string_view v) { c.scenario.journals = parse_journals(k, v); }},
        {"scenario.select", [](RunConfig& c, const std::string& k, std::string_view v) { c.scenario_select = parse_number<std::int64_t>(k, v, "an integer"); }},
        {"output.path", [](RunConfig& c, const std::string&, std::string_view v) { c.output_path = std::string(trim(v)); }},
        {"run.workers", [](RunConfig& c, const std::string& k, std::string_view v) { c.workers = parse_int(k, v); }},
    };
    return table;
}

void apply(RunConfig& config, const std::string& key, std::string_view value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown key");
    it->second(config, key, value);
}

void require(bool ok, const char* key, const std::string& message) {
    if (!ok) throw ConfigError(key, message);
}

void validate_model(const ModelParams& p) {
    require(p.n >= 1, "model.n", "must be >= 1");
    require(p.m >= 1, "model.m", "must be >= 1");
    require(p.n % p.m == 0, "model.m",
            "must divide model.n (n=" + std::to_string(p.n) + ", m=" + std::to_string(p.m) + ")");
    require(p.sigma_v2 >= 0.0, "model.sigma_v2", "must be >= 0");
    require(p.sigma_c2 >= 0.0, "model.sigma_c2", "must be >= 0");
    require(p.sigma_r2 >= 0.0, "model.sigma_r2", "must be >= 0");
}

void validate_sweep(const SweepSpec& s) {
    require(s.n >= 1, "sweep.n", "must be >= 1");
    require(s.runs >= 1, "sweep.runs", "must be >= 1");
    require(s.alpha > 0.0 && s.alpha < 1.0, "sweep.alpha", "must lie in (0, 1)");
    require(std::floor(s.alpha * s.n + 0.5) >= 1.0, "sweep.alpha", "round(alpha * n) must be >= 1");
    require(s.total_log_variance >= 0.0, "sweep.total_log_variance", "must be >= 0");
    require(!s.sigma_r2_list.empty(), "sweep.sigma_r2_list", "must not be empty");
    for (double v : s.sigma_r2_list) require(v >= 0.0, "sweep.sigma_r2_list", "entries must be >= 0");
    require(!s.sigma_c2_grid.empty(), "sweep.sigma_c2_grid", "must not be empty");
    for (double v : s.sigma_c2_grid) {
        require(v >= 0.0 && v <= s.total_log_variance, "sweep.sigma_c2_grid",
                "entries must lie in [0, total_log_variance], got " + format_real(v));
    }
    require(!s.m_list.empty(), "sweep.m_list", "must not be empty");
    for (int m : s.m_list) {
        require(m >= 1 && s.n % m == 0, "sweep.m_list",
                "entry " + std::to_string(m) + " must divide sweep.n=" + std::to_string(s.n));
    }
    for (double w : s.weight_if_list) require(w >= 0.0 && w <= 1.0, "sweep.weight_if_list", "entries must lie in [0, 1]");
    require(!s.indicators.empty(), "sweep.indicators", "must not be empty");
    try {
        validate(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep", e.what());
    }
}

void validate_scenario(const scenario::DiscreteScenario& s, std::int64_t select) {
    require(s.q >= 0 && s.q <= 1, "scenario.q", "must lie in [0, 1]");
    require(s.r >= 0 && s.r <= 1, "scenario.r", "must lie in [0, 1]");
    require(!s.journals.empty(), "scenario.journals", "must list at least one journal");
    std::set<std::string> names;
    for (const auto& j : s.journals) {
        require(j.high_value >= 0 && j.low_value >= 0, "scenario.journals", "counts must be >= 0");
        require(!j.name.empty() && j.name.find_first_of(",:#=\n") == std::string::npos &&
                    trim(j.name) == j.name,
                "scenario.journals", "journal names must be non-empty without , : # =");
        require(names.insert(j.name).second, "scenario.journals", "duplicate journal name " + j.name);
    }
    require(select >= 0, "scenario.select", "must be >= 0");
    try {
        scenario::validate(s);
        if (select > 0) scenario::if_selection_accuracy(s, select);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(select > 0 ? "scenario.select" : "scenario.journals", e.what());
    }
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::sweep: return "sweep";
        case Command::scenario: return "scenario";
    }
    return "unknown";
}

std::string_view preset_name(Preset p) {
    switch (p) {
        case Preset::custom: return "custom";
        case Preset::fig1: return "fig1";
        case Preset::fig2: return "fig2";
        case Preset::fig3: return "fig3";
        case Preset::scenario1: return "1";
        case Preset::scenario2: return "2";
    }
    return "unknown";
}

Preset parse_preset(Command c, std::string_view name) {
    if (name == "custom") return Preset::custom;
    if (c == Command::sweep) {
        if (name == "fig1") return Preset::fig1;
        if (name == "fig2") return Preset::fig2;
        if (name == "fig3") return Preset::fig3;
    }
    if (c == Command::scenario) {
        if (name == "1") return Preset::scenario1;
        if (name == "2") return Preset::scenario2;
    }
    throw ConfigError("preset", "'" + std::string(name) + "' is not a preset of " + std::string(command_name(c)));
}

RunConfig preset_defaults(Command command, Preset preset) {
    RunConfig c;
    c.command = command;
    c.preset = preset;
    c.model.seed = 42;
    c.sweep = figure1_preset();
    c.scenario = scenario::scenario_one();
    switch (preset) {
        case Preset::fig2: c.sweep = figure2_preset(); break;
        case Preset::fig3: c.sweep = figure3_preset(); break;
        case Preset::scenario2: c.scenario = scenario::scenario_two(); break;
        default: break;
    }
    return c;
}

KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        if (!seen.insert(key).second) throw ConfigError(key, "set twice");
        out.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

RunConfig parse_config(Command command, Preset preset, std::string_view file_text, const KeyValues& flags,
                       const std::optional<std::string>& env_workers) {
    const bool figure = preset == Preset::fig1 || preset == Preset::fig2 || preset == Preset::fig3;
    const bool table = preset == Preset::scenario1 || preset == Preset::scenario2;
    if ((figure && command != Command::sweep) || (table && command != Command::scenario)) {
        throw ConfigError("preset", std::string(preset_name(preset)) + " is not a preset of " +
                                        std::string(command_name(command)));
    }
    RunConfig config = preset_defaults(command, preset);
    if (env_workers) config.workers = parse_int("INDICATOR_SIM_WORKERS", *env_workers);
    for (const auto& [key, value] : parse_key_values(file_text)) apply(config, key, value);
    for (const auto& [key, value] : flags) apply(config, key, value);
    validate(config);
    return config;
}

void validate(const RunConfig& config) {
    validate_model(config.model);
    validate_sweep(config.sweep);
    validate_scenario(config.scenario, config.scenario_select);
    require(config.workers >= 1, "run.workers", "must be >= 1");
    require(config.output_path.find_first_of("#\n") == std::string::npos &&
                trim(config.output_path) == config.output_path,
            "output.path", "must not contain '#' or surrounding blanks");
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "# " << command_name(c.command) << " " << preset_name(c.preset) << "\n";
    out << "model.n = " << c.model.n << "\n";
    out << "model.m = " << c.model.m << "\n";
    out << "model.sigma_v2 = " << format_real(c.model.sigma_v2) << "\n";
    out << "model.sigma_c2 = " << format_real(c.model.sigma_c2) << "\n";
    out << "model.sigma_r2 = " << format_real(c.model.sigma_r2) << "\n";
    out << "model.seed = " << c.model.seed << "\n";
    out << "sweep.runs = " << c.sweep.runs << "\n";
    out << "sweep.n = " << c.sweep.n << "\n";
    out << "sweep.alpha = " << format_real(c.sweep.alpha) << "\n";
    out << "sweep.total_log_variance = " << format_real(c.sweep.total_log_variance) << "\n";
    out << "sweep.master_seed = " << c.sweep.master_seed << "\n";
    out << "sweep.sigma_r2_list = " << join(c.sweep.sigma_r2_list, format_real) << "\n";
    out << "sweep.sigma_c2_grid = " << join(c.sweep.sigma_c2_grid, format_real) << "\n";
    out << "sweep.m_list = " << join(c.sweep.m_list, [](int m) { return std::to_string(m); }) << "\n";
    out << "sweep.weight_if_list = " << join(c.sweep.weight_if_list, format_real) << "\n";
    out << "sweep.indicators = "
        << join(c.sweep.indicators, [](IndicatorKind k) { return std::string(indicator_name(k)); }) << "\n";
    out << "scenario.q = " << format_rational(c.scenario.q) << "\n";
    out << "scenario.r = " << format_rational(c.scenario.r) << "\n";
    out << "scenario.journals = " << join(c.scenario.journals, [](const scenario::JournalComposition& j) {
        return j.name + ":" + std::to_string(j.high_value) + ":" + std::to_string(j.low_value);
    }) << "\n";
    out << "scenario.select = " << c.scenario_select << "\n";
    out << "output.path = " << c.output_path << "\n";
    out << "run.workers = " << c.workers << "\n";
    return out.str();
}

const std::vector<std::string_view>& known_config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& [name, setter] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

}  // namespace impactsim
