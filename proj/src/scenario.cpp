#include "dosimpact/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace dosimpact {

namespace {

constexpr std::string_view datacentre_text = R"(# Denial of service on a company data centre.
# Scrap value 10 MEUR, 500 MEUR/yr turnover plus 500 MEUR/yr contingent
# client liabilities, 50 %/yr operational margin, rebuild over 3 months.
version: 1
process: compensation

[simulation]
dt: 1
horizon: 48
paths: 1000
seed: 42
usability_mode: linearized
noise: true
correlation: 0
output_every: 1

[asset datacentre]
category: company
margin_annual: 0.5
M0: 1e7
rM: -4.76e-5
value_rate_own: 5e8
value_rate_contingent: 5e8
TK: 2160
capability_value: 2.5e8
A0_post: 0
K0_mode: annuity
model.a: 5.8e-5
model.V: 1
model.lambda_market: 0.2
usability.kind: linear_decreasing
usability.TK_ref: 2160
usability.VA: 0
usability.lambda: 0

[shock datacentre]
time: 0
magnitude: 1
)";

const std::set<std::string_view> top_keys{"version", "process", "window"};
const std::set<std::string_view> simulation_keys{
    "dt", "horizon", "paths", "seed", "usability_mode", "noise", "correlation", "output_every"};
const std::set<std::string_view> asset_keys{
    "category",       "M0",           "rM",
    "rM_annual",      "value_rate_own", "value_rate_contingent",
    "TK",             "A0_post",      "capability_value",
    "r0",             "K0_mode",      "roa_annual",
    "margin_annual",  "model.a",      "model.r_eq",
    "model.r_eq_annual", "model.V",   "model.lambda_market",
    "usability.kind", "usability.TK_ref", "usability.VA",
    "usability.lambda", "usability.knots"};
const std::set<std::string_view> shock_keys{"time", "magnitude"};

struct Entry {
    std::string value;
    std::size_t line = 0;
};

struct Section {
    std::string kind;  // "", "simulation", "asset", "shock"
    std::string name;
    std::size_t line = 0;
    std::map<std::string, Entry, std::less<>> entries;

    std::string path() const {
        if (kind.empty()) {
            return "";
        }
        return name.empty() ? kind : fmt::format("{}[{}]", kind, name);
    }
    std::string field(std::string_view key) const {
        return kind.empty() ? std::string(key) : fmt::format("{}.{}", path(), key);
    }
    const Entry* find(std::string_view key) const {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
    if (key.empty() || !(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) {
        return false;
    }
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

bool valid_name(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::optional<double> to_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

template <typename Int>
std::optional<Int> to_integer(std::string_view text) {
    Int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

class Reader {
public:
    explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void error(std::size_t line, std::string field, std::string message) {
        diags_.push_back({line, std::move(field), std::move(message)});
    }

    std::optional<double> number(const Section& s, std::string_view key) {
        const Entry* e = s.find(key);
        if (!e) {
            return std::nullopt;
        }
        auto v = to_number(e->value);
        if (!v) {
            error(e->line, s.field(key), fmt::format("expected a finite number, got '{}'", e->value));
        }
        return v;
    }

    double number_or(const Section& s, std::string_view key, double fallback) {
        return number(s, key).value_or(fallback);
    }

    std::optional<double> required_number(const Section& s, std::string_view key) {
        if (!s.find(key)) {
            error(s.line, s.field(key), "required key is missing");
            return std::nullopt;
        }
        return number(s, key);
    }

    template <typename Int>
    std::optional<Int> integer(const Section& s, std::string_view key) {
        const Entry* e = s.find(key);
        if (!e) {
            return std::nullopt;
        }
        auto v = to_integer<Int>(e->value);
        if (!v) {
            error(e->line, s.field(key),
                  fmt::format("expected a non-negative integer, got '{}'", e->value));
        }
        return v;
    }

    std::optional<bool> boolean(const Section& s, std::string_view key) {
        const Entry* e = s.find(key);
        if (!e) {
            return std::nullopt;
        }
        if (e->value == "true") {
            return true;
        }
        if (e->value == "false") {
            return false;
        }
        error(e->line, s.field(key), fmt::format("expected true or false, got '{}'", e->value));
        return std::nullopt;
    }

    template <typename Parse>
    auto choice(const Section& s, std::string_view key, Parse parse, std::string_view allowed)
        -> decltype(parse(std::string_view{})) {
        const Entry* e = s.find(key);
        if (!e) {
            return std::nullopt;
        }
        auto v = parse(e->value);
        if (!v) {
            error(e->line, s.field(key),
                  fmt::format("unknown value '{}'; expected one of: {}", e->value, allowed));
        }
        return v;
    }

private:
    std::vector<Diagnostic>& diags_;
};

// Tokenizes the text into sections. The first section is the unnamed top level.
std::vector<Section> split_sections(std::string_view text, std::vector<Diagnostic>& diags) {
    std::vector<Section> sections(1);
    sections.front().line = 1;
    std::size_t line_no = 0;
    bool seen_entry = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const auto line = trim(raw);
        if (line.empty()) {
            continue;
        }

        if (line.front() == '[') {
            if (line.back() != ']') {
                diags.push_back({line_no, "", "section header must end with ']'"});
                continue;
            }
            const auto inner = trim(line.substr(1, line.size() - 2));
            const auto space = inner.find_first_of(" \t");
            Section s;
            s.kind = std::string(inner.substr(0, space));
            s.name = space == std::string_view::npos ? "" : std::string(trim(inner.substr(space)));
            s.line = line_no;
            if (s.kind == "simulation") {
                if (!s.name.empty()) {
                    diags.push_back({line_no, "simulation", "[simulation] takes no name"});
                }
            } else if (s.kind == "asset" || s.kind == "shock") {
                if (!valid_name(s.name)) {
                    diags.push_back({line_no, s.kind,
                                     fmt::format("[{}] needs an id of letters, digits, '_' or '-'",
                                                 s.kind)});
                }
            } else {
                diags.push_back({line_no, s.kind,
                                 fmt::format("unknown section '[{}]'; expected simulation, "
                                             "asset or shock",
                                             inner)});
            }
            sections.push_back(std::move(s));
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            diags.push_back({line_no, "", fmt::format("expected 'key: value', got '{}'", line)});
            continue;
        }
        const auto key = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));
        if (!valid_key(key)) {
            diags.push_back({line_no, "", fmt::format("invalid key '{}'", key)});
            continue;
        }
        auto& section = sections.back();
        if (value.empty()) {
            diags.push_back({line_no, section.field(key), "missing value"});
            continue;
        }
        if (!seen_entry && (section.kind != "" || key != "version")) {
            diags.push_back({line_no, "version", "the first entry must be 'version: 1'"});
        }
        seen_entry = true;
        const auto [it, inserted] =
            section.entries.emplace(std::string(key), Entry{std::string(value), line_no});
        if (!inserted) {
            diags.push_back({line_no, section.field(key),
                             fmt::format("duplicate key (first set on line {})", it->second.line)});
        }
    }
    if (!seen_entry) {
        diags.push_back({1, "version", "missing 'version: 1' header"});
    }
    return sections;
}

void check_known_keys(const Section& s, const std::set<std::string_view>& allowed, Reader& rd) {
    for (const auto& [key, entry] : s.entries) {
        if (!allowed.contains(key)) {
            const auto where = s.kind.empty() ? std::string("top level") : fmt::format("[{}]", s.path());
            rd.error(entry.line, s.field(key), fmt::format("unknown key '{}' in {}", key, where));
        }
    }
}

std::optional<std::vector<UsabilityKnot>> parse_knots(const Section& s, Reader& rd) {
    const Entry* e = s.find("usability.knots");
    if (!e) {
        return std::nullopt;
    }
    std::vector<UsabilityKnot> knots;
    std::string_view rest = e->value;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto sep = item.find(':');
        const auto t = sep == std::string_view::npos ? std::nullopt : to_number(trim(item.substr(0, sep)));
        const auto v = sep == std::string_view::npos ? std::nullopt : to_number(trim(item.substr(sep + 1)));
        if (!t || !v) {
            rd.error(e->line, s.field("usability.knots"),
                     fmt::format("expected 'time:value' pairs separated by commas, got '{}'", item));
            return std::nullopt;
        }
        knots.push_back({*t, *v});
    }
    return knots;
}

// Hourly value from an hourly key and/or its annual echo; both must agree.
std::optional<double> hourly_pair(const Section& s, std::string_view hourly_key,
                                  std::string_view annual_key, Reader& rd) {
    const auto hourly = rd.number(s, hourly_key);
    const auto annual = rd.number(s, annual_key);
    if (hourly && annual) {
        const double converted = annual_rate_to_hourly(*annual);
        if (std::abs(converted - *hourly) > 1e-12 * std::max(std::abs(*hourly), 1e-300)) {
            rd.error(s.find(annual_key)->line, s.field(annual_key),
                     fmt::format("annual value {} disagrees with {} = {} per hour", *annual,
                                 hourly_key, *hourly));
        }
        return hourly;
    }
    if (annual) {
        return annual_rate_to_hourly(*annual);
    }
    return hourly;
}

// Key whose line best locates a validate_asset violation field.
std::string_view key_for_field(std::string_view field) {
    if (field == "r_initial") {
        return "r0";
    }
    if (field == "usability.lambda_usability") {
        return "usability.lambda";
    }
    if (field.starts_with("usability.knots")) {
        return "usability.knots";
    }
    return field;
}

std::size_t line_for(const Section& s, std::string_view key) {
    if (const Entry* e = s.find(key)) {
        return e->line;
    }
    if (key == "model.r_eq") {
        for (const auto alt : {"model.r_eq_annual", "margin_annual", "roa_annual"}) {
            if (const Entry* e = s.find(alt)) {
                return e->line;
            }
        }
    }
    if (key == "rM") {
        if (const Entry* e = s.find("rM_annual")) {
            return e->line;
        }
    }
    return s.line;
}

std::optional<ScenarioAsset> resolve_asset(const Section& s, Reader& rd) {
    check_known_keys(s, asset_keys, rd);
    const auto category = rd.choice(s, "category", parse_asset_category,
                                    "public_service, company, shared_infrastructure, "
                                    "technology_provider");
    if (!s.find("category")) {
        rd.error(s.line, s.field("category"), "required key is missing");
    }
    if (!category) {
        return std::nullopt;
    }
    const CategoryPreset preset = category_preset(*category);

    Asset a;
    a.id = s.name;
    a.category = *category;

    // Time preference: explicit value, then the category rule, then the preset default.
    const auto explicit_r_eq = hourly_pair(s, "model.r_eq", "model.r_eq_annual", rd);
    const auto roa = rd.number(s, "roa_annual");
    const auto margin = rd.number(s, "margin_annual");
    if ((s.find("roa_annual") || s.find("margin_annual")) &&
        preset.r_eq_rule != TimePreferenceRule::max_roa_margin) {
        const auto* e = s.find("roa_annual") ? s.find("roa_annual") : s.find("margin_annual");
        rd.error(e->line, s.field("roa_annual"),
                 fmt::format("return-on-assets/margin inputs apply to company and "
                             "technology_provider assets, not {}",
                             to_string(*category)));
    }
    if (explicit_r_eq) {
        a.model.r_eq = *explicit_r_eq;
    } else if (preset.r_eq_rule == TimePreferenceRule::max_roa_margin && (roa || margin)) {
        a.model.r_eq = annual_rate_to_hourly(
            company_r_eq_annual(roa.value_or(margin.value_or(0.0)), margin.value_or(*roa)));
    } else if (preset.r_eq_annual_default) {
        a.model.r_eq = annual_rate_to_hourly(*preset.r_eq_annual_default);
    } else if (!s.find("model.r_eq") && !s.find("model.r_eq_annual")) {
        rd.error(s.line, s.field("model.r_eq"),
                 fmt::format("required for {} assets: {}", to_string(*category), preset.r_eq_policy));
    }

    const auto tk = rd.number(s, "TK");
    if (tk) {
        a.TK = *tk;
    } else if (preset.TK_default) {
        a.TK = *preset.TK_default;
    } else if (!s.find("TK")) {
        rd.error(s.line, s.field("TK"),
                 fmt::format("required for {} assets (no preset default)", to_string(*category)));
    }

    if (const auto m0 = rd.required_number(s, "M0")) {
        a.M0 = *m0;
    }
    a.rM = hourly_pair(s, "rM", "rM_annual", rd).value_or(0.0);
    a.value_rate_own = rd.number_or(s, "value_rate_own", 0.0);
    a.value_rate_contingent = rd.number_or(s, "value_rate_contingent", 0.0);
    a.A0_post = rd.number_or(s, "A0_post", 0.0);
    a.capability_value = rd.number(s, "capability_value");
    a.r_initial = rd.number(s, "r0");
    a.K0_mode = rd.choice(s, "K0_mode", parse_initial_investment, "annuity, total_value")
                    .value_or(InitialInvestment::annuity);

    if (const auto v = rd.required_number(s, "model.a")) {
        a.model.a = *v;
    }
    if (const auto v = rd.required_number(s, "model.V")) {
        a.model.V = *v;
    }
    a.model.lambda_market = rd.number_or(s, "model.lambda_market", preset.lambda_market_default);

    a.usability.kind =
        rd.choice(s, "usability.kind", parse_usability_kind, "linear_decreasing, piecewise, brownian")
            .value_or(UsabilityKind::linear_decreasing);
    a.usability.TK_ref = rd.number_or(s, "usability.TK_ref", a.TK);
    a.usability.VA = rd.number_or(s, "usability.VA", 0.0);
    a.usability.lambda_usability =
        rd.number_or(s, "usability.lambda", preset.lambda_usability_default);
    a.usability.knots = parse_knots(s, rd).value_or(std::vector<UsabilityKnot>{});

    for (const auto& v : validate_asset(a)) {
        rd.error(line_for(s, key_for_field(v.field)), s.field(v.field), v.message);
    }
    return ScenarioAsset{std::move(a), {}};
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::string to_string(const Diagnostic& d) {
    const auto location = d.line != 0 ? fmt::format("line {}: ", d.line) : std::string();
    const auto field = d.field.empty() ? std::string() : d.field + ": ";
    return location + field + d.message;
}

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
          std::string msg = "invalid scenario";
          for (const auto& d : diagnostics) {
              msg += "\n  " + to_string(d);
          }
          return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

double company_r_eq_annual(double return_on_assets, double operational_margin) {
    return std::max(return_on_assets, operational_margin);
}

CategoryPreset category_preset(AssetCategory category) {
    CategoryPreset p;
    p.category = category;
    switch (category) {
    case AssetCategory::public_service:
        p.r_eq_rule = TimePreferenceRule::judgment_default;
        p.r_eq_policy =
            "high where the law imposes service continuity obligations; lower and derived "
            "from minimal service obligations otherwise";
        p.r_eq_annual_default = 0.9;
        p.r_eq_is_judgment = true;
        p.continuity_obligation = true;
        p.notes = "0.9/yr is a judgment value for continuity-obligated services; state "
                  "model.r_eq for services without such obligations";
        break;
    case AssetCategory::company:
        p.r_eq_rule = TimePreferenceRule::max_roa_margin;
        p.r_eq_policy =
            "largest of the sector's average return on assets and operational margin "
            "(roa_annual, margin_annual)";
        p.TK_default = hours_per_quarter;
        p.lambda_market_default = 0.2;
        p.lambda_usability_default = 0.0;
        p.notes = "damage data collected as for corporate liability insurance";
        break;
    case AssetCategory::shared_infrastructure:
        p.r_eq_rule = TimePreferenceRule::explicit_required;
        p.r_eq_policy =
            "judgment: operator preference is high but not tied to financial returns; for "
            "users, based on the tolerable postponement of access to the next normal period";
        p.requires_confirmation = true;
        p.notes = "no established methodology; model.r_eq and TK must be stated explicitly";
        break;
    case AssetCategory::technology_provider:
        p.r_eq_rule = TimePreferenceRule::max_roa_margin;
        p.r_eq_policy =
            "company rule applied to the provider's own sector: largest of return on assets "
            "and operational margin (roa_annual, margin_annual)";
        p.notes = "claims arise from customers exposed through product vulnerabilities";
        break;
    }
    return p;
}

CategoryPreset category_preset(std::string_view category) {
    const auto parsed = parse_asset_category(category);
    if (!parsed) {
        throw std::invalid_argument(fmt::format(
            "unknown asset category '{}'; valid kinds are public_service, company, "
            "shared_infrastructure, technology_provider",
            category));
    }
    return category_preset(*parsed);
}

ScenarioDocument parse_scenario(std::string_view text) {
    std::vector<Diagnostic> diags;
    const auto sections = split_sections(text, diags);
    Reader rd(diags);
    ScenarioDocument doc;

    const Section& top = sections.front();
    check_known_keys(top, top_keys, rd);
    if (const auto version = rd.integer<int>(top, "version"); version && *version != 1) {
        rd.error(top.find("version")->line, "version",
                 fmt::format("unsupported version {}; this build reads version 1", *version));
    }
    if (const auto process = rd.choice(top, "process", parse_countermeasure, countermeasure_kinds())) {
        doc.process = *process;
    } else if (!top.find("process")) {
        rd.error(0, "process", fmt::format("required key is missing; expected one of: {}",
                                           countermeasure_kinds()));
    }
    doc.window = rd.number(top, "window");
    if (doc.window && !(*doc.window > 0.0)) {
        rd.error(top.find("window")->line, "window", "must be > 0");
    }

    const Section* simulation = nullptr;
    std::map<std::string, std::size_t, std::less<>> asset_index;
    std::vector<const Section*> shock_sections;
    std::vector<const Section*> asset_sections;
    for (std::size_t i = 1; i < sections.size(); ++i) {
        const Section& s = sections[i];
        if (s.kind == "simulation") {
            if (simulation) {
                rd.error(s.line, "simulation",
                         fmt::format("duplicate [simulation] section (first on line {})",
                                     simulation->line));
            }
            simulation = &s;
        } else if (s.kind == "asset") {
            if (const auto it = asset_index.find(s.name); it != asset_index.end()) {
                rd.error(s.line, s.path(),
                         fmt::format("duplicate asset id (first on line {})",
                                     asset_sections[it->second]->line));
                continue;
            }
            asset_index.emplace(s.name, asset_sections.size());
            asset_sections.push_back(&s);
        } else if (s.kind == "shock") {
            shock_sections.push_back(&s);
        }
    }

    if (simulation) {
        const Section& s = *simulation;
        check_known_keys(s, simulation_keys, rd);
        auto& c = doc.config;
        c.dt = rd.number_or(s, "dt", c.dt);
        if (const auto h = rd.required_number(s, "horizon")) {
            c.horizon = *h;
        }
        c.n_paths = rd.integer<std::size_t>(s, "paths").value_or(c.n_paths);
        c.seed = rd.integer<std::uint64_t>(s, "seed").value_or(c.seed);
        c.usability_mode =
            rd.choice(s, "usability_mode", parse_usability_mode, "multiplicative, linearized")
                .value_or(c.usability_mode);
        c.noise_enabled = rd.boolean(s, "noise").value_or(c.noise_enabled);
        c.correlation = rd.number_or(s, "correlation", c.correlation);
        c.output_every = rd.integer<std::size_t>(s, "output_every").value_or(c.output_every);
        for (const auto& v : validate_config(c)) {
            const Entry* e = s.find(v.field == "paths" ? "paths" : v.field);
            rd.error(e ? e->line : s.line, "simulation." + v.field, v.message);
        }
    } else {
        rd.error(0, "simulation", "missing [simulation] section");
    }

    for (const Section* s : asset_sections) {
        if (auto entry = resolve_asset(*s, rd)) {
            doc.assets.push_back(std::move(*entry));
        }
    }
    if (asset_sections.empty()) {
        rd.error(0, "asset", "scenario requires at least one asset");
    }

    for (const Section* s : shock_sections) {
        check_known_keys(*s, shock_keys, rd);
        const auto it = asset_index.find(s->name);
        if (it == asset_index.end()) {
            rd.error(s->line, s->path(),
                     fmt::format("shock references undeclared asset '{}'", s->name));
            continue;
        }
        const auto time = rd.required_number(*s, "time");
        const auto magnitude = rd.required_number(*s, "magnitude");
        if (!time || !magnitude) {
            continue;
        }
        const std::string& id = s->name;
        const auto owner = std::find_if(doc.assets.begin(), doc.assets.end(),
                                        [&](const ScenarioAsset& a) { return a.asset.id == id; });
        AttackShock shock{*time, *magnitude};
        for (const auto& v : validate_shocks(std::span(&shock, 1), doc.config)) {
            const auto key = v.field.substr(v.field.find('.') + 1);
            rd.error(line_for(*s, key), s->field(key), v.message);
        }
        if (owner != doc.assets.end()) {
            owner->shocks.push_back(shock);
        }
    }
    for (auto& entry : doc.assets) {
        std::stable_sort(entry.shocks.begin(), entry.shocks.end(),
                         [](const AttackShock& x, const AttackShock& y) { return x.time < y.time; });
    }

    if (!diags.empty()) {
        std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& x, const Diagnostic& y) {
            // Diagnostics without a line go last.
            const auto lx = x.line == 0 ? SIZE_MAX : x.line;
            const auto ly = y.line == 0 ? SIZE_MAX : y.line;
            return lx < ly;
        });
        throw ScenarioError(std::move(diags));
    }
    return doc;
}

std::string echo_scenario(const ScenarioDocument& doc) {
    std::string out;
    auto line = [&out](std::string_view key, const std::string& value) {
        out += fmt::format("{}: {}\n", key, value);
    };
    line("version", std::to_string(doc.version));
    line("process", std::string(to_string(doc.process)));
    if (doc.window) {
        line("window", num(*doc.window));
    }

    const auto& c = doc.config;
    out += "\n[simulation]\n";
    line("dt", num(c.dt));
    line("horizon", num(c.horizon));
    line("paths", std::to_string(c.n_paths));
    line("seed", std::to_string(c.seed));
    line("usability_mode", std::string(to_string(c.usability_mode)));
    line("noise", c.noise_enabled ? "true" : "false");
    line("correlation", num(c.correlation));
    line("output_every", std::to_string(c.output_every));

    for (const auto& entry : doc.assets) {
        const auto& a = entry.asset;
        out += fmt::format("\n[asset {}]\n", a.id);
        line("category", std::string(to_string(a.category)));
        line("M0", num(a.M0));
        line("rM", num(a.rM));
        line("rM_annual", num(hourly_rate_to_annual(a.rM)));
        line("value_rate_own", num(a.value_rate_own));
        line("value_rate_contingent", num(a.value_rate_contingent));
        line("TK", num(a.TK));
        line("A0_post", num(a.A0_post));
        if (a.capability_value) {
            line("capability_value", num(*a.capability_value));
        }
        if (a.r_initial) {
            line("r0", num(*a.r_initial));
        }
        line("K0_mode", std::string(to_string(a.K0_mode)));
        line("model.a", num(a.model.a));
        line("model.r_eq", num(a.model.r_eq));
        line("model.r_eq_annual", num(hourly_rate_to_annual(a.model.r_eq)));
        line("model.V", num(a.model.V));
        line("model.lambda_market", num(a.model.lambda_market));
        line("usability.kind", std::string(to_string(a.usability.kind)));
        line("usability.TK_ref", num(a.usability.TK_ref));
        line("usability.VA", num(a.usability.VA));
        line("usability.lambda", num(a.usability.lambda_usability));
        if (!a.usability.knots.empty()) {
            std::string knots;
            for (const auto& k : a.usability.knots) {
                knots += fmt::format("{}{}:{}", knots.empty() ? "" : ", ", num(k.time), num(k.value));
            }
            line("usability.knots", knots);
        }
        for (const auto& shock : entry.shocks) {
            out += fmt::format("\n[shock {}]\n", a.id);
            line("time", num(shock.time));
            line("magnitude", num(shock.magnitude));
        }
    }
    return out;
}

double effective_window(const ScenarioDocument& doc, const ScenarioAsset& entry) {
    return doc.window.value_or(default_window(entry.asset, doc.config, entry.shocks));
}

std::string_view datacentre_scenario_text() { return datacentre_text; }

}  // namespace dosimpact
