#include "allog/bias.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "allog/parser.hpp"

namespace allog {

std::size_t LanguageSpec::level_of(const std::string& concept_name) const {
    for (std::size_t l = 0; l < levels.size(); ++l)
        if (std::find(levels[l].begin(), levels[l].end(), concept_name) != levels[l].end()) return l + 1;
    return 0;
}

Rational LanguageSpec::threshold(std::size_t level) const {
    if (minsup.empty()) return Rational(0, 1);
    std::size_t i = std::clamp<std::size_t>(level, 1, minsup.size()) - 1;
    return minsup[i];
}

std::vector<SlotSpec> LanguageSpec::slots(const PredicateSpec& p) const {
    if (!p.slots.empty()) return p.slots;
    std::vector<SlotSpec> out(p.arity);
    if (!out.empty()) out[0].input = true;
    return out;
}

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(v);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

bool is_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::optional<std::size_t> parse_count(const std::string& s) {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return std::nullopt;
    return static_cast<std::size_t>(std::stoul(s));
}

std::string decimal(const Rational& r) {
    std::int64_t scale = 1;
    for (int k = 0; k <= 9; ++k, scale *= 10) {
        if ((r.num * scale) % r.den != 0) continue;
        std::int64_t v = r.num * scale / r.den;
        if (k == 0) return std::to_string(v);
        std::string digits = std::to_string(v);
        if (digits.size() <= static_cast<std::size_t>(k)) digits.insert(0, k + 1 - digits.size(), '0');
        return digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    }
    return to_string(r);
}

}  // namespace

Parsed<BiasConfig> parse_bias(std::string_view text) {
    Parsed<BiasConfig> out;
    auto& diags = out.diagnostics;
    BiasConfig cfg;
    std::map<std::size_t, std::pair<std::vector<std::string>, std::size_t>> levels;
    std::map<std::size_t, std::pair<Rational, std::size_t>> minsup;
    std::map<std::string, std::pair<std::vector<SlotSpec>, std::size_t>> slots;
    bool have_reference = false, have_predicates = false, have_max_g = false;
    std::size_t max_g_line = 0;
    std::string section;

    std::istringstream in{std::string(text)};
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        if (auto c = raw.find_first_of("#%"); c != std::string::npos) raw.erase(c);
        std::istringstream parts(raw);
        std::string stmt;
        std::size_t offset = 0;
        while (std::getline(parts, stmt, ';')) {
            std::size_t lead = std::min(stmt.find_first_not_of(" \t"), stmt.size());
            std::size_t col = offset + lead + 1;
            offset += stmt.size() + 1;
            std::string s = trim(stmt);
            if (s.empty()) continue;
            auto err = [&](const std::string& m) { diags.push_back({line_no, col, m}); };
            if (s.front() == '[') {
                if (s.back() != ']') {
                    err("malformed section header");
                    continue;
                }
                section = trim(s.substr(1, s.size() - 2));
                if (section != "language" && section != "thresholds" && section != "search")
                    err("unknown section [" + section + "]");
                continue;
            }
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                err("expected key = value");
                continue;
            }
            std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
            auto suffix = [&](const std::string& prefix) -> std::optional<std::string> {
                if (key.rfind(prefix, 0) == 0) return key.substr(prefix.size());
                return std::nullopt;
            };
            if (section == "language") {
                if (key == "reference") {
                    if (!is_name(value)) err("reference must be a concept name");
                    cfg.language.reference = value;
                    have_reference = true;
                } else if (key == "predicates") {
                    have_predicates = true;
                    for (const auto& item : split_list(value)) {
                        auto slash = item.find('/');
                        PredicateSpec p;
                        p.name = trim(item.substr(0, slash));
                        auto arity = slash == std::string::npos ? std::nullopt : parse_count(trim(item.substr(slash + 1)));
                        if (!is_name(p.name) || !arity || *arity == 0) {
                            err("malformed predicate '" + item + "', expected name/arity");
                            continue;
                        }
                        p.arity = *arity;
                        cfg.language.predicates.push_back(p);
                    }
                } else if (auto pred = suffix("slots.")) {
                    std::vector<SlotSpec> ss;
                    for (const auto& item : split_list(value)) {
                        SlotSpec slot;
                        if (item[0] != '+' && item[0] != '-') {
                            err("slot '" + item + "' must start with + or -");
                            continue;
                        }
                        slot.input = item[0] == '+';
                        slot.type = trim(item.substr(1));
                        if (!slot.type.empty() && !is_name(slot.type)) err("malformed slot type '" + slot.type + "'");
                        ss.push_back(slot);
                    }
                    slots[*pred] = {ss, line_no};
                } else if (auto lvl = suffix("level.")) {
                    auto l = parse_count(*lvl);
                    if (!l || *l == 0) {
                        err("malformed level key '" + key + "'");
                        continue;
                    }
                    auto names = split_list(value);
                    for (const auto& n : names)
                        if (!is_name(n)) err("malformed concept name '" + n + "'");
                    levels[*l] = {names, line_no};
                } else if (key == "maxD" || key == "maxG") {
                    auto v = parse_count(value);
                    if (!v || *v == 0) {
                        err(key + " must be a positive integer");
                        continue;
                    }
                    if (key == "maxD") {
                        cfg.language.max_depth = *v;
                    } else {
                        cfg.language.max_granularity = *v;
                        have_max_g = true;
                        max_g_line = line_no;
                    }
                } else {
                    err("unknown key '" + key + "' in [language]");
                }
            } else if (section == "thresholds") {
                auto lvl = suffix("minsup.");
                auto l = lvl ? parse_count(*lvl) : std::nullopt;
                if (!l || *l == 0) {
                    err("unknown key '" + key + "' in [thresholds]");
                    continue;
                }
                auto r = parse_rational(value);
                if (!r || r->num <= 0 || r->num > r->den) {
                    err("minsup must lie in (0, 1]");
                    continue;
                }
                minsup[*l] = {*r, line_no};
            } else if (section == "search") {
                if (key == "minG") {
                    auto v = parse_count(value);
                    if (!v || *v == 0) err("minG must be a positive integer");
                    else cfg.taxonomy.min_granularity = *v;
                } else if (key == "all_vars_constrained") {
                    if (value == "true") cfg.taxonomy.all_vars_constrained = true;
                    else if (value == "false") cfg.taxonomy.all_vars_constrained = false;
                    else err("all_vars_constrained must be true or false");
                } else if (key == "bias") {
                    if (value == "mgd") cfg.taxonomy.bias = SearchBias::mgd;
                    else if (value == "msd") cfg.taxonomy.bias = SearchBias::msd;
                    else err("bias must be mgd or msd");
                } else {
                    err("unknown key '" + key + "' in [search]");
                }
            } else {
                err("key outside of a section");
            }
        }
    }

    auto& lang = cfg.language;
    if (!have_reference) diags.push_back({1, 1, "missing [language] reference"});
    if (!have_predicates || lang.predicates.empty()) diags.push_back({1, 1, "missing [language] predicates"});
    if (!have_max_g) lang.max_granularity = levels.empty() ? 1 : levels.rbegin()->first;
    for (const auto& [l, v] : levels)
        if (l > lang.max_granularity)
            diags.push_back({v.second, 1, "level." + std::to_string(l) + " exceeds maxG"});
    for (std::size_t l = 1; l <= lang.max_granularity; ++l) {
        auto it = levels.find(l);
        if (it == levels.end() || it->second.first.empty()) {
            diags.push_back({have_max_g ? max_g_line : 1, 1, "missing level." + std::to_string(l)});
            continue;
        }
        lang.levels.push_back(it->second.first);
        auto mt = minsup.find(l);
        if (mt == minsup.end()) diags.push_back({1, 1, "missing minsup." + std::to_string(l)});
        else lang.minsup.push_back(mt->second.first);
    }
    for (const auto& [l, v] : minsup)
        if (l > lang.max_granularity) diags.push_back({v.second, 1, "minsup." + std::to_string(l) + " exceeds maxG"});
    for (auto& [name, v] : slots) {
        auto it = std::find_if(lang.predicates.begin(), lang.predicates.end(),
                               [&](const PredicateSpec& p) { return p.name == name; });
        if (it == lang.predicates.end()) {
            diags.push_back({v.second, 1, "slots for undeclared predicate " + name});
        } else if (v.first.size() != it->arity) {
            diags.push_back({v.second, 1, "slots for " + name + " do not match its arity"});
        } else {
            it->slots = v.first;
        }
    }
    if (cfg.taxonomy.min_granularity > lang.max_granularity) diags.push_back({1, 1, "minG exceeds maxG"});
    if (diags.empty()) out.value = std::move(cfg);
    return out;
}

std::string print_bias(const BiasConfig& b) {
    std::ostringstream s;
    const auto& lang = b.language;
    s << "[language]\n";
    s << "reference = " << lang.reference << "\n";
    s << "predicates = ";
    for (std::size_t i = 0; i < lang.predicates.size(); ++i)
        s << (i ? ", " : "") << lang.predicates[i].name << "/" << lang.predicates[i].arity;
    s << "\n";
    for (const auto& p : lang.predicates) {
        if (p.slots.empty()) continue;
        s << "slots." << p.name << " = ";
        for (std::size_t i = 0; i < p.slots.size(); ++i) s << (i ? ", " : "") << (p.slots[i].input ? "+" : "-") << p.slots[i].type;
        s << "\n";
    }
    for (std::size_t l = 0; l < lang.levels.size(); ++l) {
        s << "level." << l + 1 << " = ";
        for (std::size_t i = 0; i < lang.levels[l].size(); ++i) s << (i ? ", " : "") << lang.levels[l][i];
        s << "\n";
    }
    s << "maxD = " << lang.max_depth << "\n";
    s << "maxG = " << lang.max_granularity << "\n";
    s << "\n[thresholds]\n";
    for (std::size_t l = 0; l < lang.minsup.size(); ++l) s << "minsup." << l + 1 << " = " << decimal(lang.minsup[l]) << "\n";
    s << "\n[search]\n";
    s << "minG = " << b.taxonomy.min_granularity << "\n";
    s << "all_vars_constrained = " << (b.taxonomy.all_vars_constrained ? "true" : "false") << "\n";
    s << "bias = " << (b.taxonomy.bias == SearchBias::mgd ? "mgd" : "msd") << "\n";
    return s.str();
}

}  // namespace allog
