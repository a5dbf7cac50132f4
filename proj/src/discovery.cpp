#include "allog/discovery.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace allog {

namespace {

const std::string kHead = "q";

bool distinguished(const Clause& q, const Term& t) {
    return q.head && !q.head->args.empty() && t == q.head->args[0];
}

bool has_constants(const Clause& q) {
    for (const auto& a : q.body)
        for (const auto& t : a.args)
            if (t.is_const()) return true;
    return false;
}

std::string fresh_name(const Clause& q, std::size_t& next) {
    auto vs = variables(q);
    std::set<std::string> used(vs.begin(), vs.end());
    for (;; ++next) {
        std::string n = "V" + std::to_string(next);
        if (!used.count(n)) {
            ++next;
            return n;
        }
    }
}

// Every combination of one item from each list.
template <class T>
std::vector<std::vector<T>> product(const std::vector<std::vector<T>>& lists) {
    std::vector<std::vector<T>> out{{}};
    for (const auto& l : lists) {
        std::vector<std::vector<T>> next;
        for (const auto& prefix : out)
            for (const auto& x : l) {
                auto p = prefix;
                p.push_back(x);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

std::size_t DiscoveryResult::frequent_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.frequent; }));
}

std::vector<PatternEntry> DiscoveryResult::frequent() const {
    std::vector<PatternEntry> out;
    for (const auto& e : entries)
        if (e.frequent) out.push_back(e);
    return out;
}

Clause trivial_query(const LanguageSpec& spec) {
    Clause q;
    q.head = Atom{kHead, {Term::var("X")}};
    q.constraints.push_back({Term::var("X"), Concept::atomic(spec.reference)});
    return q;
}

std::size_t pattern_depth(const Clause& q) {
    std::size_t k = q.body.size() + q.constraints.size();
    for (const auto& a : q.body)
        for (const auto& t : a.args) k += t.is_const();
    return k;
}

Refinement::Refinement(const LanguageSpec& spec, const KnowledgeBase& kb, const Reasoner& reasoner)
    : spec_(spec), reasoner_(reasoner) {
    for (const auto& p : spec_.predicates) {
        auto slots = spec_.slots(p);
        std::set<std::string> found;
        for (const auto& c : kb.program) {
            if (!c.is_fact() || c.head->predicate != p.name || c.head->arity() != p.arity) continue;
            for (std::size_t i = 0; i < slots.size() && i < c.head->arity(); ++i)
                if (!slots[i].input) found.insert(c.head->args[i].name);
        }
        pool_[p.name] = {found.begin(), found.end()};
    }
}

const std::vector<std::string>& Refinement::constant_pool(const std::string& predicate) const {
    static const std::vector<std::string> none;
    auto it = pool_.find(predicate);
    return it == pool_.end() ? none : it->second;
}

bool Refinement::fits(const std::string& slot_type, const std::string& concept_name) const {
    if (slot_type.empty() || slot_type == concept_name) return true;
    auto key = std::make_pair(slot_type, concept_name);
    auto it = fits_.find(key);
    if (it != fits_.end()) return it->second;
    bool r = !concept_name.empty() && reasoner_.subsumes(Concept::atomic(slot_type), Concept::atomic(concept_name));
    fits_.emplace(key, r);
    return r;
}

std::optional<std::string> Refinement::parent_concept(const std::string& name) const {
    std::size_t l = spec_.level_of(name);
    if (l < 2) return std::nullopt;
    for (const auto& d : spec_.levels[l - 2])
        if (fits(d, name)) return d;
    return std::nullopt;
}

std::vector<std::string> Refinement::child_concepts(const std::string& name) const {
    std::size_t l = spec_.level_of(name);
    std::vector<std::string> out;
    if (l == 0 || l >= spec_.levels.size()) return out;
    for (const auto& d : spec_.levels[l])
        if (d != name && fits(name, d)) out.push_back(d);
    return out;
}

std::vector<Refinement::Var> Refinement::typed_variables(const Clause& q) const {
    std::vector<Var> out;
    std::set<std::string> seen;
    if (q.head && !q.head->args.empty() && q.head->args[0].is_var()) {
        out.push_back({q.head->args[0].name, spec_.reference});
        seen.insert(q.head->args[0].name);
    }
    for (const auto& a : q.body) {
        auto p = std::find_if(spec_.predicates.begin(), spec_.predicates.end(),
                              [&](const PredicateSpec& s) { return s.name == a.predicate && s.arity == a.arity(); });
        if (p == spec_.predicates.end()) continue;
        auto slots = spec_.slots(*p);
        for (std::size_t i = 0; i < a.arity() && i < slots.size(); ++i) {
            const Term& t = a.args[i];
            if (t.is_var() && !slots[i].input && seen.insert(t.name).second) out.push_back({t.name, slots[i].type});
        }
    }
    return out;
}

std::optional<std::size_t> Refinement::level_of(const Clause& q) const {
    std::set<std::size_t> levels;
    for (const auto& k : q.constraints) {
        if (distinguished(q, k.term)) {
            if (!k.type.is_atomic() || k.type.name() != spec_.reference) return std::nullopt;
            continue;
        }
        if (!k.type.is_atomic()) return std::nullopt;
        std::size_t l = spec_.level_of(k.type.name());
        if (l == 0 || l > spec_.max_granularity) return std::nullopt;
        levels.insert(l);
    }
    if (levels.size() > 1) return std::nullopt;
    if (has_constants(q)) {
        if (!levels.empty() && *levels.begin() != spec_.max_granularity) return std::nullopt;
        return spec_.max_granularity;
    }
    return levels.empty() ? 0 : *levels.begin();
}

std::size_t Refinement::stage_of(const Clause& q) const { return std::max<std::size_t>(level_of(q).value_or(0), 1); }

std::vector<Clause> Refinement::refine(const Clause& q) const {
    std::vector<Clause> out;
    auto lv = level_of(q);
    if (!lv) return out;
    const bool constants = has_constants(q);
    const std::size_t k = pattern_depth(q);
    const auto vars = typed_variables(q);

    std::vector<std::size_t> open_levels;
    if (*lv > 0) open_levels.push_back(*lv);
    else
        for (std::size_t l = 1; l <= spec_.max_granularity && l <= spec_.levels.size(); ++l) open_levels.push_back(l);
    auto concepts_for = [&](const std::string& type) {
        std::vector<std::string> cs;
        for (std::size_t l : open_levels)
            for (const auto& c : spec_.levels[l - 1])
                if (fits(type, c)) cs.push_back(c);
        return cs;
    };
    auto emit = [&](Clause c) { out.push_back(canonical_form(c)); };
    auto contains = [&](const Atom& a) { return std::find(q.body.begin(), q.body.end(), a) != q.body.end(); };

    std::size_t next = 0;
    for (const auto& p : spec_.predicates) {
        auto slots = spec_.slots(p);
        std::vector<std::vector<std::string>> inputs;
        std::vector<std::size_t> outputs;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (!slots[i].input) {
                outputs.push_back(i);
                continue;
            }
            std::vector<std::string> fit;
            for (const auto& v : vars)
                if (fits(slots[i].type, v.type)) fit.push_back(v.name);
            inputs.push_back(fit);
        }
        for (const auto& choice : product(inputs)) {
            if (std::set<std::string>(choice.begin(), choice.end()).size() != choice.size()) continue;
            Atom base{p.name, std::vector<Term>(slots.size())};
            for (std::size_t i = 0, j = 0; i < slots.size(); ++i)
                if (slots[i].input) base.args[i] = Term::var(choice[j++]);
            std::vector<std::string> fresh;
            Clause probe = q;
            for (std::size_t i : outputs) {
                fresh.push_back(fresh_name(probe, next));
                probe.body.push_back(Atom{"", {Term::var(fresh.back())}});
                base.args[i] = Term::var(fresh.back());
            }

            // a new atom, its output variables left free
            if (k + 1 <= spec_.max_depth && !contains(base)) {
                Clause c = q;
                c.body.push_back(base);
                emit(c);
            }
            // the same atom with every output variable constrained
            if (!outputs.empty() && k + 1 + outputs.size() <= spec_.max_depth) {
                std::vector<std::vector<std::string>> options;
                for (std::size_t i : outputs) options.push_back(concepts_for(slots[i].type));
                for (const auto& cs : product(options)) {
                    Clause c = q;
                    c.body.push_back(base);
                    for (std::size_t j = 0; j < outputs.size(); ++j)
                        c.constraints.push_back({base.args[outputs[j]], Concept::atomic(cs[j])});
                    if (level_of(c)) emit(c);
                }
            }
            // the atom with a constant in one output slot
            if (k + 2 <= spec_.max_depth && (*lv == 0 || *lv == spec_.max_granularity))
                for (std::size_t i : outputs)
                    for (const auto& name : constant_pool(p.name)) {
                        Atom a = base;
                        a.args[i] = Term::constant(name);
                        if (contains(a)) continue;
                        Clause c = q;
                        c.body.push_back(a);
                        emit(c);
                    }
        }
    }

    // a constraint on a free variable
    if (k + 1 <= spec_.max_depth) {
        std::set<std::string> constrained;
        for (const auto& c : q.constraints) constrained.insert(c.term.name);
        for (const auto& v : vars) {
            if (constrained.count(v.name)) continue;
            for (const auto& name : concepts_for(v.type)) {
                Clause c = q;
                c.constraints.push_back({Term::var(v.name), Concept::atomic(name)});
                if (level_of(c)) emit(c);
            }
        }
    }

    // every constraint concept one level down
    if (*lv >= 1 && *lv < spec_.max_granularity && !constants) {
        std::vector<std::size_t> at;
        std::vector<std::vector<std::string>> options;
        for (std::size_t i = 0; i < q.constraints.size(); ++i) {
            const auto& k2 = q.constraints[i];
            if (distinguished(q, k2.term)) continue;
            at.push_back(i);
            options.push_back(child_concepts(k2.type.name()));
        }
        for (const auto& cs : product(options)) {
            Clause c = q;
            for (std::size_t j = 0; j < at.size(); ++j) c.constraints[at[j]].type = Concept::atomic(cs[j]);
            emit(c);
        }
    }

    std::vector<Clause> unique;
    std::set<std::string> texts;
    for (auto& c : out)
        if (texts.insert(to_string(c)).second) unique.push_back(std::move(c));
    return unique;
}

std::vector<Clause> Refinement::parents(const Clause& q) const {
    std::vector<Clause> out;
    auto lv = level_of(q);
    std::set<std::string> constrained;
    for (const auto& c : q.constraints) constrained.insert(c.term.name);

    for (std::size_t i = 0; i < q.constraints.size(); ++i) {
        if (distinguished(q, q.constraints[i].term)) continue;
        Clause c = q;
        c.constraints.erase(c.constraints.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(canonical_form(c));
    }
    for (std::size_t i = 0; i < q.body.size(); ++i) {
        Clause rest = q;
        rest.body.erase(rest.body.begin() + static_cast<std::ptrdiff_t>(i));
        bool leaf = true;
        for (const auto& t : q.body[i].args) {
            if (!t.is_var() || distinguished(q, t)) continue;
            bool elsewhere = false;
            for (const auto& a : rest.body)
                for (const auto& u : a.args) elsewhere = elsewhere || u == t;
            if (elsewhere || constrained.count(t.name)) leaf = false;
        }
        if (!leaf) continue;
        out.push_back(canonical_form(rest));
    }
    if (lv && *lv > 1 && !has_constants(q)) {
        Clause c = q;
        bool ok = true;
        for (auto& k : c.constraints) {
            if (distinguished(q, k.term)) continue;
            auto up = parent_concept(k.type.name());
            if (!up) {
                ok = false;
                break;
            }
            k.type = Concept::atomic(*up);
        }
        if (ok) out.push_back(canonical_form(c));
    }
    std::vector<Clause> unique;
    std::set<std::string> texts;
    for (auto& c : out)
        if (texts.insert(to_string(c)).second) unique.push_back(std::move(c));
    return unique;
}

DiscoveryResult discover(const Engine& engine, const LanguageSpec& spec, const DiscoveryOptions& options) {
    Refinement refinement(spec, engine.kb(), engine.reasoner());
    const std::size_t population = engine.instances(Concept::atomic(spec.reference)).size();

    DiscoveryResult result;
    std::map<std::string, std::size_t> id_of;      // every evaluated candidate
    std::map<std::string, Clause> frequent;        // canonical text -> query
    std::map<std::string, std::vector<Clause>> refined;

    auto evaluate = [&](const Clause& q, std::size_t level, std::vector<std::size_t> parents) {
        PatternEntry e;
        e.id = result.entries.size();
        e.query = q;
        e.text = to_string(q);
        e.level = level;
        e.depth = pattern_depth(q);
        e.extension = engine.answer_set(q);
        e.count = e.extension.size();
        e.population = population;
        e.support = population ? Rational(static_cast<std::int64_t>(e.count), static_cast<std::int64_t>(population))
                               : Rational(0, 1);
        e.frequent = e.support >= spec.threshold(std::max<std::size_t>(level, 1));
        e.parents = std::move(parents);
        id_of.emplace(e.text, e.id);
        if (e.frequent) frequent.emplace(e.text, q);
        result.entries.push_back(std::move(e));
        return result.entries.back().frequent;
    };

    Clause top = canonical_form(trivial_query(spec));
    evaluate(top, 0, {});

    for (std::size_t l = 1; l <= spec.max_granularity; ++l) {
        for (std::size_t k = 2; k <= spec.max_depth; ++k) {
            std::map<std::string, Clause> generated;
            // snapshot: stage members only enter the frequent set at the stage barrier
            auto sources = frequent;
            for (const auto& [text, p] : sources) {
                auto it = refined.find(text);
                if (it == refined.end()) it = refined.emplace(text, refinement.refine(p)).first;
                for (const auto& c : it->second) {
                    if (pattern_depth(c) != k || refinement.stage_of(c) != l) continue;
                    generated.emplace(to_string(c), c);
                }
            }
            std::vector<std::pair<std::string, Clause>> order(generated.begin(), generated.end());
            if (options.evaluation_seed) {
                std::mt19937 rng(*options.evaluation_seed + static_cast<unsigned>(l * 131 + k));
                std::shuffle(order.begin(), order.end(), rng);
            }
            StageReport report{l, k, 0, 0};
            for (const auto& [text, c] : order) {
                if (id_of.count(text)) continue;
                auto lv = refinement.level_of(c);
                if (!lv) continue;
                std::vector<std::size_t> parent_ids;
                bool admissible = true;
                for (const auto& p : refinement.parents(c)) {
                    auto pt = to_string(p);
                    if (!sources.count(pt)) {
                        admissible = false;
                        break;
                    }
                    parent_ids.push_back(id_of.at(pt));
                }
                if (!admissible) continue;
                std::sort(parent_ids.begin(), parent_ids.end());
                ++report.candidates;
                report.frequent += evaluate(c, *lv, std::move(parent_ids));
            }
            if (options.progress) options.progress(report);
        }
    }
    return result;
}

DiscoveryResult discover(const KnowledgeBase& kb, const LanguageSpec& spec, const DiscoveryOptions& options) {
    Engine engine(kb, options.engine);
    return discover(engine, spec, options);
}

std::string discovery_report(const DiscoveryResult& r) {
    std::ostringstream out;
    out << "id\tlevel\tdepth\tsupport\tpercent\tfrequent\tparents\tpattern\n";
    for (const auto& e : r.entries) {
        out << e.id << '\t' << e.level << '\t' << e.depth << '\t' << e.count << '/' << e.population << '\t'
            << to_percent(e.support) << '\t' << (e.frequent ? "yes" : "no") << '\t';
        for (std::size_t i = 0; i < e.parents.size(); ++i) out << (i ? "," : "") << e.parents[i];
        if (e.parents.empty()) out << '-';
        out << '\t' << e.text << '\n';
    }
    return out.str();
}

}  // namespace allog
