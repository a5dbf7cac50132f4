#include "allog/engine.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace allog {

namespace {

std::string key_of(const std::string& predicate, std::size_t arity) { return predicate + "/" + std::to_string(arity); }

}  // namespace

struct Engine::Index {
    std::unordered_map<std::string, std::vector<std::size_t>> facts;           // pred/arity
    std::unordered_map<std::string, std::vector<std::size_t>> facts_by_first;  // pred/arity|first constant
    std::unordered_map<std::string, std::vector<std::size_t>> rules;           // pred/arity
    std::vector<std::string> universe;                                         // all constants
};

Engine::Engine(KnowledgeBase kb, EngineOptions options, std::shared_ptr<ReasonerCache> cache)
    : kb_(std::move(kb)), options_(options), index_(std::make_unique<Index>()), tables_(std::make_unique<Tables>()) {
    reasoner_ = std::make_unique<Reasoner>(kb_.sigma, options_.tableau, std::move(cache));
    for (std::size_t i = 0; i < kb_.program.size(); ++i) {
        const Clause& c = kb_.program[i];
        if (!c.head) continue;
        std::string k = key_of(c.head->predicate, c.head->arity());
        if (c.is_fact()) {
            index_->facts[k].push_back(i);
            if (!c.head->args.empty()) index_->facts_by_first[k + "|" + c.head->args[0].name].push_back(i);
        } else {
            index_->rules[k].push_back(i);
        }
    }
    std::set<std::string> seen;
    for (const auto& ind : kb_.sigma.individuals())
        if (seen.insert(ind).second) index_->universe.push_back(ind);
    for (const auto& c : kb_.program_constants())
        if (seen.insert(c).second) index_->universe.push_back(c);
}

Engine::~Engine() = default;

namespace {

// a is a subset of b
bool within(const ConstraintSet& a, const ConstraintSet& b) {
    for (const auto& [ind, cs] : a.parts()) {
        auto it = b.parts().find(ind);
        if (it == b.parts().end() || !std::includes(it->second.begin(), it->second.end(), cs.begin(), cs.end()))
            return false;
    }
    return true;
}

// Minimal constraint sets among the derivations of one answer.
bool add_minimal(std::vector<ConstraintSet>& sets, const ConstraintSet& cs) {
    for (const auto& s : sets)
        if (within(s, cs)) return false;
    std::erase_if(sets, [&](const ConstraintSet& s) { return within(cs, s); });
    sets.push_back(cs);
    return true;
}

struct Answer {
    std::vector<Term> tuple;  // may keep variables _0, _1, ... for unconstrained positions
    std::vector<ConstraintSet> alternatives;
};

struct Table {
    Atom pattern;
    std::vector<Answer> answers;
    std::map<std::string, std::size_t> by_tuple;
    bool complete = false;
    std::size_t pass = 0;
};

}  // namespace

struct Engine::Tables {
    std::map<std::string, Table> tables;
    std::size_t pass = 0;
};

namespace {

// Tabled resolution: every call pattern of a predicate with rules gets an
// answer table, and passes are repeated until no table changes.
class Search {
public:
    Search(const KnowledgeBase& kb, const std::unordered_map<std::string, std::vector<std::size_t>>& facts,
           const std::unordered_map<std::string, std::vector<std::size_t>>& facts_by_first,
           const std::unordered_map<std::string, std::vector<std::size_t>>& rules,
           const std::vector<std::string>& universe, const EngineOptions& options, const QueryOptions& qopts,
           std::map<std::string, Table>& tables, std::size_t& pass)
        : kb_(kb), facts_(facts), facts_by_first_(facts_by_first), rules_(rules), universe_(universe),
          options_(options), qopts_(qopts), tables_(tables), pass_(pass) {}

    ResolutionResult run(const Clause& q) {
        std::vector<std::string> query_vars;
        for (const auto& t : terms(q))
            if (t.is_var()) query_vars.push_back(t.name);
        Clause body{std::nullopt, q.body, q.constraints};
        std::vector<std::vector<Term>> query_groups;
        if (qopts_.object_identity) query_groups.push_back(terms(body));
        std::vector<Derivation> found;
        std::set<std::string> seen;
        do {
            changed_ = false;
            ++pass_;
            found.clear();
            seen.clear();
            conjunction(q.body, 0, ConstraintSet{}, [&](const ConstraintSet& cs) {
                close(q.constraints, cs, query_groups, [&](const Substitution& g, ConstraintSet all) {
                    Derivation d;
                    for (const auto& v : query_vars) d.answer.emplace(v, substitute(g, walk(Term::var(v))));
                    d.constraints = std::move(all);
                    if (seen.insert(to_string(d.answer) + d.constraints.to_string()).second) found.push_back(std::move(d));
                });
            });
        } while (changed_);
        if (!result_.depth_limited)
            for (auto& [_, t] : tables_)
                if (t.pass == pass_) t.complete = true;
        result_.derivations = std::move(found);
        return std::move(result_);
    }

private:
    using Sink = std::function<void(const ConstraintSet&)>;

    Term walk(Term t) const {
        while (t.is_var()) {
            auto it = bindings_.find(t.name);
            if (it == bindings_.end()) break;
            t = it->second;
        }
        return t;
    }

    Atom resolve(const Atom& a) const {
        Atom out{a.predicate, {}};
        out.args.reserve(a.args.size());
        for (const auto& t : a.args) out.args.push_back(walk(t));
        return out;
    }

    bool unify(const std::vector<Term>& xs, const std::vector<Term>& ys, std::vector<std::string>& trail) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Term x = walk(xs[i]), y = walk(ys[i]);
            if (x == y) continue;
            if (x.is_var()) {
                bindings_.emplace(x.name, y);
                trail.push_back(x.name);
            } else if (y.is_var()) {
                bindings_.emplace(y.name, x);
                trail.push_back(y.name);
            } else {
                return false;
            }
        }
        return true;
    }

    void undo(std::vector<std::string>& trail) {
        for (const auto& v : trail) bindings_.erase(v);
        trail.clear();
    }

    std::string fresh_suffix() { return "#" + std::to_string(++renames_); }

    Clause rename(const Clause& c) {
        std::string suffix = fresh_suffix();
        Substitution s;
        for (const auto& v : variables(c)) s.emplace(v, Term::var(v + suffix));
        return apply_substitution(c, s);
    }

    // Variables of a call renamed _0, _1, ... by first occurrence.
    static std::vector<Term> canonical(const std::vector<Term>& args) {
        std::map<std::string, std::string> names;
        std::vector<Term> out;
        for (const auto& t : args) {
            if (t.is_const()) {
                out.push_back(t);
                continue;
            }
            auto [it, _] = names.emplace(t.name, "_" + std::to_string(names.size()));
            out.push_back(Term::var(it->second));
        }
        return out;
    }

    static std::string key_of_call(const std::string& predicate, const std::vector<Term>& args) {
        std::string k = predicate + "(";
        for (const auto& t : args) k += (t.is_var() ? "?" : "'") + t.name + ",";
        return k + ")";
    }

    void conjunction(const std::vector<Atom>& atoms, std::size_t i, const ConstraintSet& acc, const Sink& sink) {
        if (i == atoms.size()) {
            sink(acc);
            return;
        }
        Atom a = resolve(atoms[i]);
        std::string k = key_of(a.predicate, a.arity());
        if (!rules_.count(k)) {
            for (std::size_t idx : fact_candidates(a)) {
                std::vector<std::string> trail;
                if (unify(kb_.program[idx].head->args, a.args, trail)) conjunction(atoms, i + 1, acc, sink);
                undo(trail);
            }
            return;
        }
        Table& t = call(a);
        for (std::size_t n = 0; n < t.answers.size(); ++n) {
            Answer ans = t.answers[n];
            std::string suffix = fresh_suffix();
            for (auto& x : ans.tuple)
                if (x.is_var()) x = Term::var(x.name + suffix);
            std::vector<std::string> trail;
            if (unify(ans.tuple, a.args, trail))
                for (const auto& alt : ans.alternatives) {
                    ConstraintSet next = acc;
                    next.add(alt);
                    conjunction(atoms, i + 1, next, sink);
                }
            undo(trail);
        }
    }

    std::vector<std::size_t> fact_candidates(const Atom& goal) const {
        std::string k = key_of(goal.predicate, goal.arity());
        const auto* list = &facts_;
        std::string key = k;
        if (!goal.args.empty() && goal.args[0].is_const()) {
            list = &facts_by_first_;
            key = k + "|" + goal.args[0].name;
        }
        auto it = list->find(key);
        if (it == list->end()) return {};
        return it->second;
    }

    Table& call(const Atom& a) {
        std::vector<Term> pattern = canonical(a.args);
        std::string key = key_of_call(a.predicate, pattern);
        auto [it, fresh] = tables_.try_emplace(key);
        Table& t = it->second;
        if (fresh) t.pattern = Atom{a.predicate, pattern};
        if (t.complete || t.pass == pass_) return t;
        t.pass = pass_;
        if (depth_ >= options_.max_depth) {
            result_.depth_limited = true;
            return t;
        }
        ++depth_;
        evaluate(t);
        --depth_;
        return t;
    }

    void evaluate(Table& t) {
        std::string suffix = fresh_suffix();
        Atom goal = t.pattern;
        for (auto& x : goal.args)
            if (x.is_var()) x = Term::var(x.name + suffix);
        std::string k = key_of(goal.predicate, goal.arity());
        std::vector<std::size_t> candidates = fact_candidates(goal);
        const auto& rs = rules_.at(k);
        candidates.insert(candidates.end(), rs.begin(), rs.end());
        std::sort(candidates.begin(), candidates.end());
        for (std::size_t idx : candidates) {
            const Clause& stored = kb_.program[idx];
            Clause c = stored.is_fact() ? stored : rename(stored);
            std::vector<std::string> trail;
            if (unify(c.head->args, goal.args, trail)) {
                std::vector<std::vector<Term>> groups;
                if (qopts_.oi_clauses.count(idx)) groups.push_back(terms(c));
                conjunction(c.body, 0, ConstraintSet{}, [&](const ConstraintSet& cs) {
                    close(c.constraints, cs, groups, [&](const Substitution& g, ConstraintSet all) {
                        std::vector<Term> tuple;
                        for (const auto& x : goal.args) tuple.push_back(substitute(g, walk(x)));
                        record(t, canonical(tuple), all);
                    });
                });
            }
            undo(trail);
        }
    }

    void record(Table& t, std::vector<Term> tuple, const ConstraintSet& cs) {
        std::string key = key_of_call("", tuple);
        auto [it, fresh] = t.by_tuple.try_emplace(key, t.answers.size());
        if (fresh) t.answers.push_back({std::move(tuple), {}});
        if (add_minimal(t.answers[it->second].alternatives, cs)) changed_ = true;
    }

    static bool distinct(const std::vector<Term>& images) {
        for (std::size_t i = 0; i < images.size(); ++i)
            for (std::size_t j = i + 1; j < images.size(); ++j)
                if (images[i] == images[j]) return false;
        return true;
    }

    // Grounds the constraints of a finished resolvent; a variable constrained but
    // never bound ranges over every constant.
    void close(const std::vector<Constraint>& constraints, const ConstraintSet& acc,
               const std::vector<std::vector<Term>>& groups,
               const std::function<void(const Substitution&, ConstraintSet)>& emit) {
        std::vector<std::string> free;
        for (const auto& k : constraints) {
            Term t = walk(k.term);
            if (t.is_var() && std::find(free.begin(), free.end(), t.name) == free.end()) free.push_back(t.name);
        }
        Substitution ground;
        std::size_t groundings = 0;
        auto finish = [&]() {
            auto image = [&](const Term& t) { return substitute(ground, walk(t)); };
            for (const auto& g : groups) {
                std::vector<Term> images;
                for (const auto& t : g) images.push_back(image(t));
                if (!distinct(images)) return;
            }
            ConstraintSet all = acc;
            for (const auto& k : constraints) all.add(image(k.term).name, k.type);
            emit(ground, std::move(all));
        };
        std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
            if (i == free.size()) {
                if (++groundings > options_.max_groundings)
                    throw ResourceLimitError("grounding cap exceeded for free constrained variables");
                finish();
                return;
            }
            for (const auto& c : universe_) {
                ground[free[i]] = Term::constant(c);
                enumerate(i + 1);
            }
            ground.erase(free[i]);
        };
        enumerate(0);
    }

    const KnowledgeBase& kb_;
    const std::unordered_map<std::string, std::vector<std::size_t>>& facts_;
    const std::unordered_map<std::string, std::vector<std::size_t>>& facts_by_first_;
    const std::unordered_map<std::string, std::vector<std::size_t>>& rules_;
    const std::vector<std::string>& universe_;
    const EngineOptions& options_;
    const QueryOptions& qopts_;
    std::map<std::string, Table>& tables_;

    Substitution bindings_;
    std::size_t renames_ = 0;
    std::size_t& pass_;
    std::size_t depth_ = 0;
    bool changed_ = false;
    ResolutionResult result_;
};

}  // namespace

ResolutionResult Engine::resolve_all(const Clause& q, const QueryOptions& opts) const {
    if (opts.oi_clauses.empty()) {
        Search s(kb_, index_->facts, index_->facts_by_first, index_->rules, index_->universe, options_, opts,
                 tables_->tables, tables_->pass);
        return s.run(q);
    }
    Tables local;
    Search s(kb_, index_->facts, index_->facts_by_first, index_->rules, index_->universe, options_, opts,
             local.tables, local.pass);
    return s.run(q);
}

bool Engine::answer(const Clause& q, const QueryOptions& opts) const {
    auto res = resolve_all(q, opts);
    if (res.derivations.empty()) return !reasoner_->is_consistent();
    std::vector<ConstraintSet> alts;
    alts.reserve(res.derivations.size());
    for (auto& d : res.derivations) alts.push_back(std::move(d.constraints));
    return reasoner_->entails_disjunction(alts);
}

const std::vector<std::string>& Engine::instances(const Concept& c) const {
    std::string key = to_string(c);
    auto it = instances_.find(key);
    if (it != instances_.end()) return it->second;
    std::vector<std::string> out;
    for (const auto& ind : kb_.sigma.individuals())
        if (reasoner_->entails(ind, c)) out.push_back(ind);
    return instances_.emplace(key, std::move(out)).first->second;
}

std::optional<Concept> Engine::reference_concept(const Clause& q) {
    if (!q.head || q.head->args.empty() || !q.head->args[0].is_var()) return std::nullopt;
    for (const auto& k : q.constraints)
        if (k.term == q.head->args[0]) return k.type;
    return std::nullopt;
}

bool Engine::covers(const Clause& q, const std::string& individual) const {
    if (!q.head || q.head->args.empty() || !q.head->args[0].is_var())
        throw std::invalid_argument("observation query needs a head variable: " + to_string(q));
    auto cs = constants(q);
    if (std::find(cs.begin(), cs.end(), individual) != cs.end()) return false;
    Substitution s{{q.head->args[0].name, Term::constant(individual)}};
    Clause g = apply_substitution(q, s);
    g.head.reset();
    QueryOptions opts;
    opts.object_identity = true;
    return answer(g, opts);
}

std::vector<std::string> Engine::answer_set(const Clause& q) const {
    auto ref = reference_concept(q);
    if (!ref) throw std::invalid_argument("observation query lacks a reference constraint: " + to_string(q));
    std::vector<std::string> out;
    for (const auto& a : instances(*ref))
        if (covers(q, a)) out.push_back(a);
    return out;
}

Rational Engine::support(const Clause& q) const {
    auto ref = reference_concept(q);
    if (!ref) throw std::invalid_argument("observation query lacks a reference constraint: " + to_string(q));
    const auto& inst = instances(*ref);
    if (inst.empty()) return Rational(0, 1);
    return Rational(static_cast<std::int64_t>(answer_set(q).size()), static_cast<std::int64_t>(inst.size()));
}

ResolutionResult resolve_all(const KnowledgeBase& kb, const Clause& q, const EngineOptions& options) {
    return Engine(kb, options).resolve_all(q);
}

bool answer_ground_query(const KnowledgeBase& kb, const Clause& q, const EngineOptions& options) {
    return Engine(kb, options).answer(q);
}

std::vector<std::string> answer_set(const Clause& q, const KnowledgeBase& kb, const EngineOptions& options) {
    return Engine(kb, options).answer_set(q);
}

Rational support(const Clause& q, const KnowledgeBase& kb, const EngineOptions& options) {
    return Engine(kb, options).support(q);
}

bool covers_interpretations(const Clause& h, const KnowledgeBase& kb, const Observation& o,
                            const EngineOptions& options) {
    KnowledgeBase k = kb;
    for (const auto& f : o.facts) k.program.push_back(Clause{f, {}, {}});
    k.program.push_back(h);
    QueryOptions opts;
    opts.oi_clauses.insert(k.program.size() - 1);
    Engine e(std::move(k), options);
    return e.answer(Clause{std::nullopt, {o.label}, {}}, opts);
}

bool covers_entailment(const Clause& h, const KnowledgeBase& kb, const Clause& o, const EngineOptions& options) {
    if (!o.head || !o.is_ground()) throw std::invalid_argument("observation must be a ground clause: " + to_string(o));
    KnowledgeBase k = kb;
    for (const auto& f : o.body) k.program.push_back(Clause{f, {}, {}});
    for (const auto& c : o.constraints) {
        k.sigma.declare_individual(c.term.name);
        k.sigma.concept_assertions.push_back({c.term.name, c.type});
    }
    k.program.push_back(h);
    QueryOptions opts;
    opts.oi_clauses.insert(k.program.size() - 1);
    Engine e(std::move(k), options);
    return e.answer(Clause{std::nullopt, {*o.head}, {}}, opts);
}

}  // namespace allog
