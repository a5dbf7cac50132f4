#include "allog/generality.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace allog {

SkolemMap skolem_substitution(const Clause& h, const KnowledgeBase& kb, const std::vector<Clause>& avoid) {
    std::set<std::string> taken(kb.sigma.individuals().begin(), kb.sigma.individuals().end());
    for (const auto& c : kb.program_constants()) taken.insert(c);
    for (const auto& c : constants(h)) taken.insert(c);
    for (const auto& a : avoid)
        for (const auto& c : constants(a)) taken.insert(c);
    SkolemMap out;
    std::size_t next = 0;
    auto fresh = [&]() {
        for (;; ++next) {
            std::string name(1, static_cast<char>('a' + next % 26));
            if (next >= 26) name += std::to_string(next / 26);
            if (!taken.count(name)) {
                ++next;
                return name;
            }
        }
    };
    for (const auto& v : variables(h)) {
        std::string c = fresh();
        out.bindings.emplace(v, Term::constant(c));
        out.fresh.push_back(c);
    }
    return out;
}

std::pair<Clause, SkolemMap> skolemize(const Clause& h, const KnowledgeBase& kb, const std::vector<Clause>& avoid) {
    SkolemMap s = skolem_substitution(h, kb, avoid);
    return {apply_substitution(h, s.bindings), s};
}

std::string to_string(Comparison c) {
    switch (c) {
    case Comparison::more_general: return "more-general";
    case Comparison::less_general: return "less-general";
    case Comparison::equivalent: return "equivalent";
    case Comparison::incomparable: return "incomparable";
    }
    return "?";
}

Clause conjoin(const Clause& p, const Clause& q) {
    if (!p.head || !q.head || p.head->predicate != q.head->predicate || p.head->arity() != q.head->arity())
        throw std::invalid_argument("conjoin needs clauses with the same head predicate");
    Substitution s;
    for (std::size_t i = 0; i < q.head->arity(); ++i) {
        const Term& t = q.head->args[i];
        if (t.is_var()) s.emplace(t.name, p.head->args[i]);
    }
    auto pv = variables(p);
    std::set<std::string> used(pv.begin(), pv.end());
    auto types = [](const Clause& c, const std::string& v) {
        std::set<std::string> out;
        for (const auto& k : c.constraints)
            if (k.term.is_var() && k.term.name == v) out.insert(to_string(k.type));
        return out;
    };
    std::set<std::string> images;
    for (const auto& [v, t] : s)
        if (t.is_var()) images.insert(t.name);
    // a variable of q whose atoms and constraints p already has under v -> w is identified with w
    auto reusable = [&](const std::string& v, const std::string& w) {
        if (images.count(w) || types(q, v) != types(p, w)) return false;
        Substitution trial = s;
        trial[v] = Term::var(w);
        for (const auto& a : q.body) {
            auto vs = variables(a);
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) continue;
            for (const auto& u : vs)
                if (!trial.count(u)) return false;
            if (std::find(p.body.begin(), p.body.end(), substitute(trial, a)) == p.body.end()) return false;
        }
        return true;
    };
    for (const auto& v : variables(q)) {
        if (s.count(v)) continue;
        auto w = std::find_if(pv.begin(), pv.end(), [&](const std::string& w) { return reusable(v, w); });
        if (w != pv.end()) {
            s.emplace(v, Term::var(*w));
            images.insert(*w);
            continue;
        }
        std::string name;
        for (int n = 1;; ++n) {
            name = v + std::to_string(n);
            if (!used.count(name)) break;
        }
        used.insert(name);
        s.emplace(v, Term::var(name));
    }
    Clause r = p;
    Clause qq = apply_substitution(q, s);
    for (const auto& a : qq.body)
        if (std::find(r.body.begin(), r.body.end(), a) == r.body.end()) r.body.push_back(a);
    for (const auto& c : qq.constraints)
        if (std::find(r.constraints.begin(), r.constraints.end(), c) == r.constraints.end()) r.constraints.push_back(c);
    return r;
}

Generality::Generality(KnowledgeBase kb, GeneralityOptions options, std::shared_ptr<ReasonerCache> cache)
    : kb_(std::move(kb)), options_(options), cache_(std::move(cache)) {
    if (!cache_) cache_ = Reasoner(kb_.sigma, options_.engine.tableau).cache();
}

std::optional<SubsumptionWitness> Generality::witness(const Clause& h1, const Clause& h2) const {
    ++tests_;
    if (h1.head.has_value() != h2.head.has_value()) return std::nullopt;
    SkolemMap sigma = skolem_substitution(h2, kb_, {h1});
    Clause g2 = apply_substitution(h2, sigma.bindings);

    Substitution head;
    if (h1.head) {
        if (h1.head->predicate != g2.head->predicate || h1.head->arity() != g2.head->arity()) return std::nullopt;
        for (std::size_t i = 0; i < h1.head->arity(); ++i) {
            const Term &t = h1.head->args[i], &u = g2.head->args[i];
            if (t.is_const()) {
                if (t != u) return std::nullopt;
                continue;
            }
            auto [it, fresh] = head.emplace(t.name, u);
            if (!fresh && it->second != u) return std::nullopt;
        }
    }

    KnowledgeBase extended = kb_;
    for (const auto& c : sigma.fresh) extended.sigma.declare_individual(c);
    for (const auto& k : g2.constraints) extended.sigma.concept_assertions.push_back({k.term.name, k.type});
    for (const auto& a : g2.body) extended.program.push_back(Clause{a, {}, {}});
    Engine engine(std::move(extended), options_.engine, cache_);

    Clause goal = apply_substitution(Clause{std::nullopt, h1.body, h1.constraints}, head);
    QueryOptions oi;
    oi.object_identity = true;
    auto result = engine.resolve_all(goal, oi);

    std::map<std::string, std::size_t> group_of;
    std::vector<std::pair<Substitution, std::vector<ConstraintSet>>> groups;
    for (auto& d : result.derivations) {
        auto [it, fresh] = group_of.emplace(to_string(d.answer), groups.size());
        if (fresh) groups.push_back({d.answer, {}});
        groups[it->second].second.push_back(std::move(d.constraints));
    }
    if (groups.size() > options_.max_theta)
        throw ResourceLimitError("B-subsumption test exceeded " + std::to_string(options_.max_theta) + " substitutions");

    std::map<std::string, std::string> back;
    for (const auto& [v, c] : sigma.bindings) back.emplace(c.name, v);
    auto unskolem = [&](const Term& t) {
        auto it = back.find(t.name);
        return t.is_const() && it != back.end() ? Term::var(it->second) : t;
    };
    for (const auto& [answer, alternatives] : groups) {
        Substitution theta;
        for (const auto& [v, t] : head) theta.emplace(v, unskolem(t));
        for (const auto& [v, t] : answer) theta.emplace(v, unskolem(t));
        if (!is_oi_substitution(theta, h1)) continue;
        if (engine.reasoner().entails_disjunction(alternatives)) return SubsumptionWitness{theta, sigma};
    }
    return std::nullopt;
}

bool Generality::b_subsumes(const Clause& h1, const Clause& h2) const {
    auto key = std::make_pair(canonical_text(h1), canonical_text(h2));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = witness(h1, h2).has_value();
    memo_.emplace(key, r);
    return r;
}

namespace {

Comparison classify(bool forward, bool backward) {
    if (forward && backward) return Comparison::equivalent;
    if (forward) return Comparison::more_general;
    if (backward) return Comparison::less_general;
    return Comparison::incomparable;
}

void add_clause(Intension& into, const Clause& c) {
    for (const auto& d : into)
        if (is_variant(c, d)) return;
    into.push_back(c);
}

}  // namespace

Comparison Generality::compare(const Clause& h1, const Clause& h2) const {
    return classify(b_subsumes(h1, h2), b_subsumes(h2, h1));
}

bool Generality::b_subsumes(const Intension& h1, const Intension& h2) const {
    return std::all_of(h2.begin(), h2.end(), [&](const Clause& q) {
        return std::any_of(h1.begin(), h1.end(), [&](const Clause& p) { return b_subsumes(p, q); });
    });
}

Comparison Generality::compare(const Intension& h1, const Intension& h2) const {
    return classify(b_subsumes(h1, h2), b_subsumes(h2, h1));
}

Intension Generality::mgd(const Intension& p, const Intension& q) const {
    switch (compare(p, q)) {
    case Comparison::more_general:
    case Comparison::equivalent: return p;
    case Comparison::less_general: return q;
    case Comparison::incomparable: break;
    }
    Intension out = p;
    for (const auto& c : q) add_clause(out, c);
    return out;
}

Intension Generality::msd(const Intension& p, const Intension& q) const {
    switch (compare(p, q)) {
    case Comparison::less_general:
    case Comparison::equivalent: return p;
    case Comparison::more_general: return q;
    case Comparison::incomparable: break;
    }
    if (p.empty() || q.empty()) throw std::invalid_argument("msd of an empty intension");
    Clause c = p[0];
    for (std::size_t i = 1; i < p.size(); ++i) c = conjoin(c, p[i]);
    for (const auto& d : q) c = conjoin(c, d);
    return {c};
}

Intension Generality::mgd_all(const std::vector<Intension>& all) const {
    if (all.empty()) return {};
    Intension acc = all[0];
    for (std::size_t i = 1; i < all.size(); ++i) acc = mgd(acc, all[i]);
    return acc;
}

Intension Generality::msd_all(const std::vector<Intension>& all) const {
    if (all.empty()) return {};
    Intension acc = all[0];
    for (std::size_t i = 1; i < all.size(); ++i) acc = msd(acc, all[i]);
    return acc;
}

bool b_subsumes(const Clause& h1, const Clause& h2, const KnowledgeBase& kb, const GeneralityOptions& options) {
    return Generality(kb, options).b_subsumes(h1, h2);
}

Comparison compare(const Clause& h1, const Clause& h2, const KnowledgeBase& kb, const GeneralityOptions& options) {
    return Generality(kb, options).compare(h1, h2);
}

}  // namespace allog
