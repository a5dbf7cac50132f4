#include "allog/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace allog {

struct ReasonerCache {
    std::mutex mutex;
    std::string tbox;
    std::unordered_map<std::string, bool> answers;

    std::optional<bool> get(const std::string& key) {
        std::lock_guard lock(mutex);
        auto it = answers.find(key);
        if (it == answers.end()) return std::nullopt;
        return it->second;
    }
    void put(const std::string& key, bool v) {
        std::lock_guard lock(mutex);
        answers.emplace(key, v);
    }
};

void ConstraintSet::add(const std::string& individual, const Concept& c) {
    auto& v = parts_[individual];
    auto it = std::lower_bound(v.begin(), v.end(), c);
    if (it == v.end() || *it != c) v.insert(it, c);
}

void ConstraintSet::add(const ConstraintSet& other) {
    for (const auto& [ind, cs] : other.parts_)
        for (const auto& c : cs) add(ind, c);
}

std::size_t ConstraintSet::size() const {
    std::size_t n = 0;
    for (const auto& [_, cs] : parts_) n += cs.size();
    return n;
}

std::vector<ConceptAssertion> ConstraintSet::merged() const {
    std::vector<ConceptAssertion> out;
    for (const auto& [ind, cs] : parts_) out.push_back({ind, Concept::conjunction(cs)});
    return out;
}

std::string ConstraintSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [ind, cs] : parts_)
        for (const auto& c : cs) {
            if (!first) out += ", ";
            first = false;
            out += quote_constant(ind) + ":" + allog::to_string(c);
        }
    return out + "}";
}

namespace {

using DepSet = std::vector<int>;

DepSet unite(const DepSet& a, const DepSet& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    DepSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const DepSet& d, int level) { return std::binary_search(d.begin(), d.end(), level); }

DepSet without(DepSet d, int level) {
    auto it = std::lower_bound(d.begin(), d.end(), level);
    if (it != d.end() && *it == level) d.erase(it);
    return d;
}

struct Entry {
    ConceptKind kind;
    int role = -1;
    std::vector<int> children;  // and/or flattened; negation, all, some: one child
    Concept expr;
    int complement = -1;
};

// Interns NNF concepts to dense ids.
class Table {
public:
    int intern(const Concept& c) {
        auto it = ids_.find(c);
        if (it != ids_.end()) return it->second;
        Entry e{c.kind(), -1, {}, c, -1};
        switch (c.kind()) {
        case ConceptKind::conjunction:
        case ConceptKind::disjunction: {
            std::vector<Concept> leaves;
            flatten(c, c.kind(), leaves);
            for (const auto& l : leaves) {
                int id = intern(l);
                if (std::find(e.children.begin(), e.children.end(), id) == e.children.end()) e.children.push_back(id);
            }
            break;
        }
        case ConceptKind::universal:
        case ConceptKind::existential:
            e.role = role(c.name());
            e.children.push_back(intern(c.filler()));
            break;
        default:
            break;
        }
        int id = static_cast<int>(entries_.size());
        entries_.push_back(std::move(e));
        ids_.emplace(c, id);
        return id;
    }

    int complement(int id) {
        if (entries_[id].complement < 0) {
            int c = intern(nnf(Concept::negation(entries_[id].expr)));
            entries_[id].complement = c;
            entries_[c].complement = id;
        }
        return entries_[id].complement;
    }

    int role(const std::string& r) {
        auto [it, fresh] = roles_.emplace(r, static_cast<int>(role_names_.size()));
        if (fresh) role_names_.push_back(r);
        return it->second;
    }

    const Entry& operator[](int id) const { return entries_[id]; }
    const std::string& role_name(int r) const { return role_names_[r]; }

private:
    static void flatten(const Concept& c, ConceptKind k, std::vector<Concept>& out) {
        if (c.kind() == k) {
            flatten(c.left(), k, out);
            flatten(c.right(), k, out);
        } else {
            out.push_back(c);
        }
    }

    std::deque<Entry> entries_;  // stable references while interning
    std::unordered_map<Concept, int, ConceptHash> ids_;
    std::unordered_map<std::string, int> roles_;
    std::vector<std::string> role_names_;
};

struct Item {
    int cid;
    DepSet deps;
};

struct Edge {
    int role;
    int target;
    DepSet deps;
};

struct TNode {
    std::string name;
    bool fresh = false;
    int parent = -1;
    std::vector<Item> items;
    std::unordered_map<int, std::size_t> pos;
    std::vector<Edge> out;
    std::size_t cursor = 0;

    const Item* find(int c) const {
        auto it = pos.find(c);
        return it == pos.end() ? nullptr : &items[it->second];
    }
};

struct State {
    std::vector<TNode> nodes;
};

using Clash = std::optional<DepSet>;  // nullopt: no clash / open

class Run {
public:
    Run(Table& table, const std::vector<int>& gcis, const TableauLimits& limits, std::ostream* trace)
        : t_(table), gcis_(gcis), limits_(limits), trace_(trace) {}

    std::optional<ModelSketch> model;
    bool want_model = false;

    Clash start(State& s, const std::vector<std::string>& individuals, const std::vector<ConceptAssertion>& cas,
                const std::vector<RoleAssertion>& ras) {
        std::unordered_map<std::string, int> index;
        for (const auto& ind : individuals) {
            index.emplace(ind, static_cast<int>(s.nodes.size()));
            TNode n;
            n.name = ind;
            s.nodes.push_back(std::move(n));
            bump();
        }
        for (const auto& ra : ras)
            if (auto c = add_edge(s, index.at(ra.subject), t_.role(ra.role), index.at(ra.object), {})) return c;
        for (const auto& ca : cas)
            if (auto c = add(s, index.at(ca.individual), t_.intern(nnf(ca.type)), {}, "assert")) return c;
        for (std::size_t i = 0; i < s.nodes.size(); ++i)
            for (int g : gcis_)
                if (auto c = add(s, static_cast<int>(i), g, {}, "gci")) return c;
        return std::nullopt;
    }

    Clash solve(State& s) {
        for (;;) {
            if (auto c = saturate(s)) return c;

            auto [node, item] = pending_disjunction(s);
            if (node >= 0) {
                bump();
                int level = ++levels_;
                const Item it = s.nodes[node].items[item];
                int pick = first_open(s.nodes[node], t_[it.cid]);
                assert(pick >= 0);

                State left = s;
                Clash r1 = add(left, node, pick, unite(it.deps, {level}), "or");
                if (!r1) r1 = solve(left);
                if (!r1) return std::nullopt;
                if (!contains(*r1, level)) return r1;

                Clash r2 = add(s, node, t_.complement(pick), unite(it.deps, without(*r1, level)), "or");
                if (!r2) r2 = solve(s);
                return r2;
            }

            Clash clash;
            if (!expand_existential(s, clash)) {
                if (want_model) model = sketch(s);
                return std::nullopt;
            }
            if (clash) return clash;
        }
    }

private:
    void bump() {
        if (++work_ > limits_.max_nodes) throw ResourceLimitError("tableau node cap exceeded");
    }

    void note(const char* rule, const TNode& n, int c) {
        if (trace_) *trace_ << "RULE " << rule << ' ' << n.name << " : " << to_string(t_[c].expr) << '\n';
    }

    Clash add(State& s, int node, int c, DepSet deps, const char* rule) {
        TNode& n = s.nodes[node];
        if (n.pos.count(c)) return std::nullopt;
        n.pos.emplace(c, n.items.size());
        n.items.push_back({c, deps});
        note(rule, n, c);
        const Entry& e = t_[c];
        if (e.kind == ConceptKind::bottom) {
            note("clash", n, c);
            return deps;
        }
        if (e.kind == ConceptKind::atomic || e.kind == ConceptKind::negation) {
            if (const Item* other = n.find(t_.complement(c))) {
                note("clash", n, c);
                return unite(deps, other->deps);
            }
        }
        return std::nullopt;
    }

    Clash add_edge(State& s, int from, int role, int to, DepSet deps) {
        for (const auto& e : s.nodes[from].out)
            if (e.role == role && e.target == to) return std::nullopt;
        s.nodes[from].out.push_back({role, to, deps});
        // apply universals already present at the source
        for (std::size_t i = 0; i < s.nodes[from].items.size(); ++i) {
            const Item it = s.nodes[from].items[i];
            const Entry& e = t_[it.cid];
            if (e.kind == ConceptKind::universal && e.role == role)
                if (auto c = add(s, to, e.children[0], unite(it.deps, deps), "all")) return c;
        }
        return std::nullopt;
    }

    int first_open(const TNode& n, const Entry& disj) {
        for (int ch : disj.children)
            if (!n.find(t_.complement(ch))) return ch;
        return -1;
    }

    Clash saturate(State& s) {
        for (bool progress = true; progress;) {
            progress = false;
            for (std::size_t ni = 0; ni < s.nodes.size(); ++ni) {
                while (s.nodes[ni].cursor < s.nodes[ni].items.size()) {
                    const Item it = s.nodes[ni].items[s.nodes[ni].cursor++];
                    const Entry& e = t_[it.cid];
                    const int node = static_cast<int>(ni);
                    if (e.kind == ConceptKind::conjunction) {
                        for (int ch : std::vector<int>(e.children))
                            if (auto c = add(s, node, ch, it.deps, "and")) return c;
                    } else if (e.kind == ConceptKind::universal) {
                        auto edges = s.nodes[ni].out;
                        int filler = e.children[0];
                        for (const auto& ed : edges)
                            if (ed.role == e.role)
                                if (auto c = add(s, ed.target, filler, unite(it.deps, ed.deps), "all")) return c;
                    }
                }
            }
            // unit propagation on disjunctions
            for (std::size_t ni = 0; ni < s.nodes.size(); ++ni) {
                for (std::size_t ii = 0; ii < s.nodes[ni].items.size(); ++ii) {
                    const Item it = s.nodes[ni].items[ii];
                    const Entry& e = t_[it.cid];
                    if (e.kind != ConceptKind::disjunction) continue;
                    const TNode& n = s.nodes[ni];
                    bool satisfied = false;
                    int open = -1, open_count = 0;
                    DepSet deps = it.deps;
                    for (int ch : e.children) {
                        if (n.find(ch)) {
                            satisfied = true;
                            break;
                        }
                        if (const Item* neg = n.find(t_.complement(ch))) {
                            deps = unite(deps, neg->deps);
                        } else {
                            open = ch;
                            ++open_count;
                        }
                    }
                    if (satisfied || open_count > 1) continue;
                    if (open_count == 0) {
                        note("clash", n, it.cid);
                        return deps;
                    }
                    if (auto c = add(s, static_cast<int>(ni), open, deps, "or")) return c;
                    progress = true;
                }
            }
            for (const auto& n : s.nodes)
                if (n.cursor < n.items.size()) progress = true;
        }
        return std::nullopt;
    }

    std::pair<int, int> pending_disjunction(const State& s) {
        for (std::size_t ni = 0; ni < s.nodes.size(); ++ni) {
            const TNode& n = s.nodes[ni];
            for (std::size_t ii = 0; ii < n.items.size(); ++ii) {
                const Entry& e = t_[n.items[ii].cid];
                if (e.kind != ConceptKind::disjunction) continue;
                bool satisfied = std::any_of(e.children.begin(), e.children.end(), [&](int ch) { return n.find(ch); });
                if (!satisfied) return {static_cast<int>(ni), static_cast<int>(ii)};
            }
        }
        return {-1, -1};
    }

    bool blocked(const State& s, int node) const {
        const TNode& x = s.nodes[node];
        if (!x.fresh) return false;
        for (int a = x.parent; a >= 0 && s.nodes[a].fresh; a = s.nodes[a].parent) {
            const TNode& y = s.nodes[a];
            if (x.items.size() > y.items.size()) continue;
            bool subset = std::all_of(x.items.begin(), x.items.end(), [&](const Item& it) { return y.pos.count(it.cid); });
            if (subset) return true;
        }
        return false;
    }

    // Applies the existential rule once; false when nothing is left to expand.
    bool expand_existential(State& s, Clash& clash) {
        for (std::size_t ni = 0; ni < s.nodes.size(); ++ni) {
            const TNode& n = s.nodes[ni];
            for (std::size_t ii = 0; ii < n.items.size(); ++ii) {
                const Entry& e = t_[n.items[ii].cid];
                if (e.kind != ConceptKind::existential) continue;
                int filler = e.children[0];
                bool witnessed = std::any_of(n.out.begin(), n.out.end(), [&](const Edge& ed) {
                    return ed.role == e.role && s.nodes[ed.target].pos.count(filler);
                });
                if (witnessed) continue;
                if (blocked(s, static_cast<int>(ni))) break;

                bump();
                const Item it = n.items[ii];
                note("some", n, it.cid);
                int y = static_cast<int>(s.nodes.size());
                TNode fresh;
                fresh.name = "_" + std::to_string(++fresh_);
                fresh.fresh = true;
                fresh.parent = static_cast<int>(ni);
                s.nodes.push_back(std::move(fresh));
                clash = add(s, y, filler, it.deps, "some");
                for (std::size_t g = 0; g < gcis_.size() && !clash; ++g) clash = add(s, y, gcis_[g], {}, "gci");
                if (!clash) clash = add_edge(s, static_cast<int>(ni), e.role, y, it.deps);
                return true;
            }
        }
        return false;
    }

    ModelSketch sketch(const State& s) const {
        ModelSketch m;
        for (const auto& n : s.nodes) {
            ModelSketch::Node out{n.name, n.fresh, {}};
            for (const auto& it : n.items) out.label.push_back(to_string(t_[it.cid].expr));
            m.nodes.push_back(std::move(out));
            for (const auto& e : n.out) m.edges.push_back({n.name, s.nodes[e.target].name, t_.role_name(e.role)});
        }
        return m;
    }

    Table& t_;
    const std::vector<int>& gcis_;
    const TableauLimits& limits_;
    std::ostream* trace_;
    std::size_t work_ = 0;
    int levels_ = 0;
    int fresh_ = 0;
};

}  // namespace

struct Reasoner::Impl {
    struct Component {
        std::vector<std::string> members;
        std::vector<ConceptAssertion> cas;
        std::vector<RoleAssertion> ras;
        std::string signature;
    };

    Table table;
    std::vector<int> gcis;
    std::unordered_map<std::string, int> component_of;
    std::vector<Component> components;
    std::mutex mutex;
    std::optional<bool> base_consistent;
};

namespace {

std::string assertion_text(const ConceptAssertion& a) { return quote_constant(a.individual) + ":" + to_string(a.type); }
std::string assertion_text(const RoleAssertion& a) {
    return "(" + quote_constant(a.subject) + "," + quote_constant(a.object) + "):" + a.role;
}

struct UnionFind {
    std::vector<int> parent;
    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Reasoner::Reasoner(Ontology sigma, TableauLimits limits, std::shared_ptr<ReasonerCache> cache)
    : impl_(std::make_unique<Impl>()), sigma_(std::move(sigma)), limits_(limits), cache_(std::move(cache)) {
    std::string tbox;
    for (const auto& ax : sigma_.axioms) {
        tbox += to_string(ax.lhs) + (ax.kind == Axiom::Kind::equivalence ? " == " : " <= ") + to_string(ax.rhs) + ";";
        auto gci = [&](const Concept& sub, const Concept& sup) {
            impl_->gcis.push_back(impl_->table.intern(nnf(Concept::disjunction(Concept::negation(sub), sup))));
        };
        gci(ax.lhs, ax.rhs);
        if (ax.kind == Axiom::Kind::equivalence) gci(ax.rhs, ax.lhs);
    }
    if (!cache_ || cache_->tbox != tbox) {
        cache_ = std::make_shared<ReasonerCache>();
        cache_->tbox = tbox;
    }

    UnionFind uf;
    std::unordered_map<std::string, int> uf_id;
    for (const auto& ind : sigma_.individuals()) uf_id.emplace(ind, uf.make());
    auto id_of = [&](const std::string& ind) {
        auto [it, fresh] = uf_id.emplace(ind, 0);
        if (fresh) it->second = uf.make();
        return it->second;
    };
    for (const auto& ca : sigma_.concept_assertions) id_of(ca.individual);
    for (const auto& ra : sigma_.role_assertions) uf.unite(id_of(ra.subject), id_of(ra.object));

    std::unordered_map<int, int> comp_index;
    std::vector<std::string> order = sigma_.individuals();
    for (const auto& ca : sigma_.concept_assertions)
        if (!sigma_.has_individual(ca.individual)) order.push_back(ca.individual);
    for (const auto& ra : sigma_.role_assertions)
        for (const auto* n : {&ra.subject, &ra.object})
            if (!sigma_.has_individual(*n)) order.push_back(*n);
    for (const auto& ind : order) {
        if (impl_->component_of.count(ind)) continue;
        int root = uf.find(uf_id.at(ind));
        auto [it, fresh] = comp_index.emplace(root, static_cast<int>(impl_->components.size()));
        if (fresh) impl_->components.emplace_back();
        impl_->components[it->second].members.push_back(ind);
        impl_->component_of.emplace(ind, it->second);
    }
    for (const auto& ca : sigma_.concept_assertions)
        impl_->components[impl_->component_of.at(ca.individual)].cas.push_back(ca);
    for (const auto& ra : sigma_.role_assertions)
        impl_->components[impl_->component_of.at(ra.subject)].ras.push_back(ra);
    for (auto& comp : impl_->components) {
        std::vector<std::string> parts;
        for (const auto& m : comp.members) parts.push_back("i " + quote_constant(m));
        for (const auto& a : comp.cas) parts.push_back(assertion_text(a));
        for (const auto& a : comp.ras) parts.push_back(assertion_text(a));
        std::sort(parts.begin(), parts.end());
        for (const auto& p : parts) comp.signature += p + ";";
    }
}

Reasoner::~Reasoner() = default;

namespace {

struct Group {
    std::vector<std::string> individuals;
    std::vector<ConceptAssertion> cas;
    std::vector<RoleAssertion> ras;
    std::string key;
};

}  // namespace

static bool run_group(Table table, const std::vector<int>& gcis, const TableauLimits& limits, std::ostream* trace,
                      const Group& g, std::optional<ModelSketch>* model) {
    Run run(table, gcis, limits, trace);
    run.want_model = model != nullptr;
    State s;
    if (run.start(s, g.individuals, g.cas, g.ras)) return false;
    bool open = !run.solve(s).has_value();
    if (model && open) *model = std::move(run.model);
    return open;
}

bool Reasoner::is_consistent(const std::vector<ConceptAssertion>& extra,
                             const std::vector<RoleAssertion>& extra_roles) const {
    {
        std::lock_guard lock(impl_->mutex);
        if (!impl_->base_consistent) {
            bool ok = true;
            Group anon{{"_anon"}, {}, {}, "T|"};
            std::vector<Group> groups{anon};
            for (const auto& comp : impl_->components)
                groups.push_back({comp.members, comp.cas, comp.ras, "C|" + comp.signature});
            for (const auto& g : groups) {
                auto hit = cache_->get(g.key);
                bool r;
                if (hit) {
                    r = *hit;
                } else {
                    ++runs_;
                    r = run_group(impl_->table, impl_->gcis, limits_, trace_, g, nullptr);
                    cache_->put(g.key, r);
                }
                if (!r) {
                    ok = false;
                    break;
                }
            }
            impl_->base_consistent = ok;
        }
        if (!*impl_->base_consistent) return false;
    }
    if (extra.empty() && extra_roles.empty()) return true;

    // group the extra assertions with the components they touch
    UnionFind uf;
    std::unordered_map<std::string, int> node;  // "c<k>" for components, "n<name>" for new individuals
    auto id_of = [&](const std::string& ind) {
        auto it = impl_->component_of.find(ind);
        std::string key = it != impl_->component_of.end() ? "c" + std::to_string(it->second) : "n" + ind;
        auto [jt, fresh] = node.emplace(key, 0);
        if (fresh) jt->second = uf.make();
        return jt->second;
    };
    for (const auto& a : extra) id_of(a.individual);
    for (const auto& r : extra_roles) uf.unite(id_of(r.subject), id_of(r.object));

    std::map<int, Group> groups;
    std::map<int, std::vector<std::string>> keys;
    for (const auto& [key, id] : node) {
        Group& g = groups[uf.find(id)];
        if (key[0] == 'c') {
            const auto& comp = impl_->components[std::stoi(key.substr(1))];
            g.individuals.insert(g.individuals.end(), comp.members.begin(), comp.members.end());
            g.cas.insert(g.cas.end(), comp.cas.begin(), comp.cas.end());
            g.ras.insert(g.ras.end(), comp.ras.begin(), comp.ras.end());
            keys[uf.find(id)].push_back(comp.signature);
        } else {
            g.individuals.push_back(key.substr(1));
            keys[uf.find(id)].push_back("i " + quote_constant(key.substr(1)) + ";");
        }
    }
    for (const auto& a : extra) {
        int root = uf.find(id_of(a.individual));
        groups[root].cas.push_back(a);
        keys[root].push_back("+" + assertion_text(a));
    }
    for (const auto& r : extra_roles) {
        int root = uf.find(id_of(r.subject));
        groups[root].ras.push_back(r);
        keys[root].push_back("+" + assertion_text(r));
    }
    for (auto& [root, g] : groups) {
        auto& ks = keys[root];
        std::sort(ks.begin(), ks.end());
        std::string key = "X|";
        for (const auto& k : ks) key += k + "|";
        auto hit = cache_->get(key);
        bool r;
        if (hit) {
            r = *hit;
        } else {
            ++runs_;
            r = run_group(impl_->table, impl_->gcis, limits_, trace_, g, nullptr);
            cache_->put(key, r);
        }
        if (!r) return false;
    }
    return true;
}

ConsistencyResult Reasoner::check(const std::vector<ConceptAssertion>& extra,
                                  const std::vector<RoleAssertion>& extra_roles) const {
    Group g;
    g.individuals.push_back("_anon");
    std::set<std::string> seen{"_anon"};
    auto add_ind = [&](const std::string& i) {
        if (seen.insert(i).second) g.individuals.push_back(i);
    };
    for (const auto& comp : impl_->components)
        for (const auto& m : comp.members) add_ind(m);
    for (const auto& a : extra) add_ind(a.individual);
    for (const auto& r : extra_roles) {
        add_ind(r.subject);
        add_ind(r.object);
    }
    g.cas = sigma_.concept_assertions;
    g.cas.insert(g.cas.end(), extra.begin(), extra.end());
    g.ras = sigma_.role_assertions;
    g.ras.insert(g.ras.end(), extra_roles.begin(), extra_roles.end());
    ConsistencyResult out;
    std::optional<ModelSketch> model;
    ++runs_;
    out.consistent = run_group(impl_->table, impl_->gcis, limits_, trace_, g, &model);
    out.model = std::move(model);
    return out;
}

bool Reasoner::entails(const std::string& individual, const Concept& c) const {
    if (c.kind() == ConceptKind::top || !is_consistent()) return true;
    auto it = impl_->component_of.find(individual);
    std::string key = "E|" + (it != impl_->component_of.end() ? impl_->components[it->second].signature : "new") +
                      "|" + quote_constant(individual) + "|" + to_string(c);
    if (auto hit = cache_->get(key)) return *hit;
    bool r = !is_consistent({{individual, nnf(Concept::negation(c))}});
    cache_->put(key, r);
    return r;
}

bool Reasoner::subsumes(const Concept& sup, const Concept& sub) const {
    std::string fresh = "_sub";
    while (sigma_.has_individual(fresh) || impl_->component_of.count(fresh)) fresh += "_";
    if (!is_consistent()) return true;
    std::string key = "S|" + to_string(sub) + "|" + to_string(sup);
    if (auto hit = cache_->get(key)) return *hit;
    bool r = !is_consistent({{fresh, nnf(Concept::conjunction(sub, Concept::negation(sup)))}});
    cache_->put(key, r);
    return r;
}

bool Reasoner::entails_disjunction(const std::vector<ConstraintSet>& alternatives) const {
    if (!is_consistent()) return true;
    std::vector<std::vector<ConceptAssertion>> rest;
    std::vector<ConstraintSet> cleaned;
    for (const auto& alt : alternatives) {
        ConstraintSet keep;
        for (const auto& [ind, cs] : alt.parts())
            for (const auto& c : cs)
                if (!entails(ind, c)) keep.add(ind, c);
        if (keep.empty()) return true;
        cleaned.push_back(std::move(keep));
    }
    std::sort(cleaned.begin(), cleaned.end());
    cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
    // an alternative that contains another one is implied by it
    auto includes = [](const ConstraintSet& big, const ConstraintSet& small) {
        for (const auto& [ind, cs] : small.parts()) {
            auto it = big.parts().find(ind);
            if (it == big.parts().end() || !std::includes(it->second.begin(), it->second.end(), cs.begin(), cs.end()))
                return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < cleaned.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < cleaned.size() && !redundant; ++j)
            if (i != j && includes(cleaned[i], cleaned[j]) && !(includes(cleaned[j], cleaned[i]) && j > i))
                redundant = true;
        if (!redundant) rest.push_back(cleaned[i].merged());
    }
    if (rest.empty()) return false;

    std::size_t selections = 0;
    std::vector<ConceptAssertion> chosen;
    // true when some choice of one violated constraint per alternative is satisfiable
    std::function<bool(std::size_t)> counterexample = [&](std::size_t i) -> bool {
        if (i == rest.size()) return true;
        for (const auto& a : rest[i]) {
            if (++selections > limits_.max_selections)
                throw ResourceLimitError("constraint disjunction selection cap exceeded");
            chosen.push_back({a.individual, nnf(Concept::negation(a.type))});
            bool found = is_consistent(chosen) && counterexample(i + 1);
            chosen.pop_back();
            if (found) return true;
        }
        return false;
    };
    return !counterexample(0);
}

ConsistencyResult check_consistency(const Ontology& sigma, const std::vector<ConceptAssertion>& extra,
                                    const TableauLimits& limits) {
    Reasoner r(sigma, limits);
    return r.check(extra);
}

bool entails_assertion(const Ontology& sigma, const ConceptAssertion& a, const TableauLimits& limits) {
    Reasoner r(sigma, limits);
    return r.entails(a);
}

bool entails_constraint_disjunction(const Ontology& sigma, const std::vector<ConstraintSet>& alternatives,
                                    const TableauLimits& limits) {
    Reasoner r(sigma, limits);
    return r.entails_disjunction(alternatives);
}

}  // namespace allog
