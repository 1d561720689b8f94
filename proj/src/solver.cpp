#include <catlift/solver.hpp>

#include <catlift/concrete.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>


using namespace catlift;


namespace {

bool same_schema(const SchemaRef &a, const SchemaRef &b)
{
    return a == b or (a->name() == b->name() and a->object_count() == b->object_count() and
                      a->generator_count() == b->generator_count());
}

/// Per-generator column functions of `n(g)` and the binding pushed through `m`.
struct Prepared
{
    const Schema *R;
    std::vector<ObjectId> table;                   ///< n(r)
    std::vector<std::vector<RowIndex>> function;   ///< eval of n(g)
    std::vector<std::optional<RowIndex>> fixed;    ///< from the binding
    bool contradictory = false;                    ///< two W-objects pin one R-object to different rows
};

Prepared prepare(const SquareInput &sq, const Instance &delta)
{
    check_square(sq, delta);
    const auto &m = sq.constraint.m;
    const auto &n = sq.constraint.n;
    Prepared p;
    p.R = n.domain.get();
    for (ObjectId r = 0; r != p.R->object_count(); ++r)
        p.table.push_back(n(r));
    for (GenId g = 0; g != p.R->generator_count(); ++g)
        p.function.push_back(eval_path(delta, n.apply(p.R->single(g))));
    p.fixed.assign(p.R->object_count(), std::nullopt);
    for (ObjectId w = 0; w != m.domain->object_count(); ++w) {
        auto &slot = p.fixed[m(w)];
        if (slot and *slot != sq.binding[w].index)
            p.contradictory = true;
        slot = sq.binding[w].index;
    }
    return p;
}

class Search
{
    const Prepared &prep_;
    const Instance &delta_;
    std::vector<std::vector<GenId>> checks_; ///< generators whose later endpoint is r
    std::vector<RowIndex> current_;

    public:
    std::vector<Lift> found;

    Search(const Prepared &prep, const Instance &delta) : prep_(prep), delta_(delta)
    {
        const Schema &R = *prep.R;
        checks_.resize(R.object_count());
        for (GenId g = 0; g != R.generator_count(); ++g) {
            const auto &gen = R.generator(g);
            checks_[std::max(gen.source, gen.target)].push_back(g);
        }
        current_.assign(R.object_count(), 0);
    }

    std::vector<RowIndex> candidates(ObjectId r) const
    {
        std::optional<RowIndex> forced = prep_.fixed[r];
        for (GenId g : checks_[r]) {
            const auto &gen = prep_.R->generator(g);
            if (gen.target == r and gen.source < r) {
                const RowIndex v = prep_.function[g][current_[gen.source]];
                if (forced and *forced != v)
                    return {};
                forced = v;
            }
        }
        if (forced)
            return {*forced};
        std::vector<RowIndex> all(delta_.row_count(prep_.table[r]));
        for (RowIndex i = 0; i != all.size(); ++i)
            all[i] = i;
        return all;
    }

    bool consistent(ObjectId r) const
    {
        for (GenId g : checks_[r]) {
            const auto &gen = prep_.R->generator(g);
            if (prep_.function[g][current_[gen.source]] != current_[gen.target])
                return false;
        }
        return true;
    }

    void run(ObjectId r)
    {
        if (r == prep_.R->object_count()) {
            Lift l;
            for (ObjectId o = 0; o != current_.size(); ++o)
                l.assignment.push_back({prep_.table[o], current_[o]});
            found.push_back(std::move(l));
            return;
        }
        for (RowIndex x : candidates(r)) {
            current_[r] = x;
            if (consistent(r))
                run(r + 1);
        }
    }

    /// Explores only the subtree with `r0 = x`.
    void run_from(RowIndex x)
    {
        current_[0] = x;
        if (consistent(0))
            run(1);
    }
};

LiftingConstraint constraint(SchemaRef W, SchemaRef R, const SchemaRef &S,
                             const std::vector<std::pair<std::string, std::string>> &m_objects,
                             const std::vector<std::pair<std::string, std::vector<std::string>>> &m_arrows,
                             const std::vector<std::pair<std::string, std::string>> &n_objects,
                             const std::vector<std::pair<std::string, std::vector<std::string>>> &n_arrows,
                             std::string label)
{
    auto m = make_morphism(W, R, m_objects, m_arrows);
    auto n = make_morphism(R, S, n_objects, n_arrows);
    validated(m);
    validated(n);
    return {std::move(m), std::move(n), std::move(label)};
}

std::vector<std::string> steps_of(const Schema &S, GenId g)
{
    return {S.generator(g).name};
}

}

SchemaRef catlift::empty_schema()
{
    static const SchemaRef empty = discrete_schema("empty", {});
    return empty;
}

SquareInput catlift::where_less(const SchemaMorphism &n)
{
    return {{SchemaMorphism::from_empty(empty_schema(), n.domain), n, "where-less"}, {}};
}

void catlift::check_square(const SquareInput &sq, const Instance &delta)
{
    const auto &m = sq.constraint.m;
    const auto &n = sq.constraint.n;
    if (not same_schema(m.codomain, n.domain))
        throw TypingError("square: m lands in " + m.codomain->name() + " but n starts at " + n.domain->name());
    if (not same_schema(n.codomain, delta.schema_ref()))
        throw TypingError("square: n lands in " + n.codomain->name() + ", instance is on " + delta.schema().name());
    if (sq.binding.size() != m.domain->object_count())
        throw TypingError("square: binding has " + std::to_string(sq.binding.size()) + " rows for " +
                          std::to_string(m.domain->object_count()) + " W-objects");
    for (ObjectId w = 0; w != sq.binding.size(); ++w) {
        const Row r = sq.binding[w];
        if (r.object != n(m(w)) or r.index >= delta.row_count(r.object))
            throw TypingError("square: binding of " + m.domain->object_name(w) + " is not a row of " +
                              delta.schema().object_name(n(m(w))));
    }
    for (GenId g = 0; g != m.domain->generator_count(); ++g) {
        const auto &gen = m.domain->generator(g);
        if (transport(delta, sq.binding[gen.source], n.apply(m.apply_generator(g))) != sq.binding[gen.target])
            throw TypingError("square: binding does not commute along " + m.domain->generator_label(g));
    }
}

std::vector<Lift> catlift::enumerate_lifts(const SquareInput &sq, const Instance &delta, unsigned workers)
{
    const Prepared prep = prepare(sq, delta);
    if (prep.contradictory)
        return {};
    if (prep.R->object_count() == 0 or workers <= 1) {
        Search s(prep, delta);
        s.run(0);
        return std::move(s.found);
    }

    const auto first = Search(prep, delta).candidates(0);
    std::vector<std::vector<Lift>> parts(first.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < first.size(); k = next++) {
            Search s(prep, delta);
            s.run_from(first[k]);
            parts[k] = std::move(s.found);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t != std::min<std::size_t>(workers, first.size()); ++t)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    std::vector<Lift> out;
    for (auto &part : parts)
        std::move(part.begin(), part.end(), std::back_inserter(out));
    return out;
}

bool catlift::is_lift(const SquareInput &sq, const Instance &delta, const Lift &l)
{
    const auto &m = sq.constraint.m;
    const auto &n = sq.constraint.n;
    const Schema &R = *n.domain;
    if (l.assignment.size() != R.object_count())
        return false;
    for (ObjectId r = 0; r != R.object_count(); ++r)
        if (l.assignment[r].object != n(r) or l.assignment[r].index >= delta.row_count(n(r)))
            return false;
    for (GenId g = 0; g != R.generator_count(); ++g) {
        const auto &gen = R.generator(g);
        if (transport(delta, l.assignment[gen.source], n.apply(R.single(g))) != l.assignment[gen.target])
            return false;
    }
    for (ObjectId w = 0; w != m.domain->object_count(); ++w)
        if (l.assignment[m(w)] != sq.binding[w])
            return false;
    return true;
}

std::vector<Lift> catlift::enumerate_lifts_oracle(const SquareInput &sq, const Instance &delta)
{
    check_square(sq, delta);
    const auto &n = sq.constraint.n;
    const Schema &R = *n.domain;
    std::vector<Lift> out;
    Lift l;
    for (ObjectId r = 0; r != R.object_count(); ++r) {
        if (delta.row_count(n(r)) == 0)
            return out;
        l.assignment.push_back({n(r), 0});
    }
    while (true) {
        if (is_lift(sq, delta, l))
            out.push_back(l);
        // Odometer step, last object fastest, so the output is lexicographic.
        std::size_t k = R.object_count();
        while (k > 0) {
            auto &cell = l.assignment[k - 1];
            if (++cell.index < delta.row_count(cell.object))
                break;
            cell.index = 0;
            --k;
        }
        if (k == 0)
            return out;
    }
}

ConstraintVerdict catlift::check_constraint(const Instance &delta, const LiftingConstraint &c)
{
    ConstraintVerdict verdict;
    const SchemaMorphism nm = compose(c.m, c.n);
    for (const Lift &p : enumerate_lifts_oracle(where_less(nm), delta)) {
        ++verdict.squares;
        SquareInput sq{c, p.assignment};
        if (enumerate_lifts(sq, delta).empty()) {
            verdict.witness = std::move(sq);
            return verdict;
        }
    }
    return verdict;
}

std::vector<std::pair<std::string, std::string>> catlift::describe_binding(const SquareInput &sq,
                                                                         const Instance &delta)
{
    std::vector<std::pair<std::string, std::string>> out;
    const Schema &W = *sq.constraint.m.domain;
    for (ObjectId w = 0; w != W.object_count(); ++w)
        out.emplace_back(W.object_name(w), delta.format(sq.binding[w]));
    return out;
}

bool ConstraintSetReport::satisfied() const
{
    return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.second.satisfied(); });
}

ConstraintSetReport catlift::check_constraint_set(const Instance &delta, const ConstraintSet &xi, std::size_t bound)
{
    ConstraintSetReport report;
    for (const auto &c : xi.constraints)
        report.results.emplace_back(c.label, check_constraint(delta, c));
    if (not xi.universal.empty()) {
        auto more = check_universal(delta, xi.universal, bound);
        std::move(more.results.begin(), more.results.end(), std::back_inserter(report.results));
    }
    return report;
}

std::vector<SchemaMorphism> catlift::enumerate_schema_morphisms(const SchemaRef &R, const SchemaRef &S,
                                                                std::size_t bound)
{
    auto C = materialize(S, bound);
    std::vector<SchemaMorphism> out;
    for (const auto &F : enumerate_functors(*R, *C)) {
        SchemaMorphism n{R, S, F.objects, {}};
        for (MorphId f : F.generators)
            n.generator_map.push_back(C->representative(f));
        out.push_back(std::move(n));
    }
    return out;
}

ConstraintSetReport catlift::check_universal(const Instance &delta, const std::vector<SchemaMorphism> &M,
                                             std::size_t bound)
{
    ConstraintSetReport report;
    for (std::size_t j = 0; j != M.size(); ++j) {
        const auto &m = M[j];
        std::size_t k = 0;
        for (auto &n : enumerate_schema_morphisms(m.codomain, delta.schema_ref(), bound)) {
            LiftingConstraint c{m, std::move(n), "M" + std::to_string(j) + "/n" + std::to_string(k++)};
            report.results.emplace_back(c.label, check_constraint(delta, c));
        }
    }
    return report;
}

LiftingConstraint catlift::nonempty(const SchemaRef &S, std::string_view T)
{
    auto R = SchemaBuilder("R").object("A").build();
    return constraint(empty_schema(), R, S, {}, {}, {{"A", S->object_name(S->object(T))}}, {},
                      "nonempty(" + std::string(T) + ")");
}

LiftingConstraint catlift::at_most_one(const SchemaRef &S, std::string_view T)
{
    auto c = uniqueness_of(nonempty(S, T));
    c.label = "at_most_one(" + std::string(T) + ")";
    return c;
}

ConstraintSet catlift::exactly_one(const SchemaRef &S, std::string_view T)
{
    return {{nonempty(S, T), at_most_one(S, T)}, {}};
}

LiftingConstraint catlift::surjective_fk(const SchemaRef &S, std::string_view f)
{
    const GenId g = S->generator(f);
    const auto &gen = S->generator(g);
    auto W = SchemaBuilder("W").object("b").build();
    auto R = SchemaBuilder("R").objects({"A", "B"}).arrow("F", "A", "B").build();
    return constraint(W, R, S, {{"b", "B"}}, {},
                      {{"A", S->object_name(gen.source)}, {"B", S->object_name(gen.target)}},
                      {{"F", steps_of(*S, g)}}, "surjective(" + std::string(f) + ")");
}

LiftingConstraint catlift::injective_fk(const SchemaRef &S, std::string_view f)
{
    const GenId g = S->generator(f);
    const auto &gen = S->generator(g);
    auto W = SchemaBuilder("W").objects({"a1", "a2", "b"}).arrow("F1", "a1", "b").arrow("F2", "a2", "b").build();
    auto R = SchemaBuilder("R").objects({"A", "B"}).arrow("F", "A", "B").build();
    return constraint(W, R, S, {{"a1", "A"}, {"a2", "A"}, {"b", "B"}}, {{"F1", {"F"}}, {"F2", {"F"}}},
                      {{"A", S->object_name(gen.source)}, {"B", S->object_name(gen.target)}},
                      {{"F", steps_of(*S, g)}}, "injective(" + std::string(f) + ")");
}

namespace {

/// Relation `f, g : rel -> A` resolved in S.
struct Relation
{
    std::string rel, A, f, g;
};

Relation relation(const SchemaRef &S, std::string_view f, std::string_view g)
{
    const auto &F = S->generator(S->generator(f));
    const auto &G = S->generator(S->generator(g));
    if (F.source != G.source or F.target != G.target)
        throw TypingError("relation: " + std::string(f) + " and " + std::string(g) + " must be parallel");
    return {S->object_name(F.source), S->object_name(F.target), F.name, G.name};
}

}

LiftingConstraint catlift::transitive(const SchemaRef &S, std::string_view f, std::string_view g)
{
    const auto rel = relation(S, f, g);
    auto W = SchemaBuilder("W")
                 .objects({"r1", "r2", "a1", "a2", "a3"})
                 .arrow("f1", "r1", "a1").arrow("g1", "r1", "a2")
                 .arrow("f2", "r2", "a2").arrow("g2", "r2", "a3")
                 .build();
    auto R = SchemaBuilder("R")
                 .objects({"R1", "R2", "A1", "A2", "A3", "R3"})
                 .arrow("F1", "R1", "A1").arrow("G1", "R1", "A2")
                 .arrow("F2", "R2", "A2").arrow("G2", "R2", "A3")
                 .arrow("F3", "R3", "A1").arrow("G3", "R3", "A3")
                 .build();
    return constraint(W, R, S,
                      {{"r1", "R1"}, {"r2", "R2"}, {"a1", "A1"}, {"a2", "A2"}, {"a3", "A3"}},
                      {{"f1", {"F1"}}, {"g1", {"G1"}}, {"f2", {"F2"}}, {"g2", {"G2"}}},
                      {{"R1", rel.rel}, {"R2", rel.rel}, {"R3", rel.rel}, {"A1", rel.A}, {"A2", rel.A}, {"A3", rel.A}},
                      {{"F1", {rel.f}}, {"G1", {rel.g}}, {"F2", {rel.f}}, {"G2", {rel.g}}, {"F3", {rel.f}},
                       {"G3", {rel.g}}},
                      "transitive(" + std::string(f) + "," + std::string(g) + ")");
}

LiftingConstraint catlift::reflexive(const SchemaRef &S, std::string_view f, std::string_view g)
{
    const auto rel = relation(S, f, g);
    auto W = SchemaBuilder("W").object("a").build();
    auto R = SchemaBuilder("R").objects({"A", "R1"}).arrow("F1", "R1", "A").arrow("G1", "R1", "A").build();
    return constraint(W, R, S, {{"a", "A"}}, {}, {{"A", rel.A}, {"R1", rel.rel}},
                      {{"F1", {rel.f}}, {"G1", {rel.g}}}, "reflexive(" + std::string(f) + "," + std::string(g) + ")");
}

LiftingConstraint catlift::symmetric(const SchemaRef &S, std::string_view f, std::string_view g)
{
    const auto rel = relation(S, f, g);
    auto W = SchemaBuilder("W").objects({"r1", "a1", "a2"}).arrow("f1", "r1", "a1").arrow("g1", "r1", "a2").build();
    auto R = SchemaBuilder("R")
                 .objects({"R1", "A1", "A2", "R2"})
                 .arrow("F1", "R1", "A1").arrow("G1", "R1", "A2")
                 .arrow("F2", "R2", "A2").arrow("G2", "R2", "A1")
                 .build();
    return constraint(W, R, S, {{"r1", "R1"}, {"a1", "A1"}, {"a2", "A2"}}, {{"f1", {"F1"}}, {"g1", {"G1"}}},
                      {{"R1", rel.rel}, {"R2", rel.rel}, {"A1", rel.A}, {"A2", rel.A}},
                      {{"F1", {rel.f}}, {"G1", {rel.g}}, {"F2", {rel.f}}, {"G2", {rel.g}}},
                      "symmetric(" + std::string(f) + "," + std::string(g) + ")");
}

ConstraintSet catlift::product(const SchemaRef &S, std::string_view T, std::string_view f, std::string_view g)
{
    const ObjectId t = S->object(T);
    const GenId fg = S->generator(f), gg = S->generator(g);
    if (S->generator(fg).source != t or S->generator(gg).source != t)
        throw TypingError("product: " + std::string(f) + " and " + std::string(g) + " must start at " +
                          std::string(T));
    auto W = SchemaBuilder("W").objects({"b", "c"}).build();
    auto R = SchemaBuilder("R").objects({"A", "B", "C"}).arrow("F", "A", "B").arrow("G", "A", "C").build();
    const std::string label = "product(" + std::string(T) + "," + std::string(f) + "," + std::string(g) + ")";
    auto exists = constraint(W, R, S, {{"b", "B"}, {"c", "C"}}, {},
                             {{"A", S->object_name(t)},
                              {"B", S->object_name(S->generator(fg).target)},
                              {"C", S->object_name(S->generator(gg).target)}},
                             {{"F", steps_of(*S, fg)}, {"G", steps_of(*S, gg)}}, label + "/existence");
    auto unique = uniqueness_of(exists);
    unique.label = label + "/uniqueness";
    return {{std::move(exists), std::move(unique)}, {}};
}

LiftingConstraint catlift::forest(const SchemaRef &S, std::string_view node, std::string_view parent)
{
    const ObjectId v = S->object(node);
    const GenId p = S->generator(parent);
    if (S->generator(p).source != v or S->generator(p).target != v)
        throw TypingError("forest: " + std::string(parent) + " must be a loop on " + std::string(node));
    auto W = SchemaBuilder("W").objects({"v1", "v2"}).arrow("p1", "v1", "v2").arrow("p2", "v2", "v1").build();
    auto R = SchemaBuilder("R").object("v").arrow("p", "v", "v").build();
    return constraint(W, R, S, {{"v1", "v"}, {"v2", "v"}}, {{"p1", {"p"}}, {"p2", {"p"}}},
                      {{"v", S->object_name(v)}}, {{"p", steps_of(*S, p)}},
                      "forest(" + std::string(node) + "," + std::string(parent) + ")");
}

LiftingConstraint catlift::uniqueness_of(const LiftingConstraint &c)
{
    auto po = pushout_presentation(c.m, c.m);
    const Schema &R = *c.m.codomain;
    const auto nR = static_cast<GenId>(R.generator_count());
    SchemaMorphism fold{po.schema, c.m.codomain, std::vector<ObjectId>(po.schema->object_count(), 0), {}};
    for (ObjectId o = 0; o != R.object_count(); ++o) {
        fold.object_map[po.left(o)] = o;
        fold.object_map[po.right(o)] = o;
    }
    for (GenId g = 0; g != po.schema->generator_count(); ++g)
        fold.generator_map.push_back(R.single(g < nR ? g : g - nR));
    validated(fold);
    return {std::move(fold), c.n, "unique " + c.label};
}
