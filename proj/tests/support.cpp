#include "support.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <sstream>


namespace support {

std::string fixture(const std::string &relative)
{
    return std::string(CATLIFT_FIXTURES) + "/" + relative;
}

Loaded load(const std::string &dir, const std::string &instance)
{
    Loaded out{{}, nullptr, Instance::empty(empty_schema())};
    out.lib.add(load_schemas(fixture(dir + "/schema.cat")));
    out.schema = out.lib.all().front();
    out.instance = load_instance(out.schema, fixture(dir + "/" + instance));
    return out;
}

CliRun cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

SchemaRef random_schema(Rng &rng, const std::string &name, std::size_t objects, std::size_t arrows, bool acyclic)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i != objects; ++i)
        names.push_back("O" + std::to_string(i));
    std::vector<Generator> gens;
    std::uniform_int_distribution<std::size_t> pick(0, objects - 1);
    for (std::size_t k = 0; k != arrows; ++k) {
        auto a = static_cast<ObjectId>(pick(rng));
        auto b = static_cast<ObjectId>(pick(rng));
        if (acyclic) {
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
        }
        gens.push_back({"g" + std::to_string(k), a, b});
    }
    return std::make_shared<const Schema>(name, std::move(names), std::move(gens), std::vector<Equation>{});
}

Instance random_instance(Rng &rng, const SchemaRef &S, std::size_t max_rows)
{
    std::uniform_int_distribution<std::size_t> rows(0, max_rows);
    std::vector<std::size_t> count(S->object_count());
    for (auto &c : count)
        c = rows(rng);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto &g : S->generators())
            if (count[g.source] and not count[g.target]) {
                count[g.target] = 1;
                changed = true;
            }
    }
    std::vector<std::vector<std::string>> ids(S->object_count());
    for (ObjectId o = 0; o != S->object_count(); ++o)
        for (std::size_t i = 0; i != count[o]; ++i)
            ids[o].push_back(S->object_name(o) + "r" + std::to_string(i));
    std::vector<std::vector<RowIndex>> columns;
    for (const auto &g : S->generators()) {
        std::vector<RowIndex> col;
        for (std::size_t i = 0; i != count[g.source]; ++i)
            col.push_back(std::uniform_int_distribution<RowIndex>(0, static_cast<RowIndex>(count[g.target] - 1))(rng));
        columns.push_back(std::move(col));
    }
    return Instance(S, std::move(ids), std::move(columns));
}

std::optional<Path> random_path(Rng &rng, const Schema &S, ObjectId from, ObjectId to, std::size_t max_len)
{
    std::uniform_int_distribution<std::size_t> length(0, max_len);
    for (int attempt = 0; attempt != 40; ++attempt) {
        Path p = Path::identity(from);
        const std::size_t len = length(rng);
        ObjectId at = from;
        for (std::size_t k = 0; k != len; ++k) {
            auto out = S.outgoing(at);
            if (out.empty())
                break;
            GenId g = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
            p.steps.push_back(g);
            at = S.generator(g).target;
        }
        if (at == to)
            return p;
    }
    return std::nullopt;
}

Instance with_true_equations(Rng &rng, const Instance &delta, std::size_t count)
{
    const Schema &S = delta.schema();
    std::vector<Equation> eqs(S.equations().begin(), S.equations().end());
    std::uniform_int_distribution<ObjectId> pick(0, static_cast<ObjectId>(S.object_count() - 1));
    for (std::size_t tries = 0; tries != 30 and eqs.size() < S.equations().size() + count; ++tries) {
        const ObjectId a = pick(rng);
        auto p = random_path(rng, S, a, pick(rng), 3);
        if (not p)
            continue;
        auto q = random_path(rng, S, a, S.target(*p), 3);
        if (not q or *p == *q)
            continue;
        if (eval_path(delta, *p) == eval_path(delta, *q))
            eqs.push_back({*p, *q});
    }
    std::vector<std::string> objects(S.objects().begin(), S.objects().end());
    std::vector<Generator> gens(S.generators().begin(), S.generators().end());
    auto T = std::make_shared<const Schema>(S.name(), std::move(objects), std::move(gens), std::move(eqs));
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<RowIndex>> columns;
    for (ObjectId o = 0; o != S.object_count(); ++o)
        rows.emplace_back(delta.row_ids(o).begin(), delta.row_ids(o).end());
    for (GenId g = 0; g != S.generator_count(); ++g)
        columns.emplace_back(delta.column(g).begin(), delta.column(g).end());
    return Instance(T, std::move(rows), std::move(columns));
}

std::optional<SchemaMorphism> random_morphism(Rng &rng, const SchemaRef &R, const SchemaRef &S, std::size_t max_len)
{
    std::uniform_int_distribution<ObjectId> pick(0, static_cast<ObjectId>(S->object_count() - 1));
    for (int attempt = 0; attempt != 40; ++attempt) {
        SchemaMorphism F{R, S, {}, {}};
        for (ObjectId o = 0; o != R->object_count(); ++o)
            F.object_map.push_back(pick(rng));
        bool ok = true;
        for (const auto &g : R->generators()) {
            auto p = random_path(rng, *S, F(g.source), F(g.target), max_len);
            if (not p) {
                ok = false;
                break;
            }
            F.generator_map.push_back(*p);
        }
        if (ok and check_functor(F).ok())
            return F;
    }
    return std::nullopt;
}

std::vector<std::string> ids(const Instance &delta, const Lift &l)
{
    std::vector<std::string> out;
    for (Row r : l.assignment)
        out.push_back(delta.row_id(r));
    return out;
}

std::set<std::vector<std::string>> id_set(const Instance &delta, const std::vector<Lift> &lifts)
{
    std::set<std::vector<std::string>> out;
    for (const auto &l : lifts)
        out.insert(ids(delta, l));
    return out;
}

MorphId morphism_of(const ConcreteCategory &C, const Path &p)
{
    MorphId f = C.identity(p.source);
    for (GenId g : p.steps)
        f = C.compose(f, C.generator_morphism(g));
    return f;
}

std::vector<std::vector<Row>> all_bindings(const SchemaMorphism &m, const SchemaMorphism &n, const Instance &delta)
{
    const Schema &W = *m.domain;
    std::vector<std::vector<Row>> out;
    std::vector<Row> current(W.object_count());
    std::function<void(ObjectId)> fill = [&](ObjectId w) {
        if (w == W.object_count()) {
            for (GenId g = 0; g != W.generator_count(); ++g) {
                const auto &gen = W.generator(g);
                if (transport(delta, current[gen.source], n.apply(m.apply_generator(g))) != current[gen.target])
                    return;
            }
            out.push_back(current);
            return;
        }
        const ObjectId s = n(m(w));
        for (RowIndex x = 0; x != delta.row_count(s); ++x) {
            current[w] = {s, x};
            fill(w + 1);
        }
    };
    fill(0);
    return out;
}

namespace {

struct DisjointSets
{
    std::vector<std::size_t> parent;

    std::size_t add()
    {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}

Instance brute_sigma(const SchemaMorphism &F, const Instance &delta)
{
    const auto CS = materialize(F.domain);
    const auto CT = materialize(F.codomain);
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;
    std::vector<MorphId> image(CS->morphism_count());
    for (MorphId u = 0; u != CS->morphism_count(); ++u)
        image[u] = morphism_of(*CT, F.apply(CS->representative(u)));

    using Element = std::tuple<ObjectId, MorphId, RowIndex>;
    std::vector<std::map<Element, std::size_t>> id(T.object_count());
    DisjointSets sets;
    for (ObjectId d = 0; d != T.object_count(); ++d)
        for (ObjectId c = 0; c != S.object_count(); ++c)
            for (MorphId f : CT->hom(F(c), d))
                for (RowIndex x = 0; x != delta.row_count(c); ++x)
                    id[d][{c, f, x}] = sets.add();
    for (MorphId u = 0; u != CS->morphism_count(); ++u) {
        const auto &mu = CS->morphism(u);
        const auto act = eval_path(delta, CS->representative(u));
        for (ObjectId d = 0; d != T.object_count(); ++d)
            for (MorphId f2 : CT->hom(F(mu.cod), d))
                for (RowIndex x = 0; x != delta.row_count(mu.dom); ++x)
                    sets.unite(id[d].at({mu.dom, CT->compose(image[u], f2), x}), id[d].at({mu.cod, f2, act[x]}));
    }

    std::vector<std::vector<std::string>> rows(T.object_count());
    std::vector<std::map<std::size_t, RowIndex>> row_of_root(T.object_count());
    for (ObjectId d = 0; d != T.object_count(); ++d)
        for (const auto &[e, k] : id[d])
            if (row_of_root[d].emplace(sets.find(k), rows[d].size()).second)
                rows[d].push_back("s" + std::to_string(rows[d].size()));
    std::vector<std::vector<RowIndex>> columns(T.generator_count());
    for (GenId h = 0; h != T.generator_count(); ++h) {
        const ObjectId d = T.generator(h).source;
        const ObjectId d2 = T.generator(h).target;
        const MorphId hm = CT->generator_morphism(h);
        columns[h].resize(rows[d].size());
        for (const auto &[e, k] : id[d]) {
            auto [c, f, x] = e;
            columns[h][row_of_root[d].at(sets.find(k))] =
                row_of_root[d2].at(sets.find(id[d2].at({c, CT->compose(f, hm), x})));
        }
    }
    return Instance(F.codomain, std::move(rows), std::move(columns));
}

Instance brute_pi(const SchemaMorphism &F, const Instance &delta)
{
    const auto CS = materialize(F.domain);
    const auto CT = materialize(F.codomain);
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;
    std::vector<MorphId> image(CS->morphism_count());
    for (MorphId u = 0; u != CS->morphism_count(); ++u)
        image[u] = morphism_of(*CT, F.apply(CS->representative(u)));

    using Comma = std::pair<ObjectId, MorphId>;
    std::vector<std::vector<Comma>> comma(T.object_count());
    std::vector<std::map<Comma, std::size_t>> position(T.object_count());
    std::vector<std::map<std::vector<RowIndex>, RowIndex>> family_row(T.object_count());
    std::vector<std::vector<std::vector<RowIndex>>> families(T.object_count());
    for (ObjectId d = 0; d != T.object_count(); ++d) {
        for (ObjectId c = 0; c != S.object_count(); ++c)
            for (MorphId f : CT->hom(d, F(c))) {
                position[d][{c, f}] = comma[d].size();
                comma[d].emplace_back(c, f);
            }
        std::vector<RowIndex> x(comma[d].size());
        std::function<void(std::size_t)> fill = [&](std::size_t k) {
            if (k == x.size()) {
                for (std::size_t a = 0; a != x.size(); ++a) {
                    auto [c, f] = comma[d][a];
                    for (MorphId u : CS->out(c)) {
                        const auto b = position[d].at({CS->morphism(u).cod, CT->compose(f, image[u])});
                        if (eval_path(delta, CS->representative(u))[x[a]] != x[b])
                            return;
                    }
                }
                family_row[d].emplace(x, families[d].size());
                families[d].push_back(x);
                return;
            }
            for (RowIndex r = 0; r != delta.row_count(comma[d][k].first); ++r) {
                x[k] = r;
                fill(k + 1);
            }
        };
        fill(0);
    }

    std::vector<std::vector<std::string>> rows(T.object_count());
    for (ObjectId d = 0; d != T.object_count(); ++d)
        for (std::size_t k = 0; k != families[d].size(); ++k)
            rows[d].push_back("p" + std::to_string(k));
    std::vector<std::vector<RowIndex>> columns(T.generator_count());
    for (GenId h = 0; h != T.generator_count(); ++h) {
        const ObjectId d = T.generator(h).source;
        const ObjectId d2 = T.generator(h).target;
        const MorphId hm = CT->generator_morphism(h);
        for (const auto &x : families[d]) {
            std::vector<RowIndex> y;
            for (auto [c, f2] : comma[d2])
                y.push_back(x[position[d].at({c, CT->compose(hm, f2)})]);
            columns[h].push_back(family_row[d2].at(y));
        }
    }
    return Instance(F.codomain, std::move(rows), std::move(columns));
}

Coproduct coproduct(const SchemaRef &A, const SchemaRef &B)
{
    auto none = empty_schema();
    auto P = pushout_presentation(SchemaMorphism::from_empty(none, A), SchemaMorphism::from_empty(none, B));
    return {P.schema, P.left, P.right};
}

SchemaMorphism copair(const Coproduct &P, const SchemaMorphism &f, const SchemaMorphism &g)
{
    SchemaMorphism out{P.schema, f.codomain, std::vector<ObjectId>(P.schema->object_count()),
                       std::vector<Path>(P.schema->generator_count())};
    for (const auto *leg : {&P.left, &P.right}) {
        const auto &h = leg == &P.left ? f : g;
        for (ObjectId o = 0; o != leg->domain->object_count(); ++o)
            out.object_map[(*leg)(o)] = h(o);
        for (GenId k = 0; k != leg->domain->generator_count(); ++k)
            out.generator_map[leg->apply_generator(k).steps.front()] = h.apply_generator(k);
    }
    return out;
}

std::optional<Query> random_query(Rng &rng, const Instance &delta, std::size_t max_objects, bool with_where)
{
    const auto &S = delta.schema_ref();
    auto R = random_schema(rng, "R", 1 + rng() % max_objects, rng() % (max_objects + 1), false);
    auto n = random_morphism(rng, R, S, 2);
    if (not n)
        return std::nullopt;
    Query Q{"random", where_less(*n), std::nullopt};
    if (not with_where)
        return Q;
    auto W = discrete_schema("W", {"w"});
    const auto r = static_cast<ObjectId>(rng() % R->object_count());
    auto m = make_morphism(W, R, {{"w", R->object_name(r)}}, {});
    auto lifts = enumerate_lifts_oracle(Q.square, delta);
    const ObjectId s = (*n)(r);
    if (delta.row_count(s) == 0)
        return Q;
    Row bound{s, static_cast<RowIndex>(rng() % delta.row_count(s))};
    if (not lifts.empty() and rng() % 2)
        bound = lifts[rng() % lifts.size()].assignment[r];
    Q.square = SquareInput{{m, *n, "random"}, {bound}};
    return Q;
}

std::optional<RandomQueryMorphism> random_query_morphism(Rng &rng, const Query &Q, const Instance &delta)
{
    const SchemaRef &R = Q.n().domain;
    const SchemaRef &S = Q.n().codomain;
    const bool discrete = rng() % 2;
    auto Rp = random_schema(rng, "R'", 1 + rng() % 3, discrete ? 0 : rng() % 3, false);
    auto F = random_morphism(rng, Rp, R, 1);
    if (not F)
        return std::nullopt;
    auto source = compose(*F, Q.n());
    NaturalTransformation alpha{source, source, {}};
    if (discrete) {
        for (ObjectId r = 0; r != Rp->object_count(); ++r) {
            const ObjectId from = source(r);
            auto p = random_path(rng, *S, from, static_cast<ObjectId>(rng() % S->object_count()), 2);
            if (not p)
                p = Path::identity(from);
            alpha.target.object_map[r] = S->target(*p);
            alpha.components.push_back(*p);
        }
    } else {
        alpha = NaturalTransformation::identity(source);
    }

    const SchemaRef &W = Q.m().domain;
    std::optional<std::pair<ObjectId, ObjectId>> pick;
    if (W->object_count() and rng() % 3) {
        const auto w = static_cast<ObjectId>(rng() % W->object_count());
        for (ObjectId r = 0; r != Rp->object_count(); ++r)
            if ((*F)(r) == Q.m()(w))
                pick = {w, r};
    }
    SchemaRef Wp = pick ? discrete_schema("W'", {"w'"}) : empty_schema();
    SchemaMorphism G = pick ? make_morphism(Wp, W, {{"w'", W->object_name(pick->first)}}, {})
                            : SchemaMorphism::from_empty(Wp, W);
    SchemaMorphism mp = pick ? make_morphism(Wp, Rp, {{"w'", Rp->object_name(pick->second)}}, {})
                             : SchemaMorphism::from_empty(Wp, Rp);
    Query Qp{"target", SquareInput{{mp, alpha.target, "target"}, {}}, std::nullopt};
    auto qm = complete_query_morphism(*F, G, alpha, Q, Qp, delta);
    return RandomQueryMorphism{Qp, qm};
}

ConcreteFunctor functor_of(const SchemaRef &I, const SchemaRef &B, const std::vector<std::string> &objects,
                           const std::vector<std::string> &generators)
{
    auto CI = materialize(I);
    auto CB = materialize(B);
    PresentedFunctor pf;
    for (const auto &o : objects)
        pf.objects.push_back(B->object(o));
    for (const auto &g : generators)
        pf.generators.push_back(CB->generator_morphism(B->generator(g)));
    ConcreteFunctor F{CI, CB, pf.objects, {}};
    for (MorphId f = 0; f != CI->morphism_count(); ++f)
        F.morphism_map.push_back(pf.evaluate(*I, *CB, CI->representative(f)));
    return F;
}

bool same_functor(const ConcreteFunctor &F, const ConcreteFunctor &G)
{
    const auto &A = *F.domain;
    const auto &B = *G.domain;
    if (A.object_count() != B.object_count() or A.morphism_count() != B.morphism_count())
        return false;
    for (ObjectId o = 0; o != A.object_count(); ++o)
        if (A.object_name(o) != B.object_name(o) or
            F.codomain->object_name(F.object_map[o]) != G.codomain->object_name(G.object_map[o]))
            return false;
    auto over = [](const ConcreteFunctor &H, MorphId f) {
        const auto &m = H.domain->morphism(f);
        const auto &b = H.codomain->morphism(H.morphism_map[f]);
        return std::tuple(m.dom, m.cod, H.codomain->object_name(b.dom), H.codomain->object_name(b.cod),
                          H.codomain->is_identity(H.morphism_map[f]));
    };
    std::vector<decltype(over(F, 0))> a, b;
    for (MorphId f = 0; f != A.morphism_count(); ++f) {
        a.push_back(over(F, f));
        b.push_back(over(G, f));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}
