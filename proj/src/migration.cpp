#include <catlift/migration.hpp>

#include <catlift/constructions.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>


using namespace catlift;


namespace {

struct UnionFind
{
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
    }
};

void require_schema(const SchemaRef &expected, const Instance &delta, const char *what)
{
    if (expected != delta.schema_ref() and expected->name() != delta.schema().name())
        throw TypingError(std::string(what) + ": instance is on " + delta.schema().name() + ", expected " +
                          expected->name());
}

}

Instance catlift::delta(const SchemaMorphism &F, const Instance &epsilon)
{
    require_schema(F.codomain, epsilon, "delta");
    const Schema &S = *F.domain;
    std::vector<std::vector<std::string>> rows;
    for (ObjectId s = 0; s != S.object_count(); ++s) {
        auto ids = epsilon.row_ids(F(s));
        rows.emplace_back(ids.begin(), ids.end());
    }
    std::vector<std::vector<RowIndex>> columns;
    for (GenId g = 0; g != S.generator_count(); ++g)
        columns.push_back(eval_path(epsilon, F.apply_generator(g)));
    return Instance(F.domain, std::move(rows), std::move(columns));
}

SigmaResult catlift::sigma(const SchemaMorphism &F, const Instance &delta, std::size_t bound)
{
    require_schema(F.domain, delta, "sigma");
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;
    std::vector<HomClasses> homs;
    for (ObjectId c = 0; c != S.object_count(); ++c)
        homs.emplace_back(T, F(c), bound);

    struct Fiber
    {
        std::vector<std::pair<ObjectId, std::size_t>> objects; ///< (c, class of F c -> d)
        std::map<std::pair<ObjectId, std::size_t>, std::size_t> index;
        std::vector<std::size_t> offset;
        std::vector<std::size_t> class_of; ///< element -> row of d
        std::vector<std::size_t> roots;
        std::vector<std::pair<std::size_t, RowIndex>> element; ///< (comma object, row of c)
    };
    std::vector<Fiber> fibers(T.object_count());

    for (ObjectId d = 0; d != T.object_count(); ++d) {
        Fiber &fb = fibers[d];
        std::size_t total = 0;
        for (ObjectId c = 0; c != S.object_count(); ++c)
            for (std::size_t cls : homs[c].classes_to(d)) {
                fb.index.emplace(std::pair{c, cls}, fb.objects.size());
                fb.objects.emplace_back(c, cls);
                fb.offset.push_back(total);
                total += delta.row_count(c);
                for (RowIndex x = 0; x != delta.row_count(c); ++x)
                    fb.element.emplace_back(fb.objects.size() - 1, x);
            }
        UnionFind uf(total);
        for (std::size_t k2 = 0; k2 != fb.objects.size(); ++k2) {
            const auto [c2, cls2] = fb.objects[k2];
            for (GenId g = 0; g != S.generator_count(); ++g) {
                const auto &gen = S.generator(g);
                if (gen.target != c2)
                    continue;
                const ObjectId c = gen.source;
                Path along = compose_paths(T, F.apply_generator(g), homs[c2].representatives()[cls2]);
                const std::size_t k = fb.index.at({c, homs[c].classify(along)});
                const auto col = delta.column(g);
                for (RowIndex x = 0; x != col.size(); ++x)
                    uf.unite(fb.offset[k] + x, fb.offset[k2] + col[x]);
            }
        }
        fb.class_of.resize(total);
        std::map<std::size_t, std::size_t> row_of_root;
        for (std::size_t e = 0; e != total; ++e) {
            auto [it, fresh] = row_of_root.emplace(uf.find(e), fb.roots.size());
            if (fresh)
                fb.roots.push_back(e);
            fb.class_of[e] = it->second;
        }
    }

    std::vector<std::vector<std::string>> rows(T.object_count());
    for (ObjectId d = 0; d != T.object_count(); ++d) {
        const Fiber &fb = fibers[d];
        for (std::size_t e : fb.roots) {
            auto [k, x] = fb.element[e];
            const auto [c, cls] = fb.objects[k];
            rows[d].push_back(S.object_name(c) + ":" + delta.row_id({c, x}) + ":" +
                              T.format_steps(homs[c].representatives()[cls]));
        }
    }
    std::vector<std::vector<RowIndex>> columns(T.generator_count());
    for (GenId h = 0; h != T.generator_count(); ++h) {
        const auto &gen = T.generator(h);
        const Fiber &from = fibers[gen.source];
        const Fiber &to = fibers[gen.target];
        for (std::size_t e : from.roots) {
            auto [k, x] = from.element[e];
            const auto [c, cls] = from.objects[k];
            Path along = compose_paths(T, homs[c].representatives()[cls], T.single(h));
            const std::size_t k2 = to.index.at({c, homs[c].classify(along)});
            columns[h].push_back(static_cast<RowIndex>(to.class_of[to.offset[k2] + x]));
        }
    }

    SigmaResult out{Instance(F.codomain, std::move(rows), std::move(columns)), {}};
    for (ObjectId c = 0; c != S.object_count(); ++c) {
        const Fiber &fb = fibers[F(c)];
        const std::size_t k = fb.index.at({c, 0});
        std::vector<RowIndex> unit;
        for (RowIndex x = 0; x != delta.row_count(c); ++x)
            unit.push_back(static_cast<RowIndex>(fb.class_of[fb.offset[k] + x]));
        out.unit.push_back(std::move(unit));
    }
    return out;
}

Instance catlift::pi(const SchemaMorphism &F, const Instance &delta, std::size_t bound)
{
    require_schema(F.domain, delta, "pi");
    const Schema &T = *F.codomain;

    struct Limit
    {
        CommaCategory comma;
        std::map<std::pair<ObjectId, Path>, ObjectId> index;
        std::vector<Lift> lifts;
        std::map<Lift, RowIndex> position;
    };
    std::vector<Limit> limits;
    std::vector<std::vector<std::string>> rows(T.object_count());
    for (ObjectId d = 0; d != T.object_count(); ++d) {
        Limit lim{comma_category(F, d, bound), {}, {}, {}};
        const Schema &C = *lim.comma.schema;
        for (ObjectId o = 0; o != C.object_count(); ++o)
            lim.index.emplace(std::pair{lim.comma.source_object[o], lim.comma.morphism[o]}, o);
        lim.lifts = enumerate_lifts(where_less(lim.comma.projection), delta);
        std::vector<ObjectId> by_name(C.object_count());
        std::iota(by_name.begin(), by_name.end(), 0);
        std::sort(by_name.begin(), by_name.end(),
                  [&](ObjectId a, ObjectId b) { return C.object_name(a) < C.object_name(b); });
        for (RowIndex i = 0; i != lim.lifts.size(); ++i) {
            std::string id = "{";
            for (std::size_t j = 0; j != by_name.size(); ++j)
                id += (j ? "|" : "") + C.object_name(by_name[j]) + "=" +
                      delta.row_id(lim.lifts[i].assignment[by_name[j]]);
            rows[d].push_back(id + "}");
            lim.position.emplace(lim.lifts[i], i);
        }
        limits.push_back(std::move(lim));
    }

    std::vector<std::vector<RowIndex>> columns(T.generator_count());
    for (GenId h = 0; h != T.generator_count(); ++h) {
        const auto &gen = T.generator(h);
        const Limit &from = limits[gen.source];
        const Limit &to = limits[gen.target];
        HomClasses homs(T, gen.source, bound);
        // (d' ↓ F) -> (d ↓ F): (c, f') |-> (c, h ; f').
        std::vector<ObjectId> pre;
        for (ObjectId o = 0; o != to.comma.schema->object_count(); ++o) {
            Path along = compose_paths(T, T.single(h), to.comma.morphism[o]);
            const auto cls = homs.classify(along);
            pre.push_back(from.index.at({to.comma.source_object[o], homs.representatives()[cls]}));
        }
        for (const Lift &l : from.lifts) {
            Lift image;
            for (ObjectId o : pre)
                image.assignment.push_back(l.assignment[o]);
            columns[h].push_back(to.position.at(image));
        }
    }
    return Instance(F.codomain, std::move(rows), std::move(columns));
}

Instance catlift::migrate(const MigrationRequest &req, const Instance &input)
{
    switch (req.mode) {
    case MigrationMode::Delta:
        return delta(req.F, input);
    case MigrationMode::Sigma:
        return sigma(req.F, input, req.bound).instance;
    case MigrationMode::Pi:
        return pi(req.F, input, req.bound);
    }
    throw Error("unknown migration mode");
}

Instance catlift::partial(const ConcreteFunctor &F)
{
    const auto &I = *F.domain;
    const auto &B = *F.codomain;

    SchemaRef PB = B.presentation();
    std::vector<MorphId> gen_morphism;
    std::function<std::string(MorphId)> label;
    CategoryPresentation pb;
    if (PB) {
        for (GenId g = 0; g != PB->generator_count(); ++g)
            gen_morphism.push_back(B.generator_morphism(g));
        label = [&](MorphId f) { return PB->format_steps(B.representative(f)); };
    } else {
        pb = present(B);
        PB = pb.schema;
        gen_morphism = pb.generator_morphisms;
        label = [&](MorphId f) {
            return pb.morphism_generators[f] ? "[" + PB->generator(*pb.morphism_generators[f]).name + "]"
                                             : std::string("[]");
        };
    }

    // Connected components of (F | d): elements (i, f : F i -> d), glued along every u : i -> i'.
    const std::size_t nd = B.object_count();
    std::vector<std::map<std::pair<ObjectId, MorphId>, std::size_t>> index(nd);
    std::vector<std::vector<std::pair<ObjectId, MorphId>>> elements(nd);
    for (ObjectId i = 0; i != I.object_count(); ++i)
        for (MorphId f : B.out(F.object_map[i])) {
            const ObjectId d = B.morphism(f).cod;
            index[d].emplace(std::pair(i, f), elements[d].size());
            elements[d].emplace_back(i, f);
        }
    std::vector<UnionFind> classes;
    for (ObjectId d = 0; d != nd; ++d)
        classes.emplace_back(elements[d].size());
    for (MorphId u = 0; u != I.morphism_count(); ++u) {
        const auto &mu = I.morphism(u);
        for (MorphId f : B.out(F.object_map[mu.cod])) {
            const ObjectId d = B.morphism(f).cod;
            classes[d].unite(index[d].at({mu.dom, B.compose(F.morphism_map[u], f)}), index[d].at({mu.cod, f}));
        }
    }

    std::vector<std::vector<std::string>> rows(nd);
    std::vector<std::vector<RowIndex>> row_of(nd);
    for (ObjectId d = 0; d != nd; ++d) {
        std::map<std::size_t, RowIndex> root_row;
        row_of[d].resize(elements[d].size());
        for (std::size_t e = 0; e != elements[d].size(); ++e) {
            auto [it, fresh] = root_row.emplace(classes[d].find(e), static_cast<RowIndex>(rows[d].size()));
            if (fresh)
                rows[d].push_back(I.object_name(elements[d][e].first) + ":*:" + label(elements[d][e].second));
            row_of[d][e] = it->second;
        }
    }
    std::vector<std::vector<RowIndex>> columns(PB->generator_count());
    for (GenId g = 0; g != PB->generator_count(); ++g) {
        const ObjectId d = PB->generator(g).source;
        const ObjectId d2 = PB->generator(g).target;
        columns[g].resize(rows[d].size());
        for (std::size_t e = 0; e != elements[d].size(); ++e) {
            auto [i, f] = elements[d][e];
            columns[g][row_of[d][e]] = row_of[d2][index[d2].at({i, B.compose(f, gen_morphism[g])})];
        }
    }
    return Instance(PB, std::move(rows), std::move(columns));
}

std::size_t catlift::count_instance_morphisms(const Instance &a, const Instance &b)
{
    const Schema &S = a.schema();
    std::vector<Row> order;
    for (ObjectId o = 0; o != S.object_count(); ++o)
        for (RowIndex i = 0; i != a.row_count(o); ++i)
            order.push_back({o, i});
    constexpr RowIndex unset = ~RowIndex{0};
    std::vector<std::vector<RowIndex>> phi(S.object_count());
    for (ObjectId o = 0; o != S.object_count(); ++o)
        phi[o].assign(a.row_count(o), unset);
    std::vector<std::vector<GenId>> incoming(S.object_count());
    for (GenId g = 0; g != S.generator_count(); ++g)
        incoming[S.generator(g).target].push_back(g);

    auto consistent = [&](Row r) {
        for (GenId g : S.outgoing(r.object)) {
            Row t = a.apply(g, r);
            if (phi[t.object][t.index] != unset and b.column(g)[phi[r.object][r.index]] != phi[t.object][t.index])
                return false;
        }
        for (GenId g : incoming[r.object]) {
            const auto col = a.column(g);
            const ObjectId src = S.generator(g).source;
            for (RowIndex i = 0; i != col.size(); ++i)
                if (col[i] == r.index and phi[src][i] != unset and b.column(g)[phi[src][i]] != phi[r.object][r.index])
                    return false;
        }
        return true;
    };
    std::function<std::size_t(std::size_t)> count = [&](std::size_t k) -> std::size_t {
        if (k == order.size())
            return 1;
        const Row r = order[k];
        std::size_t total = 0;
        for (RowIndex c = 0; c != b.row_count(r.object); ++c) {
            phi[r.object][r.index] = c;
            if (consistent(r))
                total += count(k + 1);
        }
        phi[r.object][r.index] = unset;
        return total;
    };
    return count(0);
}

ValidationReport catlift::check_fiber_map(const SchemaMorphism &F, const Instance &delta, const Instance &epsilon,
                                          const FiberMap &h)
{
    ValidationReport report;
    const Schema &S = delta.schema();
    if (h.size() != S.object_count()) {
        report.add("fiber map has the wrong number of components");
        return report;
    }
    for (ObjectId c = 0; c != S.object_count(); ++c) {
        if (h[c].size() != delta.row_count(c))
            report.add("component at " + S.object_name(c) + " has the wrong length");
        for (RowIndex v : h[c])
            if (v >= epsilon.row_count(F(c)))
                report.add("component at " + S.object_name(c) + " points outside " +
                           epsilon.schema().object_name(F(c)));
    }
    if (not report.ok())
        return report;
    for (GenId g = 0; g != S.generator_count(); ++g) {
        const auto &gen = S.generator(g);
        const auto col = delta.column(g);
        for (RowIndex x = 0; x != col.size(); ++x) {
            Row there = transport(epsilon, Row{F(gen.source), h[gen.source][x]}, F.apply_generator(g));
            if (there.index != h[gen.target][col[x]])
                report.add("fiber map is not natural at " + S.generator_label(g) + ", row " +
                           delta.row_id({gen.source, x}));
        }
    }
    return report;
}

MappedQuery catlift::map_query_along_sigma(const SchemaMorphism &F, const Instance &delta, const Instance &epsilon,
                                           const FiberMap &h, const Query &Q)
{
    auto report = check_fiber_map(F, delta, epsilon, h);
    if (not report.ok())
        throw TypingError("map_query_along_sigma: " + report.problems.front());
    MappedQuery out{Q, {}};
    out.query.square.constraint.n = compose(Q.n(), F);
    auto push = [&](Row r) { return Row{F(r.object), h[r.object][r.index]}; };
    for (auto &r : out.query.square.binding)
        r = push(r);
    check_square(out.query.square, epsilon);
    for (const Lift &l : enumerate_lifts(Q.square, delta)) {
        Lift image;
        for (Row r : l.assignment)
            image.assignment.push_back(push(r));
        if (not is_lift(out.query.square, epsilon, image))
            throw TypingError("map_query_along_sigma: image is not a solution");
        out.images.push_back(std::move(image));
    }
    return out;
}

InvarianceReport catlift::query_invariance_under_delta(const SchemaMorphism &F, const Instance &epsilon,
                                                       const Query &Q)
{
    const Instance pulled = delta(F, epsilon);
    SquareInput pushed = Q.square;
    pushed.constraint.n = compose(Q.n(), F);
    for (auto &r : pushed.binding)
        r.object = F(r.object);

    auto left = enumerate_lifts(Q.square, pulled);
    auto right = enumerate_lifts(pushed, epsilon);
    InvarianceReport report{left.size(), right.size(), false};
    std::vector<Lift> mapped;
    for (const auto &l : left) {
        Lift m;
        for (Row r : l.assignment)
            m.assignment.push_back({F(r.object), r.index});
        mapped.push_back(std::move(m));
    }
    std::sort(mapped.begin(), mapped.end());
    std::sort(right.begin(), right.end());
    report.bijective = std::adjacent_find(mapped.begin(), mapped.end()) == mapped.end() and mapped == right;
    return report;
}
