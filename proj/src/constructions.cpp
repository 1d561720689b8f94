#include <catlift/constructions.hpp>

#include <map>
#include <numeric>
#include <set>


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

    /// Keeps the smaller index as root, so every root is the least member of its class.
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

/// Appends `_1`/`_2`-style tags until every name is unique.
std::vector<std::string> disambiguate(const std::vector<std::string> &base, const std::vector<int> &side)
{
    std::map<std::string, int> count;
    for (const auto &b : base)
        ++count[b];
    std::vector<std::string> out;
    std::set<std::string> used;
    for (std::size_t i = 0; i != base.size(); ++i) {
        std::string name = base[i];
        if (count[name] > 1)
            name += "_" + std::to_string(side[i]);
        while (used.contains(name))
            name += "'";
        used.insert(name);
        out.push_back(std::move(name));
    }
    return out;
}

}

PushoutPresentation catlift::pushout_presentation(const SchemaMorphism &m1, const SchemaMorphism &m2)
{
    if (m1.domain.get() != m2.domain.get() and m1.domain->name() != m2.domain->name())
        throw TypingError("pushout: legs do not share a domain");
    const Schema &W = *m1.domain;
    const Schema &R1 = *m1.codomain;
    const Schema &R2 = *m2.codomain;
    const std::size_t n1 = R1.object_count();

    UnionFind uf(n1 + R2.object_count());
    for (ObjectId w = 0; w != W.object_count(); ++w)
        uf.unite(m1(w), n1 + m2(w));

    std::vector<std::size_t> roots;
    std::vector<ObjectId> class_of(n1 + R2.object_count());
    {
        std::map<std::size_t, ObjectId> index;
        for (std::size_t x = 0; x != class_of.size(); ++x) {
            auto r = uf.find(x);
            auto [it, fresh] = index.emplace(r, roots.size());
            if (fresh)
                roots.push_back(r);
            class_of[x] = it->second;
        }
    }
    std::vector<std::string> base;
    std::vector<int> side;
    for (auto r : roots) {
        base.push_back(r < n1 ? R1.object_name(r) : R2.object_name(r - n1));
        side.push_back(r < n1 ? 1 : 2);
    }
    auto objects = disambiguate(base, side);

    std::vector<Generator> gens;
    std::vector<std::string> gen_base;
    std::vector<int> gen_side;
    for (const Generator &g : R1.generators()) {
        gens.push_back({g.name, class_of[g.source], class_of[g.target]});
        gen_side.push_back(1);
    }
    for (const Generator &g : R2.generators()) {
        gens.push_back({g.name, class_of[n1 + g.source], class_of[n1 + g.target]});
        gen_side.push_back(2);
    }
    // Generator names only need to be unique per source object.
    {
        std::map<std::pair<ObjectId, std::string>, int> count;
        for (const auto &g : gens)
            ++count[{g.source, g.name}];
        std::set<std::pair<ObjectId, std::string>> used;
        for (std::size_t i = 0; i != gens.size(); ++i) {
            std::string name = gens[i].name;
            if (count[{gens[i].source, name}] > 1)
                name += "_" + std::to_string(gen_side[i]);
            while (used.contains({gens[i].source, name}))
                name += "'";
            used.insert({gens[i].source, name});
            gens[i].name = std::move(name);
        }
    }

    const auto R1_gens = static_cast<GenId>(R1.generator_count());
    auto left_path = [&](const Path &p) {
        Path q{class_of[p.source], p.steps};
        return q;
    };
    auto right_path = [&](const Path &p) {
        Path q{class_of[n1 + p.source], {}};
        for (GenId g : p.steps)
            q.steps.push_back(R1_gens + g);
        return q;
    };

    std::vector<Equation> eqs;
    for (const auto &eq : R1.equations())
        eqs.push_back({left_path(eq.lhs), left_path(eq.rhs)});
    for (const auto &eq : R2.equations())
        eqs.push_back({right_path(eq.lhs), right_path(eq.rhs)});
    for (GenId g = 0; g != W.generator_count(); ++g)
        eqs.push_back({left_path(m1.apply_generator(g)), right_path(m2.apply_generator(g))});

    auto P = std::make_shared<const Schema>(R1.name() + "+" + W.name() + "+" + R2.name(), std::move(objects),
                                            std::move(gens), std::move(eqs));

    SchemaMorphism left{m1.codomain, P, {}, {}};
    for (ObjectId o = 0; o != n1; ++o)
        left.object_map.push_back(class_of[o]);
    for (GenId g = 0; g != R1.generator_count(); ++g)
        left.generator_map.push_back(left_path(R1.single(g)));
    SchemaMorphism right{m2.codomain, P, {}, {}};
    for (ObjectId o = 0; o != R2.object_count(); ++o)
        right.object_map.push_back(class_of[n1 + o]);
    for (GenId g = 0; g != R2.generator_count(); ++g)
        right.generator_map.push_back(right_path(R2.single(g)));

    return {P, std::move(left), std::move(right)};
}

CommaCategory catlift::comma_category(const SchemaMorphism &F, ObjectId d, std::size_t bound)
{
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;
    HomClasses homs(T, d, bound);

    CommaCategory out;
    std::vector<std::string> names;
    std::map<std::pair<ObjectId, std::size_t>, ObjectId> index;
    std::vector<std::size_t> class_of;
    for (ObjectId c = 0; c != S.object_count(); ++c) {
        for (std::size_t cls : homs.classes_to(F(c))) {
            index.emplace(std::pair{c, cls}, names.size());
            names.push_back(S.object_name(c) + ":" + T.format_steps(homs.representatives()[cls]));
            out.source_object.push_back(c);
            out.morphism.push_back(homs.representatives()[cls]);
            class_of.push_back(cls);
        }
    }

    std::vector<Generator> gens;
    std::map<std::pair<ObjectId, GenId>, GenId> lifted;
    for (ObjectId o = 0; o != names.size(); ++o) {
        for (GenId g : S.outgoing(out.source_object[o])) {
            Path along = compose_paths(T, out.morphism[o], F.apply(S.single(g)));
            const ObjectId c2 = S.generator(g).target;
            const ObjectId o2 = index.at({c2, homs.classify(along)});
            lifted.emplace(std::pair{o, g}, gens.size());
            gens.push_back({S.generator(g).name, o, o2});
        }
    }

    auto lift = [&](ObjectId from, const Path &p) {
        Path q{from, {}};
        for (GenId g : p.steps) {
            GenId h = lifted.at({from, g});
            q.steps.push_back(h);
            from = gens[h].target;
        }
        return q;
    };
    std::vector<Equation> eqs;
    for (ObjectId o = 0; o != names.size(); ++o)
        for (const auto &eq : S.equations())
            if (eq.lhs.source == out.source_object[o])
                eqs.push_back({lift(o, eq.lhs), lift(o, eq.rhs)});

    out.schema = std::make_shared<const Schema>("(" + T.object_name(d) + "|" + S.name() + ")", std::move(names),
                                                gens, std::move(eqs));
    out.projection = SchemaMorphism{out.schema, F.domain, out.source_object, {}};
    for (GenId h = 0; h != gens.size(); ++h) {
        const auto &gen = gens[h];
        GenId base = *S.find_generator(out.source_object[gen.source], gen.name);
        out.projection.generator_map.push_back(S.single(base));
    }
    return out;
}

SchemaRef catlift::column_table_schema(std::size_t k)
{
    SchemaBuilder b("C" + std::to_string(k));
    b.object("K");
    for (std::size_t i = 1; i <= k; ++i)
        b.object("c" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i)
        b.arrow("f" + std::to_string(i), "K", "c" + std::to_string(i));
    return b.build();
}

SchemaMorphism catlift::column_map(const SchemaRef &small, const SchemaRef &large, const std::vector<std::size_t> &h)
{
    std::vector<std::pair<std::string, std::string>> objects{{"K", "K"}};
    std::vector<std::pair<std::string, std::vector<std::string>>> arrows;
    for (std::size_t i = 0; i != h.size(); ++i) {
        const auto j = std::to_string(h[i] + 1);
        objects.emplace_back("c" + std::to_string(i + 1), "c" + j);
        arrows.push_back({"f" + std::to_string(i + 1), {"f" + j}});
    }
    return make_morphism(small, large, objects, arrows);
}
