#include <catlift/fibration.hpp>

#include <map>
#include <json.hpp>


using namespace catlift;


namespace {

std::string label(const Instance &delta, Row r)
{
    return delta.format(r);
}

/// Paths identified by their action on δ.
ConcreteRef image_quotient(const Instance &delta)
{
    const Schema &S = delta.schema();
    using Key = std::pair<ObjectId, std::vector<RowIndex>>;
    std::vector<std::map<Key, std::size_t>> index(S.object_count());
    std::vector<std::vector<Path>> reps(S.object_count());
    std::vector<std::vector<ObjectId>> targets(S.object_count());

    auto act = [&](const Path &p) { return eval_path(delta, p); };
    for (ObjectId s = 0; s != S.object_count(); ++s) {
        Path id = Path::identity(s);
        index[s].emplace(Key{s, act(id)}, 0);
        reps[s].push_back(id);
        targets[s].push_back(s);
        for (std::size_t k = 0; k != reps[s].size(); ++k) {
            for (GenId g : S.outgoing(targets[s][k])) {
                Path p = reps[s][k];
                p.steps.push_back(g);
                const ObjectId t = S.generator(g).target;
                if (index[s].emplace(Key{t, act(p)}, reps[s].size()).second) {
                    reps[s].push_back(std::move(p));
                    targets[s].push_back(t);
                }
            }
        }
    }

    std::vector<std::size_t> offset;
    std::vector<Morphism> morphisms;
    std::vector<Path> all_reps;
    std::vector<MorphId> identities;
    for (ObjectId s = 0; s != S.object_count(); ++s) {
        offset.push_back(morphisms.size());
        identities.push_back(morphisms.size());
        for (std::size_t k = 0; k != reps[s].size(); ++k) {
            morphisms.push_back({s, targets[s][k], k == 0 ? "id_" + S.object_name(s) : S.format(reps[s][k])});
            all_reps.push_back(reps[s][k]);
        }
    }
    auto classify = [&](const Path &p) -> MorphId {
        return offset[p.source] + index[p.source].at(Key{S.target(p), act(p)});
    };
    auto C = std::make_shared<ConcreteCategory>(
        S.name(), std::vector<std::string>(S.objects().begin(), S.objects().end()), morphisms, identities,
        [&](MorphId f, MorphId g) { return classify(compose_paths(S, all_reps[f], all_reps[g])); });
    std::vector<MorphId> gens;
    for (GenId g = 0; g != S.generator_count(); ++g)
        gens.push_back(classify(S.single(g)));
    C->attach_presentation(delta.schema_ref(), std::move(all_reps), std::move(gens));
    return C;
}

}

std::vector<Triple> catlift::grothendieck_triples(const Instance &delta)
{
    std::vector<Triple> out;
    const Schema &S = delta.schema();
    for (ObjectId o = 0; o != S.object_count(); ++o)
        for (RowIndex i = 0; i != delta.row_count(o); ++i)
            for (GenId g : S.outgoing(o))
                out.push_back({Row{o, i}, g, delta.apply(g, Row{o, i})});
    return out;
}

std::string catlift::format_ntriple(const Instance &delta, const Triple &t)
{
    return "<" + label(delta, t.subject) + "> <" + delta.schema().generator(t.predicate).name + "> <" +
           label(delta, t.object) + "> .";
}

std::string catlift::format_json_triple(const Instance &delta, const Triple &t)
{
    nlohmann::json j;
    j["subject"] = label(delta, t.subject);
    j["predicate"] = delta.schema().generator(t.predicate).name;
    j["object"] = label(delta, t.object);
    return j.dump();
}

ConcreteRef catlift::grothendieck_base(const Instance &delta, std::size_t bound)
{
    try {
        return materialize(delta.schema_ref(), bound);
    } catch (const UnboundedError &) {
        return image_quotient(delta);
    }
}

ConcreteFunctor catlift::grothendieck_concrete(const Instance &delta, std::size_t bound)
{
    const Schema &S = delta.schema();
    ConcreteRef B = grothendieck_base(delta, bound);

    std::vector<std::uint32_t> pos(B->morphism_count());
    for (ObjectId s = 0; s != B->object_count(); ++s) {
        auto out = B->out(s);
        for (std::uint32_t k = 0; k != out.size(); ++k)
            pos[out[k]] = k;
    }

    std::vector<std::string> objects;
    std::vector<Row> rows;
    std::vector<std::size_t> row_offset;
    for (ObjectId s = 0; s != S.object_count(); ++s) {
        row_offset.push_back(rows.size());
        for (RowIndex x = 0; x != delta.row_count(s); ++x) {
            objects.push_back(delta.row_id({s, x}));
            rows.push_back({s, x});
        }
    }
    auto object_of = [&](Row r) { return static_cast<ObjectId>(row_offset[r.object] + r.index); };

    std::vector<Morphism> morphisms;
    std::vector<std::size_t> first_morphism;
    std::vector<MorphId> identities;
    ConcreteFunctor pi;
    for (ObjectId x = 0; x != rows.size(); ++x) {
        const Row r = rows[x];
        first_morphism.push_back(morphisms.size());
        identities.push_back(static_cast<MorphId>(morphisms.size() + pos[B->identity(r.object)]));
        for (MorphId f : B->out(r.object)) {
            const Row t = transport(delta, r, B->representative(f));
            morphisms.push_back({x, object_of(t), delta.row_id(r) + " " + B->morphism(f).name});
            pi.morphism_map.push_back(f);
        }
        pi.object_map.push_back(r.object);
    }
    auto compose = [&](MorphId a, MorphId b) -> MorphId {
        const ObjectId x = morphisms[a].dom;
        const MorphId h = B->compose(pi.morphism_map[a], pi.morphism_map[b]);
        return static_cast<MorphId>(first_morphism[x] + pos[h]);
    };
    pi.domain = std::make_shared<ConcreteCategory>("∫" + S.name(), std::move(objects), morphisms, identities, compose);
    pi.codomain = B;
    return pi;
}

std::string FibrationVerdict::describe(const ConcreteFunctor &F) const
{
    if (not witness)
        return "relational fibration";
    return std::string(witness->rule == 1 ? "rho1" : "rho2") + " fails at " +
           F.domain->object_name(witness->x) + " over " + F.codomain->morphism(witness->f).name +
           (witness->rule == 1 ? ": no lift" : ": several lifts");
}

FibrationVerdict catlift::is_relational_fibration(const ConcreteFunctor &F)
{
    const auto &I = *F.domain;
    const auto &B = *F.codomain;
    for (ObjectId x = 0; x != I.object_count(); ++x) {
        for (MorphId f : B.out(F.object_map[x])) {
            std::size_t lifts = 0;
            for (MorphId h : I.out(x))
                if (F.morphism_map[h] == f)
                    ++lifts;
            if (lifts == 0)
                return {FibrationWitness{1, x, f}};
            if (lifts > 1)
                return {FibrationWitness{2, x, f}};
        }
    }
    return {};
}

ValidationReport catlift::check_discrete_fibers(const ConcreteFunctor &F)
{
    ValidationReport report;
    const auto &I = *F.domain;
    for (MorphId h = 0; h != I.morphism_count(); ++h)
        if (F.codomain->is_identity(F.morphism_map[h]) and not I.is_identity(h))
            report.add("non-identity " + I.morphism(h).name + " lies over an identity");
    return report;
}

ValidationReport catlift::check_faithful(const ConcreteFunctor &F)
{
    ValidationReport report;
    const auto &I = *F.domain;
    for (ObjectId x = 0; x != I.object_count(); ++x) {
        std::map<std::pair<ObjectId, MorphId>, MorphId> seen;
        for (MorphId h : I.out(x)) {
            auto [it, fresh] = seen.emplace(std::pair{I.morphism(h).cod, F.morphism_map[h]}, h);
            if (not fresh)
                report.add(I.morphism(it->second).name + " and " + I.morphism(h).name + " have the same image");
        }
    }
    return report;
}

ValidationReport catlift::check_triangle_filler(const ConcreteFunctor &F)
{
    ValidationReport report;
    const auto &I = *F.domain;
    const auto &B = *F.codomain;
    for (ObjectId i = 0; i != I.object_count(); ++i) {
        for (MorphId a : I.out(i)) {
            for (MorphId b : I.out(i)) {
                const ObjectId j = I.morphism(a).cod, k = I.morphism(b).cod;
                for (MorphId h : B.hom(F.object_map[j], F.object_map[k])) {
                    if (B.compose(F.morphism_map[a], h) != F.morphism_map[b])
                        continue;
                    bool filled = false;
                    for (MorphId c : I.hom(j, k))
                        if (F.morphism_map[c] == h and I.compose(a, c) == b)
                            filled = true;
                    if (not filled)
                        report.add("no filler for " + I.morphism(a).name + ", " + I.morphism(b).name + " over " +
                                   B.morphism(h).name);
                }
            }
        }
    }
    return report;
}

Instance catlift::fibers_to_instance(const ConcreteFunctor &F)
{
    auto verdict = is_relational_fibration(F);
    if (not verdict.yes())
        throw NotAFibration(verdict.describe(F));
    const auto &I = *F.domain;
    const auto &B = *F.codomain;

    SchemaRef P = B.presentation();
    std::vector<MorphId> gen_morphism;
    if (P) {
        for (GenId g = 0; g != P->generator_count(); ++g)
            gen_morphism.push_back(B.generator_morphism(g));
    } else {
        auto pres = present(B);
        P = pres.schema;
        gen_morphism = pres.generator_morphisms;
    }

    std::vector<std::vector<ObjectId>> fiber(B.object_count());
    std::vector<RowIndex> position(I.object_count());
    for (ObjectId x = 0; x != I.object_count(); ++x) {
        position[x] = fiber[F.object_map[x]].size();
        fiber[F.object_map[x]].push_back(x);
    }
    std::vector<std::vector<std::string>> rows(B.object_count());
    for (ObjectId s = 0; s != B.object_count(); ++s) {
        std::map<std::string, int> count;
        for (ObjectId x : fiber[s])
            ++count[I.object_name(x)];
        for (ObjectId x : fiber[s])
            rows[s].push_back(count[I.object_name(x)] > 1 ? I.object_name(x) + "@" + std::to_string(x)
                                                           : I.object_name(x));
    }
    std::vector<std::vector<RowIndex>> columns(P->generator_count());
    for (GenId g = 0; g != P->generator_count(); ++g) {
        for (ObjectId x : fiber[P->generator(g).source]) {
            for (MorphId h : I.out(x))
                if (F.morphism_map[h] == gen_morphism[g]) {
                    columns[g].push_back(position[I.morphism(h).cod]);
                    break;
                }
        }
    }
    return Instance(P, std::move(rows), std::move(columns));
}

std::vector<PresentedFunctor> catlift::concrete_lifts(const ConcreteLiftProblem &problem, std::size_t limit)
{
    const Schema &P = *problem.P;
    const auto &F = *problem.F;
    const auto &I = *F.domain;

    std::vector<std::vector<ObjectId>> fiber(F.codomain->object_count());
    for (ObjectId x = 0; x != I.object_count(); ++x)
        fiber[F.object_map[x]].push_back(x);

    std::vector<PresentedFunctor> out;
    PresentedFunctor current;
    current.objects.assign(P.object_count(), 0);
    current.generators.assign(P.generator_count(), 0);
    bool done = false;

    std::function<void(GenId)> assign_generators = [&](GenId g) {
        if (done)
            return;
        if (g == P.generator_count()) {
            if (is_functor(P, I, current) and (not problem.accept or problem.accept(current))) {
                out.push_back(current);
                done = limit != 0 and out.size() >= limit;
            }
            return;
        }
        const auto &gen = P.generator(g);
        for (MorphId h : I.hom(current.objects[gen.source], current.objects[gen.target])) {
            if (F.morphism_map[h] != problem.base.generators[g])
                continue;
            if (g < problem.fixed_generators.size() and problem.fixed_generators[g] and
                *problem.fixed_generators[g] != h)
                continue;
            current.generators[g] = h;
            assign_generators(g + 1);
        }
    };
    std::function<void(ObjectId)> assign_objects = [&](ObjectId o) {
        if (done)
            return;
        if (o == P.object_count()) {
            assign_generators(0);
            return;
        }
        for (ObjectId x : fiber[problem.base.objects[o]]) {
            if (o < problem.fixed_objects.size() and problem.fixed_objects[o] and *problem.fixed_objects[o] != x)
                continue;
            current.objects[o] = x;
            assign_objects(o + 1);
        }
    };
    assign_objects(0);
    return out;
}

std::optional<ConcreteSquare> catlift::check_concrete_constraint(const ConcreteFunctor &F, const SchemaMorphism &m)
{
    const Schema &W = *m.domain;
    const Schema &R = *m.codomain;
    const auto &B = *F.codomain;
    const auto &I = *F.domain;
    for (const auto &n : enumerate_functors(R, B)) {
        PresentedFunctor base_w;
        for (ObjectId w = 0; w != W.object_count(); ++w)
            base_w.objects.push_back(n.objects[m(w)]);
        for (GenId g = 0; g != W.generator_count(); ++g)
            base_w.generators.push_back(n.evaluate(R, B, m.apply_generator(g)));
        for (const auto &p : concrete_lifts({&W, &F, base_w, {}, {}, {}})) {
            ConcreteLiftProblem lift{&R, &F, n, {}, {}, {}};
            lift.fixed_objects.assign(R.object_count(), std::nullopt);
            for (ObjectId w = 0; w != W.object_count(); ++w)
                lift.fixed_objects[m(w)] = p.objects[w];
            lift.accept = [&](const PresentedFunctor &l) {
                for (GenId g = 0; g != W.generator_count(); ++g)
                    if (l.evaluate(R, I, m.apply_generator(g)) != p.generators[g])
                        return false;
                return true;
            };
            if (concrete_lifts(lift, 1).empty())
                return ConcreteSquare{n, p};
        }
    }
    return std::nullopt;
}

SchemaMorphism catlift::rho1()
{
    auto W = SchemaBuilder("W1").object("a").build();
    auto R = SchemaBuilder("R1").objects({"a", "b"}).arrow("f", "a", "b").build();
    return make_morphism(W, R, {{"a", "a"}}, {});
}

SchemaMorphism catlift::rho2()
{
    auto W = SchemaBuilder("W2").objects({"a", "b1", "b2"}).arrow("f1", "a", "b1").arrow("f2", "a", "b2").build();
    auto R = SchemaBuilder("R2").objects({"a", "b"}).arrow("f", "a", "b").build();
    return make_morphism(W, R, {{"a", "a"}, {"b1", "b"}, {"b2", "b"}}, {{"f1", {"f"}}, {"f2", {"f"}}});
}
