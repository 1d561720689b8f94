#include <catlift/concrete.hpp>

#include <unordered_map>


using namespace catlift;


ConcreteCategory::ConcreteCategory(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                   std::vector<MorphId> identities,
                                   const std::function<MorphId(MorphId, MorphId)> &compose)
    : name_(std::move(name))
    , objects_(std::move(objects))
    , morphisms_(std::move(morphisms))
    , identity_(std::move(identities))
{
    if (identity_.size() != objects_.size())
        throw TypingError("category " + name_ + ": one identity per object required");
    out_.resize(objects_.size());
    out_pos_.resize(morphisms_.size());
    for (MorphId f = 0; f != morphisms_.size(); ++f) {
        const auto &m = morphisms_[f];
        if (m.dom >= objects_.size() or m.cod >= objects_.size())
            throw TypingError("category " + name_ + ": morphism " + m.name + " has an undeclared endpoint");
        out_pos_[f] = out_[m.dom].size();
        out_[m.dom].push_back(f);
    }
    for (ObjectId o = 0; o != objects_.size(); ++o) {
        MorphId id = identity_[o];
        if (id >= morphisms_.size() or morphisms_[id].dom != o or morphisms_[id].cod != o)
            throw TypingError("category " + name_ + ": bad identity for " + objects_[o]);
    }
    table_.resize(morphisms_.size());
    for (MorphId f = 0; f != morphisms_.size(); ++f) {
        for (MorphId g : out_[morphisms_[f].cod]) {
            MorphId h = compose(f, g);
            if (h >= morphisms_.size() or morphisms_[h].dom != morphisms_[f].dom or
                morphisms_[h].cod != morphisms_[g].cod)
                throw TypingError("category " + name_ + ": composite of " + morphisms_[f].name + " and " +
                                  morphisms_[g].name + " is ill-typed");
            table_[f].push_back(h);
        }
    }
}

std::optional<ObjectId> ConcreteCategory::find_object(std::string_view name) const
{
    for (ObjectId o = 0; o != objects_.size(); ++o)
        if (objects_[o] == name)
            return o;
    return std::nullopt;
}

std::vector<MorphId> ConcreteCategory::hom(ObjectId a, ObjectId b) const
{
    std::vector<MorphId> out;
    for (MorphId f : out_.at(a))
        if (morphisms_[f].cod == b)
            out.push_back(f);
    return out;
}

MorphId ConcreteCategory::compose(MorphId f, MorphId g) const
{
    if (morphisms_.at(f).cod != morphisms_.at(g).dom)
        throw TypingError("category " + name_ + ": " + morphisms_[f].name + " and " + morphisms_[g].name +
                          " are not composable");
    return table_[f][out_pos_[g]];
}

ValidationReport ConcreteCategory::check_axioms() const
{
    ValidationReport report;
    for (MorphId f = 0; f != morphisms_.size(); ++f) {
        const auto &m = morphisms_[f];
        if (compose(identity_[m.dom], f) != f or compose(f, identity_[m.cod]) != f)
            report.add("identity law fails at " + m.name);
        for (MorphId g : out_[m.cod])
            for (MorphId h : out_[morphisms_[g].cod])
                if (compose(compose(f, g), h) != compose(f, compose(g, h)))
                    report.add("associativity fails at (" + m.name + ", " + morphisms_[g].name + ", " +
                               morphisms_[h].name + ")");
    }
    return report;
}

void ConcreteCategory::attach_presentation(SchemaRef S, std::vector<Path> representatives,
                                           std::vector<MorphId> generators)
{
    if (representatives.size() != morphisms_.size() or generators.size() != S->generator_count())
        throw TypingError("attach_presentation: size mismatch");
    presentation_ = std::move(S);
    representatives_ = std::move(representatives);
    generator_morphisms_ = std::move(generators);
}


ValidationReport catlift::check_concrete_functor(const ConcreteFunctor &F)
{
    ValidationReport report;
    const auto &A = *F.domain;
    const auto &B = *F.codomain;
    if (F.object_map.size() != A.object_count() or F.morphism_map.size() != A.morphism_count()) {
        report.add("functor maps have the wrong size");
        return report;
    }
    for (MorphId f = 0; f != A.morphism_count(); ++f) {
        const auto &m = A.morphism(f);
        MorphId img = F.morphism_map[f];
        if (img >= B.morphism_count() or B.morphism(img).dom != F.object_map[m.dom] or
            B.morphism(img).cod != F.object_map[m.cod]) {
            report.add("morphism " + m.name + " is sent to a morphism with the wrong endpoints");
        }
    }
    if (not report.ok())
        return report;
    for (ObjectId o = 0; o != A.object_count(); ++o)
        if (F.morphism_map[A.identity(o)] != B.identity(F.object_map[o]))
            report.add("identity of " + A.object_name(o) + " is not preserved");
    for (MorphId f = 0; f != A.morphism_count(); ++f)
        for (MorphId g : A.out(A.morphism(f).cod))
            if (F.morphism_map[A.compose(f, g)] != B.compose(F.morphism_map[f], F.morphism_map[g]))
                report.add("composite of " + A.morphism(f).name + " and " + A.morphism(g).name +
                           " is not preserved");
    return report;
}

ConcreteRef catlift::materialize(const SchemaRef &S, std::size_t bound)
{
    std::vector<HomClasses> homs;
    homs.reserve(S->object_count());
    for (ObjectId o = 0; o != S->object_count(); ++o)
        homs.emplace_back(*S, o, bound);

    // Morphism ids: object by object, classes in discovery order, so the identity of each object comes first.
    std::vector<std::size_t> offset;
    std::vector<Morphism> morphisms;
    std::vector<Path> reps;
    std::vector<MorphId> identities;
    for (ObjectId o = 0; o != S->object_count(); ++o) {
        offset.push_back(morphisms.size());
        identities.push_back(morphisms.size());
        const auto r = homs[o].representatives();
        for (std::size_t c = 0; c != r.size(); ++c) {
            std::string name = c == 0 ? "id_" + S->object_name(o) : S->format(r[c]);
            morphisms.push_back({o, homs[o].target(c), std::move(name)});
            reps.push_back(r[c]);
        }
    }

    auto compose = [&](MorphId f, MorphId g) -> MorphId {
        Path p = compose_paths(*S, reps[f], reps[g]);
        return offset[p.source] + homs[p.source].classify(p);
    };
    auto C = std::make_shared<ConcreteCategory>(S->name(), std::vector<std::string>(S->objects().begin(),
                                                S->objects().end()), morphisms, identities, compose);

    std::vector<MorphId> gens;
    for (GenId g = 0; g != S->generator_count(); ++g) {
        Path p = S->single(g);
        gens.push_back(offset[p.source] + homs[p.source].classify(p));
    }
    C->attach_presentation(S, std::move(reps), std::move(gens));
    return C;
}

CategoryPresentation catlift::present(const ConcreteCategory &C)
{
    std::vector<std::string> objects;
    for (ObjectId o = 0; o != C.object_count(); ++o)
        objects.push_back(C.object_name(o));

    CategoryPresentation out;
    out.morphism_generators.assign(C.morphism_count(), std::nullopt);
    std::vector<Generator> gens;
    for (MorphId f = 0; f != C.morphism_count(); ++f) {
        if (C.is_identity(f))
            continue;
        const auto &m = C.morphism(f);
        out.morphism_generators[f] = gens.size();
        out.generator_morphisms.push_back(f);
        gens.push_back({"m" + std::to_string(f), m.dom, m.cod});
    }

    auto as_path = [&](MorphId f) {
        Path p{C.morphism(f).dom, {}};
        if (out.morphism_generators[f])
            p.steps.push_back(*out.morphism_generators[f]);
        return p;
    };
    std::vector<Equation> eqs;
    for (MorphId f = 0; f != C.morphism_count(); ++f) {
        if (C.is_identity(f))
            continue;
        for (MorphId g : C.out(C.morphism(f).cod)) {
            if (C.is_identity(g))
                continue;
            Path lhs = as_path(f);
            lhs.steps.push_back(*out.morphism_generators[g]);
            eqs.push_back({std::move(lhs), as_path(C.compose(f, g))});
        }
    }
    out.schema = std::make_shared<const Schema>(C.name(), std::move(objects), std::move(gens), std::move(eqs));
    return out;
}

MorphId PresentedFunctor::evaluate(const Schema &, const ConcreteCategory &C, const Path &p) const
{
    MorphId acc = C.identity(objects.at(p.source));
    for (GenId g : p.steps)
        acc = C.compose(acc, generators.at(g));
    return acc;
}

bool catlift::is_functor(const Schema &P, const ConcreteCategory &C, const PresentedFunctor &F)
{
    if (F.objects.size() != P.object_count() or F.generators.size() != P.generator_count())
        return false;
    for (GenId g = 0; g != P.generator_count(); ++g) {
        const auto &gen = P.generator(g);
        const auto &m = C.morphism(F.generators[g]);
        if (m.dom != F.objects[gen.source] or m.cod != F.objects[gen.target])
            return false;
    }
    for (const auto &eq : P.equations())
        if (F.evaluate(P, C, eq.lhs) != F.evaluate(P, C, eq.rhs))
            return false;
    return true;
}

std::vector<PresentedFunctor> catlift::enumerate_functors(const Schema &P, const ConcreteCategory &C)
{
    std::vector<PresentedFunctor> out;
    PresentedFunctor current;
    current.objects.assign(P.object_count(), 0);
    current.generators.assign(P.generator_count(), 0);

    std::function<void(GenId)> assign_generators = [&](GenId g) {
        if (g == P.generator_count()) {
            if (is_functor(P, C, current))
                out.push_back(current);
            return;
        }
        const auto &gen = P.generator(g);
        for (MorphId f : C.hom(current.objects[gen.source], current.objects[gen.target])) {
            current.generators[g] = f;
            assign_generators(g + 1);
        }
    };
    std::function<void(ObjectId)> assign_objects = [&](ObjectId o) {
        if (o == P.object_count()) {
            assign_generators(0);
            return;
        }
        for (ObjectId c = 0; c != C.object_count(); ++c) {
            current.objects[o] = c;
            assign_objects(o + 1);
        }
    };
    assign_objects(0);
    return out;
}
