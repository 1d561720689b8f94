#include <catlift/schema_morphism.hpp>


using namespace catlift;


Path SchemaMorphism::apply(const Path &p) const
{
    Path out{object_map.at(p.source), {}};
    for (GenId g : p.steps) {
        const auto &img = generator_map.at(g);
        out.steps.insert(out.steps.end(), img.steps.begin(), img.steps.end());
    }
    return out;
}

SchemaMorphism SchemaMorphism::identity(SchemaRef S)
{
    SchemaMorphism F{S, S, {}, {}};
    for (ObjectId o = 0; o != S->object_count(); ++o)
        F.object_map.push_back(o);
    for (GenId g = 0; g != S->generator_count(); ++g)
        F.generator_map.push_back(S->single(g));
    return F;
}

SchemaMorphism SchemaMorphism::from_empty(SchemaRef empty, SchemaRef codomain)
{
    if (empty->object_count() != 0)
        throw TypingError("from_empty: domain " + empty->name() + " is not empty");
    return SchemaMorphism{std::move(empty), std::move(codomain), {}, {}};
}

SchemaMorphism catlift::make_morphism(SchemaRef domain, SchemaRef codomain,
                                      const std::vector<std::pair<std::string, std::string>> &objects,
                                      const std::vector<std::pair<std::string, std::vector<std::string>>> &arrows)
{
    SchemaMorphism F{domain, codomain, {}, {}};
    std::vector<bool> seen_obj(domain->object_count(), false);
    F.object_map.assign(domain->object_count(), 0);
    for (const auto &[from, to] : objects) {
        ObjectId o = domain->object(from);
        F.object_map[o] = codomain->object(to);
        seen_obj[o] = true;
    }
    for (ObjectId o = 0; o != domain->object_count(); ++o)
        if (not seen_obj[o])
            throw TypingError("morphism " + domain->name() + " -> " + codomain->name() + " leaves object " +
                              domain->object_name(o) + " unmapped");

    std::vector<bool> seen_gen(domain->generator_count(), false);
    F.generator_map.assign(domain->generator_count(), Path{});
    for (const auto &[ref, steps] : arrows) {
        GenId g = domain->generator(ref);
        ObjectId src = F.object_map[domain->generator(g).source];
        F.generator_map[g] = codomain->path(codomain->object_name(src), steps);
        seen_gen[g] = true;
    }
    for (GenId g = 0; g != domain->generator_count(); ++g)
        if (not seen_gen[g])
            throw TypingError("morphism " + domain->name() + " -> " + codomain->name() + " leaves generator " +
                              domain->generator_label(g) + " unmapped");
    return F;
}

ValidationReport catlift::check_functor(const SchemaMorphism &F, std::size_t bound)
{
    ValidationReport report;
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;

    if (F.object_map.size() != S.object_count())
        report.add("object map has " + std::to_string(F.object_map.size()) + " entries, expected " +
                   std::to_string(S.object_count()));
    if (F.generator_map.size() != S.generator_count())
        report.add("generator map has " + std::to_string(F.generator_map.size()) + " entries, expected " +
                   std::to_string(S.generator_count()));
    if (not report.ok())
        return report;
    for (ObjectId o = 0; o != S.object_count(); ++o)
        if (F.object_map[o] >= T.object_count())
            report.add("object " + S.object_name(o) + " maps outside " + T.name());
    if (not report.ok())
        return report;

    bool typed = true;
    for (GenId g = 0; g != S.generator_count(); ++g) {
        const auto &gen = S.generator(g);
        const Path &img = F.generator_map[g];
        if (not T.well_typed(img)) {
            report.add("generator " + S.generator_label(g) + " maps to an ill-typed path");
            typed = false;
            continue;
        }
        if (img.source != F.object_map[gen.source] or T.target(img) != F.object_map[gen.target]) {
            report.add("generator " + S.generator_label(g) + " : " + S.object_name(gen.source) + " -> " +
                       S.object_name(gen.target) + " maps to " + T.format(img) + " ending at " +
                       T.object_name(T.target(img)) + ", expected " + T.object_name(F.object_map[gen.source]) +
                       " -> " + T.object_name(F.object_map[gen.target]));
            typed = false;
        }
    }
    if (not typed)
        return report;

    for (const auto &eq : S.equations()) {
        auto verdict = paths_equal(T, F.apply(eq.lhs), F.apply(eq.rhs), bound);
        if (verdict != PathVerdict::Equal)
            report.add("equation " + S.format(eq.lhs) + " = " + S.format(eq.rhs) + " is not preserved (" +
                       to_string(verdict) + ")");
    }
    return report;
}

const SchemaMorphism & catlift::validated(const SchemaMorphism &F, std::size_t bound)
{
    auto report = check_functor(F, bound);
    if (not report.ok())
        throw TypingError("invalid morphism " + F.domain->name() + " -> " + F.codomain->name() + ": " +
                          report.problems.front());
    return F;
}

SchemaMorphism catlift::compose(const SchemaMorphism &F, const SchemaMorphism &G)
{
    if (F.codomain.get() != G.domain.get() and F.codomain->name() != G.domain->name())
        throw TypingError("cannot compose " + F.domain->name() + " -> " + F.codomain->name() + " with " +
                          G.domain->name() + " -> " + G.codomain->name());
    SchemaMorphism H{F.domain, G.codomain, {}, {}};
    for (ObjectId o : F.object_map)
        H.object_map.push_back(G.object_map.at(o));
    for (const auto &p : F.generator_map)
        H.generator_map.push_back(G.apply(p));
    return H;
}

bool catlift::morphisms_equal(const SchemaMorphism &F, const SchemaMorphism &G, std::size_t bound)
{
    if (F.object_map != G.object_map or F.generator_map.size() != G.generator_map.size())
        return false;
    for (std::size_t g = 0; g != F.generator_map.size(); ++g)
        if (paths_equal(*F.codomain, F.generator_map[g], G.generator_map[g], bound) != PathVerdict::Equal)
            return false;
    return true;
}
