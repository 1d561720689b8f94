#include <catlift/pattern.hpp>

#include <catlift/path_equivalence.hpp>

#include <algorithm>
#include <optional>


using namespace catlift;


namespace {

using Kind = ReferentError::Kind;

/// Shortest paths `from -> to` (all of minimal length), breadth first.
std::vector<Path> shortest_paths(const Schema &S, ObjectId from, ObjectId to, std::size_t bound)
{
    std::vector<Path> layer{Path::identity(from)};
    for (std::size_t len = 0; len <= bound and not layer.empty(); ++len) {
        std::vector<Path> hits;
        for (const auto &p : layer)
            if (S.target(p) == to)
                hits.push_back(p);
        if (not hits.empty())
            return hits;
        std::vector<Path> next;
        for (const auto &p : layer)
            for (GenId g : S.outgoing(S.target(p))) {
                Path q = p;
                q.steps.push_back(g);
                next.push_back(std::move(q));
            }
        layer = std::move(next);
    }
    return {};
}

Path resolve_predicate(const Schema &S, ObjectId subject, const std::string &pred, std::optional<ObjectId> object)
{
    auto g = S.find_generator(subject, pred);
    if (not g)
        throw ReferentError(Kind::UnknownPredicate, "no arrow " + pred + " out of " + S.object_name(subject));
    Path p = S.single(*g);
    const ObjectId t = S.generator(*g).target;
    if (not object or *object == t)
        return p;
    auto tails = shortest_paths(S, t, *object, DEFAULT_BOUND);
    if (tails.empty())
        throw TypingError("predicate " + pred + " does not reach " + S.object_name(*object) + " from " +
                          S.object_name(subject));
    for (std::size_t i = 1; i != tails.size(); ++i)
        if (paths_equal(S, tails[0], tails[i]) != PathVerdict::Equal)
            throw TypingError("predicate " + pred + " reaches " + S.object_name(*object) + " from " +
                              S.object_name(subject) + " along several paths");
    return compose_paths(S, p, tails[0]);
}

std::vector<PatternTriple> expand_predicate_variables(const GraphPattern &gp)
{
    std::vector<PatternTriple> out;
    for (const auto &t : gp.triples) {
        if (not t.predicate.variable()) {
            out.push_back(t);
            continue;
        }
        if (not gp.types.count(t.predicate.name))
            throw ReferentError(Kind::UntypedTerm, "predicate variable " + t.predicate.name + " has no edge type");
        out.push_back({t.predicate, {"subject"}, t.subject});
        out.push_back({t.predicate, {"object"}, t.object});
    }
    return out;
}

std::vector<RowIndex> referents(const GraphPattern &gp, const Instance &delta, ObjectId o, const std::string &c)
{
    const Schema &S = delta.schema();
    std::vector<RowIndex> out;
    auto label = gp.labels.find(S.object_name(o));
    std::optional<GenId> column;
    if (label != gp.labels.end()) {
        column = S.find_generator(o, label->second);
        if (not column)
            throw TypingError("label column " + label->second + " is not an arrow out of " + S.object_name(o));
    }
    for (RowIndex x = 0; x != delta.row_count(o); ++x) {
        Row r{o, x};
        if (column)
            r = delta.apply(*column, r);
        if (delta.row_id(r) == c)
            out.push_back(x);
    }
    return out;
}

}

CompiledPattern catlift::compile_pattern(const GraphPattern &gp, const SchemaRef &Sref, const Instance &delta)
{
    const Schema &S = *Sref;
    const auto triples = expand_predicate_variables(gp);

    struct Node
    {
        Term term;
        std::string name;
        std::optional<ObjectId> type;
    };
    std::vector<Node> nodes;
    std::map<std::string, std::size_t> variable_node;
    std::map<std::string, std::size_t> occurrences;

    auto declared_type = [&](const Term &t) -> std::optional<ObjectId> {
        auto it = gp.types.find(t.name);
        if (it == gp.types.end())
            return std::nullopt;
        auto o = S.find_object(it->second);
        if (not o)
            throw TypingError("term " + t.name + " is typed with unknown object " + it->second);
        return o;
    };
    auto node_of = [&](const Term &t) {
        if (t.variable()) {
            if (auto it = variable_node.find(t.name); it != variable_node.end())
                return it->second;
            auto type = declared_type(t);
            if (not type)
                throw ReferentError(Kind::UntypedTerm, "variable " + t.name + " has no type");
            variable_node.emplace(t.name, nodes.size());
            nodes.push_back({t, t.name, type});
            return nodes.size() - 1;
        }
        const std::size_t k = ++occurrences[t.name];
        nodes.push_back({t, k == 1 ? t.name : t.name + "~" + std::to_string(k), declared_type(t)});
        return nodes.size() - 1;
    };

    struct Edge
    {
        std::size_t source;
        std::size_t target;
        std::string name;
        Path path;
    };
    std::vector<Edge> edges;
    for (const auto &t : triples) {
        const std::size_t s = node_of(t.subject);
        const std::size_t o = node_of(t.object);
        if (not nodes[s].type) {
            GenId g;
            try {
                g = S.generator(t.predicate.name);
            } catch (const TypingError &) {
                throw ReferentError(Kind::UnknownPredicate, "cannot type " + t.subject.name + " from predicate " +
                                                                t.predicate.name);
            }
            nodes[s].type = S.generator(g).source;
        }
        Path p = resolve_predicate(S, *nodes[s].type, t.predicate.name, nodes[o].type);
        if (not nodes[o].type)
            nodes[o].type = S.target(p);
        edges.push_back({s, o, t.predicate.name, std::move(p)});
    }

    std::vector<std::string> r_objects;
    std::vector<std::string> w_objects;
    std::vector<ObjectId> m_objects;
    std::vector<ObjectId> n_objects;
    std::vector<Row> binding;
    CompiledPattern out;
    for (std::size_t i = 0; i != nodes.size(); ++i) {
        const Node &nd = nodes[i];
        r_objects.push_back(nd.name);
        n_objects.push_back(*nd.type);
        out.terms.push_back(nd.term);
        if (nd.term.variable())
            continue;
        auto rows = referents(gp, delta, *nd.type, nd.term.name);
        if (rows.empty())
            throw ReferentError(Kind::NoReferent, "constant " + nd.term.name + " has no referent in " +
                                                      S.object_name(*nd.type));
        if (rows.size() > 1)
            throw ReferentError(Kind::AmbiguousReferent, "constant " + nd.term.name + " has " +
                                                             std::to_string(rows.size()) + " referents in " +
                                                             S.object_name(*nd.type));
        w_objects.push_back(nd.name);
        m_objects.push_back(static_cast<ObjectId>(i));
        binding.push_back({*nd.type, rows.front()});
    }

    std::vector<Generator> r_generators;
    std::vector<Path> n_generators;
    std::map<std::pair<std::size_t, std::string>, std::size_t> used;
    for (const auto &e : edges) {
        const std::size_t k = ++used[{e.source, e.name}];
        r_generators.push_back({k == 1 ? e.name : e.name + "~" + std::to_string(k), static_cast<ObjectId>(e.source),
                                static_cast<ObjectId>(e.target)});
        n_generators.push_back(e.path);
    }

    auto R = std::make_shared<const Schema>("pattern", std::move(r_objects), std::move(r_generators),
                                            std::vector<Equation>{});
    auto W = discrete_schema("known", w_objects);
    out.query.name = "pattern";
    out.query.square.constraint = {SchemaMorphism{W, R, std::move(m_objects), {}},
                                   SchemaMorphism{R, Sref, std::move(n_objects), std::move(n_generators)},
                                   "pattern"};
    out.query.square.binding = std::move(binding);
    check_square(out.query.square, delta);
    return out;
}

Reified catlift::reify_edges(const Instance &delta)
{
    const Schema &S = delta.schema();
    if (not S.equations().empty())
        throw TypingError("edge reification needs a schema without equations, " + S.name() + " has " +
                          std::to_string(S.equations().size()));
    std::vector<std::string> objects(S.objects().begin(), S.objects().end());
    std::vector<Generator> generators(S.generators().begin(), S.generators().end());
    std::vector<Equation> equations;
    std::vector<ObjectId> edge_object;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<RowIndex>> columns;
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        auto ids = delta.row_ids(o);
        rows.emplace_back(ids.begin(), ids.end());
    }
    for (GenId g = 0; g != S.generator_count(); ++g) {
        auto col = delta.column(g);
        columns.emplace_back(col.begin(), col.end());
    }
    std::vector<std::vector<RowIndex>> edge_columns;
    for (GenId g = 0; g != S.generator_count(); ++g) {
        const auto &gen = S.generator(g);
        const auto e = static_cast<ObjectId>(objects.size());
        objects.push_back(S.generator_label(g));
        edge_object.push_back(e);
        const auto subject = static_cast<GenId>(generators.size());
        generators.push_back({"subject", e, gen.source});
        generators.push_back({"object", e, gen.target});
        equations.push_back({Path{e, {subject, g}}, Path{e, {subject + 1}}});
        auto ids = delta.row_ids(gen.source);
        rows.emplace_back(ids.begin(), ids.end());
        std::vector<RowIndex> identity(ids.size());
        for (RowIndex x = 0; x != identity.size(); ++x)
            identity[x] = x;
        columns.push_back(std::move(identity));
        auto col = delta.column(g);
        columns.emplace_back(col.begin(), col.end());
    }
    auto R = std::make_shared<const Schema>(S.name() + "^edges", std::move(objects), std::move(generators),
                                            std::move(equations));
    return {R, Instance(R, std::move(rows), std::move(columns)), std::move(edge_object)};
}

PatternAnswers catlift::match_pattern(const GraphPattern &gp, const SchemaRef &S, const Instance &delta,
                                      unsigned workers)
{
    PatternAnswers out;
    std::vector<std::string> open;
    auto note_variable = [&](const Term &t) {
        if (t.variable() and std::find(out.variables.begin(), out.variables.end(), t.name) == out.variables.end())
            out.variables.push_back(t.name);
    };
    for (const auto &t : gp.triples) {
        note_variable(t.subject);
        note_variable(t.predicate);
        note_variable(t.object);
        if (t.predicate.variable() and not gp.types.count(t.predicate.name) and
            std::find(open.begin(), open.end(), t.predicate.name) == open.end())
            open.push_back(t.predicate.name);
    }

    auto collect = [&](const GraphPattern &p, const SchemaRef &schema, const Instance &inst) {
        auto compiled = compile_pattern(p, schema, inst);
        auto result = run_query(compiled.query, inst, workers);
        for (const auto &l : result.lifts) {
            std::vector<std::string> row;
            for (const auto &v : out.variables)
                for (std::size_t r = 0; r != compiled.terms.size(); ++r)
                    if (compiled.terms[r].name == v) {
                        row.push_back(inst.format(l.assignment[r]));
                        break;
                    }
            out.rows.push_back(std::move(row));
        }
    };

    bool reify = open.size() or std::any_of(gp.triples.begin(), gp.triples.end(),
                                            [](const PatternTriple &t) { return t.predicate.variable(); });
    if (not reify) {
        collect(gp, S, delta);
        return out;
    }

    Reified re = reify_edges(delta);
    const Schema &RS = *re.schema;
    // Candidate edge objects per open predicate variable.
    std::vector<std::vector<GenId>> candidates;
    for (const auto &v : open) {
        std::vector<GenId> fits;
        for (GenId g = 0; g != S->generator_count(); ++g) {
            const auto &gen = S->generator(g);
            bool ok = true;
            for (const auto &t : gp.triples) {
                if (t.predicate.name != v)
                    continue;
                auto fits_end = [&](const Term &term, ObjectId o) {
                    auto it = gp.types.find(term.name);
                    if (it != gp.types.end())
                        return it->second == S->object_name(o);
                    if (term.variable())
                        throw ReferentError(Kind::UntypedTerm, "variable " + term.name + " has no type");
                    return referents(gp, delta, o, term.name).size() == 1;
                };
                ok = ok and fits_end(t.subject, gen.source) and fits_end(t.object, gen.target);
            }
            if (ok)
                fits.push_back(g);
        }
        candidates.push_back(std::move(fits));
    }

    std::vector<std::size_t> choice(open.size(), 0);
    for (const auto &c : candidates)
        if (c.empty())
            return out;
    while (true) {
        GraphPattern p = gp;
        for (std::size_t i = 0; i != open.size(); ++i) {
            const GenId g = candidates[i][choice[i]];
            p.types[open[i]] = RS.object_name(re.edge_object[g]);
            for (const auto &t : gp.triples)
                if (t.predicate.name == open[i]) {
                    if (not t.subject.variable() and not p.types.count(t.subject.name))
                        p.types[t.subject.name] = S->object_name(S->generator(g).source);
                    if (not t.object.variable() and not p.types.count(t.object.name))
                        p.types[t.object.name] = S->object_name(S->generator(g).target);
                }
        }
        collect(p, re.schema, re.instance);
        std::size_t i = open.size();
        while (i > 0 and ++choice[i - 1] == candidates[i - 1].size())
            choice[--i] = 0;
        if (i == 0)
            break;
    }
    return out;
}
