#include <catlift/dsl.hpp>

#include "lexer.hpp"

#include <functional>


using namespace catlift;
using catlift::detail::TokenStream;


namespace {

using ObjectPairs = std::vector<std::pair<std::string, std::string>>;
using ArrowPairs = std::vector<std::pair<std::string, std::vector<std::string>>>;

/// A schema given inline, plus the mapping lines attached to it (`embed`, `map`) and `bind` lines.
struct Block
{
    std::vector<std::string> objects;
    struct Arrow { std::string name, source, target; };
    std::vector<Arrow> arrows;
    struct Eq { std::string source; std::vector<std::string> lhs, rhs; };
    std::vector<Eq> equations;
    ObjectPairs object_map;
    ArrowPairs arrow_map;
    struct Bind { std::string w, object, id; std::size_t line; };
    std::vector<Bind> binds;

    SchemaRef build(const std::string &name) const
    {
        SchemaBuilder b(name);
        for (const auto &o : objects)
            b.object(o);
        for (const auto &a : arrows)
            b.arrow(a.name, a.source, a.target);
        for (const auto &e : equations)
            b.equation(e.source, e.lhs, e.rhs);
        return b.build();
    }
};

bool is_block_keyword(const TokenStream &in, std::string_view map_kw)
{
    return in.is_word("objects") or in.is_word("object") or in.is_word("arrow") or in.is_word("eq") or
           in.is_word("bind") or (not map_kw.empty() and in.is_word(map_kw));
}

void parse_mapping_line(TokenStream &in, ObjectPairs &objects, ArrowPairs &arrows)
{
    if (in.is_word("arrow")) {
        in.next();
        std::string f = in.name("arrow name");
        in.expect("->");
        arrows.emplace_back(std::move(f), in.bracket_list());
    } else {
        if (in.is_word("object"))
            in.next();
        std::string a = in.name("object name");
        in.expect("->");
        objects.emplace_back(std::move(a), in.name("object name"));
    }
}

/// Schema statements plus `<map_kw> ...` and, when allowed, `bind w -> (Object, id)`.
Block parse_block(TokenStream &in, std::string_view map_kw, bool allow_bind)
{
    Block b;
    in.expect("{");
    while (not in.accept("}")) {
        if (in.accept(";"))
            continue;
        if (in.is_word("objects") or in.is_word("object")) {
            in.next();
            while (not in.is_symbol(";") and not in.is_symbol("}") and not is_block_keyword(in, map_kw))
                b.objects.push_back(in.name("object name"));
        } else if (in.is_word("arrow")) {
            in.next();
            Block::Arrow a;
            a.name = in.name("arrow name");
            in.expect(":");
            a.source = in.name("source object");
            in.expect("->");
            a.target = in.name("target object");
            b.arrows.push_back(std::move(a));
        } else if (in.is_word("eq")) {
            in.next();
            Block::Eq e;
            e.source = in.name("equation source object");
            e.lhs = in.bracket_list();
            in.expect("=");
            e.rhs = in.bracket_list();
            b.equations.push_back(std::move(e));
        } else if (not map_kw.empty() and in.is_word(map_kw)) {
            in.next();
            parse_mapping_line(in, b.object_map, b.arrow_map);
        } else if (allow_bind and in.is_word("bind")) {
            const std::size_t line = in.line();
            in.next();
            Block::Bind bd;
            bd.w = in.name("object name");
            in.expect("->");
            in.expect("(");
            bd.object = in.name("table name");
            in.expect(",");
            bd.id = in.name("row id");
            in.expect(")");
            bd.line = line;
            b.binds.push_back(std::move(bd));
        } else {
            in.fail("unexpected '" + in.peek().text + "'");
        }
    }
    return b;
}

/// `{ object A -> B ; arrow f -> [..] }`.
std::pair<ObjectPairs, ArrowPairs> parse_mapping(TokenStream &in)
{
    ObjectPairs objects;
    ArrowPairs arrows;
    in.expect("{");
    while (not in.accept("}")) {
        if (in.accept(";"))
            continue;
        parse_mapping_line(in, objects, arrows);
    }
    return {std::move(objects), std::move(arrows)};
}

SchemaMorphism checked(SchemaRef dom, SchemaRef cod, const ObjectPairs &objects, const ArrowPairs &arrows,
                       const std::string &what)
{
    auto F = make_morphism(std::move(dom), std::move(cod), objects, arrows);
    auto report = check_functor(F);
    if (not report.ok())
        throw TypingError(what + ": " + report.problems.front());
    return F;
}

bool plain_word(const std::string &s)
{
    if (s.empty())
        return false;
    for (std::size_t i = 0; i != s.size(); ++i) {
        const char c = s[i];
        if (c == ' ' or c == '\t' or c == '\n' or c == '\r' or c == '#' or c == '"' or c == '{' or c == '}' or
            c == '[' or c == ']' or c == '(' or c == ')' or c == ';' or c == ':' or c == ',' or c == '=' or
            (c == '-' and i + 1 < s.size() and s[i + 1] == '>'))
            return false;
    }
    return true;
}

std::string token(const std::string &s)
{
    return plain_word(s) ? s : "\"" + s + "\"";
}

std::string steps_of(const Schema &S, const Path &p)
{
    std::string out = "[";
    for (std::size_t i = 0; i != p.steps.size(); ++i)
        out += (i ? " " : "") + S.generator(p.steps[i]).name;
    return out + "]";
}

std::string schema_lines(const Schema &S, const std::string &indent)
{
    std::string out;
    if (S.object_count()) {
        out += indent + "objects";
        for (const auto &o : S.objects())
            out += " " + token(o);
        out += "\n";
    }
    for (const auto &g : S.generators())
        out += indent + "arrow " + token(g.name) + " : " + token(S.object_name(g.source)) + " -> " +
               token(S.object_name(g.target)) + "\n";
    for (const auto &eq : S.equations())
        out += indent + "eq " + token(S.object_name(eq.lhs.source)) + " " + steps_of(S, eq.lhs) + " = " +
               steps_of(S, eq.rhs) + "\n";
    return out;
}

std::string mapping_lines(const SchemaMorphism &F, const std::string &indent, const std::string &keyword,
                          bool object_keyword = true)
{
    const Schema &D = *F.domain;
    const Schema &C = *F.codomain;
    std::string out;
    const std::string prefix = keyword.empty() ? "" : keyword + " ";
    for (ObjectId o = 0; o != D.object_count(); ++o)
        out += indent + prefix + (object_keyword ? "object " : "") + token(D.object_name(o)) + " -> " +
               token(C.object_name(F(o))) + "\n";
    for (GenId g = 0; g != D.generator_count(); ++g)
        out += indent + prefix + "arrow " + token(D.generator_label(g)) + " -> " + steps_of(C, F.apply_generator(g)) +
               "\n";
    return out;
}

template <class Fn>
auto at_line(TokenStream &in, std::size_t line, Fn &&fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const InstanceError &e) {
        in.fail_at(line, e.what());
    } catch (const TypingError &e) {
        in.fail_at(line, e.what());
    }
}

Query parse_query(TokenStream &in, const SchemaLibrary &lib, const Instance &delta)
{
    const std::size_t line = in.line();
    in.expect_word("query");
    Query Q;
    Q.name = in.name("query name");
    in.expect_word("on");
    const std::string on = in.name("schema name");
    SchemaRef S = at_line(in, line, [&] { return lib.get(on); });
    in.expect("{");
    std::optional<Block> result, where, select;
    std::optional<std::pair<ObjectPairs, ArrowPairs>> onto;
    while (not in.accept("}")) {
        if (in.accept(";"))
            continue;
        if (in.is_word("result")) {
            in.next();
            result = parse_block(in, "", false);
        } else if (in.is_word("onto")) {
            in.next();
            onto = parse_mapping(in);
        } else if (in.is_word("where")) {
            in.next();
            where = parse_block(in, "embed", true);
        } else if (in.is_word("select")) {
            in.next();
            select = parse_block(in, "map", false);
        } else {
            in.fail("expected 'result', 'onto', 'where', 'select' or '}'");
        }
    }
    if (not result or not onto)
        in.fail_at(line, "query " + Q.name + " needs 'result' and 'onto' blocks");
    at_line(in, line, [&] {
        if (delta.schema_ref() != S and delta.schema().name() != S->name())
            throw TypingError("query " + Q.name + " is on " + S->name() + " but the instance is on " +
                              delta.schema().name());
        SchemaRef R = result->build(Q.name);
        auto n = checked(R, S, onto->first, onto->second, "onto");
        SchemaRef W = where ? where->build(Q.name + ".W") : empty_schema();
        auto m = where ? checked(W, R, where->object_map, where->arrow_map, "embed")
                       : SchemaMorphism::from_empty(W, R);
        std::vector<std::optional<Row>> bound(W->object_count());
        if (where)
            for (const auto &bd : where->binds) {
                ObjectId w = W->object(bd.w);
                Row r = delta.row(bd.object, bd.id);
                if (r.object != n(m(w)))
                    throw TypingError("bind " + bd.w + " -> " + delta.format(r) + " lies over " + bd.object +
                                      ", expected " + S->object_name(n(m(w))));
                bound[w] = r;
            }
        for (ObjectId w = 0; w != W->object_count(); ++w) {
            if (not bound[w])
                throw TypingError("where object " + W->object_name(w) + " is not bound");
            Q.square.binding.push_back(*bound[w]);
        }
        Q.square.constraint = {m, n, Q.name};
        check_square(Q.square, delta);
        if (select) {
            SchemaRef X = select->build(Q.name + ".X");
            Q.select = checked(X, R, select->object_map, select->arrow_map, "select");
        }
        return 0;
    });
    return Q;
}

StrictMorphism parse_strict(TokenStream &in, const std::vector<Query> &queries)
{
    const std::size_t line = in.line();
    in.expect_word("morphism");
    StrictMorphism sm;
    sm.name = in.name("morphism name");
    in.expect(":");
    sm.query = in.name("query name");
    in.expect("{");
    std::optional<Block> result;
    std::optional<std::pair<ObjectPairs, ArrowPairs>> onto, map;
    while (not in.accept("}")) {
        if (in.accept(";"))
            continue;
        if (in.is_word("result")) {
            in.next();
            result = parse_block(in, "", false);
        } else if (in.is_word("onto")) {
            in.next();
            onto = parse_mapping(in);
        } else if (in.is_word("map")) {
            in.next();
            map = parse_mapping(in);
        } else {
            in.fail("expected 'result', 'onto', 'map' or '}'");
        }
    }
    if (not map or result.has_value() != onto.has_value())
        in.fail_at(line, "morphism " + sm.name + " needs 'map', and 'result' together with 'onto'");
    at_line(in, line, [&] {
        const Query *Q = nullptr;
        for (const auto &q : queries)
            if (q.name == sm.query)
                Q = &q;
        if (not Q)
            throw TypingError("unknown query " + sm.query);
        if (result) {
            SchemaRef R2 = result->build(sm.name);
            sm.n2 = checked(R2, Q->n().codomain, onto->first, onto->second, "onto");
        } else {
            sm.n2 = Q->n();
        }
        sm.f = checked(Q->n().domain, sm.n2.domain, map->first, map->second, "map");
        if (not morphisms_equal(compose(sm.f, sm.n2), Q->n()))
            throw TypingError("morphism " + sm.name + " is not strict: n2 after f differs from n");
        return 0;
    });
    return sm;
}

}

const Query & QueryFile::query(std::string_view name) const
{
    for (const auto &q : queries)
        if (q.name == name)
            return q;
    throw TypingError("unknown query " + std::string(name));
}

const StrictMorphism & QueryFile::morphism(std::string_view name) const
{
    for (const auto &m : morphisms)
        if (m.name == name)
            return m;
    throw TypingError("unknown morphism " + std::string(name));
}

QueryFile catlift::parse_queries(std::string_view text, const SchemaLibrary &lib, const Instance &delta,
                                 const std::string &file)
{
    TokenStream in(text, file);
    QueryFile out;
    while (not in.at_end()) {
        if (in.is_word("query"))
            out.queries.push_back(parse_query(in, lib, delta));
        else if (in.is_word("morphism"))
            out.morphisms.push_back(parse_strict(in, out.queries));
        else
            in.fail("expected 'query' or 'morphism'");
    }
    return out;
}

QueryFile catlift::load_queries(const std::string &path, const SchemaLibrary &lib, const Instance &delta)
{
    return parse_queries(detail::read_file(path), lib, delta, path);
}

std::string catlift::serialize_query(const Query &Q, const Instance &delta)
{
    const Schema &R = *Q.n().domain;
    const Schema &W = *Q.m().domain;
    std::string out = "query " + token(Q.name) + " on " + token(Q.n().codomain->name()) + " {\n";
    out += "  result {\n" + schema_lines(R, "    ") + "  }\n";
    out += "  onto {\n" + mapping_lines(Q.n(), "    ", "") + "  }\n";
    if (W.object_count()) {
        out += "  where {\n" + schema_lines(W, "    ") + mapping_lines(Q.m(), "    ", "embed", false);
        for (ObjectId w = 0; w != W.object_count(); ++w) {
            const Row r = Q.square.binding[w];
            out += "    bind " + token(W.object_name(w)) + " -> (" + token(delta.schema().object_name(r.object)) +
                   ", " + token(delta.row_id(r)) + ")\n";
        }
        out += "  }\n";
    }
    if (Q.select)
        out += "  select {\n" + schema_lines(*Q.select->domain, "    ") + mapping_lines(*Q.select, "    ", "map", false) +
               "  }\n";
    return out + "}\n";
}

std::string catlift::serialize_morphism(const StrictMorphism &f)
{
    std::string out = "morphism " + token(f.name) + " : " + token(f.query) + " {\n";
    if (f.f.codomain != f.f.domain) {
        out += "  result {\n" + schema_lines(*f.n2.domain, "    ") + "  }\n";
        out += "  onto {\n" + mapping_lines(f.n2, "    ", "") + "  }\n";
    }
    out += "  map {\n" + mapping_lines(f.f, "    ", "") + "  }\n";
    return out + "}\n";
}

std::string catlift::serialize_queries(const QueryFile &qf, const Instance &delta)
{
    std::string out;
    for (const auto &q : qf.queries)
        out += (out.empty() ? "" : "\n") + serialize_query(q, delta);
    for (const auto &m : qf.morphisms)
        out += (out.empty() ? "" : "\n") + serialize_morphism(m);
    return out;
}


namespace {

LiftingConstraint build_constraint(const SchemaRef &S, const ConstraintDecl &d)
{
    auto want = [&](std::size_t k) {
        if (d.args.size() != k)
            throw TypingError(d.builder + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
    };
    if (d.builder == "nonempty")
        return want(1), nonempty(S, d.args[0]);
    if (d.builder == "at_most_one")
        return want(1), at_most_one(S, d.args[0]);
    if (d.builder == "surjective")
        return want(1), surjective_fk(S, d.args[0]);
    if (d.builder == "injective")
        return want(1), injective_fk(S, d.args[0]);
    if (d.builder == "transitive")
        return want(2), transitive(S, d.args[0], d.args[1]);
    if (d.builder == "reflexive")
        return want(2), reflexive(S, d.args[0], d.args[1]);
    if (d.builder == "symmetric")
        return want(2), symmetric(S, d.args[0], d.args[1]);
    if (d.builder == "forest")
        return want(2), forest(S, d.args[0], d.args[1]);
    throw TypingError("unknown constraint " + d.builder);
}

ConstraintSet expand_decl(const SchemaRef &S, const ConstraintDecl &d)
{
    ConstraintSet out;
    if (d.lifting) {
        out.constraints.push_back(*d.lifting);
        if (d.unique)
            out.constraints.push_back(uniqueness_of(*d.lifting));
    } else if (d.builder == "exactly_one") {
        if (d.args.size() != 1)
            throw TypingError("exactly_one takes 1 argument");
        out = exactly_one(S, d.args[0]);
    } else if (d.builder == "product") {
        if (d.args.size() != 3)
            throw TypingError("product takes 3 arguments");
        out = product(S, d.args[0], d.args[1], d.args[2]);
    } else {
        out.constraints.push_back(build_constraint(S, d));
    }
    return out;
}

}

ConstraintSet ConstraintFile::expand() const
{
    ConstraintSet out;
    for (const auto &d : decls) {
        auto part = expand_decl(schema, d);
        out.constraints.insert(out.constraints.end(), part.constraints.begin(), part.constraints.end());
    }
    return out;
}

ConstraintFile catlift::parse_constraints(std::string_view text, const SchemaRef &S, const std::string &file)
{
    TokenStream in(text, file);
    ConstraintFile out{S, {}};
    while (not in.at_end()) {
        const std::size_t line = in.line();
        in.expect_word("constraint");
        ConstraintDecl d;
        if (in.is_word("unique")) {
            in.next();
            d.unique = true;
            if (not in.is_word("lifting"))
                in.fail("'unique' applies to 'lifting' blocks");
        }
        d.builder = in.word("constraint kind");
        if (d.builder == "lifting") {
            std::string name = in.name("constraint name");
            in.expect("{");
            std::optional<Block> W, R;
            std::optional<std::pair<ObjectPairs, ArrowPairs>> m, n;
            while (not in.accept("}")) {
                if (in.accept(";"))
                    continue;
                if (in.is_word("W")) {
                    in.next();
                    W = parse_block(in, "", false);
                } else if (in.is_word("R")) {
                    in.next();
                    R = parse_block(in, "", false);
                } else if (in.is_word("m")) {
                    in.next();
                    m = parse_mapping(in);
                } else if (in.is_word("n")) {
                    in.next();
                    n = parse_mapping(in);
                } else {
                    in.fail("expected 'W', 'R', 'm', 'n' or '}'");
                }
            }
            if (not W or not R or not m or not n)
                in.fail_at(line, "lifting " + name + " needs W, R, m and n");
            at_line(in, line, [&] {
                SchemaRef w = W->build(name + ".W");
                SchemaRef r = R->build(name);
                d.lifting = LiftingConstraint{checked(w, r, m->first, m->second, "m"),
                                              checked(r, S, n->first, n->second, "n"), name};
                return 0;
            });
            d.args = {name};
        } else {
            in.expect("(");
            while (not in.accept(")")) {
                if (not d.args.empty())
                    in.expect(",");
                d.args.push_back(in.name("argument"));
            }
            at_line(in, line, [&] { return expand_decl(S, d); });
        }
        out.decls.push_back(std::move(d));
    }
    return out;
}

ConstraintFile catlift::load_constraints(const std::string &path, const SchemaRef &S)
{
    return parse_constraints(detail::read_file(path), S, path);
}

std::string catlift::serialize_constraints(const ConstraintFile &cf)
{
    std::string out;
    for (const auto &d : cf.decls) {
        if (not d.lifting) {
            out += "constraint " + d.builder + "(";
            for (std::size_t i = 0; i != d.args.size(); ++i)
                out += (i ? ", " : "") + token(d.args[i]);
            out += ")\n";
            continue;
        }
        const auto &c = *d.lifting;
        out += "constraint " + std::string(d.unique ? "unique " : "") + "lifting " + token(c.label) + " {\n";
        out += "  W {\n" + schema_lines(*c.m.domain, "    ") + "  }\n";
        out += "  R {\n" + schema_lines(*c.m.codomain, "    ") + "  }\n";
        out += "  m {\n" + mapping_lines(c.m, "    ", "") + "  }\n";
        out += "  n {\n" + mapping_lines(c.n, "    ", "") + "  }\n";
        out += "}\n";
    }
    return out;
}

GraphPattern catlift::parse_pattern(std::string_view text, const std::string &file)
{
    TokenStream in(text, file);
    GraphPattern gp;
    auto table = [&](std::map<std::string, std::string> &into) {
        in.expect("{");
        while (not in.accept("}")) {
            if (in.accept(";"))
                continue;
            std::string k = in.name("term");
            in.expect("->");
            into[k] = in.name("name");
        }
    };
    while (not in.at_end()) {
        if (in.accept("(")) {
            PatternTriple t;
            t.subject.name = in.name("subject");
            t.predicate.name = in.name("predicate");
            t.object.name = in.name("object");
            in.expect(")");
            gp.triples.push_back(std::move(t));
        } else if (in.is_word("types")) {
            in.next();
            table(gp.types);
        } else if (in.is_word("labels")) {
            in.next();
            table(gp.labels);
        } else {
            in.fail("expected '(', 'types' or 'labels'");
        }
    }
    return gp;
}

GraphPattern catlift::load_pattern(const std::string &path)
{
    return parse_pattern(detail::read_file(path), path);
}

std::string catlift::serialize_pattern(const GraphPattern &gp)
{
    std::string out;
    for (const auto &t : gp.triples)
        out += "(" + token(t.subject.name) + " " + token(t.predicate.name) + " " + token(t.object.name) + ")\n";
    auto table = [&](const char *kw, const std::map<std::string, std::string> &m) {
        if (m.empty())
            return;
        out += std::string(kw) + " {\n";
        for (const auto &[k, v] : m)
            out += "  " + token(k) + " -> " + token(v) + "\n";
        out += "}\n";
    };
    table("types", gp.types);
    table("labels", gp.labels);
    return out;
}
