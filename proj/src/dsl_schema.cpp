#include <catlift/dsl.hpp>

#include "lexer.hpp"

#include <filesystem>
#include <fstream>


using namespace catlift;
using catlift::detail::TokenStream;


void SchemaLibrary::add(SchemaRef S)
{
    for (auto &existing : schemas_)
        if (existing->name() == S->name()) {
            existing = std::move(S);
            return;
        }
    schemas_.push_back(std::move(S));
}

void SchemaLibrary::add(const std::vector<SchemaRef> &S)
{
    for (const auto &s : S)
        add(s);
}

SchemaRef SchemaLibrary::find(std::string_view name) const
{
    for (const auto &s : schemas_)
        if (s->name() == name)
            return s;
    return nullptr;
}

SchemaRef SchemaLibrary::get(std::string_view name) const
{
    if (auto s = find(name))
        return s;
    throw TypingError("unknown schema " + std::string(name));
}


namespace {

bool is_schema_keyword(const TokenStream &in)
{
    return in.is_word("objects") or in.is_word("object") or in.is_word("arrow") or in.is_word("eq");
}

SchemaRef parse_schema(TokenStream &in)
{
    const std::size_t line = in.line();
    in.expect_word("schema");
    SchemaBuilder b(in.word("schema name"));
    in.expect("{");
    while (not in.accept("}")) {
        if (in.accept(";"))
            continue;
        if (in.is_word("objects") or in.is_word("object")) {
            in.next();
            while (not in.is_symbol(";") and not in.is_symbol("}") and not is_schema_keyword(in))
                b.object(in.word("object name"));
        } else if (in.is_word("arrow")) {
            in.next();
            std::string name = in.word("arrow name");
            in.expect(":");
            std::string src = in.word("source object");
            in.expect("->");
            std::string tgt = in.word("target object");
            b.arrow(std::move(name), std::move(src), std::move(tgt));
        } else if (in.is_word("eq")) {
            in.next();
            std::string src = in.word("equation source object");
            auto lhs = in.bracket_list();
            in.expect("=");
            auto rhs = in.bracket_list();
            b.equation(std::move(src), std::move(lhs), std::move(rhs));
        } else {
            in.fail("expected 'objects', 'arrow', 'eq' or '}'");
        }
    }
    try {
        return b.build();
    } catch (const TypingError &e) {
        in.fail_at(line, e.what());
    }
}

std::string join_steps(const std::vector<std::string> &steps)
{
    std::string out = "[";
    for (std::size_t i = 0; i != steps.size(); ++i)
        out += (i ? " " : "") + steps[i];
    return out + "]";
}

}

std::vector<SchemaRef> catlift::parse_schemas(std::string_view text, const std::string &file)
{
    TokenStream in(text, file);
    std::vector<SchemaRef> out;
    while (not in.at_end())
        out.push_back(parse_schema(in));
    return out;
}

std::vector<SchemaRef> catlift::load_schemas(const std::string &path)
{
    return parse_schemas(detail::read_file(path), path);
}

std::string catlift::serialize_schema(const Schema &S)
{
    std::string out = "schema " + S.name() + " {\n";
    out += "  objects";
    for (const auto &o : S.objects())
        out += " " + o;
    out += "\n";
    for (const auto &g : S.generators())
        out += "  arrow " + g.name + " : " + S.object_name(g.source) + " -> " + S.object_name(g.target) + "\n";
    for (const auto &eq : S.equations())
        out += "  eq " + S.object_name(eq.lhs.source) + " " + S.format_steps(eq.lhs) + " = " +
               S.format_steps(eq.rhs) + "\n";
    return out + "}\n";
}

std::vector<NamedFunctor> catlift::parse_functors(std::string_view text, const SchemaLibrary &lib,
                                                  const std::string &file)
{
    TokenStream in(text, file);
    std::vector<NamedFunctor> out;
    while (not in.at_end()) {
        const std::size_t line = in.line();
        in.expect_word("functor");
        std::string name = in.word("functor name");
        in.expect(":");
        std::string dom = in.word("domain schema");
        in.expect("->");
        std::string cod = in.word("codomain schema");
        in.expect("{");
        std::vector<std::pair<std::string, std::string>> objects;
        std::vector<std::pair<std::string, std::vector<std::string>>> arrows;
        while (not in.accept("}")) {
            if (in.accept(";"))
                continue;
            if (in.is_word("object")) {
                in.next();
                std::string a = in.word("object name");
                in.expect("->");
                objects.emplace_back(std::move(a), in.word("object name"));
            } else if (in.is_word("arrow")) {
                in.next();
                std::string f = in.word("arrow name");
                in.expect("->");
                arrows.emplace_back(std::move(f), in.bracket_list());
            } else {
                in.fail("expected 'object', 'arrow' or '}'");
            }
        }
        try {
            auto F = make_morphism(lib.get(dom), lib.get(cod), objects, arrows);
            auto report = check_functor(F);
            if (not report.ok())
                throw TypingError("functor " + name + ": " + report.problems.front());
            out.push_back({std::move(name), std::move(F)});
        } catch (const TypingError &e) {
            in.fail_at(line, e.what());
        }
    }
    return out;
}

std::vector<NamedFunctor> catlift::load_functors(const std::string &path, const SchemaLibrary &lib)
{
    return parse_functors(detail::read_file(path), lib, path);
}

std::string catlift::serialize_functor(const NamedFunctor &nf)
{
    const auto &F = nf.F;
    const Schema &S = *F.domain;
    const Schema &T = *F.codomain;
    std::string out = "functor " + nf.name + " : " + S.name() + " -> " + T.name() + " {\n";
    for (ObjectId o = 0; o != S.object_count(); ++o)
        out += "  object " + S.object_name(o) + " -> " + T.object_name(F(o)) + "\n";
    for (GenId g = 0; g != S.generator_count(); ++g) {
        std::vector<std::string> steps;
        for (GenId h : F.apply_generator(g).steps)
            steps.push_back(T.generator(h).name);
        out += "  arrow " + S.generator_label(g) + " -> " + join_steps(steps) + "\n";
    }
    return out + "}\n";
}

Table catlift::parse_csv(std::string_view text, const std::string &file)
{
    Table t;
    std::size_t line = 0;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view l = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        if (not l.empty() and l.back() == '\r')
            l.remove_suffix(1);
        if (l.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = l.find(',', start);
            cells.emplace_back(l.substr(start, comma == std::string_view::npos ? l.npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (header) {
            t.header = std::move(cells);
            header = false;
        } else {
            if (cells.size() != t.header.size())
                throw ParseError(file, line, "row has " + std::to_string(cells.size()) + " cells, header has " +
                                                 std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (header)
        throw ParseError(file, 1, "missing header");
    return t;
}

std::string catlift::serialize_csv(const Table &t)
{
    auto line = [](const std::vector<std::string> &cells) {
        std::string out;
        for (std::size_t i = 0; i != cells.size(); ++i)
            out += (i ? "," : "") + cells[i];
        return out + "\n";
    };
    std::string out = line(t.header);
    for (const auto &r : t.rows)
        out += line(r);
    return out;
}

TableSet catlift::read_tables(const Schema &S, const std::string &dir)
{
    TableSet out;
    for (const auto &o : S.objects()) {
        const auto path = (std::filesystem::path(dir) / (o + ".csv")).string();
        out[o] = parse_csv(detail::read_file(path), path);
    }
    return out;
}

Instance catlift::load_instance(const SchemaRef &S, const std::string &dir)
{
    return Instance::from_tables(S, read_tables(*S, dir));
}

void catlift::save_instance(const Instance &delta, const std::string &dir)
{
    std::filesystem::create_directories(dir);
    for (const auto &[name, table] : delta.to_tables()) {
        std::ofstream out(std::filesystem::path(dir) / (name + ".csv"), std::ios::binary);
        out << serialize_csv(table);
    }
}
