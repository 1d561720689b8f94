#include <catlift/cli.hpp>

#include <catlift/dsl.hpp>
#include <catlift/fibration.hpp>
#include <catlift/migration.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>


using namespace catlift;
using json = nlohmann::json;


namespace {

struct Options
{
    std::vector<std::string> schema_files;
    std::string schema;
    std::string instance;
    std::size_t bound = DEFAULT_BOUND;
    std::string format = "json";
    unsigned workers = 1;
    std::string query_file, query;
    std::string constraint_file;
    std::string functor_file, functor;
    std::string pattern_file;
    std::string mode;
    std::string output;
    std::string dedup_by, orbits;
    bool expect_some = false;
};


SchemaLibrary load_library(const Options &o)
{
    if (o.schema_files.empty())
        throw TypingError("no schema file given (-s)");
    SchemaLibrary lib;
    for (const auto &f : o.schema_files)
        lib.add(load_schemas(f));
    if (lib.all().empty())
        throw TypingError("schema files define no schema");
    return lib;
}

SchemaRef pick_schema(const SchemaLibrary &lib, const Options &o)
{
    return o.schema.empty() ? lib.all().front() : lib.get(o.schema);
}

json row_json(const Instance &delta, Row r)
{
    return json::array({delta.schema().object_name(r.object), delta.row_id(r)});
}

std::string csv_line(const std::vector<std::string> &cells)
{
    std::string out;
    for (std::size_t i = 0; i != cells.size(); ++i)
        out += (i ? "," : "") + cells[i];
    return out + "\n";
}

void emit_rows(std::ostream &out, const Options &o, const Instance &delta, const std::vector<std::string> &names,
               const std::vector<std::vector<Row>> &rows)
{
    if (o.format == "csv") {
        out << csv_line(names);
        for (const auto &r : rows) {
            std::vector<std::string> cells;
            for (Row x : r)
                cells.push_back(delta.row_id(x));
            out << csv_line(cells);
        }
        return;
    }
    json arr = json::array();
    for (const auto &r : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i != names.size(); ++i)
            obj[names[i]] = row_json(delta, r[i]);
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << "\n";
}

int cmd_validate(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto S = pick_schema(lib, o);
    auto tables = read_tables(*S, o.instance);
    auto report = validate_tables(*S, tables);
    std::size_t rows = 0;
    for (const auto &[_, t] : tables)
        rows += t.rows.size();
    if (o.format == "json") {
        json j = {{"schema", S->name()}, {"rows", rows}, {"problems", report.problems},
                  {"status", report.ok() ? "valid" : "invalid"}};
        out << j.dump(2) << "\n";
    } else {
        for (const auto &p : report.problems)
            out << p << "\n";
        out << (report.ok() ? "valid" : "invalid") << "\n";
    }
    return report.ok() ? 0 : 1;
}

int cmd_query(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto S = pick_schema(lib, o);
    auto delta = load_instance(S, o.instance);
    auto qf = load_queries(o.query_file, lib, delta);
    if (qf.queries.empty())
        throw TypingError("query file defines no query");
    const Query &Q = o.query.empty() ? qf.queries.front() : qf.query(o.query);
    auto rs = run_query(Q, delta, o.workers);
    std::vector<Lift> lifts = rs.lifts;

    if (not o.dedup_by.empty()) {
        const auto &f = qf.morphism(o.dedup_by);
        if (f.query != Q.name)
            throw TypingError("morphism " + f.name + " is not out of query " + Q.name);
        auto lifts2 = enumerate_lifts(where_less(f.n2), delta, o.workers);
        lifts = subtract_image(lifts, gamma_strict(f.f, Q.n(), f.n2, lifts2, o.bound));
    }
    if (not o.orbits.empty()) {
        const auto &s = qf.morphism(o.orbits);
        if (s.query != Q.name or s.f.codomain != s.f.domain)
            throw TypingError("morphism " + s.name + " is not an automorphism of query " + Q.name);
        std::vector<Lift> reps;
        for (const auto &orbit : orbit_quotient(s.f, Q.n(), lifts, o.bound))
            reps.push_back(lifts[orbit.front()]);
        lifts = std::move(reps);
    }

    std::vector<std::string> names;
    std::vector<std::vector<Row>> rows;
    if (Q.select) {
        const auto &q = *Q.select;
        const Schema &X = *q.domain;
        names.assign(X.objects().begin(), X.objects().end());
        for (const auto &l : lifts) {
            std::vector<Row> r;
            for (ObjectId x = 0; x != X.object_count(); ++x)
                r.push_back(l.assignment[q(x)]);
            rows.push_back(std::move(r));
        }
    } else {
        const Schema &R = *Q.n().domain;
        names.assign(R.objects().begin(), R.objects().end());
        for (const auto &l : lifts)
            rows.push_back(l.assignment);
    }
    emit_rows(out, o, delta, names, rows);
    return o.expect_some and lifts.empty() ? 1 : 0;
}

int cmd_check(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto S = pick_schema(lib, o);
    auto delta = load_instance(S, o.instance);
    auto cf = load_constraints(o.constraint_file, S);
    auto report = check_constraint_set(delta, cf.expand(), o.bound);
    if (o.format == "json") {
        json list = json::array();
        for (const auto &[label, v] : report.results) {
            json item = {{"constraint", label}, {"squares", v.squares},
                         {"status", v.satisfied() ? "satisfied" : "violated"}};
            if (v.witness) {
                json w = json::object();
                for (std::size_t i = 0; i != v.witness->binding.size(); ++i)
                    w[v.witness->constraint.m.domain->object_name(static_cast<ObjectId>(i))] =
                        row_json(delta, v.witness->binding[i]);
                item["witness"] = std::move(w);
            }
            list.push_back(std::move(item));
        }
        json j = {{"constraints", std::move(list)}, {"status", report.satisfied() ? "satisfied" : "violated"}};
        out << j.dump(2) << "\n";
    } else {
        for (const auto &[label, v] : report.results) {
            out << label << ": " << (v.satisfied() ? "satisfied" : "violated");
            if (v.witness)
                for (const auto &[w, r] : describe_binding(*v.witness, delta))
                    out << " " << w << "=" << r;
            out << "\n";
        }
    }
    return report.satisfied() ? 0 : 1;
}

int cmd_migrate(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto functors = load_functors(o.functor_file, lib);
    if (functors.empty())
        throw TypingError("functor file defines no functor");
    const NamedFunctor *nf = &functors.front();
    if (not o.functor.empty()) {
        nf = nullptr;
        for (const auto &f : functors)
            if (f.name == o.functor)
                nf = &f;
        if (not nf)
            throw TypingError("unknown functor " + o.functor);
    }
    MigrationRequest req{nf->F, MigrationMode::Delta, o.bound};
    if (o.mode == "sigma")
        req.mode = MigrationMode::Sigma;
    else if (o.mode == "pi")
        req.mode = MigrationMode::Pi;
    else if (o.mode != "delta")
        throw TypingError("unknown migration mode " + o.mode);
    const SchemaRef &input = req.mode == MigrationMode::Delta ? req.F.codomain : req.F.domain;
    auto result = migrate(req, load_instance(input, o.instance));
    if (not o.output.empty()) {
        save_instance(result, o.output);
        return 0;
    }
    for (const auto &[name, table] : result.to_tables())
        out << "== " << name << ".csv\n" << serialize_csv(table);
    return 0;
}

int cmd_triples(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto S = pick_schema(lib, o);
    auto delta = load_instance(S, o.instance);
    for (const auto &t : grothendieck_triples(delta))
        out << (o.format == "json" ? format_json_triple(delta, t) : format_ntriple(delta, t)) << "\n";
    return 0;
}

int cmd_pattern(const Options &o, std::ostream &out)
{
    auto lib = load_library(o);
    auto S = pick_schema(lib, o);
    auto delta = load_instance(S, o.instance);
    auto answers = match_pattern(load_pattern(o.pattern_file), S, delta, o.workers);
    if (o.format == "csv") {
        std::vector<std::string> header;
        for (const auto &v : answers.variables)
            header.push_back(v);
        out << csv_line(header);
        for (const auto &r : answers.rows)
            out << csv_line(r);
    } else {
        json arr = json::array();
        for (const auto &r : answers.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i != r.size(); ++i)
                obj[answers.variables[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << "\n";
    }
    return o.expect_some and answers.rows.empty() ? 1 : 0;
}

}

int catlift::run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"catlift: queries and constraints as lifting problems"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub, bool instance) {
        sub->add_option("-s,--schemas", o.schema_files, "schema file (repeatable)")->required();
        sub->add_option("--schema", o.schema, "schema name (default: first loaded)");
        if (instance)
            sub->add_option("-i,--instance", o.instance, "instance directory")->required();
        sub->add_option("--bound", o.bound, "path length bound")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "output format");
    };
    auto *validate = app.add_subcommand("validate", "check tables against the schema");
    common(validate, true);
    validate->get_option("--format")->check(CLI::IsMember({"json", "text"}));

    auto *query = app.add_subcommand("query", "run a lifting query");
    common(query, true);
    query->get_option("--format")->check(CLI::IsMember({"json", "csv"}));
    query->add_option("-q,--query-file", o.query_file, "query file")->required();
    query->add_option("--name", o.query, "query name (default: first)");
    query->add_option("--workers", o.workers, "search threads")->check(CLI::PositiveNumber);
    query->add_option("--dedup-by", o.dedup_by, "strict morphism whose image is removed");
    query->add_option("--orbits", o.orbits, "automorphism whose orbits are collapsed");
    query->add_flag("--expect-some", o.expect_some, "exit 1 when there are no results");

    auto *check = app.add_subcommand("check", "check lifting constraints");
    common(check, true);
    check->get_option("--format")->check(CLI::IsMember({"json", "text"}));
    check->add_option("-c,--constraints", o.constraint_file, "constraint file")->required();

    auto *mig = app.add_subcommand("migrate", "delta, sigma or pi along a functor");
    common(mig, true);
    mig->get_option("--format")->check(CLI::IsMember({"json", "csv"}));
    mig->add_option("-f,--functors", o.functor_file, "functor file")->required();
    mig->add_option("--functor", o.functor, "functor name (default: first)");
    mig->add_option("--mode", o.mode, "delta|sigma|pi")->required()->check(CLI::IsMember({"delta", "sigma", "pi"}));
    mig->add_option("-o,--output", o.output, "output directory (default: print tables)");

    auto *triples = app.add_subcommand("triples", "export the category of elements as triples");
    common(triples, true);
    o.format = "nt";
    triples->get_option("--format")->check(CLI::IsMember({"nt", "json"}));

    auto *pattern = app.add_subcommand("pattern", "evaluate a graph pattern");
    common(pattern, true);
    pattern->get_option("--format")->check(CLI::IsMember({"json", "csv"}));
    pattern->add_option("-p,--pattern", o.pattern_file, "pattern file")->required();
    pattern->add_option("--workers", o.workers, "search threads")->check(CLI::PositiveNumber);
    pattern->add_flag("--expect-some", o.expect_some, "exit 1 when there are no results");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        const int status = app.exit(e, out, err);
        return status == 0 ? 0 : 2;
    }
    if (not triples->parsed() and o.format == "nt")
        o.format = "json";

    try {
        if (validate->parsed())
            return cmd_validate(o, out);
        if (query->parsed())
            return cmd_query(o, out);
        if (check->parsed())
            return cmd_check(o, out);
        if (mig->parsed())
            return cmd_migrate(o, out);
        if (triples->parsed())
            return cmd_triples(o, out);
        return cmd_pattern(o, out);
    } catch (const UnboundedError &e) {
        err << "unbounded: " << e.what() << "\n";
        return 3;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}
