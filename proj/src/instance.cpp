#include <catlift/instance.hpp>

#include <functional>
#include <set>


using namespace catlift;


namespace {

std::vector<std::string> expected_header(const Schema &S, ObjectId o)
{
    std::vector<std::string> h{"id"};
    for (GenId g : S.outgoing(o))
        h.push_back(S.generator(g).name);
    return h;
}

std::string join(const std::vector<std::string> &v)
{
    std::string out;
    for (const auto &s : v)
        out += (out.empty() ? "" : ",") + s;
    return out;
}

}

Instance::Instance(SchemaRef S, std::vector<std::vector<std::string>> rows, std::vector<std::vector<RowIndex>> columns)
    : schema_(std::move(S))
    , rows_(std::move(rows))
    , columns_(std::move(columns))
{
    const Schema &sch = *schema_;
    if (rows_.size() != sch.object_count() or columns_.size() != sch.generator_count())
        throw InstanceError("instance on " + sch.name() + ": wrong number of tables or columns");
    index_.resize(rows_.size());
    for (ObjectId o = 0; o != rows_.size(); ++o)
        for (RowIndex i = 0; i != rows_[o].size(); ++i)
            if (not index_[o].emplace(rows_[o][i], i).second)
                throw InstanceError("table " + sch.object_name(o) + ": duplicate row id " + rows_[o][i]);
    for (GenId g = 0; g != columns_.size(); ++g) {
        const auto &gen = sch.generator(g);
        if (columns_[g].size() != rows_[gen.source].size())
            throw InstanceError("column " + sch.generator_label(g) + " has the wrong length");
        for (RowIndex v : columns_[g])
            if (v >= rows_[gen.target].size())
                throw InstanceError("column " + sch.generator_label(g) + " points outside " +
                                    sch.object_name(gen.target));
    }
}

Instance Instance::from_tables(SchemaRef S, const TableSet &tables)
{
    const Schema &sch = *S;
    std::vector<std::vector<std::string>> rows(sch.object_count());
    std::vector<std::unordered_map<std::string, RowIndex>> index(sch.object_count());
    for (ObjectId o = 0; o != sch.object_count(); ++o) {
        auto it = tables.find(sch.object_name(o));
        if (it == tables.end())
            throw InstanceError("missing table " + sch.object_name(o));
        if (it->second.header != expected_header(sch, o))
            throw InstanceError("table " + sch.object_name(o) + ": header must be " +
                                join(expected_header(sch, o)));
        for (const auto &r : it->second.rows) {
            if (r.size() != it->second.header.size())
                throw InstanceError("table " + sch.object_name(o) + ": row with " + std::to_string(r.size()) +
                                    " cells");
            if (r[0].empty())
                throw InstanceError("table " + sch.object_name(o) + ": empty row id");
            if (not index[o].emplace(r[0], rows[o].size()).second)
                throw InstanceError("table " + sch.object_name(o) + ": duplicate row id " + r[0]);
            rows[o].push_back(r[0]);
        }
    }
    std::vector<std::vector<RowIndex>> columns(sch.generator_count());
    for (ObjectId o = 0; o != sch.object_count(); ++o) {
        const auto &table = tables.at(sch.object_name(o));
        const auto out = sch.outgoing(o);
        for (std::size_t k = 0; k != out.size(); ++k) {
            const GenId g = out[k];
            const ObjectId t = sch.generator(g).target;
            for (const auto &r : table.rows) {
                const auto &cell = r[k + 1];
                if (cell.empty())
                    throw InstanceError("table " + sch.object_name(o) + " row " + r[0] + ": null in column " +
                                        sch.generator(g).name);
                auto hit = index[t].find(cell);
                if (hit == index[t].end())
                    throw InstanceError("table " + sch.object_name(o) + " row " + r[0] + ": " +
                                        sch.generator(g).name + " = " + cell + " is not a row of " +
                                        sch.object_name(t));
                columns[g].push_back(hit->second);
            }
        }
    }
    return Instance(std::move(S), std::move(rows), std::move(columns));
}

Instance Instance::from_rows(SchemaRef S,
                             const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> &tables)
{
    TableSet set;
    for (ObjectId o = 0; o != S->object_count(); ++o)
        set[S->object_name(o)].header = expected_header(*S, o);
    for (const auto &[name, rows] : tables) {
        if (not set.contains(name))
            throw InstanceError("unknown table " + name);
        set[name].rows = rows;
    }
    return from_tables(std::move(S), set);
}

Instance Instance::empty(SchemaRef S)
{
    const auto n = S->object_count();
    const auto k = S->generator_count();
    return Instance(std::move(S), std::vector<std::vector<std::string>>(n), std::vector<std::vector<RowIndex>>(k));
}

std::size_t Instance::total_rows() const
{
    std::size_t n = 0;
    for (const auto &r : rows_)
        n += r.size();
    return n;
}

std::optional<Row> Instance::find_row(ObjectId o, std::string_view id) const
{
    auto it = index_.at(o).find(std::string(id));
    if (it == index_[o].end())
        return std::nullopt;
    return Row{o, it->second};
}

Row Instance::row(std::string_view object, std::string_view id) const
{
    auto o = schema_->find_object(object);
    if (not o)
        throw InstanceError("unknown table " + std::string(object));
    auto r = find_row(*o, id);
    if (not r)
        throw InstanceError("no row " + std::string(id) + " in " + std::string(object));
    return *r;
}

Row Instance::apply(GenId g, Row r) const
{
    const auto &gen = schema_->generator(g);
    if (gen.source != r.object)
        throw TypingError("generator " + schema_->generator_label(g) + " applied to a row of " +
                          schema_->object_name(r.object));
    return Row{gen.target, columns_[g].at(r.index)};
}

TableSet Instance::to_tables() const
{
    TableSet out;
    const Schema &S = *schema_;
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        Table &t = out[S.object_name(o)];
        t.header = expected_header(S, o);
        for (RowIndex i = 0; i != rows_[o].size(); ++i) {
            std::vector<std::string> r{rows_[o][i]};
            for (GenId g : S.outgoing(o))
                r.push_back(rows_[S.generator(g).target][columns_[g][i]]);
            t.rows.push_back(std::move(r));
        }
    }
    return out;
}

std::string Instance::format(Row r) const
{
    return "(" + schema_->object_name(r.object) + "," + row_id(r) + ")";
}


ValidationReport catlift::validate_tables(const Schema &S, const TableSet &tables)
{
    ValidationReport report;
    std::vector<std::set<std::string>> ids(S.object_count());
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        auto it = tables.find(S.object_name(o));
        if (it == tables.end()) {
            report.add("missing table " + S.object_name(o));
            continue;
        }
        if (it->second.header != expected_header(S, o))
            report.add("table " + S.object_name(o) + ": header must be " + join(expected_header(S, o)));
        for (const auto &r : it->second.rows)
            if (not r.empty() and not ids[o].insert(r[0]).second)
                report.add("table " + S.object_name(o) + ": duplicate row id " + r[0]);
    }
    if (not report.ok())
        return report;
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        const auto &table = tables.at(S.object_name(o));
        const auto out = S.outgoing(o);
        for (const auto &r : table.rows) {
            if (r.size() != out.size() + 1) {
                report.add("table " + S.object_name(o) + ": row with " + std::to_string(r.size()) + " cells");
                continue;
            }
            for (std::size_t k = 0; k != out.size(); ++k) {
                const auto &gen = S.generator(out[k]);
                if (r[k + 1].empty())
                    report.add("null: " + S.object_name(o) + " row " + r[0] + " column " + gen.name);
                else if (not ids[gen.target].contains(r[k + 1]))
                    report.add("dangling: " + S.object_name(o) + " row " + r[0] + " column " + gen.name + " = " +
                               r[k + 1] + " is not a row of " + S.object_name(gen.target));
            }
        }
    }
    if (not report.ok())
        return report;
    auto schema = std::make_shared<const Schema>(S);
    return validate_instance(Instance::from_tables(schema, tables));
}

ValidationReport catlift::validate_instance(const Instance &delta)
{
    ValidationReport report;
    const Schema &S = delta.schema();
    for (const auto &eq : S.equations()) {
        const auto lhs = eval_path(delta, eq.lhs);
        const auto rhs = eval_path(delta, eq.rhs);
        const ObjectId t = S.target(eq.lhs);
        for (RowIndex i = 0; i != lhs.size(); ++i)
            if (lhs[i] != rhs[i])
                report.add("equation " + S.format(eq.lhs) + " = " + S.format_steps(eq.rhs) + " fails at " +
                           S.object_name(eq.lhs.source) + " row " + delta.row_id({eq.lhs.source, i}) + ": " +
                           delta.row_id({t, lhs[i]}) + " vs " + delta.row_id({t, rhs[i]}));
    }
    return report;
}

std::vector<RowIndex> catlift::eval_path(const Instance &delta, const Path &p)
{
    const Schema &S = delta.schema();
    if (not S.well_typed(p))
        throw TypingError("eval_path: ill-typed path");
    std::vector<RowIndex> f(delta.row_count(p.source));
    for (RowIndex i = 0; i != f.size(); ++i)
        f[i] = i;
    for (GenId g : p.steps) {
        const auto col = delta.column(g);
        for (auto &x : f)
            x = col[x];
    }
    return f;
}

Row catlift::transport(const Instance &delta, Row r, const Path &p)
{
    if (r.object != p.source)
        throw TypingError("transport: path does not start at the row's table");
    for (GenId g : p.steps)
        r = delta.apply(g, r);
    return r;
}

bool catlift::identical(const Instance &a, const Instance &b)
{
    const Schema &S = a.schema();
    if (a.schema_ref() != b.schema_ref() and S.name() != b.schema().name())
        return false;
    if (S.object_count() != b.schema().object_count() or S.generator_count() != b.schema().generator_count())
        return false;
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        if (a.row_count(o) != b.row_count(o))
            return false;
        for (RowIndex i = 0; i != a.row_count(o); ++i)
            if (a.row_id({o, i}) != b.row_id({o, i}))
                return false;
    }
    for (GenId g = 0; g != S.generator_count(); ++g) {
        auto x = a.column(g), y = b.column(g);
        if (not std::equal(x.begin(), x.end(), y.begin(), y.end()))
            return false;
    }
    return true;
}

bool catlift::isomorphic(const Instance &a, const Instance &b)
{
    const Schema &S = a.schema();
    if (S.object_count() != b.schema().object_count() or S.generator_count() != b.schema().generator_count())
        return false;
    for (ObjectId o = 0; o != S.object_count(); ++o)
        if (a.row_count(o) != b.row_count(o))
            return false;

    std::vector<Row> order;
    for (ObjectId o = 0; o != S.object_count(); ++o)
        for (RowIndex i = 0; i != a.row_count(o); ++i)
            order.push_back({o, i});
    constexpr RowIndex unset = ~RowIndex{0};
    std::vector<std::vector<RowIndex>> phi(S.object_count()), used(S.object_count());
    for (ObjectId o = 0; o != S.object_count(); ++o) {
        phi[o].assign(a.row_count(o), unset);
        used[o].assign(a.row_count(o), 0);
    }

    // Every generator touching an assigned row must agree once both of its ends are assigned.
    auto consistent = [&](Row r) {
        for (GenId g : S.outgoing(r.object)) {
            Row t = a.apply(g, r);
            if (phi[t.object][t.index] != unset and b.column(g)[phi[r.object][r.index]] != phi[t.object][t.index])
                return false;
        }
        for (GenId g = 0; g != S.generator_count(); ++g) {
            const auto &gen = S.generator(g);
            if (gen.target != r.object)
                continue;
            const auto col = a.column(g);
            for (RowIndex i = 0; i != col.size(); ++i)
                if (col[i] == r.index and phi[gen.source][i] != unset and
                    b.column(g)[phi[gen.source][i]] != phi[r.object][r.index])
                    return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t k) {
        if (k == order.size())
            return true;
        Row r = order[k];
        for (RowIndex c = 0; c != b.row_count(r.object); ++c) {
            if (used[r.object][c])
                continue;
            phi[r.object][r.index] = c;
            used[r.object][c] = 1;
            if (consistent(r) and search(k + 1))
                return true;
            used[r.object][c] = 0;
            phi[r.object][r.index] = unset;
        }
        return false;
    };
    return search(0);
}
