#pragma once

#include <catlift/schema_morphism.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>


namespace catlift {

using RowIndex = std::uint32_t;

/// An object of the category of elements: a table and a row position in it.
struct Row
{
    ObjectId object = 0;
    RowIndex index = 0;

    auto operator<=>(const Row&) const = default;
};

/// Raw tables keyed by object name: header `id,<gen>...` and string cells.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
using TableSet = std::map<std::string, Table>;

/** A set-valued functor on a presentation, stored as typed row tables.
 *
 * Rows of each object are ordered by insertion; row IDs are unique per table.  Every column is a total function
 * into the rows of the generator's target.  Equations are *not* enforced on construction, so that
 * `validate_instance` can report violating rows. */
class Instance
{
    SchemaRef schema_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::vector<RowIndex>> columns_;
    std::vector<std::unordered_map<std::string, RowIndex>> index_;

    public:
    /// Throws `InstanceError` on duplicate IDs, wrong column sizes or out-of-range values.
    Instance(SchemaRef S, std::vector<std::vector<std::string>> rows, std::vector<std::vector<RowIndex>> columns);

    /// Resolves string cells; throws `InstanceError` on missing tables, bad headers, nulls or dangling values.
    static Instance from_tables(SchemaRef S, const TableSet &tables);
    /// Shorthand for tests and tools: per object, rows given as `{id, value-of-gen1, ...}`.
    static Instance from_rows(SchemaRef S,
                              const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> &tables);
    /// Empty tables everywhere.
    static Instance empty(SchemaRef S);

    const Schema & schema() const { return *schema_; }
    const SchemaRef & schema_ref() const { return schema_; }

    std::size_t row_count(ObjectId o) const { return rows_.at(o).size(); }
    std::size_t total_rows() const;
    std::span<const std::string> row_ids(ObjectId o) const { return rows_.at(o); }
    const std::string & row_id(Row r) const { return rows_.at(r.object).at(r.index); }
    std::optional<Row> find_row(ObjectId o, std::string_view id) const;
    /// Like `find_row` but throws `InstanceError`.
    Row row(std::string_view object, std::string_view id) const;

    std::span<const RowIndex> column(GenId g) const { return columns_.at(g); }
    Row apply(GenId g, Row r) const;

    /// The table set that reproduces this instance byte for byte.
    TableSet to_tables() const;
    /// `(Object,id)`.
    std::string format(Row r) const;
};

/// Dangling references, nulls, header mismatches and per-row equation violations.
ValidationReport validate_tables(const Schema &S, const TableSet &tables);
/// Per-row equation violations.
ValidationReport validate_instance(const Instance &delta);

/// The function `rows(source(p)) -> rows(target(p))` obtained by composing columns; identity for `[]`.
std::vector<RowIndex> eval_path(const Instance &delta, const Path &p);

/// The unique lift of `p` starting at `r`.
Row transport(const Instance &delta, Row r, const Path &p);

/// Same schema, same row IDs in the same order, same columns.
bool identical(const Instance &a, const Instance &b);

/// Equal up to renaming of row IDs and reordering of rows, decided by canonical relabelling search.
bool isomorphic(const Instance &a, const Instance &b);

}
