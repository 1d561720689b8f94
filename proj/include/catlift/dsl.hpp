#pragma once

#include <catlift/instance.hpp>
#include <catlift/pattern.hpp>
#include <catlift/query.hpp>
#include <catlift/schema_morphism.hpp>
#include <catlift/solver.hpp>
#include <string>
#include <string_view>
#include <vector>


namespace catlift {

/// Schemas by name, in load order.
class SchemaLibrary
{
    std::vector<SchemaRef> schemas_;

    public:
    void add(SchemaRef S);
    void add(const std::vector<SchemaRef> &S);
    SchemaRef find(std::string_view name) const;
    /// Throws `TypingError` for unknown names.
    SchemaRef get(std::string_view name) const;
    std::span<const SchemaRef> all() const { return schemas_; }
};

/// `schema N { objects A B ; arrow f : A -> B ; eq A [f] = [g] }`, any number per text; `;` optional.
std::vector<SchemaRef> parse_schemas(std::string_view text, const std::string &file = "<input>");
std::vector<SchemaRef> load_schemas(const std::string &path);
std::string serialize_schema(const Schema &S);

struct NamedFunctor
{
    std::string name;
    SchemaMorphism F;
};

/// `functor F : S -> T { object A -> B ; arrow f -> [g h] }`, any number per text.
std::vector<NamedFunctor> parse_functors(std::string_view text, const SchemaLibrary &lib,
                                         const std::string &file = "<input>");
std::vector<NamedFunctor> load_functors(const std::string &path, const SchemaLibrary &lib);
std::string serialize_functor(const NamedFunctor &F);

/// Comma-separated cells, one row per line; no quoting.
Table parse_csv(std::string_view text, const std::string &file = "<input>");
std::string serialize_csv(const Table &t);

/// Reads `<Object>.csv` for every object of S; throws `ParseError` for missing files.
TableSet read_tables(const Schema &S, const std::string &dir);
Instance load_instance(const SchemaRef &S, const std::string &dir);
/// Writes `<Object>.csv` per object, creating `dir`.
void save_instance(const Instance &delta, const std::string &dir);

/// `morphism f : Q { result {..} onto {..} map {..} }`: a strict morphism `f : R -> R2` out of the result schema of
/// query `Q` with `n2 ∘ f = n`.  Without `result`/`onto`, `R2 = R` and `n2 = n`.
struct StrictMorphism
{
    std::string name;
    std::string query;
    SchemaMorphism f;
    SchemaMorphism n2;
};

struct QueryFile
{
    std::vector<Query> queries;
    std::vector<StrictMorphism> morphisms;

    /// Throws `TypingError` for unknown names.
    const Query & query(std::string_view name) const;
    const StrictMorphism & morphism(std::string_view name) const;
};

/** `query Q on S { result {..} onto {..} where {..} select {..} }`.  `where` holds W (objects, arrows, equations),
 * `embed` lines for m and `bind w -> (Object, id)` lines resolved against `delta`; `select` holds X and `map` lines
 * for q. */
QueryFile parse_queries(std::string_view text, const SchemaLibrary &lib, const Instance &delta,
                        const std::string &file = "<input>");
QueryFile load_queries(const std::string &path, const SchemaLibrary &lib, const Instance &delta);
std::string serialize_query(const Query &Q, const Instance &delta);
std::string serialize_morphism(const StrictMorphism &f);
std::string serialize_queries(const QueryFile &qf, const Instance &delta);

/// One line of a constraint file: a library builder with its arguments, or an explicit `lifting` block.
struct ConstraintDecl
{
    std::string builder; ///< `lifting` for explicit blocks
    std::vector<std::string> args;
    std::optional<LiftingConstraint> lifting;
    bool unique = false; ///< `constraint unique lifting N {..}` adds the uniqueness constraint
};

struct ConstraintFile
{
    SchemaRef schema;
    std::vector<ConstraintDecl> decls;

    ConstraintSet expand() const;
};

/** `constraint nonempty(T)`, `exactly_one(T)`, `at_most_one(T)`, `surjective(f)`, `injective(f)`,
 * `transitive(f, g)`, `reflexive(f, g)`, `symmetric(f, g)`, `product(T, f, g)`, `forest(node, parent)`, and
 * `constraint [unique] lifting N { W {..} R {..} m {..} n {..} }`, all over `S`. */
ConstraintFile parse_constraints(std::string_view text, const SchemaRef &S, const std::string &file = "<input>");
ConstraintFile load_constraints(const std::string &path, const SchemaRef &S);
std::string serialize_constraints(const ConstraintFile &cf);

/// One `(s p o)` per triple, then optional `types { term -> Object }` and `labels { Object -> arrow }` blocks.
GraphPattern parse_pattern(std::string_view text, const std::string &file = "<input>");
GraphPattern load_pattern(const std::string &path);
std::string serialize_pattern(const GraphPattern &gp);

}
