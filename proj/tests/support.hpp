#pragma once

#include <catlift/cli.hpp>
#include <catlift/concrete.hpp>
#include <catlift/constructions.hpp>
#include <catlift/dsl.hpp>
#include <catlift/fibration.hpp>
#include <catlift/instance.hpp>
#include <catlift/migration.hpp>
#include <catlift/path_equivalence.hpp>
#include <catlift/pattern.hpp>
#include <catlift/query.hpp>
#include <catlift/schema.hpp>
#include <catlift/solver.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>


namespace support {

using namespace catlift;

std::string fixture(const std::string &relative);

struct Loaded
{
    SchemaLibrary lib;
    SchemaRef schema;
    Instance instance;
};

/// `<dir>/schema.cat` (first schema) and the tables in `<dir>/<instance>`.
Loaded load(const std::string &dir, const std::string &instance = "instance");

struct CliRun
{
    int status;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string> &args);

using Rng = std::mt19937;

/** A random presentation on `objects` objects with about `arrows` generators.  With `acyclic`, generators only go
 * from lower to higher object indices, so every hom-set is finite. */
SchemaRef random_schema(Rng &rng, const std::string &name, std::size_t objects, std::size_t arrows, bool acyclic);

/// Random tables with 0..max_rows rows (at least one row when a generator points into the table).
Instance random_instance(Rng &rng, const SchemaRef &S, std::size_t max_rows);

/// The same instance on a copy of S extended with up to `count` random equations that hold in it.
Instance with_true_equations(Rng &rng, const Instance &delta, std::size_t count);

/// A random path of length at most `max_len` from `from` to `to`, if one is found.
std::optional<Path> random_path(Rng &rng, const Schema &S, ObjectId from, ObjectId to, std::size_t max_len);

/// A random functor `R -> S` for a presentation R without equations; nullopt if generators cannot be mapped.
std::optional<SchemaMorphism> random_morphism(Rng &rng, const SchemaRef &R, const SchemaRef &S, std::size_t max_len);

/// Row IDs of a lift, in R-object order.
std::vector<std::string> ids(const Instance &delta, const Lift &l);

std::set<std::vector<std::string>> id_set(const Instance &delta, const std::vector<Lift> &lifts);

/// The morphism of C named by a path of its attached presentation.
MorphId morphism_of(const ConcreteCategory &C, const Path &p);

/// Every binding `W -> ∫δ` over `n ∘ m`, by filtering the Cartesian product of rows.
std::vector<std::vector<Row>> all_bindings(const SchemaMorphism &m, const SchemaMorphism &n, const Instance &delta);

/// Colimit formula for `Σ_F δ` over materialized (finite) S and T, with arbitrary row names.
Instance brute_sigma(const SchemaMorphism &F, const Instance &delta);

/// Limit formula for `Π_F δ` over materialized (finite) S and T, with arbitrary row names.
Instance brute_pi(const SchemaMorphism &F, const Instance &delta);

struct Coproduct
{
    SchemaRef schema;
    SchemaMorphism left;
    SchemaMorphism right;
};

Coproduct coproduct(const SchemaRef &A, const SchemaRef &B);

/// `[f, g] : A + B -> C`.
SchemaMorphism copair(const Coproduct &P, const SchemaMorphism &f, const SchemaMorphism &g);

/** A random where-less or single-binding query over δ with at most `max_objects` R-objects.  The binding is
 * taken from an existing lift when there is one. */
std::optional<Query> random_query(Rng &rng, const Instance &delta, std::size_t max_objects, bool with_where);

struct RandomQueryMorphism
{
    Query target;
    QueryMorphism morphism;
};

/** A random morphism out of `Q`: either `α = id` over an arbitrary `F : R' -> R`, or a discrete R' with random path
 * components.  `W'` is empty or one object over a W-object of `Q`; the binding comes from completion. */
std::optional<RandomQueryMorphism> random_query_morphism(Rng &rng, const Query &Q, const Instance &delta);


/// A functor between materialized presentations, given on objects by name and on generators by target generator.
ConcreteFunctor functor_of(const SchemaRef &I, const SchemaRef &B, const std::vector<std::string> &objects,
                           const std::vector<std::string> &generators);

/// Same object names in the same order, same object map, and the same morphisms up to naming.
bool same_functor(const ConcreteFunctor &F, const ConcreteFunctor &G);

}
