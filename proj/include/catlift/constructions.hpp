#pragma once

#include <catlift/schema_morphism.hpp>
#include <string>
#include <vector>


namespace catlift {

/// A pushout of presentations together with its two cocone legs.
struct PushoutPresentation
{
    SchemaRef schema;
    SchemaMorphism left;  ///< R1 -> P
    SchemaMorphism right; ///< R2 -> P
};

/** Pushout of `m1 : W -> R1` and `m2 : W -> R2`.
 *
 * Objects are the union-find classes of R1 + R2 under the identifications `m1(w) ~ m2(w)`; each class is named
 * after its least member (R1 objects precede R2 objects), tagged `_1`/`_2` when the name occurs on both sides.
 * Generators are the disjoint union of both sides, tagged the same way.  Equations are both translated equation
 * sets plus `left(m1(g)) = right(m2(g))` for every W-generator. */
PushoutPresentation pushout_presentation(const SchemaMorphism &m1, const SchemaMorphism &m2);

/** The comma category `(d | F)` for `F : S -> T` with its projection `n_d : (d | F) -> S`.
 *
 * Objects are pairs `(c, [f])` with `f : d -> F(c)` one class of T-morphisms, listed by S-object and then by
 * class discovery order.  Generators lift the S-generators, equations lift the S-equations; the projection is
 * therefore a relational fibration over S. */
struct CommaCategory
{
    SchemaRef schema;
    SchemaMorphism projection;
    std::vector<ObjectId> source_object; ///< c for each comma object
    std::vector<Path> morphism;          ///< representative of [f] for each comma object
};

/// Throws `UnboundedError` if the T-morphisms out of `d` do not saturate at `bound`.
CommaCategory comma_category(const SchemaMorphism &F, ObjectId d, std::size_t bound = DEFAULT_BOUND);

/// `C_k`: a key object `K`, leaves `c1..ck`, generators `f1..fk : K -> ci`.
SchemaRef column_table_schema(std::size_t k);

/// `C(h) : C_k' -> C_k` for a column map `h : {1..k'} -> {1..k}` (given zero-based).
SchemaMorphism column_map(const SchemaRef &small, const SchemaRef &large, const std::vector<std::size_t> &h);

}
