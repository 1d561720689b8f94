#pragma once

#include <catlift/constructions.hpp>
#include <catlift/instance.hpp>
#include <optional>
#include <string>
#include <vector>


namespace catlift {

/// `(m : W -> R, n : R -> S)`.
struct LiftingConstraint
{
    SchemaMorphism m;
    SchemaMorphism n;
    std::string label;
};

/// Constraints over one schema, plus optional universal generators `M` (each `m : W -> R`, with every `n` implied).
struct ConstraintSet
{
    std::vector<LiftingConstraint> constraints;
    std::vector<SchemaMorphism> universal;
};

/// A lift `ℓ : R -> ∫δ`, given by its rows; `assignment[r]` lies in table `n(r)`.
struct Lift
{
    std::vector<Row> assignment;

    auto operator<=>(const Lift&) const = default;
};

/// A commuting square: the constraint and a binding `p` of every W-object to a row.
struct SquareInput
{
    LiftingConstraint constraint;
    std::vector<Row> binding;
};

/// The square of a where-less query on `n` (W empty).
SquareInput where_less(const SchemaMorphism &n);

/// Throws `TypingError` unless the morphisms line up, `n` lands in `δ`'s schema and `p` commutes.
void check_square(const SquareInput &sq, const Instance &delta);

/** All lifts, sorted by R-object declaration order then row order.  Backtracking over R-objects seeded by the
 * binding; generator transport is propagated forward.  With `workers > 1` the first level of the search is split
 * across threads; the result is identical. */
std::vector<Lift> enumerate_lifts(const SquareInput &sq, const Instance &delta, unsigned workers = 1);

/// The limit formula computed naively: every object assignment, filtered by generators and the binding.
std::vector<Lift> enumerate_lifts_oracle(const SquareInput &sq, const Instance &delta);

/// True iff `l` is a lift for `sq` (typing, generator transport, agreement with the binding).
bool is_lift(const SquareInput &sq, const Instance &delta, const Lift &l);

struct ConstraintVerdict
{
    std::optional<SquareInput> witness; ///< first binding without a lift
    std::size_t squares = 0;            ///< number of bindings examined

    bool satisfied() const { return not witness; }
};

/// Every binding `p : W -> ∫δ` over `n ∘ m` (enumerated exhaustively) must admit a lift.
ConstraintVerdict check_constraint(const Instance &delta, const LiftingConstraint &c);

/// `W`-object name to `(Object,id)` for a witness.
std::vector<std::pair<std::string, std::string>> describe_binding(const SquareInput &sq, const Instance &delta);

struct ConstraintSetReport
{
    std::vector<std::pair<std::string, ConstraintVerdict>> results;

    bool satisfied() const;
};

ConstraintSetReport check_constraint_set(const Instance &delta, const ConstraintSet &xi, std::size_t bound = DEFAULT_BOUND);

/** `[M]`: for every `m : W -> R` in `M` and every functor `n : R -> S` (enumerated over `materialize(S)`), the
 * constraint `(m, n)`.  Throws `UnboundedError` if S does not materialize. */
ConstraintSetReport check_universal(const Instance &delta, const std::vector<SchemaMorphism> &M,
                                    std::size_t bound = DEFAULT_BOUND);

/// Every functor `R -> S` of presentations, as morphisms sending generators to representative paths.
std::vector<SchemaMorphism> enumerate_schema_morphisms(const SchemaRef &R, const SchemaRef &S,
                                                       std::size_t bound = DEFAULT_BOUND);

/// The empty presentation.
SchemaRef empty_schema();

// Constraint library.  Object and generator arguments are names in `S` (`Source.name` or a unique bare name).
LiftingConstraint nonempty(const SchemaRef &S, std::string_view T);
LiftingConstraint at_most_one(const SchemaRef &S, std::string_view T);
ConstraintSet exactly_one(const SchemaRef &S, std::string_view T);
LiftingConstraint surjective_fk(const SchemaRef &S, std::string_view f);
LiftingConstraint injective_fk(const SchemaRef &S, std::string_view f);
/// Relation `f, g : rel -> A`.
LiftingConstraint transitive(const SchemaRef &S, std::string_view f, std::string_view g);
LiftingConstraint reflexive(const SchemaRef &S, std::string_view f, std::string_view g);
LiftingConstraint symmetric(const SchemaRef &S, std::string_view f, std::string_view g);
/// Existence and uniqueness of the product cone `f : T -> U`, `g : T -> V`.
ConstraintSet product(const SchemaRef &S, std::string_view T, std::string_view f, std::string_view g);
/// `W` free on `ν1 ⇄ ν2`, `R` the loop `p : ν -> ν`, `n(ν) = node`, `n(p) = parent`.
LiftingConstraint forest(const SchemaRef &S, std::string_view node, std::string_view parent);

/// `(R ⊔_W R -> R, n)`: the fold map of the pushout of `m` with itself.
LiftingConstraint uniqueness_of(const LiftingConstraint &c);

}
