#pragma once

#include <catlift/concrete.hpp>
#include <catlift/instance.hpp>
#include <functional>
#include <optional>
#include <string>
#include <vector>


namespace catlift {

/// One non-ID cell of an instance: `subject --predicate--> object` in the category of elements.
struct Triple
{
    Row subject;
    GenId predicate;
    Row object;

    auto operator<=>(const Triple&) const = default;
};

/// One triple per (row, outgoing generator), ordered by object declaration, row, generator.
std::vector<Triple> grothendieck_triples(const Instance &delta);

/// `<(Object,id)> <generator> <(Object,id)> .`
std::string format_ntriple(const Instance &delta, const Triple &t);
/// `{"object":"(Object,id)","predicate":"generator","subject":"(Object,id)"}`
std::string format_json_triple(const Instance &delta, const Triple &t);

/** The base category used for `∫δ`: `materialize(S)` when every hom-set saturates, otherwise the quotient of the
 * path category of S that identifies paths acting identically on δ (finite because δ is).  Either way the
 * presentation S is attached, so generators and representatives are available. */
ConcreteRef grothendieck_base(const Instance &delta, std::size_t bound = DEFAULT_BOUND);

/** `π : ∫δ -> base`.  Objects of `∫δ` are the rows, named by their row IDs, in object declaration and row order;
 * morphisms are pairs (row, base morphism out of its table). */
ConcreteFunctor grothendieck_concrete(const Instance &delta, std::size_t bound = DEFAULT_BOUND);

/// A failing `ρ1` (no lift) or `ρ2` (several lifts) square: domain object `x` and base morphism `f` out of `F(x)`.
struct FibrationWitness
{
    int rule;
    ObjectId x;
    MorphId f;
};

struct FibrationVerdict
{
    std::optional<FibrationWitness> witness;

    bool yes() const { return not witness; }
    std::string describe(const ConcreteFunctor &F) const;
};

/// Unique lifting of every base morphism out of the image of every object; first failure in (x, f) order.
FibrationVerdict is_relational_fibration(const ConcreteFunctor &F);

/// No non-identity morphism of the domain lies over an identity.
ValidationReport check_discrete_fibers(const ConcreteFunctor &F);
/// Every `Hom(i, j) -> Hom(F i, F j)` is injective.
ValidationReport check_faithful(const ConcreteFunctor &F);
/// Every span `a : i -> j`, `b : i -> k` with a base `h : F j -> F k`, `F a ; h = F b` has a filler over `h`.
ValidationReport check_triangle_filler(const ConcreteFunctor &F);

/** `∂` on relational fibrations: rows of `s` are the fiber over `s` (named after the domain objects), columns are
 * unique transport.  The instance lives on the base's attached presentation, or on `present(base)` otherwise.
 * Throws `NotAFibration`. */
Instance fibers_to_instance(const ConcreteFunctor &F);

/** Functors `P -> I` lying over a given `base : P -> B` through `F : I -> B`, optionally agreeing with fixed
 * object and generator images.  Exhaustive backtracking; used for Def.-level constraint checks on concrete functors
 * that need not be fibrations. */
struct ConcreteLiftProblem
{
    const Schema *P;
    const ConcreteFunctor *F;
    PresentedFunctor base;
    std::vector<std::optional<ObjectId>> fixed_objects;
    std::vector<std::optional<MorphId>> fixed_generators;
    std::function<bool(const PresentedFunctor&)> accept;
};
std::vector<PresentedFunctor> concrete_lifts(const ConcreteLiftProblem &problem, std::size_t limit = 0);

/// A failing square of a concrete-level constraint: the base functor `n` and the binding `p`.
struct ConcreteSquare
{
    PresentedFunctor n;
    PresentedFunctor p;
};

/** Checks the constraint `m : W -> R` against `F : I -> B` for every `n : R -> B`: every `p : W -> I` over
 * `n ∘ m` must extend to a lift.  Returns the first failing square. */
std::optional<ConcreteSquare> check_concrete_constraint(const ConcreteFunctor &F, const SchemaMorphism &m);

/// ρ1: `{a} -> {a -f-> b}`.
SchemaMorphism rho1();
/// ρ2: `{a; f1 : a -> b1, f2 : a -> b2} -> {a -f-> b}` collapsing `b1, b2` to `b`.
SchemaMorphism rho2();

}
