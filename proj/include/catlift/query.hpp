#pragma once

#include <catlift/solver.hpp>
#include <optional>
#include <string>
#include <vector>


namespace catlift {

/// SELECT (X, q), FROM (R, n) and WHERE (W, m, p).
struct Query
{
    std::string name;
    SquareInput square;
    std::optional<SchemaMorphism> select; ///< q : X -> R

    const SchemaMorphism & m() const { return square.constraint.m; }
    const SchemaMorphism & n() const { return square.constraint.n; }
};

struct ResultSet
{
    std::vector<Lift> lifts;
    std::vector<std::vector<Row>> projected; ///< `lifts[i] ∘ q` on X-objects, when a select leg is present
};

ResultSet run_query(const Query &Q, const Instance &delta, unsigned workers = 1);

/// Rows of `Δ_n δ` are the rows of `δ(n(r))` with the same indices.
struct ResultInstance
{
    Instance gamma;                             ///< constant instance on R, rows `l0, l1, ...`
    Instance pullback;                          ///< Δ_n δ
    std::vector<std::vector<RowIndex>> res;     ///< res[r][k] = ℓ_k(r) as a row of Δ_n δ(r)
};

ResultInstance result_instance(const Query &Q, const Instance &delta);

/// Components `α_a : source(a) -> target(a)` in S, one per object of the common domain A.
struct NaturalTransformation
{
    SchemaMorphism source;
    SchemaMorphism target;
    std::vector<Path> components;

    static NaturalTransformation identity(const SchemaMorphism &F);
};

/// Typing of components and `source(g) ; α_b = α_a ; target(g)` for every generator `g : a -> b`.
ValidationReport check_natural(const NaturalTransformation &alpha, std::size_t bound = DEFAULT_BOUND);

/// `β ∘ α` (first α, then β).
NaturalTransformation vertical(const NaturalTransformation &alpha, const NaturalTransformation &beta);

/// `α G : F ∘ G => F' ∘ G` for `G : A' -> A`.
NaturalTransformation whisker(const SchemaMorphism &G, const NaturalTransformation &alpha);

/** `Γ(f, π) : Γ(n2) -> Γ(n1)` for a strict morphism `f : R1 -> R2` with `n2 ∘ f = n1`; throws `TypingError` when
 * the triangle does not commute. */
std::vector<Lift> gamma_strict(const SchemaMorphism &f, const SchemaMorphism &n1, const SchemaMorphism &n2,
                               const std::vector<Lift> &lifts2, std::size_t bound = DEFAULT_BOUND);

/// Lifts of `n1` not in the image of `Γ(f)`; order preserved.
std::vector<Lift> subtract_image(const std::vector<Lift> &lifts1, const std::vector<Lift> &image);

/** Orbits of `Γ(s)` acting on `lifts` for an automorphism `s : R -> R` with `n ∘ s = n`: index lists into `lifts`,
 * each sorted, ordered by least member.  Throws `TypingError` unless `Γ(s)` permutes the set. */
std::vector<std::vector<std::size_t>> orbit_quotient(const SchemaMorphism &s, const SchemaMorphism &n,
                                                     const std::vector<Lift> &lifts,
                                                     std::size_t bound = DEFAULT_BOUND);

/// `ℓ2` and the connecting arrows `β_b` (source row `ℓ1(b)`, base path `α_b`).
struct TransportedLift
{
    Lift lift;
    std::vector<std::pair<Row, Path>> beta;
};

/// The unique lift of `α.target` reached from `ℓ1` (a lift of `α.source`) along `α`.
TransportedLift transport_lift(const Instance &delta, const Lift &l1, const NaturalTransformation &alpha);

/// `(G : A' -> A, α : F ∘ G => F')`.
struct ProbeMorphism
{
    SchemaMorphism G;
    NaturalTransformation alpha;
};

ValidationReport check_probe_morphism(const ProbeMorphism &pm, const SchemaMorphism &F,
                                      std::size_t bound = DEFAULT_BOUND);
/// `transport_lift(ℓ ∘ G, α)`.
Lift apply_probe_morphism(const ProbeMorphism &pm, const Lift &l, const Instance &delta);

/// `ℓ ∘ G` on objects.
Lift restrict_lift(const Lift &l, const SchemaMorphism &G);

/** A morphism of queries `Q -> Q'`: `F : R' -> R`, `G : W' -> W`, `α : n ∘ F => n'`, and `γ : p ∘ G => p'`
 * encoded by its base paths (one per W'-object). */
struct QueryMorphism
{
    SchemaMorphism F;
    SchemaMorphism G;
    NaturalTransformation alpha;
    std::vector<Path> gamma;
};

ValidationReport check_query_morphism(const QueryMorphism &qm, const Query &Q, const Query &Qp,
                                      const Instance &delta, std::size_t bound = DEFAULT_BOUND);

/** Completes `(F, G, α)` to the unique morphism into a query with data `(W', R', m', n')`: the binding `p'` is
 * `p ∘ G` transported along `α m'`, and `γ = α m'`.  `Qp.square.binding` is overwritten.  Throws `TypingError`
 * unless `m ∘ G = F ∘ m'`. */
QueryMorphism complete_query_morphism(const SchemaMorphism &F, const SchemaMorphism &G,
                                      const NaturalTransformation &alpha, const Query &Q, Query &Qp,
                                      const Instance &delta, std::size_t bound = DEFAULT_BOUND);

/// `ℓ ↦ transport_lift(ℓ ∘ F, α)`; throws `TypingError` if an image is not a solution of `Qp`.
std::vector<Lift> induced_result_map(const QueryMorphism &qm, const Query &Qp, const std::vector<Lift> &lifts,
                                     const Instance &delta);

QueryMorphism identity_query_morphism(const Query &Q);
/// `first : Q -> Q'`, `second : Q' -> Q''`.
QueryMorphism compose(const QueryMorphism &first, const QueryMorphism &second);

}
