#pragma once

#include <catlift/concrete.hpp>
#include <catlift/query.hpp>
#include <optional>
#include <string>
#include <vector>


namespace catlift {

enum class MigrationMode { Delta, Sigma, Pi };

struct MigrationRequest
{
    SchemaMorphism F;
    MigrationMode mode;
    std::size_t bound = DEFAULT_BOUND;
};

/// `ε ∘ F`: rows of `s` are the rows of `F(s)` (same IDs and order), columns are `eval_path(ε, F(g))`.
Instance delta(const SchemaMorphism &F, const Instance &epsilon);

/// `Σ_F δ` together with the unit `η_c : δ(c) -> Σ_F δ(F c)`.
struct SigmaResult
{
    Instance instance;
    std::vector<std::vector<RowIndex>> unit;
};

/** Colimit over `(F ↓ d)` for every `d`, by union-find over `(c, [f : F c -> d], x)`; row IDs are
 * `c:x:[f]` of the least member of each class.  Throws `UnboundedError` when hom-sets out of some `F(c)` do not
 * saturate. */
SigmaResult sigma(const SchemaMorphism &F, const Instance &delta, std::size_t bound = DEFAULT_BOUND);

/** Limit over `(d ↓ F)`: rows of `d` are the lifts of the where-less query `n_d : (d ↓ F) -> S`, with IDs
 * `{c:[f]=x|...}` sorted by comma-object name; columns by the induced strict morphisms. */
Instance pi(const SchemaMorphism &F, const Instance &delta, std::size_t bound = DEFAULT_BOUND);

Instance migrate(const MigrationRequest &req, const Instance &input);

/** `∂` for an arbitrary concrete functor `F : I -> B`: `Σ_F` of the terminal instance, i.e. the connected
 * components of `(F | d)` for every `d`, computed in the finite categories.  Rows are named `i:*:[f]` after the
 * least element; the instance lives on the attached presentation of B if any, else on `present(B)`. */
Instance partial(const ConcreteFunctor &F);

/// Every natural transformation `a -> b` between instances on the same schema, counted by backtracking.
std::size_t count_instance_morphisms(const Instance &a, const Instance &b);

/// Per-object functions `h_c : δ(c) -> ε(F c)` commuting with the columns (a morphism `∫δ -> ∫ε` over F).
using FiberMap = std::vector<std::vector<RowIndex>>;

ValidationReport check_fiber_map(const SchemaMorphism &F, const Instance &delta, const Instance &epsilon,
                                 const FiberMap &h);

struct MappedQuery
{
    Query query;              ///< `(W, R, m, F ∘ n, h ∘ p)` on ε
    std::vector<Lift> images; ///< `h ∘ ℓ` for every solution ℓ of the original query, in order
};

/// Pushes a query on δ along `h` and maps each solution; throws `TypingError` if `h` is not a fiber map.
MappedQuery map_query_along_sigma(const SchemaMorphism &F, const Instance &delta, const Instance &epsilon,
                                  const FiberMap &h, const Query &Q);

struct InvarianceReport
{
    std::size_t pulled = 0; ///< solutions over Δ_F ε
    std::size_t pushed = 0; ///< solutions of the induced query over ε
    bool bijective = false;
};

/// Compares solutions of `Q` over `Δ_F ε` with those of `(W, R, m, F ∘ n, p)` over ε, elementwise.
InvarianceReport query_invariance_under_delta(const SchemaMorphism &F, const Instance &epsilon, const Query &Q);

}
