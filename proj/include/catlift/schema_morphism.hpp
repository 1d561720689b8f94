#pragma once

#include <catlift/path_equivalence.hpp>
#include <catlift/schema.hpp>
#include <string>
#include <vector>


namespace catlift {

/// Problems found by one of the validators; empty means valid.
struct ValidationReport
{
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
    void add(std::string p) { problems.push_back(std::move(p)); }
};

/** A functor between presentations: objects to objects, generators to paths.
 *
 * Construction does not validate; call `check_functor` (or `validated`) before relying on typing. */
struct SchemaMorphism
{
    SchemaRef domain;
    SchemaRef codomain;
    std::vector<ObjectId> object_map;
    std::vector<Path> generator_map;

    ObjectId operator()(ObjectId o) const { return object_map.at(o); }
    /// Image of a domain path: concatenation of generator images.
    Path apply(const Path &p) const;
    Path apply_generator(GenId g) const { return generator_map.at(g); }

    static SchemaMorphism identity(SchemaRef S);
    /// The unique morphism out of the empty presentation.
    static SchemaMorphism from_empty(SchemaRef empty, SchemaRef codomain);
};

/// Builds a morphism from names: `objects` maps object names, `arrows` maps generator references to step lists.
SchemaMorphism make_morphism(SchemaRef domain, SchemaRef codomain,
                             const std::vector<std::pair<std::string, std::string>> &objects,
                             const std::vector<std::pair<std::string, std::vector<std::string>>> &arrows);

/// Typing violations and equations whose images are not provably equal at `bound`.
ValidationReport check_functor(const SchemaMorphism &F, std::size_t bound = DEFAULT_BOUND);

/// Throws `TypingError` with the first problem unless `check_functor` passes.
const SchemaMorphism & validated(const SchemaMorphism &F, std::size_t bound = DEFAULT_BOUND);

/// `G` after `F` (first `F : A -> B`, then `G : B -> C`).
SchemaMorphism compose(const SchemaMorphism &F, const SchemaMorphism &G);

/// True iff both send every object to the same object and every generator to provably equal paths.
bool morphisms_equal(const SchemaMorphism &F, const SchemaMorphism &G, std::size_t bound = DEFAULT_BOUND);

}
