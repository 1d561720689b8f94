#pragma once

#include <catlift/schema_morphism.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>


namespace catlift {

using MorphId = std::uint32_t;

struct Morphism
{
    ObjectId dom;
    ObjectId cod;
    std::string name;
};

/** A fully materialized finite category: explicit hom-sets, identities and composition table.
 *
 * When the category was produced from a presentation, `presentation()` points at it, every morphism carries a
 * representative path and every generator names its morphism, so instances on the presentation can be read off
 * the category and back. */
class ConcreteCategory
{
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorphId> identity_;
    std::vector<std::vector<MorphId>> out_;  ///< morphisms by domain
    std::vector<std::uint32_t> out_pos_;     ///< position of a morphism in out_[dom]
    std::vector<std::vector<MorphId>> table_; ///< table_[f][out_pos_[g]] = f then g

    SchemaRef presentation_;
    std::vector<Path> representatives_;
    std::vector<MorphId> generator_morphisms_;

    public:
    /// `compose(f, g)` must return `f` then `g` for every composable pair; validated with `check_axioms`.
    ConcreteCategory(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                     std::vector<MorphId> identities, const std::function<MorphId(MorphId, MorphId)> &compose);

    const std::string & name() const { return name_; }
    std::size_t object_count() const { return objects_.size(); }
    const std::string & object_name(ObjectId o) const { return objects_.at(o); }
    std::optional<ObjectId> find_object(std::string_view name) const;
    std::size_t morphism_count() const { return morphisms_.size(); }
    const Morphism & morphism(MorphId f) const { return morphisms_.at(f); }
    MorphId identity(ObjectId o) const { return identity_.at(o); }
    bool is_identity(MorphId f) const { return identity_.at(morphisms_.at(f).dom) == f; }
    std::span<const MorphId> out(ObjectId o) const { return out_.at(o); }
    std::vector<MorphId> hom(ObjectId a, ObjectId b) const;
    /// `f` then `g`; throws `TypingError` if not composable.
    MorphId compose(MorphId f, MorphId g) const;

    /// Associativity and unit laws, checked exhaustively.
    ValidationReport check_axioms() const;

    const SchemaRef & presentation() const { return presentation_; }
    /// Representative path of a morphism (only when materialized from a presentation).
    const Path & representative(MorphId f) const { return representatives_.at(f); }
    MorphId generator_morphism(GenId g) const { return generator_morphisms_.at(g); }
    void attach_presentation(SchemaRef S, std::vector<Path> representatives, std::vector<MorphId> generators);
};

using ConcreteRef = std::shared_ptr<const ConcreteCategory>;

/// A functor between concrete categories, given on objects and on every morphism.
struct ConcreteFunctor
{
    ConcreteRef domain;
    ConcreteRef codomain;
    std::vector<ObjectId> object_map;
    std::vector<MorphId> morphism_map;
};

/// Typing, identity preservation and composition preservation.
ValidationReport check_concrete_functor(const ConcreteFunctor &F);

/** Materializes a presentation: hom-sets are path classes out of each object, composition is concatenation of
 * representatives.  Throws `UnboundedError` when some hom-set does not saturate at `bound` (e.g. a free loop). */
ConcreteRef materialize(const SchemaRef &S, std::size_t bound = DEFAULT_BOUND);

/** A presentation of a concrete category: one generator per non-identity morphism, one equation per composite.
 * Generator `i` of the result presents the `i`-th non-identity morphism. */
struct CategoryPresentation
{
    SchemaRef schema;
    std::vector<MorphId> generator_morphisms;
    std::vector<std::optional<GenId>> morphism_generators;
};
CategoryPresentation present(const ConcreteCategory &C);

/** A functor from a presentation into a concrete category: objects, and one morphism per generator. */
struct PresentedFunctor
{
    std::vector<ObjectId> objects;
    std::vector<MorphId> generators;

    MorphId evaluate(const Schema &P, const ConcreteCategory &C, const Path &p) const;
    auto operator<=>(const PresentedFunctor&) const = default;
};

/// Enumerates every functor `P -> C` in lexicographic order (objects first, then generators).
std::vector<PresentedFunctor> enumerate_functors(const Schema &P, const ConcreteCategory &C);

/// True iff the assignment is well typed and respects the equations of `P`.
bool is_functor(const Schema &P, const ConcreteCategory &C, const PresentedFunctor &F);

}
