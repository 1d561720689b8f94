#pragma once

#include <catlift/errors.hpp>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>


namespace catlift {

using ObjectId = std::uint32_t;
using GenId = std::uint32_t;

/// Default length bound for path-equivalence closure and hom-set enumeration.
inline constexpr std::size_t DEFAULT_BOUND = 16;

/// An arrow generator `name : source -> target`.  Names are unique per source object.
struct Generator
{
    std::string name;
    ObjectId source;
    ObjectId target;
};

/// A path in a presentation: a source object followed by a (possibly empty) sequence of generators.  The empty
/// path is the identity on `source`.
struct Path
{
    ObjectId source = 0;
    std::vector<GenId> steps;

    static Path identity(ObjectId o) { return Path{o, {}}; }

    bool empty() const { return steps.empty(); }
    std::size_t length() const { return steps.size(); }

    auto operator<=>(const Path&) const = default;
    bool operator==(const Path&) const = default;
};

struct Equation
{
    Path lhs;
    Path rhs;
};

/** A finitely presented category: objects, arrow generators, and path equations.
 *
 * Immutable after construction.  Object declaration order fixes every deterministic enumeration order in the
 * engine.  Schemas are passed around as `SchemaRef` so that instances, morphisms and queries can share them. */
class Schema
{
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Generator> generators_;
    std::vector<Equation> equations_;
    std::unordered_map<std::string, ObjectId> object_index_;
    std::vector<std::vector<GenId>> outgoing_;

    public:
    /// Validates names, generator endpoints and equation typing; throws `TypingError`.
    Schema(std::string name, std::vector<std::string> objects, std::vector<Generator> generators,
           std::vector<Equation> equations);

    const std::string & name() const { return name_; }

    std::size_t object_count() const { return objects_.size(); }
    std::span<const std::string> objects() const { return objects_; }
    const std::string & object_name(ObjectId o) const { return objects_.at(o); }
    std::optional<ObjectId> find_object(std::string_view name) const;
    /// Like `find_object` but throws `TypingError` for unknown names.
    ObjectId object(std::string_view name) const;

    std::size_t generator_count() const { return generators_.size(); }
    std::span<const Generator> generators() const { return generators_; }
    const Generator & generator(GenId g) const { return generators_.at(g); }
    std::optional<GenId> find_generator(ObjectId source, std::string_view name) const;
    /// Resolves `Source.name`, or a bare `name` when it is unique across the schema.
    GenId generator(std::string_view reference) const;
    /// Qualified name `Source.name`.
    std::string generator_label(GenId g) const;
    std::span<const GenId> outgoing(ObjectId o) const { return outgoing_.at(o); }

    std::span<const Equation> equations() const { return equations_; }

    bool well_typed(const Path &p) const;
    /// Target object of a well-typed path; throws `TypingError` otherwise.
    ObjectId target(const Path &p) const;
    /// Builds a path from generator names, resolving each step against the current object.
    Path path(std::string_view source, std::initializer_list<std::string_view> steps) const;
    Path path(std::string_view source, std::span<const std::string> steps) const;
    Path single(GenId g) const { return Path{generator(g).source, {g}}; }

    /// `[f g]` (generator names only), `[]` for identities.
    std::string format_steps(const Path &p) const;
    /// `Source [f g]`.
    std::string format(const Path &p) const;
};

using SchemaRef = std::shared_ptr<const Schema>;

/// Accumulates a presentation by name and validates it once in `build()`.
class SchemaBuilder
{
    std::string name_;
    std::vector<std::string> objects_;
    struct PendingArrow { std::string name, source, target; };
    struct PendingEquation { std::string source; std::vector<std::string> lhs, rhs; };
    std::vector<PendingArrow> arrows_;
    std::vector<PendingEquation> equations_;

    public:
    explicit SchemaBuilder(std::string name) : name_(std::move(name)) { }

    SchemaBuilder & object(std::string name);
    SchemaBuilder & objects(std::initializer_list<std::string_view> names);
    SchemaBuilder & arrow(std::string name, std::string source, std::string target);
    SchemaBuilder & equation(std::string source, std::vector<std::string> lhs, std::vector<std::string> rhs);

    SchemaRef build() const;
};

/// Concatenation `p` then `q`; throws `TypingError` if `target(p) != source(q)`.
Path compose_paths(const Schema &S, const Path &p, const Path &q);

/// The discrete presentation on the given object names.
SchemaRef discrete_schema(std::string name, const std::vector<std::string> &objects);

}
