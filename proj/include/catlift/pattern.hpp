#pragma once

#include <catlift/query.hpp>
#include <map>
#include <string>
#include <vector>


namespace catlift {

/// A constant (`Bob`) or a variable (`?b`); variable names keep their `?`.
struct Term
{
    std::string name;

    bool variable() const { return not name.empty() and name.front() == '?'; }
    auto operator<=>(const Term&) const = default;
};

struct PatternTriple
{
    Term subject;
    Term predicate;
    Term object;
};

/** A basic graph pattern with its typing.  `types` maps a variable (`?b`) or a constant (`Cambridge`) to an object
 * name; `labels` maps an object name to the generator whose target row ID is the label of a row (default: the row
 * ID itself). */
struct GraphPattern
{
    std::vector<PatternTriple> triples;
    std::map<std::string, std::string> types;
    std::map<std::string, std::string> labels;
};

/** The lifting problem of a pattern.  W has one object per constant occurrence, R one object per variable and per
 * constant occurrence (in order of first appearance) and one generator per triple; `terms[r]` is the term behind
 * R-object `r`. */
struct CompiledPattern
{
    Query query;
    std::vector<Term> terms;
};

/** Predicates resolve to the generator of that name out of the subject's type, followed by the unique shortest
 * path to the object's type when the generator does not land there.  A predicate variable must be typed with an
 * edge object of a reified schema and becomes `(?x subject s) (?x object o)`.  Untyped constants take the type
 * forced by their predicate.  Throws `ReferentError` and `TypingError`. */
CompiledPattern compile_pattern(const GraphPattern &gp, const SchemaRef &S, const Instance &delta);

/** Edge reification: the schema gains one object `Src.gen` per generator, with generators `subject` and `object`
 * and the equation `[subject gen] = [object]`; each row `x` of `Src` gives the edge row `x` of `Src.gen`. */
struct Reified
{
    SchemaRef schema;
    Instance instance;
    std::vector<ObjectId> edge_object; ///< per original generator
};

/// Throws `TypingError` when the schema has equations.
Reified reify_edges(const Instance &delta);

/// One answer per solution: the value of every variable, in order of first appearance.
struct PatternAnswers
{
    std::vector<std::string> variables;
    std::vector<std::vector<std::string>> rows; ///< `(Object,id)` per variable
};

/** Evaluates a pattern.  Untyped predicate variables are expanded over every compatible edge object of the reified
 * instance; answers are concatenated in generator order. */
PatternAnswers match_pattern(const GraphPattern &gp, const SchemaRef &S, const Instance &delta,
                             unsigned workers = 1);

}
