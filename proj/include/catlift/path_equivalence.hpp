#pragma once

#include <catlift/schema.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>


namespace catlift {

enum class PathVerdict { Equal, Distinct, Inconclusive };

const char * to_string(PathVerdict v);

/** Bounded congruence closure.
 *
 * Explores the class of a path under the schema equations, applied in both directions at every position, visiting
 * only paths of length at most `bound` (raised to the length of the inputs if they are longer).  The class is
 * *saturated* when no rewrite was ever cut off by the bound or by `max_nodes`. */
struct ClosureLimits
{
    std::size_t bound = DEFAULT_BOUND;
    std::size_t max_nodes = 200'000;
};

struct ClosureSearch
{
    std::optional<std::size_t> hit; ///< index of the first target found
    bool saturated = false;
    std::size_t visited = 0;
};

/// Searches the class of `start` for any of `targets` (which must share its endpoints).
ClosureSearch search_path_class(const Schema &S, const Path &start, std::span<const Path> targets,
                                ClosureLimits limits = {});

/// Equal iff related by the bounded closure; Distinct iff the class of `p` saturated without reaching `q`.
PathVerdict paths_equal(const Schema &S, const Path &p, const Path &q, std::size_t bound = DEFAULT_BOUND);

/** Equivalence classes of paths out of one object, one representative per class (the first found in
 * breadth-first order, so representatives are shortest).  Throws `UnboundedError` when new classes still appear
 * at the bound, when there are more than `max_hom_classes` classes, or when a candidate can neither be identified
 * with nor separated from the known classes. */
inline constexpr std::size_t max_hom_classes = 4096;

class HomClasses
{
    const Schema *schema_;
    ObjectId source_;
    std::size_t bound_;
    std::vector<Path> reps_;
    std::vector<ObjectId> targets_;

    public:
    HomClasses(const Schema &S, ObjectId source, std::size_t bound = DEFAULT_BOUND);

    ObjectId source() const { return source_; }
    std::span<const Path> representatives() const { return reps_; }
    ObjectId target(std::size_t cls) const { return targets_.at(cls); }
    /// Class indices whose representative ends at `t`, in discovery order.
    std::vector<std::size_t> classes_to(ObjectId t) const;
    /// Index of the class containing `p`; throws `UnboundedError` if undecidable at the bound.
    std::size_t classify(const Path &p) const;
};

}
