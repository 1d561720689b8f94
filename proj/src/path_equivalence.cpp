#include <catlift/path_equivalence.hpp>

#include <algorithm>
#include <deque>
#include <unordered_set>


using namespace catlift;


namespace {

struct StepsHash
{
    std::size_t operator()(const std::vector<GenId> &v) const noexcept
    {
        std::size_t h = v.size();
        for (GenId g : v)
            h = h * 0x9e3779b97f4a7c15ULL + g + 1;
        return h;
    }
};

struct Rule
{
    ObjectId at;
    std::vector<GenId> from;
    std::vector<GenId> to;
};

std::vector<Rule> rules_of(const Schema &S)
{
    std::vector<Rule> rules;
    for (const auto &eq : S.equations()) {
        if (eq.lhs.steps == eq.rhs.steps)
            continue;
        rules.push_back({eq.lhs.source, eq.lhs.steps, eq.rhs.steps});
        rules.push_back({eq.lhs.source, eq.rhs.steps, eq.lhs.steps});
    }
    return rules;
}

}

const char * catlift::to_string(PathVerdict v)
{
    switch (v) {
        case PathVerdict::Equal: return "Equal";
        case PathVerdict::Distinct: return "Distinct";
        case PathVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ClosureSearch catlift::search_path_class(const Schema &S, const Path &start, std::span<const Path> targets,
                                         ClosureLimits limits)
{
    const ObjectId end = S.target(start);
    std::size_t bound = std::max(limits.bound, start.length());
    for (const auto &t : targets) {
        if (t.source != start.source or S.target(t) != end)
            throw TypingError("paths " + S.format(start) + " and " + S.format(t) + " do not share endpoints");
        bound = std::max(bound, t.length());
    }

    auto target_index = [&](const std::vector<GenId> &steps) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i != targets.size(); ++i)
            if (targets[i].steps == steps)
                return i;
        return std::nullopt;
    };

    ClosureSearch result;
    result.saturated = true;
    if (auto i = target_index(start.steps)) {
        result.hit = i;
        result.visited = 1;
        return result;
    }

    const auto rules = rules_of(S);
    std::unordered_set<std::vector<GenId>, StepsHash> seen{start.steps};
    std::deque<std::vector<GenId>> queue{start.steps};
    std::vector<ObjectId> at;

    while (not queue.empty()) {
        auto word = std::move(queue.front());
        queue.pop_front();
        ++result.visited;

        at.assign(1, start.source);
        for (GenId g : word)
            at.push_back(S.generator(g).target);

        for (const auto &rule : rules) {
            if (rule.from.size() > word.size())
                continue;
            const std::size_t new_length = word.size() - rule.from.size() + rule.to.size();
            for (std::size_t i = 0; i + rule.from.size() <= word.size(); ++i) {
                if (at[i] != rule.at or not std::equal(rule.from.begin(), rule.from.end(), word.begin() + i))
                    continue;
                if (new_length > bound) {
                    result.saturated = false;
                    continue;
                }
                std::vector<GenId> next;
                next.reserve(new_length);
                next.insert(next.end(), word.begin(), word.begin() + i);
                next.insert(next.end(), rule.to.begin(), rule.to.end());
                next.insert(next.end(), word.begin() + i + rule.from.size(), word.end());
                if (seen.contains(next))
                    continue;
                if (auto hit = target_index(next)) {
                    result.hit = hit;
                    return result;
                }
                if (seen.size() >= limits.max_nodes) {
                    result.saturated = false;
                    continue;
                }
                seen.insert(next);
                queue.push_back(std::move(next));
            }
        }
    }
    return result;
}

PathVerdict catlift::paths_equal(const Schema &S, const Path &p, const Path &q, std::size_t bound)
{
    if (not S.well_typed(p) or not S.well_typed(q))
        throw TypingError("paths_equal on ill-typed path");
    const Path targets[] = {q};
    auto search = search_path_class(S, p, targets, {.bound = bound});
    if (search.hit)
        return PathVerdict::Equal;
    return search.saturated ? PathVerdict::Distinct : PathVerdict::Inconclusive;
}


HomClasses::HomClasses(const Schema &S, ObjectId source, std::size_t bound)
    : schema_(&S), source_(source), bound_(bound)
{
    reps_.push_back(Path::identity(source));
    targets_.push_back(source);
    std::vector<std::size_t> frontier{0};

    for (std::size_t level = 1; not frontier.empty(); ++level) {
        if (level > bound)
            throw UnboundedError("hom-sets out of " + S.object_name(source) + " in schema " + S.name() +
                                 " keep growing at bound " + std::to_string(bound));
        std::vector<std::size_t> next;
        for (std::size_t cls : frontier) {
            for (GenId g : S.outgoing(targets_[cls])) {
                Path candidate = reps_[cls];
                candidate.steps.push_back(g);
                const ObjectId t = S.generator(g).target;

                std::vector<Path> same;
                for (std::size_t i = 0; i != reps_.size(); ++i)
                    if (targets_[i] == t)
                        same.push_back(reps_[i]);
                if (not same.empty()) {
                    auto search = search_path_class(S, candidate, same, {.bound = bound});
                    if (search.hit)
                        continue;
                    if (not search.saturated)
                        throw UnboundedError("cannot decide whether " + S.format(candidate) +
                                             " is a new morphism at bound " + std::to_string(bound));
                }
                if (reps_.size() == max_hom_classes)
                    throw UnboundedError("more than " + std::to_string(max_hom_classes) + " morphisms out of " +
                                         S.object_name(source) + " in schema " + S.name());
                reps_.push_back(std::move(candidate));
                targets_.push_back(t);
                next.push_back(reps_.size() - 1);
            }
        }
        frontier = std::move(next);
    }
}

std::vector<std::size_t> HomClasses::classes_to(ObjectId t) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i != reps_.size(); ++i)
        if (targets_[i] == t)
            out.push_back(i);
    return out;
}

std::size_t HomClasses::classify(const Path &p) const
{
    if (p.source != source_)
        throw TypingError("classify: path " + schema_->format(p) + " does not start at " +
                          schema_->object_name(source_));
    const auto candidates = classes_to(schema_->target(p));
    std::vector<Path> reps;
    for (auto c : candidates)
        reps.push_back(reps_[c]);
    auto search = search_path_class(*schema_, p, reps, {.bound = bound_});
    if (not search.hit)
        throw UnboundedError("path " + schema_->format(p) + " matches no enumerated morphism at bound " +
                             std::to_string(bound_));
    return candidates[*search.hit];
}
