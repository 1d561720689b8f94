#include <catlift/schema.hpp>

#include <sstream>


using namespace catlift;


Schema::Schema(std::string name, std::vector<std::string> objects, std::vector<Generator> generators,
               std::vector<Equation> equations)
    : name_(std::move(name))
    , objects_(std::move(objects))
    , generators_(std::move(generators))
    , equations_(std::move(equations))
{
    for (ObjectId o = 0; o != objects_.size(); ++o) {
        if (objects_[o].empty())
            throw TypingError("schema " + name_ + ": empty object name");
        if (not object_index_.emplace(objects_[o], o).second)
            throw TypingError("schema " + name_ + ": duplicate object " + objects_[o]);
    }

    outgoing_.resize(objects_.size());
    for (GenId g = 0; g != generators_.size(); ++g) {
        const auto &gen = generators_[g];
        if (gen.source >= objects_.size() or gen.target >= objects_.size())
            throw TypingError("schema " + name_ + ": generator " + gen.name + " has an undeclared endpoint");
        if (gen.name.empty())
            throw TypingError("schema " + name_ + ": empty generator name");
        for (GenId other : outgoing_[gen.source])
            if (generators_[other].name == gen.name)
                throw TypingError("schema " + name_ + ": duplicate generator " + objects_[gen.source] + "." +
                                  gen.name);
        outgoing_[gen.source].push_back(g);
    }

    for (const auto &eq : equations_) {
        if (not well_typed(eq.lhs) or not well_typed(eq.rhs))
            throw TypingError("schema " + name_ + ": ill-typed path in equation");
        if (eq.lhs.source != eq.rhs.source or target(eq.lhs) != target(eq.rhs))
            throw TypingError("schema " + name_ + ": equation " + format(eq.lhs) + " = " + format(eq.rhs) +
                              " relates paths with different endpoints");
    }
}

std::optional<ObjectId> Schema::find_object(std::string_view name) const
{
    if (auto it = object_index_.find(std::string(name)); it != object_index_.end())
        return it->second;
    return std::nullopt;
}

ObjectId Schema::object(std::string_view name) const
{
    if (auto o = find_object(name))
        return *o;
    throw TypingError("schema " + name_ + " has no object " + std::string(name));
}

std::optional<GenId> Schema::find_generator(ObjectId source, std::string_view name) const
{
    for (GenId g : outgoing_.at(source))
        if (generators_[g].name == name)
            return g;
    return std::nullopt;
}

GenId Schema::generator(std::string_view reference) const
{
    if (auto dot = reference.find('.'); dot != std::string_view::npos) {
        auto src = find_object(reference.substr(0, dot));
        if (src)
            if (auto g = find_generator(*src, reference.substr(dot + 1)))
                return *g;
    }
    std::optional<GenId> found;
    for (GenId g = 0; g != generators_.size(); ++g) {
        if (generators_[g].name != reference)
            continue;
        if (found)
            throw TypingError("schema " + name_ + ": generator name " + std::string(reference) +
                              " is ambiguous; qualify it as Source.name");
        found = g;
    }
    if (not found)
        throw TypingError("schema " + name_ + " has no generator " + std::string(reference));
    return *found;
}

std::string Schema::generator_label(GenId g) const
{
    const auto &gen = generators_.at(g);
    return objects_[gen.source] + "." + gen.name;
}

bool Schema::well_typed(const Path &p) const
{
    if (p.source >= objects_.size())
        return false;
    ObjectId at = p.source;
    for (GenId g : p.steps) {
        if (g >= generators_.size() or generators_[g].source != at)
            return false;
        at = generators_[g].target;
    }
    return true;
}

ObjectId Schema::target(const Path &p) const
{
    if (p.source >= objects_.size())
        throw TypingError("path source outside schema " + name_);
    ObjectId at = p.source;
    for (GenId g : p.steps) {
        if (g >= generators_.size() or generators_[g].source != at)
            throw TypingError("ill-typed path in schema " + name_);
        at = generators_[g].target;
    }
    return at;
}

Path Schema::path(std::string_view source, std::initializer_list<std::string_view> steps) const
{
    std::vector<std::string> names(steps.begin(), steps.end());
    return path(source, names);
}

Path Schema::path(std::string_view source, std::span<const std::string> steps) const
{
    Path p{object(source), {}};
    ObjectId at = p.source;
    for (const auto &name : steps) {
        auto g = find_generator(at, name);
        if (not g)
            throw TypingError("schema " + name_ + ": object " + objects_[at] + " has no generator " + name);
        p.steps.push_back(*g);
        at = generators_[*g].target;
    }
    return p;
}

std::string Schema::format_steps(const Path &p) const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i != p.steps.size(); ++i) {
        if (i)
            os << ' ';
        os << generators_.at(p.steps[i]).name;
    }
    os << ']';
    return os.str();
}

std::string Schema::format(const Path &p) const
{
    return objects_.at(p.source) + " " + format_steps(p);
}


SchemaBuilder & SchemaBuilder::object(std::string name)
{
    objects_.push_back(std::move(name));
    return *this;
}

SchemaBuilder & SchemaBuilder::objects(std::initializer_list<std::string_view> names)
{
    for (auto n : names)
        objects_.emplace_back(n);
    return *this;
}

SchemaBuilder & SchemaBuilder::arrow(std::string name, std::string source, std::string target)
{
    arrows_.push_back({std::move(name), std::move(source), std::move(target)});
    return *this;
}

SchemaBuilder & SchemaBuilder::equation(std::string source, std::vector<std::string> lhs, std::vector<std::string> rhs)
{
    equations_.push_back({std::move(source), std::move(lhs), std::move(rhs)});
    return *this;
}

SchemaRef SchemaBuilder::build() const
{
    std::unordered_map<std::string, ObjectId> index;
    for (ObjectId o = 0; o != objects_.size(); ++o)
        index.emplace(objects_[o], o);
    auto lookup = [&](const std::string &n) {
        auto it = index.find(n);
        if (it == index.end())
            throw TypingError("schema " + name_ + ": undeclared object " + n);
        return it->second;
    };

    std::vector<Generator> gens;
    for (const auto &a : arrows_)
        gens.push_back({a.name, lookup(a.source), lookup(a.target)});

    // Resolve equations against a generator-only schema first, so that the final constructor sees typed paths.
    Schema skeleton(name_, objects_, gens, {});
    std::vector<Equation> eqs;
    for (const auto &e : equations_)
        eqs.push_back({skeleton.path(e.source, e.lhs), skeleton.path(e.source, e.rhs)});

    return std::make_shared<const Schema>(name_, objects_, std::move(gens), std::move(eqs));
}


Path catlift::compose_paths(const Schema &S, const Path &p, const Path &q)
{
    if (S.target(p) != q.source or not S.well_typed(q))
        throw TypingError("cannot compose " + S.format(p) + " with " + S.format(q));
    Path r = p;
    r.steps.insert(r.steps.end(), q.steps.begin(), q.steps.end());
    return r;
}

SchemaRef catlift::discrete_schema(std::string name, const std::vector<std::string> &objects)
{
    return std::make_shared<const Schema>(std::move(name), objects, std::vector<Generator>{},
                                          std::vector<Equation>{});
}
