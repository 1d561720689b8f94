#include <catlift/query.hpp>

#include <algorithm>
#include <map>


using namespace catlift;


ResultSet catlift::run_query(const Query &Q, const Instance &delta, unsigned workers)
{
    ResultSet rs;
    rs.lifts = enumerate_lifts(Q.square, delta, workers);
    if (Q.select) {
        const auto &q = *Q.select;
        for (const Lift &l : rs.lifts) {
            std::vector<Row> row;
            for (ObjectId x = 0; x != q.domain->object_count(); ++x)
                row.push_back(l.assignment[q(x)]);
            rs.projected.push_back(std::move(row));
        }
    }
    return rs;
}

namespace {

Instance pull_back(const SchemaMorphism &n, const Instance &delta)
{
    const Schema &R = *n.domain;
    std::vector<std::vector<std::string>> rows;
    for (ObjectId r = 0; r != R.object_count(); ++r) {
        auto ids = delta.row_ids(n(r));
        rows.emplace_back(ids.begin(), ids.end());
    }
    std::vector<std::vector<RowIndex>> columns;
    for (GenId g = 0; g != R.generator_count(); ++g)
        columns.push_back(eval_path(delta, n.apply(R.single(g))));
    return Instance(n.domain, std::move(rows), std::move(columns));
}

}

ResultInstance catlift::result_instance(const Query &Q, const Instance &delta)
{
    const auto lifts = enumerate_lifts(Q.square, delta);
    const auto &n = Q.n();
    const Schema &R = *n.domain;
    std::vector<std::string> ids;
    std::vector<RowIndex> identity;
    for (std::size_t k = 0; k != lifts.size(); ++k) {
        ids.push_back("l" + std::to_string(k));
        identity.push_back(static_cast<RowIndex>(k));
    }
    std::vector<std::vector<RowIndex>> res(R.object_count());
    for (ObjectId r = 0; r != R.object_count(); ++r)
        for (const auto &l : lifts)
            res[r].push_back(l.assignment[r].index);
    return {Instance(n.domain, std::vector<std::vector<std::string>>(R.object_count(), ids),
                     std::vector<std::vector<RowIndex>>(R.generator_count(), identity)),
            pull_back(n, delta), std::move(res)};
}

NaturalTransformation NaturalTransformation::identity(const SchemaMorphism &F)
{
    NaturalTransformation alpha{F, F, {}};
    for (ObjectId a = 0; a != F.domain->object_count(); ++a)
        alpha.components.push_back(Path::identity(F(a)));
    return alpha;
}

ValidationReport catlift::check_natural(const NaturalTransformation &alpha, std::size_t bound)
{
    ValidationReport report;
    const auto &F = alpha.source;
    const auto &G = alpha.target;
    const Schema &A = *F.domain;
    const Schema &S = *F.codomain;
    if (alpha.components.size() != A.object_count()) {
        report.add("natural transformation has " + std::to_string(alpha.components.size()) + " components for " +
                   std::to_string(A.object_count()) + " objects");
        return report;
    }
    for (ObjectId a = 0; a != A.object_count(); ++a) {
        const Path &c = alpha.components[a];
        if (c.source != F(a) or not S.well_typed(c) or S.target(c) != G(a))
            report.add("component at " + A.object_name(a) + " does not run from " + S.object_name(F(a)) + " to " +
                       S.object_name(G(a)));
    }
    if (not report.ok())
        return report;
    for (GenId g = 0; g != A.generator_count(); ++g) {
        const auto &gen = A.generator(g);
        Path lhs = compose_paths(S, F.apply_generator(g), alpha.components[gen.target]);
        Path rhs = compose_paths(S, alpha.components[gen.source], G.apply_generator(g));
        auto v = paths_equal(S, lhs, rhs, bound);
        if (v != PathVerdict::Equal)
            report.add("naturality square at " + A.generator_label(g) + " is " + to_string(v));
    }
    return report;
}

NaturalTransformation catlift::vertical(const NaturalTransformation &alpha, const NaturalTransformation &beta)
{
    NaturalTransformation out{alpha.source, beta.target, {}};
    for (std::size_t a = 0; a != alpha.components.size(); ++a)
        out.components.push_back(compose_paths(*alpha.source.codomain, alpha.components[a], beta.components.at(a)));
    return out;
}

NaturalTransformation catlift::whisker(const SchemaMorphism &G, const NaturalTransformation &alpha)
{
    NaturalTransformation out{compose(G, alpha.source), compose(G, alpha.target), {}};
    for (ObjectId a = 0; a != G.domain->object_count(); ++a)
        out.components.push_back(alpha.components.at(G(a)));
    return out;
}

std::vector<Lift> catlift::gamma_strict(const SchemaMorphism &f, const SchemaMorphism &n1, const SchemaMorphism &n2,
                                        const std::vector<Lift> &lifts2, std::size_t bound)
{
    if (not morphisms_equal(compose(f, n2), n1, bound))
        throw TypingError("strict morphism: n2 ∘ f differs from n1");
    std::vector<Lift> out;
    for (const auto &l : lifts2)
        out.push_back(restrict_lift(l, f));
    return out;
}

std::vector<Lift> catlift::subtract_image(const std::vector<Lift> &lifts1, const std::vector<Lift> &image)
{
    std::vector<Lift> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Lift> out;
    for (const auto &l : lifts1)
        if (not std::binary_search(sorted.begin(), sorted.end(), l))
            out.push_back(l);
    return out;
}

std::vector<std::vector<std::size_t>> catlift::orbit_quotient(const SchemaMorphism &s, const SchemaMorphism &n,
                                                              const std::vector<Lift> &lifts, std::size_t bound)
{
    const auto image = gamma_strict(s, n, n, lifts, bound);
    std::map<Lift, std::size_t> index;
    for (std::size_t i = 0; i != lifts.size(); ++i)
        index.emplace(lifts[i], i);
    std::vector<std::size_t> perm;
    std::vector<bool> hit(lifts.size(), false);
    for (const auto &l : image) {
        auto it = index.find(l);
        if (it == index.end() or hit[it->second])
            throw TypingError("orbit_quotient: the automorphism does not permute the lift set");
        hit[it->second] = true;
        perm.push_back(it->second);
    }
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<bool> seen(lifts.size(), false);
    for (std::size_t i = 0; i != lifts.size(); ++i) {
        if (seen[i])
            continue;
        std::vector<std::size_t> orbit;
        for (std::size_t j = i; not seen[j]; j = perm[j]) {
            seen[j] = true;
            orbit.push_back(j);
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

TransportedLift catlift::transport_lift(const Instance &delta, const Lift &l1, const NaturalTransformation &alpha)
{
    TransportedLift out;
    for (std::size_t b = 0; b != l1.assignment.size(); ++b) {
        const Row r = l1.assignment[b];
        out.lift.assignment.push_back(transport(delta, r, alpha.components.at(b)));
        out.beta.emplace_back(r, alpha.components[b]);
    }
    return out;
}

Lift catlift::restrict_lift(const Lift &l, const SchemaMorphism &G)
{
    Lift out;
    for (ObjectId a = 0; a != G.domain->object_count(); ++a)
        out.assignment.push_back(l.assignment.at(G(a)));
    return out;
}

ValidationReport catlift::check_probe_morphism(const ProbeMorphism &pm, const SchemaMorphism &F, std::size_t bound)
{
    ValidationReport report = check_functor(pm.G, bound);
    if (not morphisms_equal(pm.alpha.source, compose(pm.G, F), bound))
        report.add("probe morphism: α does not start at F ∘ G");
    for (auto &p : check_natural(pm.alpha, bound).problems)
        report.add(std::move(p));
    return report;
}

Lift catlift::apply_probe_morphism(const ProbeMorphism &pm, const Lift &l, const Instance &delta)
{
    return transport_lift(delta, restrict_lift(l, pm.G), pm.alpha).lift;
}

ValidationReport catlift::check_query_morphism(const QueryMorphism &qm, const Query &Q, const Query &Qp,
                                               const Instance &delta, std::size_t bound)
{
    ValidationReport report;
    for (auto &p : check_functor(qm.F, bound).problems)
        report.add("F: " + p);
    for (auto &p : check_functor(qm.G, bound).problems)
        report.add("G: " + p);
    if (not report.ok())
        return report;
    if (not morphisms_equal(compose(Qp.m(), qm.F), compose(qm.G, Q.m()), bound))
        report.add("m ∘ G differs from F ∘ m'");
    if (not morphisms_equal(qm.alpha.source, compose(qm.F, Q.n()), bound))
        report.add("α does not start at n ∘ F");
    if (not morphisms_equal(qm.alpha.target, Qp.n(), bound))
        report.add("α does not end at n'");
    for (auto &p : check_natural(qm.alpha, bound).problems)
        report.add("α: " + p);
    if (not report.ok())
        return report;
    const Schema &Wp = *Qp.m().domain;
    const Schema &S = *Q.n().codomain;
    if (qm.gamma.size() != Wp.object_count()) {
        report.add("γ has the wrong number of components");
        return report;
    }
    for (ObjectId w = 0; w != Wp.object_count(); ++w) {
        const Path &g = qm.gamma[w];
        const Path &a = qm.alpha.components[Qp.m()(w)];
        if (paths_equal(S, g, a, bound) != PathVerdict::Equal)
            report.add("π ∘ γ differs from α m' at " + Wp.object_name(w));
        else if (transport(delta, Q.square.binding[qm.G(w)], g) != Qp.square.binding[w])
            report.add("γ does not reach p' at " + Wp.object_name(w));
    }
    return report;
}

QueryMorphism catlift::complete_query_morphism(const SchemaMorphism &F, const SchemaMorphism &G,
                                               const NaturalTransformation &alpha, const Query &Q, Query &Qp,
                                               const Instance &delta, std::size_t bound)
{
    if (not morphisms_equal(compose(Qp.m(), F), compose(G, Q.m()), bound))
        throw TypingError("complete_query_morphism: m ∘ G differs from F ∘ m'");
    auto report = check_natural(alpha, bound);
    if (not report.ok())
        throw TypingError("complete_query_morphism: " + report.problems.front());
    QueryMorphism qm{F, G, alpha, {}};
    const Schema &Wp = *Qp.m().domain;
    Qp.square.binding.clear();
    for (ObjectId w = 0; w != Wp.object_count(); ++w) {
        const Path &a = alpha.components.at(Qp.m()(w));
        qm.gamma.push_back(a);
        Qp.square.binding.push_back(transport(delta, Q.square.binding.at(G(w)), a));
    }
    check_square(Qp.square, delta);
    return qm;
}

std::vector<Lift> catlift::induced_result_map(const QueryMorphism &qm, const Query &Qp, const std::vector<Lift> &lifts,
                                              const Instance &delta)
{
    std::vector<Lift> out;
    for (const auto &l : lifts) {
        Lift image = transport_lift(delta, restrict_lift(l, qm.F), qm.alpha).lift;
        if (not is_lift(Qp.square, delta, image))
            throw TypingError("induced_result_map: image is not a solution of the target query");
        out.push_back(std::move(image));
    }
    return out;
}

QueryMorphism catlift::identity_query_morphism(const Query &Q)
{
    QueryMorphism qm{SchemaMorphism::identity(Q.n().domain), SchemaMorphism::identity(Q.m().domain),
                     NaturalTransformation::identity(Q.n()), {}};
    for (ObjectId w = 0; w != Q.m().domain->object_count(); ++w)
        qm.gamma.push_back(Path::identity(Q.n()(Q.m()(w))));
    return qm;
}

QueryMorphism catlift::compose(const QueryMorphism &first, const QueryMorphism &second)
{
    const Schema &S = *first.alpha.source.codomain;
    QueryMorphism out{compose(second.F, first.F), compose(second.G, first.G), {}, {}};
    out.alpha.source = compose(second.F, first.alpha.source);
    out.alpha.target = second.alpha.target;
    for (ObjectId r = 0; r != second.F.domain->object_count(); ++r)
        out.alpha.components.push_back(
            compose_paths(S, first.alpha.components.at(second.F(r)), second.alpha.components.at(r)));
    for (ObjectId w = 0; w != second.G.domain->object_count(); ++w)
        out.gamma.push_back(compose_paths(S, first.gamma.at(second.G(w)), second.gamma.at(w)));
    return out;
}
