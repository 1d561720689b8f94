#include "support.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

using namespace catlift;
using namespace support;


namespace {

struct Criterion
{
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string &what)
    {
        if (not ok)
            failures.push_back(what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<std::string> fixture_dirs = {"emp", "ln", "bobsue", "dds", "indirection", "social"};

// 1
void emp_fixture(Criterion &c)
{
    const auto start = std::chrono::steady_clock::now();
    auto [lib, S, delta] = load("emp");
    c.expect(validate_instance(delta).ok(), "EMP does not validate");
    c.expect(S->equations().size() == 2, "EMP should have two rules");
    for (const auto &eq : S->equations()) {
        auto l = eval_path(delta, eq.lhs);
        auto r = eval_path(delta, eq.rhs);
        for (RowIndex x = 0; x != l.size(); ++x)
            c.expect(l[x] == r[x], "rule fails at row " + std::to_string(x));
    }
    auto triples = grothendieck_triples(delta);
    c.expect(triples.size() == 16, "expected 16 triples, got " + std::to_string(triples.size()));
    bool david = false;
    for (const auto &t : triples)
        david = david or format_ntriple(delta, t) == "<(Employee,101)> <first> <(FNString,David)> .";
    c.expect(david, "missing (101, first, David)");
    auto run = cli({"validate", "-s", fixture("emp/schema.cat"), "-i", fixture("emp/instance")});
    c.expect(run.status == 0, "validate exits " + std::to_string(run.status));
    c.expect(not validate_instance(load("emp", "tampered").instance).ok(), "tampered instance validates");
    const double t = seconds_since(start);
    c.expect(t < 1.0, "took " + std::to_string(t) + " s");
}

// 2
void same_last_name(Criterion &c)
{
    auto [lib, S, delta] = load("ln");
    auto qf = load_queries(fixture("ln/queries.cq"), lib, delta);
    const auto &Q = qf.query("SameLast");
    auto lifts = enumerate_lifts(Q.square, delta);
    using Set = std::set<std::vector<std::string>>;
    c.expect(lifts.size() == 5, "expected 5 lifts");
    c.expect(id_set(delta, lifts) == Set{{"x137", "x139", "Smith"},
                                         {"x139", "x137", "Smith"},
                                         {"x137", "x137", "Smith"},
                                         {"x139", "x139", "Smith"},
                                         {"x144", "x144", "Jones"}},
             "lift set differs");
    const auto &dedup = qf.morphism("dedup");
    auto image = gamma_strict(dedup.f, Q.n(), dedup.n2, enumerate_lifts(where_less(dedup.n2), delta));
    auto rest = subtract_image(lifts, image);
    c.expect(id_set(delta, rest) == Set{{"x137", "x139", "Smith"}, {"x139", "x137", "Smith"}},
             "dedup remainder differs");
    auto orbits = orbit_quotient(qf.morphism("swap").f, Q.n(), rest);
    c.expect(orbits.size() == 1, "expected one orbit, got " + std::to_string(orbits.size()));
}

// 3
void bob_and_sue(Criterion &c)
{
    auto [lib, S, delta] = load("bobsue");
    auto gp = load_pattern(fixture("bobsue/query.pat"));
    auto Q = compile_pattern(gp, S, delta).query;
    const auto &W = *Q.m().domain;
    const auto &R = *Q.n().domain;
    c.expect(W.object_count() == 6, "|Ob W| = " + std::to_string(W.object_count()));
    c.expect(R.object_count() == 14, "|Ob R| = " + std::to_string(R.object_count()));
    c.expect(R.generator_count() == 13, "|gen R| = " + std::to_string(R.generator_count()));
    auto lifts = enumerate_lifts(Q.square, delta);
    c.expect(lifts.size() == 1, std::to_string(lifts.size()) + " lifts");
    if (lifts.size() == 1)
        c.expect(lifts[0].assignment[R.object("?bobLast")] == lifts[0].assignment[R.object("?sueLast")],
                 "last names differ");
}

// 4
void oracle_equivalence(Criterion &c)
{
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2024);
    int cases = 0;
    for (int round = 0; cases < 250 and round != 2000; ++round) {
        auto S = random_schema(rng, "S", 2 + rng() % 3, rng() % 5, false);
        auto delta = with_true_equations(rng, random_instance(rng, S, 5), 1);
        auto Q = random_query(rng, delta, 4, round % 2 == 1);
        if (not Q)
            continue;
        ++cases;
        auto oracle = enumerate_lifts_oracle(Q->square, delta);
        c.expect(enumerate_lifts(Q->square, delta) == oracle, "mismatch in round " + std::to_string(round));
        c.expect(enumerate_lifts(Q->square, delta, 3) == oracle, "3-worker mismatch in round " + std::to_string(round));
    }
    c.expect(cases >= 200, "only " + std::to_string(cases) + " cases");
    const double t = seconds_since(start);
    c.expect(t < 60.0, "took " + std::to_string(t) + " s");
    c.notes.push_back(std::to_string(cases) + " cases in " + std::to_string(t) + " s");
}

// 5
void fibration_laws(Criterion &c)
{
    for (const auto &dir : fixture_dirs) {
        auto pi = grothendieck_concrete(load(dir).instance);
        c.expect(is_relational_fibration(pi).yes(), dir + ": not a relational fibration");
        c.expect(check_discrete_fibers(pi).ok(), dir + ": fibers not discrete");
        c.expect(check_faithful(pi).ok(), dir + ": not faithful");
        c.expect(check_triangle_filler(pi).ok(), dir + ": triangle filler fails");
    }
    auto arrow = SchemaBuilder("Arrow").objects({"A", "B"}).arrow("f", "A", "B").build();
    auto two = discrete_schema("Two", {"a", "b"});
    auto F1 = functor_of(two, arrow, {"A", "B"}, {});
    auto v1 = is_relational_fibration(F1);
    c.expect(not v1.yes() and v1.witness->rule == 1 and F1.domain->object_name(v1.witness->x) == "a" and
                 F1.codomain->morphism(v1.witness->f).name == "A [f]",
             "rho1 example has the wrong witness");
    auto pair = SchemaBuilder("Pair").objects({"a", "b"}).arrow("u", "a", "b").arrow("v", "a", "b").build();
    auto F2 = functor_of(pair, arrow, {"A", "B"}, {"f", "f"});
    auto v2 = is_relational_fibration(F2);
    c.expect(not v2.yes() and v2.witness->rule == 2 and F2.domain->object_name(v2.witness->x) == "a",
             "rho2 example has the wrong witness");
}

// 6
void round_trips(Criterion &c)
{
    for (const auto &dir : fixture_dirs) {
        auto delta = load(dir).instance;
        auto pi = grothendieck_concrete(delta);
        c.expect(isomorphic(partial(pi), delta), dir + ": partial of the elements differs");
        c.expect(isomorphic(fibers_to_instance(pi), delta), dir + ": fibers differ");
        c.expect(same_functor(grothendieck_concrete(fibers_to_instance(pi)), pi), dir + ": elements of fibers differ");
    }
    auto arrow = SchemaBuilder("Arrow").objects({"A", "B"}).arrow("f", "A", "B").build();
    auto I = SchemaBuilder("I").objects({"a", "b", "c"}).arrow("f", "a", "b").build();
    auto F = functor_of(I, arrow, {"A", "B", "B"}, {"f"});
    c.expect(same_functor(grothendieck_concrete(fibers_to_instance(F)), F), "hand-made fibration changes");
    c.expect(isomorphic(partial(F), fibers_to_instance(F)), "partial differs from fibers on a fibration");
    Rng rng(6);
    for (int round = 0; round != 60; ++round) {
        auto S = random_schema(rng, "S", 3, 3, round % 2 == 0);
        auto delta = with_true_equations(rng, random_instance(rng, S, 3), 1);
        auto pi = grothendieck_concrete(delta);
        c.expect(isomorphic(partial(pi), delta), "random partial differs in round " + std::to_string(round));
        c.expect(same_functor(grothendieck_concrete(fibers_to_instance(pi)), pi),
                 "random fibration changes in round " + std::to_string(round));
    }
}

bool every_square_lifts(const LiftingConstraint &k, const Instance &delta)
{
    for (const auto &p : all_bindings(k.m, k.n, delta))
        if (enumerate_lifts_oracle({k, p}, delta).empty())
            return false;
    return true;
}

// 7
void constraint_library(Criterion &c)
{
    auto [lib, S, delta] = load("emp");
    using Binding = std::vector<std::pair<std::string, std::string>>;
    auto surj = check_constraint(delta, surjective_fk(S, "secretary"));
    c.expect(not surj.satisfied() and describe_binding(*surj.witness, delta) == Binding{{"b", "(Employee,103)"}},
             "surjective(secretary) witness");
    auto inj = check_constraint(delta, injective_fk(S, "worksIn"));
    c.expect(not inj.satisfied() and
                 describe_binding(*inj.witness, delta) ==
                     Binding{{"a1", "(Employee,101)"}, {"a2", "(Employee,103)"}, {"b", "(Department,q10)"}},
             "injective(worksIn) witness");

    auto T = discrete_schema("S", {"T"});
    c.expect(check_constraint_set(Instance::from_rows(T, {{"T", {{"t"}}}}), exactly_one(T, "T")).satisfied(),
             "exactly_one rejects one row");
    c.expect(not check_constraint_set(Instance::from_rows(T, {{"T", {{"t"}, {"u"}}}}), exactly_one(T, "T")).satisfied(),
             "exactly_one accepts two rows");

    auto good = load("product", "good");
    auto impostor = load("product", "impostor");
    auto xi = product(good.schema, "T", "f", "g");
    c.expect(check_constraint_set(good.instance, xi).satisfied(), "product rejects the 2x2 table");
    c.expect(impostor.instance.row_count(good.schema->object("T")) == 3, "impostor should have 3 rows");
    c.expect(not check_constraint_set(impostor.instance, xi).satisfied(), "product accepts the impostor");

    auto dds = load("dds");
    auto f = forest(dds.schema, "nu", "p");
    const bool verdict = check_constraint(dds.instance, f).satisfied();
    c.expect(verdict == every_square_lifts(f, dds.instance), "forest verdict differs from brute force");
    // Documented: the c -> d -> g -> c root cycle is not seen by the constraint.
    c.expect(verdict, "forest is expected to be satisfied on the DDS table despite its 3-cycle");
    auto two = Instance::from_rows(dds.schema, {{"nu", {{"a", "b"}, {"b", "a"}}}});
    c.expect(not check_constraint(two, f).satisfied(), "forest misses a 2-cycle");
    c.notes.push_back("forest is satisfied on DDS although c -> d -> g -> c is a root 3-cycle (documented)");
}

struct RandomConstraint
{
    LiftingConstraint c;
    Instance delta;
};

std::optional<RandomConstraint> random_constraint(Rng &rng)
{
    auto S = random_schema(rng, "S", 3, 3, false);
    auto delta = random_instance(rng, S, 3);
    auto W = random_schema(rng, "W", 1 + rng() % 2, rng() % 2, false);
    auto R = random_schema(rng, "R", 1 + rng() % 3, rng() % 3, false);
    auto m = random_morphism(rng, W, R, 1);
    auto n = m ? random_morphism(rng, R, S, 2) : std::nullopt;
    if (not n)
        return std::nullopt;
    return RandomConstraint{{*m, *n, "c"}, delta};
}

// 8
void uniqueness(Criterion &c)
{
    Rng rng(88);
    int cases = 0;
    for (int round = 0; round != 300; ++round) {
        auto rc = random_constraint(rng);
        if (not rc)
            continue;
        ++cases;
        bool at_most_one_lift = true;
        for (const auto &p : all_bindings(rc->c.m, rc->c.n, rc->delta))
            at_most_one_lift = at_most_one_lift and enumerate_lifts_oracle({rc->c, p}, rc->delta).size() <= 1;
        c.expect(check_constraint(rc->delta, uniqueness_of(rc->c)).satisfied() == at_most_one_lift,
                 "uniqueness verdict differs in round " + std::to_string(round));
    }
    auto T = discrete_schema("S", {"T"});
    auto u = uniqueness_of(nonempty(T, "T"));
    for (std::size_t rows = 0; rows != 4; ++rows) {
        std::vector<std::vector<std::string>> t;
        for (std::size_t k = 0; k != rows; ++k)
            t.push_back({"t" + std::to_string(k)});
        c.expect(check_constraint(Instance::from_rows(T, {{"T", t}}), u).satisfied() == (rows <= 1),
                 "uniqueness_of(nonempty) with " + std::to_string(rows) + " rows");
    }
    c.expect(cases >= 100, "only " + std::to_string(cases) + " cases");
}

// 9
void implications(Criterion &c)
{
    Rng rng(99);
    int retracts = 0, pushouts = 0, nonvacuous = 0;
    auto implication = [&](const Instance &delta, const LiftingConstraint &from, const LiftingConstraint &to,
                           const std::string &what) {
        if (check_constraint(delta, from).satisfied()) {
            ++nonvacuous;
            c.expect(check_constraint(delta, to).satisfied(), what + " counterexample");
        }
    };
    for (int round = 0; round != 400; ++round) {
        auto rc = random_constraint(rng);
        if (not rc)
            continue;
        const auto &m = rc->c.m;
        const auto &n = rc->c.n;
        if (round % 2 == 0) {
            // R' = R + E with p2 = [id, e]; s2 is the left inclusion and W' = W.
            auto E = random_schema(rng, "E", 1 + rng() % 2, rng() % 2, false);
            auto e = random_morphism(rng, E, n.domain, 1);
            if (not e)
                continue;
            auto Rp = coproduct(n.domain, E);
            auto p2 = copair(Rp, SchemaMorphism::identity(n.domain), *e);
            LiftingConstraint mp{compose(m, Rp.left), compose(p2, n), "m'"};
            implication(rc->delta, mp, rc->c, "retract");
        } else {
            // m' = m + m, retracting onto m by the folds.
            auto Wp = coproduct(m.domain, m.domain);
            auto Rp = coproduct(m.codomain, m.codomain);
            auto mm = copair(Wp, compose(m, Rp.left), compose(m, Rp.right));
            auto fold = copair(Rp, SchemaMorphism::identity(m.codomain), SchemaMorphism::identity(m.codomain));
            implication(rc->delta, {mm, compose(fold, n), "m+m"}, rc->c, "retract");
        }
        ++retracts;
    }
    for (int round = 0; round != 600 and pushouts < 150; ++round) {
        auto S = random_schema(rng, "S", 3, 3, false);
        auto delta = random_instance(rng, S, 3);
        auto Wp = random_schema(rng, "V", 1 + rng() % 2, rng() % 2, false);
        auto Rp = random_schema(rng, "Q", 1 + rng() % 3, rng() % 3, false);
        auto W = random_schema(rng, "W", 1 + rng() % 2, rng() % 2, false);
        auto mp = random_morphism(rng, Wp, Rp, 1);
        auto g = mp ? random_morphism(rng, Wp, W, 1) : std::nullopt;
        if (not g)
            continue;
        auto P = pushout_presentation(*mp, *g);
        auto n = random_morphism(rng, P.schema, S, 2);
        if (not n)
            continue;
        ++pushouts;
        implication(delta, {*mp, compose(P.left, *n), "m'"}, {P.right, *n, "m"}, "pushout");
    }
    c.expect(retracts >= 100, "only " + std::to_string(retracts) + " retract cases");
    c.expect(pushouts >= 100, "only " + std::to_string(pushouts) + " pushout cases");
    c.notes.push_back(std::to_string(retracts) + " retract and " + std::to_string(pushouts) + " pushout cases, " +
                      std::to_string(nonvacuous) + " with the hypothesis satisfied");
    c.expect(nonvacuous >= 50, "too few cases with the hypothesis satisfied");
}

std::optional<std::pair<SchemaMorphism, Instance>> random_migration(Rng &rng, std::size_t max_rows)
{
    auto S = random_schema(rng, "S", 1 + rng() % 3, rng() % 3, true);
    auto T0 = random_schema(rng, "T", 1 + rng() % 3, rng() % 4, true);
    auto T = with_true_equations(rng, random_instance(rng, T0, 2), 1).schema_ref();
    auto F = random_morphism(rng, S, T, 2);
    if (not F)
        return std::nullopt;
    return std::pair(*F, random_instance(rng, S, max_rows));
}

// 10
void migration(Criterion &c)
{
    Rng rng(1010);
    int pushes = 0, adjunctions = 0, isos = 0;
    for (int round = 0; round != 200; ++round) {
        auto mc = random_migration(rng, 3);
        if (not mc)
            continue;
        ++pushes;
        const auto &[F, delta] = *mc;
        c.expect(isomorphic(sigma(F, delta).instance, brute_sigma(F, delta)), "sigma differs");
        c.expect(isomorphic(pi(F, delta), brute_pi(F, delta)), "pi differs");
    }
    for (int round = 0; round != 200; ++round) {
        auto mc = random_migration(rng, 2);
        if (not mc)
            continue;
        const auto &[F, delta] = *mc;
        auto eps = random_instance(rng, F.codomain, 2);
        if (not validate_instance(eps).ok())
            continue;
        ++adjunctions;
        c.expect(count_instance_morphisms(sigma(F, delta).instance, eps) ==
                     count_instance_morphisms(delta, catlift::delta(F, eps)),
                 "sigma adjunction count differs");
        c.expect(count_instance_morphisms(catlift::delta(F, eps), delta) == count_instance_morphisms(eps, pi(F, delta)),
                 "pi adjunction count differs");
    }
    for (int round = 0; round != 400 and isos < 150; ++round) {
        auto S = random_schema(rng, "S", 1 + rng() % 3, rng() % 3, false);
        auto T = random_schema(rng, "T", 1 + rng() % 3, rng() % 4, false);
        auto F = random_morphism(rng, S, T, 2);
        if (not F)
            continue;
        auto eps = random_instance(rng, T, 3);
        auto pulled = catlift::delta(*F, eps);
        auto Q = random_query(rng, pulled, 3, round % 2 == 0);
        if (not Q)
            continue;
        ++isos;
        auto report = query_invariance_under_delta(*F, eps, *Q);
        c.expect(report.bijective, "query results do not biject");
        c.expect(report.pulled == enumerate_lifts_oracle(Q->square, pulled).size(), "pulled count differs");
    }
    c.expect(pushes >= 50, "only " + std::to_string(pushes) + " pushforward cases");
    c.expect(adjunctions >= 50, "only " + std::to_string(adjunctions) + " adjunction cases");
    c.expect(isos >= 100, "only " + std::to_string(isos) + " query-iso cases");
    c.notes.push_back(std::to_string(pushes) + " pushforward, " + std::to_string(adjunctions) + " adjunction, " +
                      std::to_string(isos) + " query-iso cases");
}

// 11
void functoriality(Criterion &c)
{
    Rng rng(1111);
    int chains = 0, transports = 0;
    for (int round = 0; round != 300 and chains < 100; ++round) {
        auto S = random_schema(rng, "S", 3, 4, false);
        auto delta = random_instance(rng, S, 3);
        auto Q = random_query(rng, delta, 3, round % 2 == 0);
        if (not Q)
            continue;
        auto first = random_query_morphism(rng, *Q, delta);
        auto second = first ? random_query_morphism(rng, first->target, delta) : std::nullopt;
        if (not second)
            continue;
        ++chains;
        auto lifts = enumerate_lifts(Q->square, delta);
        c.expect(induced_result_map(identity_query_morphism(*Q), *Q, lifts, delta) == lifts, "identity not preserved");
        auto one = induced_result_map(first->morphism, first->target, lifts, delta);
        auto two = induced_result_map(second->morphism, second->target, one, delta);
        auto both = compose(first->morphism, second->morphism);
        c.expect(induced_result_map(both, second->target, lifts, delta) == two, "composition not preserved");

        const auto &alpha = first->morphism.alpha;
        for (const auto &l : enumerate_lifts(where_less(alpha.source), delta)) {
            auto moved = transport_lift(delta, l, alpha);
            std::size_t matches = 0;
            for (const auto &cand : enumerate_lifts_oracle(where_less(alpha.target), delta)) {
                bool ok = true;
                for (ObjectId b = 0; b != cand.assignment.size(); ++b)
                    ok = ok and transport(delta, l.assignment[b], alpha.components[b]) == cand.assignment[b];
                if (ok) {
                    ++matches;
                    c.expect(cand == moved.lift, "transported lift is not the candidate");
                }
            }
            c.expect(matches == 1, "transport candidates: " + std::to_string(matches));
            ++transports;
        }
    }
    c.expect(chains >= 50, "only " + std::to_string(chains) + " chains");
    c.notes.push_back(std::to_string(chains) + " chains, " + std::to_string(transports) + " transported lifts");
}

std::vector<std::vector<std::string>> every_command()
{
    namespace fs = std::filesystem;
    std::vector<std::vector<std::string>> out;
    for (const auto &entry : fs::directory_iterator(fixture(""))) {
        const std::string dir = entry.path().filename().string();
        const std::string schema = fixture(dir + "/schema.cat");
        std::vector<std::string> instances;
        for (const auto &sub : fs::directory_iterator(entry.path()))
            if (sub.is_directory())
                instances.push_back(sub.path().filename().string());
        std::sort(instances.begin(), instances.end());
        for (const auto &inst : instances) {
            const std::vector<std::string> base{"-s", schema, "-i", fixture(dir + "/" + inst)};
            auto cmd = [&](std::vector<std::string> head, std::vector<std::string> tail = {}) {
                head.insert(head.end(), base.begin(), base.end());
                head.insert(head.end(), tail.begin(), tail.end());
                out.push_back(head);
            };
            cmd({"validate"});
            cmd({"triples"});
            cmd({"triples"}, {"--format", "json"});
            if (fs::exists(fixture(dir + "/constraints.lc")))
                cmd({"check"}, {"-c", fixture(dir + "/constraints.lc")});
            if (inst != "instance")
                continue;
            auto l = load(dir);
            if (fs::exists(fixture(dir + "/queries.cq")))
                for (const auto &Q : load_queries(fixture(dir + "/queries.cq"), l.lib, l.instance).queries)
                    for (const auto *w : {"1", "2", "4"})
                        cmd({"query"}, {"-q", fixture(dir + "/queries.cq"), "--name", Q.name, "--workers", w});
            if (fs::exists(fixture(dir + "/functors.cat")))
                for (const auto &F : load_functors(fixture(dir + "/functors.cat"), l.lib))
                    for (const auto *mode : {"delta", "sigma", "pi"})
                        cmd({"migrate"}, {"-f", fixture(dir + "/functors.cat"), "--functor", F.name, "--mode", mode});
            for (const auto &file : fs::directory_iterator(entry.path()))
                if (file.path().extension() == ".pat")
                    for (const auto *w : {"1", "2", "4"})
                        cmd({"pattern"}, {"-p", file.path().string(), "--workers", w});
        }
    }
    return out;
}

// 12
void determinism(Criterion &c)
{
    auto commands = every_command();
    std::map<std::vector<std::string>, CliRun> first;
    for (const auto &args : commands) {
        auto a = cli(args);
        auto b = cli(args);
        std::string shown;
        for (const auto &x : args)
            shown += x + " ";
        c.expect(a.status == b.status and a.out == b.out and a.err == b.err, "repeat differs: " + shown);
        // Runs that differ only in worker count must agree.
        auto key = args;
        auto w = std::find(key.begin(), key.end(), "--workers");
        if (w != key.end())
            key.erase(w, w + 2);
        auto [it, fresh] = first.emplace(key, a);
        if (not fresh)
            c.expect(it->second.status == a.status and it->second.out == a.out, "worker counts differ: " + shown);
    }
    c.notes.push_back(std::to_string(commands.size()) + " commands");
}

}

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Criterion &)>>> criteria{
        {"EMP fixture: validation, rules, 16 triples", emp_fixture},
        {"same-last-name query, dedup and orbits", same_last_name},
        {"Bob&Sue pattern compilation", bob_and_sue},
        {"solver agrees with the limit oracle", oracle_equivalence},
        {"fibration laws and negative examples", fibration_laws},
        {"round trips between instances and fibrations", round_trips},
        {"constraint library", constraint_library},
        {"uniqueness encoding", uniqueness},
        {"retract and pushout implications", implications},
        {"migration: pushforwards, adjunction, query iso", migration},
        {"functoriality of result maps and transport", functoriality},
        {"determinism of the command line", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k != criteria.size(); ++k) {
        Criterion c;
        try {
            criteria[k].second(c);
        } catch (const std::exception &e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (c.failures.empty() ? "[PASS] " : "[FAIL] ") << k + 1 << ". " << criteria[k].first << '\n';
        for (const auto &n : c.notes)
            std::cout << "       " << n << '\n';
        const std::size_t shown = std::min<std::size_t>(c.failures.size(), 5);
        for (std::size_t i = 0; i != shown; ++i)
            std::cout << "       - " << c.failures[i] << '\n';
        if (c.failures.size() > shown)
            std::cout << "       - ... " << c.failures.size() - shown << " more\n";
        failed += not c.failures.empty();
    }
    return failed == 0 ? 0 : 1;
}
