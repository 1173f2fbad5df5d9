#include "qec/witness_solver.hpp"

#include <random>

#include <stdexcept>

#include "doctest.h"
#include "qec/ec_checker.hpp"
#include "qec/rng.hpp"

using namespace qec;

namespace {

Point e(std::size_t d, std::size_t i, u64 scale = 1) {
    Point p(d, 0);
    p[i] = scale;
    return p;
}

Point random_point(std::mt19937_64& rng, u64 m, std::size_t d) {
    Point p(d);
    for (auto& c : p) c = rng() % m;
    return p;
}

struct RandomQuery {
    Point a, b, c;
    Pattern3 pat;
};

RandomQuery random_query(std::mt19937_64& rng, u64 m, std::size_t d) {
    RandomQuery q;
    q.a = random_point(rng, m, d);
    do q.b = random_point(rng, m, d);
    while (q.b == q.a);
    do q.c = random_point(rng, m, d);
    while (q.c == q.a || q.c == q.b);
    unsigned bits = rng() % 8;
    q.pat = Pattern3{1 + int(bits & 1), 1 + int(bits >> 1 & 1), 1 + int(bits >> 2 & 1)};
    return q;
}

u64 dot(const Vec& a, const Vec& b, u64 p) {
    u64 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = (acc + a[i] * b[i]) % p;
    return acc;
}

}  // namespace

TEST_CASE("class membership splits Z_p in half") {
    for (u64 p : {7, 11}) {
        u64 v1 = 0, v2 = 0;
        for (u64 q = 0; q < p; ++q) {
            CHECK(in_class(q, 1, p) != in_class(q, 2, p));
            (in_class(q, 1, p) ? v1 : v2)++;
        }
        CHECK(v1 == (p + 1) / 2);
        CHECK(v2 == (p - 1) / 2);
    }
}

TEST_CASE("pattern parsing") {
    auto pat = Pattern3::parse("121");
    CHECK(pat.i == 1);
    CHECK(pat.j == 2);
    CHECK(pat.k == 1);
    CHECK(pat.str() == "121");
    CHECK_THROWS_AS(Pattern3::parse("12"), std::invalid_argument);
    CHECK_THROWS_AS(Pattern3::parse("123"), std::invalid_argument);
}

TEST_CASE("dependence classification") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);
    CHECK(classify_dependence(zero, e(d, 0), e(d, 1), p7).independent);

    auto dep3 = classify_dependence(zero, e(d, 0), e(d, 0, 3), p7);
    CHECK_FALSE(dep3.independent);
    CHECK(dep3.t == 3);

    auto depm1 = classify_dependence(zero, e(d, 0), e(d, 0, 6), p7);
    CHECK_FALSE(depm1.independent);
    CHECK(depm1.t == 6);  // t = -1

    CHECK_THROWS_AS(classify_dependence(zero, zero, e(d, 0), p7), std::invalid_argument);
}

TEST_CASE("reduce_system example: unit vectors over Z_7^5") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);
    auto rs = reduce_system(zero, e(d, 0), e(d, 1), 1, 1, 1, p7);
    CHECK(rs.u == 1);
    REQUIRE(rs.linear.rows.size() == 2);
    CHECK(rs.linear.rows[0] == Vec{1, 0, 0, 0, 0});
    CHECK(rs.linear.rhs[0] == 4);  // (1 - 1 + 1 - 0) / 2 = 1/2 = 4 mod 7
    CHECK(rs.linear.rows[1] == Vec{0, 1, 0, 0, 0});
    CHECK(rs.linear.rhs[1] == 4);
}

TEST_CASE("reduced system is equivalent to the quadrance system") {
    std::mt19937_64 rng(314);
    Modulus p11(11);
    const std::size_t d = 5;
    for (int iter = 0; iter < 100; ++iter) {
        auto q = random_query(rng, 11, d);
        Point x = random_point(rng, 11, d);
        u64 u = quadrance(x, q.a, p11);
        u64 v = quadrance(x, q.b, p11);
        u64 w = quadrance(x, q.c, p11);
        auto rs = reduce_system(q.a, q.b, q.c, u, v, w, p11);
        // forward: the original solution satisfies the linear forms
        for (std::size_t r = 0; r < 2; ++r)
            CHECK(dot(x, rs.linear.rows[r], 11) == rs.linear.rhs[r]);

        // converse: any point of the affine space with Q(X,A) = u recovers
        // v and w
        auto x0 = particular_solution(rs.linear);
        REQUIRE(x0.has_value());
        auto basis = null_space_basis(rs.linear);
        Point probe = *x0;
        for (const Vec& f : basis) {
            u64 lam = rng() % 11;
            for (std::size_t i = 0; i < d; ++i)
                probe[i] = mod_add(probe[i], mod_mul(lam, f[i], 11), 11);
        }
        if (quadrance(probe, q.a, p11) == u) {
            CHECK(quadrance(probe, q.b, p11) == v);
            CHECK(quadrance(probe, q.c, p11) == w);
        }
    }
}

TEST_CASE("choose_uvw lexicographic minimum in the independent case") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);
    Dependence indep{true, 0};
    auto [u1, v1, w1] = choose_uvw(Pattern3{1, 1, 1}, indep, zero, e(d, 0), e(d, 1), p7);
    CHECK(u1 == 0);
    CHECK(v1 == 0);
    CHECK(w1 == 0);
    auto [u2, v2, w2] = choose_uvw(Pattern3{2, 2, 2}, indep, zero, e(d, 0), e(d, 1), p7);
    CHECK(u2 == 4);
    CHECK(v2 == 4);
    CHECK(w2 == 4);
}

TEST_CASE("dependent scan accepts the first compatible triple") {
    Modulus p7(7);
    // t = 2, a0 = 0: u = 0 gives shift 0, then v = 0 yields w = 0 in V_1
    auto t1 = first_dependent_triple(2, 0, Pattern3{1, 1, 1}, p7);
    REQUIRE(t1.has_value());
    CHECK(*t1 == std::make_tuple(u64{0}, u64{0}, u64{0}));

    // force w out of V_1 for v = 0: t = 2, a0 = 4 -> u=0: w = 2v + 4;
    // v=0 -> 4 (V_2), v=1 -> 6 (V_2), v=2 -> 1 in V_1
    auto t2 = first_dependent_triple(2, 4, Pattern3{1, 1, 1}, p7);
    REQUIRE(t2.has_value());
    CHECK(*t2 == std::make_tuple(u64{0}, u64{2}, u64{1}));
}

TEST_CASE("dependent scan can exhaust below p = 7") {
    // p = 3, t = 2 = -1, pattern (2,2,2): V_2 = {2} gives a single candidate
    // w = 2*2 + shift, which misses V_2 for most shifts
    Modulus p3(3);
    auto hit = first_dependent_triple(2, 0, Pattern3{2, 2, 2}, p3);
    auto miss = first_dependent_triple(2, 1, Pattern3{2, 2, 2}, p3);
    CHECK(hit.has_value());
    CHECK_FALSE(miss.has_value());
}

TEST_CASE("dependent scan succeeds for every t, shift and pattern") {
    for (u64 p : {7, 11, 13}) {
        Modulus mp(p);
        for (u64 t = 2; t < p; ++t) {
            for (u64 a0 = 0; a0 < p; ++a0) {
                for (unsigned bits = 0; bits < 8; ++bits) {
                    Pattern3 pat{1 + int(bits & 1), 1 + int(bits >> 1 & 1),
                                 1 + int(bits >> 2 & 1)};
                    auto triple = first_dependent_triple(t, a0, pat, mp);
                    REQUIRE(triple.has_value());
                    auto [u, v, w] = *triple;
                    CHECK(in_class(u, pat.i, p));
                    CHECK(in_class(v, pat.j, p));
                    CHECK(in_class(w, pat.k, p));
                    // compatibility: w = t*v + (a0 - (t-1)u)
                    u64 shift = mod_sub(a0, mod_mul(t - 1, u, p), p);
                    CHECK(w == mod_add(mod_mul(t, v, p), shift, p));
                }
            }
        }
    }
}

TEST_CASE("find_witness on the canonical example") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);
    auto res = find_witness(zero, e(d, 0), e(d, 1), Pattern3{1, 1, 1}, p7);
    CHECK_FALSE(res.outside_guarantee);
    CHECK(verify_witness(res.x, zero, e(d, 0), e(d, 1), Pattern3{1, 1, 1}, p7));
    CHECK(quadrance(res.x, zero, p7) <= 3);
    CHECK(res.attempts >= 1);
}

TEST_CASE("find_witness exercises the t = -1 branch") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);
    Point b = e(d, 0);
    Point c = e(d, 0, 6);  // C = -B
    Pattern3 pat{2, 2, 2};
    auto res = find_witness(zero, b, c, pat, p7);
    CHECK(verify_witness(res.x, zero, b, c, pat, p7));
    CHECK_FALSE(res.plan.independent);
    CHECK(res.plan.t == 6);
    for (u64 q : {quadrance(res.x, zero, p7), quadrance(res.x, b, p7),
                  quadrance(res.x, c, p7)})
        CHECK(q >= 4);
}

TEST_CASE("plan validity invariants") {
    std::mt19937_64 rng(2718);
    Modulus p7(7);
    const std::size_t d = 5;
    for (int iter = 0; iter < 200; ++iter) {
        auto q = random_query(rng, 7, d);
        auto res = find_witness(q.a, q.b, q.c, q.pat, p7);
        const WitnessPlan& plan = res.plan;

        auto rs = reduce_system(q.a, q.b, q.c, plan.u, plan.v, plan.w, p7);
        for (std::size_t r = 0; r < 2; ++r) {
            CHECK(dot(plan.x0, rs.linear.rows[r], 7) == rs.linear.rhs[r]);
            for (const Point& f : plan.basis) CHECK(dot(f, rs.linear.rows[r], 7) == 0);
        }
        CHECK(in_class(plan.u, q.pat.i, 7));
        CHECK(in_class(plan.v, q.pat.j, 7));
        CHECK(in_class(plan.w, q.pat.k, 7));
        if (!plan.independent)
            CHECK(plan.w == mod_add(mod_mul(plan.t, plan.v, 7), plan.shift, 7));
        CHECK(plan.basis.size() == (plan.independent ? d - 2 : d - 1));
    }
}

TEST_CASE("solver soundness over random instances") {
    std::mt19937_64 rng(1618);
    const int kPerConfig = 2500;
    for (auto [p, d] : std::vector<std::pair<u64, std::size_t>>{{7, 5}, {11, 5}, {7, 6}, {13, 5}}) {
        Modulus mp(p);
        u64 attempts_over_1 = 0;
        for (int iter = 0; iter < kPerConfig; ++iter) {
            auto q = random_query(rng, p, d);
            auto res = find_witness(q.a, q.b, q.c, q.pat, mp);
            CHECK(verify_witness(res.x, q.a, q.b, q.c, q.pat, mp));
            CHECK_FALSE(res.outside_guarantee);
            if (res.attempts > 1) ++attempts_over_1;
        }
        CHECK(attempts_over_1 * 2 < kPerConfig);  // median attempts = 1
    }
}

TEST_CASE("best-effort mode outside the guarantee") {
    Modulus p5(5);
    Point zero(3, 0);
    try {
        auto res = find_witness(zero, e(3, 0), e(3, 1), Pattern3{1, 1, 1}, p5);
        CHECK(res.outside_guarantee);
        CHECK(verify_witness(res.x, zero, e(3, 0), e(3, 1), Pattern3{1, 1, 1}, p5));
    } catch (const std::runtime_error&) {
        // exhaustion is acceptable outside the hypotheses
    }
    CHECK_THROWS_AS(find_witness(zero, e(3, 0), e(3, 1), Pattern3{1, 1, 1}, Modulus(9)),
                    std::invalid_argument);
}

TEST_CASE("solver result lands in the independently computed venn cell") {
    auto g = QuadranceGraph::build(GraphParams::canonical(7, 5));
    Modulus p7(7);
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 40; ++iter) {
        auto tuple = sample_distinct(rng, g.vertex_count(), 3);
        Point a = g.point_of(tuple[0]), b = g.point_of(tuple[1]), c = g.point_of(tuple[2]);
        for (unsigned bits = 0; bits < 8; ++bits) {
            Pattern3 pat{1 + int(bits & 1), 1 + int(bits >> 1 & 1), 1 + int(bits >> 2 & 1)};
            auto res = find_witness(a, b, c, pat, p7);
            // the bitset venn cell for the matching join pattern: joined
            // exactly where the class is V_1
            unsigned join = unsigned(pat.i == 1) | unsigned(pat.j == 1) << 1 |
                            unsigned(pat.k == 1) << 2;
            auto found = witnesses_for_tuple(g, tuple);
            CHECK(found[join] != DynBitset::npos);
            // solver point realizes the same pattern, hence lies in the cell
            u64 xi = g.index_of(res.x);
            bool in_cell = true;
            for (std::size_t i = 0; i < 3 && in_cell; ++i)
                in_cell = g.is_edge_index(xi, tuple[i]) == bool(join >> i & 1);
            CHECK(in_cell);
        }
    }
}

TEST_CASE("count_quadratic_solutions") {
    Modulus p7(7);
    const std::size_t d = 5;
    Point zero(d, 0);

    SUBCASE("matches a full-space scan") {
        auto res = find_witness(zero, e(d, 0), e(d, 1), Pattern3{1, 2, 1}, p7);
        u64 counted = count_quadratic_solutions(res.plan, zero, p7);

        auto rs = reduce_system(zero, e(d, 0), e(d, 1), res.plan.u, res.plan.v,
                                res.plan.w, p7);
        u64 brute = 0;
        Point x(d, 0);
        for (;;) {
            bool linear_ok = true;
            for (std::size_t r = 0; r < 2 && linear_ok; ++r)
                linear_ok = dot(x, rs.linear.rows[r], 7) == rs.linear.rhs[r];
            if (linear_ok && quadrance(x, zero, p7) == res.plan.u) ++brute;
            std::size_t pos = d;
            while (pos > 0 && ++x[pos - 1] == 7) x[--pos] = 0;
            if (pos == 0) break;
        }
        CHECK(counted == brute);
    }

    SUBCASE("at least p solutions on sampled plans") {
        std::mt19937_64 rng(808);
        for (int iter = 0; iter < 30; ++iter) {
            auto q = random_query(rng, 7, d);
            auto res = find_witness(q.a, q.b, q.c, q.pat, p7);
            u64 count = count_quadratic_solutions(res.plan, q.a, p7);
            CHECK(count >= 7);
            u64 cap = 1;
            for (std::size_t i = 0; i < res.plan.basis.size(); ++i) cap *= 7;
            CHECK(count <= cap);
        }
    }
}
