#include "qec/witness_solver.hpp"

#include <stdexcept>

namespace qec {

namespace {

void require_odd_prime(const Modulus& p) {
    if (!p.odd_prime()) throw std::invalid_argument("requires odd prime");
}

void require_distinct(const Point& a, const Point& b, const Point& c) {
    if (a == b || a == c || b == c)
        throw std::invalid_argument("points must be pairwise distinct");
}

u64 class_lo(int cls, u64 p) { return cls == 1 ? 0 : (p + 1) / 2; }
u64 class_hi(int cls, u64 p) { return cls == 1 ? (p - 1) / 2 : p - 1; }

// Deterministic stream of compatible (u, v, w) triples for one query:
// lexicographic over V_i x V_j x V_k when independent; (u, v) ascending with
// w forced to t*v + shift(u) and filtered by V_k when dependent.
class TripleStream {
public:
    TripleStream(Pattern3 pat, const Dependence& dep, u64 a0, const Modulus& p)
        : pat_(pat), dep_(dep), a0_(a0), p_(p.m) {
        u_ = class_lo(pat.i, p_);
        v_ = class_lo(pat.j, p_);
        w_ = class_lo(pat.k, p_);
    }

    std::optional<std::tuple<u64, u64, u64>> next() {
        if (dep_.independent) {
            if (done_) return std::nullopt;
            auto out = std::make_tuple(u_, v_, w_);
            if (++w_ > class_hi(pat_.k, p_)) {
                w_ = class_lo(pat_.k, p_);
                if (++v_ > class_hi(pat_.j, p_)) {
                    v_ = class_lo(pat_.j, p_);
                    if (++u_ > class_hi(pat_.i, p_)) done_ = true;
                }
            }
            return out;
        }
        while (u_ <= class_hi(pat_.i, p_)) {
            u64 shift = mod_sub(a0_, mod_mul(mod_sub(dep_.t, 1, p_), u_, p_), p_);
            while (v_ <= class_hi(pat_.j, p_)) {
                u64 v = v_++;
                u64 w = mod_add(mod_mul(dep_.t, v, p_), shift, p_);
                if (in_class(w, pat_.k, p_)) return std::make_tuple(u_, v, w);
            }
            v_ = class_lo(pat_.j, p_);
            ++u_;
        }
        return std::nullopt;
    }

private:
    Pattern3 pat_;
    Dependence dep_;
    u64 a0_;
    u64 p_;
    u64 u_, v_, w_;
    bool done_ = false;
};

// Norm terms feeding the dependent-case compatibility shift:
// a0 = |C| + (t-1)|A| - t|B|, so shift(u) = a0 - (t-1)u.
u64 dependent_a0(const Point& a, const Point& b, const Point& c, u64 t, const Modulus& p) {
    u64 na = norm(a, p), nb = norm(b, p), nc = norm(c, p);
    u64 r = mod_add(nc, mod_mul(mod_sub(t, 1, p.m), na, p.m), p.m);
    return mod_sub(r, mod_mul(t, nb, p.m), p.m);
}

// Coefficients of the univariate quadratic in the leading parameter once the
// remaining parameters are fixed: substituting X = x0 + sum(l_i f_i) into
// Q(X, A) = u gives, with y0 = x0 - A,
//   |y0 + sum l_i f_i| = u.
struct PlanQuadratic {
    u64 p;
    u64 u;
    std::size_t k;                       // number of basis vectors
    std::vector<std::vector<u64>> gram;  // <f_i, f_j>
    std::vector<u64> h;                  // <y0, f_i>
    u64 n0;                              // |y0|

    PlanQuadratic(const WitnessPlan& plan, const Point& a, const Modulus& pm)
        : p(pm.m), u(plan.u), k(plan.basis.size()) {
        Point y0 = point_sub(plan.x0, a, pm);
        gram.assign(k, std::vector<u64>(k));
        h.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            h[i] = inner_product(y0, plan.basis[i], pm);
            for (std::size_t j = 0; j < k; ++j)
                gram[i][j] = inner_product(plan.basis[i], plan.basis[j], pm);
        }
        n0 = norm(y0, pm);
    }

    // tail = (l_2, ..., l_k); returns (qa, qb, qc) with the equation
    // qa*l_1^2 + qb*l_1 + qc = 0.
    std::tuple<u64, u64, u64> coeffs(const std::vector<u64>& tail) const {
        u64 qa = gram[0][0];
        u64 cross = h[0];
        for (std::size_t i = 0; i < tail.size(); ++i)
            cross = mod_add(cross, mod_mul(tail[i], gram[0][i + 1], p), p);
        u64 qb = mod_add(cross, cross, p);
        u64 qc = n0;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            qc = mod_add(qc, mod_mul(2, mod_mul(tail[i], h[i + 1], p), p), p);
            for (std::size_t j = 0; j < tail.size(); ++j)
                qc = mod_add(qc,
                             mod_mul(mod_mul(tail[i], tail[j], p), gram[i + 1][j + 1], p), p);
        }
        qc = mod_sub(qc, u, p);
        return {qa, qb, qc};
    }
};

}  // namespace

Pattern3 Pattern3::parse(const std::string& s) {
    if (s.size() != 3 || s.find_first_not_of("12") != std::string::npos)
        throw std::invalid_argument("pattern must be three characters over {1,2}");
    return Pattern3{s[0] - '0', s[1] - '0', s[2] - '0'};
}

std::string Pattern3::str() const {
    return {char('0' + i), char('0' + j), char('0' + k)};
}

bool in_class(u64 q, int cls, u64 p) {
    q %= p;
    return cls == 1 ? q <= (p - 1) / 2 : q >= (p + 1) / 2;
}

Dependence classify_dependence(const Point& a, const Point& b, const Point& c,
                               const Modulus& p) {
    require_odd_prime(p);
    require_distinct(a, b, c);
    Point ba = point_sub(b, a, p);
    Point ca = point_sub(c, a, p);

    LinearSystem sys(p, ba.size());
    sys.add_row(ba, 0);
    sys.add_row(ca, 0);
    if (matrix_rank(sys) == 2) return Dependence{true, 0};

    // dependent: t = (C-A)_k / (B-A)_k at the first nonzero coordinate of B-A
    std::size_t k = 0;
    while (ba[k] == 0) ++k;
    u64 t = mod_mul(ca[k], mod_inv(ba[k], p.m), p.m);
    return Dependence{false, t};
}

ReducedSystem reduce_system(const Point& a, const Point& b, const Point& c, u64 u, u64 v,
                            u64 w, const Modulus& p) {
    require_odd_prime(p);
    require_distinct(a, b, c);
    const u64 m = p.m;
    const u64 inv2 = mod_inv(2, m);
    u64 na = norm(a, p), nb = norm(b, p), nc = norm(c, p);

    LinearSystem sys(p, a.size());
    u64 rhs_b = mod_mul(mod_add(mod_sub(u, v, m), mod_sub(nb, na, m), m), inv2, m);
    u64 rhs_c = mod_mul(mod_add(mod_sub(u, w, m), mod_sub(nc, na, m), m), inv2, m);
    sys.add_row(point_sub(b, a, p), rhs_b);
    sys.add_row(point_sub(c, a, p), rhs_c);
    return ReducedSystem{std::move(sys), u % m};
}

std::optional<std::tuple<u64, u64, u64>> first_dependent_triple(u64 t, u64 a0,
                                                                Pattern3 pattern,
                                                                const Modulus& p) {
    TripleStream stream(pattern, Dependence{false, t % p.m}, a0 % p.m, p);
    return stream.next();
}

std::tuple<u64, u64, u64> choose_uvw(Pattern3 pattern, const Dependence& dep, const Point& a,
                                     const Point& b, const Point& c, const Modulus& p) {
    require_odd_prime(p);
    u64 a0 = dep.independent ? 0 : dependent_a0(a, b, c, dep.t, p);
    TripleStream stream(pattern, dep, a0, p);
    auto t = stream.next();
    if (!t) throw std::runtime_error("no compatible (u,v,w)");
    return *t;
}

bool verify_witness(const Point& x, const Point& a, const Point& b, const Point& c,
                    Pattern3 pattern, const Modulus& p) {
    if (x == a || x == b || x == c) return false;
    return in_class(quadrance(x, a, p), pattern.i, p.m) &&
           in_class(quadrance(x, b, p), pattern.j, p.m) &&
           in_class(quadrance(x, c, p), pattern.k, p.m);
}

WitnessResult find_witness(const Point& a, const Point& b, const Point& c, Pattern3 pattern,
                           const Modulus& p) {
    require_odd_prime(p);
    require_distinct(a, b, c);
    const u64 m = p.m;
    const std::size_t d = a.size();

    WitnessResult result;
    result.outside_guarantee = (m < 7 || d < 5);

    Dependence dep = classify_dependence(a, b, c, p);
    u64 a0 = dep.independent ? 0 : dependent_a0(a, b, c, dep.t, p);
    TripleStream stream(pattern, dep, a0, p);

    while (auto triple = stream.next()) {
        ++result.attempts;
        auto [u, v, w] = *triple;
        ReducedSystem rs = reduce_system(a, b, c, u, v, w, p);
        auto x0 = particular_solution(rs.linear);
        if (!x0) continue;  // cannot happen for compatible triples

        WitnessPlan plan;
        plan.u = u;
        plan.v = v;
        plan.w = w;
        plan.independent = dep.independent;
        if (!dep.independent) {
            plan.t = dep.t;
            plan.shift = mod_sub(a0, mod_mul(mod_sub(dep.t, 1, m), u, m), m);
        }
        plan.x0 = *x0;
        plan.basis = null_space_basis(rs.linear);

        const std::size_t k = plan.basis.size();
        PlanQuadratic quad(plan, a, p);

        auto try_point = [&](const std::vector<u64>& tail, u64 l1) -> std::optional<Point> {
            Point x = plan.x0;
            for (std::size_t i = 0; i < d; ++i) {
                u64 acc = mod_mul(l1, plan.basis[0][i], m);
                for (std::size_t t2 = 0; t2 < tail.size(); ++t2)
                    acc = mod_add(acc, mod_mul(tail[t2], plan.basis[t2 + 1][i], m), m);
                x[i] = mod_add(x[i], acc, m);
            }
            if (x == a || x == b || x == c) return std::nullopt;
            return x;
        };

        if (k == 0) {
            // fully determined; accept x0 when it already satisfies Q = u
            if (quad.n0 == plan.u && *x0 != a && *x0 != b && *x0 != c) {
                result.x = *x0;
                result.plan = std::move(plan);
                return result;
            }
            continue;
        }

        // enumerate the non-leading parameters in ascending mixed-radix order
        std::vector<u64> tail(k - 1, 0);
        for (;;) {
            auto [qa, qb, qc] = quad.coeffs(tail);
            QuadraticRoots roots = solve_univariate_quadratic(qa, qb, qc, p);
            if (roots.all) {
                for (u64 l1 = 0; l1 < m; ++l1)
                    if (auto x = try_point(tail, l1)) {
                        result.x = *x;
                        result.plan = std::move(plan);
                        return result;
                    }
            } else {
                for (u64 l1 : roots.roots)
                    if (auto x = try_point(tail, l1)) {
                        result.x = *x;
                        result.plan = std::move(plan);
                        return result;
                    }
            }
            // next assignment; pos reaching 0 means the odometer wrapped
            std::size_t pos = tail.size();
            while (pos > 0 && ++tail[pos - 1] == m) tail[--pos] = 0;
            if (pos == 0) break;
        }
    }
    throw std::runtime_error("witness search exhausted all compatible (u,v,w)");
}

u64 count_quadratic_solutions(const WitnessPlan& plan, const Point& a, const Modulus& p) {
    require_odd_prime(p);
    const u64 m = p.m;
    const std::size_t k = plan.basis.size();

    double budget = 1;
    for (std::size_t i = 0; i < k; ++i) budget *= static_cast<double>(m);
    if (budget > 1e8) throw std::invalid_argument("enumeration budget exceeded");

    PlanQuadratic quad(plan, a, p);
    if (k == 0) return quad.n0 == plan.u ? 1 : 0;

    u64 count = 0;
    std::vector<u64> tail(k - 1, 0);
    for (;;) {
        auto [qa, qb, qc] = quad.coeffs(tail);
        count += solve_univariate_quadratic(qa, qb, qc, p).count(m);
        std::size_t pos = tail.size();
        while (pos > 0 && ++tail[pos - 1] == m) tail[--pos] = 0;
        if (pos == 0) break;
    }
    return count;
}

}  // namespace qec
