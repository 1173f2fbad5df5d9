#include "qec/paley.hpp"

#include <stdexcept>

namespace qec {

PaleyGraph::PaleyGraph(u64 p) : p_(p), q_(p * p) {}

PaleyGraph PaleyGraph::build(const Modulus& p) {
    if (!p.odd_prime() || p.m % 4 != 3)
        throw std::invalid_argument("extension by i not a field");
    if (p.m >= (u64{1} << 20)) throw std::overflow_error("instance too large");

    PaleyGraph g(p.m);
    g.adj_.assign(g.q_, DynBitset(g.q_));
    for (u64 i = 0; i < g.q_; ++i) {
        for (u64 j = i + 1; j < g.q_; ++j) {
            if (g.is_square(g.sub(g.element(i), g.element(j)))) {
                g.adj_[i].set(j);
                g.adj_[j].set(i);
            }
        }
    }
    return g;
}

Fp2 PaleyGraph::add(Fp2 a, Fp2 b) const {
    return Fp2{mod_add(a.re, b.re, p_), mod_add(a.im, b.im, p_)};
}

Fp2 PaleyGraph::sub(Fp2 a, Fp2 b) const {
    return Fp2{mod_sub(a.re, b.re, p_), mod_sub(a.im, b.im, p_)};
}

Fp2 PaleyGraph::mul(Fp2 a, Fp2 b) const {
    // (a.re + a.im i)(b.re + b.im i) with i^2 = -1
    u64 re = mod_sub(mod_mul(a.re, b.re, p_), mod_mul(a.im, b.im, p_), p_);
    u64 im = mod_add(mod_mul(a.re, b.im, p_), mod_mul(a.im, b.re, p_), p_);
    return Fp2{re, im};
}

Fp2 PaleyGraph::pow(Fp2 a, u64 e) const {
    Fp2 r{1, 0};
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 PaleyGraph::norm(Fp2 z) const {
    return mod_add(mod_mul(z.re, z.re, p_), mod_mul(z.im, z.im, p_), p_);
}

bool PaleyGraph::is_square(Fp2 z) const {
    if (z.re == 0 && z.im == 0) return false;
    return pow(z, (q_ - 1) / 2) == Fp2{1, 0};
}

QuadranceGraph build_quadratic_residue_graph(const Modulus& p) {
    if (!p.odd_prime()) throw std::invalid_argument("requires odd prime");
    std::vector<u64> squares;
    for (u64 x = 1; x < p.m; ++x) {
        u64 s = mod_mul(x, x, p.m);
        squares.push_back(s);
    }
    return QuadranceGraph::build(GraphParams::with_edge_values(p.m, 2, std::move(squares)));
}

IsoReport verify_isomorphism(const Modulus& p) {
    IsoReport report;
    report.p = p.m;
    report.supported = p.odd_prime() && p.m % 4 == 3;
    if (!report.supported) return report;

    QuadranceGraph quad = build_quadratic_residue_graph(p);
    PaleyGraph paley = PaleyGraph::build(p);

    const u64 q = paley.order();
    report.map.map.resize(q);
    for (u64 i = 0; i < q; ++i) report.map.map[i] = i;  // (x, y) -> x + y*i

    report.isomorphic = true;
    for (u64 i = 0; i < q && report.isomorphic; ++i) {
        Point a = quad.point_of(i);
        for (u64 j = i + 1; j < q; ++j) {
            bool quad_edge = quad.is_edge(a, quad.point_of(j));
            bool paley_edge = paley.adjacent(i, j);
            if (quad_edge != paley_edge) {
                report.isomorphic = false;
                report.counterexample = std::make_pair(i, j);
                break;
            }
        }
    }
    return report;
}

std::optional<SrgParams> srg_params(const std::vector<DynBitset>& adj) {
    const u64 v = adj.size();
    if (v < 2) return std::nullopt;

    u64 k = adj[0].count();
    for (u64 i = 1; i < v; ++i)
        if (adj[i].count() != k) return std::nullopt;

    std::optional<u64> lambda, mu;
    for (u64 i = 0; i < v; ++i) {
        for (u64 j = i + 1; j < v; ++j) {
            DynBitset common = adj[i];
            common &= adj[j];
            u64 c = common.count();
            auto& slot = adj[i].test(j) ? lambda : mu;
            if (!slot)
                slot = c;
            else if (*slot != c)
                return std::nullopt;
        }
    }
    if (!lambda || !mu) return std::nullopt;
    return SrgParams{v, k, *lambda, *mu};
}

}  // namespace qec
