#include "qec/quadgraph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace qec {

namespace {

// Edge-value membership is table-backed, so the modulus itself has to be
// enumerable even in oracle-only mode.
constexpr u64 kMaxModulus = u64{1} << 24;

void check_same_dim(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
}

void check_canonical(const Point& x, const Modulus& m) {
    for (u64 c : x)
        if (c >= m.m) throw std::invalid_argument("coordinate out of range for modulus");
}

}  // namespace

u64 quadrance(const Point& x, const Point& y, const Modulus& m) {
    check_same_dim(x, y);
    check_canonical(x, m);
    check_canonical(y, m);
    u64 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        u64 diff = mod_sub(x[i], y[i], m.m);
        acc = mod_add(acc, mod_mul(diff, diff, m.m), m.m);
    }
    return acc;
}

u64 norm(const Point& x, const Modulus& m) {
    return quadrance(x, Point(x.size(), 0), m);
}

u64 inner_product(const Point& x, const Point& y, const Modulus& m) {
    check_same_dim(x, y);
    check_canonical(x, m);
    check_canonical(y, m);
    u64 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc = mod_add(acc, mod_mul(x[i], y[i], m.m), m.m);
    return acc;
}

Point point_sub(const Point& x, const Point& y, const Modulus& m) {
    check_same_dim(x, y);
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mod_sub(x[i], y[i], m.m);
    return out;
}

Point point_add(const Point& x, const Point& y, const Modulus& m) {
    check_same_dim(x, y);
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mod_add(x[i], y[i], m.m);
    return out;
}

std::vector<u64> canonical_edge_values(u64 m) {
    std::vector<u64> v((m - 1) / 2 + 1);
    for (u64 i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

GraphParams GraphParams::canonical(u64 m, std::size_t d) {
    return with_edge_values(m, d, canonical_edge_values(m));
}

GraphParams GraphParams::with_edge_values(u64 m, std::size_t d, std::vector<u64> values) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (m > kMaxModulus) throw std::overflow_error("instance too large: modulus");
    Modulus mod(m);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty() && values.back() >= m)
        throw std::invalid_argument("edge value out of range");
    return GraphParams{mod, d, std::move(values)};
}

QuadranceGraph::QuadranceGraph(GraphParams params, u64 vertex_count, std::vector<u64> strides)
    : params_(std::move(params)), vertex_count_(vertex_count), strides_(std::move(strides)) {
    edge_member_ = DynBitset(params_.m.m);
    for (u64 v : params_.edge_values) edge_member_.set(v);
}

QuadranceGraph QuadranceGraph::build(GraphParams params, u64 materialize_limit) {
    const u64 m = params.m.m;
    const std::size_t d = params.d;

    u64 count = 1;
    std::vector<u64> strides(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (count > (u64{1} << 62) / m) throw std::overflow_error("instance too large");
        count *= m;
    }
    for (std::size_t k = 0; k < d; ++k) {
        strides[k] = 1;
        for (std::size_t j = k + 1; j < d; ++j) strides[k] *= m;
    }

    QuadranceGraph g(std::move(params), count, std::move(strides));
    if (count <= materialize_limit) {
        DynBitset conn(count);
        Point s(d, 0);
        for (u64 idx = 0; idx < count; ++idx) {
            if (idx != 0 && g.is_edge_value(norm(s, g.params_.m))) conn.set(idx);
            // mixed-radix increment of s
            for (std::size_t k = d; k-- > 0;) {
                if (++s[k] < m) break;
                s[k] = 0;
            }
        }
        g.conn_ = std::move(conn);
    }
    return g;
}

u64 QuadranceGraph::index_of(const Point& x) const {
    if (x.size() != params_.d) throw std::invalid_argument("dimension mismatch");
    check_canonical(x, params_.m);
    u64 idx = 0;
    for (std::size_t k = 0; k < params_.d; ++k) idx += x[k] * strides_[k];
    return idx;
}

Point QuadranceGraph::point_of(u64 index) const {
    Point x(params_.d);
    for (std::size_t k = 0; k < params_.d; ++k) {
        x[k] = index / strides_[k];
        index %= strides_[k];
    }
    return x;
}

bool QuadranceGraph::is_edge(const Point& x, const Point& y) const {
    if (x == y) return false;  // 0 may be an edge value, but loops are excluded
    return is_edge_value(quadrance(x, y, params_.m));
}

bool QuadranceGraph::is_edge_index(u64 i, u64 j) const {
    if (i == j) return false;
    return is_edge(point_of(i), point_of(j));
}

const DynBitset& QuadranceGraph::connection_set() const {
    if (!materialized()) throw std::logic_error("not materialized");
    return conn_;
}

u64 QuadranceGraph::degree() const { return connection_set().count(); }

DynBitset QuadranceGraph::neighbor_bitset(const Point& x) const {
    return neighbor_bitset_index(index_of(x));
}

DynBitset QuadranceGraph::neighbor_bitset_index(u64 index) const {
    if (!materialized()) throw std::logic_error("not materialized");
    DynBitset out(vertex_count_);
    NeighborStream stream(*this, index);
    for (u64 w = 0; w < out.word_count(); ++w) out.set_word(w, stream.next_word());
    return out;
}

void QuadranceGraph::write_edge_list(std::ostream& out) const {
    if (!materialized()) throw std::logic_error("not materialized");
    for (u64 i = 0; i < vertex_count_; ++i) {
        DynBitset row = neighbor_bitset_index(i);
        for (u64 j = i + 1; j < vertex_count_; ++j)
            if (row.test(j)) out << i << ' ' << j << '\n';
    }
}

NeighborStream::NeighborStream(const QuadranceGraph& g, u64 vertex_index)
    : g_(&g),
      conn_(&g.connection_set()),
      m_(g.modulus()),
      vertices_(g.vertex_count()),
      pdig_(g.dim(), 0),
      qdig_(g.dim()) {
    Point x = g.point_of(vertex_index);
    const auto& strides = g.strides();
    for (std::size_t k = 0; k < x.size(); ++k) {
        qdig_[k] = x[k] == 0 ? 0 : m_ - x[k];  // (-x) mod m, digit by digit
        src_ += qdig_[k] * strides[k];
    }
}

u64 NeighborStream::next_word() {
    const auto& strides = g_->strides();
    const std::size_t d = pdig_.size();
    u64 word = 0;
    for (unsigned bit = 0; bit < 64 && j_ < vertices_; ++bit, ++j_) {
        if (conn_->test(src_)) word |= u64{1} << bit;
        // Advance j by one: increment P_j in mixed radix and mirror every
        // changed digit onto Q_j = P_j - x (each changed digit is +1 mod m).
        for (std::size_t k = d; k-- > 0;) {
            if (++qdig_[k] == m_) {
                qdig_[k] = 0;
                src_ -= (m_ - 1) * strides[k];
            } else {
                src_ += strides[k];
            }
            if (++pdig_[k] < m_) break;
            pdig_[k] = 0;
        }
    }
    return word;
}

std::vector<DynBitset> adjacency_rows(const QuadranceGraph& g) {
    std::vector<DynBitset> rows;
    rows.reserve(g.vertex_count());
    for (u64 i = 0; i < g.vertex_count(); ++i) rows.push_back(g.neighbor_bitset_index(i));
    return rows;
}

SphereTable sphere_table(const Modulus& p, std::size_t d) {
    if (!p.odd_prime()) throw std::invalid_argument("requires odd prime");
    const u64 m = p.m;

    std::vector<u64> one(m, 0);
    one[0] = 1;
    for (u64 u = 1; u < m; ++u) one[u] = static_cast<u64>(1 + legendre_symbol(u, p));

    std::vector<u64> acc = one;
    for (std::size_t k = 1; k < d; ++k) {
        std::vector<u64> next(m, 0);
        for (u64 a = 0; a < m; ++a) {
            if (acc[a] == 0) continue;
            for (u64 b = 0; b < m; ++b)
                next[(a + b) % m] += acc[a] * one[b];
        }
        acc = std::move(next);
    }
    return SphereTable{m, d, std::move(acc)};
}

u64 degree_from_spheres(const SphereTable& t) {
    u64 sum = 0;
    for (u64 u = 0; u <= (t.p - 1) / 2; ++u) sum += t.counts[u];
    return sum - 1;
}

}  // namespace qec
