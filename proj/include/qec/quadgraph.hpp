#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qec/bitset.hpp"
#include "qec/zmod.hpp"

namespace qec {

/// A point of Z_m^d: length-d vector of canonical residues.
using Point = std::vector<u64>;

/// Sum of squared coordinate differences, mod m.
u64 quadrance(const Point& x, const Point& y, const Modulus& m);

/// quadrance(x, origin).
u64 norm(const Point& x, const Modulus& m);

u64 inner_product(const Point& x, const Point& y, const Modulus& m);

Point point_sub(const Point& x, const Point& y, const Modulus& m);
Point point_add(const Point& x, const Point& y, const Modulus& m);

/// Canonical edge-value set {0, ..., floor((m-1)/2)}. For odd prime p this is
/// the low half of Z_p; the same convention extends to composite m.
std::vector<u64> canonical_edge_values(u64 m);

struct GraphParams {
    Modulus m;
    std::size_t d;
    std::vector<u64> edge_values;  // sorted, unique, all < m

    static GraphParams canonical(u64 m, std::size_t d);
    static GraphParams with_edge_values(u64 m, std::size_t d, std::vector<u64> values);
};

/// Graph on Z_m^d with an edge between x != y iff quadrance(x, y) is an edge
/// value. Adjacency depends only on x - y, so the whole graph is described by
/// one connection-set indicator bitset; per-vertex rows are translations of
/// it. Vertex indexing is big-endian mixed radix:
/// index(x) = sum_i x_i * m^(d-1-i).
class QuadranceGraph {
public:
    static constexpr u64 kDefaultMaterializeLimit = u64{1} << 21;

    /// Builds the graph; materializes the connection-set bitset when the
    /// vertex count is within materialize_limit, otherwise stays oracle-only.
    static QuadranceGraph build(GraphParams params,
                                u64 materialize_limit = kDefaultMaterializeLimit);

    const GraphParams& params() const { return params_; }
    u64 modulus() const { return params_.m.m; }
    const Modulus& mod() const { return params_.m; }
    std::size_t dim() const { return params_.d; }
    u64 vertex_count() const { return vertex_count_; }
    bool materialized() const { return conn_.size() != 0; }

    u64 index_of(const Point& x) const;
    Point point_of(u64 index) const;

    bool is_edge_value(u64 q) const { return edge_member_.test(q % params_.m.m); }
    bool is_edge(const Point& x, const Point& y) const;
    bool is_edge_index(u64 i, u64 j) const;

    /// Degree of every vertex (the graph is regular). Requires materialized.
    u64 degree() const;

    const DynBitset& connection_set() const;

    /// Adjacency row of x as a bitset, built by translating the connection
    /// set. Requires materialized.
    DynBitset neighbor_bitset(const Point& x) const;
    DynBitset neighbor_bitset_index(u64 index) const;

    /// Edge list as "i j" lines, i < j, ascending. Requires materialized.
    void write_edge_list(std::ostream& out) const;

    const std::vector<u64>& strides() const { return strides_; }

private:
    QuadranceGraph(GraphParams params, u64 vertex_count, std::vector<u64> strides);

    GraphParams params_;
    u64 vertex_count_ = 0;
    std::vector<u64> strides_;  // strides_[k] = m^(d-1-k)
    DynBitset edge_member_;     // indicator of edge_values over Z_m
    DynBitset conn_;            // indicator over Z_m^d; empty when oracle-only
};

/// Streams the bits of neighbor_bitset(x) one 64-bit word at a time in
/// ascending index order without materializing the row: destination bit j is
/// conn[index(P_j - x)], and the source index is maintained incrementally as
/// j sweeps the vertex range.
class NeighborStream {
public:
    NeighborStream(const QuadranceGraph& g, u64 vertex_index);

    /// Bits for destinations [64*w, 64*w+64) of consecutive w; zero-padded
    /// past the last vertex.
    u64 next_word();

private:
    const QuadranceGraph* g_;
    const DynBitset* conn_;
    u64 m_;
    u64 vertices_;
    u64 j_ = 0;
    u64 src_ = 0;
    std::vector<u64> pdig_;  // digits of j (big-endian mixed radix)
    std::vector<u64> qdig_;  // digits of P_j - x
};

/// Full adjacency rows; intended for desk-scale graphs (isomorphism and
/// strong-regularity checks).
std::vector<DynBitset> adjacency_rows(const QuadranceGraph& g);

/// counts[u] = number of points X in Z_p^d with norm(X) = u.
struct SphereTable {
    u64 p = 0;
    std::size_t d = 0;
    std::vector<u64> counts;
};

/// Sphere sizes by d-fold convolution of the one-dimensional table
/// N_1(0) = 1, N_1(u) = 1 + legendre(u) for u != 0. O(d * p^2).
SphereTable sphere_table(const Modulus& p, std::size_t d);

/// Degree of the canonical graph G_{p,d} from its sphere table:
/// sum of N_d(u) over u in V_1, minus the zero point.
u64 degree_from_spheres(const SphereTable& t);

}  // namespace qec
