#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qec/bitset.hpp"
#include "qec/quadgraph.hpp"

namespace qec {

/// Element x + y*i of Z_p[i]; a field exactly when p = 3 (mod 4), where
/// x^2 + 1 is irreducible.
struct Fp2 {
    u64 re = 0, im = 0;
    bool operator==(const Fp2&) const = default;
};

/// Paley graph on the field of order q = p^2: vertices are field elements,
/// adjacent when their difference is a nonzero square. q = 1 (mod 4) makes
/// the square set symmetric, so the graph is undirected.
class PaleyGraph {
public:
    static PaleyGraph build(const Modulus& p);

    u64 p() const { return p_; }
    u64 order() const { return q_; }
    u64 degree() const { return (q_ - 1) / 2; }

    /// Vertex index of x + y*i is x*p + y, mirroring the quadrance-graph
    /// mixed-radix contract for d = 2.
    u64 index(Fp2 z) const { return z.re * p_ + z.im; }
    Fp2 element(u64 idx) const { return Fp2{idx / p_, idx % p_}; }

    Fp2 add(Fp2 a, Fp2 b) const;
    Fp2 sub(Fp2 a, Fp2 b) const;
    Fp2 mul(Fp2 a, Fp2 b) const;
    Fp2 pow(Fp2 a, u64 e) const;

    /// Field norm z * conj(z) = re^2 + im^2, an element of Z_p.
    u64 norm(Fp2 z) const;

    /// Nonzero-square test by exponentiation: z^((q-1)/2) = 1.
    bool is_square(Fp2 z) const;

    bool adjacent(u64 i, u64 j) const { return i != j && adj_[i].test(j); }
    const DynBitset& row(u64 i) const { return adj_[i]; }
    const std::vector<DynBitset>& rows() const { return adj_; }

private:
    explicit PaleyGraph(u64 p);

    u64 p_ = 3;
    u64 q_ = 9;
    std::vector<DynBitset> adj_;
};

/// Explicit vertex bijection between the d = 2 quadrance graph on Z_p^2 and
/// the Paley graph on Z_p[i]; (x, y) maps to x + y*i, the identity on
/// indices under the shared mixed-radix contract.
struct IsoMap {
    std::vector<u64> map;
};

struct IsoReport {
    u64 p = 0;
    bool supported = false;  // requires p = 3 (mod 4)
    bool isomorphic = false;
    std::optional<std::pair<u64, u64>> counterexample;  // first mismatched pair
    IsoMap map;
};

/// d = 2 quadrance graph whose edge values are the nonzero quadratic
/// residues mod p.
QuadranceGraph build_quadratic_residue_graph(const Modulus& p);

/// Checks edge preservation of the identity map over all vertex pairs.
IsoReport verify_isomorphism(const Modulus& p);

/// Strongly-regular parameters (v, k, lambda, mu), or nullopt when the
/// adjacency is not strongly regular.
struct SrgParams {
    u64 v = 0, k = 0, lambda = 0, mu = 0;
    bool operator==(const SrgParams&) const = default;
};

std::optional<SrgParams> srg_params(const std::vector<DynBitset>& adj);

}  // namespace qec
