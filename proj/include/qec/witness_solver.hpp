#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qec/linalg.hpp"
#include "qec/quadgraph.hpp"

namespace qec {

/// Target quadrance class per point: 1 selects V_1 = {0..(p-1)/2} (edge),
/// 2 selects V_2 = {(p+1)/2..p-1} (non-edge).
struct Pattern3 {
    int i = 1, j = 1, k = 1;

    static Pattern3 parse(const std::string& s);  // e.g. "121"
    std::string str() const;
    int cls(std::size_t pos) const { return pos == 0 ? i : pos == 1 ? j : k; }
};

/// Membership of q in V_cls over Z_p.
bool in_class(u64 q, int cls, u64 p);

/// Relation between B-A and C-A. When dependent, C-A = t(B-A) with the
/// unique t outside {0, 1}.
struct Dependence {
    bool independent = true;
    u64 t = 0;
};

Dependence classify_dependence(const Point& a, const Point& b, const Point& c,
                               const Modulus& p);

/// The solver's intermediate state: target values (u, v, w), the case tag,
/// one particular solution of the two linear forms, and a basis of their
/// common null space. In the dependent case w = t*v + shift holds exactly,
/// with shift = |C| + (t-1)|A| - t|B| - (t-1)u.
struct WitnessPlan {
    u64 u = 0, v = 0, w = 0;
    bool independent = true;
    u64 t = 0;      // dependent case only
    u64 shift = 0;  // dependent case only
    Point x0;
    std::vector<Point> basis;
};

struct WitnessResult {
    Point x;
    WitnessPlan plan;
    u64 attempts = 0;          // (u,v,w) triples tried
    bool outside_guarantee = false;  // p < 7 or d < 5: best effort only
};

/// The linear forms obtained by eliminating the squares from the quadrance
/// system, plus the retained constraint Q(X, A) = u:
///   <X, B-A> = (u - v + |B| - |A|) / 2
///   <X, C-A> = (u - w + |C| - |A|) / 2
struct ReducedSystem {
    LinearSystem linear;
    u64 u = 0;
};

ReducedSystem reduce_system(const Point& a, const Point& b, const Point& c, u64 u, u64 v,
                            u64 w, const Modulus& p);

/// First (u, v, w) of the deterministic compatible stream: lexicographic over
/// V_i x V_j x V_k in the independent case; in the dependent case u then v
/// ascending with w = t*v + shift(u), keeping only w in V_k. Throws when the
/// scan exhausts (unreachable for p >= 7).
std::tuple<u64, u64, u64> choose_uvw(Pattern3 pattern, const Dependence& dep, const Point& a,
                                     const Point& b, const Point& c, const Modulus& p);

/// Dependent-case scan in isolation: shift(u) = a0 - (t-1)u where a0 packs
/// the norm terms. Exposed for exhaustive verification of the scan.
std::optional<std::tuple<u64, u64, u64>> first_dependent_triple(u64 t, u64 a0,
                                                                Pattern3 pattern,
                                                                const Modulus& p);

/// Constructs X with Q(X,A) in V_i, Q(X,B) in V_j, Q(X,C) in V_k and
/// X outside {A,B,C}: chooses (u,v,w), reduces to the two linear forms,
/// parameterizes their affine solution space and solves the remaining
/// univariate quadratic along the first basis direction for every assignment
/// of the other parameters, in ascending mixed-radix order. Advances to the
/// next compatible (u,v,w) if a triple yields no acceptable point.
WitnessResult find_witness(const Point& a, const Point& b, const Point& c, Pattern3 pattern,
                           const Modulus& p);

/// True when x realizes the pattern against (a, b, c) and differs from all
/// three.
bool verify_witness(const Point& x, const Point& a, const Point& b, const Point& c,
                    Pattern3 pattern, const Modulus& p);

/// Exact number of points of the plan's affine solution space satisfying
/// Q(X, A) = u, by full enumeration of the parameters. Throws when p^k
/// exceeds the enumeration budget.
u64 count_quadratic_solutions(const WitnessPlan& plan, const Point& a, const Modulus& p);

}  // namespace qec
