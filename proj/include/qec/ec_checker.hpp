#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qec/quadgraph.hpp"

namespace qec {

enum class EcMode { Exhaustive, Sampled };

struct EcOptions {
    EcMode mode = EcMode::Exhaustive;
    u64 samples = 0;       // sampled mode: number of random tuples
    u64 seed = 0;          // sampled mode: generator seed
    unsigned workers = 0;  // 0 = hardware concurrency
    bool full_scan = false;  // keep scanning after the first failing query
};

/// A query with no witness. `pattern` records the join pattern as an n-bit
/// integer over the tuple's point order: bit i set means point i was required
/// to be joined (it is listed in `a`), clear means non-joined (`b`).
struct EcCertificate {
    std::vector<Point> a;
    std::vector<Point> b;
    unsigned pattern = 0;
};

struct EcReport {
    u64 m = 0;
    std::size_t d = 0;
    std::vector<u64> edge_values;
    unsigned n = 0;
    EcMode mode = EcMode::Exhaustive;
    u64 samples = 0;
    u64 seed = 0;
    bool full_scan = false;
    bool pass = false;
    std::optional<EcCertificate> certificate;
    u64 failing_queries = 0;  // full scans only: total number of failing queries
    u64 queries_checked = 0;
    i64 elapsed_ms = 0;
};

/// z is outside a and b, joined to every point of a and to none of b.
bool is_witness(const QuadranceGraph& g, const std::vector<Point>& a,
                const std::vector<Point>& b, const Point& z);

/// Decides the n-e.c. property.
///
/// Exhaustive mode uses the translation symmetry of the graph: the first
/// point of every query tuple is fixed at the origin and the remaining n-1
/// points range over all strictly increasing index tuples, each checked under
/// all 2^n join patterns. Witness existence is evaluated per pattern from the
/// translated connection-set words, lowest set bit first. The verdict,
/// certificate and queries_checked are identical for every worker count: on
/// failure the earliest failing query in canonical order is reported and
/// queries_checked counts queries up to and including it.
///
/// Sampled mode draws `samples` ordered tuples of distinct vertices with a
/// seeded generator and checks all 2^n patterns for each.
EcReport check_ec(const QuadranceGraph& g, unsigned n, const EcOptions& opts);

/// Reference oracle: direct scan over all n-subsets, patterns and candidate
/// witnesses with no symmetry reduction. O(V^n * 2^n * V); small graphs only.
EcReport naive_check_ec(const QuadranceGraph& g, unsigned n);

/// Number of vertices outside `points` realizing each of the 2^n adjacency
/// patterns against them.
std::vector<u64> venn_cell_counts(const QuadranceGraph& g, const std::vector<Point>& points);

/// Lowest-index witness for every 2^n join pattern against one tuple of
/// distinct vertex indices (DynBitset::npos marks an empty cell).
std::vector<u64> witnesses_for_tuple(const QuadranceGraph& g, const std::vector<u64>& tuple);

/// Re-runs the full witness scan through the adjacency oracle and confirms
/// the certificate's query really has no witness.
bool verify_certificate(const QuadranceGraph& g, const EcCertificate& cert);

/// Canonical JSON document for a report. Keys are sorted; every field except
/// elapsed_ms is deterministic for a fixed configuration.
std::string report_to_json(const EcReport& r, int indent = 2);

}  // namespace qec
