// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
// Every tolerance and budget is pinned in code here; reports compare
// byte-identically after zeroing elapsed_ms, the single wall-clock field.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "qec/ec_checker.hpp"
#include "qec/paley.hpp"
#include "qec/quadgraph.hpp"
#include "qec/rng.hpp"
#include "qec/witness_solver.hpp"

using namespace qec;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

QuadranceGraph canonical(u64 m, std::size_t d) {
    return QuadranceGraph::build(GraphParams::canonical(m, d));
}

std::string normalized_json(EcReport r) {
    r.elapsed_ms = 0;
    return report_to_json(r);
}

struct SolverRun {
    std::string report_json;
    u64 failures = 0;
    u64 median_attempts = 0;
};

Pattern3 pattern_from_bits(unsigned bits) {
    return Pattern3{1 + int(bits & 1), 1 + int(bits >> 1 & 1), 1 + int(bits >> 2 & 1)};
}

// Seeded random solver workload; the digest makes two runs byte-comparable.
SolverRun run_solver_batch(u64 p, std::size_t d, u64 seed, u64 instances) {
    Modulus mp(p);
    auto g = canonical(p, d);
    std::mt19937_64 rng(seed);

    std::vector<u64> attempts;
    attempts.reserve(instances);
    u64 failures = 0;
    u64 digest = 1469598103934665603ull;  // FNV-1a
    auto mix = [&digest](u64 x) {
        for (int i = 0; i < 8; ++i) {
            digest ^= (x >> (8 * i)) & 0xff;
            digest *= 1099511628211ull;
        }
    };

    for (u64 iter = 0; iter < instances; ++iter) {
        auto tuple = sample_distinct(rng, g.vertex_count(), 3);
        Point a = g.point_of(tuple[0]), b = g.point_of(tuple[1]), c = g.point_of(tuple[2]);
        unsigned bits = static_cast<unsigned>(uniform_below(rng, 8));
        Pattern3 pat = pattern_from_bits(bits);
        try {
            WitnessResult res = find_witness(a, b, c, pat, mp);
            if (!verify_witness(res.x, a, b, c, pat, mp)) ++failures;
            attempts.push_back(res.attempts);
            mix(tuple[0]);
            mix(tuple[1]);
            mix(tuple[2]);
            mix(bits);
            mix(g.index_of(res.x));
            mix(res.attempts);
        } catch (const std::exception&) {
            ++failures;
            attempts.push_back(0);
        }
    }

    std::vector<u64> sorted = attempts;
    std::sort(sorted.begin(), sorted.end());
    u64 median = sorted.empty() ? 0 : sorted[(sorted.size() - 1) / 2];

    json j;
    j["graph"] = {{"p", p}, {"d", d}};
    j["instances"] = instances;
    j["seed"] = seed;
    j["failures"] = failures;
    j["median_attempts"] = median;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
    j["digest"] = hex;
    return SolverRun{j.dump(2), failures, median};
}

// Venn cell as a plain bitset expression over fully materialized neighbor
// rows; independent of the word-streamed search path.
DynBitset venn_cell(const QuadranceGraph& g, const std::vector<u64>& tuple, unsigned join) {
    DynBitset cell(g.vertex_count());
    for (u64 w = 0; w < cell.word_count(); ++w) cell.set_word(w, ~u64{0});
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        DynBitset row = g.neighbor_bitset_index(tuple[i]);
        if (join >> i & 1)
            cell &= row;
        else
            cell.and_not(row);
    }
    for (u64 idx : tuple) cell.reset(idx);
    return cell;
}

// ---- criteria ---------------------------------------------------------------

EcReport sampled_check(const QuadranceGraph& g, u64 samples, u64 seed, unsigned workers) {
    EcOptions opts;
    opts.mode = EcMode::Sampled;
    opts.samples = samples;
    opts.seed = seed;
    opts.workers = workers;
    return check_ec(g, 3, opts);
}

void criterion_1(std::vector<EcReport>& out_reports, std::vector<QuadranceGraph>& graphs) {
    bool pass = true;
    std::ostringstream detail;
    for (u64 p : {u64{7}, u64{11}}) {
        graphs.push_back(canonical(p, 5));
        EcReport r = sampled_check(graphs.back(), 100000, 42, 0);
        out_reports.push_back(r);
        pass &= r.pass;
        detail << "G(" << p << ",5): " << (r.pass ? "pass" : "FAIL") << " "
               << r.queries_checked << " queries in " << r.elapsed_ms << " ms; ";
    }
    report(1, pass, "sampled 3-e.c., 100000 seeded triples x 8 patterns — " + detail.str());
}

void criterion_2(std::vector<SolverRun>& out_runs) {
    bool pass = true;
    std::ostringstream detail;
    for (u64 p : {u64{7}, u64{13}}) {
        SolverRun run = run_solver_batch(p, 5, 42, 10000);
        pass &= (run.failures == 0 && run.median_attempts <= 2);
        detail << "G(" << p << ",5): failures=" << run.failures
               << " median_attempts=" << run.median_attempts << "; ";
        out_runs.push_back(std::move(run));
    }
    report(2, pass, "solver soundness over 10000 random instances each — " + detail.str());
}

void criterion_3(const QuadranceGraph& g75) {
    Modulus p7(7);
    std::mt19937_64 rng(42);
    u64 outside = 0, empty = 0;
    const u64 trials = 1000;
    for (u64 iter = 0; iter < trials; ++iter) {
        auto tuple = sample_distinct(rng, g75.vertex_count(), 3);
        unsigned bits = static_cast<unsigned>(uniform_below(rng, 8));
        Pattern3 pat = pattern_from_bits(bits);
        unsigned join = unsigned(pat.i == 1) | unsigned(pat.j == 1) << 1 |
                        unsigned(pat.k == 1) << 2;
        DynBitset cell = venn_cell(g75, tuple, join);
        if (cell.count() == 0) {
            ++empty;
            continue;
        }
        WitnessResult res = find_witness(g75.point_of(tuple[0]), g75.point_of(tuple[1]),
                                         g75.point_of(tuple[2]), pat, p7);
        if (!cell.test(g75.index_of(res.x))) ++outside;
    }
    std::ostringstream detail;
    detail << trials << " random triples on G(7,5): empty_cells=" << empty
           << " outside_cell=" << outside;
    report(3, empty == 0 && outside == 0, "solver/search agreement — " + detail.str());
}

void criterion_4() {
    bool pass = true;
    std::ostringstream detail;
    auto t0 = std::chrono::steady_clock::now();
    for (auto [m, d] : std::vector<std::pair<u64, std::size_t>>{
             {3, 2}, {5, 2}, {7, 2}, {5, 3}}) {
        auto g = canonical(m, d);
        for (unsigned n : {1u, 2u}) {
            EcOptions opts;
            opts.workers = 2;
            bool fast = check_ec(g, n, opts).pass;
            bool slow = naive_check_ec(g, n).pass;
            if (fast != slow) {
                pass = false;
                detail << "MISMATCH G(" << m << "," << d << ") n=" << n << "; ";
            }
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    pass &= ms < 60000;
    detail << "4 graphs x n in {1,2} in " << ms << " ms";
    report(4, pass, "reduced checker equals naive oracle — " + detail.str());
}

void criterion_5() {
    Modulus p7(7);
    std::mt19937_64 rng(4242);
    auto g = canonical(7, 5);
    u64 violations = 0;
    u64 min_count = ~u64{0};
    for (int iter = 0; iter < 100; ++iter) {
        auto tuple = sample_distinct(rng, g.vertex_count(), 3);
        Pattern3 pat = pattern_from_bits(static_cast<unsigned>(uniform_below(rng, 8)));
        WitnessResult res = find_witness(g.point_of(tuple[0]), g.point_of(tuple[1]),
                                         g.point_of(tuple[2]), pat, p7);
        u64 count = count_quadratic_solutions(res.plan, g.point_of(tuple[0]), p7);
        min_count = std::min(min_count, count);
        if (count < 7) ++violations;
    }
    std::ostringstream detail;
    detail << "100 random plans on G(7,5): min_count=" << min_count
           << " violations=" << violations;
    report(5, violations == 0, "quadratic solution count >= p — " + detail.str());
}

void criterion_6() {
    bool pass = true;
    std::ostringstream detail;
    for (u64 p : {3, 5, 7, 11}) {
        for (std::size_t d = 1; d <= 3; ++d) {
            auto t = sphere_table(Modulus(p), d);
            auto brute = oracle::sphere_counts(p, d);
            u64 total = 0, expect = 1;
            for (u64 c : t.counts) total += c;
            for (std::size_t i = 0; i < d; ++i) expect *= p;
            bool ok = t.counts == brute && total == expect;
            if (ok) {
                auto g = canonical(p, d);
                ok = g.degree() == degree_from_spheres(t);
            }
            if (!ok) {
                pass = false;
                detail << "MISMATCH p=" << p << " d=" << d << "; ";
            }
        }
    }
    detail << "p in {3,5,7,11}, d in {1,2,3}";
    report(6, pass, "sphere tables: convolution = brute force, degree formula — " +
                        detail.str());
}

void criterion_7() {
    bool pass = true;
    std::ostringstream detail;
    for (u64 p : {3, 7, 11}) {
        u64 q = p * p;
        SrgParams expect{q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4};
        auto iso = verify_isomorphism(Modulus(p));
        auto paley = PaleyGraph::build(Modulus(p));
        auto quad = build_quadratic_residue_graph(Modulus(p));
        auto ps = srg_params(paley.rows());
        auto qs = srg_params(adjacency_rows(quad));
        bool ok = iso.supported && iso.isomorphic && ps && qs && *ps == expect &&
                  *qs == expect;
        pass &= ok;
        detail << "p=" << p << (ok ? " ok" : " FAIL") << "; ";
    }
    report(7, pass, "Paley isomorphism + strongly-regular parameters — " + detail.str());
}

void criterion_8() {
    auto g = canonical(9, 5);  // 59049 vertices over a composite modulus
    EcOptions opts;
    opts.mode = EcMode::Sampled;
    opts.samples = 10000;
    opts.seed = 42;
    EcReport r = check_ec(g, 3, opts);
    std::ostringstream detail;
    detail << "G(9,5) sampled 10000 triples: verdict=" << (r.pass ? "pass" : "fail");
    bool ok = true;
    if (!r.pass) {
        // a failure is a finding, not an error, but its certificate must
        // re-verify against the adjacency oracle
        ok = r.certificate.has_value() && verify_certificate(g, *r.certificate);
        detail << " (finding; certificate re-verified: " << (ok ? "yes" : "NO") << ")";
    }
    report(8, ok, "composite modulus — " + detail.str());
}

void criterion_9() {
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
        auto g = canonical(7, d);
        EcOptions one;
        one.workers = 1;
        EcOptions two;
        two.workers = 2;
        EcReport r1 = check_ec(g, 3, one);
        EcReport r2 = check_ec(g, 3, two);
        bool deterministic = normalized_json(r1) == normalized_json(r2);
        pass &= deterministic;
        detail << "G(7," << d << "): verdict=" << (r1.pass ? "pass" : "fail")
               << " queries=" << r1.queries_checked
               << (deterministic ? "" : " NON-DETERMINISTIC") << "; ";
    }
    report(9, pass,
           "conjecture survey (exhaustive n=3; verdicts recorded, not asserted) — " +
               detail.str());
}

void criterion_10(const std::vector<EcReport>& c1_reports,
                  const std::vector<QuadranceGraph>& c1_graphs,
                  const std::vector<SolverRun>& c2_runs) {
    bool pass = true;
    std::ostringstream detail;

    for (std::size_t i = 0; i < c1_graphs.size(); ++i) {
        EcReport w1 = sampled_check(c1_graphs[i], 100000, 42, 1);
        EcReport w8 = sampled_check(c1_graphs[i], 100000, 42, 8);
        bool same = normalized_json(w1) == normalized_json(w8) &&
                    normalized_json(w1) == normalized_json(c1_reports[i]);
        pass &= same;
        detail << "check G(" << c1_graphs[i].modulus() << ",5) workers{1,8}: "
               << (same ? "identical" : "DIFFER") << "; ";
    }

    const u64 solver_p[] = {7, 13};
    for (std::size_t i = 0; i < c2_runs.size(); ++i) {
        SolverRun again = run_solver_batch(solver_p[i], 5, 42, 10000);
        bool same = again.report_json == c2_runs[i].report_json;
        pass &= same;
        detail << "solver G(" << solver_p[i] << ",5) rerun: "
               << (same ? "identical" : "DIFFER") << "; ";
    }
    report(10, pass, "byte-identical reports (elapsed_ms zeroed) — " + detail.str());
}

}  // namespace

int main() {
    std::vector<EcReport> c1_reports;
    std::vector<QuadranceGraph> c1_graphs;
    std::vector<SolverRun> c2_runs;

    criterion_1(c1_reports, c1_graphs);
    criterion_2(c2_runs);
    criterion_3(c1_graphs[0]);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(c1_reports, c1_graphs, c2_runs);

    if (g_failures == 0) {
        std::puts("acceptance: all criteria passed");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", g_failures);
    return 1;
}
