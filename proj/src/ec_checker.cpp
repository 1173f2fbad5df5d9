#include "qec/ec_checker.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "qec/rng.hpp"

namespace qec {

namespace {

constexpr u64 npos = DynBitset::npos;

u64 binomial_checked(u64 a, u64 b, u64 cap) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (u64 i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;
        if (r > cap) throw std::overflow_error("exhaustive enumeration too large");
    }
    return static_cast<u64>(r);
}

unsigned resolve_workers(unsigned requested) {
    if (requested) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Deterministic merge of failing queries found by concurrent workers: the
// smallest canonical query index wins, independent of scheduling.
struct FailureMerge {
    std::mutex mu;
    u64 best = npos;
    std::vector<u64> best_tuple;
    unsigned best_pattern = 0;
    std::atomic<u64> bound{npos};
    std::atomic<u64> failing{0};

    void offer(u64 q, const std::vector<u64>& tuple, unsigned pattern) {
        std::lock_guard<std::mutex> lk(mu);
        if (q < best) {
            best = q;
            best_tuple = tuple;
            best_pattern = pattern;
            bound.store(best, std::memory_order_relaxed);
        }
    }
};

EcCertificate make_certificate(const QuadranceGraph& g, const std::vector<u64>& tuple,
                               unsigned pattern) {
    EcCertificate cert;
    cert.pattern = pattern;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        Point p = g.point_of(tuple[i]);
        if (pattern >> i & 1)
            cert.a.push_back(std::move(p));
        else
            cert.b.push_back(std::move(p));
    }
    return cert;
}

EcReport blank_report(const QuadranceGraph& g, unsigned n, const EcOptions& opts) {
    EcReport r;
    r.m = g.modulus();
    r.d = g.dim();
    r.edge_values = g.params().edge_values;
    r.n = n;
    r.mode = opts.mode;
    if (opts.mode == EcMode::Sampled) {
        r.samples = opts.samples;
        r.seed = opts.seed;
    }
    r.full_scan = opts.full_scan;
    return r;
}

// Checks the 2^n patterns of one tuple; reports failing queries into `merge`.
void check_tuple(const QuadranceGraph& g, const std::vector<u64>& tuple, u64 tuple_rank,
                 bool full_scan, FailureMerge& merge) {
    const unsigned npat = 1u << tuple.size();
    std::vector<u64> found = witnesses_for_tuple(g, tuple);
    for (unsigned pat = 0; pat < npat; ++pat) {
        if (found[pat] != npos) continue;
        if (full_scan) merge.failing.fetch_add(1, std::memory_order_relaxed);
        merge.offer(tuple_rank * npat + pat, tuple, pat);
    }
}

EcReport finish_report(const QuadranceGraph& g, EcReport r, u64 total_queries,
                       FailureMerge& merge) {
    std::lock_guard<std::mutex> lk(merge.mu);
    if (merge.best == npos) {
        r.pass = true;
        r.queries_checked = total_queries;
    } else {
        r.pass = false;
        r.certificate = make_certificate(g, merge.best_tuple, merge.best_pattern);
        r.queries_checked = r.full_scan ? total_queries : merge.best + 1;
        r.failing_queries = r.full_scan ? merge.failing.load() : 1;
    }
    return r;
}

EcReport check_exhaustive(const QuadranceGraph& g, unsigned n, const EcOptions& opts) {
    const u64 vcount = g.vertex_count();
    const unsigned npat = 1u << n;
    const u64 rank_cap = (u64{1} << 62) / npat;

    EcReport report = blank_report(g, n, opts);
    FailureMerge merge;

    if (n == 1) {
        check_tuple(g, {0}, 0, opts.full_scan, merge);
        return finish_report(g, std::move(report), npat, merge);
    }

    // Tuples are {0} followed by an (n-1)-combination of [1, V); work is
    // dealt out by leading element, which keeps canonical order contiguous
    // per task.
    const u64 tail = n - 2;  // combination length after the leading element
    const u64 max_lead = vcount - (n - 1);
    std::vector<u64> rank_base(max_lead + 2, 0);
    for (u64 lead = 1; lead <= max_lead; ++lead)
        rank_base[lead + 1] = rank_base[lead] + binomial_checked(vcount - 1 - lead, tail, rank_cap);
    const u64 total_tuples = rank_base[max_lead + 1];
    if (total_tuples > rank_cap) throw std::overflow_error("exhaustive enumeration too large");

    std::atomic<u64> next_lead{1};
    auto worker = [&] {
        std::vector<u64> tuple(n);
        tuple[0] = 0;
        for (;;) {
            u64 lead = next_lead.fetch_add(1, std::memory_order_relaxed);
            if (lead > max_lead) break;
            u64 rank = rank_base[lead];
            if (!opts.full_scan &&
                rank * npat > merge.bound.load(std::memory_order_relaxed))
                continue;
            tuple[1] = lead;
            // odometer over the tail combination, ascending
            for (u64 i = 0; i < tail; ++i) tuple[2 + i] = lead + 1 + i;
            for (;;) {
                if (!opts.full_scan &&
                    rank * npat > merge.bound.load(std::memory_order_relaxed))
                    break;
                check_tuple(g, tuple, rank, opts.full_scan, merge);
                ++rank;
                // next tail combination within (lead, vcount); position pos
                // tops out at vcount-1-(n-1-pos)
                bool advanced = false;
                for (std::size_t pos = n; pos-- > 2 && !advanced;) {
                    if (tuple[pos] < vcount - 1 - (n - 1 - pos)) {
                        ++tuple[pos];
                        for (std::size_t i = pos + 1; i < n; ++i) tuple[i] = tuple[i - 1] + 1;
                        advanced = true;
                    }
                }
                if (!advanced) break;
            }
        }
    };

    unsigned nworkers = std::min<u64>(resolve_workers(opts.workers), max_lead);
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nworkers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return finish_report(g, std::move(report), total_tuples * npat, merge);
}

EcReport check_sampled(const QuadranceGraph& g, unsigned n, const EcOptions& opts) {
    const u64 vcount = g.vertex_count();
    const unsigned npat = 1u << n;

    EcReport report = blank_report(g, n, opts);
    FailureMerge merge;

    // Tuples are drawn sequentially up front so the sample stream depends
    // only on the seed, never on the worker count.
    std::mt19937_64 rng(opts.seed);
    std::vector<std::vector<u64>> tuples(opts.samples);
    for (auto& t : tuples) t = sample_distinct(rng, vcount, n);

    std::atomic<u64> next{0};
    constexpr u64 kChunk = 256;
    auto worker = [&] {
        for (;;) {
            u64 begin = next.fetch_add(kChunk, std::memory_order_relaxed);
            if (begin >= tuples.size()) break;
            u64 end = std::min<u64>(begin + kChunk, tuples.size());
            for (u64 s = begin; s < end; ++s) {
                if (!opts.full_scan &&
                    s * npat > merge.bound.load(std::memory_order_relaxed))
                    return;
                check_tuple(g, tuples[s], s, opts.full_scan, merge);
            }
        }
    };

    unsigned nworkers = resolve_workers(opts.workers);
    if (nworkers <= 1 || tuples.size() <= kChunk) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nworkers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return finish_report(g, std::move(report), opts.samples * npat, merge);
}

}  // namespace

bool is_witness(const QuadranceGraph& g, const std::vector<Point>& a,
                const std::vector<Point>& b, const Point& z) {
    for (const Point& p : a)
        if (p == z || !g.is_edge(z, p)) return false;
    for (const Point& p : b)
        if (p == z || g.is_edge(z, p)) return false;
    return true;
}

std::vector<u64> witnesses_for_tuple(const QuadranceGraph& g, const std::vector<u64>& tuple) {
    const std::size_t n = tuple.size();
    const std::size_t npat = std::size_t{1} << n;
    std::vector<u64> result(npat, npos);

    std::vector<NeighborStream> streams;
    streams.reserve(n);
    for (u64 idx : tuple) streams.emplace_back(g, idx);

    const u64 vcount = g.vertex_count();
    const u64 nwords = (vcount + 63) / 64;
    std::size_t unresolved = npat;

    std::vector<u64> nb(n);
    for (u64 w = 0; w < nwords && unresolved > 0; ++w) {
        for (std::size_t i = 0; i < n; ++i) nb[i] = streams[i].next_word();

        u64 valid = (w + 1 < nwords || (vcount & 63) == 0)
                        ? ~u64{0}
                        : (u64{1} << (vcount & 63)) - 1;
        for (u64 idx : tuple)
            if ((idx >> 6) == w) valid &= ~(u64{1} << (idx & 63));

        for (std::size_t pat = 0; pat < npat; ++pat) {
            if (result[pat] != npos) continue;
            u64 acc = valid;
            for (std::size_t i = 0; i < n && acc; ++i)
                acc &= (pat >> i & 1) ? nb[i] : ~nb[i];
            if (acc) {
                result[pat] = w * 64 + std::countr_zero(acc);
                --unresolved;
            }
        }
    }
    return result;
}

EcReport check_ec(const QuadranceGraph& g, unsigned n, const EcOptions& opts) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > 20) throw std::invalid_argument("n too large");
    if (!g.materialized())
        throw std::invalid_argument("check_ec requires a materialized graph");
    if (g.vertex_count() < u64{n} + 1)
        throw std::invalid_argument("graph has too few vertices for this n");
    if (opts.mode == EcMode::Sampled && opts.samples < 1)
        throw std::invalid_argument("sampled mode requires samples >= 1");

    auto t0 = std::chrono::steady_clock::now();
    EcReport r = opts.mode == EcMode::Exhaustive ? check_exhaustive(g, n, opts)
                                                 : check_sampled(g, n, opts);
    auto t1 = std::chrono::steady_clock::now();
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

EcReport naive_check_ec(const QuadranceGraph& g, unsigned n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const u64 vcount = g.vertex_count();
    EcOptions opts;  // exhaustive defaults
    EcReport r = blank_report(g, n, opts);
    auto t0 = std::chrono::steady_clock::now();

    auto finish = [&](EcReport rep) {
        auto t1 = std::chrono::steady_clock::now();
        rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        return rep;
    };

    if (vcount <= n) {
        // Too few vertices to extend; with exactly n the all-joined query on
        // the whole vertex set is a concrete failing witness query.
        r.pass = false;
        if (vcount == n) {
            std::vector<u64> tuple(n);
            for (u64 i = 0; i < n; ++i) tuple[i] = i;
            r.certificate = make_certificate(g, tuple, (1u << n) - 1);
        }
        return finish(std::move(r));
    }

    const unsigned npat = 1u << n;
    std::vector<u64> combo(n);
    for (u64 i = 0; i < n; ++i) combo[i] = i;
    std::vector<Point> points(n);
    u64 queries = 0;
    for (;;) {
        for (u64 i = 0; i < n; ++i) points[i] = g.point_of(combo[i]);
        for (unsigned pat = 0; pat < npat; ++pat) {
            ++queries;
            std::vector<Point> a, b;
            for (u64 i = 0; i < n; ++i)
                (pat >> i & 1 ? a : b).push_back(points[i]);
            bool found = false;
            for (u64 z = 0; z < vcount && !found; ++z)
                found = is_witness(g, a, b, g.point_of(z));
            if (!found) {
                r.pass = false;
                r.certificate = make_certificate(g, combo, pat);
                r.queries_checked = queries;
                r.failing_queries = 1;
                return finish(std::move(r));
            }
        }
        // next n-combination of [0, vcount)
        u64 k = n;
        while (k > 0 && combo[k - 1] == vcount - n + k - 1) --k;
        if (k == 0) break;
        ++combo[k - 1];
        for (u64 i = k; i < n; ++i) combo[i] = combo[i - 1] + 1;
    }
    r.pass = true;
    r.queries_checked = queries;
    return finish(std::move(r));
}

std::vector<u64> venn_cell_counts(const QuadranceGraph& g, const std::vector<Point>& points) {
    const std::size_t n = points.size();
    if (n == 0 || n > 20) throw std::invalid_argument("need 1..20 points");
    std::vector<u64> tuple;
    for (const Point& p : points) tuple.push_back(g.index_of(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (tuple[i] == tuple[j]) throw std::invalid_argument("points must be distinct");

    std::vector<u64> counts(std::size_t{1} << n, 0);
    std::vector<NeighborStream> streams;
    streams.reserve(n);
    for (u64 idx : tuple) streams.emplace_back(g, idx);

    const u64 vcount = g.vertex_count();
    const u64 nwords = (vcount + 63) / 64;
    std::vector<u64> nb(n);
    for (u64 w = 0; w < nwords; ++w) {
        for (std::size_t i = 0; i < n; ++i) nb[i] = streams[i].next_word();
        u64 valid = (w + 1 < nwords || (vcount & 63) == 0)
                        ? ~u64{0}
                        : (u64{1} << (vcount & 63)) - 1;
        for (u64 idx : tuple)
            if ((idx >> 6) == w) valid &= ~(u64{1} << (idx & 63));
        while (valid) {
            unsigned bit = std::countr_zero(valid);
            valid &= valid - 1;
            std::size_t pat = 0;
            for (std::size_t i = 0; i < n; ++i) pat |= ((nb[i] >> bit) & 1) << i;
            ++counts[pat];
        }
    }
    return counts;
}

bool verify_certificate(const QuadranceGraph& g, const EcCertificate& cert) {
    for (u64 z = 0; z < g.vertex_count(); ++z)
        if (is_witness(g, cert.a, cert.b, g.point_of(z))) return false;
    return true;
}

std::string report_to_json(const EcReport& r, int indent) {
    nlohmann::json j;
    j["m"] = r.m;
    j["d"] = r.d;
    j["edge_values"] = r.edge_values;
    j["n"] = r.n;
    j["mode"] = r.mode == EcMode::Exhaustive ? "exhaustive" : "sampled";
    if (r.mode == EcMode::Sampled) {
        j["samples"] = r.samples;
        j["seed"] = r.seed;
    }
    j["verdict"] = r.pass ? "pass" : "fail";
    if (r.certificate) {
        nlohmann::json c;
        c["A"] = r.certificate->a;
        c["B"] = r.certificate->b;
        c["pattern"] = r.certificate->pattern;
        j["certificate"] = c;
    }
    if (r.full_scan) j["failing_queries"] = r.failing_queries;
    j["queries_checked"] = r.queries_checked;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump(indent);
}

}  // namespace qec
