#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rbt/bigint.hpp"
#include "rbt/partition.hpp"
#include "rbt/rng.hpp"
#include "rbt/tournament.hpp"

namespace rbt {

/*
 * Recursive blow-up construction.  The vertex interval splits equitably
 * into k consecutive parts; a pair with endpoints in parts i < j gets color
 * {i,j} and the orientation of (i,j) in Gamma; each part recurses.  Any
 * k-set not transversal at some level repeats a color, so the copies of R
 * are exactly the transversal k-sets of the recursion tree and the total
 * count equals g_k(s).
 *
 * The trace records one node per interval of size >= k (smaller intervals
 * still get colored, but cannot host copies).
 */
struct TraceNode {
    long long offset = 0;
    long long size = 0;
    std::vector<long long> split;
};

struct ConstructionTrace {
    std::vector<TraceNode> nodes;
};

namespace detail {

inline void blow_up(ColoredTournament& t, const RPattern& pattern, long long lo,
                    long long size, ConstructionTrace& trace) {
    if (size <= 1) return;
    const int k = pattern.k();
    const Partition split = equitable_partition(size, k);
    if (size >= k)
        trace.nodes.push_back(TraceNode{lo, size, split.parts});

    std::vector<long long> start(static_cast<std::size_t>(k) + 1, lo);
    for (int i = 0; i < k; ++i) start[i + 1] = start[i] + split.parts[i];

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const int color = static_cast<int>(pair_index(i, j));
            const bool fwd = pattern.forward(i, j);
            for (long long x = start[i]; x < start[i + 1]; ++x)
                for (long long y = start[j]; y < start[j + 1]; ++y)
                    t.set_pair(x, y, fwd, color);
        }
    for (int i = 0; i < k; ++i)
        blow_up(t, pattern, start[i], split.parts[i], trace);
}

}  // namespace detail

struct ExtremalConstruction {
    ColoredTournament tournament;
    ConstructionTrace trace;
};

inline ExtremalConstruction extremal_tournament(int k, long long s,
                                                const RPattern& pattern) {
    if (pattern.k() != k)
        throw std::domain_error("extremal_tournament: arity mismatch");
    ExtremalConstruction out{ColoredTournament(s, k), {}};
    detail::blow_up(out.tournament, pattern, 0, s, out.trace);
    return out;
}

/// Each pair independently uniform over the k(k-1) (orientation, color)
/// states: state v assigns color v/2 and direction x->y iff v is odd.
/// Pairs are filled in (x,y)-lexicographic order from a single mt19937_64
/// stream, so equal (n, k, seed) give bit-identical tournaments everywhere.
inline ColoredTournament random_tournament(long long n, int k, std::uint64_t seed) {
    ColoredTournament t(n, k);
    Rng rng(seed);
    const std::uint64_t states = static_cast<std::uint64_t>(k) * (k - 1);
    for (long long x = 0; x < n; ++x)
        for (long long y = x + 1; y < n; ++y) {
            const std::uint64_t v = rng.bounded(states);
            t.set_pair(x, y, (v & 1) != 0, static_cast<int>(v >> 1));
        }
    return t;
}

/*
 * The k-uniform hypergraph H(T) whose edges are the copy-supports of R.
 * Edges keep both the sorted vertex tuple and a bit mask over vertices for
 * subset tests.
 */
class DerivedHypergraph {
public:
    DerivedHypergraph(long long n, int k) : n_(n), k_(k) {
        if (n < 0 || k < 3) throw std::domain_error("DerivedHypergraph: bad shape");
        words_ = static_cast<std::size_t>((n + 63) / 64);
    }

    static DerivedHypergraph from_edges(long long n, int k,
                                        std::vector<std::vector<long long>> edges) {
        DerivedHypergraph g(n, k);
        for (auto& e : edges) g.add_edge(std::move(e));
        return g;
    }

    void add_edge(std::vector<long long> edge) {
        if (edge.size() != static_cast<std::size_t>(k_))
            throw std::domain_error("DerivedHypergraph: edge arity mismatch");
        std::sort(edge.begin(), edge.end());
        std::vector<std::uint64_t> mask(words_, 0);
        for (std::size_t i = 0; i < edge.size(); ++i) {
            const long long v = edge[i];
            if (v < 0 || v >= n_ || (i > 0 && edge[i - 1] == v))
                throw std::domain_error("DerivedHypergraph: bad edge vertex");
            mask[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        }
        edges_.push_back(std::move(edge));
        masks_.push_back(std::move(mask));
    }

    long long n() const { return n_; }
    int k() const { return k_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::vector<long long>>& edges() const { return edges_; }
    std::size_t mask_words() const { return words_; }

    /// True iff no edge lies inside the vertex mask.
    bool independent(const std::vector<std::uint64_t>& vertex_mask) const {
        for (const auto& edge_mask : masks_) {
            bool inside = true;
            for (std::size_t w = 0; w < words_; ++w)
                if ((edge_mask[w] & ~vertex_mask[w]) != 0) {
                    inside = false;
                    break;
                }
            if (inside) return false;
        }
        return true;
    }

    bool independent(const std::vector<long long>& vertices) const {
        std::vector<std::uint64_t> mask(words_, 0);
        for (long long v : vertices)
            mask[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        return independent(mask);
    }

private:
    long long n_;
    int k_;
    std::size_t words_ = 0;
    std::vector<std::vector<long long>> edges_;
    std::vector<std::vector<std::uint64_t>> masks_;
};

inline DerivedHypergraph derived_hypergraph(const ColoredTournament& host,
                                            const RPattern& pattern) {
    if (host.k() != pattern.k())
        throw std::domain_error("derived_hypergraph: arity mismatch");
    DerivedHypergraph g(host.n(), pattern.k());
    detail::for_each_subset(host.n(), pattern.k(),
                            [&](const std::vector<long long>& subset) {
                                if (detect_copy(host, pattern, subset))
                                    g.add_edge(subset);
                                return true;
                            });
    return g;
}

/*
 * Exact maximum independent set by branch and bound: vertices ordered by
 * edge membership (descending), greedy incumbent, and the prune
 * |chosen| + |remaining| <= best.  Instances above the cap are refused
 * outright; derived hypergraphs at that scale are far too big to certify.
 */
struct IndependenceResult {
    long long alpha = 0;
    std::vector<long long> witness;
};

namespace detail {

struct IndependenceSearch {
    const DerivedHypergraph& graph;
    std::vector<long long> order;
    std::vector<std::vector<long long>> edges_at;  // vertex -> edge ids
    std::vector<int> edge_chosen;
    std::vector<long long> chosen;
    std::vector<long long> best;

    explicit IndependenceSearch(const DerivedHypergraph& g) : graph(g) {
        const long long n = g.n();
        edges_at.assign(static_cast<std::size_t>(n), {});
        for (long long e = 0; e < g.edge_count(); ++e)
            for (long long v : g.edges()[static_cast<std::size_t>(e)])
                edges_at[static_cast<std::size_t>(v)].push_back(e);
        order.resize(static_cast<std::size_t>(n));
        for (long long v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
        std::stable_sort(order.begin(), order.end(), [&](long long a, long long b) {
            return edges_at[static_cast<std::size_t>(a)].size() >
                   edges_at[static_cast<std::size_t>(b)].size();
        });
        edge_chosen.assign(static_cast<std::size_t>(g.edge_count()), 0);
        // greedy pass in id order for the initial incumbent
        for (long long v = 0; v < n; ++v)
            if (can_take(v)) take(v);
        best = chosen;
        while (!chosen.empty()) drop(chosen.back());
    }

    bool can_take(long long v) const {
        const int k = graph.k();
        for (long long e : edges_at[static_cast<std::size_t>(v)])
            if (edge_chosen[static_cast<std::size_t>(e)] == k - 1) return false;
        return true;
    }

    void take(long long v) {
        for (long long e : edges_at[static_cast<std::size_t>(v)])
            ++edge_chosen[static_cast<std::size_t>(e)];
        chosen.push_back(v);
    }

    void drop(long long v) {
        for (long long e : edges_at[static_cast<std::size_t>(v)])
            --edge_chosen[static_cast<std::size_t>(e)];
        chosen.pop_back();
    }

    void run(std::size_t pos) {
        if (chosen.size() + (order.size() - pos) <= best.size()) return;
        if (pos == order.size()) {
            best = chosen;
            return;
        }
        const long long v = order[pos];
        if (can_take(v)) {
            take(v);
            run(pos + 1);
            drop(v);
        }
        run(pos + 1);
    }
};

}  // namespace detail

inline IndependenceResult independence_number_exact(const DerivedHypergraph& graph,
                                                    long long cap = 80) {
    if (graph.n() > cap) {
        std::ostringstream msg;
        msg << "independence_number_exact: n = " << graph.n()
            << " exceeds the branch-and-bound cap " << cap
            << " (raise the cap explicitly to force the search)";
        throw std::domain_error(msg.str());
    }
    detail::IndependenceSearch search(graph);
    search.run(0);
    IndependenceResult result;
    result.witness = search.best;
    std::sort(result.witness.begin(), result.witness.end());
    result.alpha = static_cast<long long>(result.witness.size());
    if (!graph.independent(result.witness))
        throw std::logic_error("independence_number_exact: witness not independent");
    return result;
}

/*
 * Monte Carlo fraction of t-subsets that are independent, with a
 * Clopper-Pearson 95% interval.  Trials are drawn in chunks of 4096, each
 * chunk from its own substream of the seed, so the estimate is independent
 * of any parallel split of the trial range.
 */
struct IndependenceEstimate {
    long long t = 0;
    long long trials = 0;
    long long hits = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
};

namespace detail {

inline double binomial_cdf(long long n, long long x, double p) {
    if (x < 0) return 0.0;
    if (x >= n) return 1.0;
    // sum pmf(i) for i <= x, in log space against under/overflow
    double cdf = 0.0;
    for (long long i = 0; i <= x; ++i) {
        const double log_pmf = std::lgamma(static_cast<double>(n + 1)) -
                               std::lgamma(static_cast<double>(i + 1)) -
                               std::lgamma(static_cast<double>(n - i + 1)) +
                               i * std::log(p) + (n - i) * std::log1p(-p);
        cdf += std::exp(log_pmf);
    }
    return std::min(cdf, 1.0);
}

inline double clopper_pearson_low(long long n, long long x, double alpha) {
    if (x == 0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = (lo + hi) / 2;
        // lower bound: largest p with P(X >= x | p) <= alpha/2
        if (1.0 - binomial_cdf(n, x - 1, mid) <= alpha / 2)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

inline double clopper_pearson_high(long long n, long long x, double alpha) {
    if (x == n) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = (lo + hi) / 2;
        // upper bound: smallest p with P(X <= x | p) <= alpha/2
        if (binomial_cdf(n, x, mid) <= alpha / 2)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace detail

inline IndependenceEstimate independence_mc(const DerivedHypergraph& graph,
                                            long long t, long long trials,
                                            std::uint64_t seed) {
    if (t > graph.n())
        throw std::domain_error("independence_mc: t exceeds vertex count");
    if (t < 0 || trials < 1)
        throw std::domain_error("independence_mc: need t >= 0 and trials >= 1");

    constexpr long long chunk_size = 4096;
    const long long n = graph.n();
    long long hits = 0;
    std::vector<std::uint64_t> mask(graph.mask_words());
    for (long long done = 0; done < trials; done += chunk_size) {
        Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(done / chunk_size)));
        const long long stop = std::min(trials, done + chunk_size);
        for (long long trial = done; trial < stop; ++trial) {
            std::fill(mask.begin(), mask.end(), 0);
            // Floyd's sampler: uniform t-subset of [n]
            for (long long j = n - t; j < n; ++j) {
                long long v = static_cast<long long>(
                    rng.bounded(static_cast<std::uint64_t>(j + 1)));
                std::uint64_t bit = 1ULL << (v & 63);
                if (mask[static_cast<std::size_t>(v >> 6)] & bit) {
                    v = j;
                    bit = 1ULL << (v & 63);
                }
                mask[static_cast<std::size_t>(v >> 6)] |= bit;
            }
            if (graph.independent(mask)) ++hits;
        }
    }

    IndependenceEstimate est;
    est.t = t;
    est.trials = trials;
    est.hits = hits;
    est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    est.ci_low = detail::clopper_pearson_low(trials, hits, 0.05);
    est.ci_high = detail::clopper_pearson_high(trials, hits, 0.05);
    return est;
}

// ---------------------------------------------------------------------------
// Hypergraph serialization.  Text: header "k n m", then one sorted edge per
// line.  JSON mirror carries the same rows.
// ---------------------------------------------------------------------------

inline void write_text(const DerivedHypergraph& g, std::ostream& out) {
    out << g.k() << ' ' << g.n() << ' ' << g.edge_count() << '\n';
    for (const auto& edge : g.edges()) {
        for (std::size_t i = 0; i < edge.size(); ++i)
            out << (i ? " " : "") << edge[i];
        out << '\n';
    }
}

inline std::string to_text(const DerivedHypergraph& g) {
    std::ostringstream out;
    write_text(g, out);
    return out.str();
}

inline DerivedHypergraph hypergraph_from_text(const std::string& text) {
    std::istringstream in(text);
    int k = 0;
    long long n = -1, m = -1;
    if (!(in >> k >> n >> m)) throw std::runtime_error("hypergraph: bad header");
    DerivedHypergraph g(n, k);
    for (long long e = 0; e < m; ++e) {
        std::vector<long long> edge(static_cast<std::size_t>(k));
        for (auto& v : edge)
            if (!(in >> v)) throw std::runtime_error("hypergraph: truncated edges");
        g.add_edge(std::move(edge));
    }
    return g;
}

inline nlohmann::json to_json(const DerivedHypergraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : g.edges()) edges.push_back(edge);
    return nlohmann::json{{"format", "derived-hypergraph"},
                          {"version", 1},
                          {"k", g.k()},
                          {"n", g.n()},
                          {"m", g.edge_count()},
                          {"edges", std::move(edges)}};
}

inline DerivedHypergraph hypergraph_from_json(const nlohmann::json& j) {
    if (j.at("format") != "derived-hypergraph")
        throw std::runtime_error("hypergraph: wrong json format tag");
    DerivedHypergraph g(j.at("n").get<long long>(), j.at("k").get<int>());
    for (const auto& edge : j.at("edges"))
        g.add_edge(edge.get<std::vector<long long>>());
    if (g.edge_count() != j.at("m").get<long long>())
        throw std::runtime_error("hypergraph: edge count mismatch");
    return g;
}

}  // namespace rbt
