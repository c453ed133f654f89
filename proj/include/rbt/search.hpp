#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rbt/bigint.hpp"
#include "rbt/construct.hpp"
#include "rbt/density.hpp"
#include "rbt/pattern.hpp"
#include "rbt/rng.hpp"
#include "rbt/tournament.hpp"
#include "rbt/version.hpp"

namespace rbt {

/*
 * Counterexample hunting: maximize i(R;H) over all colored tournaments on s
 * labeled vertices, either exhaustively (depth-first over pair slots with
 * isomorph rejection and an optimistic bound) or by seeded hill climbing.
 * Anything strictly above g_k(s) would refute the inducibility bound and is
 * emitted as a certificate.
 */
struct SearchResult {
    int k = 0;
    long long s = 0;
    std::string mode;  // "exhaustive" | "stochastic"
    BigInt best_count;
    ColoredTournament witness{0, 3};
    long long nodes_explored = 0;
    double wall_time_s = 0.0;
    std::optional<std::uint64_t> seed;
    bool exceeded_bound = false;
    bool exact = false;  // exhaustive completed within budget
    BigInt g_value;
};

namespace detail {

/// Slot t <-> unordered pair via the triangular indexing, so slots ordered
/// 0..C(s,2)-1 extend the tournament vertex by vertex.
struct SubsetIndex {
    int k = 0;
    long long s = 0;
    std::vector<std::vector<int>> subset_slots;
    std::vector<std::vector<int>> slot_subsets;
    std::vector<std::vector<long long>> subset_vertices;

    SubsetIndex(long long s_, int k_) : k(k_), s(s_) {
        const int slots = static_cast<int>(s * (s - 1) / 2);
        slot_subsets.assign(static_cast<std::size_t>(slots), {});
        for_each_subset(s, k, [&](const std::vector<long long>& subset) {
            const int sid = static_cast<int>(subset_vertices.size());
            subset_vertices.push_back(subset);
            std::vector<int> slots_of;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    const int t = static_cast<int>(pair_index(subset[a], subset[b]));
                    slots_of.push_back(t);
                    slot_subsets[static_cast<std::size_t>(t)].push_back(sid);
                }
            subset_slots.push_back(std::move(slots_of));
            return true;
        });
    }

    long long subset_count() const {
        return static_cast<long long>(subset_vertices.size());
    }
};

/// Copy check against a raw slot-value array (value = 2*color + dir with
/// dir meaning lo -> hi).  All slots of the subset must be decided.
inline bool is_copy_from_values(const std::vector<int>& values,
                                const std::vector<long long>& verts,
                                const RPattern& pattern) {
    const int k = pattern.k();
    std::uint64_t seen = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const int v = values[static_cast<std::size_t>(pair_index(verts[a], verts[b]))];
            const std::uint64_t bit = 1ULL << (v >> 1);
            if (seen & bit) return false;
            seen |= bit;
        }
    std::array<long long, RPattern::max_arity> phi;
    phi.fill(-1);
    for (int a = 0; a < k; ++a) {
        std::array<int, RPattern::max_arity> freq{};
        for (int b = 0; b < k; ++b) {
            if (b == a) continue;
            const int v = values[static_cast<std::size_t>(pair_index(verts[a], verts[b]))];
            const auto [lo, hi] = color_pair(v >> 1);
            ++freq[lo];
            ++freq[hi];
        }
        int role = -1;
        for (int i = 0; i < k; ++i)
            if (freq[i] == k - 1) {
                role = i;
                break;
            }
        if (role < 0 || phi[role] != -1) return false;
        phi[role] = verts[a];
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const long long x = phi[i], y = phi[j];
            const int v = values[static_cast<std::size_t>(pair_index(x, y))];
            const bool x_to_y = (x < y) == ((v & 1) != 0);
            if (x_to_y != pattern.forward(i, j)) return false;
        }
    return true;
}

inline ColoredTournament tournament_from_values(const std::vector<int>& values,
                                                long long s, int k) {
    ColoredTournament t(s, k);
    for (std::size_t slot = 0; slot < values.size(); ++slot) {
        const auto [x, y] = color_pair(static_cast<int>(slot));
        t.set_pair(x, y, (values[slot] & 1) != 0, values[slot] >> 1);
    }
    return t;
}

struct ExhaustiveSearch {
    const RPattern& pattern;
    int k;
    long long s;
    int slot_count;
    int state_count;
    SubsetIndex index;

    std::vector<int> values;
    std::vector<int> undecided;
    std::vector<std::uint64_t> color_mask;
    std::vector<std::int8_t> status;  // 0 live, 1 dead, 2 copy
    long long open = 0;
    long long complete = 0;

    long long best = -1;
    std::vector<int> best_values;
    bool found_improvement = false;

    long long nodes = 0;
    std::chrono::steady_clock::time_point deadline;
    bool out_of_time = false;

    // boundary_vertex[t] = m when deciding slot t completes the subgraph on
    // the first m vertices (and m < s), else 0
    std::vector<int> boundary_vertex;
    std::vector<std::vector<std::vector<int>>> perms_of;

    ExhaustiveSearch(const RPattern& r, long long s_,
                     std::chrono::steady_clock::time_point deadline_)
        : pattern(r), k(r.k()), s(s_),
          slot_count(static_cast<int>(s_ * (s_ - 1) / 2)),
          state_count(r.k() * (r.k() - 1)),
          index(s_, r.k()),
          deadline(deadline_) {
        values.assign(static_cast<std::size_t>(slot_count), -1);
        undecided.assign(index.subset_vertices.size(), num_colors(k));
        color_mask.assign(index.subset_vertices.size(), 0);
        status.assign(index.subset_vertices.size(), 0);
        open = static_cast<long long>(index.subset_vertices.size());

        boundary_vertex.assign(static_cast<std::size_t>(slot_count), 0);
        perms_of.resize(static_cast<std::size_t>(s) + 1);
        for (long long m = 2; m < s; ++m) {
            boundary_vertex[static_cast<std::size_t>(m * (m - 1) / 2 - 1)] =
                static_cast<int>(m);
            std::vector<int> perm(static_cast<std::size_t>(m));
            for (long long i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = static_cast<int>(i);
            while (std::next_permutation(perm.begin(), perm.end()))
                perms_of[static_cast<std::size_t>(m)].push_back(perm);
        }
    }

    struct UndoEntry {
        int sid;
        std::int8_t old_status;
        bool mask_added;
    };

    void apply(int slot, int value, std::vector<UndoEntry>& undo) {
        values[static_cast<std::size_t>(slot)] = value;
        const std::uint64_t bit = 1ULL << (value >> 1);
        for (int sid : index.slot_subsets[static_cast<std::size_t>(slot)]) {
            UndoEntry entry{sid, status[static_cast<std::size_t>(sid)], false};
            --undecided[static_cast<std::size_t>(sid)];
            if (entry.old_status == 0) {
                if (color_mask[static_cast<std::size_t>(sid)] & bit) {
                    status[static_cast<std::size_t>(sid)] = 1;
                    --open;
                } else {
                    color_mask[static_cast<std::size_t>(sid)] |= bit;
                    entry.mask_added = true;
                    if (undecided[static_cast<std::size_t>(sid)] == 0) {
                        --open;
                        if (is_copy_from_values(
                                values, index.subset_vertices[static_cast<std::size_t>(sid)],
                                pattern)) {
                            status[static_cast<std::size_t>(sid)] = 2;
                            ++complete;
                        } else {
                            status[static_cast<std::size_t>(sid)] = 1;
                        }
                    }
                }
            }
            undo.push_back(entry);
        }
    }

    void revert(int slot, int value, const std::vector<UndoEntry>& undo) {
        const std::uint64_t bit = 1ULL << (value >> 1);
        for (const UndoEntry& entry : undo) {
            ++undecided[static_cast<std::size_t>(entry.sid)];
            if (entry.old_status == 0 && status[static_cast<std::size_t>(entry.sid)] != 0) {
                if (status[static_cast<std::size_t>(entry.sid)] == 2) --complete;
                ++open;
            }
            if (entry.mask_added) color_mask[static_cast<std::size_t>(entry.sid)] &= ~bit;
            status[static_cast<std::size_t>(entry.sid)] = entry.old_status;
        }
        values[static_cast<std::size_t>(slot)] = -1;
    }

    /// True when no relabeling of the first m vertices gives a
    /// lexicographically smaller slot-value prefix.
    bool prefix_is_canonical(int m) const {
        const int prefix = m * (m - 1) / 2;
        for (const auto& perm : perms_of[static_cast<std::size_t>(m)]) {
            for (int t = 0; t < prefix; ++t) {
                const auto [a, b] = color_pair(t);
                const int pa = perm[static_cast<std::size_t>(a)];
                const int pb = perm[static_cast<std::size_t>(b)];
                const int source = values[static_cast<std::size_t>(pair_index(pa, pb))];
                const bool source_lo_to_hi = (source & 1) != 0;
                const bool pa_to_pb = (pa < pb) == source_lo_to_hi;
                const int relabeled = ((source >> 1) << 1) | (pa_to_pb ? 1 : 0);
                if (relabeled != values[static_cast<std::size_t>(t)]) {
                    if (relabeled < values[static_cast<std::size_t>(t)]) return false;
                    break;
                }
            }
        }
        return true;
    }

    void dfs(int slot) {
        if (out_of_time) return;
        if (slot == slot_count) {
            // the bound already guarantees strict improvement here
            best = complete;
            best_values = values;
            found_improvement = true;
            return;
        }
        std::vector<UndoEntry> undo;
        undo.reserve(index.slot_subsets[static_cast<std::size_t>(slot)].size());
        for (int value = 0; value < state_count; ++value) {
            if ((++nodes & 0xFFF) == 0 &&
                std::chrono::steady_clock::now() > deadline) {
                out_of_time = true;
                return;
            }
            undo.clear();
            apply(slot, value, undo);
            bool viable = complete + open > best;
            if (viable && boundary_vertex[static_cast<std::size_t>(slot)] >= 2)
                viable = prefix_is_canonical(boundary_vertex[static_cast<std::size_t>(slot)]);
            if (viable) dfs(slot + 1);
            revert(slot, value, undo);
            if (out_of_time) return;
        }
    }
};

}  // namespace detail

/*
 * Exact maximum of i(R;H) over all s-vertex colored tournaments.  The
 * incumbent starts at the verified blow-up count, so the search only has to
 * visit branches that could strictly exceed it.  Budget exhaustion returns
 * the best found with exact = false, never a silent partial answer.
 */
inline SearchResult exhaustive_max(int k, long long s, const RPattern& pattern,
                                   std::chrono::milliseconds budget) {
    if (pattern.k() != k) throw std::domain_error("exhaustive_max: arity mismatch");
    if (s < k) throw std::domain_error("exhaustive_max: need s >= k");

    const auto start = std::chrono::steady_clock::now();
    SearchResult result;
    result.k = k;
    result.s = s;
    result.mode = "exhaustive";
    result.g_value = g(k, s);

    ExtremalConstruction seed_construction =
        extremal_tournament(k, s, pattern);
    const BigInt seed_count = count_copies(seed_construction.tournament, pattern);

    detail::ExhaustiveSearch search(pattern, s, start + budget);
    search.best = seed_count.convert_to<long long>();
    search.dfs(0);

    if (search.found_improvement) {
        result.best_count = search.best;
        result.witness =
            detail::tournament_from_values(search.best_values, s, k);
    } else {
        result.best_count = seed_count;
        result.witness = seed_construction.tournament;
    }
    result.nodes_explored = search.nodes;
    result.exact = !search.out_of_time;
    result.exceeded_bound = result.best_count > result.g_value;
    if (count_copies(result.witness, pattern) != result.best_count)
        throw std::logic_error("exhaustive_max: witness recount mismatch");
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

/*
 * Hill climbing with seeded restarts.  A move rewrites one pair to the best
 * of its k(k-1) states (incremental recount touches only the C(s-2,k-2)
 * subsets through that pair); pairs are scanned in a per-restart shuffled
 * order, first improvement wins.  Restart 0 is the exact blow-up, odd
 * restarts perturb it, even restarts are uniform random.
 */
inline SearchResult local_search_max(int k, long long s, const RPattern& pattern,
                                     std::uint64_t seed, long long restarts,
                                     long long moves_per_restart) {
    if (pattern.k() != k) throw std::domain_error("local_search_max: arity mismatch");
    if (s < k) throw std::domain_error("local_search_max: need s >= k");
    if (restarts < 1 || moves_per_restart < 1)
        throw std::domain_error("local_search_max: need positive budgets");

    const auto start = std::chrono::steady_clock::now();
    const detail::SubsetIndex index(s, k);
    const int slot_count = static_cast<int>(s * (s - 1) / 2);
    const int state_count = k * (k - 1);

    long long best_count = -1;
    ColoredTournament best_witness(0, 3);
    long long total_moves = 0;

    for (long long restart = 0; restart < restarts; ++restart) {
        Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(restart)));
        ColoredTournament current(0, 3);
        if (restart == 0) {
            current = extremal_tournament(k, s, pattern).tournament;
        } else if (restart % 2 == 1) {
            current = extremal_tournament(k, s, pattern).tournament;
            const long long flips = std::max<long long>(1, slot_count / 10);
            for (long long f = 0; f < flips; ++f) {
                const int slot = static_cast<int>(
                    rng.bounded(static_cast<std::uint64_t>(slot_count)));
                const auto [x, y] = color_pair(slot);
                const auto v = rng.bounded(static_cast<std::uint64_t>(state_count));
                current.set_pair(x, y, (v & 1) != 0, static_cast<int>(v >> 1));
            }
        } else {
            current = random_tournament(s, k, rng.next());
        }

        std::vector<char> is_copy(index.subset_vertices.size(), 0);
        long long count = 0;
        for (std::size_t sid = 0; sid < index.subset_vertices.size(); ++sid) {
            is_copy[sid] =
                detect_copy(current, pattern, index.subset_vertices[sid]) ? 1 : 0;
            count += is_copy[sid];
        }

        std::vector<int> order(static_cast<std::size_t>(slot_count));
        for (int t = 0; t < slot_count; ++t) order[static_cast<std::size_t>(t)] = t;
        for (int t = slot_count - 1; t > 0; --t) {
            const auto j = rng.bounded(static_cast<std::uint64_t>(t + 1));
            std::swap(order[static_cast<std::size_t>(t)], order[j]);
        }

        long long moves = 0;
        int since_improvement = 0;
        std::size_t cursor = 0;
        while (moves < moves_per_restart && since_improvement < slot_count) {
            const int slot = order[cursor];
            cursor = (cursor + 1) % order.size();
            ++moves;
            ++total_moves;

            const auto [x, y] = color_pair(slot);
            const int original =
                2 * current.color(x, y) + (current.forward(x, y) ? 1 : 0);
            const auto& affected = index.slot_subsets[static_cast<std::size_t>(slot)];

            long long before = 0;
            for (int sid : affected) before += is_copy[static_cast<std::size_t>(sid)];

            long long best_delta = 0;
            int best_value = original;
            for (int value = 0; value < state_count; ++value) {
                if (value == original) continue;
                current.set_pair(x, y, (value & 1) != 0, value >> 1);
                long long after = 0;
                for (int sid : affected)
                    after += detect_copy(current, pattern,
                                         index.subset_vertices[static_cast<std::size_t>(sid)])
                                 ? 1
                                 : 0;
                const long long delta = after - before;
                if (delta > best_delta) {
                    best_delta = delta;
                    best_value = value;
                }
            }
            current.set_pair(x, y, (best_value & 1) != 0, best_value >> 1);
            if (best_delta > 0) {
                count += best_delta;
                for (int sid : affected)
                    is_copy[static_cast<std::size_t>(sid)] =
                        detect_copy(current, pattern,
                                    index.subset_vertices[static_cast<std::size_t>(sid)])
                            ? 1
                            : 0;
                since_improvement = 0;
            } else {
                ++since_improvement;
            }
        }

        if (count > best_count) {
            best_count = count;
            best_witness = current;
        }
    }

    SearchResult result;
    result.k = k;
    result.s = s;
    result.mode = "stochastic";
    result.best_count = best_count;
    result.witness = best_witness;
    result.nodes_explored = total_moves;
    result.seed = seed;
    result.exact = false;
    result.g_value = g(k, s);
    result.exceeded_bound = result.best_count > result.g_value;
    if (count_copies(result.witness, pattern) != result.best_count)
        throw std::logic_error("local_search_max: witness recount mismatch");
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

/// Self-contained refutation certificate: everything a third party needs to
/// recount the witness and compare against the bound.
inline nlohmann::json make_certificate(const SearchResult& result,
                                       const RPattern& pattern) {
    return nlohmann::json{{"format", "inducibility-certificate"},
                          {"version", 1},
                          {"tool_version", version},
                          {"k", result.k},
                          {"s", result.s},
                          {"mode", result.mode},
                          {"pattern", to_json(pattern)},
                          {"witness", to_json(result.witness)},
                          {"claimed_count", to_string(result.best_count)},
                          {"g_value", to_string(result.g_value)},
                          {"exceeded_bound", result.exceeded_bound}};
}

inline nlohmann::json to_json(const SearchResult& result,
                              const RPattern& pattern) {
    nlohmann::json j{{"format", "search-result"},
                     {"version", 1},
                     {"mode", result.mode},
                     {"k", result.k},
                     {"s", result.s},
                     {"best_count", to_string(result.best_count)},
                     {"g_value", to_string(result.g_value)},
                     {"exceeded_bound", result.exceeded_bound},
                     {"exact", result.exact},
                     {"nodes_explored", result.nodes_explored},
                     {"pattern", to_json(pattern)},
                     {"witness", to_json(result.witness)},
                     {"timing", {{"wall_time_s", result.wall_time_s}}}};
    if (result.seed) j["seed"] = *result.seed;
    return j;
}

}  // namespace rbt
