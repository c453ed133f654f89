#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rbt/bigint.hpp"
#include "rbt/pattern.hpp"

namespace rbt {

/*
 * A colored tournament: every unordered vertex pair carries a direction and
 * a color drawn from the unordered pairs of [k].  Storage is two flat
 * triangular arrays indexed by pair_index(x,y).  Values are treated as
 * immutable once built; mutation is for owners (builders, search states)
 * before sharing.
 */
class ColoredTournament {
public:
    ColoredTournament(long long n, int k)
        : n_(n), k_(k),
          dir_(static_cast<std::size_t>(n * (n - 1) / 2), 0),
          color_(static_cast<std::size_t>(n * (n - 1) / 2), 0) {
        if (n < 0) throw std::domain_error("ColoredTournament: n must be >= 0");
        if (k < 3 || k > RPattern::max_arity)
            throw std::domain_error("ColoredTournament: arity must be in [3, 11]");
    }

    long long n() const { return n_; }
    int k() const { return k_; }
    long long pair_count() const { return n_ * (n_ - 1) / 2; }

    /// True iff x -> y.
    bool forward(long long x, long long y) const {
        const bool lo_to_hi = dir_[index(x, y)] != 0;
        return x < y ? lo_to_hi : !lo_to_hi;
    }

    int color(long long x, long long y) const { return color_[index(x, y)]; }

    /// Sets the pair {x,y}: direction x -> y if forward_xy, with the color.
    void set_pair(long long x, long long y, bool forward_xy, int c) {
        if (c < 0 || c >= num_colors(k_))
            throw std::domain_error("set_pair: color out of range");
        dir_[index(x, y)] = static_cast<std::uint8_t>(x < y ? forward_xy : !forward_xy);
        color_[index(x, y)] = static_cast<std::uint8_t>(c);
    }

    bool operator==(const ColoredTournament& other) const {
        return n_ == other.n_ && k_ == other.k_ && dir_ == other.dir_ &&
               color_ == other.color_;
    }

private:
    std::size_t index(long long x, long long y) const {
        if (x < 0 || y < 0 || x >= n_ || y >= n_)
            throw std::domain_error("ColoredTournament: vertex out of range");
        return static_cast<std::size_t>(pair_index(x, y));
    }

    long long n_;
    int k_;
    std::vector<std::uint8_t> dir_;    // per pair, 1 = lo -> hi
    std::vector<std::uint8_t> color_;  // per pair, color index
};

/*
 * Copy detection.  A k-subset S hosts a copy of R exactly when its pair
 * colors are rainbow (all C(k,2) colors present) and the forced labeling is
 * orientation-consistent with Gamma.  The labeling is forced because vertex
 * x can only play role i if all k-1 colors at x mention i.
 *
 * Returns phi with phi[i] = vertex of S playing role i, or nullopt.
 */
inline std::optional<std::vector<long long>> detect_copy(
    const ColoredTournament& host, const RPattern& pattern,
    const std::vector<long long>& subset) {
    const int k = pattern.k();
    if (host.k() != k) throw std::domain_error("detect_copy: arity mismatch");
    if (subset.size() != static_cast<std::size_t>(k))
        throw std::domain_error("detect_copy: subset size must equal arity");

    std::uint64_t seen = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const std::uint64_t bit = 1ULL << host.color(subset[a], subset[b]);
            if (seen & bit) return std::nullopt;  // not rainbow
            seen |= bit;
        }

    // label each vertex by the role mentioned in all of its incident colors
    std::vector<long long> phi(static_cast<std::size_t>(k), -1);
    for (int a = 0; a < k; ++a) {
        std::array<int, RPattern::max_arity> freq{};
        for (int b = 0; b < k; ++b) {
            if (b == a) continue;
            const auto [lo, hi] = color_pair(host.color(subset[a], subset[b]));
            ++freq[lo];
            ++freq[hi];
        }
        int role = -1;
        for (int i = 0; i < k; ++i)
            if (freq[i] == k - 1) {
                role = i;
                break;
            }
        if (role < 0 || phi[role] != -1) return std::nullopt;
        phi[role] = subset[a];
    }

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (host.forward(phi[i], phi[j]) != pattern.forward(i, j))
                return std::nullopt;
    return phi;
}

namespace detail {

template <typename Fn>
void for_each_subset(long long n, int k, Fn&& fn) {
    if (n < k) return;
    std::vector<long long> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) subset[i] = i;
    for (;;) {
        if (!fn(const_cast<const std::vector<long long>&>(subset))) return;
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i) --i;
        if (i < 0) return;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace detail

/// i(R;H): number of k-subsets of H hosting a copy of R.  Walks all C(n,k)
/// subsets; each check is O(k^2).
inline BigInt count_copies(const ColoredTournament& host, const RPattern& pattern) {
    if (host.k() != pattern.k()) throw std::domain_error("count_copies: arity mismatch");
    long long count = 0;
    detail::for_each_subset(host.n(), pattern.k(),
                            [&](const std::vector<long long>& subset) {
                                if (detect_copy(host, pattern, subset)) ++count;
                                return true;
                            });
    return count;
}

/*
 * Per-vertex copy statistics: d[i] counts copies in which x plays role i;
 * neighborhoods[i][j] is the set of vertices y such that some copy has x in
 * role i and y in role j.
 */
struct VertexProfile {
    long long vertex = 0;
    std::vector<BigInt> d;
    std::vector<std::vector<std::vector<long long>>> neighborhoods;

    BigInt total() const {
        BigInt sum = 0;
        for (const BigInt& v : d) sum += v;
        return sum;
    }

    /// N_i(x): union over j of neighborhoods[i][j].
    std::vector<long long> role_neighborhood(int i) const {
        std::set<long long> merged;
        for (const auto& row : neighborhoods[static_cast<std::size_t>(i)])
            merged.insert(row.begin(), row.end());
        return {merged.begin(), merged.end()};
    }
};

inline VertexProfile vertex_profile(const ColoredTournament& host,
                                    const RPattern& pattern, long long x) {
    const int k = pattern.k();
    if (host.k() != k) throw std::domain_error("vertex_profile: arity mismatch");
    if (x < 0 || x >= host.n())
        throw std::domain_error("vertex_profile: unknown vertex");

    VertexProfile profile;
    profile.vertex = x;
    profile.d.assign(static_cast<std::size_t>(k), BigInt(0));
    std::vector<std::vector<std::set<long long>>> nbr(
        static_cast<std::size_t>(k),
        std::vector<std::set<long long>>(static_cast<std::size_t>(k)));

    std::vector<long long> others;
    others.reserve(static_cast<std::size_t>(host.n() - 1));
    for (long long v = 0; v < host.n(); ++v)
        if (v != x) others.push_back(v);

    std::vector<long long> subset(static_cast<std::size_t>(k));
    detail::for_each_subset(
        static_cast<long long>(others.size()), k - 1,
        [&](const std::vector<long long>& pick) {
            for (int i = 0; i + 1 < k; ++i) subset[i] = others[pick[i]];
            subset[k - 1] = x;
            std::sort(subset.begin(), subset.end());
            if (auto phi = detect_copy(host, pattern, subset)) {
                int role_of_x = 0;
                while ((*phi)[role_of_x] != x) ++role_of_x;
                profile.d[role_of_x] += 1;
                for (int j = 0; j < k; ++j)
                    if (j != role_of_x)
                        nbr[role_of_x][j].insert((*phi)[j]);
            }
            return true;
        });

    profile.neighborhoods.assign(
        static_cast<std::size_t>(k),
        std::vector<std::vector<long long>>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            profile.neighborhoods[i][j].assign(nbr[i][j].begin(), nbr[i][j].end());
    return profile;
}

/*
 * Partition of V(H) into V_1 ... V_k with every x placed at an index
 * maximizing d_i(x).  Ties resolve to the lowest index, then a greedy
 * single-move pass rebalances tied vertices while the ordered-pair
 * imbalance  sum_{i,j} |n_i - n_j|  keeps dropping.  The argmax property is
 * exact; the balance objective reaches a local (not certified global)
 * minimum.
 */
struct ArgmaxPartition {
    std::vector<std::vector<long long>> parts;
    long long balance = 0;
};

inline ArgmaxPartition argmax_partition(const ColoredTournament& host,
                                        const RPattern& pattern) {
    const int k = pattern.k();
    const long long n = host.n();
    std::vector<int> part_of(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(n));

    for (long long x = 0; x < n; ++x) {
        const VertexProfile profile = vertex_profile(host, pattern, x);
        BigInt best = profile.d[0];
        for (int i = 1; i < k; ++i) best = std::max(best, profile.d[i]);
        for (int i = 0; i < k; ++i)
            if (profile.d[i] == best) choices[x].push_back(i);
        part_of[x] = choices[x].front();
    }

    std::vector<long long> sizes(static_cast<std::size_t>(k), 0);
    for (long long x = 0; x < n; ++x) ++sizes[part_of[x]];

    const auto imbalance = [&](const std::vector<long long>& s) {
        long long total = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) total += std::llabs(s[i] - s[j]);
        return total;
    };

    long long balance = imbalance(sizes);
    for (;;) {
        long long best_delta = 0;
        long long best_vertex = -1;
        int best_target = -1;
        for (long long x = 0; x < n; ++x) {
            if (choices[x].size() < 2) continue;
            for (int target : choices[x]) {
                if (target == part_of[x]) continue;
                std::vector<long long> moved = sizes;
                --moved[part_of[x]];
                ++moved[target];
                const long long delta = imbalance(moved) - balance;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_vertex = x;
                    best_target = target;
                }
            }
        }
        if (best_vertex < 0) break;
        --sizes[part_of[best_vertex]];
        part_of[best_vertex] = best_target;
        ++sizes[best_target];
        balance += best_delta;
    }

    ArgmaxPartition result;
    result.parts.assign(static_cast<std::size_t>(k), {});
    for (long long x = 0; x < n; ++x) result.parts[part_of[x]].push_back(x);
    result.balance = balance;
    return result;
}

// ---------------------------------------------------------------------------
// Serialization.  Text format:  header "k n", then one line "x y d c" per
// unordered pair in (x,y)-lexicographic order, d = 1 meaning x -> y.  The
// JSON mirror uses the same pair order.  Both round-trip bit-exactly.
// ---------------------------------------------------------------------------

inline void write_text(const ColoredTournament& t, std::ostream& out) {
    out << t.k() << ' ' << t.n() << '\n';
    for (long long x = 0; x < t.n(); ++x)
        for (long long y = x + 1; y < t.n(); ++y)
            out << x << ' ' << y << ' ' << (t.forward(x, y) ? 1 : 0) << ' '
                << t.color(x, y) << '\n';
}

inline std::string to_text(const ColoredTournament& t) {
    std::ostringstream out;
    write_text(t, out);
    return out.str();
}

inline ColoredTournament read_text(std::istream& in) {
    int k = 0;
    long long n = -1;
    if (!(in >> k >> n)) throw std::runtime_error("tournament: bad header");
    ColoredTournament t(n, k);
    for (long long x = 0; x < n; ++x)
        for (long long y = x + 1; y < n; ++y) {
            long long fx = -1, fy = -1;
            int d = -1, c = -1;
            if (!(in >> fx >> fy >> d >> c))
                throw std::runtime_error("tournament: truncated pair list");
            if (fx != x || fy != y)
                throw std::runtime_error("tournament: pairs out of order");
            if (d != 0 && d != 1)
                throw std::runtime_error("tournament: direction must be 0 or 1");
            t.set_pair(x, y, d == 1, c);
        }
    return t;
}

inline ColoredTournament tournament_from_text(const std::string& text) {
    std::istringstream in(text);
    return read_text(in);
}

inline nlohmann::json to_json(const ColoredTournament& t) {
    nlohmann::json pairs = nlohmann::json::array();
    for (long long x = 0; x < t.n(); ++x)
        for (long long y = x + 1; y < t.n(); ++y)
            pairs.push_back({{"x", x},
                             {"y", y},
                             {"dir", t.forward(x, y) ? 1 : 0},
                             {"color", t.color(x, y)}});
    return nlohmann::json{{"format", "colored-tournament"},
                          {"version", 1},
                          {"k", t.k()},
                          {"n", t.n()},
                          {"pairs", std::move(pairs)}};
}

inline ColoredTournament tournament_from_json(const nlohmann::json& j) {
    if (j.at("format") != "colored-tournament")
        throw std::runtime_error("tournament: wrong json format tag");
    ColoredTournament t(j.at("n").get<long long>(), j.at("k").get<int>());
    for (const auto& pair : j.at("pairs"))
        t.set_pair(pair.at("x").get<long long>(), pair.at("y").get<long long>(),
                   pair.at("dir").get<int>() == 1, pair.at("color").get<int>());
    return t;
}

inline nlohmann::json to_json(const RPattern& pattern) {
    nlohmann::json edges = nlohmann::json::array();
    for (int i = 0; i < pattern.k(); ++i)
        for (int j = i + 1; j < pattern.k(); ++j) {
            if (pattern.forward(i, j))
                edges.push_back({i, j});
            else
                edges.push_back({j, i});
        }
    return nlohmann::json{{"k", pattern.k()}, {"edges", std::move(edges)}};
}

inline RPattern pattern_from_json(const nlohmann::json& j) {
    const int k = j.at("k").get<int>();
    std::vector<bool> bits(static_cast<std::size_t>(num_colors(k)), false);
    std::vector<bool> present(bits.size(), false);
    for (const auto& edge : j.at("edges")) {
        const int from = edge.at(0).get<int>();
        const int to = edge.at(1).get<int>();
        const auto idx = static_cast<std::size_t>(pair_index(from, to));
        if (present[idx]) throw std::runtime_error("pattern: duplicate pair");
        present[idx] = true;
        bits[idx] = from < to;
    }
    if (!std::all_of(present.begin(), present.end(), [](bool b) { return b; }))
        throw std::runtime_error("pattern: missing pairs");
    return RPattern(k, std::move(bits));
}

}  // namespace rbt
