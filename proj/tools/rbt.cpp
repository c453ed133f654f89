// Command-line front end: every library module behind reproducible flags
// with machine-readable output.
//
// Exit codes: 0 success, 1 mathematical property violated (certificate
// emitted where applicable), 2 usage error, 3 search budget exhausted.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rbt/checks.hpp"
#include "rbt/construct.hpp"
#include "rbt/density.hpp"
#include "rbt/roots.hpp"
#include "rbt/search.hpp"
#include "rbt/tournament.hpp"
#include "rbt/version.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct Output {
    std::string format = "text";  // text | json | csv
    std::string path;             // empty = stdout

    void deliver(const std::string& payload) const {
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << payload;
    }
};

std::string config_header(const std::string& subcommand,
                          const std::vector<std::pair<std::string, std::string>>& config) {
    std::ostringstream out;
    out << "# rbt " << rbt::version << ' ' << subcommand << '\n' << "# config:";
    for (const auto& [key, value] : config) out << ' ' << key << '=' << value;
    out << '\n';
    return out.str();
}

json config_json(const std::vector<std::pair<std::string, std::string>>& config) {
    json j = json::object();
    for (const auto& [key, value] : config) j[key] = value;
    return j;
}

std::string fixed(double v) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << v;
    return out.str();
}

rbt::RPattern make_pattern(int k, const std::string& kind, std::uint64_t seed) {
    if (kind == "transitive") return rbt::RPattern::transitive(k);
    if (kind == "random") return rbt::RPattern::random(k, seed);
    throw CLI::ValidationError("--pattern must be 'transitive' or 'random'");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

rbt::ColoredTournament load_tournament(const std::string& path) {
    const std::string text = slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return rbt::tournament_from_json(json::parse(text));
    return rbt::tournament_from_text(text);
}

rbt::DerivedHypergraph load_hypergraph(const std::string& path) {
    const std::string text = slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return rbt::hypergraph_from_json(json::parse(text));
    return rbt::hypergraph_from_text(text);
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

int run_density(int k, long long n_max, const Output& output) {
    rbt::DensityTable& table = rbt::density_table(k);
    const std::vector<std::pair<std::string, std::string>> config{
        {"k", std::to_string(k)},
        {"n_max", std::to_string(n_max)},
        {"format", output.format}};

    const bool bounds_possible = k >= 4;
    const long long bound_from = static_cast<long long>(k) * (k - 1) + 1;

    if (output.format == "json") {
        json rows = json::array();
        for (long long n = 0; n <= n_max; ++n) {
            json row{{"n", n},
                     {"g", rbt::to_string(table.g(n))},
                     {"delta", rbt::to_string(table.delta(n))}};
            if (bounds_possible && n >= bound_from) {
                const auto bounds = rbt::g_bounds(k, n);
                row["g_lower"] = rbt::to_string(bounds.lower);
                row["g_upper"] = rbt::to_string(bounds.upper);
            }
            rows.push_back(std::move(row));
        }
        const json doc{{"format", "density-table"},
                       {"version", 1},
                       {"tool_version", rbt::version},
                       {"config", config_json(config)},
                       {"rows", std::move(rows)}};
        output.deliver(doc.dump(2) + "\n");
        return exit_ok;
    }

    std::ostringstream out;
    out << config_header("density", config);
    if (output.format == "csv")
        out << "n,g,delta,g_lower,g_upper\n";
    else
        out << "#    n            g        delta\n";
    for (long long n = 0; n <= n_max; ++n) {
        std::string lower, upper;
        if (bounds_possible && n >= bound_from) {
            const auto bounds = rbt::g_bounds(k, n);
            lower = rbt::to_string(bounds.lower);
            upper = rbt::to_string(bounds.upper);
        }
        if (output.format == "csv") {
            out << n << ',' << table.g(n) << ',' << table.delta(n) << ',' << lower
                << ',' << upper << '\n';
        } else {
            out << n << ' ' << table.g(n) << ' ' << table.delta(n);
            if (!lower.empty()) out << "  in [" << lower << ", " << upper << "]";
            out << '\n';
        }
    }
    output.deliver(out.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

int run_search(int k, long long s, const std::string& mode, std::uint64_t seed,
               long long restarts, long long moves, long long budget_ms,
               const std::string& pattern_kind, std::uint64_t pattern_seed,
               const std::string& certificate_path, const Output& output) {
    const rbt::RPattern pattern = make_pattern(k, pattern_kind, pattern_seed);
    rbt::SearchResult result;
    if (mode == "exhaustive")
        result = rbt::exhaustive_max(k, s, pattern,
                                     std::chrono::milliseconds(budget_ms));
    else
        result = rbt::local_search_max(k, s, pattern, seed, restarts, moves);

    const std::vector<std::pair<std::string, std::string>> config{
        {"k", std::to_string(k)},
        {"s", std::to_string(s)},
        {"mode", mode},
        {"seed", std::to_string(seed)},
        {"restarts", std::to_string(restarts)},
        {"moves", std::to_string(moves)},
        {"budget_ms", std::to_string(budget_ms)},
        {"pattern", pattern_kind},
        {"pattern_seed", std::to_string(pattern_seed)},
        {"format", output.format}};

    if (output.format == "json") {
        json doc = rbt::to_json(result, pattern);
        doc["tool_version"] = rbt::version;
        doc["config"] = config_json(config);
        output.deliver(doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << config_header("search", config);
        out << "best_count " << result.best_count << '\n'
            << "g_value " << result.g_value << '\n'
            << "exceeded_bound " << (result.exceeded_bound ? 1 : 0) << '\n'
            << "exact " << (result.exact ? 1 : 0) << '\n'
            << "nodes_explored " << result.nodes_explored << '\n';
        out << "# time: wall_time_s=" << fixed(result.wall_time_s) << '\n';
        output.deliver(out.str());
    }

    if (result.exceeded_bound) {
        const std::string path = certificate_path.empty()
                                     ? "certificate-k" + std::to_string(k) + "-s" +
                                           std::to_string(s) + ".json"
                                     : certificate_path;
        std::ofstream cert(path, std::ios::binary);
        cert << rbt::make_certificate(result, pattern).dump(2) << '\n';
        std::cerr << "bound exceeded; certificate written to " << path << '\n';
        return exit_violation;
    }
    if (mode == "exhaustive" && !result.exact) return exit_budget;
    return exit_ok;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

int run_construct_blowup(int k, long long s, const std::string& pattern_kind,
                         std::uint64_t pattern_seed, bool with_trace,
                         const Output& output) {
    const rbt::RPattern pattern = make_pattern(k, pattern_kind, pattern_seed);
    const auto built = rbt::extremal_tournament(k, s, pattern);
    if (output.format == "json") {
        json doc = rbt::to_json(built.tournament);
        doc["tool_version"] = rbt::version;
        if (with_trace) {
            json nodes = json::array();
            for (const auto& node : built.trace.nodes)
                nodes.push_back({{"offset", node.offset},
                                 {"size", node.size},
                                 {"split", node.split}});
            doc["trace"] = std::move(nodes);
        }
        output.deliver(doc.dump(2) + "\n");
    } else {
        output.deliver(rbt::to_text(built.tournament));
    }
    return exit_ok;
}

int run_construct_random(long long n, int k, std::uint64_t seed,
                         const Output& output) {
    const rbt::ColoredTournament t = rbt::random_tournament(n, k, seed);
    if (output.format == "json")
        output.deliver(rbt::to_json(t).dump(2) + "\n");
    else
        output.deliver(rbt::to_text(t));
    return exit_ok;
}

int run_construct_hypergraph(const std::string& in_path,
                             const std::string& pattern_kind,
                             std::uint64_t pattern_seed, const Output& output) {
    const rbt::ColoredTournament t = load_tournament(in_path);
    const rbt::RPattern pattern = make_pattern(t.k(), pattern_kind, pattern_seed);
    const rbt::DerivedHypergraph g = rbt::derived_hypergraph(t, pattern);
    if (output.format == "json")
        output.deliver(rbt::to_json(g).dump(2) + "\n");
    else
        output.deliver(rbt::to_text(g));
    return exit_ok;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

int run_count(const std::string& in_path, const std::string& pattern_kind,
              std::uint64_t pattern_seed, std::optional<long long> profile_vertex,
              const Output& output) {
    const rbt::ColoredTournament t = load_tournament(in_path);
    const rbt::RPattern pattern = make_pattern(t.k(), pattern_kind, pattern_seed);
    const rbt::BigInt copies = rbt::count_copies(t, pattern);

    const std::vector<std::pair<std::string, std::string>> config{
        {"in", in_path},
        {"pattern", pattern_kind},
        {"pattern_seed", std::to_string(pattern_seed)},
        {"format", output.format}};

    json profile_json;
    std::ostringstream profile_text;
    if (profile_vertex) {
        const auto profile = rbt::vertex_profile(t, pattern, *profile_vertex);
        json d = json::array();
        for (const auto& v : profile.d) d.push_back(rbt::to_string(v));
        profile_json = json{{"vertex", *profile_vertex}, {"d", std::move(d)}};
        profile_text << "profile vertex=" << *profile_vertex << " d=[";
        for (std::size_t i = 0; i < profile.d.size(); ++i)
            profile_text << (i ? "," : "") << profile.d[i];
        profile_text << "]\n";
    }

    if (output.format == "json") {
        json doc{{"format", "copy-count"},
                 {"version", 1},
                 {"tool_version", rbt::version},
                 {"config", config_json(config)},
                 {"k", t.k()},
                 {"n", t.n()},
                 {"count", rbt::to_string(copies)}};
        if (profile_vertex) doc["profile"] = std::move(profile_json);
        output.deliver(doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << config_header("count", config);
        out << "count " << copies << '\n' << profile_text.str();
        output.deliver(out.str());
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// independence
// ---------------------------------------------------------------------------

int run_independence(const std::string& in_path, long long n, int k,
                     std::uint64_t seed, bool exact, long long cap, long long t,
                     long long trials, std::uint64_t mc_seed,
                     const Output& output) {
    std::optional<rbt::DerivedHypergraph> graph;
    if (!in_path.empty()) {
        graph = load_hypergraph(in_path);
    } else {
        const rbt::ColoredTournament host = rbt::random_tournament(n, k, seed);
        graph = rbt::derived_hypergraph(host, rbt::RPattern::transitive(k));
    }

    std::vector<std::pair<std::string, std::string>> config{
        {"in", in_path.empty() ? "-" : in_path},
        {"n", std::to_string(graph->n())},
        {"k", std::to_string(graph->k())},
        {"seed", std::to_string(seed)},
        {"mode", exact ? "exact" : "mc"},
        {"format", output.format}};

    if (exact) {
        const auto result = rbt::independence_number_exact(*graph, cap);
        if (!graph->independent(result.witness)) {
            std::cerr << "witness failed re-validation\n";
            return exit_violation;
        }
        if (output.format == "json") {
            const json doc{{"format", "independence"},
                           {"version", 1},
                           {"tool_version", rbt::version},
                           {"config", config_json(config)},
                           {"mode", "exact"},
                           {"n", graph->n()},
                           {"edges", graph->edge_count()},
                           {"alpha", result.alpha},
                           {"witness", result.witness},
                           {"revalidated", true}};
            output.deliver(doc.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << config_header("independence", config);
            out << "edges " << graph->edge_count() << '\n';
            out << "alpha " << result.alpha << '\n' << "witness";
            for (long long v : result.witness) out << ' ' << v;
            out << "\nrevalidated 1\n";
            output.deliver(out.str());
        }
        return exit_ok;
    }

    const auto estimate = rbt::independence_mc(*graph, t, trials, mc_seed);
    config.emplace_back("t", std::to_string(t));
    config.emplace_back("trials", std::to_string(trials));
    config.emplace_back("mc_seed", std::to_string(mc_seed));
    if (output.format == "json") {
        const json doc{{"format", "independence"},
                       {"version", 1},
                       {"tool_version", rbt::version},
                       {"config", config_json(config)},
                       {"mode", "mc"},
                       {"n", graph->n()},
                       {"edges", graph->edge_count()},
                       {"t", estimate.t},
                       {"trials", estimate.trials},
                       {"hits", estimate.hits},
                       {"estimate", fixed(estimate.estimate)},
                       {"ci95_low", fixed(estimate.ci_low)},
                       {"ci95_high", fixed(estimate.ci_high)}};
        output.deliver(doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << config_header("independence", config);
        out << "edges " << graph->edge_count() << '\n'
            << "hits " << estimate.hits << " of " << estimate.trials << '\n'
            << "estimate " << fixed(estimate.estimate) << '\n'
            << "ci95 [" << fixed(estimate.ci_low) << ", " << fixed(estimate.ci_high)
            << "]\n";
        output.deliver(out.str());
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// worksheet
// ---------------------------------------------------------------------------

int run_worksheet(long long n_max, int tol_bits, const Output& output) {
    const rbt::BigRat tol(1, rbt::BigInt(1) << tol_bits);
    const auto report = rbt::worksheet_report(tol, n_max);
    if (output.format == "json")
        output.deliver(rbt::to_json(report).dump(2) + "\n");
    else {
        const std::vector<std::pair<std::string, std::string>> config{
            {"n_max", std::to_string(n_max)},
            {"tol_bits", std::to_string(tol_bits)},
            {"format", output.format}};
        output.deliver(config_header("worksheet", config) + rbt::render_text(report));
    }
    return report.all_pass() ? exit_ok : exit_violation;
}

// ---------------------------------------------------------------------------
// verify: compact invariant sweep across every module
// ---------------------------------------------------------------------------

int run_verify(bool quick, const Output& output) {
    using Check = std::pair<std::string, bool (*)(bool)>;
    const std::vector<Check> checks{
        {"partition-increment-identity",
         [](bool q) {
             const long long n_max = q ? 300 : 1200;
             for (long long t = 2; t <= 8; ++t)
                 for (long long n = t - 1; n <= n_max; ++n) {
                     const long long rq = n - n / t, rt = t - 1;
                     const bool rhs_ok = (rq == 0 && rt == 0) || rt >= 2 ||
                                         (rt == 1 && rq <= 1);
                     if (!rhs_ok) continue;
                     const rbt::BigInt diff = rbt::p_max_product(n + 1, t) -
                                              rbt::p_max_product(n, t);
                     if (diff != rbt::p_max_product(rq, rt)) return false;
                     if (diff <= 0) return false;
                 }
             return true;
         }},
        {"partition-oracle-equivalence",
         [](bool q) {
             const long long q_max = q ? 30 : 50;
             for (long long t = 2; t <= 6; ++t)
                 for (long long qq = 0; qq <= q_max; ++qq) {
                     rbt::BigInt best = -1;
                     rbt::for_each_partition(
                         qq, t, qq > 0 ? qq - 1 : 0,
                         [&](const std::vector<long long>& parts) {
                             rbt::BigInt prod = 1;
                             for (long long p : parts) prod *= p;
                             if (prod > best) best = prod;
                             return true;
                         });
                     if (best < 0) best = 0;
                     if (rbt::p_max_product(qq, t) != best) return false;
                 }
             return true;
         }},
        {"density-equitable-optimality",
         [](bool q) {
             const long long n_max = q ? 60 : 150;
             for (int k = 3; k <= 6; ++k)
                 for (long long n = 0; n <= n_max; ++n)
                     if (rbt::g(k, n) != rbt::g_bruteforce(k, n)) return false;
             return true;
         }},
        {"density-degree-identity",
         [](bool q) {
             const long long n_max = q ? 300 : 1500;
             for (int k = 3; k <= 6; ++k)
                 for (long long n = 1; n <= n_max; ++n)
                     if (rbt::g(k, n) - rbt::g(k, n - 1) != rbt::delta(k, n))
                         return false;
             return true;
         }},
        {"density-small-n-and-induction",
         [](bool) {
             for (int k = 3; k <= 8; ++k)
                 for (long long n = k; n <= static_cast<long long>(k) * (k - 1); ++n) {
                     if (rbt::g(k, n) != rbt::p_max_product(n, k)) return false;
                     if (n > k && rbt::g(k, n - 1) + 1 +
                                          rbt::p_max_product(n - k, k - 1) >
                                      rbt::g(k, n))
                         return false;
                 }
             return true;
         }},
        {"density-bounds-containment",
         [](bool q) {
             const long long n_max = q ? 200 : 1000;
             for (int k = 4; k <= 6; ++k)
                 for (long long n = static_cast<long long>(k) * (k - 1) + 1;
                      n <= n_max; ++n) {
                     const auto gb = rbt::g_bounds(k, n);
                     const auto pb = rbt::p_bounds(k, n);
                     const rbt::BigRat gv(rbt::g(k, n));
                     const rbt::BigRat pv(rbt::p_max_product(n, k));
                     if (gv < gb.lower || gv > gb.upper) return false;
                     if (pv < pb.lower || pv > pb.upper) return false;
                 }
             return true;
         }},
        {"tournament-double-counting",
         [](bool) {
             const rbt::RPattern r = rbt::RPattern::transitive(4);
             const auto t = rbt::random_tournament(11, 4, 97);
             const rbt::BigInt copies = rbt::count_copies(t, r);
             std::vector<rbt::BigInt> sums(4, rbt::BigInt(0));
             for (long long x = 0; x < t.n(); ++x) {
                 const auto profile = rbt::vertex_profile(t, r, x);
                 rbt::BigInt bound = 0;
                 for (int i = 0; i < 4; ++i) {
                     sums[i] += profile.d[i];
                     bound += rbt::p_max_product(
                         static_cast<long long>(profile.role_neighborhood(i).size()),
                         3);
                 }
                 if (profile.total() > bound) return false;
             }
             for (int i = 0; i < 4; ++i)
                 if (sums[i] != copies) return false;
             return true;
         }},
        {"construct-blowup-count",
         [](bool q) {
             const rbt::RPattern r = rbt::RPattern::transitive(4);
             const long long s_max = q ? 16 : 24;
             for (long long s = 0; s <= s_max; ++s)
                 if (rbt::count_copies(rbt::extremal_tournament(4, s, r).tournament,
                                       r) != rbt::g(4, s))
                     return false;
             return true;
         }},
        {"construct-independence-oracle",
         [](bool) {
             const rbt::RPattern r3 = rbt::RPattern::transitive(3);
             for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                 const auto g = rbt::derived_hypergraph(
                     rbt::random_tournament(13, 3, seed), r3);
                 const auto exact = rbt::independence_number_exact(g);
                 long long best = 0;
                 for (std::uint64_t subset = 0; subset < (1ULL << 13); ++subset) {
                     std::vector<long long> verts;
                     for (long long v = 0; v < 13; ++v)
                         if (subset & (1ULL << v)) verts.push_back(v);
                     if (g.independent(verts))
                         best = std::max<long long>(
                             best, static_cast<long long>(verts.size()));
                 }
                 if (exact.alpha != best) return false;
             }
             return true;
         }},
        {"search-desk-scale",
         [](bool) {
             using namespace std::chrono_literals;
             const rbt::RPattern r4 = rbt::RPattern::transitive(4);
             const auto small = rbt::exhaustive_max(4, 4, r4, 60s);
             if (!small.exact || small.best_count != 1) return false;
             const auto climbed = rbt::local_search_max(4, 6, r4, 5, 6, 2000);
             if (climbed.best_count > rbt::g(4, 6)) return false;
             return true;
         }},
        {"inequality-worksheet",
         [](bool q) {
             return rbt::worksheet_report(rbt::default_root_tol(), q ? 30 : 100)
                 .all_pass();
         }},
        {"inequality-simplex-sample",
         [](bool q) {
             rbt::Rng rng(11);
             const int trials = q ? 500 : 5000;
             for (int k = 4; k <= 8; ++k)
                 for (int trial = 0; trial < trials; ++trial) {
                     std::vector<rbt::BigInt> weights(k);
                     rbt::BigInt total = 0;
                     for (auto& w : weights) {
                         w = rbt::BigInt(rng.bounded(100000)) + 1;
                         total += w;
                     }
                     std::vector<rbt::BigRat> p;
                     for (const auto& w : weights) p.emplace_back(w, total);
                     if (!rbt::check_simplex_bound(k, p).ok) return false;
                 }
             return true;
         }},
        {"inequality-product-power",
         [](bool q) {
             const long long n_max = q ? 60 : 200;
             for (long long a = 1; a <= 11; ++a)
                 for (long long b = 1; a + b <= 12; ++b)
                     for (long long n = std::max(a, b); n <= n_max; ++n)
                         if (!rbt::check_product_power_bound(a, b, n).ok) return false;
             return true;
         }},
    };

    std::ostringstream out;
    out << config_header("verify", {{"quick", quick ? "1" : "0"},
                                    {"format", output.format}});
    bool all_ok = true;
    for (const auto& [name, fn] : checks) {
        const bool ok = fn(quick);
        all_ok = all_ok && ok;
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
    }
    out << (all_ok ? "ALL-PASS" : "HAS-FAILURES") << '\n';
    output.deliver(out.str());
    return all_ok ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation, search, and certification for recursive "
                 "blow-up densities of rainbow tournament patterns"};
    app.set_version_flag("--version", rbt::version);
    app.require_subcommand(1);

    int threads = 1;  // caps parallelism; every algorithm here is a
                      // deterministic single pass, so outputs never depend on it
    app.add_option("--threads", threads, "maximum worker threads")
        ->check(CLI::PositiveNumber);

    // density
    auto* density = app.add_subcommand("density", "table of g, delta, and bounds");
    int density_k = 4;
    long long density_n_max = 20;
    Output density_out;
    density->add_option("--k", density_k, "arity (>= 3)")->required();
    density->add_option("--n-max", density_n_max, "largest n")->required();
    density->add_option("--format", density_out.format)
        ->check(CLI::IsMember({"text", "json", "csv"}));
    density->add_option("--out", density_out.path, "output file (default stdout)");

    // search
    auto* search = app.add_subcommand("search", "maximize copies over hosts");
    int search_k = 4;
    long long search_s = 5;
    std::string search_mode = "stochastic";
    std::uint64_t search_seed = 0;
    long long search_restarts = 20;
    long long search_moves = 10000;
    long long search_budget_ms = 600000;
    std::string search_pattern = "transitive";
    std::uint64_t search_pattern_seed = 0;
    std::string search_certificate;
    Output search_out;
    search->add_option("--k", search_k)->required();
    search->add_option("--s", search_s)->required();
    search->add_option("--mode", search_mode)
        ->check(CLI::IsMember({"exhaustive", "stochastic"}));
    search->add_option("--seed", search_seed);
    search->add_option("--restarts", search_restarts)->check(CLI::PositiveNumber);
    search->add_option("--moves", search_moves)->check(CLI::PositiveNumber);
    search->add_option("--budget-ms", search_budget_ms)->check(CLI::PositiveNumber);
    search->add_option("--pattern", search_pattern)
        ->check(CLI::IsMember({"transitive", "random"}));
    search->add_option("--pattern-seed", search_pattern_seed);
    search->add_option("--certificate", search_certificate,
                       "certificate path on exceedance");
    search->add_option("--format", search_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    search->add_option("--out", search_out.path);

    // construct
    auto* construct = app.add_subcommand("construct", "builders");
    construct->require_subcommand(1);
    auto* blowup = construct->add_subcommand("blowup", "recursive blow-up host");
    int blowup_k = 4;
    long long blowup_s = 8;
    std::string blowup_pattern = "transitive";
    std::uint64_t blowup_pattern_seed = 0;
    bool blowup_trace = false;
    Output blowup_out;
    blowup->add_option("--k", blowup_k)->required();
    blowup->add_option("--s", blowup_s)->required();
    blowup->add_option("--pattern", blowup_pattern)
        ->check(CLI::IsMember({"transitive", "random"}));
    blowup->add_option("--pattern-seed", blowup_pattern_seed);
    blowup->add_flag("--trace", blowup_trace, "include the recursion tree (json)");
    blowup->add_option("--format", blowup_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    blowup->add_option("--out", blowup_out.path);

    auto* random_cmd = construct->add_subcommand("random", "seeded random host");
    long long random_n = 10;
    int random_k = 4;
    std::uint64_t random_seed = 0;
    Output random_out;
    random_cmd->add_option("--n", random_n)->required();
    random_cmd->add_option("--k", random_k)->required();
    random_cmd->add_option("--seed", random_seed)->required();
    random_cmd->add_option("--format", random_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    random_cmd->add_option("--out", random_out.path);

    auto* hyper = construct->add_subcommand("hypergraph", "copy-support hypergraph");
    std::string hyper_in;
    std::string hyper_pattern = "transitive";
    std::uint64_t hyper_pattern_seed = 0;
    Output hyper_out;
    hyper->add_option("--in", hyper_in, "tournament file")->required();
    hyper->add_option("--pattern", hyper_pattern)
        ->check(CLI::IsMember({"transitive", "random"}));
    hyper->add_option("--pattern-seed", hyper_pattern_seed);
    hyper->add_option("--format", hyper_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    hyper->add_option("--out", hyper_out.path);

    // count
    auto* count = app.add_subcommand("count", "count pattern copies in a host");
    std::string count_in;
    std::string count_pattern = "transitive";
    std::uint64_t count_pattern_seed = 0;
    long long count_profile_vertex = -1;
    Output count_out;
    count->add_option("--in", count_in, "tournament file")->required();
    count->add_option("--pattern", count_pattern)
        ->check(CLI::IsMember({"transitive", "random"}));
    count->add_option("--pattern-seed", count_pattern_seed);
    count->add_option("--profile", count_profile_vertex,
                      "also emit the per-role profile of this vertex");
    count->add_option("--format", count_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    count->add_option("--out", count_out.path);

    // independence
    auto* independence =
        app.add_subcommand("independence", "independence number of H(T)");
    std::string independence_in;
    long long independence_n = 30;
    int independence_k = 4;
    std::uint64_t independence_seed = 0;
    bool independence_exact = false;
    long long independence_cap = 80;
    long long independence_t = 10;
    long long independence_trials = 10000;
    std::uint64_t independence_mc_seed = 0;
    Output independence_out;
    independence->add_option("--in", independence_in, "hypergraph file");
    independence->add_option("--n", independence_n);
    independence->add_option("--k", independence_k);
    independence->add_option("--seed", independence_seed);
    independence->add_flag("--exact", independence_exact, "branch-and-bound");
    independence->add_option("--cap", independence_cap,
                             "vertex cap for the exact search");
    independence->add_option("--t", independence_t, "sampled set size (mc)");
    independence->add_option("--trials", independence_trials)
        ->check(CLI::PositiveNumber);
    independence->add_option("--mc-seed", independence_mc_seed);
    independence->add_option("--format", independence_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    independence->add_option("--out", independence_out.path);

    // worksheet
    auto* worksheet = app.add_subcommand("worksheet", "certified numeric facts");
    long long worksheet_n_max = 100;
    int worksheet_tol_bits = 40;
    Output worksheet_out;
    worksheet->add_option("--n-max", worksheet_n_max, "partition sweep upper n");
    worksheet->add_option("--tol-bits", worksheet_tol_bits,
                          "root bracket tolerance 2^-bits");
    worksheet->add_option("--format", worksheet_out.format)
        ->check(CLI::IsMember({"text", "json"}));
    worksheet->add_option("--out", worksheet_out.path);

    // verify
    auto* verify = app.add_subcommand("verify", "run the module invariant suite");
    bool verify_quick = false;
    Output verify_out;
    verify->add_flag("--quick", verify_quick, "reduced ranges");
    verify->add_option("--out", verify_out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (density->parsed()) {
            if (density_k < 3) throw CLI::ValidationError("--k must be >= 3");
            if (density_n_max < 0) throw CLI::ValidationError("--n-max must be >= 0");
            return run_density(density_k, density_n_max, density_out);
        }
        if (search->parsed()) {
            if (search_k < 3) throw CLI::ValidationError("--k must be >= 3");
            if (search_s < search_k) throw CLI::ValidationError("--s must be >= k");
            return run_search(search_k, search_s, search_mode, search_seed,
                              search_restarts, search_moves, search_budget_ms,
                              search_pattern, search_pattern_seed,
                              search_certificate, search_out);
        }
        if (construct->parsed()) {
            if (blowup->parsed())
                return run_construct_blowup(blowup_k, blowup_s, blowup_pattern,
                                            blowup_pattern_seed, blowup_trace,
                                            blowup_out);
            if (random_cmd->parsed())
                return run_construct_random(random_n, random_k, random_seed,
                                            random_out);
            if (hyper->parsed())
                return run_construct_hypergraph(hyper_in, hyper_pattern,
                                                hyper_pattern_seed, hyper_out);
        }
        if (count->parsed())
            return run_count(count_in, count_pattern, count_pattern_seed,
                             count_profile_vertex >= 0
                                 ? std::optional<long long>(count_profile_vertex)
                                 : std::nullopt,
                             count_out);
        if (independence->parsed())
            return run_independence(independence_in, independence_n,
                                    independence_k, independence_seed,
                                    independence_exact, independence_cap,
                                    independence_t, independence_trials,
                                    independence_mc_seed, independence_out);
        if (worksheet->parsed())
            return run_worksheet(worksheet_n_max, worksheet_tol_bits, worksheet_out);
        if (verify->parsed()) return run_verify(verify_quick, verify_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_violation;
    }
    return exit_usage;
}
