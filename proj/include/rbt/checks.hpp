#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rbt/bigint.hpp"
#include "rbt/density.hpp"
#include "rbt/partition.hpp"
#include "rbt/roots.hpp"
#include "rbt/version.hpp"

namespace rbt {

/*
 * Certified single constants.  Decimal literals like 0.2611 are carried as
 * exact rationals so every claim below is a decidable rational comparison.
 */

/// (k^k - k) (2611/10000)^(k-2) / (k-2)^(k-1): coefficient of the cross-pair
/// term in the swept recursion-step bound.
inline BigRat bound_coefficient(int k) {
    if (k < 4) throw std::domain_error("bound_coefficient: k must be >= 4");
    const BigRat z(2611, 10000);
    return BigRat(ipow(k, static_cast<unsigned long long>(k)) - k) *
           rpow(z, static_cast<unsigned long long>(k - 2)) /
           BigRat(ipow(k - 2, static_cast<unsigned long long>(k - 1)));
}

/// k! / (k(k-1))^C(k,2): the probability that a random k-set of a
/// random colored tournament induces a copy of the pattern.
inline BigRat copy_probability(int k) {
    if (k < 4) throw std::domain_error("copy_probability: k must be >= 4");
    return BigRat(factorial(k),
                  ipow(BigInt(k) * (k - 1),
                       static_cast<unsigned long long>(k * (k - 1) / 2)));
}

struct MarginCheck {
    bool ok = false;
    BigRat margin;  // how far above the bound; >= 0 means the check holds
};

/// (k^k - k) prod p_i + sum p_i^k <= 1 on the probability simplex.
/// Returns the exact margin 1 - LHS.
inline MarginCheck check_simplex_bound(int k, const std::vector<BigRat>& p) {
    if (k < 3 || p.size() != static_cast<std::size_t>(k))
        throw std::domain_error("check_simplex_bound: need a length-k vector, k >= 3");
    BigRat sum = 0;
    for (const BigRat& v : p) {
        if (v < 0) throw std::domain_error("check_simplex_bound: negative coordinate");
        sum += v;
    }
    if (sum != 1) throw std::domain_error("check_simplex_bound: coordinates must sum to 1");

    BigRat prod = 1;
    BigRat power_sum = 0;
    for (const BigRat& v : p) {
        prod *= v;
        power_sum += rpow(v, static_cast<unsigned long long>(k));
    }
    const BigRat lhs =
        BigRat(ipow(k, static_cast<unsigned long long>(k)) - k) * prod + power_sum;
    MarginCheck result;
    result.margin = 1 - lhs;
    result.ok = result.margin >= 0;
    return result;
}

struct ProductPowerCheck {
    bool ok = false;
    BigRat margin_product;  // (1+a/n)^b (1-b/n)^a - (1 - max{ab^2,ba^2}/n^2)
    BigRat margin_cubic;    // (1 - max{ab^2,ba^2}/n^2) - (1 - (4/27)(a+b)^3/n^2)
};

/// (1+a/n)^b (1-b/n)^a >= 1 - max{ab^2, ba^2}/n^2 >= 1 - (4/27)(a+b)^3/n^2.
inline ProductPowerCheck check_product_power_bound(long long a, long long b, long long n) {
    if (a < 1 || b < 1 || a + b < 2 || n < std::max(a, b))
        throw std::domain_error(
            "check_product_power_bound: need a, b >= 1 and n >= max(a, b)");
    const BigRat lhs = rpow(BigRat(n + a, n), static_cast<unsigned long long>(b)) *
                       rpow(BigRat(n - b, n), static_cast<unsigned long long>(a));
    const BigInt mid_num = std::max(BigInt(a) * b * b, BigInt(b) * a * a);
    const BigRat mid = 1 - BigRat(mid_num, BigInt(n) * n);
    const BigRat rhs =
        1 - BigRat(4 * ipow(a + b, 3), 27 * BigInt(n) * n);
    ProductPowerCheck result;
    result.margin_product = lhs - mid;
    result.margin_cubic = mid - rhs;
    result.ok = result.margin_product >= 0 && result.margin_cubic >= 0;
    return result;
}

/*
 * Exhaustive partition sweep for k = 4: for each 13 <= n <= n_max and every
 * nonincreasing 4-partition of n with all parts < n, certify
 *
 *   sum_i g_4(n_i) + (sum_{i<j} n_i n_j)/(k-2) * (z/(k-2))^(k-2) (n-1)^(k-2)
 *     <= g_4(n)
 *
 * in exact rationals.  z comes either from the fixed constant 2611/10000 or
 * from the certified per-n root bracket (upper endpoint, which dominates
 * the true bound, so a pass is sound).  Failures are data, not errors.
 */
enum class ZSource { paper_constant, finite_root_per_n };

struct SweepFailure {
    long long n = 0;
    std::vector<long long> partition;
    BigRat lhs;
    BigRat rhs;
};

struct SweepReport {
    int k = 4;
    long long n_low = 13;
    long long n_high = 100;
    ZSource z_source = ZSource::finite_root_per_n;
    long long partitions_checked = 0;
    std::vector<SweepFailure> failures;

    bool passed() const { return failures.empty(); }
};

inline SweepReport sweep_recursion_bound(long long n_max = 100,
                                ZSource z_source = ZSource::finite_root_per_n,
                                const BigRat& tol = default_root_tol()) {
    constexpr int k = 4;
    SweepReport report;
    report.n_high = n_max;
    report.z_source = z_source;
    DensityTable& table = density_table(k);

    for (long long n = report.n_low; n <= n_max; ++n) {
        BigRat z;
        if (z_source == ZSource::paper_constant)
            z = BigRat(2611, 10000);
        else
            z = finite_root(k, n, tol).z_high;
        const BigRat coefficient = rpow(z / (k - 2), k - 2) *
                                   BigRat(ipow(n - 1, k - 2)) / (k - 2);
        const BigRat bound(table.g(n));

        for_each_partition(n, k, n - 1, [&](const std::vector<long long>& parts) {
            ++report.partitions_checked;
            BigInt sum_g = 0;
            for (long long part : parts) sum_g += table.g(part);
            BigInt cross = 0;
            for (std::size_t i = 0; i < parts.size(); ++i)
                for (std::size_t j = i + 1; j < parts.size(); ++j)
                    cross += BigInt(parts[i]) * parts[j];
            const BigRat lhs = BigRat(sum_g) + BigRat(cross) * coefficient;
            if (lhs > bound)
                report.failures.push_back(SweepFailure{n, parts, lhs, bound});
            return true;
        });
    }
    return report;
}

// ---------------------------------------------------------------------------
// Worksheet: one artifact bundling every delegated numeric fact, each line
// with a stable id, pass/fail, and the exact rational quantities involved.
// ---------------------------------------------------------------------------

struct CheckLine {
    std::string id;
    std::string description;
    bool pass = false;
    std::string details;
};

struct WorksheetReport {
    std::string tool_version = version;
    std::vector<CheckLine> lines;

    bool all_pass() const {
        return std::all_of(lines.begin(), lines.end(),
                           [](const CheckLine& line) { return line.pass; });
    }
};

namespace detail {

inline std::string bracket_string(const RootCertificate& cert) {
    return "[" + to_string(cert.z_low) + ", " + to_string(cert.z_high) + "]";
}

}  // namespace detail

inline WorksheetReport worksheet_report(const BigRat& tol = default_root_tol(),
                                        long long sweep_n_max = 100) {
    WorksheetReport report;
    const auto add = [&](std::string id, std::string description, bool pass,
                         std::string details) {
        report.lines.push_back(
            CheckLine{std::move(id), std::move(description), pass, std::move(details)});
    };

    {
        const RootCertificate z4 = limit_root(4, tol);
        const bool in_window =
            z4.z_low > BigRat(2560, 10000) && z4.z_high < BigRat(2561, 10000);
        const bool below = z4.z_high <= BigRat(257, 1000);
        add("z-limit-k4", "limit root bracket inside (0.2560, 0.2561) and <= 0.257",
            in_window && below, detail::bracket_string(z4));
    }
    for (int k = 5; k <= 6; ++k) {
        const RootCertificate zk = limit_root(k, tol);
        add("z-limit-k" + std::to_string(k),
            "limit root bracket at most 0.3", zk.z_high <= BigRat(3, 10),
            detail::bracket_string(zk));
    }
    for (const auto& [k, n] : {std::pair<int, long long>{4, 100}, {5, 21}}) {
        const auto [low, high] = forbidden_interval(k, n, tol);
        const bool contains = low.z_high < BigRat(2611, 10000) &&
                              high.z_low > BigRat(7389, 10000);
        add("interval-" + std::to_string(k) + "-" + std::to_string(n),
            "forbidden interval contains (0.2611, 0.7389)", contains,
            detail::bracket_string(low) + " .. " + detail::bracket_string(high));
    }
    {
        const BigRat a4 = bound_coefficient(4);
        add("coefficient-k4-window", "bound coefficient at k=4 inside (2.14, 2.15)",
            a4 > BigRat(214, 100) && a4 < BigRat(215, 100), to_string(a4));
        const BigRat a5 = bound_coefficient(5);
        add("coefficient-k5-below-one", "bound coefficient at k=5 below 1", a5 < 1, to_string(a5));
    }
    {
        const BigRat cube = rpow(BigRat(86, 100), 3);
        add("cube-086", "(0.86)^3 < 0.7", cube < BigRat(7, 10), to_string(cube));
    }
    {
        const BigRat lhs =
            rpow(BigRat(86, 100), 2) / 4 + BigRat(3, 8) * bound_coefficient(4);
        const BigRat cap(992, 1000);
        const BigRat slack = 1 - BigRat(64, 10000);  // 1 - 4^3/100^2
        add("final-step-k4",
            "max-share^2/4 + (3/8) coefficient(4) < 0.992 < 1 - 4^3/100^2",
            lhs < cap && cap < slack, to_string(lhs) + " < " + to_string(cap) +
                                          " < " + to_string(slack));
    }
    for (const ZSource source : {ZSource::finite_root_per_n, ZSource::paper_constant}) {
        const SweepReport sweep = sweep_recursion_bound(sweep_n_max, source, tol);
        const std::string name = source == ZSource::finite_root_per_n
                                     ? "partition-sweep-per-n-z"
                                     : "partition-sweep-constant-z";
        std::ostringstream details;
        details << sweep.partitions_checked << " partitions checked, "
                << sweep.failures.size() << " failures";
        add(name, "k=4 partition sweep of the recursion-step bound",
            sweep.passed(), details.str());
    }
    {
        bool pass = true;
        long long checked = 0;
        for (int k = 4; k <= 8 && pass; ++k)
            for (long long n = k + 1; n <= static_cast<long long>(k) * (k - 1);
                 ++n) {
                ++checked;
                if (g(k, n - 1) + 1 + p_max_product(n - k, k - 1) > g(k, n)) {
                    pass = false;
                    break;
                }
            }
        std::ostringstream details;
        details << checked << " (k, n) cases";
        add("induction-step", "g_k(n-1) + 1 + p(n-k, k-1) <= g_k(n) up to k(k-1)",
            pass, details.str());
    }
    return report;
}

inline std::string render_text(const WorksheetReport& report) {
    std::ostringstream out;
    out << "worksheet tool_version=" << report.tool_version << '\n';
    for (const CheckLine& line : report.lines)
        out << (line.pass ? "PASS" : "FAIL") << ' ' << line.id << "  "
            << line.description << "  [" << line.details << "]\n";
    out << (report.all_pass() ? "ALL-PASS" : "HAS-FAILURES") << '\n';
    return out.str();
}

inline nlohmann::json to_json(const WorksheetReport& report) {
    nlohmann::json lines = nlohmann::json::array();
    for (const CheckLine& line : report.lines)
        lines.push_back({{"id", line.id},
                         {"description", line.description},
                         {"pass", line.pass},
                         {"details", line.details}});
    return nlohmann::json{{"format", "worksheet"},
                          {"version", 1},
                          {"tool_version", report.tool_version},
                          {"all_pass", report.all_pass()},
                          {"lines", std::move(lines)}};
}

inline nlohmann::json to_json(const SweepReport& report) {
    nlohmann::json failures = nlohmann::json::array();
    for (const SweepFailure& failure : report.failures)
        failures.push_back({{"n", failure.n},
                            {"partition", failure.partition},
                            {"lhs", to_string(failure.lhs)},
                            {"rhs", to_string(failure.rhs)}});
    return nlohmann::json{
        {"format", "sweep-report"},
        {"version", 1},
        {"k", report.k},
        {"n_low", report.n_low},
        {"n_high", report.n_high},
        {"z_source", report.z_source == ZSource::finite_root_per_n ? "z-prime-per-n"
                                                               : "constant"},
        {"partitions_checked", report.partitions_checked},
        {"failures", std::move(failures)}};
}

}  // namespace rbt
