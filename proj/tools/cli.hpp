#pragma once

// Command-line front end. Every invocation writes one JSON record (or a CSV
// table for `table1 --format csv`) to `out`; diagnostics go to `err`.
//
// Exit codes: 0 success, 1 an identity check failed, 2 usage error.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumdiff/sumdiff.hpp"

namespace sumdiff::cli {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kCapEnvVar = "SUMDIFF_ENUMERATION_CAP";

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

using nlohmann::ordered_json;

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

/// Counts that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline ordered_json big_to_json(const BigInt& value) {
    if (const auto small = to_u64(value)) {
        return *small;
    }
    return value.str();
}

inline std::uint64_t enumeration_cap_from_env() {
    const char* raw = std::getenv(kCapEnvVar);
    if (raw == nullptr || *raw == '\0') {
        return kDefaultEnumerationCap;
    }
    try {
        std::size_t used = 0;
        const auto cap = std::stoull(raw, &used);
        if (used != std::string(raw).size() || cap == 0) {
            throw std::invalid_argument("");
        }
        return cap;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(kCapEnvVar) + " must be a positive integer, got '" + raw + "'");
    }
}

inline std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size() || !(v > 0.0)) {
            throw std::invalid_argument("tolerances must be positive numbers, got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty tolerance list");
    }
    return out;
}

/// "lo..hi" -> {lo, hi}
inline std::pair<std::int64_t, std::int64_t> parse_b_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw std::invalid_argument("B range must look like lo..hi, got '" + text + "'");
    }
    const auto lo = std::stoll(text.substr(0, dots));
    const auto hi = std::stoll(text.substr(dots + 2));
    if (lo < 1 || hi < lo || hi > 10) {
        throw std::invalid_argument("B range must satisfy 1 <= lo <= hi <= 10, got '" + text + "'");
    }
    return {lo, hi};
}

inline ordered_json report_to_json(const OptimizationReport& r) {
    return {{"B", r.B},
            {"epsilon", r.epsilon},
            {"rStar", r.rStar},
            {"aStar", r.aStar},
            {"thetaMinus1", r.thetaMinus1},
            {"theta", 1.0 + r.thetaMinus1},
            {"evaluations", r.evaluations},
            {"boundaryHit", r.boundaryHit}};
}

inline std::string table1_csv(const Table1& t) {
    std::string csv = "B";
    for (const double eps : t.epsList) {
        csv += ",eps=" + format_double(eps);
    }
    csv += '\n';
    for (std::size_t i = 0; i < t.Bs.size(); ++i) {
        csv += std::to_string(t.Bs[i]);
        for (std::size_t j = 0; j < t.epsList.size(); ++j) {
            csv += ',' + format_double(t.at(i, j).thetaMinus1);
        }
        csv += '\n';
    }
    return csv;
}

inline ordered_json table1_json(const Table1& t) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < t.Bs.size(); ++i) {
        ordered_json cells = ordered_json::array();
        for (std::size_t j = 0; j < t.epsList.size(); ++j) {
            cells.push_back(report_to_json(t.at(i, j)));
        }
        rows.push_back({{"B", t.Bs[i]}, {"cells", cells}});
    }
    const auto& best = t.best();
    return {{"epsList", t.epsList},
            {"rows", rows},
            {"best", {{"B", best.B}, {"epsilon", best.epsilon}, {"theta", 1.0 + best.thetaMinus1}}}};
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sums and differences of sets: counting, rate function and theta bound optimization", "sumdiff-cli"};
    app.require_subcommand(1);

    WParams wp;
    auto addW = [&wp](CLI::App* sub) {
        sub->add_option("--m", wp.m, "dimension")->required();
        sub->add_option("--L", wp.L, "coordinate-sum bound")->required();
        sub->add_option("--B", wp.B, "coordinate bound")->required();
    };

    auto* count = app.add_subcommand("count", "exact |W(m, L, B)|");
    addW(count);

    auto* enumerate = app.add_subcommand("enumerate", "list the members of W(m, L, B)");
    addW(enumerate);

    double c = 0.0;
    std::int64_t rateB = 1;
    double rateTol = kDefaultRateTol;
    auto* rate = app.add_subcommand("rate", "large-deviation rate I(c, B)");
    rate->add_option("--c", c, "target mean")->required();
    rate->add_option("--B", rateB, "support bound")->required();
    rate->add_option("--tol", rateTol, "stationarity residual tolerance");

    std::string setOut;
    auto* bound = app.add_subcommand("bound", "build U = g(W(m, L, B)) and evaluate the exact theta bound");
    addW(bound);
    bound->add_option("--set-out", setOut, "write U as newline-delimited decimal integers to this file");

    std::int64_t maxM = 4;
    std::int64_t maxL = 5;
    std::int64_t maxB = 3;
    std::int64_t fMaxM = 3;
    std::int64_t fMaxL = 4;
    auto* verify = app.add_subcommand("verify", "brute-force check of the sumset/diffset identities and injectivity");
    verify->add_option("--max-m", maxM)->capture_default_str();
    verify->add_option("--max-L", maxL)->capture_default_str();
    verify->add_option("--max-B", maxB)->capture_default_str();
    verify->add_option("--f-max-m", fMaxM, "grid for injectivity of f on V(m, L)")->capture_default_str();
    verify->add_option("--f-max-L", fMaxL)->capture_default_str();

    std::int64_t optB = 5;
    double eps = 1e-10;
    auto* optimize = app.add_subcommand("optimize", "maximize theta - 1 over (r, a) for one B");
    optimize->add_option("--B", optB)->required();
    optimize->add_option("--eps", eps, "bracket-width tolerance")->capture_default_str();

    std::string epsList = "1e-4,1e-6,1e-8,1e-10";
    std::string bRange = "3..10";
    std::string format = "json";
    auto* table = app.add_subcommand("table1", "theta - 1 for each B and tolerance");
    table->add_option("--eps-list", epsList, "comma-separated tolerances")->capture_default_str();
    table->add_option("--b-range", bRange, "lo..hi")->capture_default_str();
    table->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    const auto started = std::chrono::steady_clock::now();
    ordered_json record;
    record["schemaVersion"] = kSchemaVersion;
    ordered_json params = ordered_json::object();
    ordered_json results = ordered_json::object();
    int status = kSuccess;
    bool emitJson = true;
    bool reportTiming = true;

    try {
        if (count->parsed()) {
            record["command"] = "count";
            params = {{"m", wp.m}, {"L", wp.L}, {"B", wp.B}};
            const auto n = count_W(wp);
            results = {{"result", big_to_json(n.exact)}, {"logCount", n.logValue}};
        } else if (enumerate->parsed()) {
            record["command"] = "enumerate";
            params = {{"m", wp.m}, {"L", wp.L}, {"B", wp.B}};
            const auto members = enumerate_W(wp, enumeration_cap_from_env());
            results = {{"count", members.size()}, {"vectors", members}};
        } else if (rate->parsed()) {
            record["command"] = "rate";
            params = {{"c", c}, {"B", rateB}, {"tol", rateTol}};
            const auto res = rate_I({c, rateB}, rateTol);
            ordered_json tStar = nullptr;
            if (res.tStar) {
                tStar = std::isfinite(*res.tStar) ? ordered_json(*res.tStar) : ordered_json("-inf");
            }
            results = {{"result", res.value},
                       {"tStar", tStar},
                       {"iterations", res.iterations},
                       {"residual", res.residual},
                       {"logWRateLimit", std::log(static_cast<double>(rateB + 1)) - res.value}};
        } else if (bound->parsed()) {
            record["command"] = "bound";
            params = {{"m", wp.m}, {"L", wp.L}, {"B", wp.B}};
            const auto U = build_U(wp, enumeration_cap_from_env());
            const auto rep = theta_bound_exact(U);
            if (!setOut.empty()) {
                std::ofstream file(setOut);
                if (!file) {
                    throw std::invalid_argument("cannot open '" + setOut + "' for writing");
                }
                for (const auto& u : U.elements()) {
                    file << u.str() << '\n';
                }
                params["setOut"] = setOut;
            }
            results = {{"size", U.size()},
                       {"max", big_to_json(U.max())},
                       {"d", big_to_json(rep.d.exact)},
                       {"s", big_to_json(rep.s.exact)},
                       {"q", big_to_json(rep.q)},
                       {"theta", rep.theta}};
        } else if (verify->parsed()) {
            record["command"] = "verify";
            params = {{"maxM", maxM}, {"maxL", maxL}, {"maxB", maxB}, {"fMaxM", fMaxM}, {"fMaxL", fMaxL}};
            if (maxM < 0 || maxL < 0 || maxB < 1 || fMaxM < 0 || fMaxL < 0) {
                throw std::invalid_argument("verify grid bounds must be nonnegative and max-B >= 1");
            }
            const auto cap = enumeration_cap_from_env();
            bool allPassed = true;
            ordered_json checks = ordered_json::array();
            for (std::int64_t m = 0; m <= maxM; ++m) {
                for (std::int64_t L = 0; L <= maxL; ++L) {
                    for (std::int64_t B = 1; B <= maxB; ++B) {
                        const WParams p{m, L, B};
                        const bool s = verify_sumset_identity(p, cap);
                        const bool d = verify_diffset_identity(p, cap);
                        const bool g = verify_injectivity(p, cap);
                        allPassed = allPassed && s && d && g;
                        checks.push_back(
                            {{"m", m}, {"L", L}, {"B", B}, {"sumsetIdentity", s}, {"diffsetIdentity", d}, {"gInjective", g}});
                    }
                }
            }
            ordered_json fChecks = ordered_json::array();
            for (std::int64_t m = 0; m <= fMaxM; ++m) {
                for (std::int64_t L = 1; L <= fMaxL; ++L) {
                    const bool f = verify_injectivity_f(m, L, cap);
                    allPassed = allPassed && f;
                    fChecks.push_back({{"m", m}, {"L", L}, {"fInjective", f}});
                }
            }
            results = {{"allPassed", allPassed}, {"checks", checks}, {"fChecks", fChecks}};
            if (!allPassed) {
                err << "verify: at least one identity or injectivity check failed\n";
                status = kVerificationFailed;
            }
        } else if (optimize->parsed()) {
            record["command"] = "optimize";
            params = {{"B", optB}, {"eps", eps}};
            if (optB < 1 || optB > 10) {
                throw std::invalid_argument("optimize supports 1 <= B <= 10");
            }
            results = report_to_json(maximize_r(optB, eps));
        } else if (table->parsed()) {
            record["command"] = "table1";
            const auto epsValues = parse_eps_list(epsList);
            const auto [lo, hi] = parse_b_range(bRange);
            params = {{"epsList", epsValues}, {"bRange", {lo, hi}}, {"format", format}};
            const auto t = sumdiff::table1(epsValues, lo, hi);
            // repeated runs must produce identical bytes, so wall time only goes to stderr
            reportTiming = false;
            if (format == "csv") {
                emitJson = false;
                out << table1_csv(t);
            } else {
                results = table1_json(t);
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    const auto millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    if (!reportTiming) {
        err << record["command"].get<std::string>() << ": " << millis << " ms\n";
    }
    if (emitJson) {
        record["parameters"] = params;
        record["results"] = results;
        record["runtimeMillis"] = reportTiming ? millis : 0;
        out << record.dump(2) << '\n';
    }
    return status;
}

}  // namespace sumdiff::cli
