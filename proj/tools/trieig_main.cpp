#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trieig/oracle.hpp"
#include "trieig/problem_io.hpp"

using nlohmann::json;
using namespace trieig;

namespace {

struct CommonOpts {
    std::string file;
    double tol = -1.0;
    double eps = -1.0;
    bool json_out = false;
    std::uint64_t seed = 12345;
    int max_enum = kVertexEnumBits;
    bool deterministic = false;
    bool csv = false;
    bool strict = false;
    bool no_refine = false;
    bool full_witnesses = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "problem file (JSON, or CSV with --csv)")->required();
    cmd->add_option("--tol", o.tol, "bisection tolerance (default 1e-12 * matrix scale)");
    cmd->add_option("--eps", o.eps, "probe offset for the disjointness refinement (default 1e-6 * scale)");
    cmd->add_flag("--json", o.json_out, "machine-readable output");
    cmd->add_option("--seed", o.seed, "seed for sampled verifications");
    cmd->add_option("--max-enum", o.max_enum, "vertex enumeration cap in free endpoints (2n-1)");
    cmd->add_flag("--deterministic", o.deterministic, "byte-identical output (timings zeroed)");
    cmd->add_flag("--csv", o.csv, "input is CSV (a_lo,a_hi,b_lo,b_hi rows)");
}

std::string fmt_interval(const Interval& iv) {
    return "[" + format_directed(iv.lo, 4, false) + ", " + format_directed(iv.hi, 4, true) + "]";
}

json interval_json(int k, const Interval& iv) { return json{{"k", k}, {"lo", iv.lo}, {"hi", iv.hi}}; }

json matrix_json(const SymTri& t) {
    json diag = json::array(), off = json::array();
    for (double v : t.diag()) diag.push_back(v);
    for (double v : t.off()) off.push_back(v);
    return json{{"diag", std::move(diag)}, {"off", std::move(off)}};
}

json verdict_json(const InvarianceVerdict& v) {
    json out;
    out["status"] = to_string(v.status);
    if (v.witness) {
        json idx = json::array();
        for (int i : v.witness->first.members) idx.push_back(i);
        out["witness"] = json{{"indices", std::move(idx)}, {"value", v.witness->second}};
    } else {
        out["witness"] = nullptr;
    }
    out["certificate"] = v.certificate ? json(*v.certificate) : json(nullptr);
    out["note"] = v.note;
    return out;
}

json timings_json(double total_ms, bool deterministic) {
    return json{{"total_ms", deterministic ? 0.0 : total_ms}};
}

void print_matrix_line(const SymTri& t) {
    std::printf("diag");
    for (double v : t.diag()) std::printf(" %.10g", v);
    std::printf(" / off");
    for (double v : t.off()) std::printf(" %.10g", v);
    std::printf("\n");
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int run_bounds(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemFile problem = load_problem(o.file, o.csv);
    AnalysisOptions opts;
    opts.tol = o.tol;
    opts.eps = o.eps;
    opts.refine = !o.no_refine;
    opts.invariance = InvarianceMode::Fast;
    const AnalysisResult result = analyze(problem.matrix, opts);
    const EigBoundsReport& rep = result.report;
    const int n = rep.order();
    const bool with_witnesses = o.full_witnesses || n <= 12;
    const double total = ms_since(start);

    if (o.json_out) {
        json out;
        out["status"] = to_string(rep.status);
        json ivs = json::array();
        for (int k = 1; k <= n; ++k) ivs.push_back(interval_json(k, rep.interval(k)));
        out["intervals"] = std::move(ivs);
        if (with_witnesses) {
            json upper = json::array(), lower = json::array();
            for (int k = 1; k <= n; ++k) {
                upper.push_back(matrix_json(rep.upper_witness(k)));
                lower.push_back(matrix_json(rep.lower_witness(k)));
            }
            out["witnesses"] = json{{"upper", std::move(upper)}, {"lower", std::move(lower)}};
        } else {
            out["witnesses"] = nullptr;
        }
        out["verdict"] = verdict_json(result.verdict);
        out["timings"] = timings_json(total, o.deterministic);
        out["notes"] = rep.notes;
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }

    if (!problem.name.empty()) std::printf("name: %s\n", problem.name.c_str());
    std::printf("n: %d\n", n);
    std::printf("status: %s\n", to_string(rep.status));
    std::printf("invariance: %s", to_string(result.verdict.status));
    if (result.verdict.certificate) std::printf(" (%s)", result.verdict.certificate->c_str());
    if (!result.verdict.note.empty()) std::printf(" [%s]", result.verdict.note.c_str());
    std::printf("\n");
    for (int k = 1; k <= n; ++k)
        std::printf("lambda_%d in %s\n", k, fmt_interval(rep.interval(k)).c_str());
    if (with_witnesses) {
        for (int k = 1; k <= n; ++k) {
            std::printf("upper witness k=%d: ", k);
            print_matrix_line(rep.upper_witness(k));
        }
        for (int k = 1; k <= n; ++k) {
            std::printf("lower witness k=%d: ", k);
            print_matrix_line(rep.lower_witness(k));
        }
    } else {
        std::printf("witnesses: suppressed (n > 12; pass --full-witnesses to print)\n");
    }
    for (const std::string& note : rep.notes) std::printf("note: %s\n", note.c_str());
    if (!o.deterministic) std::printf("timings: total %.3f ms\n", total);
    return 0;
}

int run_extremal(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemFile problem = load_problem(o.file, o.csv);
    const ExtremalReport ext = extremal_endpoints(problem.matrix, o.tol);
    const bool widened = normalize(problem.matrix).second.any_widened();
    const double total = ms_since(start);
    const int n = problem.matrix.order();

    if (o.json_out) {
        json out;
        out["status"] = widened ? "Outer" : "Exact";
        out["intervals"] = json::array({interval_json(1, ext.lambda1), interval_json(n, ext.lambdan)});
        out["witnesses"] = nullptr;
        out["verdict"] = nullptr;
        out["timings"] = timings_json(total, o.deterministic);
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }
    std::printf("n: %d\n", n);
    std::printf("lambda_1 in %s\n", fmt_interval(ext.lambda1).c_str());
    std::printf("lambda_%d in %s\n", n, fmt_interval(ext.lambdan).c_str());
    if (!o.deterministic) std::printf("timings: total %.3f ms\n", total);
    return 0;
}

int run_check_invariance(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemFile problem = load_problem(o.file, o.csv);
    AnalysisOptions opts;
    opts.tol = o.tol;
    opts.refine = false;
    opts.invariance = InvarianceMode::Full;
    const AnalysisResult result = analyze(problem.matrix, opts);
    const InvarianceVerdict& v = result.verdict;
    const double total = ms_since(start);

    if (o.json_out) {
        json out;
        out["status"] = to_string(v.status);
        out["intervals"] = nullptr;
        out["witnesses"] = nullptr;
        out["verdict"] = verdict_json(v);
        out["timings"] = timings_json(total, o.deterministic);
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("verdict: %s\n", to_string(v.status));
        if (v.witness) {
            std::printf("witness zero indices:");
            for (int i : v.witness->first.members) std::printf(" %d", i);
            std::printf("\ncommon value: %.17g\n", v.witness->second);
        }
        if (v.certificate) std::printf("certificate: %s\n", v.certificate->c_str());
        if (!v.note.empty()) std::printf("note: %s\n", v.note.c_str());
        if (!o.deterministic) std::printf("timings: total %.3f ms\n", total);
    }
    return (o.strict && v.status == Invariance::Unknown) ? 1 : 0;
}

int run_properties(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemFile problem = load_problem(o.file, o.csv);
    const PropertyReport rep = property_checks(problem.matrix, o.tol);
    const double total = ms_since(start);

    if (o.json_out) {
        json out;
        out["status"] = "ok";
        out["intervals"] = nullptr;
        out["witnesses"] = nullptr;
        out["verdict"] = nullptr;
        out["timings"] = timings_json(total, o.deterministic);
        out["properties"] = json{
            {"positive_definite", to_string(rep.positive_definite)},
            {"positive_semidefinite", to_string(rep.positive_semidefinite)},
            {"schur_stable", to_string(rep.schur_stable)},
            {"hurwitz_stable", to_string(rep.hurwitz_stable)},
            {"max_spectral_radius", {rep.max_spectral_radius.lo, rep.max_spectral_radius.hi}},
            {"lambda1_max", rep.lambda1_hi},
            {"lambdan_min", rep.lambdan_lo},
        };
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }
    std::printf("positive definite:      %s\n", to_string(rep.positive_definite));
    std::printf("positive semidefinite:  %s\n", to_string(rep.positive_semidefinite));
    std::printf("schur stable:           %s\n", to_string(rep.schur_stable));
    std::printf("hurwitz stable:         %s\n", to_string(rep.hurwitz_stable));
    std::printf("max spectral radius in %s\n", fmt_interval(rep.max_spectral_radius).c_str());
    if (!o.deterministic) std::printf("timings: total %.3f ms\n", total);
    return 0;
}

struct Check {
    std::string name;
    std::string outcome;  // pass / fail / skip
    std::string detail;
};

int run_verify(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemFile problem = load_problem(o.file, o.csv);
    const SymTriInterval& m = problem.matrix;
    const int n = m.order();
    const double eff_tol = o.tol > 0.0 ? o.tol : 1e-12 * m.scale();

    AnalysisOptions opts;
    opts.tol = o.tol;
    opts.eps = o.eps;
    opts.invariance = n <= 30 ? InvarianceMode::Full : InvarianceMode::Fast;
    const AnalysisResult result = analyze(m, opts);
    const EigBoundsReport& rep = result.report;

    std::vector<Check> checks;
    const double slack = 4.0 * eff_tol + 1e3 * std::numeric_limits<double>::epsilon() * m.scale();

    {  // Witnesses must reproduce the raw endpoints.
        bool ok = true;
        std::string detail;
        for (int k = 1; k <= n && ok; ++k) {
            const double hi = kth_eigenvalue(rep.upper_witness(k), k, eff_tol);
            const double lo = kth_eigenvalue(rep.lower_witness(k), k, eff_tol);
            if (std::fabs(hi - rep.raw_hi[k - 1]) > slack || std::fabs(lo - rep.raw_lo[k - 1]) > slack) {
                ok = false;
                detail = "k=" + std::to_string(k);
            }
        }
        checks.push_back({"witness-validity", ok ? "pass" : "fail", detail});
    }

    const bool enum_ok = 2 * n - 1 <= o.max_enum && 2 * n - 1 <= kVertexEnumBits;
    if (enum_ok) {
        const std::vector<OracleRange> oracle = vertex_enumerate_all(m, eff_tol);
        bool ok = true;
        std::string detail;
        for (int k = 1; k <= n && ok; ++k) {
            const OracleRange& r = oracle[k - 1];
            if (rep.status == ExactnessStatus::Exact) {
                if (std::fabs(r.hi - rep.raw_hi[k - 1]) > slack || std::fabs(r.lo - rep.raw_lo[k - 1]) > slack) {
                    ok = false;
                    detail = "k=" + std::to_string(k) + " exact mismatch";
                }
            } else {
                if (rep.raw_hi[k - 1] > r.hi + slack || rep.raw_lo[k - 1] < r.lo - slack) {
                    ok = false;
                    detail = "k=" + std::to_string(k) + " inner estimate outside vertex hull";
                }
            }
        }
        checks.push_back({"vertex-oracle", ok ? "pass" : "fail", detail});
    } else {
        checks.push_back({"vertex-oracle", "skip", "enumeration cap exceeded"});
    }

    {  // Extremal endpoints agree with the k=1 / k=n intervals when exact.
        const ExtremalReport ext = extremal_endpoints(m, o.tol);
        if (rep.status == ExactnessStatus::Exact) {
            const bool ok = std::fabs(ext.lambda1.hi - rep.interval(1).hi) <= 2 * slack &&
                            std::fabs(ext.lambda1.lo - rep.interval(1).lo) <= 2 * slack &&
                            std::fabs(ext.lambdan.hi - rep.interval(n).hi) <= 2 * slack &&
                            std::fabs(ext.lambdan.lo - rep.interval(n).lo) <= 2 * slack;
            checks.push_back({"extremal-consistency", ok ? "pass" : "fail", ""});
        } else {
            checks.push_back({"extremal-consistency", "skip", "status not Exact"});
        }
    }

    {  // Sampled members stay inside exact bounds / above inner lower ones.
        GridOptions gopts;
        gopts.random_mode = true;
        gopts.samples = 500;
        gopts.seed = o.seed;
        bool ok = true;
        std::string detail;
        for (int k = 1; k <= n && ok; ++k) {
            const OracleRange r = grid_sample(m, k, gopts, eff_tol);
            if (rep.status == ExactnessStatus::InnerEstimate) continue;  // samples may exceed inner bounds
            if (r.hi > rep.raw_hi[k - 1] + slack || r.lo < rep.raw_lo[k - 1] - slack) {
                ok = false;
                detail = "k=" + std::to_string(k);
            }
        }
        checks.push_back({"sample-soundness", ok ? "pass" : "fail", detail});
    }

    {  // Upper-selection cardinality law on certified single-block instances.
        const auto blocks = split_blocks(normalize(m).first);
        if (blocks.size() == 1 && result.verdict.status == Invariance::Invariant && n > 1) {
            bool ok = true;
            std::string detail;
            for (int k = 1; k <= n && ok; ++k) {
                int count = 0;
                for (bool b : rep.upper_sel[k - 1].off_upper) count += b ? 1 : 0;
                if (count != n - k) {
                    ok = false;
                    detail = "k=" + std::to_string(k) + " count=" + std::to_string(count);
                }
            }
            checks.push_back({"cardinality-law", ok ? "pass" : "fail", detail});
        } else {
            checks.push_back({"cardinality-law", "skip", "needs one certified block"});
        }
    }

    if (enum_ok) {  // Membership test agrees with brute force where decisive.
        bool ok = true;
        std::string detail;
        std::vector<double> probes;
        for (int k = 1; k <= n; ++k) probes.push_back(rep.interval(k).mid());
        for (int k = 1; k + 1 <= n; ++k)
            probes.push_back(0.5 * (rep.interval(k).lo + rep.interval(k + 1).hi));
        for (double p : probes) {
            const Membership verdict = membership_test(m, p, eff_tol);
            if (verdict == Membership::Unknown) continue;
            const bool brute = is_eigenvalue_bruteforce(m, p, 1e-7 * m.scale());
            if ((verdict == Membership::IsEigenvalue) != brute) {
                ok = false;
                detail = "probe " + std::to_string(p);
                break;
            }
        }
        checks.push_back({"membership-vs-bruteforce", ok ? "pass" : "fail", detail});
    } else {
        checks.push_back({"membership-vs-bruteforce", "skip", "enumeration cap exceeded"});
    }

    const double total = ms_since(start);
    bool any_fail = false;
    for (const Check& c : checks) any_fail = any_fail || c.outcome == "fail";

    if (o.json_out) {
        json out;
        out["status"] = any_fail ? "fail" : "pass";
        out["intervals"] = nullptr;
        out["witnesses"] = nullptr;
        out["verdict"] = verdict_json(result.verdict);
        out["timings"] = timings_json(total, o.deterministic);
        json list = json::array();
        for (const Check& c : checks)
            list.push_back(json{{"name", c.name}, {"outcome", c.outcome}, {"detail", c.detail}});
        out["checks"] = std::move(list);
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        for (const Check& c : checks) {
            std::printf("%s %s", c.outcome == "pass" ? "PASS" : (c.outcome == "fail" ? "FAIL" : "SKIP"),
                        c.name.c_str());
            if (!c.detail.empty()) std::printf(" (%s)", c.detail.c_str());
            std::printf("\n");
        }
        if (!o.deterministic) std::printf("timings: total %.3f ms\n", total);
    }
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenvalue ranges of symmetric tridiagonal interval matrices"};
    app.require_subcommand(1);

    CommonOpts o;
    CLI::App* bounds = app.add_subcommand("bounds", "eigenvalue intervals, witnesses, and exactness status");
    add_common(bounds, o);
    bounds->add_flag("--no-refine", o.no_refine, "skip the disjointness refinement");
    bounds->add_flag("--full-witnesses", o.full_witnesses, "print witnesses for any order");

    CLI::App* extremal = app.add_subcommand("extremal", "assumption-free extremes of lambda_1 and lambda_n");
    add_common(extremal, o);

    CLI::App* check = app.add_subcommand("check-invariance", "eigenvector sign-invariancy verdict");
    add_common(check, o);
    check->add_flag("--strict", o.strict, "exit 1 on an Unknown verdict");

    CLI::App* props = app.add_subcommand("properties", "definiteness, stability, spectral radius");
    add_common(props, o);

    CLI::App* verify = app.add_subcommand("verify", "cross-check against the brute-force oracle");
    add_common(verify, o);

    try {
        app.parse(argc, argv);
        if (bounds->parsed()) return run_bounds(o);
        if (extremal->parsed()) return run_extremal(o);
        if (check->parsed()) return run_check_invariance(o);
        if (props->parsed()) return run_properties(o);
        if (verify->parsed()) return run_verify(o);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
