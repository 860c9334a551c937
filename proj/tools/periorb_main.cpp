// periorb: exact counts of periodic orbits hidden at fixed points of planar
// polynomial germs, with a classification of which linear parts force more
// than one hidden orbit and a floating-point cross-checker.
//
// Exit codes: 0 success / all checks pass, 1 mathematical failure or
// disagreement, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "periorb/classify.hpp"
#include "periorb/dold.hpp"
#include "periorb/germ_io.hpp"
#include "periorb/normalform.hpp"
#include "periorb/numverify.hpp"

using namespace periorb;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

void log_escalation(int from, int to) {
    std::cerr << "note: truncation escalated " << from << " -> " << to << "\n";
}

ordered_json report_json(const DoldReport& rep) {
    ordered_json j;
    j["M"] = rep.M;
    j["mu_M"] = rep.mu_M;
    j["consistent"] = rep.consistent;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"m", row.m}, {"mu", row.mu}, {"P", row.P}, {"O", row.O}});
    j["rows"] = std::move(rows);
    return j;
}

ordered_json verdict_json(const VerdictB& v) {
    ordered_json j;
    switch (v.outcome) {
        case Outcome::guaranteed: j["outcome"] = "guaranteed"; break;
        case Outcome::not_guaranteed: j["outcome"] = "not_guaranteed"; break;
        case Outcome::no_period_M: j["outcome"] = "no_period_M"; break;
    }
    j["case"] = v.tag;
    if (v.alpha_beta) j["alpha"] = v.alpha_beta->first, j["beta"] = v.alpha_beta->second;
    if (v.ratio) j["d"] = *v.ratio;
    if (v.gcd_max) j["gcd"] = v.gcd_max->first, j["max_order"] = v.gcd_max->second;
    return j;
}

struct GermArg {
    std::string path;
    GermMap load() const { return read_germ_file(path); }
};

int cmd_check(const std::string& path) {
    GermMap f = read_germ_file(path);
    Matrix2 lin = f.linear_part();
    PeriodSet ps = admissible_periods(lin);
    std::cout << "germ ok: level " << f.context()->level() << ", truncation " << f.degree()
              << "\n";
    std::cout << "linear part: [" << lin.a11.str() << ", " << lin.a12.str() << "; "
              << lin.a21.str() << ", " << lin.a22.str() << "]\n";
    std::cout << "admissible periods:";
    for (long m : ps.periods) std::cout << " " << m;
    std::cout << "\n";
    return kExitOk;
}

int cmd_index(const std::string& path, long period, bool json) {
    GermMap f = read_germ_file(path);
    IndexEngine engine(f, period, log_escalation);
    MultiplicityResult r = engine.index(period);
    if (json) {
        ordered_json j;
        j["m"] = period;
        j["mu"] = r.order;
        j["method"] = r.method == MultMethod::cronin ? "cronin" : "dual_space";
        if (r.method == MultMethod::dual_space) j["stabilized_at"] = r.stabilized_at;
        j["trusted"] = r.trusted;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "mu(f^" << period << ") = " << r.order << "  ["
                  << (r.method == MultMethod::cronin ? "cronin" : "dual space") << "]\n";
    }
    return kExitOk;
}

int cmd_dold(const std::string& path, long period, bool json, bool emphasize_orbits) {
    GermMap f = read_germ_file(path);
    DoldEngine engine(f, period, log_escalation);
    DoldReport rep = engine.report(period);
    if (json) {
        std::cout << report_json(rep).dump(2) << "\n";
    } else {
        std::cout << format_report(rep);
        if (emphasize_orbits) std::cout << "O_" << period << " = " << engine.orbit_count(period) << "\n";
    }
    return kExitOk;
}

int cmd_classify(long level, long k1, long k2, bool jordan, long period, bool json) {
    LinearSpec spec(level, k1, k2, !jordan);
    VerdictB v = classify_linear(spec, period);
    if (json) {
        ordered_json j;
        j["spec"] = spec.str();
        j["M"] = period;
        j["verdict"] = verdict_json(v);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << spec.str() << " M=" << period << " -> " << v.describe() << "\n";
    }
    return kExitOk;
}

int cmd_witness(const std::string& tag, long level, long k1, long k2, bool jordan, long period,
                const std::string& out) {
    LinearSpec spec(level, k1, k2, !jordan);
    GermMap w = (tag == "b1" || tag == "b2" || tag == "b3" || tag == "b4")
                    ? positive_witness(tag, spec, period)
                    : witness_germ(tag, spec, period);
    write_germ_file(out, w);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_example(const std::string& name, long k, long m1, long m2,
                const std::vector<std::string>& amat, const std::string& out) {
    GermMap g = [&] {
        if (name == "e2") return builtin_example("e2", k);
        if (name == "c8") {
            Rational a[2][2] = {{Rational(1), Rational(2)}, {Rational(1), Rational(1)}};
            if (!amat.empty()) {
                if (amat.size() != 4)
                    throw CLI::ValidationError("--a needs four rationals a11 a12 a21 a22");
                a[0][0] = parse_rational(amat[0]);
                a[0][1] = parse_rational(amat[1]);
                a[1][0] = parse_rational(amat[2]);
                a[1][1] = parse_rational(amat[3]);
            }
            return builtin_example_c8(m1, m2, a);
        }
        throw CLI::ValidationError("unknown example: " + name);
    }();
    write_germ_file(out, g);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_normalform(const std::string& path, int degree, const std::string& out_h,
                   const std::string& out_g, bool json) {
    GermMap f = read_germ_file(path);
    NormalFormResult nf = poincare_dulac(f, degree);
    auto support = resonant_support(nf.normalized, degree);
    if (json) {
        ordered_json j;
        j["degree"] = degree;
        ordered_json s = ordered_json::array();
        for (const auto& rel : support)
            s.push_back({{"component", rel.j + 1}, {"i1", rel.i1}, {"i2", rel.i2}});
        j["resonant_support"] = std::move(s);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "resonant support through degree " << degree << ":\n";
        for (const auto& rel : support)
            std::cout << "  component " << rel.j + 1 << ": x1^" << rel.i1 << " x2^" << rel.i2
                      << "\n";
        if (support.empty()) std::cout << "  (linear through degree " << degree << ")\n";
    }
    if (!out_h.empty()) write_germ_file(out_h, nf.transform);
    if (!out_g.empty()) write_germ_file(out_g, nf.normalized);
    return kExitOk;
}

int cmd_verify(const std::string& path, long period, NumericConfig cfg, bool json) {
    GermMap f = read_germ_file(path);
    DoldEngine engine(f, period, log_escalation);
    long exact = engine.orbit_count(period); // also certifies isolation
    NumericCount nc = numeric_orbit_count(f, period, cfg);
    bool match = nc.agreed && nc.orbits == exact;
    if (json) {
        ordered_json j;
        j["M"] = period;
        j["exact_orbits"] = exact;
        j["numeric_orbits"] = nc.orbits;
        j["decade_counts"] = {nc.count_at_decade[0], nc.count_at_decade[1]};
        j["agreed_across_decades"] = nc.agreed;
        j["all_certified"] = nc.all_certified;
        j["max_residual"] = nc.max_residual;
        j["embedding_error_bound"] = nc.embedding_error_bound;
        j["match"] = match;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "exact O_" << period << " = " << exact << "\n";
        std::cout << "numeric count: " << nc.orbits << " (decades " << nc.count_at_decade[0]
                  << ", " << nc.count_at_decade[1] << ")\n";
        std::cout << "max residual " << nc.max_residual << ", embedding error bound "
                  << nc.embedding_error_bound << "\n";
        std::cout << (match ? "AGREE" : "DISAGREE") << "\n";
    }
    return match ? kExitOk : kExitMathFailure;
}

int cmd_theorem_scan(const ScanOptions& opts, bool verbose, bool json) {
    ScanReport rep = verify_theorem(opts);
    if (json) {
        ordered_json j;
        ordered_json cells = ordered_json::array();
        for (const auto& cell : rep.cells) {
            ordered_json c;
            c["spec"] = cell.spec.str();
            c["M"] = cell.M;
            c["verdict"] = verdict_json(cell.verdict);
            c["pass"] = cell.pass;
            c["detail"] = cell.detail;
            c["germs_checked"] = cell.checked;
            cells.push_back(std::move(c));
        }
        j["cells"] = std::move(cells);
        j["all_pass"] = rep.all_pass;
        j["germs_checked"] = rep.checked_germs;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_scan_report(rep, verbose);
    }
    return rep.all_pass ? kExitOk : kExitMathFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact periodic-orbit counts at fixed points of planar polynomial germs"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string germ_path, out_path = "out.germ", out_h, out_g;
    long period = 1, level = 1, k1 = 0, k2 = 0, k = 2, m1 = 2, m2 = 3;
    bool jordan = false, verbose = false;
    int nf_degree = 2;
    std::string case_tag, example_name;
    std::vector<std::string> amat;
    NumericConfig ncfg;
    ScanOptions sopts;

    auto* check = app.add_subcommand("check", "parse and describe a germ file");
    check->add_option("germ", germ_path, "germ file")->required();

    auto* index = app.add_subcommand("index", "fixed point index of an iterate");
    index->add_option("germ", germ_path)->required();
    index->add_option("--period", period, "iterate m")->required();

    auto* dold = app.add_subcommand("dold", "index table over the admissible divisors");
    dold->add_option("germ", germ_path)->required();
    dold->add_option("--period", period, "target period M")->required();

    auto* orbits = app.add_subcommand("orbits", "hidden periodic orbit count");
    orbits->add_option("germ", germ_path)->required();
    orbits->add_option("--period", period, "target period M")->required();

    auto* classify = app.add_subcommand("classify", "decide the two-orbit guarantee for a linear part");
    classify->add_option("--level", level, "cyclotomic level L")->required();
    classify->add_option("--k1", k1, "first eigenvalue exponent")->required();
    classify->add_option("--k2", k2, "second eigenvalue exponent")->required();
    classify->add_flag("--jordan", jordan, "non-diagonalizable linear part");
    classify->add_option("--period", period, "target period M")->required();

    auto* witness = app.add_subcommand("witness", "emit a witness germ for a classification case");
    witness->add_option("--case", case_tag, "b1..b4, b0p, b1p..b4p")->required();
    witness->add_option("--level", level)->required();
    witness->add_option("--k1", k1)->required();
    witness->add_option("--k2", k2)->required();
    witness->add_flag("--jordan", jordan);
    witness->add_option("--period", period)->required();
    witness->add_option("-o,--out", out_path, "output germ file");

    auto* example = app.add_subcommand("example", "emit a built-in example germ");
    example->add_option("--name", example_name, "e2 or c8")->required();
    example->add_option("--k", k, "parameter k for e2 (k > 1)");
    example->add_option("--m1", m1, "first order for c8");
    example->add_option("--m2", m2, "second order for c8");
    example->add_option("--a", amat, "c8 coefficients a11 a12 a21 a22")->expected(4);
    example->add_option("-o,--out", out_path, "output germ file");

    auto* normalform = app.add_subcommand("normalform", "resonant normal form to a degree");
    normalform->add_option("germ", germ_path)->required();
    normalform->add_option("--degree", nf_degree, "normalize through this degree")->required();
    normalform->add_option("--out-h", out_h, "write the coordinate transform");
    normalform->add_option("--out-g", out_g, "write the normalized germ");

    auto* verify = app.add_subcommand("verify", "floating-point cross-check of the orbit count");
    verify->add_option("germ", germ_path)->required();
    verify->add_option("--period", period)->required();
    verify->add_option("--epsilon", ncfg.epsilon, "perturbation size");
    verify->add_option("--radius", ncfg.radius, "search radius");
    verify->add_option("--starts", ncfg.starts, "Newton starts");
    verify->add_option("--seed", ncfg.seed, "random seed");

    auto* scan = app.add_subcommand("theorem-scan", "verify the classification over a grid");
    scan->add_option("--max-lcm", sopts.max_lcm, "largest lcm of eigenvalue orders")->required();
    scan->add_option("--samples", sopts.samples, "random germs per cell");
    scan->add_option("--seed", sopts.seed, "random seed");
    scan->add_option("--threads", sopts.threads, "worker threads");
    scan->add_flag("--verbose", verbose, "print every cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(germ_path);
        if (index->parsed()) return cmd_index(germ_path, period, json);
        if (dold->parsed()) return cmd_dold(germ_path, period, json, false);
        if (orbits->parsed()) return cmd_dold(germ_path, period, json, true);
        if (classify->parsed()) return cmd_classify(level, k1, k2, jordan, period, json);
        if (witness->parsed()) return cmd_witness(case_tag, level, k1, k2, jordan, period, out_path);
        if (example->parsed()) return cmd_example(example_name, k, m1, m2, amat, out_path);
        if (normalform->parsed()) return cmd_normalform(germ_path, nf_degree, out_h, out_g, json);
        if (verify->parsed()) return cmd_verify(germ_path, period, ncfg, json);
        if (scan->parsed()) return cmd_theorem_scan(sopts, verbose, json);
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const NonIsolatedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
