#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptfloquet/companion.hpp"
#include "ptfloquet/eigensolve.hpp"
#include "ptfloquet/errors.hpp"
#include "ptfloquet/io.hpp"
#include "ptfloquet/roots.hpp"
#include "ptfloquet/spectrum.hpp"
#include "ptfloquet/verify.hpp"

namespace ptfloquet::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string config_path;
    double tol_circle = kDefaultTolCircle;
    IntegratorSettings integrator;
    std::uint64_t seed = 42;
    std::string format;  // empty: command default
    std::string out_path;

    void validate() const {
        if (!(tol_circle > 0.0)) throw ParameterError("--tol-circle must be positive");
        integrator.validate();
        if (!format.empty() && format != "json" && format != "csv") {
            throw ParameterError("--format must be json or csv");
        }
    }

    CoefficientSet load() const {
        if (config_path.empty()) throw ParameterError("--config PATH is required for this command");
        return load_coefficient_file(config_path);
    }

    std::string format_or(const std::string& fallback) const { return format.empty() ? fallback : format; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw InputError("cannot write output file '" + cfg.out_path + "'");
    file << text;
}

int cmd_multipliers(const RunConfig& cfg, Complex lambda, std::ostream& out) {
    const auto set = cfg.load();
    const auto monodromy = integrate_fundamental(set, lambda, cfg.integrator);
    const auto ms = multipliers_of(monodromy);
    const auto split = dimension_split(ms, cfg.tol_circle);
    const auto qm = quasimomenta(ms, cfg.tol_circle);
    const Complex det = determinant(monodromy.X1);
    const Complex expected = std::exp(companion_trace_integral(set, lambda));

    std::ostringstream text;
    if (cfg.format_or("json") == "csv") {
        text << "re,im,modulus\n";
        for (std::size_t q = 0; q < ms.multipliers.size(); ++q) {
            text << num(ms.multipliers[q].real()) << ',' << num(ms.multipliers[q].imag()) << ','
                 << num(ms.moduli[q]) << '\n';
        }
    } else {
        json j;
        j["lambda"] = complex_json(lambda);
        j["multipliers"] = json::array();
        for (std::size_t q = 0; q < ms.multipliers.size(); ++q) {
            j["multipliers"].push_back(
                {{"re", ms.multipliers[q].real()}, {"im", ms.multipliers[q].imag()}, {"modulus", ms.moduli[q]}});
        }
        j["quasimomenta"] = qm;
        j["dimension_split"] = {{"inside", split.inside},
                                {"on", split.on},
                                {"outside", split.outside},
                                {"tol_circle", split.tol_circle}};
        j["liouville"] = {{"det", complex_json(det)},
                          {"expected", complex_json(expected)},
                          {"relative_error", std::abs(det - expected) / std::abs(expected)}};
        text << j.dump(2) << '\n';
    }
    emit(cfg, text.str(), out);
    return kOk;
}

int write_scan(const RunConfig& cfg, const ScanResult& scan, bool region, std::ostream& out, std::ostream& err) {
    std::ostringstream text;
    int failures = 0;
    if (cfg.format_or("csv") == "csv") {
        text << (region ? "re,im,distance,in_spectrum\n" : "lambda,distance,in_spectrum\n");
        for (const auto& p : scan.points) {
            if (region) text << num(p.lambda.real()) << ',' << num(p.lambda.imag());
            else text << num(p.lambda.real());
            text << ',' << num(p.distance) << ',' << (p.in_spectrum ? 1 : 0) << '\n';
        }
    } else {
        json j;
        j["mode"] = region ? "region" : "real";
        j["rows"] = scan.rows;
        j["cols"] = scan.cols;
        j["tol_circle"] = scan.tol_circle;
        j["points"] = json::array();
        for (const auto& p : scan.points) {
            json row = region ? json{{"re", p.lambda.real()}, {"im", p.lambda.imag()}} : json{{"lambda", p.lambda.real()}};
            row["distance"] = p.ok() ? json(p.distance) : json(nullptr);
            row["in_spectrum"] = p.in_spectrum;
            if (!p.ok()) row["error"] = p.error;
            j["points"].push_back(std::move(row));
        }
        text << j.dump(2) << '\n';
    }
    for (const auto& p : scan.points) {
        if (!p.ok()) {
            ++failures;
            err << "numerical failure at lambda=(" << num(p.lambda.real()) << "," << num(p.lambda.imag())
                << "): " << p.error << '\n';
        }
    }
    emit(cfg, text.str(), out);
    return failures == 0 ? kOk : kNumerical;
}

int cmd_eigs_t(const RunConfig& cfg, double t, const Rectangle& rect, double residual_tol, std::ostream& out) {
    if (!(t >= 0.0 && t < kTwoPi)) throw ParameterError("--t must lie in [0, 2 pi), got " + num(t));
    if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) throw ParameterError("rectangle must be nondegenerate");
    const auto set = cfg.load();
    RootFinderSettings rs;
    rs.residual_tol = residual_tol;
    const auto result = tt_eigenvalues(set, t, rect, cfg.integrator, rs);

    std::ostringstream text;
    if (cfg.format_or("json") == "csv") {
        text << "re,im,residual,multiplicity,refined\n";
        for (const auto& r : result.roots) {
            text << num(r.z.real()) << ',' << num(r.z.imag()) << ',' << num(r.residual) << ',' << r.multiplicity
                 << ',' << (r.refined ? 1 : 0) << '\n';
        }
    } else {
        json j;
        j["t"] = t;
        j["region"] = {{"re_min", result.region.re_min},
                       {"re_max", result.region.re_max},
                       {"im_min", result.region.im_min},
                       {"im_max", result.region.im_max}};
        j["winding"] = result.winding;
        j["contour_retries"] = result.retries;
        j["roots"] = json::array();
        for (const auto& r : result.roots) {
            j["roots"].push_back({{"re", r.z.real()},
                                  {"im", r.z.imag()},
                                  {"residual", r.residual},
                                  {"multiplicity", r.multiplicity},
                                  {"refined", r.refined}});
        }
        text << j.dump(2) << '\n';
    }
    emit(cfg, text.str(), out);
    return kOk;
}

int cmd_verify(const RunConfig& cfg, bool list, bool break_pt, std::ostream& out) {
    if (list) {
        for (const auto& name : check_names()) out << name << '\n';
        return kOk;
    }
    std::vector<CheckReport> reports;
    if (!cfg.config_path.empty()) {
        auto set = std::make_shared<const CoefficientSet>(cfg.load());
        std::vector<VerificationCase> cases;
        if (break_pt) {
            cases.push_back({"config-broken", std::make_shared<const ComplexFourierSet>(break_pt_symmetry(*set)), nullptr});
        } else {
            cases.push_back({"config", set, set});
        }
        reports = run_checks(cases, cfg.seed, cfg.integrator);
    } else {
        SuiteOptions options;
        options.break_pt = break_pt;
        reports = run_verification_suite(cfg.seed, cfg.integrator, options);
    }
    bool all_pass = true;
    json j;
    j["seed"] = cfg.seed;
    j["checks"] = json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        j["checks"].push_back(to_json(r));
    }
    j["pass"] = all_pass;
    emit(cfg, j.dump(2) + "\n", out);
    return all_pass ? kOk : kVerificationFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Floquet multipliers and spectra of periodic PT-symmetric differential operators", "ptfloquet"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cfg.config_path, "coefficient file (JSON)");
        sub->add_option("--tol-circle", cfg.tol_circle, "unit-circle band half-width")->capture_default_str();
        sub->add_option("--rel-tol", cfg.integrator.rel_tol, "integrator relative tolerance")->capture_default_str();
        sub->add_option("--abs-tol", cfg.integrator.abs_tol, "integrator absolute tolerance")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format: json or csv");
        sub->add_option("--out", cfg.out_path, "write output to PATH instead of stdout");
    };

    double lambda_re = 0.0, lambda_im = 0.0;
    auto* mult = app.add_subcommand("multipliers", "Floquet multipliers at one spectral parameter");
    add_common(mult);
    mult->add_option("--lambda", lambda_re, "Re(lambda)");
    mult->add_option("--lambda-im", lambda_im, "Im(lambda)");

    double scan_min = -5.0, scan_max = 5.0;
    int scan_n = 101;
    auto* sreal = app.add_subcommand("scan-real", "spectral distance along a real interval (CSV)");
    add_common(sreal);
    sreal->add_option("--min", scan_min)->capture_default_str();
    sreal->add_option("--max", scan_max)->capture_default_str();
    sreal->add_option("--n", scan_n, "number of grid points")->capture_default_str();

    Rectangle rect{-1.0, 1.0, -1.0, 1.0};
    int n_re = 21, n_im = 21;
    auto add_rect = [&](CLI::App* sub) {
        sub->add_option("--re-min", rect.re_min)->capture_default_str();
        sub->add_option("--re-max", rect.re_max)->capture_default_str();
        sub->add_option("--im-min", rect.im_min)->capture_default_str();
        sub->add_option("--im-max", rect.im_max)->capture_default_str();
    };
    auto* sregion = app.add_subcommand("scan-region", "spectral distance over a complex rectangle (CSV)");
    add_common(sregion);
    add_rect(sregion);
    sregion->add_option("--n-re", n_re)->capture_default_str();
    sregion->add_option("--n-im", n_im)->capture_default_str();

    double t = 0.0;
    double residual_tol = 1e-8;
    auto* eigs = app.add_subcommand("eigs-t", "eigenvalues of the quasi-periodic problem at quasimomentum t");
    add_common(eigs);
    add_rect(eigs);
    eigs->add_option("--t", t, "quasimomentum in [0, 2 pi)")->capture_default_str();
    eigs->add_option("--residual-tol", residual_tol, "|D_t| threshold for refined roots")->capture_default_str();

    bool list = false, break_pt = false;
    auto* ver = app.add_subcommand("verify", "run the spectral symmetry verification suite");
    add_common(ver);
    ver->add_flag("--list", list, "print check names and exit");
    ver->add_flag("--break-pt", break_pt, "negative control: break PT symmetry of the random cases");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        cfg.validate();
        if (*mult) return cmd_multipliers(cfg, Complex(lambda_re, lambda_im), out);
        if (*sreal) {
            if (scan_n < 2) throw ParameterError("--n must be at least 2");
            if (!(scan_min < scan_max)) throw ParameterError("--min must be below --max");
            const auto set = cfg.load();
            return write_scan(cfg, scan_real(set, scan_min, scan_max, scan_n, cfg.tol_circle, cfg.integrator), false,
                              out, err);
        }
        if (*sregion) {
            if (n_re < 2 || n_im < 2) throw ParameterError("--n-re and --n-im must be at least 2");
            const auto set = cfg.load();
            return write_scan(cfg,
                              scan_region(set, rect.re_min, rect.re_max, rect.im_min, rect.im_max, n_re, n_im,
                                          cfg.tol_circle, cfg.integrator),
                              true, out, err);
        }
        if (*eigs) return cmd_eigs_t(cfg, t, rect, residual_tol, out);
        if (*ver) return cmd_verify(cfg, list, break_pt, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContourFailure& e) {
        err << "contour failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

} // namespace ptfloquet::cli
