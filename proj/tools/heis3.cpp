// Command-line driver: every verification behind a reproducible subcommand.
// Exit codes: 0 = pass, 1 = a check failed, 2 = usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/io.hpp"
#include "heis/rng.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vec3 parse_triple(const std::string& s, const char* what) {
    Vec3 v;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &extra) != 3)
        throw Usage(std::string(what) + ": expected three comma-separated numbers, got '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Usage(std::string(what) + ": bad number '" + tok + "'");
        }
    }
    if (out.empty()) throw Usage(std::string(what) + ": empty list");
    return out;
}

struct Rect {
    double x0, x1, y0, y1;
};

Rect parse_rect(const std::string& s, const char* what) {
    Rect r;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf%c", &r.x0, &r.x1, &r.y0, &r.y1, &extra) != 4)
        throw Usage(std::string(what) + ": expected x0,x1,y0,y1, got '" + s + "'");
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
        throw Usage(std::string(what) + ": empty rectangle");
    return r;
}

struct SurfaceSel {
    std::string name; // plane | vplane | helicoid | hpb
    double lambda = 0.0;
};

SurfaceSel parse_surface(const std::string& s) {
    if (s == "plane") return {"plane"};
    if (s == "vplane") return {"vplane"};
    if (s == "hpb") return {"hpb"};
    if (s.rfind("helicoid:", 0) == 0) {
        SurfaceSel sel{"helicoid"};
        try {
            sel.lambda = std::stod(s.substr(9));
        } catch (const std::exception&) {
            throw Usage("--surface: bad helicoid lambda in '" + s + "'");
        }
        if (sel.lambda == 0.0) throw Usage("--surface: helicoid lambda must be nonzero");
        return sel;
    }
    throw Usage("--surface: unknown selector '" + s + "' (plane|vplane|helicoid:L|hpb)");
}

CatalogSurface selected_catalog(const SurfaceSel& sel) {
    if (sel.name == "plane") return catalog_surface(CatalogTag::HorizontalPlane);
    if (sel.name == "vplane") return catalog_surface(CatalogTag::VerticalPlane);
    if (sel.name == "hpb") return catalog_surface(CatalogTag::HyperbolicParaboloid);
    return catalog_surface(CatalogTag::Helicoid, sel.lambda);
}

// CSV data goes to --out (or stdout); pass/fail report lines go to stderr so
// piped output stays machine-readable.
class OutputFile {
  public:
    explicit OutputFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Usage("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int report_line(const verify::CheckResult& c) {
    std::fprintf(stderr, "%s %s measured=%.6g threshold%s%.6g\n",
                 c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                 c.relation == ">" ? ">" : "<=", c.threshold);
    return c.pass ? 0 : 1;
}

int cmd_geodesic(const std::string& p0s, const std::string& v0s, double tmax,
                 double step, double drift_tol, const std::string& out) {
    const Vec3 p0v = parse_triple(p0s, "--p0");
    const Vec3 v0 = parse_triple(v0s, "--v0");
    if (v0.norm() == 0.0) throw Usage("--v0: zero initial velocity");
    if (!(tmax > 0.0)) throw Usage("--tmax must be positive");
    if (!(step > 0.0)) throw Usage("--step must be positive");

    const ModelPoint p0{p0v.x, p0v.y, p0v.z};
    const GeodesicTrace tr = integrate_geodesic(p0, v0, tmax, step);

    std::ostringstream cfg;
    cfg << "heis3 geodesic --p0 " << p0s << " --v0 " << v0s << " --tmax " << fmt17(tmax)
        << " --step " << fmt17(step);
    OutputFile of(out);
    write_trace_csv(of.stream(), tr, cfg.str());

    const double J0 = momentum(tr.samples.front().state);
    double drift = 0.0;
    for (const TraceSample& s : tr.samples)
        drift = std::max(drift, std::fabs(momentum(s.state) - J0));
    return report_line(verify::check_le("geodesic-momentum-drift", drift, drift_tol));
}

int cmd_residual(const std::string& surface, int grid, const std::string& domain,
                 const std::string& out) {
    const SurfaceSel sel = parse_surface(surface);
    const Rect r = parse_rect(domain, "--domain");
    if (grid < 2) throw Usage("--grid must be >= 2");

    std::vector<ResidualRow> rows;
    rows.reserve(static_cast<std::size_t>(grid) * grid);
    double worst = 0.0;

    if (sel.name == "vplane") {
        // no z-graph exists; the columns carry the two mean curvatures of the
        // parametrized plane instead (both identically zero)
        const CatalogSurface cs = selected_catalog(sel);
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double x = r.x0 + (r.x1 - r.x0) * i / (grid - 1);
                const double z = r.y0 + (r.y1 - r.y0) * j / (grid - 1);
                const double hr = mean_curvature(cs.param, x, z, MetricKind::Riemannian);
                const double hl = mean_curvature(cs.param, x, z, MetricKind::Lorentzian);
                rows.push_back({x, z, hr, hl, 0.5 * (hr - hl), 0.5 * (hr + hl),
                                CausalType::Timelike});
                worst = std::max({worst, std::fabs(hr), std::fabs(hl)});
            }
    } else {
        const CatalogSurface cs = selected_catalog(sel);
        if (sel.name == "helicoid" && r.x0 <= 0.0)
            throw Usage("--domain: helicoid graph branch needs x > 0");
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double x = r.x0 + (r.x1 - r.x0) * i / (grid - 1);
                const double y = r.y0 + (r.y1 - r.y0) * j / (grid - 1);
                ResidualRow row;
                row.x = x;
                row.y = y;
                row.riem = graph_minimal_residual(cs.graph, x, y);
                row.lorentz = graph_lorentz_residual(cs.graph, x, y);
                const auto [diff, sum] = doubly_zero_residuals(cs.graph, x, y);
                row.diff_eq7 = diff;
                row.laplacian = sum;
                row.causal = causal_type(cs.graph, x, y);
                rows.push_back(row);
                worst = std::max({worst, std::fabs(row.riem), std::fabs(row.lorentz)});
            }
    }

    std::ostringstream cfg;
    cfg << "heis3 residual --surface " << surface << " --grid " << grid << " --domain "
        << domain;
    OutputFile of(out);
    write_residual_csv(of.stream(), rows, cfg.str());
    return report_line(verify::check_le("residual-max", worst, 1e-8));
}

int cmd_lemma25(double h0, double dh0, double ddh0, double da0, double dda0,
                double g0, double dg0, int sweep, std::uint64_t seed) {
    int fails = 0;
    auto compare = [&fails](const char* tag, const Lemma25Coefficients& closed,
                            const ExpansionCoefficients& ex) {
        const struct {
            const char* n;
            double c, e;
        } rows[] = {{"A3", closed.A3, ex.A(3)},
                    {"B1", closed.B1, ex.B(1)},
                    {"B5", closed.B5, ex.B(5)},
                    {"C5", closed.C5, ex.C(5)}};
        for (const auto& r : rows) {
            const bool ok = std::fabs(r.c - r.e) <= 1e-6;
            std::printf("%s %s %s closed=%.12g extracted=%.12g |diff|=%.3g\n",
                        ok ? "PASS" : "FAIL", tag, r.n, r.c, r.e, std::fabs(r.c - r.e));
            if (!ok) ++fails;
        }
        std::printf("%s %s fit-residual=%.3g threshold<=1e-08\n",
                    ex.fit_residual <= 1e-8 ? "PASS" : "FAIL", tag, ex.fit_residual);
        if (ex.fit_residual > 1e-8) ++fails;
    };

    {
        const RuledProfile prof{SmoothFn::jet2(h0, dh0, ddh0), SmoothFn::jet2(0, da0, dda0),
                                SmoothFn::linear(g0, dg0)};
        compare("profile", lemma25_coefficients(h0, dh0, ddh0, da0, dda0, g0, dg0),
                extract_expansion_coefficients(prof));
        if (h0 != 0.0) {
            double amp = 0.0;
            for (int k = 0; k < 256; ++k)
                amp = std::max(amp, std::fabs(htilde(prof, 0.0, 2.0 * std::numbers::pi * k / 256)));
            std::printf("%s profile htilde-witness max|H~(0,t)|=%.6g threshold>0.1\n",
                        amp > 0.1 ? "PASS" : "FAIL", amp);
            if (amp <= 0.1) ++fails;
        }
    }

    if (sweep > 0) {
        const CounterRng rng{seed};
        int agreed = 0;
        double worst = 0.0;
        for (int i = 0; i < sweep; ++i) {
            const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
            const double vals[7] = {rng.range(c, -1, 1),     rng.range(c + 1, -1, 1),
                                    rng.range(c + 2, -1, 1), rng.range(c + 3, -1, 1),
                                    rng.range(c + 4, -1, 1), rng.range(c + 5, -1, 1),
                                    rng.range(c + 6, -1, 1)};
            const RuledProfile prof{SmoothFn::jet2(vals[0], vals[1], vals[2]),
                                    SmoothFn::jet2(0, vals[3], vals[4]),
                                    SmoothFn::linear(vals[5], vals[6])};
            const ExpansionCoefficients ex = extract_expansion_coefficients(prof);
            const Lemma25Coefficients cl = lemma25_coefficients(vals[0], vals[1], vals[2],
                                                                vals[3], vals[4], vals[5],
                                                                vals[6]);
            const double diff = std::max(
                std::max(std::fabs(ex.A(3) - cl.A3), std::fabs(ex.B(1) - cl.B1)),
                std::max(std::fabs(ex.B(5) - cl.B5), std::fabs(ex.C(5) - cl.C5)));
            worst = std::max(worst, diff);
            if (diff <= 1e-6) ++agreed;
        }
        std::printf("%s sweep agreements=%d/%d worst|diff|=%.3g\n",
                    agreed == sweep ? "PASS" : "FAIL", agreed, sweep, worst);
        if (agreed != sweep) ++fails;
    }
    return fails == 0 ? 0 : 1;
}

int cmd_limit(const std::string& lambdas_s, int grid, const std::string& domain,
              const std::string& out) {
    const std::vector<double> lambdas = parse_list(lambdas_s, "--lambdas");
    for (double l : lambdas)
        if (!(l > 0.0)) throw Usage("--lambdas: values must be positive");
    const Rect r = parse_rect(domain, "--domain");
    if (grid < 2) throw Usage("--grid must be >= 2");

    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ConvergenceRow row;
        row.lambda = lambdas[i];
        row.sup_error = limit_error(lambdas[i], r.x0, r.x1, r.y0, r.y1, grid);
        if (i > 0) {
            row.has_ratio = true;
            row.ratio_to_prev = row.sup_error / rows[i - 1].sup_error;
        }
        rows.push_back(row);
    }

    std::ostringstream cfg;
    cfg << "heis3 limit --lambdas " << lambdas_s << " --grid " << grid << " --domain "
        << domain;
    OutputFile of(out);
    write_convergence_csv(of.stream(), rows, cfg.str());

    // rate check only applies across quartering steps
    double ratio_dev = 0.0;
    bool any = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double lr = lambdas[i] / lambdas[i - 1];
        if (std::fabs(lr - 0.25) < 1e-9) {
            any = true;
            ratio_dev = std::max(ratio_dev, std::fabs(rows[i].ratio_to_prev - 0.5));
        }
    }
    if (!any) return 0;
    return report_line(verify::check_le("limit-quartering-ratio-band", ratio_dev, 0.15));
}

int cmd_mesh(const std::string& surface, int grid, const std::string& out,
             std::optional<std::string> srange, std::optional<std::string> trange) {
    const SurfaceSel sel = parse_surface(surface);
    if (grid < 2) throw Usage("--grid must be >= 2");
    if (out.empty()) throw Usage("--out is required for mesh");

    double s0 = -1, s1 = 1, t0 = -1, t1 = 1;
    if (sel.name == "helicoid") {
        s0 = 0;
        s1 = 2.0 * std::numbers::pi;
        t0 = 0.5;
        t1 = 2.0;
    }
    auto parse_range = [](const std::string& s, const char* what, double& lo, double& hi) {
        char extra;
        if (std::sscanf(s.c_str(), "%lf,%lf%c", &lo, &hi, &extra) != 2 || !(hi > lo))
            throw Usage(std::string(what) + ": expected lo,hi with hi > lo");
    };
    if (srange) parse_range(*srange, "--srange", s0, s1);
    if (trange) parse_range(*trange, "--trange", t0, t1);

    const CatalogSurface cs = selected_catalog(sel);
    std::ostringstream cfg;
    cfg << "heis3 mesh --surface " << surface << " --grid " << grid << " --srange "
        << fmt17(s0) << ',' << fmt17(s1) << " --trange " << fmt17(t0) << ',' << fmt17(t1);

    OutputFile of(out);
    write_mesh_obj(of.stream(), cs.param, s0, s1, t0, t1, grid, cfg.str());
    return 0;
}

int cmd_verify_all(std::uint64_t seed, bool tamper, const std::string& json_out) {
    verify::Options opts;
    opts.seed = seed;
    opts.tamper_connection = tamper;

    const std::vector<verify::VerificationReport> reports = verify::run_all(opts);

    nlohmann::json js;
    js["seed"] = seed;
    bool all_pass = true;
    std::string first_fail;
    for (const verify::VerificationReport& rep : reports) {
        std::printf("== suite %s ==\n", rep.suite.c_str());
        nlohmann::json jsuite;
        jsuite["suite"] = rep.suite;
        jsuite["runtime_s"] = rep.runtime_s;
        for (const verify::CheckResult& c : rep.checks) {
            std::printf("%s %s measured=%.6g threshold%s%.6g\n", c.pass ? "PASS" : "FAIL",
                        c.name.c_str(), c.measured, c.relation == ">" ? ">" : "<=",
                        c.threshold);
            jsuite["checks"].push_back({{"name", c.name},
                                        {"measured", c.measured},
                                        {"threshold", c.threshold},
                                        {"relation", c.relation},
                                        {"pass", c.pass}});
            if (!c.pass && first_fail.empty()) first_fail = c.name;
        }
        all_pass = all_pass && rep.passed();
        js["suites"].push_back(jsuite);
    }
    js["pass"] = all_pass;

    if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw Usage("cannot open json output '" + json_out + "'");
        f << js.dump(2) << '\n';
    }
    if (!all_pass) {
        std::printf("OVERALL FAIL (first failing check: %s)\n", first_fail.c_str());
        return 1;
    }
    std::printf("OVERALL PASS\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computational kernel for the 3-dimensional Heisenberg group: "
                 "geodesics, zero-mean-curvature surfaces, and their verification"};
    app.require_subcommand(1);

    // geodesic
    std::string g_p0 = "0,0,0", g_v0, g_out;
    double g_tmax = 5.0, g_step = 1e-3, g_drift = 1e-9;
    CLI::App* geodesic = app.add_subcommand("geodesic", "integrate a geodesic, write t,x,y,z,dx,dy,dz,J CSV");
    geodesic->add_option("--p0", g_p0, "start point x,y,z");
    geodesic->add_option("--v0", g_v0, "initial velocity a1,a2,a3 in the frame e1,e2,e3")->required();
    geodesic->add_option("--tmax", g_tmax, "integration time");
    geodesic->add_option("--step", g_step, "fixed step size");
    geodesic->add_option("--drift-tol", g_drift, "momentum drift threshold");
    geodesic->add_option("--out", g_out, "output CSV path (default stdout)");

    // residual
    std::string r_surface, r_domain = "-1,1,-1,1", r_out;
    int r_grid = 21;
    CLI::App* residual = app.add_subcommand("residual", "zero-mean-curvature residual scan over a grid");
    residual->add_option("--surface", r_surface, "plane | vplane | helicoid:L | hpb")->required();
    residual->add_option("--grid", r_grid, "grid points per side");
    residual->add_option("--domain", r_domain, "x0,x1,y0,y1");
    residual->add_option("--out", r_out, "output CSV path (default stdout)");

    // lemma25
    double l_h0 = 1, l_dh0 = 0, l_ddh0 = 0, l_da0 = 0, l_dda0 = 0, l_g0 = 0, l_dg0 = 0;
    int l_sweep = 0;
    std::uint64_t l_seed = 42;
    CLI::App* lemma25 = app.add_subcommand("lemma25", "expansion coefficients: closed forms vs extraction");
    lemma25->add_option("--h0", l_h0, "h(0)");
    lemma25->add_option("--dh0", l_dh0, "h'(0)");
    lemma25->add_option("--ddh0", l_ddh0, "h''(0)");
    lemma25->add_option("--dalpha0", l_da0, "alpha'(0)");
    lemma25->add_option("--ddalpha0", l_dda0, "alpha''(0)");
    lemma25->add_option("--g0", l_g0, "g(0)");
    lemma25->add_option("--dg0", l_dg0, "g'(0)");
    lemma25->add_option("--sweep", l_sweep, "additionally run N random profiles");
    lemma25->add_option("--seed", l_seed, "seed for --sweep");

    // limit
    std::string li_lambdas, li_domain = "-1,1,-1,1", li_out;
    int li_grid = 21;
    CLI::App* limit = app.add_subcommand("limit", "helicoid rescaling limit: sup errors and ratios");
    limit->add_option("--lambdas", li_lambdas, "comma-separated descending lambda values")->required();
    limit->add_option("--grid", li_grid, "grid points per side");
    limit->add_option("--domain", li_domain, "x0,x1,y0,y1");
    limit->add_option("--out", li_out, "output CSV path (default stdout)");

    // mesh
    std::string m_surface, m_out, m_srange_s, m_trange_s;
    int m_grid = 64;
    CLI::App* mesh = app.add_subcommand("mesh", "triangulated surface mesh (v/f records)");
    mesh->add_option("--surface", m_surface, "plane | vplane | helicoid:L | hpb")->required();
    mesh->add_option("--grid", m_grid, "vertices per side");
    mesh->add_option("--out", m_out, "output mesh path");
    mesh->add_option("--srange", m_srange_s, "first parameter range lo,hi");
    mesh->add_option("--trange", m_trange_s, "second parameter range lo,hi");

    // verify-all
    std::uint64_t v_seed = 42;
    bool v_tamper = false;
    std::string v_json;
    CLI::App* verify_all = app.add_subcommand("verify-all", "run every verification suite");
    verify_all->add_option("--seed", v_seed, "seed for the randomized suites");
    verify_all->add_option("--json", v_json, "also write a JSON report");
    verify_all->add_flag("--tamper-connection", v_tamper, "fault-injection hook: corrupt a connection entry")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (geodesic->parsed())
            return cmd_geodesic(g_p0, g_v0, g_tmax, g_step, g_drift, g_out);
        if (residual->parsed()) return cmd_residual(r_surface, r_grid, r_domain, r_out);
        if (lemma25->parsed())
            return cmd_lemma25(l_h0, l_dh0, l_ddh0, l_da0, l_dda0, l_g0, l_dg0, l_sweep, l_seed);
        if (limit->parsed()) return cmd_limit(li_lambdas, li_grid, li_domain, li_out);
        if (mesh->parsed())
            return cmd_mesh(m_surface, m_grid, m_out,
                            m_srange_s.empty() ? std::nullopt : std::optional(m_srange_s),
                            m_trange_s.empty() ? std::nullopt : std::optional(m_trange_s));
        if (verify_all->parsed()) return cmd_verify_all(v_seed, v_tamper, v_json);
    } catch (const Usage& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
