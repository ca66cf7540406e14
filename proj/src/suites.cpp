#include "gcf/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gcf/geometry.hpp"
#include "gcf/lambda2.hpp"
#include "gcf/variational.hpp"

namespace gcf {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

/// Unit imaginary orthogonal to a, rejection-sampled deterministically.
Quat orth_imag(Rng& rng, const Quat& a) {
    for (;;) {
        const Quat t = tangent_project(a, rng.unit_imag());
        if (t.norm() > 0.3) return Quat::imag(t.x, t.y, t.z).normalized();
    }
}

/// Unit vector of R^4 orthogonal to a (and optionally b), rejection-sampled.
Quat orth4(Rng& rng, const Quat& a, const Quat* b = nullptr) {
    for (;;) {
        Quat t = rng.unit_s3();
        t = t - inner(t, a) * a;
        if (b) t = t - inner(t, *b) * *b;
        if (t.norm() > 0.3) return t.normalized();
    }
}

MetricResult upper(std::string key, double value, double tol) {
    return {std::move(key), value, tol, true, value <= tol};
}

MetricResult lower(std::string key, double value, double bound) {
    return {std::move(key), value, bound, false, value >= bound};
}

MetricResult flag(std::string key, bool ok) {
    return {std::move(key), ok ? 1.0 : 0.0, 0.5, false, ok};
}

SampleRow row_p(long id, const Quat& p, double t, std::string metric, double value) {
    return {id, p.w, p.x, p.y, p.z, t, std::move(metric), value};
}

SuiteResult suite_algebra(const RunConfig& cfg, const Fibration&) {
    SuiteResult res;
    res.name = "algebra";
    Rng rng(cfg.seed ^ 0xa15ebfa1ull);
    double anti = 0, square = 0, crossp = 0, orient = 0;
    const int n = cfg.samples.trials;
    for (int k = 0; k < n; ++k) {
        const Quat a = rng.unit_imag();
        const Quat b = orth_imag(rng, a);
        anti = std::max(anti, (a * b + b * a).norm());
        square = std::max(square, (a * a + Quat::one()).norm());
        crossp = std::max(crossp, (a * b - cross(a, b)).norm());

        const Quat p = rng.unit_s3();
        const Quat a1 = orth4(rng, p);
        const Quat a2 = orth4(rng, p, &a1);
        Quat a3 = cross4(p, a1, a2).normalized();
        if (inner(a1 * conj(p) * a2, a3) < 0.0) a3 = -a3;
        double o = (a1 * conj(p) * a2 - a3).norm();
        o = std::max(o, (a2 * conj(p) * a3 - a1).norm());
        o = std::max(o, (a3 * conj(p) * a1 - a2).norm());
        orient = std::max(orient, o);
        if (k < 100) {
            res.rows.push_back(row_p(k, p, 0.0, "orientation", o));
            res.rows.push_back(row_p(k, a, 0.0, "anti_commute", (a * b + b * a).norm()));
        }
    }
    res.metrics.push_back(upper("anti_commute_max", anti, 1e-12));
    res.metrics.push_back(upper("square_minus_one_max", square, 1e-12));
    res.metrics.push_back(upper("cross_product_max", crossp, 1e-12));
    res.metrics.push_back(upper("orientation_products_max", orient, 1e-12));
    return res;
}

SuiteResult suite_duality(const RunConfig& cfg, const Fibration& fib) {
    SuiteResult res;
    res.name = "duality";
    Rng rng(cfg.seed ^ 0xd0a117ull);
    const int n = std::max(100, cfg.samples.points);
    std::vector<Quat> xs(static_cast<std::size_t>(n)), v1s(static_cast<std::size_t>(n)), v2s(static_cast<std::size_t>(n));
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        xs[static_cast<std::size_t>(k)] = rng.unit_imag();
        ts[static_cast<std::size_t>(k)] = rng.uniform(-kPi, kPi);
        v1s[static_cast<std::size_t>(k)] = rng.unit_s3();
        v2s[static_cast<std::size_t>(k)] = orth4(rng, v1s[static_cast<std::size_t>(k)]);
    }
    std::vector<double> spread(static_cast<std::size_t>(n)), minus_rt(static_cast<std::size_t>(n)), plus_rt(static_cast<std::size_t>(n)),
        mu_agree(static_cast<std::size_t>(n)), solve_rt(static_cast<std::size_t>(n)), encdec(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        const Quat x = xs[k];
        const GaussMapRecord gm = gauss_maps(fib, x, 8);
        spread[k] = gm.max_spread;
        minus_rt[k] = (iota_coords(gm.point.minus, Side::Minus) - x).norm();
        plus_rt[k] = (iota_coords(gm.point.plus, Side::Plus) - eval(fib.map(), x)).norm();

        const PhiTensor phi = phi_at(fib, fiber_frame(fib, {x, 0.0}));
        const auto [m1, m2] = mu_from_phi(phi);
        const auto [s1, s2] = singular_values(fib.map(), x);
        mu_agree[k] = std::max(std::abs(m1 - s1), std::abs(m2 - s2));

        const Quat p = fib.circle({x, ts[k]});
        const FiberCoord sol = fib.solve_fiber(p);
        solve_rt[k] = (fib.circle(sol) - p).norm();

        const GrassPoint G = grass_encode(v1s[k], v2s[k]);
        const auto [w1, w2] = grass_decode(G);
        const GrassPoint G2 = grass_encode(w1, w2);
        encdec[k] = std::sqrt((G.minus - G2.minus).norm2() + (G.plus - G2.plus).norm2());
    });
    double sp = 0, mr = 0, pr = 0, mu = 0, so = 0, ed = 0;
    for (int k = 0; k < n; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        sp = std::max(sp, spread[i]);
        mr = std::max(mr, minus_rt[i]);
        pr = std::max(pr, plus_rt[i]);
        mu = std::max(mu, mu_agree[i]);
        so = std::max(so, solve_rt[i]);
        ed = std::max(ed, encdec[i]);
        res.rows.push_back({k, xs[i].x, xs[i].y, xs[i].z, 0.0, ts[i], "mu_agreement",
                            mu_agree[i]});
        res.rows.push_back({k, xs[i].x, xs[i].y, xs[i].z, 0.0, ts[i], "solve_roundtrip",
                            solve_rt[i]});
    }
    res.metrics.push_back(upper("gauss_map_spread_max", sp, 1e-10));
    res.metrics.push_back(upper("minus_coords_roundtrip_max", mr, 1e-9));
    res.metrics.push_back(upper("plus_coords_roundtrip_max", pr, 1e-9));
    res.metrics.push_back(upper("mu_vs_dg_svd_max", mu, 1e-4));
    res.metrics.push_back(upper("solve_fiber_roundtrip_max", so, 1e-9));
    res.metrics.push_back(upper("encode_decode_roundtrip_max", ed, 1e-10));
    return res;
}

SuiteResult suite_riccati(const RunConfig& cfg, const Fibration& fib) {
    SuiteResult res;
    res.name = "riccati";
    Rng rng(cfg.seed ^ 0x51cca71ull);
    const auto grid = uniform_t_grid(cfg.samples.t_nodes);
    double comp = 0, scal = 0, disc = 0, rk = 0;
    bool signs = true;
    for (int k = 0; k < cfg.samples.fibers; ++k) {
        const Quat x = rng.unit_imag();
        const RiccatiRecord rec = riccati_residuals(fib, x, grid);
        comp = std::max(comp, rec.max_component_residual);
        scal = std::max(scal, rec.max_scalar_residual);
        disc = std::max(disc, rec.max_discriminant_residual);
        rk = std::max(rk, rec.rk4_max_diff);
        signs = signs && rec.det_positive && rec.u_one_sign && rec.discriminant_negative;
        res.rows.push_back({k, x.x, x.y, x.z, 0.0, 0.0, "component_residual",
                            rec.max_component_residual});
        res.rows.push_back({k, x.x, x.y, x.z, 0.0, 0.0, "scalar_residual",
                            rec.max_scalar_residual});
        res.rows.push_back({k, x.x, x.y, x.z, 0.0, 0.0, "rk4_diff", rec.rk4_max_diff});
    }
    res.metrics.push_back(upper("component_ode_residual_max", comp, 1e-4));
    res.metrics.push_back(upper("scalar_ode_residual_max", scal, 1e-4));
    res.metrics.push_back(upper("discriminant_ode_residual_max", disc, 1e-4));
    res.metrics.push_back(upper("rk4_cross_check_max", rk, 1e-4));
    res.metrics.push_back(flag("sign_invariants", signs));
    return res;
}

SuiteResult suite_harmonic(const RunConfig& cfg, const Fibration& fib) {
    SuiteResult res;
    res.name = "harmonic";
    Rng rng(cfg.seed ^ 0xaa9043ull);
    const int n = cfg.samples.points;
    std::vector<Quat> ps(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) ps[static_cast<std::size_t>(k)] = rng.unit_s3();
    std::vector<TensionReport> reps(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) { reps[k] = laplacian_identity(fib, ps[k]); });

    double id_max = 0, sup_h = 0;
    std::size_t argmax = 0;
    for (int k = 0; k < n; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        id_max = std::max(id_max, reps[i].identity_residual);
        if (reps[i].harmonic_residual > sup_h) {
            sup_h = reps[i].harmonic_residual;
            argmax = i;
        }
        res.rows.push_back(row_p(k, ps[i], 0.0, "identity_residual", reps[i].identity_residual));
        res.rows.push_back(row_p(k, ps[i], 0.0, "harmonic_residual", reps[i].harmonic_residual));
        res.rows.push_back(row_p(k, ps[i], 0.0, "tension_norm", reps[i].tension_norm));
    }
    res.metrics.push_back(upper("laplacian_identity_residual_max", id_max, 1e-3));

    // Cauchy-Riemann-type system at a subsample.
    const int ncr = std::min(n, 20);
    std::vector<CrReport> crs(static_cast<std::size_t>(ncr));
    parallel_for(static_cast<std::size_t>(ncr), [&](std::size_t k) {
        crs[k] = cauchy_riemann_residuals(fib, ps[k]);
    });
    double cr_pair = 0, cr_fiber = 0;
    for (const auto& cr : crs) {
        cr_pair = std::max({cr_pair, cr.cr_a2u_a3v, cr.cr_a3u_a2v});
        cr_fiber = std::max({cr_fiber, cr.fiber_v, cr.fiber_u});
    }
    res.metrics.push_back(upper("cr_fiber_equations_max", cr_fiber, 1e-4));
    // The a2/a3 pair of the CR system is a harmonicity criterion: it must
    // hold (1e-3) when the field is harmonic; otherwise it is informational.
    const bool harmonic_field = sup_h <= 1e-4;
    res.metrics.push_back(flag("cr_pair_when_harmonic", !harmonic_field || cr_pair <= 1e-3));

    // Theorem B consistency: Hopf-like fields are harmonic; any other
    // certified fibration has a genuinely nonzero (step-stable) residual sup.
    bool thB;
    if (harmonic_field) {
        thB = true;
    } else {
        const double sup_half = laplacian_identity(fib, ps[argmax], 0.5e-3).harmonic_residual;
        thB = sup_h > 1e-2 && sup_half >= 0.5 * sup_h && sup_half <= 2.0 * sup_h;
    }
    res.metrics.push_back(flag("theorem_b_dichotomy", thB));

    // Eq. (4.5)-style pointwise Hessian identity at a small subsample.
    const int nh = std::min(n, 20);
    std::vector<double> hres(static_cast<std::size_t>(nh));
    parallel_for(static_cast<std::size_t>(nh), [&](std::size_t k) {
        hres[k] = hessian_identity_residual(fib, ps[k]);
    });
    double h_max = 0;
    for (double r : hres) h_max = std::max(h_max, r);
    res.metrics.push_back(upper("hessian_identity_residual_max", h_max, 1e-3));
    return res;
}

SuiteResult suite_minimal(const RunConfig& cfg, const Fibration& fib) {
    SuiteResult res;
    res.name = "minimal";
    Rng rng(cfg.seed ^ 0x3a11dull);

    double subm = 0;
    for (int k = 0; k < cfg.samples.trials; ++k) {
        const Quat x = rng.unit_s3();
        const Quat u = orth4(rng, x);
        USphereVec Z1{orth4(rng, u), orth4(rng, u, &x)};
        USphereVec Z2{orth4(rng, u), orth4(rng, u, &x)};
        subm = std::max(subm, submersion_residual(x, u, Z1, Z2));
    }
    res.metrics.push_back(upper("stiefel_submersion_residual_max", subm, 1e-12));

    const int n = cfg.samples.points;
    std::vector<Quat> ps(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) ps[static_cast<std::size_t>(k)] = rng.unit_s3();
    std::vector<double> geo(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        geo[k] = fiber_geodesy_residual(fib, ps[k]);
    });
    double geo_max = 0;
    for (int k = 0; k < n; ++k) {
        geo_max = std::max(geo_max, geo[static_cast<std::size_t>(k)]);
        res.rows.push_back(row_p(k, ps[static_cast<std::size_t>(k)], 0.0, "fiber_geodesy",
                                 geo[static_cast<std::size_t>(k)]));
    }
    res.metrics.push_back(upper("fiber_geodesy_residual_max", geo_max, 1e-4));

    const int nr = std::min(n, 50);
    std::vector<Quat> xs(static_cast<std::size_t>(nr));
    for (int k = 0; k < nr; ++k) xs[static_cast<std::size_t>(k)] = rng.unit_imag();
    std::vector<CurvatureReport> curv(static_cast<std::size_t>(nr));
    parallel_for(static_cast<std::size_t>(nr), [&](std::size_t k) {
        curv[k] = mean_curvature_relation(fib, xs[k]);
    });
    double rel_max = 0, sup_hz = 0, sup_hg = 0;
    for (int k = 0; k < nr; ++k) {
        const auto& c = curv[static_cast<std::size_t>(k)];
        rel_max = std::max(rel_max, c.relation_residual);
        sup_hz = std::max(sup_hz, c.H_zeta_norm);
        sup_hg = std::max(sup_hg, c.H_graph_norm);
        res.rows.push_back({k, c.x.x, c.x.y, c.x.z, 0.0, 0.0, "relation_residual",
                            c.relation_residual});
        res.rows.push_back({k, c.x.x, c.x.y, c.x.z, 0.0, 0.0, "H_zeta_norm", c.H_zeta_norm});
        res.rows.push_back({k, c.x.x, c.x.y, c.x.z, 0.0, 0.0, "H_graph_norm", c.H_graph_norm});
    }
    res.metrics.push_back(upper("mean_curvature_relation_residual_max", rel_max, 1e-2));
    // Theorem D consistency: both curvatures vanish (Hopf) or both are
    // genuinely nonzero somewhere.
    const bool thD = (sup_hz <= 1e-4 && sup_hg <= 1e-4) || (sup_hz > 1e-2 && sup_hg > 1e-2);
    res.metrics.push_back(flag("theorem_d_dichotomy", thD));
    return res;
}

SuiteResult suite_functionals(const RunConfig& cfg, const Fibration& fib) {
    SuiteResult res;
    res.name = "functionals";
    const FunctionalReport rep = functionals(fib, cfg.grid);
    const double pi2 = kPi * kPi;
    res.metrics.push_back(lower("energy", rep.energy, 0.995 * 5.0 * pi2));
    res.metrics.push_back(lower("volume", rep.volume, 0.995 * 4.0 * pi2));
    res.metrics.push_back(upper("estimated_error", rep.estimated_error, 0.005 * 4.0 * pi2));
    res.rows.push_back({0, 0, 0, 0, 0, 0, "energy", rep.energy});
    res.rows.push_back({1, 0, 0, 0, 0, 0, "volume", rep.volume});
    res.rows.push_back({2, 0, 0, 0, 0, 0, "estimated_error", rep.estimated_error});
    res.rows.push_back({3, 0, 0, 0, 0, 0, "quadrature_nodes", double(rep.quadrature_nodes)});
    return res;
}

}  // namespace

bool SuiteResult::passed() const {
    for (const auto& m : metrics)
        if (!m.pass) return false;
    return true;
}

SuiteResult run_suite(const RunConfig& cfg, const Fibration& fib, const std::string& suite) {
    if (suite == "algebra") return suite_algebra(cfg, fib);
    if (suite == "duality") return suite_duality(cfg, fib);
    if (suite == "riccati") return suite_riccati(cfg, fib);
    if (suite == "harmonic") return suite_harmonic(cfg, fib);
    if (suite == "minimal") return suite_minimal(cfg, fib);
    if (suite == "functionals") return suite_functionals(cfg, fib);
    throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
}

void emit_report(const RunConfig& cfg, const std::vector<SuiteResult>& results) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    char buf[256];

    for (const auto& suite : results) {
        std::ofstream csv(fs::path(cfg.output_dir) / (suite.name + ".csv"));
        if (!csv) throw std::runtime_error("emit_report: cannot write CSV for " + suite.name);
        csv << "id,c0,c1,c2,c3,t,metric,value\n";
        for (const auto& r : suite.rows) {
            std::snprintf(buf, sizeof buf,
                          "%ld,%.12e,%.12e,%.12e,%.12e,%.12e,%s,%.12e\n", r.id, r.c0, r.c1,
                          r.c2, r.c3, r.t, r.metric.c_str(), r.value);
            csv << buf;
        }

        // Plot data: (sample id, value) of the suite's first row metric,
        // in increasing id order.
        if (!suite.rows.empty()) {
            std::ofstream plot(fs::path(cfg.output_dir) / (suite.name + "_plot.csv"));
            plot << "x,y\n";
            const std::string& key = suite.rows.front().metric;
            for (const auto& r : suite.rows)
                if (r.metric == key) {
                    std::snprintf(buf, sizeof buf, "%ld,%.12e\n", r.id, r.value);
                    plot << buf;
                }
        }
    }

    std::ofstream summary(fs::path(cfg.output_dir) / "summary.txt");
    if (!summary) throw std::runtime_error("emit_report: cannot write summary.txt");
    summary << "fibration-lab run summary\n";
    summary << "map=" << cfg.map.name << " seed=" << cfg.seed << "\n\n";
    bool all_pass = true;
    for (const auto& suite : results) {
        for (const auto& m : suite.metrics) {
            std::snprintf(buf, sizeof buf,
                          "suite=%s metric=%s value=%.6e threshold=%.6e cmp=%s status=%s\n",
                          suite.name.c_str(), m.key.c_str(), m.value, m.threshold,
                          m.upper_bound ? "le" : "ge", m.pass ? "PASS" : "FAIL");
            summary << buf;
            all_pass = all_pass && m.pass;
        }
    }
    summary << "\noverall: " << (all_pass ? "PASS" : "FAIL") << "\n";
}

int run_all(const RunConfig& cfg) {
    const Fibration fib =
        Fibration::create(cfg.map, {cfg.tolerances.solver_tol, cfg.tolerances.solver_max_iter},
                          cfg.samples.certify);
    const std::vector<std::string>& wanted = cfg.suites.empty() ? all_suites() : cfg.suites;
    std::vector<SuiteResult> results;
    for (const auto& name : all_suites())
        if (std::find(wanted.begin(), wanted.end(), name) != wanted.end())
            results.push_back(run_suite(cfg, fib, name));
    emit_report(cfg, results);
    for (const auto& r : results)
        if (!r.passed()) return 1;
    return 0;
}

}  // namespace gcf
