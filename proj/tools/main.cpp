// Command-line surface for the library: every subcommand is a thin wrapper
// over one library operation, with reproducible CSV/JSON output. Floating
// values are printed with 17 significant digits, CSV uses '.' decimals and
// '\n' newlines regardless of locale, JSON keys are snake_case.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrt/qrt.hpp"

namespace {

class io_failure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(unsigned v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

void write_out(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_failure("cannot open output path: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_failure("write failed: " + path);
}

// Minimal JSON emitter for the flat objects the subcommands produce.
class JsonObject {
  public:
    void field(const std::string& key, double v) { raw(key, fmt(v)); }
    void field(const std::string& key, int v) { raw(key, fmt(v)); }
    void field(const std::string& key, unsigned v) { raw(key, fmt(v)); }
    void field(const std::string& key, std::size_t v) { raw(key, fmt(v)); }
    void field(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
    void field(const std::string& key, const std::string& v) { raw(key, quote(v)); }
    void field_null(const std::string& key) { raw(key, "null"); }
    void field_array(const std::string& key, const std::vector<double>& vals) {
        std::string body = "[";
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) body += ",";
            body += fmt(vals[i]);
        }
        body += "]";
        raw(key, body);
    }

    std::string str() const { return "{" + body_ + "}\n"; }

  private:
    static std::string quote(const std::string& s) {
        std::string out = "\"";
        for (const char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        out += '"';
        return out;
    }
    void raw(const std::string& key, const std::string& value) {
        if (!body_.empty()) body_ += ",";
        body_ += quote(key) + ":" + value;
    }
    std::string body_;
};

const char* status_name(qrt::PeriodStatus s) {
    switch (s) {
        case qrt::PeriodStatus::Feasible: return "feasible";
        case qrt::PeriodStatus::Infeasible: return "infeasible";
        case qrt::PeriodStatus::SpecialSeven: return "special-seven";
    }
    return "?";
}

int run(int argc, char** argv) {
    CLI::App app{"QRT map toolkit: invariant cubics, rotation numbers, periods"};
    app.require_subcommand(1);
    std::string out_path;

    // fixed-point
    double fp_d = 0.0;
    auto* fixed_point = app.add_subcommand("fixed-point", "Equilibrium coordinate and minimum level");
    fixed_point->add_option("--d", fp_d, "system parameter (> 0)")->required();
    fixed_point->add_option("--out", out_path, "output path (default stdout)");

    // orbit
    double orb_d = 0.0, orb_x = 0.0, orb_y = 0.0, orb_tol = 1e-8;
    std::size_t orb_n = 0;
    std::string orb_format = "csv";
    auto* orbit = app.add_subcommand("orbit", "Iterate the map and record invariant drift");
    orbit->add_option("--d", orb_d)->required();
    orbit->add_option("--x", orb_x, "start abscissa")->required();
    orbit->add_option("--y", orb_y, "start ordinate")->required();
    orbit->add_option("--n", orb_n, "iterate count")->required();
    orbit->add_option("--tol", orb_tol, "drift tolerance (default 1e-8)");
    orbit->add_option("--format", orb_format)->check(CLI::IsMember({"csv", "json"}));
    orbit->add_option("--out", out_path);

    // rotation
    double rot_d = 0.0, rot_k = 0.0;
    auto* rotation = app.add_subcommand("rotation", "Rotation number at one level");
    rotation->add_option("--d", rot_d)->required();
    rotation->add_option("--k", rot_k, "level (> minimum)")->required();
    rotation->add_option("--out", out_path);

    // rotation-sweep
    double sw_d = 0.0, sw_from = 0.0, sw_to = 0.0;
    std::size_t sw_grid = 0;
    auto* sweep = app.add_subcommand("rotation-sweep", "Rotation data on a level grid (CSV)");
    sweep->add_option("--d", sw_d)->required();
    sweep->add_option("--k-from", sw_from)->required();
    sweep->add_option("--k-to", sw_to)->required();
    sweep->add_option("--grid", sw_grid, "number of levels")->required();
    sweep->add_option("--out", out_path);

    // find-k
    double fk_d = 0.0, fk_kmax = 1e6;
    long fk_p = 0, fk_q = 0;
    auto* findk = app.add_subcommand("find-k", "Levels whose rotation number is p/q");
    findk->add_option("--d", fk_d)->required();
    findk->add_option("--p", fk_p, "target numerator")->required();
    findk->add_option("--q", fk_q, "target denominator")->required();
    findk->add_option("--kmax", fk_kmax, "search ceiling (default 1e6)");
    findk->add_option("--out", out_path);

    // period-table
    std::string pt_format = "csv";
    auto* table = app.add_subcommand("period-table", "Minimal-period classification for q in [2,10]");
    table->add_option("--format", pt_format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--out", out_path);

    // period-check
    double pc_d = 0.0, pc_k = 0.0, pc_tol = 1e-9;
    unsigned pc_q = 0;
    auto* pcheck = app.add_subcommand("period-check", "Is the level q-periodic?");
    pcheck->add_option("--d", pc_d)->required();
    pcheck->add_option("--k", pc_k)->required();
    pcheck->add_option("--q", pc_q)->required();
    pcheck->add_option("--tol", pc_tol, "certificate tolerance (default 1e-9)");
    pcheck->add_option("--out", out_path);

    // seven-locus
    double sl_d = 0.0;
    auto* locus = app.add_subcommand("seven-locus", "The unique seven-periodic level K(d)");
    locus->add_option("--d", sl_d)->required();
    locus->add_option("--out", out_path);

    // f-scan
    unsigned fs_from = 0, fs_to = 0;
    auto* fscan = app.add_subcommand("f-scan", "Prime-reserve bound over a range of q (CSV)");
    fscan->add_option("--from", fs_from, "first q (>= 52)")->required();
    fscan->add_option("--to", fs_to, "last q")->required();
    fscan->add_option("--out", out_path);

    // covering-chain
    unsigned cc_start = 0;
    auto* chain = app.add_subcommand("covering-chain", "Descending certified intervals (r,p,x lines)");
    chain->add_option("--start", cc_start, "top of the first interval (>= 30)")->required();
    chain->add_option("--out", out_path);

    // estimate-n
    double en_d = 0.0;
    unsigned en_qmax = 2000;
    auto* estn = app.add_subcommand("estimate-n", "Onset bound for guaranteed minimal periods");
    estn->add_option("--d", en_d)->required();
    estn->add_option("--qmax", en_qmax, "scan ceiling (default 2000)");
    estn->add_option("--out", out_path);

    // verify-appendix
    std::uint64_t va_seed = 0;
    int va_trials = 100;
    auto* verify = app.add_subcommand("verify-appendix",
                                      "Exact certificate of the chord-tangent shift identity");
    verify->add_option("--seed", va_seed, "RNG seed (required for reproducibility)")->required();
    verify->add_option("--trials", va_trials, "number of sampled configurations (default 100)");
    verify->add_option("--out", out_path);

    // sensitivity
    double se_d = 0.0, se_x = 0.0, se_y = 0.0, se_radius = 0.0, se_delta = 0.0;
    std::size_t se_n = 0;
    auto* sens = app.add_subcommand("sensitivity", "Two-orbit separation experiment (CSV)");
    sens->add_option("--d", se_d)->required();
    sens->add_option("--x", se_x)->required();
    sens->add_option("--y", se_y)->required();
    sens->add_option("--radius", se_radius, "transversal offset")->required();
    sens->add_option("--delta", se_delta, "separation threshold")->required();
    sens->add_option("--n", se_n, "iterate count")->required();
    sens->add_option("--out", out_path);

    // prop5
    auto* prop5 = app.add_subcommand(
        "prop5", "Root of the order-three symmetry condition u3*v3^2 - v3 - d = 0");
    prop5->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic and usage hint
        return 64;
    }

    std::string payload;

    if (*fixed_point) {
        qrt::QrtMap m(fp_d);
        JsonObject j;
        j.field("d", fp_d);
        j.field("ell", m.fixed_point());
        j.field("k_min", m.invariant_minimum());
        payload = j.str();
    } else if (*orbit) {
        qrt::QrtMap m(orb_d);
        const qrt::Orbit o = m.orbit({orb_x, orb_y}, orb_n, orb_tol);
        if (orb_format == "csv") {
            std::string csv = "n,u,v,G_drift\n";
            for (std::size_t k = 0; k < o.points.size(); ++k)
                csv += fmt(k) + "," + fmt(o.points[k].x) + "," + fmt(o.points[k].y) + "," +
                       fmt(o.drift[k]) + "\n";
            payload = csv;
        } else {
            std::string rows;
            for (std::size_t k = 0; k < o.points.size(); ++k) {
                if (k) rows += ",";
                rows += "{\"n\":" + fmt(k) + ",\"u\":" + fmt(o.points[k].x) +
                        ",\"v\":" + fmt(o.points[k].y) + ",\"g_drift\":" + fmt(o.drift[k]) + "}";
            }
            payload = "{\"d\":" + fmt(orb_d) + ",\"level\":" + fmt(o.level) +
                      ",\"max_drift\":" + fmt(o.max_drift) + ",\"points\":[" + rows + "]}\n";
        }
    } else if (*rotation) {
        const qrt::RotationResult r = qrt::rotation_number(rot_d, rot_k);
        const qrt::WeierstrassMap phi{qrt::CubicCurve(rot_d, rot_k)};
        JsonObject j;
        j.field("d", rot_d);
        j.field("k", rot_k);
        j.field("theta", r.theta);
        j.field("numerator_integral", r.numerator_integral);
        j.field("denominator_integral", r.denominator_integral);
        j.field("eps", r.eps);
        j.field("nu", phi.data().nu);
        j.field("u_limit", r.u_limit);
        payload = j.str();
    } else if (*sweep) {
        if (sw_grid < 2) throw qrt::domain_error("rotation-sweep: need at least 2 grid points");
        std::string csv = "K,theta,eps,nu,e1,e2,e3\n";
        for (std::size_t i = 0; i < sw_grid; ++i) {
            const double K = sw_from + (sw_to - sw_from) * static_cast<double>(i) /
                                           static_cast<double>(sw_grid - 1);
            const qrt::RotationResult r = qrt::rotation_number(sw_d, K);
            const qrt::WeierstrassMap phi{qrt::CubicCurve(sw_d, K)};
            const qrt::WeierstrassData& w = phi.data();
            csv += fmt(K) + "," + fmt(r.theta) + "," + fmt(w.eps) + "," + fmt(w.nu) + "," +
                   fmt(w.e1) + "," + fmt(w.e2) + "," + fmt(w.e3) + "\n";
        }
        payload = csv;
    } else if (*findk) {
        const std::vector<double> levels = qrt::levels_for_rotation(fk_d, fk_p, fk_q, fk_kmax);
        JsonObject j;
        j.field("d", fk_d);
        j.field("p", static_cast<int>(fk_p));
        j.field("q", static_cast<int>(fk_q));
        j.field("target", static_cast<double>(fk_p) / static_cast<double>(fk_q));
        j.field("kmax", fk_kmax);
        j.field_array("levels", levels);
        payload = j.str();
    } else if (*table) {
        const auto rows = qrt::period_table();
        if (pt_format == "csv") {
            std::string csv = "q,minimal_period,status,numerators\n";
            for (const auto& row : rows) {
                std::string nums;
                for (std::size_t i = 0; i < row.numerators.size(); ++i) {
                    if (i) nums += ";";
                    nums += fmt(row.numerators[i]);
                }
                csv += fmt(row.q) + "," + (row.minimal_period ? "true" : "false") + "," +
                       status_name(row.status) + "," + nums + "\n";
            }
            payload = csv;
        } else {
            std::string body;
            for (const auto& row : rows) {
                if (!body.empty()) body += ",";
                std::string nums;
                for (std::size_t i = 0; i < row.numerators.size(); ++i) {
                    if (i) nums += ",";
                    nums += fmt(row.numerators[i]);
                }
                body += "{\"q\":" + fmt(row.q) +
                        ",\"minimal_period\":" + (row.minimal_period ? "true" : "false") +
                        ",\"status\":\"" + status_name(row.status) + "\",\"numerators\":[" +
                        nums + "]}";
            }
            payload = "{\"rows\":[" + body + "]}\n";
        }
    } else if (*pcheck) {
        const qrt::CubicCurve c(pc_d, pc_k);
        const qrt::PeriodCheck r = qrt::is_periodic_level(c, pc_q, pc_tol);
        JsonObject j;
        j.field("d", pc_d);
        j.field("k", pc_k);
        j.field("q", pc_q);
        j.field("tol", pc_tol);
        j.field("periodic", r.periodic);
        j.field("orbit_residual", r.orbit_residual);
        j.field("rotation_defect", r.rotation_defect);
        payload = j.str();
    } else if (*locus) {
        const double K = qrt::seven_period_level(sl_d);
        JsonObject j;
        j.field("d", sl_d);
        j.field("k", K);
        j.field("k_min", qrt::QrtMap(sl_d).invariant_minimum());
        payload = j.str();
    } else if (*fscan) {
        if (fs_from > fs_to) throw qrt::domain_error("f-scan: empty range");
        std::string csv = "q,f\n";
        for (unsigned q = fs_from; q <= fs_to; ++q)
            csv += fmt(q) + "," + fmt(qrt::prime_reserve(q)) + "\n";
        payload = csv;
    } else if (*chain) {
        std::string csv;
        for (const auto& link : qrt::covering_chain(cc_start))
            csv += fmt(link.r) + "," + fmt(link.p) + "," + fmt(link.x) + "\n";
        payload = csv;
    } else if (*estn) {
        const unsigned onset = qrt::estimate_min_period_onset(en_d, en_qmax);
        const double tm = qrt::rotation_number_at_minimum(en_d);
        JsonObject j;
        j.field("d", en_d);
        j.field("qmax", en_qmax);
        j.field("a", std::min(3.0 / 7.0, tm));
        j.field("b", std::max(3.0 / 7.0, tm));
        j.field("n_hat", onset);
        payload = j.str();
    } else if (*verify) {
        const qrt::CertificateReport rep = qrt::isomorphism_certificate(va_seed, va_trials);
        JsonObject j;
        j.field("seed", rep.seed);
        j.field("trials", rep.trials);
        j.field("passes", rep.passes);
        j.field("resamples", rep.resamples);
        j.field("skips", rep.skips);
        j.field("all_passed", rep.all_passed);
        if (rep.counterexample)
            j.field("counterexample", *rep.counterexample);
        else
            j.field_null("counterexample");
        payload = j.str();
    } else if (*sens) {
        // Validates the configuration (level separation, rotation numbers).
        (void)qrt::separation_experiment(se_d, {se_x, se_y}, se_radius, se_delta, se_n);
        qrt::QrtMap m(se_d);
        qrt::PlanePoint a{se_x, se_y};
        qrt::PlanePoint b = qrt::transversal_offset(se_d, a, se_radius);
        std::string csv = "n,dist,separated\n";
        for (std::size_t k = 1; k <= se_n; ++k) {
            a = m.apply(a);
            b = m.apply(b);
            const double dist = qrt::distance(a, b);
            csv += fmt(k) + "," + fmt(dist) + "," + (dist >= se_delta ? "1" : "0") + "\n";
        }
        payload = csv;
    } else if (*prop5) {
        const double dstar = qrt::seven_period_global_obstruction();
        const qrt::CriticalParameter cp = qrt::critical_parameter();
        JsonObject j;
        j.field("d_star", dstar);
        j.field("d0", cp.d0);
        j.field("gap", std::abs(dstar - cp.d0));
        payload = j.str();
    }

    write_out(out_path, payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qrt::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const qrt::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const io_failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 74;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
