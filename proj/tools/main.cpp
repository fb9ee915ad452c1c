// lamespiral: identity verification, numeric tables, paired-motion and
// central-force trajectories, and SVG figures for the sinusoidal spiral /
// Lame curve / policle families.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamespiral/curves.hpp"
#include "lamespiral/dynamics.hpp"
#include "lamespiral/quadrature.hpp"
#include "lamespiral/relations.hpp"
#include "lamespiral/specfun.hpp"

#include "svg.hpp"

using namespace lamespiral;
using curves::CurveFamily;
using nlohmann::json;
namespace quad = lamespiral::quadrature;
namespace rel = lamespiral::relations;
namespace dyn = lamespiral::dynamics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitNumericFailure = 2;
constexpr int kExitUsage = 64;

struct RunConfig {
    std::string command;
    double n = 2.0;
    double tol = 1e-9;
    bool tol_given = false;
    int samples = 64;
    std::string format = "json";
    std::string out_path;
    double alpha = -1.0;  // command-dependent default
    std::string mode = "dual";
    std::string figure;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------- verify ---

std::vector<rel::RelationReport> run_verify_suite(const RunConfig& cfg) {
    const CurveFamily fam(cfg.n);
    const double tol = cfg.tol;
    using Job = std::function<rel::RelationReport()>;
    std::vector<Job> jobs;

    auto labeled = [](std::string name, rel::RelationReport rep) {
        rep.name = std::move(name);
        return rep;
    };

    jobs.push_back([=] { return labeled("fundamental", rel::verify_fundamental(fam, {}, tol)); });
    for (int k = 0; k <= 20; ++k) {
        const double t = k / 20.0;
        char name[48];
        std::snprintf(name, sizeof(name), "siegel T=%.2f", t);
        jobs.push_back([=, nm = std::string(name)] {
            return labeled(nm, rel::verify_siegel(fam, t, {}, tol));
        });
    }
    for (int i = 0; i < 10; ++i) {
        const double a = (M_PI / 4.0) * i / 9.0;
        char name[48];
        std::snprintf(name, sizeof(name), "sector-arc alpha=%.4f", a);
        jobs.push_back([=, nm = std::string(name)] {
            return labeled(nm, rel::verify_sector_arc(fam, a, {}, tol));
        });
    }
    const curves::Superellipse ses[] = {
        {2.0, 2.0, 3.0}, {4.0, 1.0, 1.0}, {6.0, 0.5, 2.0}, {3.0, 1.2, 0.7}};
    for (const auto& se : ses) {
        char name[72];
        std::snprintf(name, sizeof(name), "superellipse alpha_exp=%g a=%g b=%g", se.alpha_exp,
                      se.a, se.b);
        jobs.push_back([=, nm = std::string(name)] {
            return labeled(nm, rel::verify_superellipse_area(se, {}, tol));
        });
    }
    for (int j = 1; j <= 8; ++j) {
        const double a = (M_PI / (2.0 * cfg.n)) * j / 8.0;
        char name[48];
        std::snprintf(name, sizeof(name), "policle alpha=%.4f", a);
        jobs.push_back([=, nm = std::string(name)] {
            return labeled(nm, rel::verify_policle(fam, a, {}, tol));
        });
    }

    // fan out, then impose a deterministic order regardless of scheduling
    std::vector<std::future<rel::RelationReport>> futures;
    futures.reserve(jobs.size());
    for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
    std::vector<rel::RelationReport> reports;
    reports.reserve(futures.size());
    for (auto& f : futures) reports.push_back(f.get());
    std::sort(reports.begin(), reports.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return reports;
}

void emit_reports(std::ostream& os, const std::vector<rel::RelationReport>& reports,
                  const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reports) {
            arr.push_back({{"name", r.name},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"abs_err", r.abs_err},
                           {"rel_err", r.rel_err},
                           {"tol", r.tol},
                           {"pass", r.pass}});
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "name,lhs,rhs,abs_err,rel_err,tol,pass\n";
        for (const auto& r : reports) {
            os << '"' << r.name << "\"," << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ','
               << fmt17(r.abs_err) << ',' << fmt17(r.rel_err) << ',' << fmt17(r.tol) << ','
               << (r.pass ? "true" : "false") << "\n";
        }
    }
}

int cmd_verify(const RunConfig& cfg) {
    const auto reports = run_verify_suite(cfg);
    OutputStream out(cfg.out_path);
    emit_reports(out.get(), reports, cfg.format);
    const bool all_pass =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    return all_pass ? kExitOk : kExitIdentityFailure;
}

// ----------------------------------------------------------------- table ---

int cmd_table(const RunConfig& cfg) {
    const CurveFamily fam(cfg.n);
    const double span = M_PI / (2.0 * cfg.n);
    struct Row {
        double theta, spiral_r, lame_r, policle_r;
    };
    std::vector<Row> rows;
    rows.reserve(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i) {
        const double theta = span * i / (cfg.samples - 1);
        rows.push_back(Row{theta, curves::spiral_radius(fam, theta),
                           curves::lame_polar_radius(fam, theta),
                           curves::policle_radius(fam, theta)});
    }
    OutputStream out(cfg.out_path);
    std::ostream& os = out.get();
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"theta", r.theta},
                           {"spiral_r", r.spiral_r},
                           {"lame_r", r.lame_r},
                           {"policle_r", r.policle_r}});
        os << arr.dump(2) << "\n";
    } else {
        os << "theta,spiral_r,lame_r,policle_r\n";
        for (const auto& r : rows)
            os << fmt17(r.theta) << ',' << fmt17(r.spiral_r) << ',' << fmt17(r.lame_r) << ','
               << fmt17(r.policle_r) << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- simulate ---

int cmd_simulate(const RunConfig& cfg) {
    const CurveFamily fam(cfg.n);
    const auto fp = dyn::ForceParams::for_lame_orbit(
        fam, 1.0, 1.0);  // unit mass and angular momentum; C = 2n-1
    OutputStream out(cfg.out_path);
    std::ostream& os = out.get();

    if (cfg.mode == "dual") {
        const dyn::KeplerLameMotion motion(fam, fp);
        const int two_n = 2 * static_cast<int>(std::llround(cfg.n));
        const double t_end = std::lcm(8, two_n) * motion.octant_time();
        const auto frames = dyn::dual_motion(fam, fp, t_end, cfg.samples);
        if (cfg.format == "json") {
            json arr = json::array();
            for (const auto& f : frames) {
                arr.push_back({{"t", f.time},
                               {"lame_x", f.lame_point.r * std::cos(f.lame_point.theta)},
                               {"lame_y", f.lame_point.r * std::sin(f.lame_point.theta)},
                               {"spiral_x", f.spiral_point.r * std::cos(f.spiral_point.theta)},
                               {"spiral_y", f.spiral_point.r * std::sin(f.spiral_point.theta)},
                               {"swept_area", f.swept_area},
                               {"traversed_length", f.traversed_length}});
            }
            os << arr.dump(2) << "\n";
        } else {
            os << "t,lame_x,lame_y,spiral_x,spiral_y,swept_area,traversed_length\n";
            for (const auto& f : frames)
                os << fmt17(f.time) << ','
                   << fmt17(f.lame_point.r * std::cos(f.lame_point.theta)) << ','
                   << fmt17(f.lame_point.r * std::sin(f.lame_point.theta)) << ','
                   << fmt17(f.spiral_point.r * std::cos(f.spiral_point.theta)) << ','
                   << fmt17(f.spiral_point.r * std::sin(f.spiral_point.theta)) << ','
                   << fmt17(f.swept_area) << ',' << fmt17(f.traversed_length) << "\n";
        }
        return kExitOk;
    }

    // force mode: Newtonian trajectory over one revolution with conservation columns
    const double area_total = 4.0 * quad::lame_quadrant_area(fam);
    const double t_end = 2.0 * area_total / fp.angular_momentum;
    const double rel_tol = cfg.tol_given ? cfg.tol : 1e-12;
    const auto traj = dyn::simulate_central_force(fam, fp, t_end, rel_tol);
    const double h = fp.angular_momentum;
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& st : traj) {
            const double am = st.position.x * st.vy - st.position.y * st.vx;
            arr.push_back({{"t", st.time},
                           {"x", st.position.x},
                           {"y", st.position.y},
                           {"vx", st.vx},
                           {"vy", st.vy},
                           {"curve_residual", curves::lame_implicit(fam, st.position)},
                           {"angmom_rel_err", std::fabs(am - h) / h}});
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "t,x,y,vx,vy,curve_residual,angmom_rel_err\n";
        for (const auto& st : traj) {
            const double am = st.position.x * st.vy - st.position.y * st.vx;
            os << fmt17(st.time) << ',' << fmt17(st.position.x) << ',' << fmt17(st.position.y)
               << ',' << fmt17(st.vx) << ',' << fmt17(st.vy) << ','
               << fmt17(curves::lame_implicit(fam, st.position)) << ','
               << fmt17(std::fabs(am - h) / h) << "\n";
        }
    }
    return kExitOk;
}

// -------------------------------------------------------------- schedule ---

int cmd_schedule(const RunConfig& cfg) {
    const auto pairs = dyn::cycle_schedule(CurveFamily(cfg.n));
    OutputStream out(cfg.out_path);
    std::ostream& os = out.get();
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& p : pairs)
            arr.push_back({{"p", p.octant_index}, {"q", p.halfleaf_index}});
        os << arr.dump(2) << "\n";
    } else {
        os << "p,q\n";
        for (const auto& p : pairs) os << p.octant_index << ',' << p.halfleaf_index << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- render ---

svg::PointList spiral_clover_points(const CurveFamily& fam, int per_leaf) {
    // each leaf runs tip -> center -> tip; the tips are forced to the origin
    // so the closed outline starts and ends at exactly the same point
    const int n_leaves = static_cast<int>(std::llround(fam.n));
    svg::PointList pts;
    pts.reserve(static_cast<size_t>(n_leaves) * (per_leaf + 1));
    for (int leaf = 0; leaf < n_leaves; ++leaf) {
        const double center = 2.0 * M_PI * leaf / fam.n;
        for (int j = 0; j <= per_leaf; ++j) {
            const double rel = (static_cast<double>(j) / per_leaf - 0.5) * M_PI / fam.n;
            const double r =
                (j == 0 || j == per_leaf) ? 0.0 : curves::spiral_radius(fam, rel);
            pts.emplace_back(r * std::cos(center + rel), r * std::sin(center + rel));
        }
    }
    return pts;
}

svg::PointList polar_loop_points(const std::function<double(double)>& radius, int count) {
    svg::PointList pts;
    pts.reserve(count + 1);
    for (int i = 0; i <= count; ++i) {
        const double theta = 2.0 * M_PI * i / count;
        const double r = radius(theta);
        pts.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    pts.back() = pts.front();
    return pts;
}

int cmd_render(const RunConfig& cfg) {
    const CurveFamily fam(cfg.n);
    const int pts = std::max(256, cfg.samples);
    OutputStream out(cfg.out_path);
    svg::Writer w(out.get());
    w.axes();

    if (cfg.figure == "spiral") {
        w.polyline(spiral_clover_points(fam, pts), "#1f4f9f", 0.012, "spiral-outline");
        return kExitOk;
    }

    if (cfg.figure == "relation") {
        const double alpha = (cfg.alpha >= 0.0) ? cfg.alpha : M_PI / 8.0;
        const auto st = rel::sector_to_arc(fam, alpha);
        // Lame curve and shaded radial sector [0, alpha]
        w.polyline(polar_loop_points(
                       [&](double th) { return curves::lame_polar_radius(fam, th); }, pts),
                   "#9f2f2f", 0.012, "lame-outline");
        svg::PointList sector;
        sector.emplace_back(0.0, 0.0);
        for (int i = 0; i <= 64; ++i) {
            const double th = alpha * i / 64.0;
            const double r = curves::lame_polar_radius(fam, th);
            sector.emplace_back(r * std::cos(th), r * std::sin(th));
        }
        w.filled_path(sector, "#9f2f2f", 0.25, "sector-fill");
        // spiral principal leaf, with the corresponding arc [beta, pi/(2n)] highlighted
        w.polyline(spiral_clover_points(fam, pts), "#1f4f9f", 0.008, "spiral-outline");
        svg::PointList arc;
        const double upper = M_PI / (2.0 * fam.n);
        for (int i = 0; i <= 128; ++i) {
            const double th = st.beta + (upper - st.beta) * i / 128.0;
            const double r = (i == 128) ? 0.0 : curves::spiral_radius(fam, th);
            arc.emplace_back(r * std::cos(th), r * std::sin(th));
        }
        w.polyline(arc, "#1f4f9f", 0.025, "arc-highlight");
        w.line(0.0, 0.0, 1.3 * std::cos(alpha), 1.3 * std::sin(alpha), "#777777", 0.006);
        return kExitOk;
    }

    if (cfg.figure == "policle") {
        const double alpha = (cfg.alpha >= 0.0) ? cfg.alpha : M_PI / (4.0 * fam.n);
        w.polyline(polar_loop_points(
                       [&](double th) { return curves::policle_radius(fam, th); }, pts),
                   "#2f7f3f", 0.012, "policle-outline");
        w.polyline(spiral_clover_points(fam, pts), "#1f4f9f", 0.008, "spiral-outline");
        // the projection construction: B on the spiral, B' above it on the
        // policle, C at radius OB^n on the spiral, P = (1, 0)
        const double rb = curves::spiral_radius(fam, alpha);
        const double rbp = curves::policle_radius(fam, alpha);
        const double r2 = std::pow(rb, fam.n);
        const double beta = curves::spiral_theta_from_radius(fam, r2);
        w.line(0.0, 0.0, 1.1 * rbp * std::cos(alpha), 1.1 * rbp * std::sin(alpha), "#777777",
               0.006);
        w.dot(rb * std::cos(alpha), rb * std::sin(alpha), 0.022, "#1f4f9f");
        w.label(rb * std::cos(alpha) + 0.04, rb * std::sin(alpha), "B");
        w.dot(rbp * std::cos(alpha), rbp * std::sin(alpha), 0.022, "#2f7f3f");
        w.label(rbp * std::cos(alpha) + 0.04, rbp * std::sin(alpha), "B'");
        w.dot(r2 * std::cos(beta), r2 * std::sin(beta), 0.022, "#9f2f2f");
        w.label(r2 * std::cos(beta) + 0.04, r2 * std::sin(beta) - 0.06, "C");
        w.dot(1.0, 0.0, 0.022, "#333333");
        w.label(1.04, -0.08, "P");
        return kExitOk;
    }

    std::cerr << "render: unknown figure '" << cfg.figure << "'\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"curve-family toolkit: sinusoidal spirals, Lame curves and policles"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub, bool need_integer_n) {
        sub->add_option("--n", cfg.n, "exponent parameter of the curve family")
            ->required()
            ->check(CLI::PositiveNumber);
        if (need_integer_n) {
            sub->final_callback([&cfg, sub] {
                if (cfg.n != std::round(cfg.n))
                    throw CLI::ValidationError(sub->get_name(), "--n must be a positive integer");
            });
        }
        sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--samples", cfg.samples, "sample/frame count")
            ->check(CLI::Range(2, 1 << 20));
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
    };

    auto* verify = app.add_subcommand("verify", "run the identity suite for one family");
    add_common(verify, false);

    auto* table = app.add_subcommand("table", "radii of all three curves over one sector");
    add_common(table, false);

    auto* simulate = app.add_subcommand("simulate", "paired-motion frames or a force orbit");
    add_common(simulate, true);
    simulate->add_option("--mode", cfg.mode, "dual (paired motions) or force (Newtonian)")
        ->check(CLI::IsMember({"dual", "force"}));

    auto* schedule = app.add_subcommand("schedule", "octant/half-leaf pairing cycle");
    add_common(schedule, true);

    auto* render = app.add_subcommand("render", "standalone SVG figure");
    add_common(render, true);
    render->add_option("--figure", cfg.figure, "spiral, relation or policle")
        ->required()
        ->check(CLI::IsMember({"spiral", "relation", "policle"}));
    render->add_option("--alpha", cfg.alpha, "sector angle for the construction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    cfg.tol_given = simulate->count("--tol") > 0;

    try {
        if (verify->parsed()) return cmd_verify(cfg);
        if (table->parsed()) return cmd_table(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (schedule->parsed()) return cmd_schedule(cfg);
        if (render->parsed()) return cmd_render(cfg);
    } catch (const quad::ConvergenceError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const quad::EvaluationError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const quad::ConsistencyError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const dyn::SimulationError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFailure;
    }
    return kExitUsage;
}
