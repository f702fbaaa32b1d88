#include "cli.hpp"

#include "lane_emden/asymptotics.hpp"
#include "lane_emden/degeneracy.hpp"
#include "lane_emden/parallel.hpp"
#include "lane_emden/perturbed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lane_emden::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : os_(path) {
        if (!os_) throw std::runtime_error("cannot write " + path.string());
        cells(header);
    }
    void cells(const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) os_ << (i ? "," : "") << row[i];
        os_ << '\n';
    }
    void row(const std::vector<double>& values) {
        std::vector<std::string> c;
        for (double v : values) c.push_back(num(v));
        cells(c);
    }

private:
    std::ofstream os_;
};

// Two-column data for external plotting.
void write_dat(const fs::path& path, const std::vector<double>& x, const std::vector<double>& y) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < x.size(); ++i) os << num(x[i]) << ' ' << num(y[i]) << '\n';
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << j.dump(2) << '\n';
}

// Flag storage. Unset optionals fall back to the config file, then to defaults.
struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::optional<int> threads, grid, pencil;
    std::optional<double> a, b, p, t, p_min, p_max;
    std::optional<int> N, m, L, j_max, samples, steps, n_r, n_theta;
    std::optional<std::string> method;
    std::vector<double> p_list, large_p_list;
    std::vector<std::string> inner, outer;
    CLI::Option *p_list_opt = nullptr, *large_p_list_opt = nullptr, *inner_opt = nullptr,
                *outer_opt = nullptr, *refine_opt = nullptr;
};

class Params {
public:
    explicit Params(json cfg) : cfg_(std::move(cfg)) {}

    template <class T>
    T get(const std::optional<T>& flag, const std::string& key, T fallback) {
        T v = fallback;
        if (flag) v = *flag;
        else if (cfg_.contains(key)) v = from_config<T>(key);
        resolved_[key] = v;
        return v;
    }

    std::vector<double> list(const CLI::Option* opt, const std::vector<double>& flag,
                             const std::string& key, std::vector<double> fallback) {
        auto v = std::move(fallback);
        if (opt && opt->count() > 0) v = flag;
        else if (cfg_.contains(key)) v = from_config<std::vector<double>>(key);
        resolved_[key] = v;
        return v;
    }

    bool flag(const CLI::Option* opt, const std::string& key) {
        bool v = false;
        if (opt && opt->count() > 0) v = true;
        else if (cfg_.contains(key)) v = from_config<bool>(key);
        resolved_[key] = v;
        return v;
    }

    std::vector<perturbed::TrigMode> modes(const CLI::Option* opt,
                                           const std::vector<std::string>& flag,
                                           const std::string& key) {
        std::vector<perturbed::TrigMode> v;
        if (opt && opt->count() > 0) {
            for (const auto& s : flag) {
                perturbed::TrigMode md;
                char c1 = 0, c2 = 0;
                std::istringstream is(s);
                if (!(is >> md.k >> c1 >> md.c >> c2 >> md.d) || c1 != ':' || c2 != ':')
                    throw Error(ErrorKind::InvalidInput, "mode '" + s + "' is not of the form k:c:d");
                v.push_back(md);
            }
        } else if (cfg_.contains(key)) {
            for (const auto& row : from_config<std::vector<std::vector<double>>>(key)) {
                require(row.size() == 3, "config key '" + key + "' expects [k, c, d] triples");
                require(row[0] >= 0 && row[0] == std::floor(row[0]),
                        "mode order k must be a nonnegative integer");
                v.push_back({static_cast<int>(row[0]), row[1], row[2]});
            }
        }
        json arr = json::array();
        for (const auto& md : v) arr.push_back({md.k, md.c, md.d});
        resolved_[key] = arr;
        return v;
    }

    const json& resolved() const { return resolved_; }

private:
    template <class T>
    T from_config(const std::string& key) const {
        try {
            return cfg_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::InvalidInput, "config key '" + key + "': " + e.what());
        }
    }

    json cfg_;
    json resolved_ = json::object();
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::InvalidInput, "cannot open config file " + path);
    try {
        json j = json::parse(is);
        require(j.is_object(), "config file must hold a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, "config file " + path + ": " + e.what());
    }
}

struct Context {
    Params params;
    fs::path out;
    std::string command;
    std::ostream& log;

    fs::path prepare() {
        fs::create_directories(out / "plot");
        return out;
    }
    json sidecar() const {
        json j;
        j["command"] = command;
        j["config"] = params.resolved();
        return j;
    }
};

AnnulusSpec geometry(Context& c, const Flags& f) {
    AnnulusSpec spec{c.params.get(f.a, "a", 1.0), c.params.get(f.b, "b", 2.0),
                     c.params.get(f.N, "N", 2)};
    spec.validate();
    return spec;
}

int zones(Context& c, const Flags& f, int fallback) {
    const int m = c.params.get(f.m, "m", fallback);
    if (m < 1) throw Error(ErrorKind::InvalidInput, "zone count m must be >= 1 (got " + std::to_string(m) + ")");
    return m;
}

degeneracy::SampleOptions sampling(Context& c, const Flags& f) {
    degeneracy::SampleOptions so;
    so.shooting.ivp.grid_intervals = static_cast<std::size_t>(c.params.get(f.grid, "grid", 2048));
    so.intervals = static_cast<std::size_t>(c.params.get(f.pencil, "pencil", 4096));
    so.threads = c.params.get(f.threads, "threads", 1);
    require(so.shooting.ivp.grid_intervals >= 16, "grid must have at least 16 intervals");
    require(so.intervals >= 16, "pencil must have at least 16 intervals");
    return so;
}

void cmd_solve_radial(Context& c, const Flags& f) {
    const auto spec = geometry(c, f);
    const double p = c.params.get(f.p, "p", 3.0);
    validate_exponent(p);
    const int m = zones(c, f, 1);
    const auto method = c.params.get(f.method, "method", std::string("shoot"));
    require(method == "shoot" || method == "nehari", "method must be 'shoot' or 'nehari'");
    const auto so = sampling(c, f);

    radial::RadialProfile prof;
    json extra;
    if (method == "nehari" && m >= 2) {
        radial::NehariOptions no;
        no.shooting = so.shooting;
        auto res = radial::nehari_minimize(spec, p, m, no);
        prof = std::move(res.profile);
        extra["nehari_energy"] = res.energy;
        extra["slope_mismatch"] = res.max_slope_mismatch;
    } else {
        prof = radial::shoot_nodal(spec, p, m, so.shooting);
    }

    const auto dir = c.prepare();
    const double S = prof.sup_norm();
    const bool scaled = !std::isfinite(S);
    {
        Csv csv(dir / "profile.csv", {"r", "v", "dv"});
        for (std::size_t i = 0; i < prof.grid.size(); ++i)
            csv.row({prof.grid[i], scaled ? prof.shape[i] : prof.value(i),
                     scaled ? prof.shape_slopes[i] : prof.slope(i)});
    }
    write_dat(dir / "plot" / "profile.dat", prof.grid, prof.shape);

    json j = c.sidecar();
    j["a"] = spec.a;
    j["b"] = spec.b;
    j["N"] = spec.N;
    j["p"] = p;
    j["m"] = m;
    j["zeros"] = prof.zeros;
    j["sup_norm"] = S;
    j["alpha_star"] = prof.alpha_star();
    j["log_sup_norm"] = prof.log_sup_norm;
    j["values_scaled_by_sup_norm"] = scaled;
    j["ode_residual"] = radial::ode_residual(prof);
    json zs = json::array();
    for (const auto& z : radial::nehari_report(prof).zones)
        zs.push_back({{"lo", z.lo}, {"hi", z.hi}, {"gradient", z.gradient}, {"power", z.power},
                      {"energy", z.energy}, {"nehari_residual", z.nehari_residual},
                      {"flagged", z.flagged}});
    j["zones"] = zs;
    if (!extra.is_null()) j.update(extra);
    write_json(dir / "profile.json", j);
    c.log << "solve-radial: m = " << m << ", " << prof.zeros.size() << " interior zeros, sup norm "
          << S << '\n';
}

void cmd_spectrum(Context& c, const Flags& f) {
    const auto spec = geometry(c, f);
    const int m = zones(c, f, 1);
    const double p0 = c.params.get(f.p, "p", 3.0);
    auto ps = c.params.list(f.p_list_opt, f.p_list, "p_list", {p0});
    for (double p : ps) validate_exponent(p);
    const int L = c.params.get(f.L, "L", m + 1);
    require(L >= 1, "eigenvalue count L must be >= 1");
    const auto so = sampling(c, f);

    struct Sample {
        spectrum::SpectrumSlice slice;
        spectrum::AuxiliaryZeros aux;
    };
    const auto samples = ordered_map<Sample>(ps.size(), so.threads, [&](std::size_t i) {
        const auto prof = radial::shoot_nodal(spec, ps[i], m, so.shooting);
        return Sample{spectrum::compute_spectrum(prof, L, so.intervals),
                      spectrum::auxiliary_diagnostics(prof)};
    });

    const auto dir = c.prepare();
    {
        Csv csv(dir / "spectrum.csv", {"p", "l", "nu"});
        for (const auto& s : samples)
            for (int l = 0; l < L; ++l)
                csv.cells({num(s.slice.p), std::to_string(l + 1), num(s.slice.eigenvalues[l])});
    }
    {
        std::vector<std::string> header{"r"};
        for (int l = 1; l <= L; ++l) header.push_back("phi_" + std::to_string(l));
        Csv csv(dir / "eigenfunctions.csv", header);
        const auto& s = samples.front().slice;
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            std::vector<double> row{s.grid[i]};
            for (int l = 0; l < L; ++l) row.push_back(s.eigenfunctions[l][i]);
            csv.row(row);
        }
        for (int l = 0; l < L; ++l)
            write_dat(dir / "plot" / ("eigenfunction_" + std::to_string(l + 1) + ".dat"), s.grid,
                      s.eigenfunctions[l]);
    }
    for (int l = 0; l < L; ++l) {
        std::vector<double> nu;
        for (const auto& s : samples) nu.push_back(s.slice.eigenvalues[l]);
        write_dat(dir / "plot" / ("nu_" + std::to_string(l + 1) + ".dat"), ps, nu);
    }

    json j = c.sidecar();
    json rows = json::array();
    for (const auto& s : samples)
        rows.push_back({{"p", s.slice.p},
                        {"eigenvalues", s.slice.eigenvalues},
                        {"negative_count", s.slice.negative_count()},
                        {"z_zeros", s.aux.z_zeros},
                        {"zeta_zeros", s.aux.zeta_zeros}});
    j["samples"] = rows;
    write_json(dir / "spectrum.json", j);
    c.log << "spectrum: " << ps.size() << " exponent(s), " << L << " eigenvalues each\n";
}

void cmd_scan_degeneracy(Context& c, const Flags& f) {
    const auto spec = geometry(c, f);
    const int m = zones(c, f, 1);
    const double p_min = c.params.get(f.p_min, "p_min", 1.05);
    const double p_max = c.params.get(f.p_max, "p_max", 20.0);
    const int j_max = c.params.get(f.j_max, "j_max", 3);
    degeneracy::ScanOptions so;
    so.sampling = sampling(c, f);
    so.samples = c.params.get(f.samples, "samples", 64);
    so.refine = c.params.flag(f.refine_opt, "refine");
    require(p_min > 1.0 && p_max > p_min, "p range must satisfy 1 < p_min < p_max");

    const auto res = degeneracy::find_degeneracies(spec, m, p_min, p_max, j_max, so);

    const auto dir = c.prepare();
    {
        Csv csv(dir / "degeneracies.csv", {"k", "p_k", "l", "j", "target", "residual"});
        for (std::size_t k = 0; k < res.points.size(); ++k) {
            const auto& pt = res.points[k];
            csv.cells({std::to_string(k + 1), num(pt.p_k), std::to_string(pt.l),
                       std::to_string(pt.j), num(pt.target), num(pt.residual)});
        }
    }
    {
        std::vector<std::string> header{"p"};
        for (int l = 1; l <= m; ++l) header.push_back("nu_" + std::to_string(l));
        Csv csv(dir / "nu_curves.csv", header);
        for (std::size_t i = 0; i < res.p_grid.size(); ++i) {
            std::vector<double> row{res.p_grid[i]};
            row.insert(row.end(), res.nu[i].begin(), res.nu[i].end());
            csv.row(row);
        }
    }
    for (int l = 0; l < m; ++l) {
        std::vector<double> nu;
        for (const auto& row : res.nu) nu.push_back(row[l]);
        write_dat(dir / "plot" / ("nu_" + std::to_string(l + 1) + ".dat"), res.p_grid, nu);
    }
    {
        std::vector<double> pk, level;
        for (const auto& pt : res.points) {
            pk.push_back(pt.p_k);
            level.push_back(pt.target);
        }
        write_dat(dir / "plot" / "p_k.dat", pk, level);
    }

    json j = c.sidecar();
    json pts = json::array();
    for (const auto& pt : res.points)
        pts.push_back({{"p_k", pt.p_k}, {"l", pt.l}, {"j", pt.j}, {"target", pt.target},
                       {"residual", pt.residual}, {"near_collision", pt.near_collision}});
    j["points"] = pts;
    j["warnings"] = res.warnings;
    j["sign_change_history"] = res.sign_change_history;
    j["stable"] = res.stable;
    j["samples_final"] = res.p_grid.size();
    write_json(dir / "degeneracies.json", j);
    for (const auto& w : res.warnings) c.log << "warning: " << w << '\n';
    c.log << "scan-degeneracy: " << res.points.size() << " degeneracy point(s)\n";
}

void cmd_morse(Context& c, const Flags& f) {
    const auto spec = geometry(c, f);
    const int m = zones(c, f, 1);
    const double p0 = c.params.get(f.p, "p", 3.0);
    auto ps = c.params.list(f.p_list_opt, f.p_list, "p_list", {p0});
    for (double p : ps) validate_exponent(p);
    const auto so = sampling(c, f);

    const auto reports = ordered_map<degeneracy::MorseReport>(
        ps.size(), so.threads, [&](std::size_t i) { return degeneracy::morse_index_at(spec, ps[i], m, so); });

    const auto dir = c.prepare();
    {
        std::vector<std::string> header{"p", "morse_index"};
        for (int l = 1; l <= m; ++l) header.push_back("J_" + std::to_string(l));
        Csv csv(dir / "morse.csv", header);
        for (const auto& r : reports) {
            std::vector<std::string> row{num(r.p), std::to_string(r.morse_index)};
            for (double J : r.J_values) row.push_back(num(J));
            csv.cells(row);
        }
    }
    std::vector<double> idx;
    for (const auto& r : reports) idx.push_back(static_cast<double>(r.morse_index));
    write_dat(dir / "plot" / "morse.dat", ps, idx);

    json j = c.sidecar();
    json rows = json::array();
    for (const auto& r : reports)
        rows.push_back({{"p", r.p}, {"morse_index", r.morse_index}, {"lower_bound", r.lower_bound},
                        {"J", r.J_values}, {"degenerate_boundary", r.degenerate_boundary}});
    j["reports"] = rows;
    write_json(dir / "morse.json", j);
    for (const auto& r : reports)
        c.log << "morse: p = " << r.p << ", index " << r.morse_index << " (lower bound "
              << r.lower_bound << ")" << (r.degenerate_boundary ? ", degenerate boundary" : "")
              << '\n';
}

void cmd_asymptotics(Context& c, const Flags& f) {
    const auto spec = geometry(c, f);
    const int m = zones(c, f, 2);
    const auto ps = c.params.list(f.p_list_opt, f.p_list, "p_list", {1.1, 1.01, 1.001});
    const auto large = c.params.list(f.large_p_list_opt, f.large_p_list, "large_p_list", {2.0, 5.0, 10.0});
    const auto so = sampling(c, f);

    const auto rows = asymptotics::p_to_1_diagnostics(spec, m, ps, so);
    const auto bound = asymptotics::large_p_bound_check(spec, m, large, so);

    const auto dir = c.prepare();
    {
        Csv csv(dir / "asymptotics.csv", {"p", "supnorm_pow", "lambda_m", "err_profile", "nu_m"});
        for (const auto& r : rows) csv.row({r.p, r.supnorm_pow, r.lambda_m, r.err_profile, r.nu_m});
    }
    {
        Csv csv(dir / "large_p.csv", {"p", "nu_m", "bound", "margin"});
        for (const auto& r : bound) csv.row({r.p, r.nu_m, r.bound, r.margin});
    }
    std::vector<double> px, gap, err;
    for (const auto& r : rows) {
        px.push_back(r.p);
        gap.push_back(std::abs(r.supnorm_pow - r.lambda_m));
        err.push_back(r.err_profile);
    }
    write_dat(dir / "plot" / "supnorm_gap.dat", px, gap);
    write_dat(dir / "plot" / "profile_error.dat", px, err);
    std::vector<double> lx, ly;
    for (const auto& r : bound) {
        lx.push_back(r.p);
        ly.push_back(r.margin);
    }
    write_dat(dir / "plot" / "bound_margin.dat", lx, ly);

    json j = c.sidecar();
    j["lambda_m"] = rows.empty() ? asymptotics::laplace_radial_eigen(spec, m, so.intervals).lambda_m
                                 : rows.front().lambda_m;
    json lb = json::array();
    for (const auto& r : bound) lb.push_back({{"p", r.p}, {"holds", r.margin >= 0.0}, {"margin", r.margin}});
    j["large_p_bound"] = lb;
    write_json(dir / "asymptotics.json", j);
    c.log << "asymptotics: " << rows.size() << " near-one rows, " << bound.size() << " large-p rows\n";
}

void cmd_perturb(Context& c, const Flags& f) {
    const double a = c.params.get(f.a, "a", 1.0), b = c.params.get(f.b, "b", 2.0);
    const AnnulusSpec spec{a, b, 2};
    spec.validate();
    const double p = c.params.get(f.p, "p", 3.0);
    validate_exponent(p);
    const int m = zones(c, f, 2);
    const double t = c.params.get(f.t, "t", 0.0);
    perturbed::NewtonOptions no;
    no.steps = c.params.get(f.steps, "steps", 5);
    perturbed::PolarGrid grid{a, b, c.params.get(f.n_r, "n_r", 64), c.params.get(f.n_theta, "n_theta", 64)};
    grid.validate();
    perturbed::DeformationSpec def{c.params.modes(f.inner_opt, f.inner, "inner"),
                                   c.params.modes(f.outer_opt, f.outer, "outer")};
    def.validate();
    const auto so = sampling(c, f);

    const auto prof = radial::shoot_nodal(spec, p, m, so.shooting);
    const auto sol = perturbed::newton_solve(prof, def, grid, t, no);
    const int nodal = perturbed::nodal_count_2d(sol);
    const int morse = perturbed::morse_index_2d(sol);

    const auto dir = c.prepare();
    const double S = std::exp(sol.log_scale);
    const bool scaled = !std::isfinite(S);
    {
        Csv csv(dir / "solution.csv", {"r", "theta", "v"});
        for (int i = 0; i <= grid.n_r; ++i)
            for (int k = 0; k < grid.n_theta; ++k) {
                const double w = sol.w[grid.node(i, k)];
                csv.row({grid.radius(i), grid.angle(k), scaled ? w : S * w});
            }
    }
    std::vector<double> r, slice;
    for (int i = 0; i <= grid.n_r; ++i) {
        r.push_back(grid.radius(i));
        slice.push_back(sol.w[grid.node(i, 0)]);
    }
    write_dat(dir / "plot" / "slice_theta0.dat", r, slice);

    json j = c.sidecar();
    json steps = json::array();
    for (const auto& st : sol.steps)
        steps.push_back({{"t", st.t}, {"iterations", st.iterations}, {"residual", st.residual}});
    j["steps"] = steps;
    j["residual_norm"] = sol.residual_norm;
    j["newton_iterations"] = sol.newton_iterations;
    j["morse_index"] = morse;
    j["nodal_count"] = nodal;
    j["safety_bound"] = sol.safety_bound;
    j["min_det_J"] = sol.jacobian.min_det;
    j["sup_norm_radial"] = S;
    j["values_scaled_by_sup_norm"] = scaled;
    write_json(dir / "run.json", j);
    c.log << "perturb: t = " << t << ", nodal regions " << nodal << ", Morse index " << morse
          << ", residual " << sol.residual_norm << '\n';
}

void add_geometry(CLI::App* sub, Flags& f, bool with_N = true) {
    sub->add_option("--a", f.a, "inner radius");
    sub->add_option("--b", f.b, "outer radius");
    if (with_N) sub->add_option("--N", f.N, "space dimension");
    sub->add_option("--m", f.m, "number of nodal zones");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial nodal solutions of the Lane-Emden equation on annuli", "lane-emden"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config, "JSON config file; flags override its values");
    app.add_option("--out", f.out, "output directory (default: $LANE_EMDEN_OUT or ./out)");
    app.add_option("--threads", f.threads, "worker threads for independent p samples");
    app.add_option("--grid", f.grid, "radial profile grid intervals");
    app.add_option("--pencil", f.pencil, "eigenvalue pencil grid intervals");

    auto* solve = app.add_subcommand("solve-radial", "radial m-zone solution");
    add_geometry(solve, f);
    solve->add_option("--p", f.p, "exponent p > 1");
    solve->add_option("--method", f.method, "shoot (default) or nehari");

    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of the radial linearization");
    add_geometry(spec_cmd, f);
    spec_cmd->add_option("--p", f.p, "exponent p > 1");
    f.p_list_opt = spec_cmd->add_option("--p-list", f.p_list, "comma separated exponents")->delimiter(',');
    spec_cmd->add_option("--L", f.L, "number of eigenvalues");

    auto* scan = app.add_subcommand("scan-degeneracy", "degeneracy exponents in a p range");
    add_geometry(scan, f);
    scan->add_option("--p-min", f.p_min, "lower end of the p range");
    scan->add_option("--p-max", f.p_max, "upper end of the p range");
    scan->add_option("--j-max", f.j_max, "largest spherical harmonic order");
    scan->add_option("--samples", f.samples, "coarse samples, geometric in p - 1");
    f.refine_opt = scan->add_flag("--refine", "refine the scan until the sign-change count is stable");

    auto* morse = app.add_subcommand("morse", "Morse index from the radial spectrum");
    add_geometry(morse, f);
    morse->add_option("--p", f.p, "exponent p > 1");
    auto* morse_list = morse->add_option("--p-list", f.p_list, "comma separated exponents")->delimiter(',');

    auto* asym = app.add_subcommand("asymptotics", "p -> 1 limits and the large-p bound");
    add_geometry(asym, f);
    auto* asym_list = asym->add_option("--p-list", f.p_list, "exponents decreasing toward 1")->delimiter(',');
    f.large_p_list_opt =
        asym->add_option("--large-p-list", f.large_p_list, "exponents for the large-p bound")->delimiter(',');

    auto* pert = app.add_subcommand("perturb", "continuation onto a deformed annulus (N = 2)");
    add_geometry(pert, f, false);
    pert->add_option("--p", f.p, "exponent p > 1");
    pert->add_option("--t", f.t, "deformation amplitude");
    pert->add_option("--steps", f.steps, "continuation steps");
    pert->add_option("--n-r", f.n_r, "radial intervals");
    pert->add_option("--n-theta", f.n_theta, "angular nodes (even)");
    f.inner_opt = pert->add_option("--inner", f.inner, "inner boundary mode k:c:d (repeatable)");
    f.outer_opt = pert->add_option("--outer", f.outer, "outer boundary mode k:c:d (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }
    if (morse->parsed()) f.p_list_opt = morse_list;
    if (asym->parsed()) f.p_list_opt = asym_list;

    CLI::App* chosen = app.get_subcommands().front();
    try {
        Params params(load_config(f.config));
        const char* env = std::getenv("LANE_EMDEN_OUT");
        std::string dir = f.out ? *f.out : (env && *env ? env : "out");
        Context ctx{std::move(params), fs::path(dir), chosen->get_name(), out};
        const std::string& name = ctx.command;
        if (name == "solve-radial") cmd_solve_radial(ctx, f);
        else if (name == "spectrum") cmd_spectrum(ctx, f);
        else if (name == "scan-degeneracy") cmd_scan_degeneracy(ctx, f);
        else if (name == "morse") cmd_morse(ctx, f);
        else if (name == "asymptotics") cmd_asymptotics(ctx, f);
        else cmd_perturb(ctx, f);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidInput ? kInvalidInput : kNumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}

}  // namespace lane_emden::cli
