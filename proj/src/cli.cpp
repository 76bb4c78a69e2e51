#include "latvar/cli.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/geometry.hpp"
#include "latvar/lattice.hpp"
#include "latvar/spectral.hpp"
#include "latvar/variance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace latvar {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Scenario {
    Eigen::MatrixXd lattice;  // 0x0 means identity of `dim`
    std::string shape_kind = "ball";
    int dim = 2;
    double radius = 1.0;
    std::vector<double> half_extents;
    std::vector<double> semi_axes;
    std::vector<double> radii;  // explicit grid; wins over the range below
    double rmin = 0.0, rmax = 0.0, rstep = 0.0;
    std::vector<std::string> routes = {"spectral", "asymptote", "phi"};
    int samples = 10000;
    std::uint64_t seed = 0;
    bool have_seed = false;
    double tol = 1e-9;
    std::string format = "csv";
    bool isotropic = false;
    double tau_min = -0.5, tau_max = 0.5, tau_step = 0.125;
};

// Flag values as parsed; unset optionals fall through to the scenario file.
struct Flags {
    std::optional<std::string> scenario_path, lattice_text, shape_kind, format,
        out_path, routes_text, half_extents_text, semi_axes_text, radii_text;
    std::optional<int> dim, samples;
    std::optional<double> radius, rmin, rmax, rstep, tol, tau_min, tau_max,
        tau_step;
    std::optional<std::uint64_t> seed;
    bool isotropic = false;
    bool fixed_orientation = false;
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse number: " + item);
        }
    }
    if (out.empty()) throw InvalidInput("empty numeric list");
    return out;
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_double_list(row));
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw InvalidInput("lattice matrix must be square");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

void apply_file(Scenario& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("scenario parse error: ") + e.what());
    }
    if (j.contains("lattice")) {
        const auto& m = j["lattice"];
        const int n = static_cast<int>(m.size());
        s.lattice.resize(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(m[i].size()) != n)
                throw InvalidInput("scenario lattice must be square");
            for (int k = 0; k < n; ++k) s.lattice(i, k) = m[i][k].get<double>();
        }
    }
    if (j.contains("shape")) {
        const auto& sh = j["shape"];
        if (sh.contains("kind")) s.shape_kind = sh["kind"].get<std::string>();
        if (sh.contains("dim")) s.dim = sh["dim"].get<int>();
        if (sh.contains("radius")) s.radius = sh["radius"].get<double>();
        if (sh.contains("half_extents"))
            s.half_extents = sh["half_extents"].get<std::vector<double>>();
        if (sh.contains("semi_axes"))
            s.semi_axes = sh["semi_axes"].get<std::vector<double>>();
    }
    if (j.contains("radii")) s.radii = j["radii"].get<std::vector<double>>();
    if (j.contains("grid")) {
        s.rmin = j["grid"].value("min", s.rmin);
        s.rmax = j["grid"].value("max", s.rmax);
        s.rstep = j["grid"].value("step", s.rstep);
    }
    if (j.contains("routes"))
        s.routes = j["routes"].get<std::vector<std::string>>();
    if (j.contains("samples")) s.samples = j["samples"].get<int>();
    if (j.contains("seed")) {
        s.seed = j["seed"].get<std::uint64_t>();
        s.have_seed = true;
    }
    if (j.contains("tol")) s.tol = j["tol"].get<double>();
    if (j.contains("format")) s.format = j["format"].get<std::string>();
    if (j.contains("isotropic")) s.isotropic = j["isotropic"].get<bool>();
}

void apply_flags(Scenario& s, const Flags& f) {
    if (f.lattice_text) s.lattice = parse_matrix(*f.lattice_text);
    if (f.shape_kind) s.shape_kind = *f.shape_kind;
    if (f.dim) s.dim = *f.dim;
    if (f.radius) s.radius = *f.radius;
    if (f.half_extents_text) s.half_extents = parse_double_list(*f.half_extents_text);
    if (f.semi_axes_text) s.semi_axes = parse_double_list(*f.semi_axes_text);
    if (f.radii_text) s.radii = parse_double_list(*f.radii_text);
    if (f.rmin) s.rmin = *f.rmin;
    if (f.rmax) s.rmax = *f.rmax;
    if (f.rstep) s.rstep = *f.rstep;
    if (f.routes_text) {
        s.routes.clear();
        std::stringstream ss(*f.routes_text);
        std::string item;
        while (std::getline(ss, item, ',')) s.routes.push_back(item);
    }
    if (f.samples) s.samples = *f.samples;
    if (f.seed) {
        s.seed = *f.seed;
        s.have_seed = true;
    }
    if (f.tol) s.tol = *f.tol;
    if (f.format) s.format = *f.format;
    if (f.isotropic) s.isotropic = true;
    if (f.fixed_orientation) s.isotropic = false;
    if (f.tau_min) s.tau_min = *f.tau_min;
    if (f.tau_max) s.tau_max = *f.tau_max;
    if (f.tau_step) s.tau_step = *f.tau_step;
}

Shape make_shape(const Scenario& s) {
    if (s.shape_kind == "ball") return Shape::ball(s.dim, s.radius);
    if (s.shape_kind == "box") {
        if (s.half_extents.empty())
            throw InvalidInput("box shape requires half extents");
        return Shape::box(Eigen::Map<const Eigen::VectorXd>(
            s.half_extents.data(), static_cast<long>(s.half_extents.size())));
    }
    if (s.shape_kind == "ellipsoid") {
        if (s.semi_axes.empty())
            throw InvalidInput("ellipsoid shape requires semi axes");
        return Shape::ellipsoid(Eigen::Map<const Eigen::VectorXd>(
            s.semi_axes.data(), static_cast<long>(s.semi_axes.size())));
    }
    throw InvalidInput("unknown shape kind: " + s.shape_kind);
}

Lattice make_lattice(const Scenario& s, int dim) {
    if (s.lattice.size() == 0) return Lattice::integer(dim);
    if (s.lattice.rows() != dim)
        throw InvalidInput("lattice/shape dimension mismatch");
    return Lattice::from_generator(s.lattice);
}

Eigen::VectorXd make_grid(const Scenario& s, double fallback_min,
                          double fallback_max, double fallback_step) {
    std::vector<double> g = s.radii;
    if (g.empty()) {
        double lo = s.rstep > 0.0 ? s.rmin : fallback_min;
        double hi = s.rstep > 0.0 ? s.rmax : fallback_max;
        double st = s.rstep > 0.0 ? s.rstep : fallback_step;
        if (!(st > 0.0) || hi < lo) throw InvalidInput("invalid grid");
        for (double v = lo; v <= hi + 0.5 * st; v += st) g.push_back(v);
        if (!g.empty()) g.back() = std::min(g.back(), hi);
    }
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] <= g[i - 1]) throw InvalidInput("grid must be increasing");
    return Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<long>(g.size()));
}

bool has_route(const Scenario& s, const std::string& name) {
    return std::find(s.routes.begin(), s.routes.end(), name) != s.routes.end();
}

void emit_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void emit_rows(std::ostream& out, const Scenario& s,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (s.format == "csv") {
        emit_csv(out, header, rows);
        return;
    }
    json arr = json::array();
    for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < header.size(); ++i)
            if (!row[i].empty()) obj[header[i]] = std::stod(row[i]);
        arr.push_back(obj);
    }
    out << json{{"rows", arr}}.dump(2) << "\n";
}

int cmd_variance(const Scenario& s, std::ostream& out) {
    const Shape shape = make_shape(s);
    const Lattice lat = make_lattice(s, shape.dim());
    const Eigen::VectorXd grid = make_grid(s, 1.0, 10.0, 1.0);
    const bool want_spec = has_route(s, "spectral");
    const bool want_mc = has_route(s, "mc") || has_route(s, "monte_carlo");
    const bool want_asym = has_route(s, "asymptote") || has_route(s, "asymptotic");
    const bool want_phi = has_route(s, "phi");
    if (want_mc && !s.have_seed)
        throw InvalidInput("seed is required when the mc route is selected");

    PhiProfile pp;
    if (want_phi) pp = phi_profile(lat, shape, grid, s.tol);
    const Rotation ident = Rotation::identity(shape.dim());
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid(i);
        std::vector<std::string> row(8);
        row[0] = fmt17(r);
        row[1] = fmt17(mean_count(lat, shape, r));
        if (want_spec)
            row[2] = fmt17(s.isotropic
                               ? variance_isotropic(lat, shape, r, s.tol).value
                               : variance_spectral(lat, shape, r, ident, s.tol).value);
        if (want_mc) {
            // independent root seed per radius, same splitting constant as
            // the per-worker streams
            const std::uint64_t seed_r =
                s.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i);
            const VarianceEstimate mc =
                variance_mc(lat, shape, r, s.isotropic, s.samples, seed_r);
            row[3] = fmt17(mc.value);
            row[4] = fmt17(mc.uncertainty);
        }
        if (want_asym) row[5] = fmt17(asymptote(lat, shape, r).value);
        if (want_phi) {
            row[6] = fmt17(pp.phi(i));
            row[7] = fmt17(pp.running_mean(i));
        }
        rows.push_back(std::move(row));
    }
    emit_rows(out, s,
              {"r", "mean", "var_spectral", "var_mc", "mc_se", "asymptote", "phi",
               "phi_runmean"},
              rows);
    return 0;
}

int cmd_constant(const Scenario& s, std::ostream& out) {
    const int dim = s.lattice.size() == 0 ? s.dim : static_cast<int>(s.lattice.rows());
    const Lattice lat = make_lattice(s, dim);
    const LatticeSum z = epstein_sum(lat, dim + 1.0, std::min(s.tol, 1e-9));
    const double ct = z.value / (2.0 * pi * pi * dim * unit_ball_volume(dim));
    if (s.format == "csv") {
        emit_csv(out, {"c_t", "epstein_value", "truncation_radius", "tail_bound"},
                 {{fmt17(ct), fmt17(z.value), fmt17(z.truncation_radius),
                   fmt17(z.tail_bound)}});
    } else {
        out << json{{"c_t", ct},
                    {"epstein_value", z.value},
                    {"truncation_radius", z.truncation_radius},
                    {"tail_bound", z.tail_bound}}
                   .dump(2)
            << "\n";
    }
    return 0;
}

int cmd_phi(const Scenario& s, std::ostream& out) {
    const Shape shape = make_shape(s);
    const Lattice lat = make_lattice(s, shape.dim());
    const Eigen::VectorXd grid = make_grid(s, 1.0, 10.0, 0.1);
    const PhiProfile pp = phi_profile(lat, shape, grid, s.tol);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < grid.size(); ++i)
        rows.push_back({fmt17(pp.radii(i)), fmt17(pp.phi(i)),
                        fmt17(pp.running_mean(i))});
    emit_rows(out, s, {"r", "phi", "phi_runmean"}, rows);
    return 0;
}

int cmd_covariogram(const Scenario& s, std::ostream& out) {
    const Shape shape = make_shape(s);
    const double diam = 2.0 * bounding_radius(shape);
    const Eigen::VectorXd grid = make_grid(s, 0.0, diam, diam / 100.0);
    std::vector<std::vector<std::string>> rows;
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(shape.dim());
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid(i);
        e1(0) = t;
        rows.push_back({fmt17(t), fmt17(covariogram(shape, e1)),
                        fmt17(isotropic_covariogram(shape, t))});
    }
    emit_rows(out, s, {"t", "gamma_axis", "gamma_iso"}, rows);
    return 0;
}

int cmd_kernel_check(const Scenario& s, std::ostream& out, std::ostream& err) {
    const int d = s.dim;
    if (d < 1 || d > 3) throw InvalidInput("dim must be 1, 2 or 3");
    if (!(s.tau_step > 0.0) || s.tau_max < s.tau_min)
        throw InvalidInput("invalid tau grid");
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    for (double tau = s.tau_min; tau <= s.tau_max + 0.5 * s.tau_step;
         tau += s.tau_step) {
        const std::complex<double> num = k2hat_numeric(tau, d);
        const std::complex<double> closed = k2hat_closed(tau, d);
        const double diff = std::abs(num - closed);
        if (diff > 1e-6 || std::abs(closed) < 1e-8) ok = false;
        rows.push_back({fmt17(tau), fmt17(num.real()), fmt17(num.imag()),
                        fmt17(closed.real()), fmt17(closed.imag()), fmt17(diff)});
    }
    emit_rows(out, s,
              {"tau", "num_re", "num_im", "closed_re", "closed_im", "abs_diff"},
              rows);
    if (!ok) {
        err << "kernel check failed: quadrature/closed-form mismatch or root\n";
        return 1;
    }
    return 0;
}

void add_common_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--scenario", f.scenario_path, "JSON scenario file");
    cmd->add_option("--lattice", f.lattice_text,
                    "generator rows, e.g. \"1,0;0,1\"");
    cmd->add_option("--shape", f.shape_kind, "ball | box | ellipsoid");
    cmd->add_option("--dim", f.dim, "dimension (1, 2 or 3)");
    cmd->add_option("--radius", f.radius, "ball radius");
    cmd->add_option("--half-extents", f.half_extents_text, "box half extents a,b,c");
    cmd->add_option("--semi-axes", f.semi_axes_text, "ellipsoid semi axes a,b,c");
    cmd->add_option("--radii", f.radii_text, "explicit grid r1,r2,...");
    cmd->add_option("--rmin", f.rmin, "grid start");
    cmd->add_option("--rmax", f.rmax, "grid end");
    cmd->add_option("--rstep", f.rstep, "grid step");
    cmd->add_option("--routes", f.routes_text,
                    "comma list of spectral,mc,asymptote,phi");
    cmd->add_option("--samples", f.samples, "MC sample count");
    cmd->add_option("--seed", f.seed, "64-bit root seed");
    cmd->add_option("--tol", f.tol, "numerical tolerance");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--out", f.out_path, "output path (default stdout)");
    cmd->add_flag("--isotropic", f.isotropic, "average over rotations");
    cmd->add_flag("--fixed-orientation", f.fixed_orientation,
                  "identity rotation (overrides a scenario file)");
    cmd->add_option("--tau-min", f.tau_min, "kernel grid start");
    cmd->add_option("--tau-max", f.tau_max, "kernel grid end");
    cmd->add_option("--tau-step", f.tau_step, "kernel grid step");
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"lattice point count variance toolkit"};
    app.require_subcommand(1);
    Flags flags;
    CLI::App* c_var = app.add_subcommand("variance", "variance table per radius");
    CLI::App* c_const = app.add_subcommand("constant", "lattice constant C_T");
    CLI::App* c_phi = app.add_subcommand("phi", "Phi profile and Cesaro mean");
    CLI::App* c_cov = app.add_subcommand("covariogram", "covariogram table");
    CLI::App* c_ker = app.add_subcommand("kernel-check", "K2-hat cross check");
    for (CLI::App* c : {c_var, c_const, c_phi, c_cov, c_ker})
        add_common_options(c, flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "invalid arguments: " << e.what() << "\n";
        return 2;
    }

    try {
        Scenario s;
        if (flags.scenario_path) apply_file(s, *flags.scenario_path);
        apply_flags(s, flags);
        if (s.format != "csv" && s.format != "json")
            throw InvalidInput("format must be csv or json");

        std::ofstream file;
        std::ostream* sink = &out;
        if (flags.out_path) {
            file.open(*flags.out_path);
            if (!file) throw InvalidInput("cannot open output file: " + *flags.out_path);
            sink = &file;
        }
        if (app.got_subcommand(c_var)) return cmd_variance(s, *sink);
        if (app.got_subcommand(c_const)) return cmd_constant(s, *sink);
        if (app.got_subcommand(c_phi)) return cmd_phi(s, *sink);
        if (app.got_subcommand(c_cov)) return cmd_covariogram(s, *sink);
        if (app.got_subcommand(c_ker)) return cmd_kernel_check(s, *sink, err);
        err << "no command selected\n";
        return 2;
    } catch (const InvalidInput& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    }
}

} // namespace latvar
