#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "logspiral/classify.hpp"
#include "logspiral/criticality.hpp"
#include "logspiral/dynamics.hpp"
#include "logspiral/equilibria.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/kernel.hpp"
#include "logspiral/verify.hpp"

namespace logspiral::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSize {
    int w = 0;
    int h = 0;
};

GridSize parse_grid(const std::string& s) {
    static const std::regex re(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("--grid expects WxH, got '" + s + "'");
    GridSize g{std::stoi(m[1]), std::stoi(m[2])};
    if (g.w < 1 || g.h < 1) throw UsageError("--grid dimensions must be positive");
    return g;
}

Direction parse_direction(const std::string& s) {
    return (s == "bwd" || s == "backward") ? Direction::backward : Direction::forward;
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

// JSON numbers cannot hold infinities; those become signed strings, NaN becomes null.
json jnum(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return x + 0.0;  // no negative zero
}

json header(std::optional<double> beta) {
    json j;
    j["schema_version"] = schema_version;
    if (beta) {
        j["beta"] = *beta;
        j["band"] = std::string(band_label(band_of(std::fabs(*beta))));
    } else {
        j["beta"] = nullptr;
        j["band"] = nullptr;
    }
    return j;
}

json point_json(const PhasePoint& p) {
    json j;
    switch (p.tag) {
        case PhasePoint::Tag::finite: j["r"] = jnum(p.r); break;
        case PhasePoint::Tag::plus_infinity: j["r"] = "+inf"; break;
        case PhasePoint::Tag::minus_infinity: j["r"] = "-inf"; break;
    }
    j["theta"] = jnum(p.theta);
    return j;
}

json equilibrium_json(const Equilibrium& e) {
    json j;
    j["id"] = e.id;
    j["location"] = point_json(e.location);
    j["kind"] = std::string(kind_name(e.kind));
    j["trace"] = jnum(e.trace);
    j["determinant"] = jnum(e.determinant);
    json ev = json::array();
    for (const auto& l : e.eigenvalues) ev.push_back({{"re", jnum(l.real())}, {"im", jnum(l.imag())}});
    j["eigenvalues"] = ev;
    j["log_scaled"] = e.log_scaled;
    j["compactified"] = e.compactified;
    j["mirror_of"] = e.mirror_of.empty() ? json(nullptr) : json(e.mirror_of);
    j["note"] = e.note.empty() ? json(nullptr) : json(e.note);
    return j;
}

// Writes to --out when given, else to the command's standard output.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

// ---- subcommands ----

int cmd_constants(std::ostream& out) {
    const auto& c = critical_constants();
    json j = header(std::nullopt);
    j["beta0"] = c.beta0;
    j["beta1"] = c.beta1;
    j["beta_star"] = c.beta_star;
    j["beta2"] = c.beta2;
    j["beta3"] = c.beta3;
    json bands = json::array();
    for (Band b : {Band::below_beta0, Band::beta0_beta1, Band::beta1_star, Band::star_beta2, Band::beta2_one,
                   Band::one_beta3, Band::above_beta3})
        bands.push_back(std::string(band_label(b)));
    j["bands"] = bands;
    emit_json(out, j);
    return 0;
}

int cmd_kernel(double beta, int samples, const std::string& out_path, std::ostream& out) {
    if (samples < 1) throw UsageError("--samples must be positive");
    SpiralParams p(beta);
    Sink sink(out_path, out);
    auto& os = *sink;
    os << "# kernel\n# beta: " << num(beta) << "\n# band: " << band_label(band_of(std::fabs(beta)))
       << "\n# samples: " << samples << " interior points of (0,2pi)\n";
    os << "theta,K,K1,K2\n";
    for (int j = 1; j <= samples; ++j) {
        const double th = two_pi * j / (samples + 1);
        const auto k = eval_kernel(p, th);
        os << num(th) << ',' << num(k.K) << ',' << num(k.K1) << ',' << num(k.K2) << '\n';
    }
    return 0;
}

int cmd_equilibria(double beta, std::ostream& out) {
    SpiralParams p(beta);
    const auto eqs = list_equilibria(p);
    json j = header(beta);
    json arr = json::array();
    for (const auto& e : eqs) arr.push_back(equilibrium_json(e));
    j["equilibria"] = arr;
    emit_json(out, j);
    return 0;
}

int cmd_portrait(double beta, GridSize g, bool log_chart, double extent, int curve_samples,
                 const std::string& out_path, std::ostream& out) {
    if (!(extent > 0.0)) throw UsageError("--extent must be positive");
    SpiralParams p(beta);
    Sink sink(out_path, out);
    auto& os = *sink;
    os << "# portrait\n# beta: " << num(beta) << "\n# band: " << band_label(band_of(std::fabs(beta)))
       << "\n# chart: " << (log_chart ? "log" : "linear") << "\n# grid: " << g.w << 'x' << g.h
       << "\n# extent: " << num(extent) << '\n';
    os << "# field rows: x = " << (log_chart ? "A = log|R| on sheet sign(R)" : "R")
       << ", (dx, dtheta) = vector field; R1/R2 rows: nullcline points, dx and dtheta empty\n";
    os << "series,sheet,theta,x,dx,dtheta\n";

    auto theta_at = [](int i, int n) { return two_pi * (i + 0.5) / n; };
    auto x_at = [&](int i, int n) { return n == 1 ? 0.0 : -extent + 2.0 * extent * i / (n - 1); };

    if (log_chart) {
        for (int sheet : {1, -1})
            for (int i = 0; i < g.h; ++i)
                for (int k = 0; k < g.w; ++k) {
                    const double th = theta_at(k, g.w), a = x_at(i, g.h);
                    const auto v = vector_field_log(p, a, th, sheet);
                    os << "field," << sheet << ',' << num(th) << ',' << num(a) << ',' << num(v[0]) << ','
                       << num(v[1]) << '\n';
                }
    } else {
        for (int i = 0; i < g.h; ++i)
            for (int k = 0; k < g.w; ++k) {
                const double th = theta_at(k, g.w), r = x_at(i, g.h);
                const auto v = vector_field_reparam(p, r, th);
                os << "field,0," << num(th) << ',' << num(r) << ',' << num(v[0]) << ',' << num(v[1]) << '\n';
            }
    }

    auto curve = [&](const char* name, double (*f)(const SpiralParams&, double)) {
        for (int k = 1; k <= curve_samples; ++k) {
            const double th = two_pi * k / (curve_samples + 1);
            const double r = f(p, th);
            if (!std::isfinite(r)) continue;
            if (log_chart) {
                if (r == 0.0) continue;
                os << name << ',' << (r > 0 ? 1 : -1) << ',' << num(th) << ',' << num(std::log(std::fabs(r))) << ",,\n";
            } else {
                os << name << ",0," << num(th) << ',' << num(r) << ",,\n";
            }
        }
    };
    curve("R1", nullcline_R1);
    curve("R2", nullcline_R2);
    return 0;
}

std::string controls_line(const Controls& c) {
    return fmt::format("rel_tol={} abs_tol={} max_time={} escape_radius={} capture_radius={} capture_steps={} "
                       "blowup_threshold={} max_steps={} event_tol={}",
                       num(c.rel_tol), num(c.abs_tol), num(c.max_time), num(c.escape_radius), num(c.capture_radius),
                       c.capture_steps, num(c.blowup_threshold), c.max_steps, num(c.event_tol));
}

void end_line(std::ostream& os, const Termination& e) {
    os << "# end: event=" << event_name(e.event);
    if (e.captured) os << " captured=" << to_string(*e.captured);
    if (e.escape_sign != 0) os << " escape_sign=" << e.escape_sign;
    if (e.t_star) os << " t_star=" << num(*e.t_star);
    os << " accepted_steps=" << e.accepted_steps << " rejected_steps=" << e.rejected_steps;
    if (!e.diagnostic.empty()) os << " diagnostic=\"" << e.diagnostic << '"';
    os << '\n';
}

struct SimulateArgs {
    std::string system = "original";
    double beta = 0.0, i1 = 0.0, i2 = 0.0, theta = 0.0, t_max = 100.0;
    std::string direction = "fwd";
    int samples = 0;
    double rel_tol = 1e-9, abs_tol = 1e-12;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    if (!(a.t_max > 0.0)) throw UsageError("--t-max must be positive");
    if (a.samples == 1) throw UsageError("--samples needs at least 2 points");
    SpiralParams p(a.beta);
    const Direction dir = parse_direction(a.direction);
    Controls ctl;
    ctl.max_time = a.t_max;
    ctl.rel_tol = a.rel_tol;
    ctl.abs_tol = a.abs_tol;
    if (a.samples >= 2)
        for (int j = 0; j < a.samples; ++j)
            ctl.output_times.push_back(direction_sign(dir) * a.t_max * j / (a.samples - 1));

    Sink sink(a.out, out);
    auto& os = *sink;
    os << "# system: " << a.system << "\n# beta: " << num(a.beta) << "\n# controls: " << controls_line(ctl)
       << "\n# direction: " << direction_name(dir) << "\n# initial: i1=" << num(a.i1) << " i2=" << num(a.i2)
       << " theta=" << num(a.theta) << '\n';

    if (a.system == "original") {
        spdlog::debug("integrating the original system to |t| = {}", a.t_max);
        const auto tr = integrate_original(p, SpiralState{a.i1, a.i2, a.theta, 0.0}, dir, ctl);
        os << "# columns: t, I1, I2, theta\nt_or_s,i1_or_r,i2_or_a,theta\n";
        for (const auto& s : tr.samples)
            os << num(s.t) << ',' << num(s.i1) << ',' << num(s.i2) << ',' << num(s.theta) << '\n';
        end_line(os, tr.end);
        return 0;
    }
    if (a.i2 == 0.0) throw DomainError("the reparametrized system needs i2 != 0");
    spdlog::debug("integrating the reparametrized system to |s| = {}", a.t_max);
    const auto tr = integrate_reparam(p, ReparamState{a.i1 / a.i2, a.theta}, dir, ctl);
    os << "# columns: s, R, A = log|R|, theta\nt_or_s,i1_or_r,i2_or_a,theta\n";
    for (const auto& s : tr.samples)
        os << num(s.s) << ',' << num(s.r) << ',' << num(std::log(std::fabs(s.r))) << ',' << num(s.theta) << '\n';
    if (tr.time_saturated) os << "# note: time quadrature saturated\n";
    end_line(os, tr.end);
    return 0;
}

json behavior_json(double beta, double i1, double i2, double theta, Direction dir, const BehaviorClass& b) {
    json j = header(beta);
    j["input"] = {{"i1", i1}, {"i2", i2}, {"theta", theta}, {"direction", std::string(direction_name(dir))}};
    j["case"] = std::string(case_name(b.case_id));
    j["finite_time"] = finite_time(b.case_id);
    j["theorem_bullet"] = b.theorem_bullet;
    j["saddle_destined"] = b.saddle_destined;
    j["direction"] = std::string(direction_name(b.direction));
    j["destination"] = point_json(b.destination);
    j["destination_id"] = b.destination_id;
    j["t_star"] = b.t_star ? jnum(*b.t_star) : json(nullptr);
    json rates = json::array();
    for (const auto& r : b.rates)
        rates.push_back({{"quantity", r.quantity},
                         {"kind", std::string(rate_kind_name(r.kind))},
                         {"exponent", jnum(r.exponent)},
                         {"coefficient", jnum(r.coefficient)}});
    j["rates"] = rates;
    j["note"] = b.note.empty() ? json(nullptr) : json(b.note);
    return j;
}

int cmd_classify(double beta, double i1, double i2, double theta, const std::string& direction, std::ostream& out) {
    const Direction dir = parse_direction(direction);
    const auto b = classify_behavior(SpiralParams(beta), i1, i2, theta, dir);
    emit_json(out, behavior_json(beta, i1, i2, theta, dir, b));
    return 0;
}

int cmd_sweep(double beta, GridSize g, const std::string& direction, double a_max, double eps,
              const std::string& out_path, std::ostream& out) {
    if (!(a_max > 0.0)) throw UsageError("--a-max must be positive");
    if (!(eps > 0.0)) throw UsageError("--eps must be positive");
    const Direction dir = parse_direction(direction);
    GridSpec spec;
    spec.n_theta = g.w;
    spec.n_a = g.h;
    spec.a_max = a_max;
    spec.eps = eps;
    const auto sw = basin_sweep(SpiralParams(beta), spec, dir);
    if (sw.unresolved > 0) spdlog::warn("{} of {} cells unresolved", sw.unresolved, sw.cells.size());

    Sink sink(out_path, out);
    auto& os = *sink;
    os << "# sweep\n# beta: " << num(beta) << "\n# band: " << band_label(band_of(std::fabs(beta)))
       << "\n# direction: " << direction_name(dir) << "\n# grid: " << g.w << 'x' << g.h << " a_max=" << num(a_max)
       << " eps=" << num(eps) << "\n# unresolved: " << sw.unresolved << '\n';
    os << "a_or_r,theta,sheet,destination_id,case_id\n";
    for (const auto& c : sw.cells)
        os << num(c.a_or_r) << ',' << num(c.theta) << ',' << c.sheet << ',' << c.destination_id << ',' << c.case_id
           << '\n';
    return 0;
}

int cmd_graph(double beta, std::ostream& out) {
    const auto g = predicted_heteroclinic_graph(SpiralParams(beta));
    json j = header(beta);
    json nodes = json::array();
    for (const auto& n : g.nodes) nodes.push_back(equilibrium_json(n));
    json edges = json::array();
    for (const auto& [from, to] : g.edges) edges.push_back({{"from", from}, {"to", to}});
    j["nodes"] = nodes;
    j["edges"] = edges;
    emit_json(out, j);
    return 0;
}

int cmd_verify(const BetaGrid& grid, std::ostream& out) {
    if (grid.points < 1) throw UsageError("--points must be positive");
    if (!(grid.beta_min > 0.0) || !(grid.beta_max >= grid.beta_min))
        throw UsageError("need 0 < --beta-min <= --beta-max");
    const auto rep = verify_all(grid);
    json j = header(std::nullopt);
    j["grid"] = {{"beta_min", grid.beta_min}, {"beta_max", grid.beta_max}, {"points", grid.points},
                 {"guard", grid.guard}};
    j["summary"] = {{"pass", rep.count(CheckStatus::pass)},
                    {"fail", rep.count(CheckStatus::fail)},
                    {"skipped_near_critical", rep.count(CheckStatus::skipped_near_critical)},
                    {"all_passed", rep.all_passed()}};
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json w;
        w["beta"] = jnum(c.witness.beta);
        for (const auto& [k, v] : c.witness.at) w[k] = jnum(v);
        json skipped = json::array();
        for (double b : c.skipped_betas) skipped.push_back(b);
        checks.push_back({{"id", c.id},
                          {"description", c.description},
                          {"status", std::string(status_name(c.status))},
                          {"evaluated", c.evaluated},
                          {"skipped_betas", skipped},
                          {"margin", jnum(c.margin)},
                          {"witness", w},
                          {"note", c.note.empty() ? json(nullptr) : json(c.note)}});
    }
    j["checks"] = checks;
    emit_json(out, j);
    for (const auto& c : rep.checks)
        if (c.status == CheckStatus::fail) spdlog::error("check {} failed, margin {}", c.id, c.margin);
    return rep.all_passed() ? 0 : 1;
}

// ---- error reporting ----

int library_error(std::ostream& out, const std::string& type, const std::string& message, json extra = json::object()) {
    json j;
    j["schema_version"] = schema_version;
    json e;
    e["type"] = type;
    e["message"] = message;
    for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
    j["error"] = e;
    emit_json(out, j);
    spdlog::error("{}: {}", type, message);
    return 3;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    sink->set_pattern("logspiral [%l] %v");
    auto logger = std::make_shared<spdlog::logger>("logspiral", sink);
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("LOGSPIRAL_LOG")) {
        const auto parsed = spdlog::level::from_str(env);
        // from_str maps unknown names to off; keep the default instead.
        if (parsed != spdlog::level::off || std::string(env) == "off") level = parsed;
    }
    logger->set_level(level);
    return logger;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto previous = spdlog::default_logger();
    spdlog::set_default_logger(make_logger(err));
    struct Restore {
        std::shared_ptr<spdlog::logger> logger;
        ~Restore() { spdlog::set_default_logger(logger); }
    } restore{previous};

    CLI::App app{"Two-branch logarithmic spiral vortex sheets: kernel, equilibria, dynamics and long-time classification",
                 "logspiral"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    const std::vector<std::string> directions{"fwd", "bwd", "forward", "backward"};

    auto* constants = app.add_subcommand("constants", "Critical parameter values (JSON)");

    double beta = 0.0;
    int samples = 400;
    std::string out_path;
    auto* kernel = app.add_subcommand("kernel", "Kernel K, K', K'' on (0,2pi) (CSV)");
    kernel->add_option("--beta", beta, "Spiral parameter")->required();
    kernel->add_option("--samples", samples, "Number of interior sample angles")->capture_default_str();
    kernel->add_option("--out", out_path, "Output file (default: standard output)");

    auto* equilibria = app.add_subcommand("equilibria", "Equilibria with kinds and eigenvalues (JSON)");
    equilibria->add_option("--beta", beta, "Spiral parameter")->required();

    std::string grid_text;
    bool log_chart = false;
    double extent = 3.0;
    int curve_samples = 1000;
    auto* portrait = app.add_subcommand("portrait", "Vector field samples and nullclines (CSV)");
    portrait->add_option("--beta", beta, "Spiral parameter")->required();
    portrait->add_option("--grid", grid_text, "Grid size WxH (theta by R or A)")->required();
    portrait->add_flag("--log", log_chart, "Sample the log-scaled fields on both sheets");
    portrait->add_option("--extent", extent, "Half-width of the R (or A) range")->capture_default_str();
    portrait->add_option("--curve-samples", curve_samples, "Angles per nullcline")->capture_default_str();
    portrait->add_option("--out", out_path, "Output file (default: standard output)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory (CSV)");
    simulate->add_option("--system", sim.system, "original or reparam")
        ->check(CLI::IsMember({"original", "reparam"}))
        ->capture_default_str();
    simulate->add_option("--beta", sim.beta, "Spiral parameter")->required();
    simulate->add_option("--i1", sim.i1, "Initial I1")->required();
    simulate->add_option("--i2", sim.i2, "Initial I2")->required();
    simulate->add_option("--theta", sim.theta, "Initial angle in (0,2pi)")->required();
    simulate->add_option("--t-max", sim.t_max, "Time span (pseudo-time for reparam)")->capture_default_str();
    simulate->add_option("--direction", sim.direction, "fwd or bwd")->check(CLI::IsMember(directions))->capture_default_str();
    simulate->add_option("--samples", sim.samples, "Uniform output samples (0: every accepted step)")->capture_default_str();
    simulate->add_option("--rel-tol", sim.rel_tol, "Relative tolerance")->capture_default_str();
    simulate->add_option("--abs-tol", sim.abs_tol, "Absolute tolerance")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output file (default: standard output)");

    double i1 = 0.0, i2 = 0.0, theta = 0.0;
    std::string direction = "fwd";
    auto* classify = app.add_subcommand("classify", "Long-time behavior of one initial datum (JSON)");
    classify->add_option("--beta", beta, "Spiral parameter")->required();
    classify->add_option("--i1", i1, "Initial I1")->required();
    classify->add_option("--i2", i2, "Initial I2")->required();
    classify->add_option("--theta", theta, "Initial angle in (0,2pi)")->required();
    classify->add_option("--direction", direction, "fwd or bwd")->check(CLI::IsMember(directions))->capture_default_str();

    GridSpec gdef;
    double a_max = gdef.a_max, eps = gdef.eps;
    auto* sweep = app.add_subcommand("sweep", "Basin partition of the phase plane (CSV)");
    sweep->add_option("--beta", beta, "Spiral parameter")->required();
    sweep->add_option("--grid", grid_text, "Grid size WxH (theta by A)")->required();
    sweep->add_option("--direction", direction, "fwd or bwd")->check(CLI::IsMember(directions))->capture_default_str();
    sweep->add_option("--a-max", a_max, "Range of A = log|R| is [-a_max, a_max]")->capture_default_str();
    sweep->add_option("--eps", eps, "Distance kept from theta = 0 and 2pi")->capture_default_str();
    sweep->add_option("--out", out_path, "Output file (default: standard output)");

    auto* graph = app.add_subcommand("graph", "Predicted heteroclinic graph (JSON)");
    graph->add_option("--beta", beta, "Spiral parameter")->required();

    BetaGrid bgrid;
    auto* verify = app.add_subcommand("verify", "Audit the kernel identities and hypotheses over a beta grid (JSON)");
    verify->add_option("--beta-min", bgrid.beta_min, "Smallest beta")->capture_default_str();
    verify->add_option("--beta-max", bgrid.beta_max, "Largest beta")->capture_default_str();
    verify->add_option("--points", bgrid.points, "Grid points, inclusive of both ends")->capture_default_str();
    verify->add_option("--guard", bgrid.guard, "Half-width skipped around critical values")->capture_default_str();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("logspiral");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*constants) return cmd_constants(out);
        if (*kernel) return cmd_kernel(beta, samples, out_path, out);
        if (*equilibria) return cmd_equilibria(beta, out);
        if (*portrait) return cmd_portrait(beta, parse_grid(grid_text), log_chart, extent, curve_samples, out_path, out);
        if (*simulate) return cmd_simulate(sim, out);
        if (*classify) return cmd_classify(beta, i1, i2, theta, direction, out);
        if (*sweep) return cmd_sweep(beta, parse_grid(grid_text), direction, a_max, eps, out_path, out);
        if (*graph) return cmd_graph(beta, out);
        if (*verify) return cmd_verify(bgrid, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NearCriticalError& e) {
        return library_error(out, "NearCriticalError", e.what(),
                             {{"critical", std::string(e.critical_name())},
                              {"critical_value", e.critical_value()},
                              {"beta", e.beta()}});
    } catch (const NonHyperbolicError& e) {
        return library_error(out, "NonHyperbolicError", e.what());
    } catch (const DomainError& e) {
        return library_error(out, "DomainError", e.what());
    } catch (const UnresolvedError& e) {
        return library_error(out, "UnresolvedError", e.what());
    } catch (const IntegrationError& e) {
        return library_error(out, "IntegrationError", e.what());
    } catch (const NotFoundError& e) {
        return library_error(out, "NotFoundError", e.what());
    } catch (const InternalError& e) {
        return library_error(out, "InternalError", e.what());
    } catch (const std::exception& e) {
        return library_error(out, "Error", e.what());
    }
    return 2;
}

}  // namespace logspiral::cli
