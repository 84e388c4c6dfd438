#include "bcinv/characterization_suite.hpp"
#include "bcinv/error.hpp"
#include "bcinv/generate.hpp"
#include "bcinv/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

using namespace bcinv;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;
constexpr int kInadmissible = 3;
constexpr int kRoundTripFailure = 4;

const char* kVersion = "1.0.0";

struct Common {
    std::string out;
    bool no_timestamp = false;
};

struct SystemFlags {
    std::string kind = "jacobi";
    std::size_t n = 3;
    std::uint64_t seed = 0;
    std::pair<double, double> a_range{0.5, 2.0};
    std::pair<double, double> b_range{-1.0, 1.0};
    std::pair<double, double> l_range{0.5, 2.0};
    std::pair<double, double> m_range{0.5, 3.0};
};

struct GridFlags {
    double T = 1.0;
    std::size_t steps = 2048;
};

struct SolverFlags {
    std::string method = "krein";
    double rank_tol = 1e-24;
    double term_tol = 1e-6;
    std::optional<double> range_tol;
    std::optional<double> scale;
    std::optional<std::size_t> n_target;
};

void input_error(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

SystemKind parse_kind(const std::string& k)
{
    if (k == "jacobi") return SystemKind::Jacobi;
    if (k == "string") return SystemKind::String;
    input_error("unknown kind '" + k + "'");
    return SystemKind::Jacobi;
}

TimeGrid make_grid(const GridFlags& g)
{
    if (g.steps < 64) input_error("--steps must be at least 64");
    if (!(g.T > 0)) input_error("--T must be positive");
    return TimeGrid(Real(g.T), g.steps);
}

System make_system(const SystemFlags& f, SplitMix64& rng)
{
    if (f.n == 0) input_error("--n must be at least 1");
    auto iv = [](std::pair<double, double> p) { return Interval{p.first, p.second}; };
    if (parse_kind(f.kind) == SystemKind::Jacobi) return random_jacobi(rng, f.n, iv(f.a_range), iv(f.b_range));
    return random_string(rng, f.n, iv(f.l_range), iv(f.m_range));
}

std::pair<SpectralData, EigenBasis> eigen_of(const System& s)
{
    if (auto j = std::get_if<JacobiSystem>(&s)) return eigen_jacobi(*j);
    return eigen_string(std::get<StieltjesString>(s));
}

System load_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in) input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
    try {
        return system_from_json(j);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

CsvSignal load_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) input_error("cannot open " + path);
    return read_signal_csv(in);
}

void emit(const Common& c, const std::string& text)
{
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out, std::ios::binary);
    if (!os) input_error("cannot write " + c.out);
    os << text;
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::string utc_now()
{
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json report_head(const Common& c, const std::string& command)
{
    json j{{"command", command}, {"version", kVersion}};
    if (!c.no_timestamp) j["timestamp"] = utc_now();
    return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json finite_or_null(const Real& x)
{
    double d = to_double(x);
    if (!std::isfinite(d)) return json();
    return d;
}

SampledSignal control_signal(const std::string& name, const TimeGrid& g)
{
    const Real T = g.horizon;
    if (name == "one") return sample(g, [](const Real&) { return Real(1); });
    if (name == "ramp") return sample(g, [T](const Real& t) { return t / T; });
    if (name == "sine") return sample(g, [T](const Real& t) { return sin(pi() * t / T); });
    input_error("unknown control '" + name + "'");
    return {};
}

std::string csv_comment(SystemKind kind, const TimeGrid& g, const Real& scale)
{
    std::ostringstream os;
    os << std::setprecision(17) << "kind=" << kind_name(kind) << ",T=" << to_double(g.horizon) << ",n_t=" << g.steps;
    if (kind == SystemKind::String) os << ",scale=" << format_real(scale);
    return os.str();
}

void add_noise(SampledSignal& r, double sigma, SplitMix64& rng)
{
    if (sigma < 0) input_error("--noise-sigma must be nonnegative");
    if (sigma == 0) return;
    // r(0) = 0 is part of the data model; noise on the interior samples
    for (std::size_t i = 1; i < r.values.size(); ++i) r.values[i] += Real(sigma * rng.normal());
}

// Grid of the control interval [0, T] described by the CSV.
TimeGrid control_grid(const CsvSignal& csv)
{
    const TimeGrid& full = csv.signal.grid;
    auto T = csv.meta.find("T");
    auto n = csv.meta.find("n_t");
    if (T != csv.meta.end() && n != csv.meta.end()) {
        std::size_t steps = 0;
        try {
            steps = std::stoul(n->second);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad n_t in CSV metadata");
        }
        TimeGrid g(parse_real(T->second), steps);
        if (full.horizon + Real(1e-12) * g.step() < 2 * g.horizon)
            throw Error(ErrorCode::InsufficientHorizon, "response file covers [0, " + format_real(full.horizon) +
                                                            "] but [0, 2T] is needed for T = " + T->second);
        return g;
    }
    if (full.steps % 2 != 0) throw Error(ErrorCode::InsufficientHorizon, "odd step count; cannot split [0, 2T]");
    return TimeGrid(full.horizon / 2, full.steps / 2);
}

KreinOptions krein_options(const SolverFlags& s, bool noisy)
{
    KreinOptions o;
    o.rank_tol = Real(s.rank_tol);
    o.term_tol = Real(s.term_tol);
    if (s.range_tol) {
        o.range_tol = Real(*s.range_tol);
    } else if (noisy) {
        // noisy r(T - .) is never exactly in the truncated range
        o.range_tol = Real(std::numeric_limits<double>::infinity());
        o.cap_residual_tol = Real(std::numeric_limits<double>::infinity());
    }
    return o;
}

struct MethodRun {
    std::string name;
    std::optional<System> recovered;
    json diagnostics;
    std::string error;
    double seconds = 0;
};

MethodRun run_method(const std::string& method, const SampledSignal& r, const TimeGrid& grid, SystemKind kind,
                     const Real& scale, const SolverFlags& s, bool noisy, std::size_t n_hint)
{
    MethodRun run;
    run.name = method;
    auto t0 = std::chrono::steady_clock::now();
    try {
        SampledSignal rr = r.truncated(2 * grid.steps);
        KreinOptions ko = krein_options(s, noisy);
        if (method == "krein") {
            ConnectingOperator C = connecting_dynamic(rr, scale, grid, kind);
            if (kind == SystemKind::Jacobi) {
                JacobiKreinResult k = reconstruct_jacobi_krein(C, rr, ko);
                run.recovered = k.system;
                run.diagnostics = to_json(k.diagnostics);
            } else {
                StringKreinResult k = reconstruct_string_krein(C, rr, ko);
                run.recovered = k.string;
                run.diagnostics = to_json(k.diagnostics);
                run.diagnostics["coeff_residual"] = to_double(k.coeff_residual);
            }
        } else {
            if (kind != SystemKind::Jacobi)
                throw Error(ErrorCode::WrongKind, "method '" + method + "' reconstructs Jacobi systems only");
            std::size_t N = s.n_target.value_or(n_hint);
            if (N == 0) throw Error(ErrorCode::InvalidInput, "could not determine the system size; pass --n");
            if (method == "moments") {
                MomentSequence ms = estimate_derivatives_at_zero(rr, 2 * N);
                MomentOptions mo;
                mo.n_target = N;
                run.recovered = jacobi_from_moments(ms, mo);
                json err = json::array();
                for (const auto& e : ms.errors) err.push_back(to_double(e));
                run.diagnostics = json{{"moments", to_json_array(ms.values)}, {"moment_errors", err}};
            } else if (method == "variational") {
                ConnectingOperator C = connecting_dynamic(rr, Real(1), grid, kind);
                FlatBasis fb = build_flat_basis(grid, 8 * N);
                VariationalResult vr = recover_spectrum_variational(C, rr, fb, N);
                run.recovered = complete_from_spectral(vr.spectral, N);
                run.diagnostics = json{{"spectral", to_json(vr.spectral)},
                                       {"kappas", to_json_array(vr.kappas)},
                                       {"ritz_residuals", to_json_array(vr.ritz_residuals)},
                                       {"gram_rank", vr.gram_rank},
                                       {"stiffness_asymmetry", to_double(vr.stiffness_asymmetry)}};
            } else {
                input_error("unknown method '" + method + "'");
            }
        }
    } catch (const std::exception& e) {
        run.error = e.what();
    }
    run.seconds = seconds_since(t0);
    return run;
}

std::vector<std::string> method_list(const std::string& m)
{
    if (m == "all") return {"krein", "moments", "variational"};
    if (m == "krein" || m == "moments" || m == "variational") return {m};
    input_error("unknown method '" + m + "'");
    return {};
}

json per_parameter_errors(const System& got, const System& want)
{
    auto rel = [](const Vec& g, const Vec& w) {
        json a = json::array();
        if (g.size() != w.size()) return json();
        for (std::size_t i = 0; i < g.size(); ++i) {
            Real d = abs(g[i] - w[i]);
            a.push_back(to_double(w[i] == 0 ? d : Real(d / abs(w[i]))));
        }
        return a;
    };
    if (auto wj = std::get_if<JacobiSystem>(&want)) {
        auto gj = std::get_if<JacobiSystem>(&got);
        if (!gj) return json();
        return json{{"a", rel(gj->offdiag, wj->offdiag)}, {"b", rel(gj->diag, wj->diag)}};
    }
    const auto& ws = std::get<StieltjesString>(want);
    auto gs = std::get_if<StieltjesString>(&got);
    if (!gs) return json();
    return json{{"lengths", rel(gs->lengths, ws.lengths)}, {"masses", rel(gs->masses, ws.masses)}};
}

Real system_error(const System& got, const System& want)
{
    if (auto wj = std::get_if<JacobiSystem>(&want)) {
        auto gj = std::get_if<JacobiSystem>(&got);
        return gj ? max_relative_error(*gj, *wj) : Real(std::numeric_limits<double>::infinity());
    }
    auto gs = std::get_if<StieltjesString>(&got);
    return gs ? max_relative_error(*gs, std::get<StieltjesString>(want))
              : Real(std::numeric_limits<double>::infinity());
}

json method_json(const MethodRun& m, bool timings)
{
    json j{{"name", m.name}};
    j["system"] = m.recovered ? to_json(*m.recovered) : json();
    j["diagnostics"] = m.diagnostics;
    j["error"] = m.error.empty() ? json() : json(m.error);
    if (timings) j["wall_seconds"] = m.seconds;
    return j;
}

// ---- subcommands ----

int cmd_generate(const Common& c, const SystemFlags& f)
{
    SplitMix64 rng(f.seed);
    emit_json(c, to_json(make_system(f, rng)));
    return kOk;
}

int cmd_forward(const Common& c, const std::string& system_path, const GridFlags& gf, const std::string& control,
                const std::string& solver)
{
    System sys = load_system(system_path);
    TimeGrid g = make_grid(gf);
    SampledSignal f = control_signal(control, g);
    Trajectory tr;
    if (solver == "spectral") {
        auto [sd, basis] = eigen_of(sys);
        tr = forward_spectral(sd, basis, f);
    } else if (solver == "oracle") {
        tr = std::visit([&](const auto& s) { return forward_ode_oracle(s, f); }, sys);
    } else {
        input_error("unknown solver '" + solver + "'");
    }
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    emit(c, os.str());
    return kOk;
}

int cmd_response(const Common& c, const std::string& system_path, const GridFlags& gf, double sigma,
                 std::uint64_t seed)
{
    System sys = load_system(system_path);
    TimeGrid g = make_grid(gf);
    auto [sd, basis] = eigen_of(sys);
    SampledSignal r = response_function(sd, g.doubled());
    SplitMix64 rng(seed);
    add_noise(r, sigma, rng);
    std::ostringstream os;
    write_signal_csv(os, r, csv_comment(sd.kind, g, sd.scale));
    emit(c, os.str());
    return kOk;
}

CharacterizeOptions characterize_options(const SolverFlags& s, const Real& scale)
{
    CharacterizeOptions o;
    o.rank_tol = Real(s.rank_tol);
    o.scale = scale;
    return o;
}

SystemKind kind_of(const CsvSignal& csv, const std::string& flag)
{
    if (!flag.empty()) return parse_kind(flag);
    auto it = csv.meta.find("kind");
    return it == csv.meta.end() ? SystemKind::Jacobi : parse_kind(it->second);
}

Real scale_of(const CsvSignal& csv, const SolverFlags& s)
{
    if (s.scale) return Real(*s.scale);
    auto it = csv.meta.find("scale");
    return it == csv.meta.end() ? Real(1) : parse_real(it->second);
}

int cmd_characterize(const Common& c, const std::string& input, const std::string& kind_flag, const SolverFlags& s,
                     std::optional<double> certify_tol)
{
    CsvSignal csv = load_csv(input);
    SystemKind kind = kind_of(csv, kind_flag);
    TimeGrid grid = control_grid(csv);
    SampledSignal r = csv.signal.truncated(2 * grid.steps);
    CharacterizeOptions co = characterize_options(s, scale_of(csv, s));
    CharacterizationReport rep;
    if (certify_tol) {
        CertifyOptions opt;
        opt.characterize = co;
        opt.krein = krein_options(s, false);
        rep = certify(r, kind, Real(*certify_tol), opt);
    } else {
        rep = characterize_response(r, kind, co);
    }
    json j = report_head(c, "characterize");
    j["kind"] = kind_name(kind);
    j["grid"] = {{"T", to_double(grid.horizon)}, {"n_t", grid.steps}};
    j["characterization"] = to_json(rep);
    emit_json(c, j);
    return rep.admissible ? kOk : kInadmissible;
}

int cmd_reconstruct(const Common& c, const std::string& input, const std::string& kind_flag, const SolverFlags& s,
                    const std::string& system_out)
{
    auto methods = method_list(s.method);
    CsvSignal csv = load_csv(input);
    SystemKind kind = kind_of(csv, kind_flag);
    TimeGrid grid = control_grid(csv);
    SampledSignal r = csv.signal.truncated(2 * grid.steps);
    Real scale = scale_of(csv, s);

    json j = report_head(c, "reconstruct");
    j["kind"] = kind_name(kind);
    j["grid"] = {{"T", to_double(grid.horizon)}, {"n_t", grid.steps}};
    j["method"] = s.method;

    CharacterizationReport rep = characterize_response(r, kind, characterize_options(s, scale));
    j["characterization"] = to_json(rep);
    if (!rep.admissible) {
        emit_json(c, j);
        return kInadmissible;
    }

    json results = json::array();
    std::optional<System> first;
    for (const auto& m : methods) {
        MethodRun run = run_method(m, r, grid, kind, scale, s, false, rep.detected_n);
        if (run.recovered && !first) first = run.recovered;
        results.push_back(method_json(run, !c.no_timestamp));
    }
    j["results"] = results;
    emit_json(c, j);
    if (!first) return kFailure;
    if (!system_out.empty()) {
        Common sc = c;
        sc.out = system_out;
        emit_json(sc, to_json(*first));
    }
    return kOk;
}

int cmd_roundtrip(const Common& c, const SystemFlags& f, const GridFlags& gf, const SolverFlags& s, double sigma,
                  double tol)
{
    auto methods = method_list(s.method);
    TimeGrid g = make_grid(gf);
    SplitMix64 rng(f.seed);
    System truth = make_system(f, rng);
    auto [sd, basis] = eigen_of(truth);
    SampledSignal r = response_function(sd, g.doubled());
    add_noise(r, sigma, rng); // continues the generator stream

    json j = report_head(c, "roundtrip");
    j["config"] = {{"kind", f.kind},           {"n", f.n},          {"seed", f.seed},
                   {"T", gf.T},                {"n_t", gf.steps},   {"method", s.method},
                   {"rank_tol", s.rank_tol},   {"term_tol", s.term_tol}, {"noise_sigma", sigma},
                   {"tol", tol}};
    j["truth"] = to_json(truth);

    bool pass = true;
    json results = json::array();
    for (const auto& m : methods) {
        // the l_1 gauge is not carried by r; the generated one is used
        MethodRun run = run_method(m, r, g, sd.kind, sd.scale, s, sigma > 0, f.n);
        json e = method_json(run, !c.no_timestamp);
        Real err = run.recovered ? system_error(*run.recovered, truth) : Real(std::numeric_limits<double>::infinity());
        bool ok = run.recovered && err <= Real(tol);
        e["relative_errors"] = run.recovered ? per_parameter_errors(*run.recovered, truth) : json();
        e["max_rel_error"] = finite_or_null(err);
        if (run.recovered) e["recovered_n"] = std::visit([](const auto& x) { return x.n(); }, *run.recovered);
        e["pass"] = ok;
        pass = pass && ok;
        results.push_back(e);
    }
    j["results"] = results;
    j["pass"] = pass;
    emit_json(c, j);
    return pass ? kOk : kRoundTripFailure;
}

int cmd_compare(const Common& c, const SystemFlags& f, const GridFlags& gf, const SolverFlags& s)
{
    if (parse_kind(f.kind) != SystemKind::Jacobi) input_error("compare runs on Jacobi systems only");
    TimeGrid g = make_grid(gf);
    SplitMix64 rng(f.seed);
    JacobiSystem sys = std::get<JacobiSystem>(make_system(f, rng));
    CompareOptions opt;
    opt.krein = krein_options(s, false);
    opt.characterize.rank_tol = Real(s.rank_tol);
    MethodComparison mc = compare_methods(sys, g, opt);
    json j = report_head(c, "compare");
    j["config"] = {{"n", f.n}, {"seed", f.seed}, {"T", gf.T}, {"n_t", gf.steps}};
    j["comparison"] = to_json(mc, !c.no_timestamp);
    emit_json(c, j);
    return kOk;
}

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--out", c.out, "Output file (default stdout)");
    app->add_flag("--no-timestamp", c.no_timestamp, "Omit timestamps and wall times");
}

void add_system_flags(CLI::App* app, SystemFlags& f)
{
    app->add_option("--kind", f.kind, "jacobi or string")->check(CLI::IsMember({"jacobi", "string"}));
    app->add_option("--n", f.n, "Number of masses / matrix size");
    app->add_option("--seed", f.seed, "SplitMix64 seed");
    app->add_option("--a-range", f.a_range, "Off-diagonal range lo hi");
    app->add_option("--b-range", f.b_range, "Diagonal range lo hi");
    app->add_option("--l-range", f.l_range, "Interval length range lo hi");
    app->add_option("--m-range", f.m_range, "Mass range lo hi");
}

void add_grid_flags(CLI::App* app, GridFlags& g)
{
    app->add_option("--T", g.T, "Control horizon");
    app->add_option("--steps", g.steps, "Steps on [0, T]");
}

void add_solver_flags(CLI::App* app, SolverFlags& s, bool with_method)
{
    if (with_method)
        app->add_option("--method", s.method, "krein, moments, variational or all")
            ->check(CLI::IsMember({"krein", "moments", "variational", "all"}));
    app->add_option("--rank-tol", s.rank_tol, "Relative singular value cutoff");
    app->add_option("--term-tol", s.term_tol, "Krein termination tolerance");
    app->add_option("--range-tol", s.range_tol, "Residual tolerance of range solves");
    app->add_option("--scale", s.scale, "String gauge l_1 (default: CSV metadata, else 1)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Boundary-control reconstruction of Jacobi matrices and Stieltjes strings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    SystemFlags sf;
    GridFlags gf;
    SolverFlags sol;
    std::string system_path, input, kind_flag, control = "sine", solver = "spectral", system_out;
    double sigma = 0, tol = 1e-3;
    std::uint64_t noise_seed = 0;
    std::optional<double> certify_tol;

    auto* gen = app.add_subcommand("generate", "Seeded random system as JSON");
    add_common(gen, c);
    add_system_flags(gen, sf);

    auto* fwd = app.add_subcommand("forward", "Trajectory CSV for a canned control");
    add_common(fwd, c);
    add_grid_flags(fwd, gf);
    fwd->add_option("--system", system_path, "System JSON")->required();
    fwd->add_option("--control", control, "one, ramp or sine");
    fwd->add_option("--solver", solver, "spectral or oracle")->check(CLI::IsMember({"spectral", "oracle"}));

    auto* resp = app.add_subcommand("response", "Response function CSV on [0, 2T]");
    add_common(resp, c);
    add_grid_flags(resp, gf);
    resp->add_option("--system", system_path, "System JSON")->required();
    resp->add_option("--noise-sigma", sigma, "Additive Gaussian noise on r");
    resp->add_option("--seed", noise_seed, "Noise seed");

    auto* rec = app.add_subcommand("reconstruct", "Recover a system from a response CSV");
    add_common(rec, c);
    add_solver_flags(rec, sol, true);
    rec->add_option("--input", input, "Response CSV")->required();
    rec->add_option("--kind", kind_flag, "Override the kind in the CSV metadata");
    rec->add_option("--n", sol.n_target, "System size for moments / variational");
    rec->add_option("--system-out", system_out, "Write the first recovered system here");

    auto* chr = app.add_subcommand("characterize", "Admissibility report for a response CSV");
    add_common(chr, c);
    add_solver_flags(chr, sol, false);
    chr->add_option("--input", input, "Response CSV")->required();
    chr->add_option("--kind", kind_flag, "Override the kind in the CSV metadata");
    chr->add_option("--certify-tol", certify_tol, "Also reconstruct and re-synthesize to this sup-norm");

    auto* rt = app.add_subcommand("roundtrip", "generate, response, reconstruct, compare");
    add_common(rt, c);
    add_system_flags(rt, sf);
    add_grid_flags(rt, gf);
    add_solver_flags(rt, sol, true);
    rt->add_option("--noise-sigma", sigma, "Additive Gaussian noise on r");
    rt->add_option("--tol", tol, "Pass threshold on the max relative error");

    auto* cmp = app.add_subcommand("compare", "All methods on one seeded Jacobi system");
    add_common(cmp, c);
    add_system_flags(cmp, sf);
    add_grid_flags(cmp, gf);
    add_solver_flags(cmp, sol, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) return cmd_generate(c, sf);
        if (*fwd) return cmd_forward(c, system_path, gf, control, solver);
        if (*resp) return cmd_response(c, system_path, gf, sigma, noise_seed);
        if (*rec) return cmd_reconstruct(c, input, kind_flag, sol, system_out);
        if (*chr) return cmd_characterize(c, input, kind_flag, sol, certify_tol);
        if (*rt) return cmd_roundtrip(c, sf, gf, sol, sigma, tol);
        if (*cmp) return cmd_compare(c, sf, gf, sol);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::InvalidInput:
        case ErrorCode::ParseError:
        case ErrorCode::GridMismatch:
        case ErrorCode::InsufficientHorizon:
        case ErrorCode::WrongKind:
            return kInputError;
        default:
            return kFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
