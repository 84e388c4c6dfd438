#include "bcinv/io.hpp"
#include "bcinv/error.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace bcinv {

using nlohmann::json;

json to_json_array(const Vec& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_double(x));
    return a;
}

json to_json(const JacobiSystem& s) { return json{{"kind", "jacobi"}, {"a", to_json_array(s.offdiag)}, {"b", to_json_array(s.diag)}}; }

json to_json(const StieltjesString& s)
{
    return json{{"kind", "string"}, {"lengths", to_json_array(s.lengths)}, {"masses", to_json_array(s.masses)}};
}

json to_json(const System& s)
{
    return std::visit([](const auto& x) { return to_json(x); }, s);
}

json to_json(const SpectralData& sd)
{
    return json{{"kind", kind_name(sd.kind)},
                {"lambda", to_json_array(sd.lambdas)},
                {"rho", to_json_array(sd.rhos)},
                {"scale", to_double(sd.scale)}};
}

json to_json(const CharacterizationReport& r)
{
    json f = json::array();
    for (auto x : r.failures) f.push_back(failure_name(x));
    json j{{"admissible", r.admissible},
           {"detected_n", r.detected_n},
           {"failures", f},
           {"notes", r.notes},
           {"singular_values", to_json_array(r.singular_values)},
           {"fitted_weights", to_json_array(r.fitted_weights)},
           {"fit_residual", to_double(r.fit_residual)},
           {"normalization_sum", to_double(r.normalization_sum)},
           {"psd_defect", to_double(r.psd_defect)},
           {"odd_defect", to_double(r.odd_defect)}};
    j["fitted_spectral"] = r.fitted_spectral ? to_json(*r.fitted_spectral) : json();
    j["roundtrip_error"] = r.roundtrip_error ? json(to_double(*r.roundtrip_error)) : json();
    return j;
}

json to_json(const KreinDiagnostics& d)
{
    return json{{"detected_rank", d.detected_rank},
                {"singular_values", to_json_array(d.singular_values)},
                {"first_form", to_double(d.first_form)},
                {"orthogonality_error", to_double(d.orthogonality_error)},
                {"symmetry_error", to_double(d.symmetry_error)},
                {"termination_residual", to_double(d.termination_residual)},
                {"stopped_by_rank", d.stopped_by_rank},
                {"residual_history", to_json_array(d.residual_history)}};
}

json to_json(const MethodComparison& mc, bool timings)
{
    json methods = json::array();
    for (const auto& m : mc.methods) {
        json e{{"name", m.name}};
        e["recovered"] = m.recovered ? to_json(*m.recovered) : json();
        e["spectral"] = m.spectral ? to_json(*m.spectral) : json();
        e["max_rel_error"] = m.recovered ? json(to_double(m.max_rel_error)) : json();
        e["error"] = m.error.empty() ? json() : json(m.error);
        if (timings) e["wall_seconds"] = m.wall_seconds;
        methods.push_back(e);
    }
    return json{{"truth", to_json(mc.truth)},
                {"grid", {{"T", to_double(mc.grid.horizon)}, {"n_t", mc.grid.steps}}},
                {"methods", methods},
                {"characterization", to_json(mc.characterization)}};
}

namespace {

Vec read_array(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array()) throw Error(ErrorCode::ParseError, std::string("missing array '") + key + "'");
    Vec v;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string("non-numeric entry in '") + key + "'");
        v.push_back(Real(x.get<double>()));
    }
    return v;
}

std::string read_kind(const json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw Error(ErrorCode::ParseError, "missing 'kind'");
    return j.at("kind").get<std::string>();
}

} // namespace

System system_from_json(const json& j)
{
    std::string kind = read_kind(j);
    if (kind == "jacobi") {
        Vec a = j.contains("a") ? read_array(j, "a") : Vec{};
        return JacobiSystem(a, read_array(j, "b"));
    }
    if (kind == "string") return StieltjesString(read_array(j, "lengths"), read_array(j, "masses"));
    throw Error(ErrorCode::ParseError, "unknown kind '" + kind + "'");
}

SpectralData spectral_from_json(const json& j)
{
    std::string kind = read_kind(j);
    SpectralData sd;
    if (kind == "jacobi")
        sd.kind = SystemKind::Jacobi;
    else if (kind == "string")
        sd.kind = SystemKind::String;
    else
        throw Error(ErrorCode::ParseError, "unknown kind '" + kind + "'");
    sd.lambdas = read_array(j, "lambda");
    sd.rhos = read_array(j, "rho");
    sd.scale = j.contains("scale") ? Real(j.at("scale").get<double>()) : Real(1);
    sd.validate();
    return sd;
}

void write_signal_csv(std::ostream& os, const SampledSignal& s, const std::string& comment)
{
    if (!comment.empty()) os << "# " << comment << "\n";
    os << "t,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        os << format_real(s.grid.point(i)) << ',' << format_real(s.values[i]) << '\n';
}

CsvSignal read_signal_csv(std::istream& is)
{
    CsvSignal out;
    std::string line;
    bool header = false;
    Vec t, v;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::stringstream ss(line.substr(1));
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) continue;
                auto trim = [](std::string x) {
                    auto b = x.find_first_not_of(' ');
                    auto e = x.find_last_not_of(' ');
                    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
                };
                out.meta[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
            }
            continue;
        }
        if (!header) {
            if (line.rfind("t,", 0) != 0) throw Error(ErrorCode::ParseError, "expected header 't,value'");
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "malformed row: " + line);
        t.push_back(parse_real(std::string_view(line).substr(0, comma)));
        v.push_back(parse_real(std::string_view(line).substr(comma + 1)));
    }
    if (t.size() < 2) throw Error(ErrorCode::ParseError, "signal needs at least two rows");
    const std::size_t n = t.size() - 1;
    TimeGrid g(t.back(), n);
    const Real h = g.step();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (abs(t[i] - g.point(i)) > Real(1e-9) * h) throw Error(ErrorCode::ParseError, "time column is not uniform from 0");
    out.signal = SampledSignal(g, std::move(v));
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr)
{
    os << "t";
    for (std::size_t k = 0; k < tr.states.cols(); ++k) os << ",u" << (k + 1);
    os << "\n";
    for (std::size_t i = 0; i < tr.states.rows(); ++i) {
        os << format_real(tr.grid.point(i));
        for (std::size_t k = 0; k < tr.states.cols(); ++k) os << ',' << format_real(tr.states(i, k));
        os << '\n';
    }
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& k)
{
    os << "i,j,value\n";
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j) os << i << ',' << j << ',' << format_real(k.entry(i, j)) << '\n';
}

} // namespace bcinv
