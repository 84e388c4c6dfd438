#pragma once

#include "bcinv/characterization_suite.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <variant>

namespace bcinv {

using System = std::variant<JacobiSystem, StieltjesString>;

nlohmann::json to_json(const JacobiSystem& s);
nlohmann::json to_json(const StieltjesString& s);
nlohmann::json to_json(const System& s);
nlohmann::json to_json(const SpectralData& sd);
nlohmann::json to_json_array(const Vec& v);

nlohmann::json to_json(const CharacterizationReport& r);
nlohmann::json to_json(const KreinDiagnostics& d);
// Wall times are left out when `timings` is false (byte-stable reports).
nlohmann::json to_json(const MethodComparison& mc, bool timings = true);

System system_from_json(const nlohmann::json& j);
SpectralData spectral_from_json(const nlohmann::json& j);

struct CsvSignal {
    SampledSignal signal;
    std::map<std::string, std::string> meta; // from "# key=value,..." lines
};

// Header "t,value"; values with 36 significant digits.
void write_signal_csv(std::ostream& os, const SampledSignal& s, const std::string& comment = "");
CsvSignal read_signal_csv(std::istream& is);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_kernel_csv(std::ostream& os, const KernelMatrix& k);

} // namespace bcinv
