#include "bcinv/real.hpp"
#include "bcinv/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <sstream>

namespace bcinv {

Vec to_real(const std::vector<double>& v) { return Vec(v.begin(), v.end()); }

std::vector<double> to_double(const Vec& v)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_double(x));
    return out;
}

std::string format_real(const Real& x)
{
    std::ostringstream os;
    os.precision(36);
    os << x;
    return os.str();
}

Real parse_real(std::string_view s)
{
    std::string str(s);
    try {
        size_t b = str.find_first_not_of(" \t\r\n");
        size_t e = str.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) throw std::runtime_error("empty");
        return Real(str.substr(b, e - b + 1));
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "not a number: '" + str + "'");
    }
}

Real pi() { return boost::math::constants::pi<Real>(); }

const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::InsufficientHorizon: return "InsufficientHorizon";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::IllConditionedGram: return "IllConditionedGram";
    case ErrorCode::NonPositiveA: return "NonPositiveA";
    case ErrorCode::NoTermination: return "NoTermination";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::InconsistentB: return "InconsistentB";
    case ErrorCode::IndefiniteHankel: return "IndefiniteHankel";
    case ErrorCode::SizeExhausted: return "SizeExhausted";
    case ErrorCode::DegenerateGram: return "DegenerateGram";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace bcinv
