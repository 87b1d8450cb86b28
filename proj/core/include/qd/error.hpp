#pragma once

#include <stdexcept>
#include <string>

namespace qd {

enum class errc {
    zero_polynomial,
    bad_prime,
    not_smooth,
    wrong_degree,
    zero_form,
    quotient_not_genus1,
    point_not_on_curve,
    point_not_on_d,
    mixed_curves,
    unclassifiable_torsion,
    rank_positive,
    bound_violated,
    parse_error,
    io_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::bad_prime: return "BadPrime";
        case errc::not_smooth: return "NotSmooth";
        case errc::wrong_degree: return "WrongDegree";
        case errc::zero_form: return "ZeroForm";
        case errc::quotient_not_genus1: return "QuotientNotGenus1";
        case errc::point_not_on_curve: return "PointNotOnCurve";
        case errc::point_not_on_d: return "PointNotOnD";
        case errc::mixed_curves: return "MixedCurves";
        case errc::unclassifiable_torsion: return "UnclassifiableTorsion";
        case errc::rank_positive: return "RankPositive";
        case errc::bound_violated: return "BoundViolated";
        case errc::parse_error: return "ParseError";
        case errc::io_error: return "IOError";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace qd
