#ifndef SK_RATIONAL_HPP
#define SK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sk {

// Exact arithmetic throughout the symbolic core. cpp_rational keeps values
// in lowest terms with a positive denominator, which is exactly the
// normalization we need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStructure : std::runtime_error {
    int rank;
    InvalidStructure(const std::string& msg, int r) : std::runtime_error(msg), rank(r) {}
};

struct OperationCancelled : std::runtime_error {
    OperationCancelled() : std::runtime_error("operation cancelled") {}
};

// Cooperative cancellation for long symbolic reductions.
struct CancelToken {
    bool cancelled = false;
    void check() const {
        if (cancelled) throw OperationCancelled{};
    }
};

inline void check_cancel(const CancelToken* tok) {
    if (tok) tok->check();
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p/q" or "n". Throws on malformed input.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw DomainError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Int(std::string(s)));
        Int num(std::string(s.substr(0, slash)));
        Int den(std::string(s.substr(slash + 1)));
        if (den == 0) throw DomainError("zero denominator in rational literal");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw DomainError("bad rational literal '" + std::string(s) + "': " + e.what());
    }
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

// True when q is the square of a rational (used for discriminant certificates).
inline bool is_rational_square(const Rational& q) {
    if (q < 0) return false;
    Int n = numerator(q), d = denominator(q);
    Int sn = sqrt(n), sd = sqrt(d);
    return sn * sn == n && sd * sd == d;
}

}  // namespace sk

#endif
