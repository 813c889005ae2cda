#ifndef SK_FACTORED_HPP
#define SK_FACTORED_HPP

#include <map>
#include <vector>

#include "sk/mpoly.hpp"
#include "sk/unirational.hpp"

namespace sk {

// Multivariate rational function with a factored denominator. Tracked
// factors are primitive polynomials with positive leading coefficient;
// cancellation is by trial division against the factor list only (the
// factors arising in the curvature pipeline are all known in advance).
class FactoredRational {
  public:
    FactoredRational() = default;
    explicit FactoredRational(MPoly num) : num_(std::move(num)) {}
    FactoredRational(MPoly num, std::map<MPoly, int> den);

    static FactoredRational constant(const Rational& c) { return FactoredRational(MPoly::constant(c)); }
    static FactoredRational from_unirational(const UniRational& u);

    const MPoly& num() const { return num_; }
    const std::map<MPoly, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }

    FactoredRational operator+(const FactoredRational& o) const;
    FactoredRational operator-(const FactoredRational& o) const;
    FactoredRational operator*(const FactoredRational& o) const;
    FactoredRational operator-() const;
    FactoredRational scaled(const Rational& c) const;

    // Multiply by factor^power without expanding into the numerator when the
    // factor is already tracked; power may be negative (division).
    FactoredRational mul_factor(const MPoly& factor, int power) const;

    FactoredRational derivative(VarId v) const;

    // Cancel tracked factors that divide the numerator, to maximal extent.
    FactoredRational reduced() const;

    Rational eval(const std::map<VarId, Rational>& point) const;
    double eval_double(const std::map<VarId, double>& point) const;

    // Exact equality as rational functions (cross-multiplied).
    bool equals(const FactoredRational& o) const;

    // Numerator with the full denominator expanded back in (for cross
    // multiplication and serialization checks).
    MPoly den_expanded() const;

    std::string str() const;

  private:
    MPoly num_;
    std::map<MPoly, int> den_;  // factor -> multiplicity >= 1
};

}  // namespace sk

#endif
