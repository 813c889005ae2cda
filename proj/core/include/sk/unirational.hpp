#ifndef SK_UNIRATIONAL_HPP
#define SK_UNIRATIONAL_HPP

#include <optional>
#include <vector>

#include "sk/rational.hpp"
#include "sk/varid.hpp"

namespace sk {

// Dense univariate polynomial; c[i] is the coefficient of x^i, trailing
// zeros trimmed.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly constant(const Rational& c);
    static UniPoly monomial(int k, const Rational& c = 1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const Rational& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly derivative() const;
    UniPoly antiderivative() const;  // constant of integration 0
    Rational eval(const Rational& x) const;
    UniPoly pow(int e) const;

    // Quotient and remainder of division by (a + b x); b != 0.
    std::pair<UniPoly, Rational> divide_linear(const Rational& a, const Rational& b) const;

    // Coefficients u_t with p(x) = sum_t u_t (a + b x)^t; requires b != 0.
    std::vector<Rational> expand_in_linear_basis(const Rational& a, const Rational& b) const;

  private:
    void trim();
    std::vector<Rational> c_;
};

// Linear factor a + b x, normalized: integer entries with gcd 1 and first
// nonzero entry positive. normalize() returns the scalar s with
// (a,b) = s * (a',b').
struct LinFactor {
    Rational a, b;
    bool operator==(const LinFactor& o) const { return a == o.a && b == o.b; }
    bool operator<(const LinFactor& o) const { return a < o.a || (a == o.a && b < o.b); }
    Rational eval(const Rational& x) const { return a + b * x; }
    bool is_constant() const { return b == 0; }
    std::optional<Rational> root() const;  // -a/b when b != 0
};

// Returns the normalized factor and the scalar s such that
// a + b x = s * (a' + b' x).
std::pair<LinFactor, Rational> normalize_linear(const Rational& a, const Rational& b);

// Univariate rational function N(x) / prod_f (a_f + b_f x)^{e_f} in a named
// variable. Denominator factors are normalized, sorted, and never share a
// rational root with the numerator.
class UniRational {
  public:
    UniRational() = default;
    UniRational(VarId var, UniPoly num, std::vector<std::pair<LinFactor, int>> den = {});
    static UniRational polynomial(VarId var, UniPoly num) { return UniRational(var, std::move(num)); }

    VarId var() const { return var_; }
    const UniPoly& num() const { return num_; }
    const std::vector<std::pair<LinFactor, int>>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }

    UniRational operator+(const UniRational& o) const;
    UniRational operator-(const UniRational& o) const;
    UniRational operator*(const UniRational& o) const;
    UniRational scaled(const Rational& s) const;
    bool operator==(const UniRational& o) const;

    UniRational derivative() const;
    Rational eval(const Rational& x) const;  // DomainError on vanishing factor
    double eval_double(double x) const;

    // Substitute x = (b0 + d0 y) / (a0 + c0 y) and clear: returns the result
    // as a rational function of the (renamed) variable y.
    UniRational mobius_substitute(VarId y, const Rational& a0, const Rational& b0, const Rational& c0,
                                  const Rational& d0) const;

  private:
    void normalize();
    VarId var_{};
    UniPoly num_;
    std::vector<std::pair<LinFactor, int>> den_;
};

struct PartialFractions {
    UniPoly poly;  // polynomial part
    struct Term {
        LinFactor factor;
        int power = 1;
        Rational coeff;
    };
    std::vector<Term> terms;
};

// Exact partial fraction decomposition; recombination reproduces the input.
PartialFractions partial_fraction(const UniRational& f);
UniRational recombine(VarId var, const PartialFractions& pf);

// A(x) = (a+bx)^{m+1} / prod_j F_j^{d_j} * II[ Y(x) * prod_j F_j^{d_j - 1} / (a+bx)^{m+3} ]
//        + (nu0 + nu1 x) (a+bx)^{m+1} / prod_j F_j^{d_j},
// the closed form of the double integral; for b = 0 the twist factor drops
// out (plain double antiderivative). Throws DomainError when the integral
// has a logarithmic term (residue at order 1 or 2).
UniRational profile_from_upsilon(VarId var, const UniPoly& upsilon, const Rational& a, const Rational& b, int m,
                                 const std::vector<std::pair<LinFactor, int>>& o_factors, const Rational& nu0,
                                 const Rational& nu1);

}  // namespace sk

#endif
