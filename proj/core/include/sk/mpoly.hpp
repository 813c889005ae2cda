#ifndef SK_MPOLY_HPP
#define SK_MPOLY_HPP

#include <map>
#include <optional>
#include <vector>

#include "sk/rational.hpp"
#include "sk/varid.hpp"

namespace sk {

// A monomial is a sorted list of (variable, exponent>0) pairs.
using Monomial = std::vector<std::pair<VarId, int>>;

// Lexicographic monomial order with earlier variables dominant: at the first
// variable (in VarId order) where the exponents differ, the larger exponent
// wins. A genuine monomial order, so polynomial division terminates.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (i < a.size() && (j >= b.size() || a[i].first < b[j].first)) return false;
            if (j < b.size() && (i >= a.size() || b[j].first < a[i].first)) return true;
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        }
        return false;
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in a map under the canonical monomial order, no zero
// coefficients are stored.
class MPoly {
  public:
    MPoly() = default;
    static MPoly constant(const Rational& c);
    static MPoly var(VarId v);
    static MPoly linear(const Rational& a, const Rational& b, VarId v);  // a + b*x_v

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator*=(const MPoly& o);
    MPoly scaled(const Rational& c) const;
    MPoly pow(int e) const;  // e >= 0, throws on negative

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    // Canonical order for use as a map key (denominator factor sets).
    bool operator<(const MPoly& o) const { return terms_ < o.terms_; }

    MPoly derivative(VarId v) const;
    int degree(VarId v) const;   // -1 convention not used: zero poly -> 0
    int total_degree() const;    // zero poly -> 0
    MPoly coeff_of_power(VarId v, int k) const;  // coefficient polynomial of x_v^k
    Rational coeff(const Monomial& mono) const;

    Rational eval(const std::map<VarId, Rational>& point) const;
    double eval_double(const std::map<VarId, double>& point) const;
    MPoly substitute(VarId v, const MPoly& replacement) const;
    MPoly rename(const std::map<VarId, VarId>& renaming) const;

    std::vector<VarId> variables() const;

    // Exact division; returns std::nullopt when divisor does not divide
    // exactly. Divisor must be nonzero.
    std::optional<MPoly> divide_exact(const MPoly& divisor) const;

    // Integer content (gcd of numerators over lcm of denominators) with the
    // sign of the leading coefficient; primitive_part() = *this / content().
    Rational content_signed() const;
    MPoly primitive_part() const;

    void add_term(Monomial mono, const Rational& c);
    std::string str() const;  // human-readable, deterministic

    // Hidden friend: keeps the mixed operator out of unqualified lookup so
    // unrelated types never trigger conversion checks against Rational.
    friend MPoly operator*(const Rational& c, const MPoly& p) { return p.scaled(c); }

  private:
    std::map<Monomial, Rational, MonomialLess> terms_;
};

// sigma_r in the given variables; sigma_0 = 1, zero when r > |vars|.
// Throws on r < 0.
MPoly elementary_symmetric(int r, const std::vector<VarId>& vars);

// h_p, complete homogeneous; h_0 = 1. Throws on p < 0.
MPoly complete_homogeneous(int p, const std::vector<VarId>& vars);

}  // namespace sk

#endif
