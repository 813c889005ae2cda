#include "sk/unirational.hpp"

#include <algorithm>
#include <map>

namespace sk {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(int k, const Rational& c) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
    v.back() = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::scaled(const Rational& s) const {
    if (s == 0) return {};
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= s;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<int>(i);
    return UniPoly(std::move(v));
}

UniPoly UniPoly::antiderivative() const {
    if (c_.empty()) return {};
    std::vector<Rational> v(c_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / static_cast<int>(i + 1);
    return UniPoly(std::move(v));
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::pow(int e) const {
    if (e < 0) throw DomainError("negative exponent in UniPoly::pow");
    UniPoly acc = UniPoly::constant(1);
    UniPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

std::pair<UniPoly, Rational> UniPoly::divide_linear(const Rational& a, const Rational& b) const {
    if (b == 0) throw DomainError("divide_linear: degenerate factor");
    // p(x) = q(x)(a + bx) + r, synthetic division at root -a/b.
    if (c_.empty()) return {UniPoly{}, Rational(0)};
    std::vector<Rational> q(c_.size() - 1, Rational(0));
    Rational carry = 0;
    const Rational root = -a / b;
    for (std::size_t i = c_.size(); i-- > 1;) {
        carry = c_[i] + carry * root;
        q[i - 1] = carry / b;
        // loop invariant: p = (a+bx)*q_partial + lower-order remainder
    }
    Rational r = c_[0] + carry * root;
    return {UniPoly(std::move(q)), r};
}

std::vector<Rational> UniPoly::expand_in_linear_basis(const Rational& a, const Rational& b) const {
    std::vector<Rational> out;
    UniPoly rest = *this;
    while (!rest.is_zero()) {
        auto [q, r] = rest.divide_linear(a, b);
        out.push_back(r);
        rest = std::move(q);
    }
    return out;
}

std::optional<Rational> LinFactor::root() const {
    if (b == 0) return std::nullopt;
    return -a / b;
}

std::pair<LinFactor, Rational> normalize_linear(const Rational& a, const Rational& b) {
    if (a == 0 && b == 0) throw DomainError("zero linear factor");
    Int l = lcm(denominator(a), denominator(b));
    Int na = numerator(a) * (l / denominator(a));
    Int nb = numerator(b) * (l / denominator(b));
    Int g = gcd(na, nb);
    na /= g;
    nb /= g;
    Rational s(g, l);
    const Int& first = (na != 0) ? na : nb;
    if (first < 0) {
        na = -na;
        nb = -nb;
        s = -s;
    }
    return {LinFactor{Rational(na), Rational(nb)}, s};
}

UniRational::UniRational(VarId var, UniPoly num, std::vector<std::pair<LinFactor, int>> den)
    : var_(var), num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void UniRational::normalize() {
    // Merge duplicate factors, normalize each, sort canonically.
    std::map<LinFactor, int> merged;
    Rational scale = 1;
    for (auto& [f, e] : den_) {
        if (e < 0) throw DomainError("negative factor multiplicity");
        if (e == 0) continue;
        auto [nf, s] = normalize_linear(f.a, f.b);
        if (nf.is_constant()) {
            // constant factor folds into the numerator
            Rational c = nf.a * s;
            for (int i = 0; i < e; ++i) scale /= c;
            continue;
        }
        Rational sp = 1;
        for (int i = 0; i < e; ++i) sp *= s;
        scale /= sp;
        merged[nf] += e;
    }
    num_ = num_.scaled(scale);
    den_.clear();
    if (num_.is_zero()) return;
    for (auto& [f, e] : merged) den_.emplace_back(f, e);
    // Cancel rational roots shared with the numerator.
    for (auto& [f, e] : den_) {
        while (e > 0 && !num_.is_zero()) {
            auto [q, r] = num_.divide_linear(f.a, f.b);
            if (r != 0) break;
            num_ = std::move(q);
            --e;
        }
    }
    std::erase_if(den_, [](const auto& fe) { return fe.second == 0; });
    if (num_.is_zero()) den_.clear();
}

UniRational UniRational::operator+(const UniRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (var_ != o.var_) throw DomainError("UniRational addition across variables");
    // lcm of factor multisets
    std::map<LinFactor, int> common;
    for (const auto& [f, e] : den_) common[f] = e;
    for (const auto& [f, e] : o.den_) common[f] = std::max(common[f], e);
    UniPoly a = num_, b = o.num_;
    for (const auto& [f, e] : common) {
        auto find = [&](const std::vector<std::pair<LinFactor, int>>& den) {
            for (const auto& [g, k] : den)
                if (g == f) return k;
            return 0;
        };
        UniPoly lin({f.a, f.b});
        a = a * lin.pow(e - find(den_));
        b = b * lin.pow(e - find(o.den_));
    }
    std::vector<std::pair<LinFactor, int>> den(common.begin(), common.end());
    return UniRational(var_, a + b, std::move(den));
}

UniRational UniRational::operator-(const UniRational& o) const { return *this + o.scaled(-1); }

UniRational UniRational::operator*(const UniRational& o) const {
    const bool this_const = is_polynomial() && num_.degree() <= 0;
    const bool o_const = o.is_polynomial() && o.num_.degree() <= 0;
    if (!this_const && !o_const && var_ != o.var_) throw DomainError("UniRational product across variables");
    VarId v = this_const ? o.var_ : var_;
    std::map<LinFactor, int> merged;
    for (const auto& [f, e] : den_) merged[f] += e;
    for (const auto& [f, e] : o.den_) merged[f] += e;
    std::vector<std::pair<LinFactor, int>> den(merged.begin(), merged.end());
    return UniRational(v, num_ * o.num_, std::move(den));
}

UniRational UniRational::scaled(const Rational& s) const {
    UniRational r = *this;
    r.num_ = r.num_.scaled(s);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

bool UniRational::operator==(const UniRational& o) const {
    if (is_zero() && o.is_zero()) return true;
    return var_ == o.var_ && num_ == o.num_ && den_ == o.den_;
}

UniRational UniRational::derivative() const {
    if (is_zero()) return *this;
    // d(N / prod F^e) = [N' prod F - N sum_i e_i F_i' prod_{j!=i} F_j] / prod F^{e+1}
    UniPoly prod_all = UniPoly::constant(1);
    for (const auto& [f, e] : den_) {
        (void)e;
        prod_all = prod_all * UniPoly({f.a, f.b});
    }
    UniPoly acc = num_.derivative() * prod_all;
    for (std::size_t i = 0; i < den_.size(); ++i) {
        UniPoly rest = UniPoly::constant(den_[i].first.b).scaled(den_[i].second);
        for (std::size_t j = 0; j < den_.size(); ++j) {
            if (j == i) continue;
            rest = rest * UniPoly({den_[j].first.a, den_[j].first.b});
        }
        acc = acc - num_ * rest;
    }
    std::vector<std::pair<LinFactor, int>> den = den_;
    for (auto& [f, e] : den) ++e;
    return UniRational(var_, std::move(acc), std::move(den));
}

Rational UniRational::eval(const Rational& x) const {
    Rational d = 1;
    for (const auto& [f, e] : den_) {
        Rational v = f.eval(x);
        if (v == 0)
            throw DomainError("denominator factor " + sk::to_string(f.a) + "+" + sk::to_string(f.b) +
                              "*x vanishes at evaluation point");
        for (int i = 0; i < e; ++i) d *= v;
    }
    return num_.eval(x) / d;
}

double UniRational::eval_double(double x) const {
    double n = 0;
    for (auto it = num_.coeffs().rbegin(); it != num_.coeffs().rend(); ++it) n = n * x + to_double(*it);
    double d = 1;
    for (const auto& [f, e] : den_) {
        double v = to_double(f.a) + to_double(f.b) * x;
        for (int i = 0; i < e; ++i) d *= v;
    }
    return n / d;
}

UniRational UniRational::mobius_substitute(VarId y, const Rational& a0, const Rational& b0, const Rational& c0,
                                           const Rational& d0) const {
    if (a0 * d0 - b0 * c0 == 0) throw DomainError("singular coordinate change");
    // x = (b0 + d0 y) / (a0 + c0 y).
    const UniPoly top({b0, d0}), bot({a0, c0});
    // Numerator N(x) -> sum_i c_i top^i bot^{degN - i}
    const int dn = std::max(num_.degree(), 0);
    UniPoly n_out;
    for (int i = 0; i <= num_.degree(); ++i) {
        n_out = n_out + (top.pow(i) * bot.pow(dn - i)).scaled(num_.coeff(i));
    }
    // Each factor (a + b x) -> ((a*a0 + b*b0) + (a*c0 + b*d0) y) / bot
    std::vector<std::pair<LinFactor, int>> den_out;
    Rational scale = 1;
    int bot_power = -dn;  // numerator picked up bot^{dn}
    for (const auto& [f, e] : den_) {
        Rational na = f.a * a0 + f.b * b0;
        Rational nb = f.a * c0 + f.b * d0;
        bot_power += e;
        if (na == 0 && nb == 0) throw DomainError("degenerate factor under coordinate change");
        auto [nf, s] = normalize_linear(na, nb);
        if (nf.is_constant()) {
            Rational c = nf.a * s;
            for (int i = 0; i < e; ++i) scale /= c;
        } else {
            Rational sp = 1;
            for (int i = 0; i < e; ++i) sp *= s;
            scale /= sp;
            den_out.emplace_back(nf, e);
        }
    }
    // Account for the net power of bot = a0 + c0 y.
    if (bot_power > 0) {
        n_out = n_out * bot.pow(bot_power);
    } else if (bot_power < 0) {
        if (c0 == 0) {
            Rational ap = 1;
            for (int i = 0; i < -bot_power; ++i) ap *= a0;
            scale /= ap;
        } else {
            auto [nf, s] = normalize_linear(a0, c0);
            Rational sp = 1;
            for (int i = 0; i < -bot_power; ++i) sp *= s;
            scale /= sp;
            den_out.emplace_back(nf, -bot_power);
        }
    }
    return UniRational(y, n_out.scaled(scale), std::move(den_out));
}

PartialFractions partial_fraction(const UniRational& f) {
    PartialFractions out;
    if (f.is_zero()) return out;
    // Polynomial part by long division against the expanded denominator.
    UniPoly den_expanded = UniPoly::constant(1);
    for (const auto& [fac, e] : f.den()) den_expanded = den_expanded * UniPoly({fac.a, fac.b}).pow(e);
    UniPoly rem = f.num();
    if (rem.degree() >= den_expanded.degree() && den_expanded.degree() >= 1) {
        std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - den_expanded.degree()) + 1, Rational(0));
        while (!rem.is_zero() && rem.degree() >= den_expanded.degree()) {
            int shift = rem.degree() - den_expanded.degree();
            Rational c = rem.coeffs().back() / den_expanded.coeffs().back();
            q[static_cast<std::size_t>(shift)] = c;
            rem = rem - den_expanded * UniPoly::monomial(shift, c);
        }
        out.poly = UniPoly(std::move(q));
    } else if (f.den().empty()) {
        out.poly = rem;
        return out;
    }
    // Residues per factor via Taylor expansion of N/Q at the factor's root.
    for (std::size_t i = 0; i < f.den().size(); ++i) {
        const auto& [fac, e] = f.den()[i];
        const Rational x0 = *fac.root();
        // g = rem / (den without this factor), expanded around x0 in powers
        // of (a + b x): c_{e-t} = g_t.
        UniRational g(f.var(), rem, [&] {
            std::vector<std::pair<LinFactor, int>> rest;
            for (std::size_t j = 0; j < f.den().size(); ++j)
                if (j != i) rest.push_back(f.den()[j]);
            return rest;
        }());
        Rational fact = 1;
        UniRational gd = g;
        for (int t = 0; t < e; ++t) {
            if (t > 0) {
                gd = gd.derivative();
                fact *= t;
            }
            Rational bt = 1;
            for (int u = 0; u < t; ++u) bt *= fac.b;
            Rational coeff = gd.eval(x0) / (fact * bt);
            if (coeff != 0) out.terms.push_back({fac, e - t, coeff});
        }
    }
    return out;
}

UniRational recombine(VarId var, const PartialFractions& pf) {
    UniRational acc = UniRational::polynomial(var, pf.poly);
    for (const auto& t : pf.terms) {
        acc = acc + UniRational(var, UniPoly::constant(t.coeff), {{t.factor, t.power}});
    }
    return acc;
}

UniRational profile_from_upsilon(VarId var, const UniPoly& upsilon, const Rational& a, const Rational& b, int m,
                                 const std::vector<std::pair<LinFactor, int>>& o_factors, const Rational& nu0,
                                 const Rational& nu1) {
    // g = Y * prod_j F_j^{d_j - 1}
    UniPoly g = upsilon;
    for (const auto& [f, d] : o_factors) {
        if (d < 1) throw DomainError("factor multiplicity must be >= 1");
        g = g * UniPoly({f.a, f.b}).pow(d - 1);
    }
    UniPoly main_part;
    if (b == 0) {
        // Untwisted: plain double antiderivative. Callers pass (a,b) = (1,0);
        // any other scale of a constant twist direction folds into Y.
        main_part = g.antiderivative().antiderivative();
    } else {
        // Expand g in powers of (a + b x); each power t integrates twice
        // against (a+bx)^{t-m-3} and the (a+bx)^{m+1} prefactor returns a
        // polynomial term of degree t.
        auto u = g.expand_in_linear_basis(a, b);
        for (std::size_t t = 0; t < u.size(); ++t) {
            if (u[t] == 0) continue;
            int e = static_cast<int>(t) - m - 3;
            if (e == -1 || e == -2)
                throw DomainError("double integral has a logarithmic term (degree of the numerator too large)");
            Rational denom = Rational(e + 1) * Rational(e + 2) * b * b;
            main_part = main_part + UniPoly({a, b}).pow(static_cast<int>(t)).scaled(u[t] / denom);
        }
    }
    UniPoly affine({nu0, nu1});
    UniPoly twist_power = (b == 0) ? UniPoly::constant(1) : UniPoly({a, b}).pow(m + 1);
    UniPoly num = main_part + affine * twist_power;
    std::vector<std::pair<LinFactor, int>> den;
    for (const auto& [f, d] : o_factors) den.emplace_back(f, d);
    return UniRational(var, std::move(num), std::move(den));
}

}  // namespace sk
