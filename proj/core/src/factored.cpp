#include "sk/factored.hpp"

#include <sstream>

namespace sk {

namespace {

// Canonical factor: primitive with positive leading coefficient. Returns the
// scalar s with input = s * canonical.
std::pair<MPoly, Rational> canonical_factor(const MPoly& f) {
    if (f.is_zero()) throw DomainError("zero denominator factor");
    Rational c = f.content_signed();
    return {f.scaled(Rational(1) / c), c};
}

}  // namespace

FactoredRational::FactoredRational(MPoly num, std::map<MPoly, int> den) : num_(std::move(num)) {
    Rational scale = 1;
    for (auto& [f, e] : den) {
        if (e == 0) continue;
        if (e < 0) throw DomainError("negative multiplicity in denominator");
        auto [cf, s] = canonical_factor(f);
        if (cf.is_constant()) {
            Rational c = cf.constant_value() * s;
            for (int i = 0; i < e; ++i) scale /= c;
            continue;
        }
        Rational sp = 1;
        for (int i = 0; i < e; ++i) sp *= s;
        scale /= sp;
        den_[cf] += e;
    }
    num_ = num_.scaled(scale);
    if (num_.is_zero()) den_.clear();
}

FactoredRational FactoredRational::from_unirational(const UniRational& u) {
    MPoly num;
    const VarId v = u.var();
    for (int i = 0; i <= u.num().degree(); ++i) {
        MPoly t = MPoly::var(v).pow(i).scaled(u.num().coeff(i));
        num += t;
    }
    std::map<MPoly, int> den;
    for (const auto& [f, e] : u.den()) den[MPoly::linear(f.a, f.b, v)] += e;
    return FactoredRational(std::move(num), std::move(den));
}

FactoredRational FactoredRational::operator+(const FactoredRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::map<MPoly, int> common = den_;
    for (const auto& [f, e] : o.den_) {
        auto it = common.find(f);
        if (it == common.end())
            common[f] = e;
        else
            it->second = std::max(it->second, e);
    }
    auto lift = [&](const FactoredRational& x) {
        MPoly n = x.num_;
        for (const auto& [f, e] : common) {
            auto it = x.den_.find(f);
            int have = it == x.den_.end() ? 0 : it->second;
            if (e > have) n *= f.pow(e - have);
        }
        return n;
    };
    FactoredRational r;
    r.num_ = lift(*this) + lift(o);
    if (!r.num_.is_zero()) r.den_ = std::move(common);
    return r.reduced();
}

FactoredRational FactoredRational::operator-(const FactoredRational& o) const { return *this + (-o); }

FactoredRational FactoredRational::operator-() const {
    FactoredRational r = *this;
    r.num_ = -r.num_;
    return r;
}

FactoredRational FactoredRational::operator*(const FactoredRational& o) const {
    FactoredRational r;
    r.num_ = num_ * o.num_;
    if (r.num_.is_zero()) return r;
    r.den_ = den_;
    for (const auto& [f, e] : o.den_) r.den_[f] += e;
    return r.reduced();
}

FactoredRational FactoredRational::scaled(const Rational& c) const {
    FactoredRational r;
    r.num_ = num_.scaled(c);
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
}

FactoredRational FactoredRational::mul_factor(const MPoly& factor, int power) const {
    if (power == 0 || is_zero()) return *this;
    auto [cf, s] = canonical_factor(factor);
    FactoredRational r = *this;
    Rational sp = 1;
    for (int i = 0; i < std::abs(power); ++i) sp *= s;
    if (cf.is_constant()) {
        Rational c = cf.constant_value();
        Rational cp = 1;
        for (int i = 0; i < std::abs(power); ++i) cp *= c;
        sp *= cp;
        r.num_ = power > 0 ? r.num_.scaled(sp) : r.num_.scaled(Rational(1) / sp);
        return r;
    }
    r.num_ = power > 0 ? r.num_.scaled(sp) : r.num_.scaled(Rational(1) / sp);
    int& e = r.den_[cf];
    e -= power;  // multiplying by factor^power lowers the denominator power
    if (e < 0) {
        r.num_ *= cf.pow(-e);
        e = 0;
    }
    if (e == 0) r.den_.erase(cf);
    return r.reduced();
}

FactoredRational FactoredRational::derivative(VarId v) const {
    if (is_zero()) return *this;
    // d(N / prod F^e) = [N' prod F - N sum e_i F_i' prod_{j != i} F_j] / prod F^{e+1}
    MPoly prod_all = MPoly::constant(1);
    for (const auto& [f, e] : den_) {
        (void)e;
        prod_all *= f;
    }
    MPoly acc = num_.derivative(v) * prod_all;
    for (const auto& [fi, ei] : den_) {
        MPoly dfi = fi.derivative(v);
        if (dfi.is_zero()) continue;
        MPoly rest = dfi.scaled(ei);
        for (const auto& [fj, ej] : den_) {
            (void)ej;
            if (!(fj == fi)) rest *= fj;
        }
        acc -= num_ * rest;
    }
    FactoredRational r;
    r.num_ = std::move(acc);
    if (r.num_.is_zero()) return r;
    r.den_ = den_;
    for (auto& [f, e] : r.den_) ++e;
    return r.reduced();
}

FactoredRational FactoredRational::reduced() const {
    FactoredRational r = *this;
    if (r.num_.is_zero()) {
        r.den_.clear();
        return r;
    }
    for (auto it = r.den_.begin(); it != r.den_.end();) {
        bool erased = false;
        while (it->second > 0) {
            auto q = r.num_.divide_exact(it->first);
            if (!q) break;
            r.num_ = std::move(*q);
            if (--it->second == 0) {
                it = r.den_.erase(it);
                erased = true;
                break;
            }
        }
        if (!erased) ++it;
    }
    return r;
}

Rational FactoredRational::eval(const std::map<VarId, Rational>& point) const {
    Rational d = 1;
    for (const auto& [f, e] : den_) {
        Rational v = f.eval(point);
        if (v == 0) throw DomainError("denominator factor vanishes at point: " + f.str());
        for (int i = 0; i < e; ++i) d *= v;
    }
    return num_.eval(point) / d;
}

double FactoredRational::eval_double(const std::map<VarId, double>& point) const {
    double d = 1;
    for (const auto& [f, e] : den_) {
        double v = f.eval_double(point);
        for (int i = 0; i < e; ++i) d *= v;
    }
    return num_.eval_double(point) / d;
}

MPoly FactoredRational::den_expanded() const {
    MPoly d = MPoly::constant(1);
    for (const auto& [f, e] : den_) d *= f.pow(e);
    return d;
}

bool FactoredRational::equals(const FactoredRational& o) const {
    return (num_ * o.den_expanded() - o.num_ * den_expanded()).is_zero();
}

std::string FactoredRational::str() const {
    std::ostringstream os;
    os << "(" << num_.str() << ")";
    for (const auto& [f, e] : den_) {
        os << " / (" << f.str() << ")";
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

}  // namespace sk
