#include "sk/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sk {

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else if (b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

// a / b when b divides a, else nullopt.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& [v, e] : b) {
        while (i < a.size() && a[i].first < v) out.push_back(a[i++]);
        if (i >= a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
        if (a[i].second > e) out.emplace_back(v, a[i].second - e);
        ++i;
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    return out;
}

}  // namespace

MPoly MPoly::constant(const Rational& c) {
    MPoly p;
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

MPoly MPoly::var(VarId v) {
    MPoly p;
    p.terms_[Monomial{{v, 1}}] = 1;
    return p;
}

MPoly MPoly::linear(const Rational& a, const Rational& b, VarId v) {
    MPoly p = constant(a);
    if (b != 0) p.terms_[Monomial{{v, 1}}] = b;
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw DomainError("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

void MPoly::add_term(Monomial mono, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(std::move(mono), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    r += o;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    r -= o;
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (const auto& [mono, c] : terms_) r.terms_[mono] = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r;
    if (terms_.empty() || o.terms_.empty()) return r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly MPoly::scaled(const Rational& c) const {
    MPoly r;
    if (c == 0) return r;
    for (const auto& [mono, k] : terms_) r.terms_[mono] = k * c;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw DomainError("negative exponent in MPoly::pow");
    MPoly acc = constant(1);
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

MPoly MPoly::derivative(VarId v) const {
    MPoly r;
    for (const auto& [mono, c] : terms_) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i].first != v) continue;
            Monomial m = mono;
            int e = m[i].second;
            if (e == 1)
                m.erase(m.begin() + static_cast<long>(i));
            else
                m[i].second = e - 1;
            r.add_term(std::move(m), c * e);
            break;
        }
    }
    return r;
}

int MPoly::degree(VarId v) const {
    int d = 0;
    for (const auto& [mono, c] : terms_) {
        (void)c;
        for (const auto& [vv, e] : mono)
            if (vv == v) d = std::max(d, e);
    }
    return d;
}

int MPoly::total_degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms_) {
        (void)c;
        int t = 0;
        for (const auto& [vv, e] : mono) {
            (void)vv;
            t += e;
        }
        d = std::max(d, t);
    }
    return d;
}

MPoly MPoly::coeff_of_power(VarId v, int k) const {
    MPoly r;
    for (const auto& [mono, c] : terms_) {
        int e = 0;
        Monomial rest;
        for (const auto& [vv, ee] : mono) {
            if (vv == v)
                e = ee;
            else
                rest.emplace_back(vv, ee);
        }
        if (e == k) r.add_term(std::move(rest), c);
    }
    return r;
}

Rational MPoly::coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MPoly::eval(const std::map<VarId, Rational>& point) const {
    Rational acc = 0;
    for (const auto& [mono, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : mono) {
            auto it = point.find(v);
            if (it == point.end()) throw DomainError("evaluate: unassigned variable " + sk::to_string(v));
            Rational p = 1;
            for (int i = 0; i < e; ++i) p *= it->second;
            t *= p;
        }
        acc += t;
    }
    return acc;
}

double MPoly::eval_double(const std::map<VarId, double>& point) const {
    double acc = 0;
    for (const auto& [mono, c] : terms_) {
        double t = to_double(c);
        for (const auto& [v, e] : mono) {
            auto it = point.find(v);
            if (it == point.end()) throw DomainError("evaluate: unassigned variable " + sk::to_string(v));
            for (int i = 0; i < e; ++i) t *= it->second;
        }
        acc += t;
    }
    return acc;
}

MPoly MPoly::substitute(VarId v, const MPoly& replacement) const {
    MPoly r;
    for (const auto& [mono, c] : terms_) {
        int e = 0;
        Monomial rest;
        for (const auto& [vv, ee] : mono) {
            if (vv == v)
                e = ee;
            else
                rest.emplace_back(vv, ee);
        }
        MPoly t;
        t.add_term(std::move(rest), c);
        if (e > 0) t *= replacement.pow(e);
        r += t;
    }
    return r;
}

MPoly MPoly::rename(const std::map<VarId, VarId>& renaming) const {
    MPoly r;
    for (const auto& [mono, c] : terms_) {
        // Colliding renames must merge exponents.
        std::map<VarId, int> merged;
        for (const auto& [v, e] : mono) {
            auto it = renaming.find(v);
            merged[it == renaming.end() ? v : it->second] += e;
        }
        Monomial m(merged.begin(), merged.end());
        r.add_term(std::move(m), c);
    }
    return r;
}

std::vector<VarId> MPoly::variables() const {
    std::vector<VarId> vars;
    for (const auto& [mono, c] : terms_) {
        (void)c;
        for (const auto& [v, e] : mono) {
            (void)e;
            if (!std::binary_search(vars.begin(), vars.end(), v)) {
                vars.insert(std::upper_bound(vars.begin(), vars.end(), v), v);
            }
        }
    }
    return vars;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("division by zero polynomial");
    MPoly rem = *this;
    MPoly quot;
    // Leading term = largest monomial in the canonical order.
    const auto& dlead = *divisor.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms_.rbegin();
        auto m = mono_div(rlead.first, dlead.first);
        if (!m) return std::nullopt;
        Rational c = rlead.second / dlead.second;
        MPoly t;
        t.add_term(std::move(*m), c);
        quot += t;
        rem -= t * divisor;
    }
    return quot;
}

Rational MPoly::content_signed() const {
    if (terms_.empty()) return 0;
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [mono, c] : terms_) {
        (void)mono;
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    Rational content(num_gcd, den_lcm);
    // Sign of leading coefficient fixes the normalization.
    if (terms_.rbegin()->second < 0) content = -content;
    return content;
}

MPoly MPoly::primitive_part() const {
    if (terms_.empty()) return {};
    return scaled(Rational(1) / content_signed());
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [mono, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << sk::to_string(c);
        for (const auto& [v, e] : mono) {
            os << "*" << sk::to_string(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

MPoly elementary_symmetric(int r, const std::vector<VarId>& vars) {
    if (r < 0) throw DomainError("elementary_symmetric: negative index");
    const int n = static_cast<int>(vars.size());
    if (r > n) return {};
    // Row of the dynamic programme: e_0..e_r over a growing variable set.
    std::vector<MPoly> e(static_cast<std::size_t>(r) + 1);
    e[0] = MPoly::constant(1);
    for (int i = 0; i < n; ++i) {
        for (int j = std::min(r, i + 1); j >= 1; --j) {
            e[j] += e[j - 1] * MPoly::var(vars[static_cast<std::size_t>(i)]);
        }
    }
    return e[static_cast<std::size_t>(r)];
}

MPoly complete_homogeneous(int p, const std::vector<VarId>& vars) {
    if (p < 0) throw DomainError("complete_homogeneous: negative index");
    if (p == 0) return MPoly::constant(1);
    if (vars.empty()) return {};
    // h_p over k variables: h_p(x_1..x_k) = sum_j x_k^j h_{p-j}(x_1..x_{k-1})
    std::vector<MPoly> h(static_cast<std::size_t>(p) + 1);
    h[0] = MPoly::constant(1);
    for (int j = 1; j <= p; ++j) h[j] = MPoly::var(vars[0]) * h[j - 1];
    for (std::size_t i = 1; i < vars.size(); ++i) {
        MPoly x = MPoly::var(vars[i]);
        for (int j = 1; j <= p; ++j) h[j] += x * h[j - 1];
    }
    return h[static_cast<std::size_t>(p)];
}

}  // namespace sk
