#include "sk/identities.hpp"

#include "sk/rng.hpp"
#include "sk/solver.hpp"
#include "sk/structure.hpp"

namespace sk {

namespace {

// Identity workspace: variables x_1..x_m live in group 1; the symbolic
// parameters a, b in group 0.
std::vector<VarId> xs(int m) {
    std::vector<VarId> v;
    for (int j = 1; j <= m; ++j) v.push_back(VarId{1, j});
    return v;
}

const VarId kA{0, 1}, kB{0, 2};

// a + b x_j with symbolic a, b.
MPoly ab_linear(VarId x) { return MPoly::var(kA) + MPoly::var(kB) * MPoly::var(x); }

// Delta_j = prod_{s != j} (x_j - x_s).
std::vector<MPoly> delta_list(int m, int j) {
    std::vector<MPoly> out;
    for (int s = 1; s <= m; ++s) {
        if (s == j) continue;
        out.push_back(MPoly::var(VarId{1, j}) - MPoly::var(VarId{1, s}));
    }
    return out;
}

FactoredRational over_delta(int m, int j, FactoredRational term) {
    for (const auto& f : delta_list(m, j)) term = term.mul_factor(f, -1);
    return term;
}

MPoly sigma_hat(int r, int m, int j) {
    // sigma_r of the variables with x_j omitted; zero for r > m-1, one for r = 0.
    std::vector<VarId> v;
    for (int s = 1; s <= m; ++s)
        if (s != j) v.push_back(VarId{1, s});
    return elementary_symmetric(r, v);
}

bool fr_equal(const FactoredRational& lhs, const FactoredRational& rhs) { return lhs.equals(rhs); }

int geti(const std::map<std::string, int>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw DomainError("missing identity parameter '" + key + "'");
    return it->second;
}

IdentityResult check(const std::string& name, const std::map<std::string, int>& params, bool holds,
                     const std::string& detail = "") {
    IdentityResult r;
    r.holds = holds;
    r.name = name;
    r.params = params;
    if (!holds) r.detail = detail.empty() ? "sides differ" : detail;
    return r;
}

// sum_j x_j^{m-s} sigma_{r-1}(hat x_j) / Delta_j
FactoredRational vandermonde_sum(int m, int r, int power) {
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        MPoly num = sigma_hat(r - 1, m, j);
        if (power >= 0) {
            num *= MPoly::var(VarId{1, j}).pow(power);
            acc = acc + over_delta(m, j, FactoredRational(num));
        } else {
            FactoredRational t(num);
            t = t.mul_factor(MPoly::var(VarId{1, j}), power);
            acc = acc + over_delta(m, j, t);
        }
    }
    return acc.reduced();
}

IdentityResult do_pre_vandermonde(const std::map<std::string, int>& p) {
    const int m = geti(p, "m");
    // sum_r [sigma_{r-1}(hat x_i)/Delta_i] (-1)^{r-1} x_j^{m-r} = delta_ij
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            FactoredRational acc;
            for (int r = 1; r <= m; ++r) {
                MPoly num = sigma_hat(r - 1, m, i) * MPoly::var(VarId{1, j}).pow(m - r);
                if ((r - 1) % 2) num = -num;
                acc = acc + over_delta(m, i, FactoredRational(num));
            }
            FactoredRational expected = FactoredRational::constant(i == j ? 1 : 0);
            if (!fr_equal(acc, expected)) return check("pre_vandermonde", p, false);
        }
    }
    return check("pre_vandermonde", p, true);
}

IdentityResult do_vandermonde(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), r = geti(p, "r"), s = geti(p, "s");
    FactoredRational lhs = vandermonde_sum(m, r, m - s);
    Rational expect = (r == s) ? ((s - 1) % 2 ? Rational(-1) : Rational(1)) : Rational(0);
    return check("vandermonde", p, fr_equal(lhs, FactoredRational::constant(expect)));
}

IdentityResult do_higher_vandermonde(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), r = geti(p, "r"), k = geti(p, "k");
    FactoredRational lhs = vandermonde_sum(m, r, m + k);
    MPoly rhs;
    auto vars = xs(m);
    for (int s = 0; s <= k; ++s) {
        MPoly t = complete_homogeneous(k - s, vars) * elementary_symmetric(r + s, vars);
        rhs += (s % 2) ? -t : t;
    }
    return check("higher_vandermonde", p, fr_equal(lhs, FactoredRational(rhs)));
}

IdentityResult do_extended_vandermonde(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), pw = geti(p, "p");
    FactoredRational lhs = vandermonde_sum(m, 1, m - 1 + pw);
    return check("extended_vandermonde", p, fr_equal(lhs, FactoredRational(complete_homogeneous(pw, xs(m)))));
}

IdentityResult do_negative_vandermonde(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), s = geti(p, "s");
    FactoredRational lhs = vandermonde_sum(m, 1, s - 2);
    FactoredRational rhs;
    if (s == 1) {
        rhs = FactoredRational::constant((m - 1) % 2 ? -1 : 1);
        rhs = rhs.mul_factor(elementary_symmetric(m, xs(m)), -1);
    }
    return check("negative_vandermonde", p, fr_equal(lhs, rhs));
}

IdentityResult do_negative_vandermonde_sq(const std::map<std::string, int>& p) {
    const int m = geti(p, "m");
    FactoredRational lhs = vandermonde_sum(m, 1, -2);
    MPoly sm = elementary_symmetric(m, xs(m));
    FactoredRational rhs(elementary_symmetric(m - 1, xs(m)).scaled((m - 1) % 2 ? -1 : 1));
    rhs = rhs.mul_factor(sm, -2);
    return check("negative_vandermonde_sq", p, fr_equal(lhs, rhs));
}

IdentityResult do_shifted_inverse(const std::map<std::string, int>& p, int power) {
    const int m = geti(p, "m");
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        FactoredRational t = FactoredRational::constant(1);
        t = t.mul_factor(ab_linear(VarId{1, j}), -power);
        acc = acc + over_delta(m, j, t);
    }
    MPoly negb_pow = (-MPoly::var(kB)).pow(m - 1);
    FactoredRational rhs(negb_pow);
    if (power == 1) {
        for (int j = 1; j <= m; ++j) rhs = rhs.mul_factor(ab_linear(VarId{1, j}), -1);
        return check("shifted_inverse", p, fr_equal(acc, rhs));
    }
    MPoly s;
    for (int i = 1; i <= m; ++i) {
        MPoly pr = MPoly::constant(1);
        for (int j = 1; j <= m; ++j) {
            if (j == i) continue;
            pr *= ab_linear(VarId{1, j});
        }
        s += pr;
    }
    rhs = FactoredRational(negb_pow * s);
    for (int j = 1; j <= m; ++j) rhs = rhs.mul_factor(ab_linear(VarId{1, j}), -2);
    return check("shifted_inverse_sq", p, fr_equal(acc, rhs));
}

IdentityResult do_shifted_power(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), s = geti(p, "s");
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        acc = acc + over_delta(m, j, FactoredRational(ab_linear(VarId{1, j}).pow(m - s)));
    }
    MPoly rhs = (s == 1) ? MPoly::var(kB).pow(m - 1) : MPoly{};
    return check("shifted_power", p, fr_equal(acc, FactoredRational(rhs)));
}

IdentityResult do_shifted_power_top(const std::map<std::string, int>& p) {
    const int m = geti(p, "m");
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        acc = acc + over_delta(m, j, FactoredRational(ab_linear(VarId{1, j}).pow(m)));
    }
    MPoly rhs = MPoly::var(kB).pow(m) * elementary_symmetric(1, xs(m)) +
                MPoly::var(kA) * MPoly::var(kB).pow(m - 1).scaled(m);
    return check("shifted_power_top", p, fr_equal(acc, FactoredRational(rhs)));
}

IdentityResult do_linear_sigma(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), r = geti(p, "r"), s = geti(p, "s"), l = geti(p, "l");
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        MPoly num = sigma_hat(r - 1, m, j) * sigma_hat(s - 1, m, j) * MPoly::var(VarId{1, j}).pow(m - l);
        acc = acc + over_delta(m, j, FactoredRational(num));
    }
    auto sig = [&](int t) { return t < 0 ? MPoly{} : elementary_symmetric(t, xs(m)); };
    MPoly rhs;
    if (r >= l + 1 && s >= l + 1) {
        rhs = sig(r + s - l - 1).scaled(l % 2 ? -1 : 1);
    } else if (r <= l && s <= l) {
        rhs = sig(r + s - l - 1).scaled((l - 1) % 2 ? -1 : 1);
    }
    return check("linear_sigma", p, fr_equal(acc, FactoredRational(rhs)));
}

IdentityResult do_sigma_shift(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), r = geti(p, "r"), s = geti(p, "s"), shift = geti(p, "shift");
    if (shift < 1 || shift > 3) throw DomainError("shift must be 1, 2 or 3");
    FactoredRational acc;
    for (int j = 1; j <= m; ++j) {
        MPoly num = sigma_hat(r - 1, m, j) * sigma_hat(s - 1, m, j) * MPoly::var(VarId{1, j}).pow(m + shift);
        acc = acc + over_delta(m, j, FactoredRational(num));
    }
    auto vars = xs(m);
    auto sig = [&](int t) { return elementary_symmetric(t, vars); };
    MPoly rhs;
    if (shift == 1) {
        rhs = sig(r) * sig(s) - sig(r + s);
    } else if (shift == 2) {
        rhs = sig(1) * sig(r) * sig(s) - sig(r + 1) * sig(s) - sig(r) * sig(s + 1) + sig(r + s + 1);
    } else {
        rhs = (sig(1) * sig(1) - sig(2)) * sig(r) * sig(s) - sig(1) * (sig(r) * sig(s + 1) + sig(r + 1) * sig(s)) +
              sig(r) * sig(s + 2) + sig(r + 2) * sig(s) + sig(r + 1) * sig(s + 1) - sig(r + s + 2);
    }
    return check("sigma_shift", p, fr_equal(acc, FactoredRational(rhs)));
}

IdentityResult do_funny_product(const std::map<std::string, int>& p) {
    const int d = geti(p, "d");
    // sum_nu prod_{q != nu} (a + b x_q) = sum_j (d-j) a^{d-j-1} b^j sigma_j
    MPoly lhs;
    for (int nu = 1; nu <= d; ++nu) {
        MPoly pr = MPoly::constant(1);
        for (int q = 1; q <= d; ++q) {
            if (q == nu) continue;
            pr *= ab_linear(VarId{1, q});
        }
        lhs += pr;
    }
    MPoly rhs;
    auto vars = xs(d);
    for (int j = 0; j <= d - 1; ++j) {
        MPoly t = MPoly::var(kA).pow(d - j - 1) * MPoly::var(kB).pow(j) * elementary_symmetric(j, vars);
        rhs += t.scaled(d - j);
    }
    return check("funny_product", p, (lhs - rhs).is_zero());
}

IdentityResult do_delta_log(const std::map<std::string, int>& p) {
    const int d = geti(p, "d");
    // sum_{s != r} d(Delta_s)/Delta_s = d(Delta_r)/Delta_r under d/dx_r, r = 1.
    const VarId xr{1, 1};
    auto delta_poly = [&](int j) {
        MPoly pr = MPoly::constant(1);
        for (int s = 1; s <= d; ++s) {
            if (s == j) continue;
            pr *= MPoly::var(VarId{1, j}) - MPoly::var(VarId{1, s});
        }
        return pr;
    };
    FactoredRational lhs;
    for (int s = 2; s <= d; ++s) {
        MPoly ds = delta_poly(s);
        FactoredRational t(ds.derivative(xr));
        t = t.mul_factor(ds, -1);
        lhs = lhs + t;
    }
    MPoly dr = delta_poly(1);
    FactoredRational rhs(dr.derivative(xr));
    rhs = rhs.mul_factor(dr, -1);
    return check("delta_log", p, fr_equal(lhs, rhs));
}

// Is P in the span of momentum pairings of the image basis?
bool in_pairing_span(const FactorizationStructure& fs, const MPoly& poly) {
    std::map<Monomial, int> idx;
    std::vector<MPoly> pairings;
    for (const auto& b : fs.basis_of_image()) {
        pairings.push_back(fs.mu_poly(b));
        for (const auto& [mono, c] : pairings.back().terms()) {
            (void)c;
            idx.emplace(mono, static_cast<int>(idx.size()));
        }
    }
    for (const auto& [mono, c] : poly.terms()) {
        (void)c;
        idx.emplace(mono, static_cast<int>(idx.size()));
    }
    QMatrix a(static_cast<int>(idx.size()), static_cast<int>(pairings.size()));
    std::vector<Rational> b(idx.size(), Rational(0));
    for (std::size_t c = 0; c < pairings.size(); ++c) {
        for (const auto& [mono, coef] : pairings[c].terms()) a.at(idx.at(mono), static_cast<int>(c)) = coef;
    }
    for (const auto& [mono, coef] : poly.terms()) b[static_cast<std::size_t>(idx.at(mono))] = coef;
    return solve_linear(std::move(a), std::move(b)).has_value();
}

// Left-hand side block sum_q W^{m+3}/Delta_{pq} d^2(Y(x_pq)/W^{m+1}) for the
// product structure.
FactoredRational product_block(const FactorizationStructure& fs, const HTensor& beta, int p, const UniPoly& upsilon) {
    const Partition& part = fs.partition();
    const MPoly w = fs.mu_poly(beta);
    const int m = part.m();
    FactoredRational acc;
    for (int q = 1; q <= part.degree(p); ++q) {
        const VarId v{p, q};
        FactoredRational inner = FactoredRational::from_unirational(UniRational::polynomial(v, upsilon));
        inner = inner.mul_factor(w, -(m + 1));
        FactoredRational term = inner.derivative(v).derivative(v).mul_factor(w, m + 3);
        for (const auto& f : delta_factors(part, p, q)) term = term.mul_factor(f, -1);
        acc = acc + term;
    }
    return acc.reduced();
}

IdentityResult do_block_sum(const std::map<std::string, int>& p) {
    const int m = geti(p, "m"), dp = geti(p, "d");
    if (dp > m) throw DomainError("group degree exceeds the total");
    Partition part = (dp == m) ? Partition{{m}} : Partition{{dp, m - dp}};
    auto fs = FactorizationStructure::product_sv(part);
    // Deterministic pseudo-random twist with a nonconstant group-1 part.
    Rng rng(20240001u + static_cast<unsigned>(100 * m + dp));
    HTensor beta;
    beta.coeffs[MultiDeg(static_cast<std::size_t>(part.k()), 0)] = rng.nonzero_rational();
    for (int j = 1; j <= part.k(); ++j) {
        for (int r = 1; r <= part.degree(j); ++r) {
            MultiDeg d(static_cast<std::size_t>(part.k()), 0);
            d[static_cast<std::size_t>(j - 1)] = r;
            Rational c = (j == 1 && r == 1) ? rng.nonzero_rational() : rng.rational();
            if (c != 0) beta.coeffs[d] = c;
        }
    }
    std::vector<Rational> ucoef;
    for (int j = 0; j <= dp + 1; ++j) ucoef.push_back(rng.rational());
    ucoef.back() = rng.nonzero_rational();
    UniPoly upsilon{ucoef};
    FactoredRational lhs = product_block(fs, beta, 1, upsilon);
    if (!lhs.is_polynomial()) return check("block_sum", p, false, "block did not clear its denominators");
    // f_i = <mu, beta_i part>, gamma = top coefficient of upsilon
    const MPoly w = fs.mu_poly(beta);
    MPoly fsum = w - MPoly::constant(beta.coeffs.at(MultiDeg(static_cast<std::size_t>(part.k()), 0)));
    MPoly fp;
    for (int r = 1; r <= dp; ++r) {
        MultiDeg d(static_cast<std::size_t>(part.k()), 0);
        d[0] = r;
        auto it = beta.coeffs.find(d);
        if (it != beta.coeffs.end())
            fp += elementary_symmetric(r, part.group_vars(1)).scaled(it->second);
    }
    Rational g = upsilon.coeff(dp + 1);
    MPoly rhs = (fsum * fsum).scaled(Rational(dp * (dp + 1)) * g) -
                (fsum * fp).scaled(Rational(2 * (m + 1) * (dp + 1)) * g) +
                (fp * fp).scaled(Rational((m + 1) * (m + 2)) * g);
    return check("block_sum", p, in_pairing_span(fs, lhs.num() - rhs));
}

IdentityResult do_block_sum_top(const std::map<std::string, int>& p) {
    const int dp = geti(p, "d");
    const int m = dp + 1;
    Partition part{{dp, 1}};
    auto fs = FactorizationStructure::product_sv(part);
    Rng rng(20240002u + static_cast<unsigned>(dp));
    HTensor beta;
    Rational b0 = rng.nonzero_rational();
    beta.coeffs[MultiDeg{0, 0}] = b0;
    std::vector<Rational> bp(static_cast<std::size_t>(dp) + 1, Rational(0));
    for (int r = 1; r <= dp; ++r) {
        Rational c = (r == 1) ? rng.nonzero_rational() : rng.rational();
        bp[static_cast<std::size_t>(r)] = c;
        if (c != 0) beta.coeffs[MultiDeg{r, 0}] = c;
    }
    std::vector<Rational> ucoef;
    for (int j = 0; j <= dp + 3; ++j) ucoef.push_back(rng.rational());
    ucoef.back() = rng.nonzero_rational();
    UniPoly upsilon{ucoef};
    FactoredRational lhs = product_block(fs, beta, 1, upsilon);
    if (!lhs.is_polynomial()) return check("block_sum_top", p, false, "block did not clear its denominators");
    auto vars = part.group_vars(1);
    MPoly fp, fpp;
    for (int r = 1; r <= dp; ++r) {
        if (bp[static_cast<std::size_t>(r)] == 0) continue;
        fp += elementary_symmetric(r, vars).scaled(bp[static_cast<std::size_t>(r)]);
        fpp += elementary_symmetric(r + 1, vars).scaled(bp[static_cast<std::size_t>(r)]);
    }
    MPoly s1 = elementary_symmetric(1, vars);
    const Rational g1 = upsilon.coeff(dp + 1), g2 = upsilon.coeff(dp + 2), g3 = upsilon.coeff(dp + 3);
    const Rational mm1(m + 1), mm2(m + 2);
    MPoly rhs = (s1 * s1).scaled(mm2 * mm1 * b0 * b0 * g3) - (s1 * fp).scaled(2 * mm1 * b0 * g2) +
                (fp * fp).scaled(2 * g1) - (fp * fpp).scaled(2 * mm1 * g2) +
                (s1 * fpp).scaled(2 * mm1 * mm2 * b0 * g3) + (fpp * fpp).scaled(mm1 * mm2 * g3);
    return check("block_sum_top", p, in_pairing_span(fs, lhs.num() - rhs));
}

}  // namespace

IdentityResult verify_identity(const std::string& name, const std::map<std::string, int>& params) {
    if (name == "pre_vandermonde") return do_pre_vandermonde(params);
    if (name == "vandermonde") return do_vandermonde(params);
    if (name == "higher_vandermonde") return do_higher_vandermonde(params);
    if (name == "extended_vandermonde") return do_extended_vandermonde(params);
    if (name == "negative_vandermonde") return do_negative_vandermonde(params);
    if (name == "negative_vandermonde_sq") return do_negative_vandermonde_sq(params);
    if (name == "shifted_inverse") return do_shifted_inverse(params, 1);
    if (name == "shifted_inverse_sq") return do_shifted_inverse(params, 2);
    if (name == "shifted_power") return do_shifted_power(params);
    if (name == "shifted_power_top") return do_shifted_power_top(params);
    if (name == "linear_sigma") return do_linear_sigma(params);
    if (name == "sigma_shift") return do_sigma_shift(params);
    if (name == "funny_product") return do_funny_product(params);
    if (name == "delta_log") return do_delta_log(params);
    if (name == "block_sum") return do_block_sum(params);
    if (name == "block_sum_top") return do_block_sum_top(params);
    throw DomainError("unknown identity '" + name + "'");
}

std::vector<IdentityResult> run_identity_grid(int max_m) {
    std::vector<IdentityResult> out;
    auto run = [&](const std::string& name, std::map<std::string, int> params) {
        out.push_back(verify_identity(name, params));
    };
    for (int m = 2; m <= max_m; ++m) {
        run("pre_vandermonde", {{"m", m}});
        for (int r = 1; r <= m; ++r)
            for (int s = 1; s <= m; ++s) run("vandermonde", {{"m", m}, {"r", r}, {"s", s}});
        for (int k = 0; k <= 3; ++k) {
            for (int r = 1; r <= m; ++r) run("higher_vandermonde", {{"m", m}, {"r", r}, {"k", k}});
            run("extended_vandermonde", {{"m", m}, {"p", k}});
        }
        for (int s = 1; s <= m; ++s) {
            run("negative_vandermonde", {{"m", m}, {"s", s}});
            run("shifted_power", {{"m", m}, {"s", s}});
        }
        run("negative_vandermonde_sq", {{"m", m}});
        run("shifted_inverse", {{"m", m}});
        run("shifted_inverse_sq", {{"m", m}});
        run("shifted_power_top", {{"m", m}});
    }
    for (int m = 2; m <= std::min(max_m, 5); ++m) {
        for (int r = 1; r <= m; ++r)
            for (int s = 1; s <= m; ++s) {
                for (int l = 0; l <= m; ++l) run("linear_sigma", {{"m", m}, {"r", r}, {"s", s}, {"l", l}});
                for (int shift = 1; shift <= 3; ++shift)
                    run("sigma_shift", {{"m", m}, {"r", r}, {"s", s}, {"shift", shift}});
            }
    }
    for (int d = 1; d <= 5; ++d) run("funny_product", {{"d", d}});
    for (int d = 2; d <= 5; ++d) run("delta_log", {{"d", d}});
    for (int m = 2; m <= std::min(max_m, 5); ++m) {
        for (int d = 1; d <= std::min(m, 3); ++d) run("block_sum", {{"m", m}, {"d", d}});
    }
    for (int d = 1; d <= 3; ++d) run("block_sum_top", {{"d", d}});
    return out;
}

}  // namespace sk
