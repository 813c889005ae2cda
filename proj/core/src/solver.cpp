#include "sk/solver.hpp"

#include <algorithm>
#include <sstream>

namespace sk {

namespace {

std::string param_name(const char* stem, int group, int index) {
    std::ostringstream os;
    os << stem << group << "_" << index;
    return os.str();
}

std::string nu_name(int order, VarId v) {
    std::ostringstream os;
    os << "nu" << order << "_" << v.group << "_" << v.slot;
    return os.str();
}

// Coefficient polynomials (over x_{p,1}) of W^2, W W', W'^2 against the
// monomials in the remaining variables; exact rank over Q(x) by elimination
// with cross-multiplication.
int rank_over_rational_functions(const std::vector<MPoly>& polys, VarId x) {
    // Collect monomials in the other variables.
    std::map<Monomial, int> cols;
    auto strip = [&](const Monomial& mono) {
        Monomial rest;
        for (const auto& [v, e] : mono)
            if (!(v == x)) rest.emplace_back(v, e);
        return rest;
    };
    for (const auto& p : polys) {
        for (const auto& [mono, c] : p.terms()) {
            (void)c;
            cols.emplace(strip(mono), static_cast<int>(cols.size()));
        }
    }
    // rows of UniPoly entries
    std::vector<std::vector<UniPoly>> rows(polys.size(), std::vector<UniPoly>(cols.size()));
    for (std::size_t r = 0; r < polys.size(); ++r) {
        std::map<Monomial, std::vector<Rational>> acc;
        for (const auto& [mono, c] : polys[r].terms()) {
            int e = 0;
            for (const auto& [v, ee] : mono)
                if (v == x) e = ee;
            auto& vec = acc[strip(mono)];
            if (static_cast<int>(vec.size()) <= e) vec.resize(static_cast<std::size_t>(e) + 1, Rational(0));
            vec[static_cast<std::size_t>(e)] = c;
        }
        for (auto& [mono, vec] : acc) rows[r][static_cast<std::size_t>(cols.at(mono))] = UniPoly(vec);
    }
    // Elimination with cross-multiplication.
    int rank = 0;
    std::size_t ncols = cols.size();
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (!rows[static_cast<std::size_t>(r)][col].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
        const UniPoly p = rows[static_cast<std::size_t>(rank)][col];
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            const UniPoly head = rows[static_cast<std::size_t>(r)][col];
            if (head.is_zero()) continue;
            for (std::size_t c = col; c < ncols; ++c) {
                rows[static_cast<std::size_t>(r)][c] =
                    rows[static_cast<std::size_t>(r)][c] * p - rows[static_cast<std::size_t>(rank)][c] * head;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

bool three_term_independence(const FactorizationStructure& fs, const HTensor& beta, int p) {
    const VarId x{p, 1};
    MPoly w = fs.mu_poly(beta);
    MPoly dw = w.derivative(x);
    if (dw.is_zero()) return false;
    std::vector<MPoly> polys{w * w, w * dw, dw * dw};
    return rank_over_rational_functions(polys, x) == 3;
}

DegreeProfile degree_profile(const FactorizationStructure& fs, const HTensor& beta) {
    const Partition& part = fs.partition();
    const MPoly w = fs.mu_poly(beta);
    const int m = part.m();
    DegreeProfile out;
    out.groups.resize(static_cast<std::size_t>(part.k()));
    for (int p = 1; p <= part.k(); ++p) {
        auto& grp = out.groups[static_cast<std::size_t>(p - 1)];
        const VarId xpq{p, 1};
        grp.twist_constant = w.derivative(xpq).is_zero();
        auto dec = fs.grouped_decomposition(p);
        grp.grouped_decomposable = dec.has_value() || fs.is_veronese();
        if (dec) {
            for (const auto& [j, e] : *dec) {
                if (e.b != 0) grp.o_set.push_back(j);
            }
        }
        // ell_p from the cleared equation: max x_{p,1}-degree over the
        // coefficients at A, A', A'' for (i,r) != (p,1) and over the
        // right-hand side.
        MPoly delta_pq = MPoly::constant(1);
        for (const auto& f : delta_factors(part, p, 1)) delta_pq *= f;
        int ell = 0;
        auto note = [&](const FactoredRational& fr) {
            FactoredRational red = fr.reduced();
            for (const auto& [f, e] : red.den()) {
                (void)e;
                if (f.degree(xpq) > 0) throw DomainError("cleared coefficient not polynomial in the group variable");
            }
            ell = std::max(ell, red.num().degree(xpq));
        };
        for (int i = 1; i <= part.k(); ++i) {
            // G_i = prod_{b != i} gamma-hat_b^{d_b}
            FactoredRational gi = FactoredRational::constant(1);
            for (int b = 1; b <= part.k(); ++b) {
                if (b == i) continue;
                const MPoly& gh = fs.gamma_hat_poly(b);
                if (gh.is_constant() && gh.constant_value() == 1) continue;
                gi = gi.mul_factor(gh, part.degree(b));
            }
            gi = gi.mul_factor(w, -(m + 1));
            for (int r = 1; r <= part.degree(i); ++r) {
                if (i == p && r == 1) continue;
                const VarId v{i, r};
                FactoredRational base = FactoredRational(delta_pq);
                base = base.mul_factor(fs.gamma_hat_poly(i), part.degree(i) - 1);
                for (const auto& f : delta_factors(part, i, r)) base = base.mul_factor(f, -1);
                // coefficient at A'': base * W^{m+3} * (G_i / W^{m+1})
                FactoredRational c2 = (base * gi).mul_factor(w, m + 3);
                FactoredRational c1 = (base * gi.derivative(v)).mul_factor(w, m + 3).scaled(2);
                FactoredRational c0 = (base * gi.derivative(v).derivative(v)).mul_factor(w, m + 3);
                note(c2);
                note(c1);
                note(c0);
            }
        }
        // Right-hand side coefficients <mu, v> Delta_{p1} prod_b gamma-hat^{d_b}.
        MPoly full_gamma = MPoly::constant(1);
        for (int b = 1; b <= part.k(); ++b) full_gamma *= fs.gamma_hat_poly(b).pow(part.degree(b));
        for (const auto& bvec : fs.basis_of_image()) {
            MPoly rhs = fs.mu_poly(bvec) * delta_pq * full_gamma;
            ell = std::max(ell, rhs.degree(xpq));
        }
        grp.ell = ell;
        if (grp.grouped_decomposable) {
            const int op = static_cast<int>(grp.o_set.size());
            const int dp = part.degree(p);
            bool covers_all = static_cast<int>(grp.o_set.size()) + 1 == part.k();
            if (grp.twist_constant || covers_all)
                grp.L = dp + op;
            else
                grp.L = dp + op + 1;
        }
    }
    return out;
}

BetaClass classify_beta(const FactorizationStructure& fs, const HTensor& beta) {
    const Partition& part = fs.partition();
    const MPoly w = fs.mu_poly(beta);
    BetaClass out;
    out.per_group.resize(static_cast<std::size_t>(part.k()));
    for (int p = 1; p <= part.k(); ++p) {
        auto& pg = out.per_group[static_cast<std::size_t>(p - 1)];
        bool constant = true;
        for (const auto& v : part.group_vars(p)) {
            if (w.degree(v) > 0) constant = false;
        }
        if (constant) {
            pg.kind = BetaClass::kConstant;
            continue;
        }
        out.s_set.push_back(p);
        auto dec = decompose_in_group(part, beta, p);
        if (dec.kind == Decomposability::kDecomposable) {
            pg.kind = BetaClass::kDecomposable;
            pg.a = dec.a;
            pg.b = dec.b;
            pg.t = dec.t;
            continue;
        }
        pg.kind = BetaClass::kIndecomposable;
        if (part.degree(p) == 2 && dec.kind == Decomposability::kRankOneNotPower) {
            pg.rank_one_shape = true;
            pg.shape = dec.profile;
            // realness of s0 + 2 s1 x + s2 x^2 decided by sign(s1^2 - s0 s2)
            Rational disc = dec.profile[1] * dec.profile[1] - dec.profile[0] * dec.profile[2];
            pg.has_real_root = disc >= 0;
            pg.rational_root_certificate = is_rational_square(disc);
        }
    }
    return out;
}

std::map<VarId, UniRational> SolutionFamily::instantiate(const std::map<std::string, Rational>& values) const {
    std::map<VarId, UniRational> out;
    for (const auto& [v, basis] : templates) {
        UniRational acc;
        for (const auto& [name, base] : basis) {
            auto it = values.find(name);
            if (it == values.end()) throw DomainError("missing parameter value " + name);
            if (it->second == 0) continue;
            UniRational term = base.scaled(it->second);
            acc = acc.is_zero() ? term : acc + term;
        }
        out.emplace(v, std::move(acc));
    }
    return out;
}

std::map<std::string, Rational> SolutionFamily::draw(Rng& rng) const {
    // Parameter vectors satisfying the constraints = nullspace of the
    // constraint matrix; draw a random combination of its basis.
    std::map<std::string, int> index;
    for (const auto& p : params) index.emplace(p, static_cast<int>(index.size()));
    QMatrix a(static_cast<int>(constraints.size()), static_cast<int>(params.size()));
    for (std::size_t r = 0; r < constraints.size(); ++r) {
        for (const auto& [name, coef] : constraints[r]) a.at(static_cast<int>(r), index.at(name)) = coef;
    }
    auto basis = constraints.empty() ? std::vector<std::vector<Rational>>() : nullspace(std::move(a));
    std::map<std::string, Rational> out;
    if (constraints.empty()) {
        for (const auto& p : params) out[p] = rng.nonzero_rational();
        return out;
    }
    std::vector<Rational> vec(params.size(), Rational(0));
    for (const auto& b : basis) {
        Rational c = rng.nonzero_rational();
        for (std::size_t i = 0; i < vec.size(); ++i) vec[i] += c * b[i];
    }
    for (const auto& [name, idx] : index) out[name] = vec[static_cast<std::size_t>(idx)];
    return out;
}

namespace {

UniRational monomial_profile(VarId v, int degree) { return UniRational::polynomial(v, UniPoly::monomial(degree)); }

// Basis profile for a Y-coefficient of a plain double integral:
// II x^j = x^{j+2} / ((j+1)(j+2)).
UniRational double_integral_monomial(VarId v, int j) {
    return UniRational::polynomial(v, UniPoly::monomial(j + 2, Rational(1) / (Rational(j + 1) * Rational(j + 2))));
}

void add_affine_params(SolutionFamily& fam, VarId v, const UniRational& one_base, const UniRational& x_base) {
    std::string n0 = nu_name(0, v), n1 = nu_name(1, v);
    fam.params.push_back(n0);
    fam.params.push_back(n1);
    fam.templates[v].emplace_back(n0, one_base);
    fam.templates[v].emplace_back(n1, x_base);
}

// Common family shape for the untwisted case: per group a shared polynomial
// of degree <= d_p + 2 starting at x^2, plus a per-slot affine part.
SolutionFamily constant_twist_family(const FactorizationStructure& fs, const std::string& tag) {
    SolutionFamily fam;
    fam.case_tag = tag;
    const Partition& part = fs.partition();
    for (int p = 1; p <= part.k(); ++p) {
        for (int j = 2; j <= part.degree(p) + 2; ++j) fam.params.push_back(param_name("u", p, j));
        for (const auto& v : part.group_vars(p)) {
            for (int j = 2; j <= part.degree(p) + 2; ++j) {
                fam.templates[v].emplace_back(param_name("u", p, j), monomial_profile(v, j));
            }
            add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
        }
    }
    return fam;
}

}  // namespace

std::vector<SolutionFamily> solve_veronese(const FactorizationStructure& fs, const HTensor& beta) {
    if (!fs.is_veronese()) throw DomainError("structure is not Veronese");
    make_twist(fs, beta);
    const Partition& part = fs.partition();
    const int m = part.m();
    BetaClass cls = classify_beta(fs, beta);
    const auto& pg = cls.per_group[0];
    std::vector<SolutionFamily> out;
    if (pg.kind == BetaClass::kConstant) {
        out.push_back(constant_twist_family(fs, "veronese.1"));
        return out;
    }
    if (pg.kind == BetaClass::kDecomposable) {
        SolutionFamily fam;
        fam.case_tag = "veronese.1";
        for (int j = 0; j <= m; ++j) fam.params.push_back(param_name("g", 1, j));
        for (const auto& v : part.group_vars(1)) {
            for (int j = 0; j <= m; ++j) {
                fam.templates[v].emplace_back(param_name("g", 1, j),
                                              profile_from_upsilon(v, UniPoly::monomial(j), pg.a, pg.b, m, {}, 0, 0));
            }
            UniPoly twist = UniPoly({pg.a, pg.b}).pow(m + 1);
            add_affine_params(fam, v, UniRational::polynomial(v, twist),
                              UniRational::polynomial(v, twist * UniPoly::monomial(1)));
        }
        out.push_back(std::move(fam));
        return out;
    }
    // Indecomposable twist.
    if (m == 2) {
        if (!pg.rank_one_shape || pg.shape[2] == 0)
            throw UnsupportedCase("degenerate quadratic twist shape for the 2-dimensional family");
        const Rational a = pg.shape[0], b = pg.shape[1], c = pg.shape[2];
        auto basis = ode_polynomial_basis(2, a, b, c, 4);
        // Fixed generator normalization for the serialized family.
        UniPoly y({b, c});
        Rational g = a * c - b * b;
        UniPoly p1 = y * (UniPoly::constant(g) + y * y);
        UniPoly p2 = UniPoly::constant(g * g) - y.pow(4);
        (void)basis;
        SolutionFamily fam;
        fam.case_tag = "veronese.2a";
        for (int j = 0; j <= 4; ++j) fam.params.push_back(param_name("u", 1, j));
        for (const auto& v : part.group_vars(1)) {
            for (int j = 0; j <= 4; ++j)
                fam.templates[v].emplace_back(param_name("u", 1, j), monomial_profile(v, j));
            std::string n0 = nu_name(0, v), n1 = nu_name(1, v);
            fam.params.push_back(n0);
            fam.params.push_back(n1);
            fam.templates[v].emplace_back(n0, UniRational::polynomial(v, p1));
            fam.templates[v].emplace_back(n1, UniRational::polynomial(v, p2));
        }
        out.push_back(std::move(fam));
        return out;
    }
    SolutionFamily fam;
    fam.case_tag = "veronese.2b";
    for (int j = 0; j <= m + 2; ++j) fam.params.push_back(param_name("u", 1, j));
    for (const auto& v : part.group_vars(1)) {
        for (int j = 0; j <= m + 2; ++j) fam.templates[v].emplace_back(param_name("u", 1, j), monomial_profile(v, j));
    }
    out.push_back(std::move(fam));
    return out;
}

namespace {

// Segre families in the independent-twist case.
std::vector<SolutionFamily> solve_segre_independent(const FactorizationStructure& fs, const HTensor& beta,
                                                    const BetaClass& cls) {
    const Partition& part = fs.partition();
    const int m = part.m();
    const MPoly w = fs.mu_poly(beta);
    std::vector<SolutionFamily> out;
    if (m == 2) {
        // Quartic pair with cross relations; beta = b0 + b1 x1 + b2 x2.
        Rational b0 = w.coeff(Monomial{});
        Rational b1 = w.coeff(Monomial{{VarId{1, 1}, 1}});
        Rational b2 = w.coeff(Monomial{{VarId{2, 1}, 1}});
        if (b1 == 0 || b2 == 0) throw UnsupportedCase("independent twist requires both slots");
        SolutionFamily fam;
        fam.case_tag = "segre.3a";
        const VarId v1{1, 1}, v2{2, 1};
        for (int j = 0; j <= 4; ++j) fam.params.push_back(param_name("a", 1, j));
        for (int j = 0; j <= 4; ++j) fam.params.push_back(param_name("a", 2, j));
        for (int j = 0; j <= 4; ++j) {
            fam.templates[v1].emplace_back(param_name("a", 1, j), monomial_profile(v1, j));
            fam.templates[v2].emplace_back(param_name("a", 2, j), monomial_profile(v2, j));
        }
        fam.constraints.push_back({{param_name("a", 2, 4), Rational(1)}, {param_name("a", 1, 4), b2 * b2 / (b1 * b1)}});
        fam.constraints.push_back({{param_name("a", 2, 3), Rational(1)},
                                   {param_name("a", 1, 4), Rational(4) * b0 * b2 / (b1 * b1)},
                                   {param_name("a", 1, 3), -b2 / b1}});
        fam.constraints.push_back({{param_name("a", 2, 2), Rational(1)},
                                   {param_name("a", 1, 4), Rational(6) * b0 * b0 / (b1 * b1)},
                                   {param_name("a", 1, 3), Rational(-3) * b0 / b1},
                                   {param_name("a", 1, 2), Rational(1)}});
        out.push_back(std::move(fam));
        return out;
    }
    // m >= 3: affine profiles on the twisted slots, quadratic elsewhere with
    // a vanishing total second derivative.
    SolutionFamily fam;
    fam.case_tag = "segre.3b";
    std::map<std::string, Rational> row;
    for (int p = 1; p <= part.k(); ++p) {
        const VarId v{p, 1};
        bool in_s = std::find(cls.s_set.begin(), cls.s_set.end(), p) != cls.s_set.end();
        if (in_s) {
            add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
        } else {
            std::string c2 = param_name("c", p, 2);
            fam.params.push_back(c2);
            fam.templates[v].emplace_back(c2, monomial_profile(v, 2));
            add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
            row.emplace(c2, Rational(1));
        }
    }
    if (!row.empty()) fam.constraints.push_back(std::move(row));
    out.push_back(std::move(fam));
    return out;
}

}  // namespace

std::vector<SolutionFamily> solve_product_sv(const FactorizationStructure& fs, const HTensor& beta) {
    if (!fs.is_product_sv()) throw DomainError("structure is not a product one");
    make_twist(fs, beta);
    const Partition& part = fs.partition();
    const int m = part.m();
    BetaClass cls = classify_beta(fs, beta);
    std::vector<SolutionFamily> out;

    if (cls.s_set.empty()) {
        out.push_back(constant_twist_family(fs, fs.is_segre() ? "segre.1" : "product_sv.1"));
        return out;
    }

    // Single decomposable group: twisted family with the summed constraint.
    if (cls.s_set.size() == 1 &&
        cls.per_group[static_cast<std::size_t>(cls.s_set[0] - 1)].kind == BetaClass::kDecomposable) {
        const int p = cls.s_set[0];
        const auto& pg = cls.per_group[static_cast<std::size_t>(p - 1)];
        SolutionFamily fam;
        fam.case_tag = fs.is_segre() ? "segre.2" : "product_sv.2";
        const int dp = part.degree(p);
        std::map<std::string, Rational> row;
        for (int j = 0; j <= dp + 1; ++j) fam.params.push_back(param_name("g", p, j));
        row.emplace(param_name("g", p, dp + 1), Rational(1) / (pg.b * pg.b));
        for (const auto& v : part.group_vars(p)) {
            for (int j = 0; j <= dp + 1; ++j) {
                fam.templates[v].emplace_back(param_name("g", p, j),
                                              profile_from_upsilon(v, UniPoly::monomial(j), pg.a, pg.b, m, {}, 0, 0));
            }
            UniPoly twist = UniPoly({pg.a, pg.b}).pow(m + 1);
            add_affine_params(fam, v, UniRational::polynomial(v, twist),
                              UniRational::polynomial(v, twist * UniPoly::monomial(1)));
        }
        for (int i = 1; i <= part.k(); ++i) {
            if (i == p) continue;
            const int di = part.degree(i);
            for (int j = 0; j <= di - 1; ++j) fam.params.push_back(param_name("g", i, j));
            row.emplace(param_name("g", i, di - 1), Rational(1));
            for (const auto& v : part.group_vars(i)) {
                for (int j = 0; j <= di - 1; ++j) {
                    fam.templates[v].emplace_back(param_name("g", i, j), double_integral_monomial(v, j));
                }
                add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
            }
        }
        fam.constraints.push_back(std::move(row));
        out.push_back(std::move(fam));
        return out;
    }

    // Independent twist from here on.
    if (fs.is_segre()) return solve_segre_independent(fs, beta, cls);

    // Partition {m-1, 1}: the special two-group family.
    if (part.k() == 2 && std::min(part.d[0], part.d[1]) == 1 && m >= 3) {
        const int big = part.d[0] > 1 ? 1 : 2;
        const int small = 3 - big;
        SolutionFamily fam;
        fam.case_tag = "product_sv.3";
        for (int j = 0; j <= m; ++j) fam.params.push_back(param_name("Y", big, j));
        for (const auto& v : part.group_vars(big)) {
            for (int j = 0; j <= m; ++j) fam.templates[v].emplace_back(param_name("Y", big, j), monomial_profile(v, j));
        }
        const VarId vs{small, 1};
        for (int j = 0; j <= 2; ++j) {
            fam.params.push_back(param_name("c", small, j));
            fam.templates[vs].emplace_back(param_name("c", small, j), monomial_profile(vs, j));
        }
        // 2 gamma^m + A_small'' = 0, A_small'' = 2 c_2.
        fam.constraints.push_back({{param_name("Y", big, m), Rational(2)}, {param_name("c", small, 2), Rational(2)}});
        out.push_back(std::move(fam));
        return out;
    }

    // General independent case.
    SolutionFamily fam;
    const bool k2_full = cls.s_set.size() == 2 && part.k() == 2;
    const bool multi = cls.s_set.size() >= 2 && part.k() >= 3;
    if (cls.s_set.size() == 1)
        fam.case_tag = "product_sv.4a";
    else if (k2_full)
        fam.case_tag = "product_sv.4b";
    else if (multi)
        fam.case_tag = "product_sv.4c";
    else
        throw UnsupportedCase("no classified family for this twist");
    std::map<std::string, Rational> row;
    for (int p = 1; p <= part.k(); ++p) {
        bool in_s = std::find(cls.s_set.begin(), cls.s_set.end(), p) != cls.s_set.end();
        const int dp = part.degree(p);
        if (in_s) {
            const int cap = multi ? dp : dp + 1;
            for (int j = 0; j <= cap; ++j) fam.params.push_back(param_name("g", p, j));
            for (const auto& v : part.group_vars(p)) {
                for (int j = 0; j <= cap; ++j)
                    fam.templates[v].emplace_back(param_name("g", p, j), monomial_profile(v, j));
            }
            if (fam.case_tag == "product_sv.4a")
                row.emplace(param_name("g", p, dp + 1), Rational((m - dp) * (m + 1 - dp)));
            else if (fam.case_tag == "product_sv.4b")
                row.emplace(param_name("g", p, dp + 1), Rational(1));
        } else {
            for (int j = 0; j <= dp - 1; ++j) fam.params.push_back(param_name("g", p, j));
            row.emplace(param_name("g", p, dp - 1), Rational(1));
            for (const auto& v : part.group_vars(p)) {
                for (int j = 0; j <= dp - 1; ++j)
                    fam.templates[v].emplace_back(param_name("g", p, j), double_integral_monomial(v, j));
                add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
            }
        }
    }
    if (!row.empty()) fam.constraints.push_back(std::move(row));
    out.push_back(std::move(fam));
    return out;
}

std::vector<SolutionFamily> solve_two_point(const FactorizationStructure& fs, const HTensor& beta) {
    auto pi = fs.two_point_pi();
    if (!pi) throw DomainError("structure is not of the two-intersection-point shape");
    make_twist(fs, beta);
    const auto [pi1, pi2] = *pi;
    const Partition& part = fs.partition();
    const int m = part.m();
    const int k = part.k();
    const int d1 = part.d[0];
    const int dk = part.d[static_cast<std::size_t>(k - 1)];
    BetaClass cls = classify_beta(fs, beta);
    std::vector<SolutionFamily> out;

    const LinFactor pifac{pi1, pi2};
    const std::vector<std::pair<LinFactor, int>> o1{{pifac, dk}};

    auto push_other_groups = [&](SolutionFamily& fam, int cap_offset, std::map<std::string, Rational>* sum_row) {
        // Groups 2..k carry plain double integrals; cap d_p + cap_offset for
        // p < k and d_k - 1 for the last group.
        for (int p = 2; p <= k; ++p) {
            const int cap = (p == k) ? part.degree(p) - 1 : part.degree(p) + cap_offset;
            for (int j = 0; j <= cap; ++j) fam.params.push_back(param_name("Y", p, j));
            if (sum_row && p < k) sum_row->emplace(param_name("Y", p, part.degree(p) - 1), Rational(1));
            for (const auto& v : part.group_vars(p)) {
                for (int j = 0; j <= cap; ++j)
                    fam.templates[v].emplace_back(param_name("Y", p, j), double_integral_monomial(v, j));
                add_affine_params(fam, v, monomial_profile(v, 0), monomial_profile(v, 1));
            }
        }
    };

    auto upsilon1_row = [&](const Rational& scale, int cap) {
        // scale * sum_j Y1_j (-pi1/pi2)^j
        std::map<std::string, Rational> row;
        Rational root = -pi1 / pi2;
        Rational pw = 1;
        for (int j = 0; j <= cap; ++j) {
            if (scale * pw != 0) row.emplace(param_name("Y", 1, j), scale * pw);
            pw *= root;
        }
        return row;
    };

    if (cls.s_set.empty()) {
        SolutionFamily fam;
        fam.case_tag = "two_point.1";
        for (int j = 0; j <= d1 + 1; ++j) fam.params.push_back(param_name("Y", 1, j));
        for (const auto& v : part.group_vars(1)) {
            for (int j = 0; j <= d1 + 1; ++j) {
                fam.templates[v].emplace_back(param_name("Y", 1, j),
                                              profile_from_upsilon(v, UniPoly::monomial(j), 1, 0, m, o1, 0, 0));
            }
            add_affine_params(fam, v, UniRational(v, UniPoly::constant(1), {{pifac, dk}}),
                              UniRational(v, UniPoly::monomial(1), {{pifac, dk}}));
        }
        push_other_groups(fam, 0, nullptr);
        // gamma_k^{dk-1} + (-pi2)^{d1-1} Y1(-pi1/pi2) = 0
        Rational s = 1;
        for (int i = 0; i < d1 - 1; ++i) s *= -pi2;
        auto row = upsilon1_row(s, d1 + 1);
        row[param_name("Y", k, dk - 1)] += 1;
        fam.constraints.push_back(std::move(row));
        out.push_back(std::move(fam));
        return out;
    }

    // Twisted cases: beta decomposable along group 1, other groups constant.
    if (!(cls.s_set.size() == 1 && cls.s_set[0] == 1 && cls.per_group[0].kind == BetaClass::kDecomposable))
        throw UnsupportedCase("twist outside the classified spans");
    const auto& pg = cls.per_group[0];
    auto [pifac_norm, pis] = normalize_linear(pi1, pi2);
    (void)pis;
    const bool aligned = LinFactor{pg.a, pg.b} == pifac_norm;

    SolutionFamily fam;
    fam.case_tag = aligned ? "two_point.2" : "two_point.3";
    for (int j = 0; j <= d1 + 2; ++j) fam.params.push_back(param_name("Y", 1, j));
    for (const auto& v : part.group_vars(1)) {
        for (int j = 0; j <= d1 + 2; ++j) {
            fam.templates[v].emplace_back(param_name("Y", 1, j),
                                          profile_from_upsilon(v, UniPoly::monomial(j), pg.a, pg.b, m, o1, 0, 0));
        }
        UniPoly twist = UniPoly({pg.a, pg.b}).pow(m + 1);
        add_affine_params(fam, v, UniRational(v, twist, {{pifac, dk}}),
                          UniRational(v, twist * UniPoly::monomial(1), {{pifac, dk}}));
    }
    // gamma_1^{d1+2} / (pi2 b^2) + sum_{i=2}^{k-1} gamma_i^{d_i-1} = 0,
    // with the representative (a, b) fixed by the templates above.
    std::map<std::string, Rational> sum_row;
    sum_row.emplace(param_name("Y", 1, d1 + 2), Rational(1) / (pi2 * pg.b * pg.b));
    push_other_groups(fam, -1, &sum_row);
    fam.constraints.push_back(std::move(sum_row));
    // gamma_k^{dk-1} (a - b pi1/pi2)^2 + (-pi2)^{d1-1} Y1(-pi1/pi2) = 0;
    // aligned twist makes the first coefficient vanish, leaving
    // Y1(-pi1/pi2) = 0.
    Rational lhs_coef = (pg.a - pg.b * pi1 / pi2) * (pg.a - pg.b * pi1 / pi2);
    Rational s = 1;
    for (int i = 0; i < d1 - 1; ++i) s *= -pi2;
    auto row = upsilon1_row(s, d1 + 2);
    if (lhs_coef != 0) row[param_name("Y", k, dk - 1)] += lhs_coef;
    fam.constraints.push_back(std::move(row));
    out.push_back(std::move(fam));
    return out;
}

std::vector<SolutionFamily> solve_families(const FactorizationStructure& fs, const HTensor& beta) {
    if (fs.is_veronese()) return solve_veronese(fs, beta);
    if (fs.is_product_sv()) return solve_product_sv(fs, beta);
    if (fs.two_point_pi()) return solve_two_point(fs, beta);
    throw UnsupportedCase("no classified solution families for this structure");
}

FactoredRational diagonal_ode_residual(const FactorizationStructure& fs, const HTensor& beta, int p, int q, int r,
                                       const UniRational& a_q, const UniRational& a_r) {
    const Partition& part = fs.partition();
    if (part.degree(p) < 2) throw DomainError("diagonal condition needs at least two slots in the group");
    if (q == r) throw DomainError("slots must be distinct");
    const VarId xq{p, q}, xr{p, r};
    const int m = part.m();
    // Rebase both profiles to the variable x_{p,q}.
    auto rebase = [&](const UniRational& u) {
        if (u.is_zero()) return UniRational{};
        return UniRational(xq, u.num(), u.den());
    };
    UniRational a = rebase(a_q) - rebase(a_r);
    FactoredRational fa = FactoredRational::from_unirational(a);
    FactoredRational fa1 = FactoredRational::from_unirational(a.derivative());
    FactoredRational fa2 = FactoredRational::from_unirational(a.derivative().derivative());
    // P = prod_{j != p} gamma-hat_j^{d_j} and its diagonal derivatives.
    MPoly pprod = MPoly::constant(1);
    for (int j = 1; j <= part.k(); ++j) {
        if (j == p) continue;
        pprod *= fs.gamma_hat_poly(j).pow(part.degree(j));
    }
    std::map<VarId, VarId> diag{{xr, xq}};
    MPoly p0 = pprod.rename(diag);
    MPoly p1 = pprod.derivative(xq).rename(diag);
    MPoly p2 = pprod.derivative(xq).derivative(xq).rename(diag);
    MPoly w = fs.mu_poly(beta);
    MPoly wx = w.rename(diag);
    MPoly wp = w.derivative(xq).rename(diag);
    const Rational mm1 = Rational(m + 1), mm2 = Rational(m + 2);
    FactoredRational term0 =
        fa * FactoredRational(wx * wx * p2 - (2 * mm1) * (wx * wp * p1) + (mm1 * mm2) * (wp * wp * p0));
    FactoredRational term1 = fa1.scaled(2) * FactoredRational(wx * wx * p1 - mm1 * (p0 * wx * wp));
    FactoredRational term2 = fa2 * FactoredRational(p0 * wx * wx);
    return (term0 + term1 + term2).reduced();
}

std::vector<UniPoly> ode_polynomial_basis(int m, const Rational& a, const Rational& b, const Rational& c,
                                          int degree_cap) {
    if (c == 0) throw DomainError("quadratic coefficient must be nonzero");
    if (degree_cap < 0) return {};
    const Rational g = a * c - b * b;
    // E(A) = (g + y^2)^2 A'' - 2(m+1) y (g + y^2) A' + (m+1)(m+2) y^2 A
    // on polynomials in y of degree <= cap; kernel by exact linear algebra.
    const int n = degree_cap + 1;
    const int out_deg = degree_cap + 2;
    QMatrix mat(out_deg + 1, n);
    auto add_poly = [&](const UniPoly& p, int col) {
        for (int i = 0; i <= p.degree(); ++i) mat.at(i, col) = mat.at(i, col) + p.coeff(i);
    };
    const UniPoly q({g, 0, 1});  // g + y^2
    for (int j = 0; j < n; ++j) {
        UniPoly base = UniPoly::monomial(j);
        UniPoly e = q * q * base.derivative().derivative() -
                    UniPoly::monomial(1, Rational(2 * (m + 1))) * q * base.derivative() +
                    UniPoly::monomial(2, Rational((m + 1) * (m + 2))) * base;
        add_poly(e, j);
    }
    auto kernel = nullspace(std::move(mat));
    std::vector<UniPoly> out;
    for (const auto& v : kernel) {
        UniPoly in_y(std::vector<Rational>(v.begin(), v.end()));
        // back to x: y = b + c x
        UniPoly in_x;
        UniPoly ylin({b, c});
        for (int i = 0; i <= in_y.degree(); ++i) in_x = in_x + ylin.pow(i).scaled(in_y.coeff(i));
        out.push_back(in_x);
    }
    return out;
}

std::vector<DegreeCheckItem> degree_bound_check(const FactorizationStructure& fs, const HTensor& beta,
                                                const std::map<VarId, UniRational>& candidate) {
    const Partition& part = fs.partition();
    const int m = part.m();
    const MPoly w = fs.mu_poly(beta);
    DegreeProfile prof = degree_profile(fs, beta);
    std::vector<DegreeCheckItem> out;
    for (int p = 1; p <= part.k(); ++p) {
        const VarId x1{p, 1};
        // O-bar: groups with gamma-hat of degree one in x_{p,1}; O: those that
        // decompose with a direction off (1,0).
        std::vector<int> obar;
        for (int j = 1; j <= part.k(); ++j) {
            if (j == p) continue;
            if (fs.gamma_hat_poly(j).degree(x1) == 1) obar.push_back(j);
        }
        std::map<int, LinFactor> o_dirs;
        for (int j : obar) {
            HTensor t = ins_generator(part, j, 0, fs.gamma(j));
            auto dec = decompose_in_group(part, t, p);
            if (dec.kind == Decomposability::kDecomposable && dec.b != 0) {
                auto [lf, s] = normalize_linear(dec.a, dec.b);
                (void)s;
                o_dirs.emplace(j, lf);
            }
        }
        int missing = 0;
        for (int j : obar)
            if (!o_dirs.count(j)) missing += part.degree(j);
        int cap = m + 2 - missing;
        const bool twist_const = w.derivative(x1).is_zero();
        if (twist_const) {
            cap = std::min(cap, prof.groups[static_cast<std::size_t>(p - 1)].ell + 2 - missing);
        } else if (prof.groups[static_cast<std::size_t>(p - 1)].ell < m && three_term_independence(fs, beta, p)) {
            cap = std::min(cap, prof.groups[static_cast<std::size_t>(p - 1)].ell);
        }
        for (const auto& v : part.group_vars(p)) {
            auto it = candidate.find(v);
            if (it == candidate.end()) continue;
            const UniRational& a = it->second;
            DegreeCheckItem item;
            item.slot = v;
            item.cap = cap;
            item.observed = a.num().degree();
            // Denominator must divide prod_{j in O} factor^{d_j}.
            for (const auto& [f, e] : a.den()) {
                bool ok = false;
                for (const auto& [j, lf] : o_dirs) {
                    if (f == lf && e <= part.degree(j)) ok = true;
                }
                if (!ok) {
                    item.within = false;
                    item.reason = "denominator factor outside the allowed product";
                }
            }
            if (item.observed > item.cap) {
                item.within = false;
                if (item.reason.empty()) item.reason = "numerator degree exceeds the cap";
            }
            out.push_back(std::move(item));
        }
    }
    return out;
}

FactoredRational group_block_sum(const GeometrySpec& g, int p) {
    const Partition& part = g.fs.partition();
    const MPoly w = g.mu_beta();
    const int m = part.m();
    FactoredRational acc;
    for (int r = 1; r <= part.degree(p); ++r) {
        const VarId v{p, r};
        if (g.profile(v).is_zero()) continue;
        FactoredRational inner = FactoredRational::from_unirational(g.profile(v));
        for (int j = 1; j <= part.k(); ++j) {
            const MPoly& gh = g.fs.gamma_hat_poly(j);
            if (gh.is_constant() && gh.constant_value() == 1) continue;
            inner = inner.mul_factor(gh, part.degree(j));
        }
        inner = inner.mul_factor(w, -(m + 1));
        FactoredRational term = inner.derivative(v).derivative(v);
        term = term.mul_factor(w, m + 3);
        for (int j = 1; j <= part.k(); ++j) {
            const MPoly& gh = g.fs.gamma_hat_poly(j);
            if (gh.is_constant() && gh.constant_value() == 1) continue;
            term = term.mul_factor(gh, -part.degree(j));
        }
        term = term.mul_factor(g.fs.gamma_hat_poly(p), -1);
        for (const auto& f : delta_factors(part, p, r)) term = term.mul_factor(f, -1);
        acc = acc + term;
    }
    return acc.reduced();
}

FactoredRational closed_form_group_sum(const FactorizationStructure& fs, const HTensor& beta, int p,
                                       const UniPoly& upsilon) {
    const Partition& part = fs.partition();
    auto dec_struct = fs.grouped_decomposition(p);
    if (!dec_struct && !fs.is_veronese())
        throw DomainError("defining tensors do not decompose in the grouped slots");
    const MPoly w = fs.mu_poly(beta);
    const int dp = part.degree(p);
    const VarId x1{p, 1};
    std::vector<std::pair<int, LinFactor>> o_dirs;
    if (dec_struct) {
        for (const auto& [j, lf] : *dec_struct)
            if (lf.b != 0) o_dirs.emplace_back(j, lf);
    }
    const bool twist_const = w.derivative(x1).is_zero();
    DegreeProfile prof = degree_profile(fs, beta);
    const auto lcap = prof.groups[static_cast<std::size_t>(p - 1)].L;
    if (lcap && upsilon.degree() > *lcap) throw DomainError("polynomial degree exceeds the allowed cap");

    auto group_vars = part.group_vars(p);
    const MPoly sigma1 = elementary_symmetric(1, group_vars);

    LinFactor bf{1, 0};
    Rational tscale = 1;
    GammaTensor k_rest;
    if (!twist_const) {
        auto dec = decompose_in_group(part, beta, p);
        if (dec.kind != Decomposability::kDecomposable)
            throw DomainError("twist element does not decompose along the group");
        bf = LinFactor{dec.a, dec.b};  // already normalized
        tscale = dec.t;
        k_rest = dec.remainder;
    }

    std::vector<std::pair<LinFactor, int>> den;
    if (!twist_const) den.emplace_back(bf, 2);
    for (const auto& [j, lf] : o_dirs) {
        (void)j;
        den.emplace_back(lf, 1);
    }
    PartialFractions pf = partial_fraction(UniRational(x1, upsilon, den));
    if (pf.poly.degree() > dp)
        throw DomainError("polynomial part too large for the summation formulas");

    FactoredRational result;
    if (twist_const) {
        // bracket = poly-part sums + sum_j c_j (-e2)^{dp-1} / prod(e_j pairing)
        FactoredRational bracket(MPoly::constant(pf.poly.coeff(dp - 1)) + sigma1.scaled(pf.poly.coeff(dp)));
        for (const auto& t : pf.terms) {
            Rational e2p = 1;
            for (int i = 0; i < dp - 1; ++i) e2p *= -t.factor.b;
            FactoredRational piece = FactoredRational(MPoly::constant(t.coeff * e2p));
            for (const auto& v : group_vars) piece = piece.mul_factor(MPoly::linear(t.factor.a, t.factor.b, v), -1);
            bracket = bracket + piece;
        }
        result = bracket * FactoredRational(w * w);
    } else {
        MPoly prod_twist = MPoly::constant(1);
        for (const auto& v : group_vars) prod_twist *= MPoly::linear(bf.a, bf.b, v);
        Rational negb = 1;
        for (int i = 0; i < dp - 1; ++i) negb *= -bf.b;
        FactoredRational bracket(
            (prod_twist * prod_twist) * (MPoly::constant(pf.poly.coeff(dp - 1)) + sigma1.scaled(pf.poly.coeff(dp))));
        for (const auto& t : pf.terms) {
            if (t.factor == bf && t.power == 1) {
                bracket = bracket + FactoredRational(prod_twist.scaled(t.coeff * negb));
            } else if (t.factor == bf && t.power == 2) {
                MPoly s;
                for (std::size_t i = 0; i < group_vars.size(); ++i) {
                    MPoly pr = MPoly::constant(1);
                    for (std::size_t qv = 0; qv < group_vars.size(); ++qv) {
                        if (qv == i) continue;
                        pr *= MPoly::linear(bf.a, bf.b, group_vars[qv]);
                    }
                    s += pr;
                }
                bracket = bracket + FactoredRational(s.scaled(t.coeff * negb));
            } else {
                Rational e2p = 1;
                for (int i = 0; i < dp - 1; ++i) e2p *= -t.factor.b;
                FactoredRational piece((prod_twist * prod_twist).scaled(t.coeff * e2p));
                for (const auto& v : group_vars) piece = piece.mul_factor(MPoly::linear(t.factor.a, t.factor.b, v), -1);
                bracket = bracket + piece;
            }
        }
        MPoly krest = k_rest.group_ids.empty() ? MPoly::constant(1) : k_rest.pairing_poly(part);
        result = bracket * FactoredRational((krest * krest).scaled(tscale * tscale));
    }
    const MPoly& ghp = fs.gamma_hat_poly(p);
    if (!(ghp.is_constant() && ghp.constant_value() == 1)) result = result.mul_factor(ghp, -1);
    return result.reduced();
}

}  // namespace sk
