#include "sk/geometry.hpp"

namespace sk {

Mat2 Mat2::inverse() const {
    Rational dt = det();
    if (dt == 0) throw DomainError("singular coordinate-change matrix");
    return Mat2{d / dt, -b / dt, -c / dt, a / dt};
}

const UniRational& GeometrySpec::profile(VarId v) const {
    auto it = profiles.find(v);
    if (it == profiles.end()) throw DomainError("missing profile for " + to_string(v));
    return it->second;
}

GeometrySpec make_geometry(FactorizationStructure fs, HTensor beta, std::map<VarId, UniRational> profiles,
                           bool formal) {
    make_twist(fs, beta);  // membership and nonzero pairing
    for (const auto& v : fs.partition().all_vars()) {
        auto it = profiles.find(v);
        if (it == profiles.end()) throw DomainError("missing profile for " + to_string(v));
        if (it->second.var() != v && !it->second.is_zero())
            throw DomainError("profile for " + to_string(v) + " uses the wrong variable");
        if (!formal && it->second.is_zero()) throw DomainError("zero profile requires the formal flag");
    }
    return GeometrySpec{std::move(fs), std::move(beta), std::move(profiles), formal};
}

std::vector<MPoly> delta_factors(const Partition& part, int group, int slot) {
    std::vector<MPoly> out;
    for (int s = 1; s <= part.degree(group); ++s) {
        if (s == slot) continue;
        out.push_back(MPoly::var(VarId{group, slot}) - MPoly::var(VarId{group, s}));
    }
    return out;
}

namespace {

// Multiply by all gamma-hat factors to the given power (negative divides).
FactoredRational mul_gamma_hats(FactoredRational x, const FactorizationStructure& fs, int sign) {
    for (int j = 1; j <= fs.k(); ++j) {
        const MPoly& gh = fs.gamma_hat_poly(j);
        if (gh.is_constant() && gh.constant_value() == 1) continue;
        x = x.mul_factor(gh, sign * fs.partition().degree(j));
    }
    return x;
}

FactoredRational div_delta(FactoredRational x, const Partition& part, int group, int slot) {
    for (const auto& f : delta_factors(part, group, slot)) x = x.mul_factor(f, -1);
    return x;
}

}  // namespace

FactoredRational laplacian_invariant(const GeometrySpec& g, const MPoly& f, const CancelToken* cancel) {
    const auto& part = g.fs.partition();
    const MPoly w = g.mu_beta();
    const int m = part.m();
    FactoredRational acc;
    for (int i = 1; i <= part.k(); ++i) {
        for (int r = 1; r <= part.degree(i); ++r) {
            check_cancel(cancel);
            const VarId v{i, r};
            MPoly df = f.derivative(v);
            if (df.is_zero() && g.profile(v).is_zero()) continue;
            // inner = A_{ir} (d_v f) H with H = prod gamma-hats^{d_j} / W^m
            FactoredRational inner = FactoredRational::from_unirational(g.profile(v));
            inner = inner * FactoredRational(df);
            inner = mul_gamma_hats(std::move(inner), g.fs, +1);
            inner = inner.mul_factor(w, -m);
            FactoredRational term = inner.derivative(v);
            // times W / (Delta_{ir} gamma-hat_i H)
            term = term.mul_factor(w, m + 1);
            term = mul_gamma_hats(std::move(term), g.fs, -1);
            term = term.mul_factor(g.fs.gamma_hat_poly(i), -1);
            term = div_delta(std::move(term), part, i, r);
            acc = acc - term;
        }
    }
    return acc.reduced();
}

FactoredRational ricci_volume_ratio(const GeometrySpec& g) {
    const auto& part = g.fs.partition();
    const int m = part.m();
    FactoredRational out = FactoredRational::constant(m % 2 == 0 ? 1 : -1);
    out = mul_gamma_hats(std::move(out), g.fs, +1);
    for (const auto& v : part.all_vars()) {
        out = out * FactoredRational::from_unirational(g.profile(v));
    }
    out = out.mul_factor(g.mu_beta(), -(m + 2));
    return out.reduced();
}

namespace {

// Sum over slots of W^{power} / (Delta_{ir} gamma-hat_i prod_p gamma-hat_p^{d_p})
//   * d^2_{ir} ( A_{ir} prod_j gamma-hat_j^{d_j} / W^{m+1} ).
FactoredRational curvature_sum(const GeometrySpec& g, int w_power, const CancelToken* cancel) {
    const auto& part = g.fs.partition();
    const MPoly w = g.mu_beta();
    const int m = part.m();
    FactoredRational acc;
    for (int i = 1; i <= part.k(); ++i) {
        for (int r = 1; r <= part.degree(i); ++r) {
            check_cancel(cancel);
            const VarId v{i, r};
            if (g.profile(v).is_zero()) continue;
            FactoredRational inner = FactoredRational::from_unirational(g.profile(v));
            inner = mul_gamma_hats(std::move(inner), g.fs, +1);
            inner = inner.mul_factor(w, -(m + 1));
            FactoredRational term = inner.derivative(v).derivative(v);
            term = term.mul_factor(w, w_power);
            term = mul_gamma_hats(std::move(term), g.fs, -1);
            term = term.mul_factor(g.fs.gamma_hat_poly(i), -1);
            term = div_delta(std::move(term), part, i, r);
            acc = acc + term;
        }
    }
    return acc.reduced();
}

}  // namespace

FactoredRational scalar_curvature(const GeometrySpec& g, const CancelToken* cancel) {
    return (-curvature_sum(g, /*w_power=*/g.fs.m() + 2, cancel)).reduced();
}

CurvatureReport extremality_residual(const GeometrySpec& g, const CancelToken* cancel) {
    CurvatureReport rep;
    FactoredRational lhs = curvature_sum(g, /*w_power=*/g.fs.m() + 3, cancel);
    rep.scal = (-lhs.mul_factor(g.mu_beta(), -1)).reduced();
    if (!lhs.is_polynomial()) {
        rep.extremal = false;
        rep.residual = lhs;
        return rep;
    }
    // Solve lhs = sum_c alpha_c <mu, basis_c> exactly by matching monomials.
    const auto& basis = g.fs.basis_of_image();
    std::vector<MPoly> pairings;
    pairings.reserve(basis.size());
    std::map<Monomial, int> mono_index;
    for (const auto& b : basis) {
        pairings.push_back(g.fs.mu_poly(b));
        for (const auto& [mono, c] : pairings.back().terms()) {
            (void)c;
            mono_index.emplace(mono, static_cast<int>(mono_index.size()));
        }
    }
    for (const auto& [mono, c] : lhs.num().terms()) {
        (void)c;
        mono_index.emplace(mono, static_cast<int>(mono_index.size()));
    }
    QMatrix a(static_cast<int>(mono_index.size()), static_cast<int>(basis.size()));
    std::vector<Rational> b(mono_index.size(), Rational(0));
    for (std::size_t c = 0; c < pairings.size(); ++c) {
        for (const auto& [mono, coef] : pairings[c].terms()) {
            a.at(mono_index.at(mono), static_cast<int>(c)) = coef;
        }
    }
    for (const auto& [mono, coef] : lhs.num().terms()) {
        b[static_cast<std::size_t>(mono_index.at(mono))] = coef;
    }
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) {
        rep.extremal = false;
        rep.residual = lhs;
        return rep;
    }
    rep.extremal = true;
    rep.alpha_coords = *sol;
    rep.alpha = g.fs.from_coordinates(*sol);
    return rep;
}

MetricBlocks metric_blocks_symbolic(const GeometrySpec& g) {
    MetricBlocks out;
    const auto& part = g.fs.partition();
    const MPoly w = g.mu_beta();
    // Extend beta to a basis of the image.
    auto degs = all_multidegrees(part);
    std::vector<HTensor> chosen{g.beta};
    for (const auto& cand : g.fs.basis_of_image()) {
        if (static_cast<int>(chosen.size()) == part.m() + 1) break;
        QMatrix mat(static_cast<int>(chosen.size()) + 1, static_cast<int>(degs.size()));
        for (std::size_t r = 0; r < chosen.size(); ++r) {
            auto flat = chosen[r].flatten(part);
            for (std::size_t c = 0; c < flat.size(); ++c) mat.at(static_cast<int>(r), static_cast<int>(c)) = flat[c];
        }
        auto flat = cand.flatten(part);
        for (std::size_t c = 0; c < flat.size(); ++c)
            mat.at(static_cast<int>(chosen.size()), static_cast<int>(c)) = flat[c];
        if (rank_ffge(mat) == static_cast<int>(chosen.size()) + 1) chosen.push_back(cand);
    }
    if (static_cast<int>(chosen.size()) != part.m() + 1)
        throw DomainError("twist element cannot be extended to a basis of the image");
    out.h_basis = chosen;
    for (int i = 1; i <= part.k(); ++i) {
        for (int r = 1; r <= part.degree(i); ++r) {
            const VarId v{i, r};
            const UniRational& a = g.profile(v);
            if (a.is_zero()) throw DomainError("metric requires nonzero profiles");
            // u = Delta_{ir} gamma-hat_i den(A) / (num(A) W)
            FactoredRational u = FactoredRational::constant(1);
            for (const auto& f : delta_factors(part, i, r)) u = u.mul_factor(f, +1);
            u = u.mul_factor(g.fs.gamma_hat_poly(i), +1);
            FactoredRational a_fr = FactoredRational::from_unirational(a);
            u = u * FactoredRational(a_fr.den_expanded());
            u = u.mul_factor(a_fr.num(), -1);
            u = u.mul_factor(w, -1);
            MetricBlocks::Slot slot{v, u.reduced(), {}};
            for (std::size_t c = 1; c < chosen.size(); ++c) {
                FactoredRational comp(g.fs.mu_poly(chosen[c]));
                comp = comp.mul_factor(w, -1);
                slot.theta.push_back(comp.derivative(v));
            }
            out.slots.push_back(std::move(slot));
        }
    }
    return out;
}

namespace {

// Apply the slot-wise linear substitution of the inverse-direction matrices
// g_i to a grouped multi-affine pairing polynomial: each variable v of group
// i maps P = P0 + v P1 to (a + c v) P0 + (b + d v) P1.
MPoly transform_pairing(const MPoly& p, const Partition& part, const std::vector<Mat2>& gs,
                        const std::vector<int>& groups) {
    MPoly out = p;
    for (int gi : groups) {
        const Mat2& t = gs[static_cast<std::size_t>(gi - 1)];
        for (const auto& v : part.group_vars(gi)) {
            MPoly p0 = out.coeff_of_power(v, 0);
            MPoly p1 = out.coeff_of_power(v, 1);
            if (out.degree(v) > 1) throw DomainError("pairing polynomial is not multi-affine");
            out = MPoly::linear(t.a, t.c, v) * p0 + MPoly::linear(t.b, t.d, v) * p1;
        }
    }
    return out;
}

}  // namespace

GeometrySpec transform_coordinates(const GeometrySpec& g, const std::vector<Mat2>& maps) {
    const auto& part = g.fs.partition();
    if (static_cast<int>(maps.size()) != part.k()) throw DomainError("one matrix per group required");
    std::vector<Mat2> inv;
    inv.reserve(maps.size());
    for (const auto& mmat : maps) inv.push_back(mmat.inverse());
    // Defining tensors transform by the inverse matrices on every slot
    // outside their own group.
    std::vector<GammaTensor> new_gammas;
    for (int j = 1; j <= part.k(); ++j) {
        std::vector<int> groups;
        for (int r = 1; r <= part.k(); ++r)
            if (r != j) groups.push_back(r);
        MPoly p = transform_pairing(g.fs.gamma_hat_poly(j), part, inv, groups);
        new_gammas.push_back(gamma_from_pairing(part, j, p));
    }
    std::vector<int> all_groups;
    for (int r = 1; r <= part.k(); ++r) all_groups.push_back(r);
    MPoly beta_pairing = transform_pairing(g.mu_beta(), part, inv, all_groups);
    HTensor new_beta = tensor_from_pairing(part, beta_pairing);
    // Profiles: A~(y) = (a + c y)^{d_i + 2} / det^{d_i + 1} * A((b + d y)/(a + c y)).
    std::map<VarId, UniRational> new_profiles;
    for (const auto& [v, a] : g.profiles) {
        const Mat2& t = inv[static_cast<std::size_t>(v.group - 1)];
        const int di = part.degree(v.group);
        UniRational sub = a.mobius_substitute(v, t.a, t.b, t.c, t.d);
        UniPoly pref = UniPoly({t.a, t.c}).pow(di + 2);
        Rational dpow = 1;
        for (int i = 0; i < di + 1; ++i) dpow *= t.det();
        UniRational res = sub * UniRational::polynomial(v, pref.scaled(Rational(1) / dpow));
        new_profiles.emplace(v, std::move(res));
    }
    FactorizationStructure new_fs = FactorizationStructure::custom(part, std::move(new_gammas));
    return make_geometry(std::move(new_fs), std::move(new_beta), std::move(new_profiles), g.formal);
}

}  // namespace sk
