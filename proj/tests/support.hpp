#ifndef SK_TESTS_SUPPORT_HPP
#define SK_TESTS_SUPPORT_HPP

#include "sk/geometry.hpp"
#include "sk/rng.hpp"
#include "sk/solver.hpp"

namespace sk::testing {

inline std::vector<VarId> vars1(int n) {
    std::vector<VarId> v;
    for (int j = 1; j <= n; ++j) v.push_back(VarId{1, j});
    return v;
}

inline MPoly xv(int group, int slot) { return MPoly::var(VarId{group, slot}); }

// Twist tensor for a product-type structure from per-group profiles:
// beta = c0 * (1,0)-block + sum over groups of the given sigma coefficients.
inline HTensor product_beta(const Partition& part, const Rational& c0,
                            const std::map<int, std::vector<Rational>>& per_group) {
    HTensor t;
    MultiDeg zero(static_cast<std::size_t>(part.k()), 0);
    if (c0 != 0) t.coeffs[zero] = c0;
    for (const auto& [group, coeffs] : per_group) {
        for (std::size_t r = 0; r < coeffs.size(); ++r) {
            if (coeffs[r] == 0) continue;
            MultiDeg d = zero;
            d[static_cast<std::size_t>(group - 1)] = static_cast<int>(r) + 1;
            t.coeffs[d] = coeffs[r];
        }
    }
    return t;
}

// Veronese twist from a full profile (t_0..t_m).
inline HTensor veronese_beta(int m, const std::vector<Rational>& profile) {
    HTensor t;
    for (int a = 0; a <= m; ++a) {
        if (profile[static_cast<std::size_t>(a)] != 0) t.coeffs[MultiDeg{a}] = profile[static_cast<std::size_t>(a)];
    }
    return t;
}

inline GeometrySpec instance(const FactorizationStructure& fs, const HTensor& beta, const SolutionFamily& fam,
                             Rng& rng) {
    auto values = fam.draw(rng);
    return make_geometry(fs, beta, fam.instantiate(values), /*formal=*/true);
}

// Add a random rational to one numerator coefficient of one profile.
inline GeometrySpec perturb_one_coefficient(const GeometrySpec& g, Rng& rng) {
    auto profiles = g.profiles;
    std::vector<VarId> keys;
    for (const auto& [v, a] : profiles) {
        (void)a;
        keys.push_back(v);
    }
    const VarId v = keys[static_cast<std::size_t>(rng.int_in(0, static_cast<int>(keys.size()) - 1))];
    const UniRational& a = profiles.at(v);
    int deg = std::max(a.num().degree(), 0);
    int pos = rng.int_in(0, deg);
    std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (int i = 0; i <= a.num().degree(); ++i) coeffs[static_cast<std::size_t>(i)] = a.num().coeff(i);
    coeffs[static_cast<std::size_t>(pos)] += rng.nonzero_rational();
    profiles.at(v) = UniRational(v, UniPoly(std::move(coeffs)), a.den());
    return GeometrySpec{g.fs, g.beta, std::move(profiles), true};
}

}  // namespace sk::testing

#endif
