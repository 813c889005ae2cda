#include "sk/tensors.hpp"

#include "sk/unirational.hpp"

#include <algorithm>

namespace sk {

int Partition::m() const {
    int s = 0;
    for (int x : d) s += x;
    return s;
}

std::vector<VarId> Partition::group_vars(int group) const {
    std::vector<VarId> v;
    const int dg = degree(group);
    v.reserve(static_cast<std::size_t>(dg));
    for (int r = 1; r <= dg; ++r) v.push_back(VarId{group, r});
    return v;
}

std::vector<VarId> Partition::all_vars() const {
    std::vector<VarId> v;
    for (int j = 1; j <= k(); ++j) {
        auto g = group_vars(j);
        v.insert(v.end(), g.begin(), g.end());
    }
    return v;
}

void Partition::validate() const {
    if (d.empty()) throw DomainError("empty partition");
    for (int x : d)
        if (x < 1) throw DomainError("partition entries must be >= 1");
    if (m() < 2) throw DomainError("partition must sum to m >= 2");
}

MPoly pair_symmetric_eval(const std::vector<Rational>& profile, const std::vector<VarId>& vars) {
    if (profile.size() != vars.size() + 1)
        throw DomainError("profile length must be one more than the number of variables");
    MPoly acc;
    for (std::size_t a = 0; a < profile.size(); ++a) {
        if (profile[a] == 0) continue;
        acc += elementary_symmetric(static_cast<int>(a), vars).scaled(profile[a]);
    }
    return acc;
}

std::vector<Rational> power_profile(const Rational& a, const Rational& b, int d) {
    std::vector<Rational> t(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        Rational v = 1;
        for (int i = 0; i < d - j; ++i) v *= a;
        for (int i = 0; i < j; ++i) v *= b;
        t[static_cast<std::size_t>(j)] = v;
    }
    return t;
}

MPoly GammaTensor::pairing_poly(const Partition& part) const {
    MPoly acc;
    for (const auto& [deg, c] : coeffs) {
        MPoly term = MPoly::constant(c);
        for (std::size_t i = 0; i < group_ids.size(); ++i) {
            term *= elementary_symmetric(deg[i], part.group_vars(group_ids[i]));
        }
        acc += term;
    }
    return acc;
}

HTensor HTensor::operator+(const HTensor& o) const {
    HTensor r = *this;
    for (const auto& [deg, c] : o.coeffs) {
        auto it = r.coeffs.find(deg);
        if (it == r.coeffs.end()) {
            if (c != 0) r.coeffs[deg] = c;
        } else {
            it->second += c;
            if (it->second == 0) r.coeffs.erase(it);
        }
    }
    return r;
}

HTensor HTensor::scaled(const Rational& c) const {
    HTensor r;
    if (c == 0) return r;
    for (const auto& [deg, v] : coeffs) r.coeffs[deg] = v * c;
    return r;
}

MPoly HTensor::pairing_poly(const Partition& part) const {
    MPoly acc;
    for (const auto& [deg, c] : coeffs) {
        MPoly term = MPoly::constant(c);
        for (int j = 1; j <= part.k(); ++j) {
            term *= elementary_symmetric(deg[static_cast<std::size_t>(j - 1)], part.group_vars(j));
        }
        acc += term;
    }
    return acc;
}

std::vector<MultiDeg> all_multidegrees(const Partition& part) {
    std::vector<MultiDeg> out;
    MultiDeg cur(static_cast<std::size_t>(part.k()), 0);
    while (true) {
        out.push_back(cur);
        int j = part.k() - 1;
        while (j >= 0) {
            if (++cur[static_cast<std::size_t>(j)] <= part.d[static_cast<std::size_t>(j)]) break;
            cur[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return out;
}

std::vector<Rational> HTensor::flatten(const Partition& part) const {
    auto degs = all_multidegrees(part);
    std::vector<Rational> v;
    v.reserve(degs.size());
    for (const auto& d : degs) {
        auto it = coeffs.find(d);
        v.push_back(it == coeffs.end() ? Rational(0) : it->second);
    }
    return v;
}

HTensor HTensor::unflatten(const Partition& part, const std::vector<Rational>& v) {
    auto degs = all_multidegrees(part);
    if (v.size() != degs.size()) throw DomainError("flat coefficient vector has wrong length");
    HTensor t;
    for (std::size_t i = 0; i < degs.size(); ++i) {
        if (v[i] != 0) t.coeffs[degs[i]] = v[i];
    }
    return t;
}

HTensor ins_generator(const Partition& part, int group, int sym_degree, const GammaTensor& gamma) {
    if (gamma.excluded != group) throw DomainError("gamma tensor excludes a different group");
    HTensor t;
    for (const auto& [gdeg, c] : gamma.coeffs) {
        MultiDeg full(static_cast<std::size_t>(part.k()), 0);
        full[static_cast<std::size_t>(group - 1)] = sym_degree;
        for (std::size_t i = 0; i < gamma.group_ids.size(); ++i) {
            full[static_cast<std::size_t>(gamma.group_ids[i] - 1)] = gdeg[i];
        }
        if (c != 0) t.coeffs[std::move(full)] = c;
    }
    return t;
}

namespace {

// Leading monomial of prod_j sigma_{a_j}(group j vars): the product of the
// first a_j variables of each group.
Monomial leading_monomial(const MultiDeg& deg, const std::vector<int>& groups) {
    Monomial m;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (int r = 1; r <= deg[i]; ++r) m.emplace_back(VarId{groups[i], r}, 1);
    }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

HTensor tensor_from_pairing(const Partition& part, const MPoly& pairing) {
    std::vector<int> groups;
    for (int j = 1; j <= part.k(); ++j) groups.push_back(j);
    HTensor t;
    for (const auto& deg : all_multidegrees(part)) {
        Rational c = pairing.coeff(leading_monomial(deg, groups));
        if (c != 0) t.coeffs[deg] = c;
    }
    if (!(t.pairing_poly(part) == pairing))
        throw DomainError("polynomial is not grouped-symmetric multi-affine of the expected shape");
    return t;
}

GammaTensor gamma_from_pairing(const Partition& part, int excluded, const MPoly& pairing) {
    GammaTensor g;
    g.excluded = excluded;
    for (int j = 1; j <= part.k(); ++j)
        if (j != excluded) g.group_ids.push_back(j);
    if (g.group_ids.empty()) {
        // Empty tensor product: the pairing must be a constant scalar.
        if (!pairing.is_constant()) throw DomainError("scalar gamma pairing must be constant");
        if (pairing.constant_value() != 0) g.coeffs[MultiDeg{}] = pairing.constant_value();
        return g;
    }
    // Enumerate multi-degrees over the non-excluded groups.
    std::vector<int> caps;
    for (int j : g.group_ids) caps.push_back(part.degree(j));
    MultiDeg cur(g.group_ids.size(), 0);
    bool done = false;
    while (!done) {
        Rational c = pairing.coeff(leading_monomial(cur, g.group_ids));
        if (c != 0) g.coeffs[cur] = c;
        std::size_t i = g.group_ids.size();
        while (true) {
            if (i == 0) {
                done = true;
                break;
            }
            --i;
            if (++cur[i] <= caps[i]) break;
            cur[i] = 0;
        }
    }
    if (!(g.pairing_poly(part) == pairing))
        throw DomainError("polynomial is not grouped-symmetric of the expected shape");
    return g;
}

Decomposability decompose_in_group(const Partition& part, const HTensor& t, int p) {
    Decomposability out;
    const int dp = part.degree(p);
    // Slice along group p: rows indexed by a_p, columns by the remaining
    // multi-degree.
    std::map<MultiDeg, std::vector<Rational>> cols;
    for (const auto& [deg, c] : t.coeffs) {
        MultiDeg rest = deg;
        int ap = rest[static_cast<std::size_t>(p - 1)];
        rest.erase(rest.begin() + (p - 1));
        auto& col = cols[rest];
        if (col.empty()) col.assign(static_cast<std::size_t>(dp) + 1, Rational(0));
        col[static_cast<std::size_t>(ap)] = c;
    }
    if (cols.empty()) return out;  // zero tensor: indecomposable by convention
    // Rank-one test: all columns proportional to a common profile vector.
    std::vector<Rational> profile;
    for (const auto& [rest, col] : cols) {
        (void)rest;
        if (profile.empty()) {
            profile = col;
            continue;
        }
        // 2x2 minors against the reference column must vanish.
        for (int i = 0; i <= dp; ++i) {
            for (int j = i + 1; j <= dp; ++j) {
                if (profile[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(j)] !=
                    profile[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(i)]) {
                    return out;
                }
            }
        }
    }
    // Normalize the profile by its first nonzero entry to define K.
    int lead = -1;
    for (int i = 0; i <= dp; ++i) {
        if (profile[static_cast<std::size_t>(i)] != 0) {
            lead = i;
            break;
        }
    }
    if (lead < 0) return out;
    // remainder K over the other groups: K[rest] = col[lead] / profile[lead]
    GammaTensor k;
    k.excluded = p;
    for (int j = 1; j <= part.k(); ++j)
        if (j != p) k.group_ids.push_back(j);
    for (const auto& [rest, col] : cols) {
        Rational v = col[static_cast<std::size_t>(lead)] / profile[static_cast<std::size_t>(lead)];
        if (v != 0) k.coeffs[rest] = v;
    }
    out.profile = profile;
    out.remainder = std::move(k);
    // Pure-power test: the Hankel 2x2 minors profile_i profile_{i+2} =
    // profile_{i+1}^2 plus no interior gaps.
    bool power = true;
    for (int i = 0; i + 2 <= dp; ++i) {
        if (profile[static_cast<std::size_t>(i)] * profile[static_cast<std::size_t>(i + 2)] !=
            profile[static_cast<std::size_t>(i + 1)] * profile[static_cast<std::size_t>(i + 1)]) {
            power = false;
            break;
        }
    }
    if (power) {
        // Geometric profile: characterize (a, b) up to scale.
        int first = -1, last = -1;
        for (int i = 0; i <= dp; ++i) {
            if (profile[static_cast<std::size_t>(i)] != 0) {
                if (first < 0) first = i;
                last = i;
            }
        }
        // t (a^{d-j} b^j): support must be {0..d}, {0}, or {d}.
        if (first == 0 && last == 0) {
            out.kind = Decomposability::kDecomposable;
            out.a = 1;
            out.b = 0;
            out.t = profile[0];
        } else if (first == dp && last == dp) {
            out.kind = Decomposability::kDecomposable;
            out.a = 0;
            out.b = 1;
            out.t = profile[static_cast<std::size_t>(dp)];
        } else if (first == 0 && last == dp) {
            Rational ratio = profile[1] / profile[0];  // b/a
            auto [lf, s] = normalize_linear(Rational(1), ratio);
            (void)s;
            out.a = lf.a;
            out.b = lf.b;
            // profile = t * power_profile(a,b): match at index 0.
            Rational ad = 1;
            for (int i = 0; i < dp; ++i) ad *= out.a;
            out.kind = Decomposability::kDecomposable;
            out.t = profile[0] / ad;
        } else {
            out.kind = Decomposability::kRankOneNotPower;
        }
        // Adjacent Hankel minors miss gapped supports such as (1,0,0,1);
        // confirm against the reconstructed power profile.
        if (out.kind == Decomposability::kDecomposable) {
            auto expect = power_profile(out.a, out.b, dp);
            for (int i = 0; i <= dp; ++i) {
                if (profile[static_cast<std::size_t>(i)] != out.t * expect[static_cast<std::size_t>(i)]) {
                    out.kind = Decomposability::kRankOneNotPower;
                    break;
                }
            }
        }
    } else {
        out.kind = Decomposability::kRankOneNotPower;
    }
    return out;
}

}  // namespace sk
