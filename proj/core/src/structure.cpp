#include "sk/structure.hpp"

#include <algorithm>

namespace sk {

namespace {

GammaTensor product_gamma(const Partition& part, int group,
                          const std::vector<std::pair<Rational, Rational>>& directions) {
    // directions[i] is the line in W_{group_ids[i]}^*; Gamma = (x) a^{(x) d_r}.
    GammaTensor g;
    g.excluded = group;
    for (int j = 1; j <= part.k(); ++j)
        if (j != group) g.group_ids.push_back(j);
    if (directions.size() != g.group_ids.size()) throw DomainError("wrong number of directions for gamma tensor");
    std::vector<std::vector<Rational>> profiles;
    for (std::size_t i = 0; i < g.group_ids.size(); ++i) {
        profiles.push_back(power_profile(directions[i].first, directions[i].second, part.degree(g.group_ids[i])));
    }
    // Outer product over the per-group profiles.
    MultiDeg cur(g.group_ids.size(), 0);
    bool done = g.group_ids.empty();
    if (done) {
        g.coeffs[MultiDeg{}] = 1;
        return g;
    }
    while (!done) {
        Rational c = 1;
        for (std::size_t i = 0; i < cur.size(); ++i) c *= profiles[i][static_cast<std::size_t>(cur[i])];
        if (c != 0) g.coeffs[cur] = c;
        std::size_t i = cur.size();
        while (true) {
            if (i == 0) {
                done = true;
                break;
            }
            --i;
            if (++cur[i] <= part.degree(g.group_ids[i])) break;
            cur[i] = 0;
        }
    }
    return g;
}

}  // namespace

DimensionCheck validate_dimension(const Partition& part, const std::vector<GammaTensor>& gammas) {
    part.validate();
    if (static_cast<int>(gammas.size()) != part.k()) throw DomainError("one defining tensor per group required");
    for (int j = 1; j <= part.k(); ++j) {
        if (gammas[static_cast<std::size_t>(j - 1)].is_zero()) throw DomainError("defining tensor must be nonzero");
        if (gammas[static_cast<std::size_t>(j - 1)].excluded != j)
            throw DomainError("defining tensor indexed against the wrong group");
    }
    // Stack the generators ins_j(E_a (x) Gamma_j) as rows of the compressed
    // coefficient matrix and run exact elimination.
    auto degs = all_multidegrees(part);
    std::vector<HTensor> generators;
    for (int j = 1; j <= part.k(); ++j) {
        for (int a = 0; a <= part.degree(j); ++a) {
            generators.push_back(ins_generator(part, j, a, gammas[static_cast<std::size_t>(j - 1)]));
        }
    }
    QMatrix mat(static_cast<int>(generators.size()), static_cast<int>(degs.size()));
    for (std::size_t r = 0; r < generators.size(); ++r) {
        auto flat = generators[r].flatten(part);
        for (std::size_t c = 0; c < flat.size(); ++c) mat.at(static_cast<int>(r), static_cast<int>(c)) = flat[c];
    }
    auto rows = ffge_echelon_rows(mat);
    DimensionCheck out;
    out.rank = static_cast<int>(rows.size());
    out.valid = out.rank == part.m() + 1;
    if (out.valid) {
        for (const auto& row : rows) out.basis.push_back(HTensor::unflatten(part, row));
    }
    return out;
}

FactorizationStructure::FactorizationStructure(Partition part, std::vector<GammaTensor> gammas)
    : part_(std::move(part)), gammas_(std::move(gammas)) {
    validate_and_build_basis();
}

void FactorizationStructure::validate_and_build_basis() {
    auto check = validate_dimension(part_, gammas_);
    if (!check.valid) {
        throw InvalidStructure("image has dimension " + std::to_string(check.rank) + ", expected " +
                                   std::to_string(part_.m() + 1),
                               check.rank);
    }
    basis_ = std::move(check.basis);
    gamma_hat_.clear();
    for (int j = 1; j <= part_.k(); ++j) {
        gamma_hat_.push_back(gammas_[static_cast<std::size_t>(j - 1)].pairing_poly(part_));
    }
}

FactorizationStructure FactorizationStructure::veronese(int m) {
    Partition p{{m}};
    GammaTensor g;
    g.excluded = 1;
    g.coeffs[MultiDeg{}] = 1;
    return FactorizationStructure(std::move(p), {std::move(g)});
}

FactorizationStructure FactorizationStructure::segre(int m) {
    Partition p{std::vector<int>(static_cast<std::size_t>(m), 1)};
    return product_sv(std::move(p));
}

FactorizationStructure FactorizationStructure::product_sv(Partition part) {
    part.validate();
    std::vector<GammaTensor> gammas;
    for (int j = 1; j <= part.k(); ++j) {
        std::vector<std::pair<Rational, Rational>> dirs(static_cast<std::size_t>(part.k() - 1), {Rational(1), Rational(0)});
        gammas.push_back(product_gamma(part, j, dirs));
    }
    return FactorizationStructure(std::move(part), std::move(gammas));
}

FactorizationStructure FactorizationStructure::decomposable(
    Partition part, const std::vector<std::vector<std::pair<Rational, Rational>>>& points) {
    part.validate();
    if (static_cast<int>(points.size()) != part.k()) throw DomainError("one point family per group required");
    std::vector<GammaTensor> gammas;
    for (int j = 1; j <= part.k(); ++j) {
        gammas.push_back(product_gamma(part, j, points[static_cast<std::size_t>(j - 1)]));
    }
    return FactorizationStructure(std::move(part), std::move(gammas));
}

FactorizationStructure FactorizationStructure::two_point(Partition part, const Rational& pi1, const Rational& pi2) {
    part.validate();
    if (part.k() < 3) throw DomainError("two-point structure needs at least three groups");
    if (pi2 == 0) throw DomainError("second component of the intersection direction must be nonzero");
    std::vector<GammaTensor> gammas;
    const int k = part.k();
    for (int j = 1; j <= k; ++j) {
        std::vector<std::pair<Rational, Rational>> dirs;
        for (int r = 1; r <= k; ++r) {
            if (r == j) continue;
            if (j == k && r == 1)
                dirs.emplace_back(pi1, pi2);
            else
                dirs.emplace_back(Rational(1), Rational(0));
        }
        gammas.push_back(product_gamma(part, j, dirs));
    }
    return FactorizationStructure(std::move(part), std::move(gammas));
}

FactorizationStructure FactorizationStructure::custom(Partition part, std::vector<GammaTensor> gammas) {
    return FactorizationStructure(std::move(part), std::move(gammas));
}

const MPoly& FactorizationStructure::gamma_hat_poly(int group) const {
    return gamma_hat_.at(static_cast<std::size_t>(group - 1));
}

MPoly FactorizationStructure::mu_poly(const HTensor& beta) const { return beta.pairing_poly(part_); }

std::optional<std::vector<Rational>> FactorizationStructure::membership(const HTensor& t) const {
    auto degs = all_multidegrees(part_);
    QMatrix a(static_cast<int>(degs.size()), static_cast<int>(basis_.size()));
    for (std::size_t c = 0; c < basis_.size(); ++c) {
        auto flat = basis_[c].flatten(part_);
        for (std::size_t r = 0; r < flat.size(); ++r) a.at(static_cast<int>(r), static_cast<int>(c)) = flat[r];
    }
    auto b = t.flatten(part_);
    return solve_linear(std::move(a), std::move(b));
}

HTensor FactorizationStructure::from_coordinates(const std::vector<Rational>& coords) const {
    if (coords.size() != basis_.size()) throw DomainError("coordinate vector has wrong length");
    HTensor t;
    for (std::size_t i = 0; i < coords.size(); ++i) t = t + basis_[i].scaled(coords[i]);
    return t;
}

HTensor FactorizationStructure::curve_eval(int group, const Rational& x) const {
    // ins_i((x,-1)^{(x) d_i} (x) Gamma_i): group-i profile t_j = x^{d-j}(-1)^j.
    auto prof = power_profile(x, Rational(-1), part_.degree(group));
    HTensor t;
    for (const auto& [gdeg, c] : gamma(group).coeffs) {
        for (int a = 0; a <= part_.degree(group); ++a) {
            if (prof[static_cast<std::size_t>(a)] == 0 || c == 0) continue;
            MultiDeg full(static_cast<std::size_t>(part_.k()), 0);
            full[static_cast<std::size_t>(group - 1)] = a;
            for (std::size_t i = 0; i < gamma(group).group_ids.size(); ++i) {
                full[static_cast<std::size_t>(gamma(group).group_ids[i] - 1)] = gdeg[i];
            }
            t.coeffs[full] += prof[static_cast<std::size_t>(a)] * c;
        }
    }
    std::erase_if(t.coeffs, [](const auto& kv) { return kv.second == 0; });
    return t;
}

MPoly FactorizationStructure::curve_pairing_poly(int group, VarId t) const {
    // <mu, ins_i((t,-1)^{(x) d_i} (x) Gamma_i)> = prod_s (t - x_{is}) * <x-hat_i, Gamma_i>
    MPoly prod = MPoly::constant(1);
    for (const auto& v : part_.group_vars(group)) {
        prod *= (MPoly::var(t) - MPoly::var(v));
    }
    return prod * gamma_hat_poly(group);
}

bool FactorizationStructure::is_veronese() const { return part_.k() == 1; }

bool FactorizationStructure::is_product_sv() const {
    for (int j = 1; j <= part_.k(); ++j) {
        const auto& g = gamma(j);
        if (g.coeffs.size() != 1) return false;
        const auto& [deg, c] = *g.coeffs.begin();
        (void)c;
        for (int x : deg)
            if (x != 0) return false;
    }
    return true;
}

bool FactorizationStructure::is_segre() const {
    if (!is_product_sv()) return false;
    for (int x : part_.d)
        if (x != 1) return false;
    return true;
}

std::optional<std::pair<Rational, Rational>> FactorizationStructure::two_point_pi() const {
    const int k = part_.k();
    if (k < 3) return std::nullopt;
    // Groups 1..k-1 must carry (x)(1,0); Gamma_k carries (pi1,pi2) on group 1
    // and (1,0) elsewhere.
    for (int j = 1; j < k; ++j) {
        const auto& g = gamma(j);
        if (g.coeffs.size() != 1) return std::nullopt;
        const auto& [deg, c] = *g.coeffs.begin();
        if (c != 1) return std::nullopt;
        for (int x : deg)
            if (x != 0) return std::nullopt;
    }
    // Gamma_k: decompose the group-1 profile.
    const auto& gk = gamma(k);
    const int d1 = part_.degree(1);
    std::vector<Rational> prof(static_cast<std::size_t>(d1) + 1, Rational(0));
    for (const auto& [deg, c] : gk.coeffs) {
        for (std::size_t i = 1; i < deg.size(); ++i)
            if (deg[i] != 0) return std::nullopt;  // groups 2..k-1 must sit at (1,0)
        prof[static_cast<std::size_t>(deg[0])] = c;
    }
    if (prof[0] == 0) return std::nullopt;
    // prof must be power_profile(pi1, pi2) with pi2 != 0, normalized so that
    // the structure equals the two_point builder output.
    if (d1 == 0) return std::nullopt;
    Rational pi1 = prof[0], pi2 = prof[1];
    if (pi2 == 0) return std::nullopt;
    auto expect = power_profile(pi1, pi2, d1);
    // Scale so leading entry matches: power_profile(pi1,pi2)[0] = pi1^d1.
    Rational scale = prof[0];
    Rational p1d = 1;
    for (int i = 0; i < d1; ++i) p1d *= pi1;
    scale = prof[0] / p1d;
    for (int i = 0; i <= d1; ++i) {
        if (prof[static_cast<std::size_t>(i)] != scale * expect[static_cast<std::size_t>(i)]) return std::nullopt;
    }
    if (scale != 1) return std::nullopt;
    return std::make_pair(pi1, pi2);
}

std::optional<std::vector<std::pair<int, LinFactor>>> FactorizationStructure::grouped_decomposition(int p) const {
    std::vector<std::pair<int, LinFactor>> out;
    for (int j = 1; j <= part_.k(); ++j) {
        if (j == p) continue;
        // View Gamma_j as a full tensor with group-j degree 0 and decompose
        // along group p.
        HTensor t = ins_generator(part_, j, 0, gamma(j));
        auto dec = decompose_in_group(part_, t, p);
        if (dec.kind != Decomposability::kDecomposable) return std::nullopt;
        auto [lf, s] = normalize_linear(dec.a, dec.b);
        (void)s;
        out.emplace_back(j, lf);
    }
    return out;
}

bool FactorizationStructure::operator==(const FactorizationStructure& o) const {
    if (!(part_ == o.part_)) return false;
    for (int j = 1; j <= part_.k(); ++j) {
        if (!(gamma(j).coeffs == o.gamma(j).coeffs)) return false;
    }
    return true;
}

TwistElement make_twist(const FactorizationStructure& fs, const HTensor& beta) {
    auto coords = fs.membership(beta);
    if (!coords) throw DomainError("twist element does not lie in the structure image");
    if (fs.mu_poly(beta).is_zero()) throw DomainError("twist element has zero momentum pairing");
    return TwistElement{beta, *coords};
}

}  // namespace sk
