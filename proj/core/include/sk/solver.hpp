#ifndef SK_SOLVER_HPP
#define SK_SOLVER_HPP

#include <string>

#include "sk/geometry.hpp"
#include "sk/rng.hpp"

namespace sk {

struct UnsupportedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree data of the cleared extremality equation per group.
struct DegreeProfile {
    struct Group {
        int ell = 0;                    // prolongation order bound
        std::optional<int> L;           // polynomial-coefficient degree, when defined
        std::vector<int> o_set;         // groups j with e_j^p independent of (1,0)
        bool grouped_decomposable = false;
        bool twist_constant = false;    // d<mu,beta>/dx_{p q} == 0
    };
    std::vector<Group> groups;  // index p-1
};

DegreeProfile degree_profile(const FactorizationStructure& fs, const HTensor& beta);

// Per-group classification of the twist element.
struct BetaClass {
    enum Kind { kConstant, kDecomposable, kIndecomposable };
    struct PerGroup {
        Kind kind = kConstant;
        Rational a, b, t;  // decomposable direction and scalar
        // d_p == 2 diagnostics: the slice is rank one with quadratic profile
        // (s0, s1, s2); realness of s0 + 2 s1 x + s2 x^2 decided by the sign
        // of the discriminant, with a rational-square certificate when the
        // root is rational.
        bool rank_one_shape = false;
        std::vector<Rational> shape;
        bool has_real_root = false;
        bool rational_root_certificate = false;
    };
    std::vector<PerGroup> per_group;
    std::vector<int> s_set;  // groups with nonconstant twist contribution
};

BetaClass classify_beta(const FactorizationStructure& fs, const HTensor& beta);

// One case of an extremality theorem: linear parameter templates per slot
// plus exact linear constraints among the parameters.
struct SolutionFamily {
    std::string case_tag;
    std::vector<std::string> params;
    std::vector<std::map<std::string, Rational>> constraints;  // sum coeff*param = 0
    std::map<VarId, std::vector<std::pair<std::string, UniRational>>> templates;

    std::map<VarId, UniRational> instantiate(const std::map<std::string, Rational>& values) const;
    std::map<std::string, Rational> draw(Rng& rng) const;
};

std::vector<SolutionFamily> solve_veronese(const FactorizationStructure& fs, const HTensor& beta);
std::vector<SolutionFamily> solve_product_sv(const FactorizationStructure& fs, const HTensor& beta);
std::vector<SolutionFamily> solve_two_point(const FactorizationStructure& fs, const HTensor& beta);
// Dispatch on the structure kind; UnsupportedCase for inputs outside the
// classified families.
std::vector<SolutionFamily> solve_families(const FactorizationStructure& fs, const HTensor& beta);

// Residual of the diagonal necessary condition relating profiles of two
// slots q, r of a group p with d_p >= 2; zero is necessary for extremality.
FactoredRational diagonal_ode_residual(const FactorizationStructure& fs, const HTensor& beta, int p, int q, int r,
                                       const UniRational& a_q, const UniRational& a_r);

// Polynomial solutions up to the degree cap of
//   (g + y^2)^2 A'' - 2(m+1) y (g + y^2) A' + (m+1)(m+2) y^2 A = 0,
// y = b + c x, g = a c - b^2; returned in the x variable. c must be nonzero.
std::vector<UniPoly> ode_polynomial_basis(int m, const Rational& a, const Rational& b, const Rational& c,
                                          int degree_cap);

struct DegreeCheckItem {
    VarId slot;
    bool within = true;
    int observed = 0;
    int cap = 0;
    std::string reason;  // set on violation
};
std::vector<DegreeCheckItem> degree_bound_check(const FactorizationStructure& fs, const HTensor& beta,
                                                const std::map<VarId, UniRational>& candidate);

// Closed form of the group-p block of the extremality left-hand side when
// the defining tensors outside p decompose in grouped p-slots and the twist
// is constant or decomposes along p.
FactoredRational closed_form_group_sum(const FactorizationStructure& fs, const HTensor& beta, int p,
                                       const UniPoly& upsilon);

// Direct symbolic group-p block (cross-check target for the closed form).
FactoredRational group_block_sum(const GeometrySpec& g, int p);

// Exact linear independence of {W^2, W W', W'^2} over the rational functions
// in x_{p,1}, W = <mu, beta>.
bool three_term_independence(const FactorizationStructure& fs, const HTensor& beta, int p);

}  // namespace sk

#endif
