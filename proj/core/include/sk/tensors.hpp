#ifndef SK_TENSORS_HPP
#define SK_TENSORS_HPP

#include <map>
#include <optional>
#include <vector>

#include "sk/mpoly.hpp"

namespace sk {

// Partition m = d_1 + ... + d_k of the slot groups.
struct Partition {
    std::vector<int> d;
    int k() const { return static_cast<int>(d.size()); }
    int m() const;
    int degree(int group) const { return d.at(static_cast<std::size_t>(group - 1)); }
    std::vector<VarId> group_vars(int group) const;
    std::vector<VarId> all_vars() const;
    void validate() const;  // d_j >= 1, m >= 2
    bool operator==(const Partition& o) const { return d == o.d; }
};

// Tensors in symmetric powers are stored against the elementary-symmetric
// pairing basis: a profile (t_0..t_d) pairs with variables y_1..y_d as
// sum_a t_a sigma_a(y), and the decomposable (a,b)^{(x) d} has t_j = a^{d-j} b^j.
MPoly pair_symmetric_eval(const std::vector<Rational>& profile, const std::vector<VarId>& vars);

// Profile of (a,b)^{(x) d}.
std::vector<Rational> power_profile(const Rational& a, const Rational& b, int d);

using MultiDeg = std::vector<int>;

// Element of the tensor product of S^{d_r} W_r^* over groups r != excluded.
struct GammaTensor {
    int excluded = 0;
    std::vector<int> group_ids;            // ascending, all groups != excluded
    std::map<MultiDeg, Rational> coeffs;   // index aligned with group_ids
    bool is_zero() const { return coeffs.empty(); }
    // <x-hat_excluded, Gamma>: a polynomial in all variables outside the
    // excluded group.
    MPoly pairing_poly(const Partition& part) const;
};

// Element of the full tensor product of S^{d_j} W_j^*, j = 1..k, in the same
// compressed basis; multi-degree (a_1..a_k) with 0 <= a_j <= d_j.
struct HTensor {
    std::map<MultiDeg, Rational> coeffs;
    bool is_zero() const { return coeffs.empty(); }
    HTensor operator+(const HTensor& o) const;
    HTensor scaled(const Rational& c) const;
    bool operator==(const HTensor& o) const { return coeffs == o.coeffs; }
    // <x, T> = sum_a T[a] prod_j sigma_{a_j}(group-j vars).
    MPoly pairing_poly(const Partition& part) const;
    // Flat coefficient vector over all multi-degrees in lexicographic order.
    std::vector<Rational> flatten(const Partition& part) const;
    static HTensor unflatten(const Partition& part, const std::vector<Rational>& v);
};

// All multi-degrees (a_1..a_k), 0 <= a_j <= d_j, in lexicographic order.
std::vector<MultiDeg> all_multidegrees(const Partition& part);

// ins_j(E_a (x) Gamma_j): the full tensor whose group-j profile is the basis
// element at degree a and whose other groups carry Gamma_j.
HTensor ins_generator(const Partition& part, int group, int sym_degree, const GammaTensor& gamma);

// Read an HTensor back off its pairing polynomial. Throws DomainError when
// the polynomial is not grouped-symmetric multi-affine of the right shape.
HTensor tensor_from_pairing(const Partition& part, const MPoly& pairing);

// Same for a GammaTensor over the groups != excluded.
GammaTensor gamma_from_pairing(const Partition& part, int excluded, const MPoly& pairing);

// Decomposability of T in grouped p-slots.
struct Decomposability {
    enum Kind {
        kDecomposable,      // T = ins_p( t (a,b)^{(x) d_p} (x) K )
        kRankOneNotPower,   // group-p slice has rank one but the profile is
                            // not a pure power (d_p = 2 boundary case)
        kIndecomposable,
    };
    Kind kind = kIndecomposable;
    Rational a, b;                  // normalized direction, kind == kDecomposable
    Rational t;                     // scalar with profile = t * power_profile(a,b)
    std::vector<Rational> profile;  // group-p profile (rank-one cases)
    GammaTensor remainder;          // K, scaled so that T = ins_p(profile (x) K)
};

Decomposability decompose_in_group(const Partition& part, const HTensor& t, int p);

}  // namespace sk

#endif
