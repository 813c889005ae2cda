#ifndef SK_STRUCTURE_HPP
#define SK_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "sk/linalg.hpp"
#include "sk/tensors.hpp"
#include "sk/unirational.hpp"

namespace sk {

// Validated Segre-Veronese factorization structure: the partition, the
// defining tensors, and a basis of the (m+1)-dimensional image computed by
// fraction-free row echelon on the generator tensors.
class FactorizationStructure {
  public:
    static FactorizationStructure veronese(int m);
    static FactorizationStructure segre(int m);
    static FactorizationStructure product_sv(Partition part);
    // points[j][r-index]: the line a_j^r in W_r^* for each group r != j+1;
    // given as pairs (a, b) per (group j, other group r).
    static FactorizationStructure decomposable(Partition part,
                                               const std::vector<std::vector<std::pair<Rational, Rational>>>& points);
    static FactorizationStructure two_point(Partition part, const Rational& pi1, const Rational& pi2);
    static FactorizationStructure custom(Partition part, std::vector<GammaTensor> gammas);

    const Partition& partition() const { return part_; }
    int m() const { return part_.m(); }
    int k() const { return part_.k(); }
    const std::vector<GammaTensor>& gammas() const { return gammas_; }
    const GammaTensor& gamma(int group) const { return gammas_.at(static_cast<std::size_t>(group - 1)); }
    const std::vector<HTensor>& basis_of_image() const { return basis_; }

    // <x-hat_j, Gamma_j>; the constant 1 for product structures.
    const MPoly& gamma_hat_poly(int group) const;

    // <mu, beta> for beta given by its full coefficient tensor.
    MPoly mu_poly(const HTensor& beta) const;

    // Exact membership of a tensor in the image; on success, coordinates in
    // basis_of_image().
    std::optional<std::vector<Rational>> membership(const HTensor& t) const;
    HTensor from_coordinates(const std::vector<Rational>& coords) const;

    // Factorization curve of group i at parameter value x:
    // ins_i((x,-1)^{(x) d_i} (x) Gamma_i).
    HTensor curve_eval(int group, const Rational& x) const;
    // Pairing polynomial <mu, curve_i(t)> with a symbolic parameter t.
    MPoly curve_pairing_poly(int group, VarId t) const;

    bool is_veronese() const;
    bool is_product_sv() const;   // all Gamma_j proportional to (x)(1,0)
    bool is_segre() const;        // product_sv with all d_j = 1
    // Two-intersection-point shape: groups 1..k-1 product-like, Gamma_k
    // carrying (pi1, pi2) on group 1. Returns (pi1, pi2) when it matches.
    std::optional<std::pair<Rational, Rational>> two_point_pi() const;

    // Whether Gamma_j decomposes in grouped p-slots for every j != p; when it
    // does, returns the directions e_j^p (normalized).
    std::optional<std::vector<std::pair<int, LinFactor>>> grouped_decomposition(int p) const;

    bool operator==(const FactorizationStructure& o) const;

  private:
    FactorizationStructure(Partition part, std::vector<GammaTensor> gammas);
    void validate_and_build_basis();

    Partition part_;
    std::vector<GammaTensor> gammas_;
    std::vector<HTensor> basis_;
    std::vector<MPoly> gamma_hat_;  // cached pairings
};

// Rank check without construction: valid(basis) or invalid(rank).
struct DimensionCheck {
    bool valid = false;
    int rank = 0;
    std::vector<HTensor> basis;
};
DimensionCheck validate_dimension(const Partition& part, const std::vector<GammaTensor>& gammas);

// Twist element: a member of the image with nonzero pairing polynomial.
struct TwistElement {
    HTensor tensor;
    std::vector<Rational> coords;  // in basis_of_image
};
TwistElement make_twist(const FactorizationStructure& fs, const HTensor& beta);

}  // namespace sk

#endif
