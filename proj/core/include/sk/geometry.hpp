#ifndef SK_GEOMETRY_HPP
#define SK_GEOMETRY_HPP

#include <map>

#include "sk/factored.hpp"
#include "sk/structure.hpp"

namespace sk {

// 2x2 rational matrix [[a, b], [c, d]] acting per group as the projective
// coordinate change y = (b + d x) / (a + c x).
struct Mat2 {
    Rational a, b, c, d;
    Rational det() const { return a * d - b * c; }
    Mat2 inverse() const;
};

// Separable geometry: structure, twist element, and one profile function per
// slot. "formal" allows identically zero profiles (degenerate checks only).
struct GeometrySpec {
    FactorizationStructure fs;
    HTensor beta;
    std::map<VarId, UniRational> profiles;
    bool formal = false;

    MPoly mu_beta() const { return fs.mu_poly(beta); }
    const UniRational& profile(VarId v) const;
};

GeometrySpec make_geometry(FactorizationStructure fs, HTensor beta, std::map<VarId, UniRational> profiles,
                           bool formal = false);

// Slot difference factors of Delta_{ir} = prod_{s != r} (x_{ir} - x_{is}).
std::vector<MPoly> delta_factors(const Partition& part, int group, int slot);

// Laplace operator on an invariant function f.
FactoredRational laplacian_invariant(const GeometrySpec& g, const MPoly& f, const CancelToken* cancel = nullptr);

// Ratio of symplectic to holomorphic volume (the Ricci potential's argument),
// normalized constant 1.
FactoredRational ricci_volume_ratio(const GeometrySpec& g);

FactoredRational scalar_curvature(const GeometrySpec& g, const CancelToken* cancel = nullptr);

struct CurvatureReport {
    FactoredRational scal;
    bool extremal = false;
    std::vector<Rational> alpha_coords;  // in fs.basis_of_image()
    HTensor alpha;
    FactoredRational residual;  // irreducible residual when not extremal
};

// Clears denominators of the extremality equation and tests whether the
// left-hand side lies in the span of momentum pairings; on success extracts
// the Killing element alpha with the convention LHS = <mu, alpha>.
CurvatureReport extremality_residual(const GeometrySpec& g, const CancelToken* cancel = nullptr);

struct MetricBlocks {
    // h-basis used: first element is beta, then the chosen complement of
    // beta inside the image basis.
    std::vector<HTensor> h_basis;
    struct Slot {
        VarId var;
        FactoredRational u;                  // metric coefficient on dx^2
        std::vector<FactoredRational> theta;  // d(mu_beta) components over the complement
    };
    std::vector<Slot> slots;
};

MetricBlocks metric_blocks_symbolic(const GeometrySpec& g);

// Projective change of coordinates y_{ir} = (b_i + d_i x_{ir})/(a_i + c_i x_{ir})
// per group; returns the geometry written in the new coordinates.
GeometrySpec transform_coordinates(const GeometrySpec& g, const std::vector<Mat2>& maps);

}  // namespace sk

#endif
