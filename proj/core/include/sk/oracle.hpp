#ifndef SK_ORACLE_HPP
#define SK_ORACLE_HPP

#include <Eigen/Dense>

#include "sk/geometry.hpp"
#include "sk/rng.hpp"

namespace sk {

// Sample point with an admissibility margin: the minimum absolute value of
// every tracked denominator factor (slot differences, gamma-hat pairings,
// the twist pairing, profile numerators and denominators).
struct SamplePoint {
    std::map<VarId, Rational> x;
    double margin = 0;
    std::map<VarId, double> as_doubles() const;
};

struct NumericMetric {
    Eigen::MatrixXd g;  // 2m x 2m, coordinates (x_{ir}; t-basis)
    SamplePoint point;
};

double admissibility_margin(const GeometrySpec& g, const std::map<VarId, double>& x);

// Draw admissible points with at least the requested margin, coordinates on
// a fine rational grid. Throws after too many rejections.
std::vector<SamplePoint> sample_admissible_points(const GeometrySpec& g, int count, std::uint64_t seed,
                                                  double min_margin = 1e-3);

// Block metric evaluated at the point; DomainError when inadmissible.
NumericMetric numeric_metric(const GeometrySpec& g, const SamplePoint& pt, double min_margin = 1e-3);

// Finite-difference scalar curvature with one Richardson level over h, h/2.
double fd_scalar_curvature(const GeometrySpec& g, const SamplePoint& pt, double h = 1e-3);

struct CompatibilityReport {
    bool complex_structure_ok = false;  // J^2 = -Id
    bool metric_invariance_ok = false;  // g(J., J.) = g
    bool form_match_ok = false;         // omega = g(J., .)
    bool closed_ok = false;             // d omega = 0 (finite differences)
    double max_residual = 0;
    bool all_ok() const { return complex_structure_ok && metric_invariance_ok && form_match_ok && closed_ok; }
};

CompatibilityReport compatibility_check(const GeometrySpec& g, const SamplePoint& pt, double h = 1e-3);

struct CompareSummary {
    int points = 0;
    double max_rel_err = 0;
    struct Failure {
        SamplePoint point;
        std::string kind;
    };
    std::vector<Failure> failures;
};

// Max relative error between the finite-difference scalar curvature and the
// symbolic value across the sample points.
CompareSummary compare(const GeometrySpec& g, const std::vector<SamplePoint>& pts, double h = 1e-3,
                       double tolerance = 1e-3);

}  // namespace sk

#endif
