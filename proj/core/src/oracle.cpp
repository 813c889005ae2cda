#include "sk/oracle.hpp"

#include <cmath>

namespace sk {

std::map<VarId, double> SamplePoint::as_doubles() const {
    std::map<VarId, double> out;
    for (const auto& [v, q] : x) out[v] = to_double(q);
    return out;
}

namespace {

// All polynomials whose vanishing makes the geometry degenerate at a point.
std::vector<MPoly> degeneracy_factors(const GeometrySpec& g) {
    std::vector<MPoly> out;
    const Partition& part = g.fs.partition();
    for (int i = 1; i <= part.k(); ++i) {
        for (int r = 1; r <= part.degree(i); ++r) {
            for (auto& f : delta_factors(part, i, r)) out.push_back(f);
        }
        const MPoly& gh = g.fs.gamma_hat_poly(i);
        if (!gh.is_constant()) out.push_back(gh);
    }
    out.push_back(g.mu_beta());
    for (const auto& [v, a] : g.profiles) {
        FactoredRational fr = FactoredRational::from_unirational(a);
        out.push_back(fr.num());
        for (const auto& [f, e] : fr.den()) {
            (void)e;
            out.push_back(f);
        }
    }
    return out;
}

struct Frame {
    // Numeric evaluation context shared by the metric stencils.
    const GeometrySpec* g;
    MetricBlocks blocks;
    std::vector<VarId> vars;
    int m = 0;
    // Coordinates (over the beta-extended basis) of the symmetric-degree
    // generators per group; the curve of group i at parameter x has
    // coordinates sum_a x^{d_i - a} (-1)^a gen_coords[i-1][a].
    std::vector<std::vector<std::vector<double>>> gen_coords;

    explicit Frame(const GeometrySpec& spec) : g(&spec), blocks(metric_blocks_symbolic(spec)) {
        vars = spec.fs.partition().all_vars();
        m = spec.fs.m();
        const Partition& part = spec.fs.partition();
        auto degs = all_multidegrees(part);
        gen_coords.resize(static_cast<std::size_t>(part.k()));
        for (int i = 1; i <= part.k(); ++i) {
            for (int a = 0; a <= part.degree(i); ++a) {
                HTensor gen = ins_generator(part, i, a, spec.fs.gamma(i));
                QMatrix mat(static_cast<int>(degs.size()), static_cast<int>(blocks.h_basis.size()));
                for (std::size_t c = 0; c < blocks.h_basis.size(); ++c) {
                    auto flat = blocks.h_basis[c].flatten(part);
                    for (std::size_t r = 0; r < flat.size(); ++r)
                        mat.at(static_cast<int>(r), static_cast<int>(c)) = flat[r];
                }
                auto sol = solve_linear(std::move(mat), gen.flatten(part));
                if (!sol) throw DomainError("generator does not lie in the image");
                std::vector<double> coords;
                for (const auto& c : *sol) coords.push_back(to_double(c));
                gen_coords[static_cast<std::size_t>(i - 1)].push_back(std::move(coords));
            }
        }
    }

    Eigen::MatrixXd metric(const std::map<VarId, double>& x) const {
        const int n = 2 * m;
        Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < m; ++i) {
            const auto& slot = blocks.slots[static_cast<std::size_t>(i)];
            double u = slot.u.eval_double(x);
            gm(i, i) = u;
            Eigen::VectorXd theta(m);
            for (int j = 0; j < m; ++j) theta(j) = slot.theta[static_cast<std::size_t>(j)].eval_double(x);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) gm(m + a, m + b) += theta(a) * theta(b) / u;
        }
        return gm;
    }

    // Cotangent-basis matrix of J: columns act on (dx; dt).
    Eigen::MatrixXd complex_structure(const std::map<VarId, double>& x) const {
        const int n = 2 * m;
        Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
        // J dx_i = (1/u_i) sum_j theta_i[j] dt_j
        for (int i = 0; i < m; ++i) {
            const auto& slot = blocks.slots[static_cast<std::size_t>(i)];
            double u = slot.u.eval_double(x);
            for (int j = 0; j < m; ++j) {
                jm(m + j, i) = slot.theta[static_cast<std::size_t>(j)].eval_double(x) / u;
            }
        }
        // J dt_j = sum_i (C_i[j] / A_i) dx_i with psi_i(x_i) mod beta = sum C[j] basis_j.
        for (int i = 0; i < m; ++i) {
            const auto& slot = blocks.slots[static_cast<std::size_t>(i)];
            const VarId v = slot.var;
            const double xv = x.at(v);
            const int di = g->fs.partition().degree(v.group);
            const auto& gens = gen_coords[static_cast<std::size_t>(v.group - 1)];
            std::vector<double> coords(static_cast<std::size_t>(m) + 1, 0.0);
            for (int a = 0; a <= di; ++a) {
                double c = std::pow(xv, di - a) * ((a % 2) ? -1.0 : 1.0);
                for (std::size_t t = 0; t < coords.size(); ++t) coords[t] += c * gens[static_cast<std::size_t>(a)][t];
            }
            double a_val = g->profile(v).eval_double(xv);
            for (int j = 0; j < m; ++j) {
                jm(i, m + j) = coords[static_cast<std::size_t>(j + 1)] / a_val;
            }
        }
        return jm;
    }
};

}  // namespace

double admissibility_margin(const GeometrySpec& g, const std::map<VarId, double>& x) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& f : degeneracy_factors(g)) {
        margin = std::min(margin, std::abs(f.eval_double(x)));
    }
    return margin;
}

std::vector<SamplePoint> sample_admissible_points(const GeometrySpec& g, int count, std::uint64_t seed,
                                                  double min_margin) {
    Rng rng(seed);
    std::vector<SamplePoint> out;
    const auto vars = g.fs.partition().all_vars();
    Frame fr(g);
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 40000) throw DomainError("could not sample enough admissible points");
        SamplePoint pt;
        for (const auto& v : vars) {
            // coordinates in [-2, 2] on a grid of step 1/64
            pt.x[v] = Rational(rng.int_in(-128, 128), 64);
        }
        pt.margin = admissibility_margin(g, pt.as_doubles());
        if (pt.margin < std::max(min_margin, 0.05)) continue;
        // Reject badly conditioned metrics: finite differencing cannot see
        // through the amplification of a near-degenerate block.
        Eigen::MatrixXd gm = fr.metric(pt.as_doubles());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(gm);
        double smin = svd.singularValues().minCoeff();
        double smax = svd.singularValues().maxCoeff();
        if (smin < 1e-4 || smax > 1e4 || smax / smin > 1e5) continue;
        out.push_back(std::move(pt));
    }
    return out;
}

NumericMetric numeric_metric(const GeometrySpec& g, const SamplePoint& pt, double min_margin) {
    double margin = admissibility_margin(g, pt.as_doubles());
    if (margin <= min_margin) throw DomainError("inadmissible sample point");
    Frame fr(g);
    NumericMetric nm;
    nm.g = fr.metric(pt.as_doubles());
    nm.point = pt;
    nm.point.margin = margin;
    double det = nm.g.determinant();
    if (std::abs(det) < 1e-10) throw DomainError("metric degenerate at sample point");
    return nm;
}

namespace {

double fd_scal_once(const Frame& fr, const std::map<VarId, double>& x0, double h) {
    const int m = fr.m;
    const int n = 2 * m;
    auto shift = [&](const std::map<VarId, double>& x, int c, double dh) {
        std::map<VarId, double> y = x;
        y[fr.vars[static_cast<std::size_t>(c)]] += dh;
        return y;
    };
    auto d_metric = [&](const std::map<VarId, double>& x, int c) {
        // derivative along x-coordinate c; t-derivatives vanish
        Eigen::MatrixXd gp = fr.metric(shift(x, c, h));
        Eigen::MatrixXd gm = fr.metric(shift(x, c, -h));
        return Eigen::MatrixXd((gp - gm) / (2 * h));
    };
    auto christoffel = [&](const std::map<VarId, double>& x) {
        std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
        for (int c = 0; c < m; ++c) dg[static_cast<std::size_t>(c)] = d_metric(x, c);
        Eigen::MatrixXd ginv = fr.metric(x).inverse();
        std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    double s = 0;
                    for (int d = 0; d < n; ++d) {
                        s += ginv(a, d) * (dg[static_cast<std::size_t>(b)](d, c) + dg[static_cast<std::size_t>(c)](d, b) -
                                           dg[static_cast<std::size_t>(d)](b, c));
                    }
                    gamma[static_cast<std::size_t>(a)](b, c) = 0.5 * s;
                }
        return gamma;
    };
    auto gamma0 = christoffel(x0);
    std::vector<std::vector<Eigen::MatrixXd>> dgamma(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        if (c < m) {
            auto gp = christoffel(shift(x0, c, h));
            auto gm = christoffel(shift(x0, c, -h));
            dgamma[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a)
                dgamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] =
                    (gp[static_cast<std::size_t>(a)] - gm[static_cast<std::size_t>(a)]) / (2 * h);
        } else {
            dgamma[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
        }
    }
    // Ricci_{bd} = d_a Gamma^a_{db} - d_d Gamma^a_{ab} + G^a_{ae} G^e_{db} - G^a_{de} G^e_{ab}
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            double s = 0;
            for (int a = 0; a < n; ++a) {
                s += dgamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)](d, b) -
                     dgamma[static_cast<std::size_t>(d)][static_cast<std::size_t>(a)](a, b);
                for (int e = 0; e < n; ++e) {
                    s += gamma0[static_cast<std::size_t>(a)](a, e) * gamma0[static_cast<std::size_t>(e)](d, b) -
                         gamma0[static_cast<std::size_t>(a)](d, e) * gamma0[static_cast<std::size_t>(e)](a, b);
                }
            }
            ric(b, d) = s;
        }
    Eigen::MatrixXd ginv = fr.metric(x0).inverse();
    double scal = 0;
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) scal += ginv(b, d) * ric(b, d);
    return scal;
}

}  // namespace

double fd_scalar_curvature(const GeometrySpec& g, const SamplePoint& pt, double h) {
    auto x0 = pt.as_doubles();
    double margin = admissibility_margin(g, x0);
    if (margin <= 2 * h) throw DomainError("stencil leaves the admissible region");
    Frame fr(g);
    double s_h = fd_scal_once(fr, x0, h);
    double s_h2 = fd_scal_once(fr, x0, h / 2);
    return (4 * s_h2 - s_h) / 3;  // second-order stencils, one Richardson level
}

CompatibilityReport compatibility_check(const GeometrySpec& g, const SamplePoint& pt, double h) {
    auto x0 = pt.as_doubles();
    if (admissibility_margin(g, x0) <= 2 * h) throw DomainError("inadmissible sample point");
    Frame fr(g);
    const int m = fr.m;
    const int n = 2 * m;
    Eigen::MatrixXd gm = fr.metric(x0);
    Eigen::MatrixXd jc = fr.complex_structure(x0);
    // The tangent-space J dual to the form action alpha -> alpha o J^{-1}:
    // (J_tan)^a_b = -(J_cot)_{b a}.
    Eigen::MatrixXd jt = -jc.transpose();
    CompatibilityReport rep;
    double r1 = (jt * jt + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    double r2 = (jt.transpose() * gm * jt - gm).cwiseAbs().maxCoeff();
    Eigen::MatrixXd omega = jt.transpose() * gm;
    // Reference omega = sum dx_i ^ theta_i: omega(d/dx_i, d/dt_j) = theta_i[j].
    Eigen::MatrixXd omega_ref = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i) {
        const auto& slot = fr.blocks.slots[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            double th = slot.theta[static_cast<std::size_t>(j)].eval_double(x0);
            omega_ref(i, m + j) = th;
            omega_ref(m + j, i) = -th;
        }
    }
    double r3 = (omega - omega_ref).cwiseAbs().maxCoeff();
    rep.complex_structure_ok = r1 < 1e-8;
    rep.metric_invariance_ok = r2 < 1e-8;
    rep.form_match_ok = r3 < 1e-8;
    // d omega = 0 via finite differences of the omega coefficients.
    auto omega_at = [&](const std::map<VarId, double>& x) {
        Eigen::MatrixXd j2 = -fr.complex_structure(x).transpose();
        return Eigen::MatrixXd(j2.transpose() * fr.metric(x));
    };
    double r4 = 0;
    for (int a = 0; a < m; ++a) {
        std::map<VarId, double> xp = x0, xm = x0;
        xp[fr.vars[static_cast<std::size_t>(a)]] += h;
        xm[fr.vars[static_cast<std::size_t>(a)]] -= h;
        Eigen::MatrixXd d_omega = (omega_at(xp) - omega_at(xm)) / (2 * h);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                // cyclic sum with the two other derivatives, nonzero only for
                // x-direction indices
                double term = d_omega(b, c);
                double t2 = 0, t3 = 0;
                if (b < m) {
                    std::map<VarId, double> yp = x0, ym = x0;
                    yp[fr.vars[static_cast<std::size_t>(b)]] += h;
                    ym[fr.vars[static_cast<std::size_t>(b)]] -= h;
                    t2 = ((omega_at(yp) - omega_at(ym)) / (2 * h))(c, a);
                }
                if (c < m) {
                    std::map<VarId, double> yp = x0, ym = x0;
                    yp[fr.vars[static_cast<std::size_t>(c)]] += h;
                    ym[fr.vars[static_cast<std::size_t>(c)]] -= h;
                    t3 = ((omega_at(yp) - omega_at(ym)) / (2 * h))(a, b);
                }
                r4 = std::max(r4, std::abs(term + t2 + t3));
            }
    }
    rep.closed_ok = r4 < 1e-5;
    rep.max_residual = std::max({r1, r2, r3, r4});
    return rep;
}

CompareSummary compare(const GeometrySpec& g, const std::vector<SamplePoint>& pts, double h, double tolerance) {
    if (pts.empty()) throw DomainError("no sample points given");
    CompareSummary out;
    out.points = static_cast<int>(pts.size());
    FactoredRational scal = scalar_curvature(g);
    for (const auto& pt : pts) {
        double sym = to_double(scal.eval(pt.x));
        double fd = fd_scalar_curvature(g, pt, h);
        double rel = std::abs(fd - sym) / (1.0 + std::abs(sym));
        out.max_rel_err = std::max(out.max_rel_err, rel);
        if (rel > tolerance) out.failures.push_back({pt, "scalar curvature mismatch"});
    }
    return out;
}

}  // namespace sk
