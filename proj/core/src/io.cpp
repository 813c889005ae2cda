#include "sk/io.hpp"

namespace sk {

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw DomainError("rational must be a string 'p/q' or an integer");
}

Json mpoly_to_json(const MPoly& p) {
    Json terms = Json::array();
    for (const auto& [mono, c] : p.terms()) {
        Json exps = Json::array();
        for (const auto& [v, e] : mono) exps.push_back(Json::array({v.group, v.slot, e}));
        terms.push_back(Json{{"exponents", exps}, {"coeff", rational_to_json(c)}});
    }
    return terms;
}

MPoly mpoly_from_json(const Json& j) {
    MPoly p;
    for (const auto& term : j) {
        Monomial mono;
        for (const auto& e : term.at("exponents")) {
            mono.emplace_back(VarId{e.at(0).get<int>(), e.at(1).get<int>()}, e.at(2).get<int>());
        }
        std::sort(mono.begin(), mono.end());
        p.add_term(std::move(mono), rational_from_json(term.at("coeff")));
    }
    return p;
}

Json unirational_to_json(const UniRational& u) {
    Json num = Json::array();
    for (const auto& c : u.num().coeffs()) num.push_back(rational_to_json(c));
    Json den = Json::array();
    for (const auto& [f, e] : u.den()) {
        den.push_back(Json{{"a", rational_to_json(f.a)}, {"b", rational_to_json(f.b)}, {"power", e}});
    }
    return Json{{"var", Json::array({u.var().group, u.var().slot})}, {"num", num}, {"den", den}};
}

UniRational unirational_from_json(const Json& j) {
    VarId v{j.at("var").at(0).get<int>(), j.at("var").at(1).get<int>()};
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("num")) coeffs.push_back(rational_from_json(c));
    std::vector<std::pair<LinFactor, int>> den;
    if (j.contains("den")) {
        for (const auto& f : j.at("den")) {
            den.emplace_back(LinFactor{rational_from_json(f.at("a")), rational_from_json(f.at("b"))},
                             f.at("power").get<int>());
        }
    }
    return UniRational(v, UniPoly(std::move(coeffs)), std::move(den));
}

Json factored_to_json(const FactoredRational& f) {
    Json den = Json::array();
    for (const auto& [factor, e] : f.den()) {
        den.push_back(Json{{"factor", mpoly_to_json(factor)}, {"power", e}});
    }
    return Json{{"num", mpoly_to_json(f.num())}, {"den", den}};
}

Json htensor_to_json(const HTensor& t) {
    Json coeffs = Json::array();
    for (const auto& [deg, c] : t.coeffs) {
        coeffs.push_back(Json{{"degrees", deg}, {"c", rational_to_json(c)}});
    }
    return Json{{"coeffs", coeffs}};
}

HTensor htensor_from_json(const Json& j) {
    HTensor t;
    for (const auto& e : j.at("coeffs")) {
        MultiDeg deg = e.at("degrees").get<MultiDeg>();
        Rational c = rational_from_json(e.at("c"));
        if (c != 0) t.coeffs[deg] = c;
    }
    return t;
}

Json gamma_to_json(const GammaTensor& g) {
    Json coeffs = Json::array();
    for (const auto& [deg, c] : g.coeffs) {
        coeffs.push_back(Json{{"degrees", deg}, {"c", rational_to_json(c)}});
    }
    return Json{{"excluded", g.excluded}, {"coeffs", coeffs}};
}

GammaTensor gamma_from_json(const Json& j, const Partition& part) {
    GammaTensor g;
    g.excluded = j.at("excluded").get<int>();
    for (int r = 1; r <= part.k(); ++r)
        if (r != g.excluded) g.group_ids.push_back(r);
    for (const auto& e : j.at("coeffs")) {
        MultiDeg deg = e.at("degrees").get<MultiDeg>();
        if (deg.size() != g.group_ids.size()) throw DomainError("gamma coefficient of the wrong arity");
        Rational c = rational_from_json(e.at("c"));
        if (c != 0) g.coeffs[deg] = c;
    }
    return g;
}

Json structure_to_json(const FactorizationStructure& fs) {
    Json gammas = Json::array();
    for (const auto& g : fs.gammas()) gammas.push_back(gamma_to_json(g));
    return Json{{"partition", fs.partition().d}, {"gammas", gammas}};
}

FactorizationStructure structure_from_json(const Json& j) {
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "veronese") return FactorizationStructure::veronese(j.at("m").get<int>());
        if (kind == "segre") return FactorizationStructure::segre(j.at("m").get<int>());
        if (kind == "product_sv") {
            return FactorizationStructure::product_sv(Partition{j.at("partition").get<std::vector<int>>()});
        }
        if (kind == "two_point") {
            return FactorizationStructure::two_point(Partition{j.at("partition").get<std::vector<int>>()},
                                                     rational_from_json(j.at("pi").at(0)),
                                                     rational_from_json(j.at("pi").at(1)));
        }
        if (kind == "decomposable") {
            std::vector<std::vector<std::pair<Rational, Rational>>> points;
            for (const auto& row : j.at("points")) {
                std::vector<std::pair<Rational, Rational>> prow;
                for (const auto& pt : row) {
                    prow.emplace_back(rational_from_json(pt.at(0)), rational_from_json(pt.at(1)));
                }
                points.push_back(std::move(prow));
            }
            return FactorizationStructure::decomposable(Partition{j.at("partition").get<std::vector<int>>()},
                                                        points);
        }
        throw DomainError("unknown structure kind '" + kind + "'");
    }
    Partition part{j.at("partition").get<std::vector<int>>()};
    std::vector<GammaTensor> gammas;
    for (const auto& g : j.at("gammas")) gammas.push_back(gamma_from_json(g, part));
    return FactorizationStructure::custom(std::move(part), std::move(gammas));
}

Json geometry_to_json(const GeometrySpec& g) {
    Json profiles = Json::array();
    for (const auto& [v, a] : g.profiles) {
        Json p = unirational_to_json(a);
        p["group"] = v.group;
        p["slot"] = v.slot;
        profiles.push_back(std::move(p));
    }
    Json out{{"structure", structure_to_json(g.fs)},
             {"beta", htensor_to_json(g.beta)},
             {"profiles", profiles}};
    if (g.formal) out["formal"] = true;
    return out;
}

GeometrySpec geometry_from_json(const Json& j) {
    FactorizationStructure fs = structure_from_json(j.at("structure"));
    HTensor beta = htensor_from_json(j.at("beta"));
    std::map<VarId, UniRational> profiles;
    for (const auto& p : j.at("profiles")) {
        VarId v{p.at("group").get<int>(), p.at("slot").get<int>()};
        Json q = p;
        q["var"] = Json::array({v.group, v.slot});
        profiles.emplace(v, unirational_from_json(q));
    }
    bool formal = j.value("formal", false);
    return make_geometry(std::move(fs), std::move(beta), std::move(profiles), formal);
}

Json report_to_json(const CurvatureReport& r) {
    Json out{{"scal", factored_to_json(r.scal)}, {"extremal", r.extremal}};
    if (r.extremal) {
        Json coords = Json::array();
        for (const auto& c : r.alpha_coords) coords.push_back(rational_to_json(c));
        out["alpha"] = Json{{"coords", coords}, {"tensor", htensor_to_json(r.alpha)}};
    } else {
        out["residual"] = factored_to_json(r.residual);
    }
    return out;
}

Json family_to_json(const SolutionFamily& f) {
    Json constraints = Json::array();
    for (const auto& row : f.constraints) {
        Json r = Json::object();
        for (const auto& [name, coef] : row) r[name] = rational_to_json(coef);
        constraints.push_back(std::move(r));
    }
    Json templates = Json::array();
    for (const auto& [v, basis] : f.templates) {
        Json b = Json::array();
        for (const auto& [name, profile] : basis) {
            b.push_back(Json{{"param", name}, {"profile", unirational_to_json(profile)}});
        }
        templates.push_back(Json{{"group", v.group}, {"slot", v.slot}, {"basis", b}});
    }
    return Json{{"case", f.case_tag}, {"params", f.params}, {"constraints", constraints}, {"templates", templates}};
}

Json compare_to_json(const CompareSummary& s) {
    Json failures = Json::array();
    for (const auto& f : s.failures) {
        Json pt = Json::object();
        for (const auto& [v, q] : f.point.x) {
            pt["x_" + std::to_string(v.group) + "_" + std::to_string(v.slot)] = rational_to_json(q);
        }
        failures.push_back(Json{{"point", pt}, {"kind", f.kind}});
    }
    return Json{{"points", s.points}, {"maxRelErr", s.max_rel_err}, {"failures", failures}};
}

std::vector<Mat2> matrices_from_json(const Json& j) {
    std::vector<Mat2> out;
    for (const auto& mrow : j) {
        out.push_back(Mat2{rational_from_json(mrow.at(0).at(0)), rational_from_json(mrow.at(0).at(1)),
                           rational_from_json(mrow.at(1).at(0)), rational_from_json(mrow.at(1).at(1))});
    }
    return out;
}

}  // namespace sk
