#pragma once

// Pipeline driver: JSON input parsing, the module-keyed JSON report and the
// SVG rendering of three-dimensional base diagrams.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cone.hpp"
#include "dd.hpp"
#include "fibration.hpp"
#include "polytope.hpp"
#include "potential.hpp"
#include "smoothing.hpp"

namespace smoothfib {

using Json = nlohmann::json;

struct AnalysisOptions {
    long hilbert_box = 3;       // box half-width for verify_generates, in [1, 8]
    bool fast = false;          // skips the generation check
    double circle_tol = 1e-12;  // unit-circle tolerance, in (0, 1e-3]
    std::optional<std::string> svg_path;

    friend bool operator==(const AnalysisOptions&, const AnalysisOptions&) = default;
};

inline void validate(const AnalysisOptions& o) {
    if (o.hilbert_box < 1 || o.hilbert_box > 8) throw Error(ErrorKind::RangeError, "hilbert_box must lie in [1, 8]");
    if (!(o.circle_tol > 0 && o.circle_tol <= 1e-3))
        throw Error(ErrorKind::RangeError, "root_circle_tol must lie in (0, 1e-3]");
}

struct AnalysisRequest {
    std::string name;
    std::size_t dimension = 0;
    std::vector<std::vector<IntVec>> summands;  // hull vertices, declared order
    std::optional<std::vector<IntVec>> target;  // hull vertices, lexicographic
    AnalysisOptions options;
    MinkowskiDecomposition decomposition;

    // Equality of the input content; the decomposition is derived from it.
    friend bool operator==(const AnalysisRequest& a, const AnalysisRequest& b) {
        return a.name == b.name && a.dimension == b.dimension && a.summands == b.summands &&
               a.target == b.target && a.options == b.options;
    }
};

namespace detail {

inline Error schema(const std::string& where, const std::string& msg) {
    return Error(ErrorKind::SchemaError, where + ": " + msg);
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

inline IntVec parse_point(const Json& j, const std::string& where, std::size_t n) {
    if (!j.is_array()) throw schema(where, "expected an array of integers");
    if (j.size() != n) throw schema(where, "expected " + std::to_string(n) + " coordinates");
    IntVec v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& x = j[i];
        const std::string at = where + "/" + std::to_string(i);
        if (x.is_number_unsigned()) v.push_back(Int(x.get<std::uint64_t>()));
        else if (x.is_number_integer()) v.push_back(Int(x.get<std::int64_t>()));
        else throw schema(at, "expected an integer");
    }
    return v;
}

inline std::vector<IntVec> parse_points(const Json& j, const std::string& where, std::size_t n) {
    if (!j.is_array()) throw schema(where, "expected an array of points");
    if (j.empty()) throw schema(where, "expected at least one point");
    std::vector<IntVec> out;
    std::set<IntVec> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        IntVec p = parse_point(j[i], where + "/" + std::to_string(i), n);
        if (seen.insert(p).second) out.push_back(std::move(p));
    }
    return out;
}

inline Json jint(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Json jvec(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(jint(x));
    return a;
}

inline Json jrows(const std::vector<IntVec>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(jvec(r));
    return a;
}

inline Json jmat(const IntMat& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
    return a;
}

inline Json jcomplex(const Complex& z) {
    return Json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())});
}

inline Json jlabels(const std::vector<CharacterLabel>& ls) {
    Json a = Json::array();
    for (const auto& l : ls) a.push_back(l.str());
    return a;
}

}  // namespace detail

// Parses the input schema
//   {"name": str, "dimension": n, "summands": [{"vertices": [[int...]...]}...], "target": [[int...]...]}
// ("target" optional). Vertex lists are deduplicated and reduced to the hull
// vertices, keeping their declared order. Errors name the line or JSON pointer.
inline AnalysisRequest parse_input(const std::string& text, const AnalysisOptions& options = {}) {
    using detail::schema;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw schema("line " + std::to_string(detail::line_of(text, e.byte)), "malformed JSON");
    }
    if (!j.is_object()) throw schema("/", "expected an object");
    for (const auto& [key, value] : j.items())
        if (key != "name" && key != "dimension" && key != "summands" && key != "target")
            throw schema("/" + key, "unknown field");
    for (const char* key : {"name", "dimension", "summands"})
        if (!j.contains(key)) throw schema(std::string("/") + key, "missing field");
    AnalysisRequest r;
    validate(options);
    r.options = options;
    if (!j["name"].is_string()) throw schema("/name", "expected a string");
    r.name = j["name"].get<std::string>();
    const Json& dim = j["dimension"];
    if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1 || dim.get<std::int64_t>() > 16)
        throw schema("/dimension", "expected an integer in [1, 16]");
    r.dimension = dim.get<std::size_t>();
    const Json& ss = j["summands"];
    if (!ss.is_array() || ss.empty()) throw schema("/summands", "expected a non-empty array");
    for (std::size_t p = 0; p < ss.size(); ++p) {
        const std::string at = "/summands/" + std::to_string(p);
        if (!ss[p].is_object()) throw schema(at, "expected an object");
        for (const auto& [key, value] : ss[p].items())
            if (key != "vertices") throw schema(at + "/" + key, "unknown field");
        if (!ss[p].contains("vertices")) throw schema(at + "/vertices", "missing field");
        std::vector<IntVec> pts = detail::parse_points(ss[p]["vertices"], at + "/vertices", r.dimension);
        Summand s = make_summand(pts);
        std::vector<IntVec> kept;
        for (const auto& x : pts)
            if (s.polytope.has_vertex(x)) kept.push_back(x);
        r.summands.push_back(std::move(kept));
    }
    if (j.contains("target")) {
        std::vector<IntVec> pts = detail::parse_points(j["target"], "/target", r.dimension);
        r.target = convex_hull(pts).vertices();
    }
    r.decomposition = make_decomposition(r.summands, r.target);
    return r;
}

// Input-schema JSON of a request (options are run settings, not input).
inline std::string serialize(const AnalysisRequest& r) {
    Json j;
    j["name"] = r.name;
    j["dimension"] = r.dimension;
    Json ss = Json::array();
    for (const auto& s : r.summands) ss.push_back(Json{{"vertices", detail::jrows(s)}});
    j["summands"] = ss;
    if (r.target) j["target"] = detail::jrows(*r.target);
    return j.dump(2) + "\n";
}

struct DiagramCut {
    IntVec base;  // (direction, boundary height)
    std::string label;
};

struct DiagramData {
    std::vector<IntVec> rays;  // Hilbert basis of the dual of the cone over the target
    std::vector<DiagramCut> cuts;
};

struct AnalysisReport {
    std::string name;
    std::size_t dimension = 0;
    Json json;
    int exit_code = 0;
    std::vector<std::string> failures;
    std::optional<DiagramData> diagram;

    std::string str() const { return json.dump(2) + "\n"; }
};

namespace detail {

inline Json critical_json(const CriticalReport& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["authoritative"] = c.authoritative;
    j["factorization_certified"] = c.factorization_certified;
    j["count"] = c.count;
    j["max_gradient"] = static_cast<double>(c.max_gradient);
    Json comps = Json::array();
    for (const auto& comp : c.components) {
        Json cj;
        cj["factors"] = Json::array({comp.i, comp.j});
        cj["z1_minpoly"] = str(comp.z1_minpoly, "z1");
        cj["relation"] = str(comp.relation);
        Json z2 = Json::array();
        for (const auto& q : comp.z2_minpolys) z2.push_back(str(q, "z2"));
        cj["z2_minpolys"] = z2;
        cj["count"] = comp.count;
        cj["on_unit_circle"] = comp.on_unit_circle;
        Json pts = Json::array();
        for (const auto& p : comp.points) {
            Json zs = Json::array();
            for (const auto& z : p.z) zs.push_back(jcomplex(z));
            pts.push_back(Json{{"z", zs}, {"gradient", static_cast<double>(p.gradient)}});
        }
        cj["points"] = pts;
        comps.push_back(cj);
    }
    j["components"] = comps;
    Json pd = Json::array();
    for (std::size_t i = 0; i < c.positive_dimensional_pairs.size(); ++i)
        pd.push_back(Json{{"factors", Json::array({c.positive_dimensional_pairs[i].first,
                                                   c.positive_dimensional_pairs[i].second})},
                          {"common_factor", c.common_factors[i]}});
    j["positive_dimensional"] = pd;
    Json hp = Json::array();
    for (const auto& p : c.heuristic_points) {
        Json zs = Json::array();
        for (const auto& z : p.z) zs.push_back(jcomplex(z));
        hp.push_back(Json{{"z", zs}, {"gradient", static_cast<double>(p.gradient)}});
    }
    j["heuristic_points"] = hp;
    return j;
}

}  // namespace detail

// Runs every module on the request. Failures are collected as "module: message";
// the exit code is 0 on success, 3 for inadmissible input and 4 when a stage or
// cross-check fails.
inline AnalysisReport run_pipeline(const AnalysisRequest& req) {
    using namespace detail;
    validate(req.options);
    AnalysisReport rep;
    rep.name = req.name;
    rep.dimension = req.dimension;
    Json& out = rep.json;
    out["name"] = req.name;
    out["input"] = Json::parse(serialize(req));

    const MinkowskiDecomposition& d0 = req.decomposition;
    AdmissibilityReport adm = is_admissible(d0);
    Json pj;
    pj["n"] = d0.n;
    pj["k"] = d0.k();
    pj["target_vertices"] = jrows(d0.target.vertices());
    pj["admissibility"] = Json{{"ok", adm.ok}, {"violations", adm.violations}, {"point_summands", adm.point_summands}};
    if (!adm.ok) {
        out["polytope"] = pj;
        rep.exit_code = 3;
        rep.failures.push_back("polytope: " + adm.violations.front());
        out["failures"] = rep.failures;
        out["exit_code"] = rep.exit_code;
        return rep;
    }
    const MinkowskiDecomposition d = drop_point_summands(d0);
    const std::size_t n = d.n, k = d.k();

    auto stage = [&](const std::string& module, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            rep.failures.push_back(module + ": " + e.what());
        }
    };
    auto check = [&](const std::string& module, const std::string& what, bool ok) {
        if (!ok) rep.failures.push_back(module + ": cross-check failed: " + what);
        return ok;
    };

    stage("polytope", [&] {
        Json ss = Json::array();
        for (std::size_t p = 1; p <= k; ++p) {
            SummandMatrices m = summand_matrices(d, p);
            ss.push_back(Json{{"vertices", jrows(summand(d, p).polytope.vertices())},
                              {"rays", jrows(summand(d, p).rays)},
                              {"v", jmat(m.v)},
                              {"e", jmat(m.e)},
                              {"a", jmat(m.a)},
                              {"c", jmat(m.c)},
                              {"b", jvec(m.b)}});
        }
        pj["summands"] = ss;
    });
    out["polytope"] = pj;

    PolyhedralCone sigma, sigma_dual;
    std::vector<IntVec> sigma_dual_hilbert, hb;
    stage("cone", [&] {
        Json cj;
        sigma = cone_over(d.target);
        sigma_dual = dual(sigma);
        sigma_dual_hilbert = hilbert_basis(sigma_dual);
        PolyhedralCone st = sigma_tilde(d);
        PolyhedralCone std_ = dual(st);
        hb = hilbert_basis(std_);
        cj["sigma"] = Json{{"rays", jmat(sigma.rays())}, {"facets", jmat(sigma.facets())}};
        cj["sigma_dual"] = Json{{"rays", jmat(sigma_dual.rays())}, {"hilbert_basis", jrows(sigma_dual_hilbert)}};
        cj["sigma_tilde"] = Json{{"rays", jmat(st.rays())}, {"facets", jmat(st.facets())}};
        cj["sigma_tilde_dual"] = Json{{"rays", jmat(std_.rays())}, {"hilbert_basis", jrows(hb)}};
        out["cone"] = cj;
    });

    stage("smoothing", [&] {
        Json sj;
        GeneratorSet g = generator_set(d);
        Json gens = Json::array();
        for (const auto& [lab, v] : g.entries) gens.push_back(Json{{"label", lab.str()}, {"vector", jvec(v)}});
        sj["generators"] = gens;
        Json rels = Json::array();
        for (std::size_t p = 1; p <= k; ++p) {
            BinomialRelation b = relation_xy_binomial(d, p);
            bool ok = check("smoothing", "relation " + b.str(), verify_binomial(g, b));
            rels.push_back(Json{{"kind", "beta"},
                                {"summand", p},
                                {"exponents", jvec(relation_xy(d, p))},
                                {"binomial", b.str()},
                                {"verified", ok}});
            const std::size_t nw = summand_matrices(d, p).c.cols();
            for (std::size_t jj = 1; jj <= nw; ++jj) {
                BinomialRelation w = relation_w_binomial(d, p, jj);
                bool okw = check("smoothing", "relation " + w.str(), verify_binomial(g, w));
                rels.push_back(Json{{"kind", "eta"},
                                    {"summand", p},
                                    {"index", jj},
                                    {"exponents", jvec(relation_w(d, p, jj))},
                                    {"binomial", w.str()},
                                    {"verified", okw}});
            }
        }
        sj["relations"] = rels;
        Json fm = Json::array();
        for (std::size_t p = 1; p <= k; ++p) {
            FibreModel f = fibre_model(d, p);
            fm.push_back(Json{{"summand", p},
                              {"m", f.m},
                              {"product", jlabels(f.product_coords)},
                              {"torus", jlabels(f.torus_coords)}});
        }
        sj["fibre_models"] = fm;
        auto gr = check_homogeneity(g);
        sj["homogeneity"] = gr ? Json{{"u", jvec(gr->u)}, {"degree", jint(gr->degree)}} : Json(nullptr);
        if (req.options.fast) {
            sj["generation"] = nullptr;
        } else {
            bool ok = verify_generates(g.vectors(), dual(sigma_tilde(d)), req.options.hilbert_box);
            check("smoothing", "generators do not generate within the box", ok);
            sj["generation"] = Json{{"box", req.options.hilbert_box}, {"ok", ok}};
        }
        out["smoothing"] = sj;
    });

    DiagramData diagram;
    bool have_diagram = false;
    stage("fibration", [&] {
        Json fj;
        Json per = Json::array();
        for (std::size_t p = 1; p <= k; ++p) {
            Json sp;
            sp["summand"] = p;
            Json cyc = Json::array();
            for (const auto& c : collapsing_cycles(d, p))
                cyc.push_back(Json{{"direction", jvec(c.direction)}, {"stratum", c.stratum}});
            sp["collapsing_cycles"] = cyc;
            Json regs = Json::array();
            for (const auto& r : regions(d, p)) regs.push_back(Json{{"index", r.index}, {"normals", jrows(r.normals)}});
            sp["regions"] = regs;
            Json mons = Json::array();
            for (std::size_t jj = 1; jj <= d.m(p); ++jj)
                mons.push_back(Json{{"edge", jj},
                                    {"monodromy", jmat(monodromy(d, p, jj))},
                                    {"affine", jmat(affine_monodromy(d, p, jj))}});
            sp["monodromies"] = mons;
            per.push_back(sp);
        }
        fj["summands"] = per;
        BaseDiagram b(d);
        for (std::size_t p = 1; p <= k; ++p) b = transfer_cut(b, p);
        fj["cut_order"] = b.order();
        PolyhedralCone fc = final_cone(b);
        check("fibration", "final cone equals the dual of the cone over the target", cones_equal(fc, sigma_dual));
        fj["final_cone"] = Json{{"rays", jmat(fc.rays())}, {"facets", jmat(fc.facets())}};
        auto h = height_one_normalization(fc);
        fj["height_one"] = h ? Json{{"normalization", jmat(h->normalization)},
                                    {"qdual_vertices", jrows(h->qdual.vertices())}}
                             : Json(nullptr);
        out["fibration"] = fj;

        diagram.rays = sigma_dual_hilbert;
        std::map<IntVec, std::string> cuts;
        for (std::size_t p = 1; p <= k; ++p)
            for (const auto& c : collapsing_cycles(d, p)) {
                IntVec base = concat(c.direction, make_vec({0}));
                base.back() = eta0(d.target, c.direction);
                auto [it, fresh] = cuts.emplace(base, c.stratum);
                if (!fresh) it->second += "; " + c.stratum;
            }
        for (const auto& [base, label] : cuts) diagram.cuts.push_back({base, label});
        have_diagram = true;
    });

    stage("potential", [&] {
        Json tj;
        LaurentPoly po = build_potential(d);
        tj["potential"] = po.str();
        Json terms = Json::array();
        for (const auto& [e, c] : po.terms()) terms.push_back(Json{{"exponent", jvec(e)}, {"coefficient", c.str()}});
        tj["terms"] = terms;
        tj["mutation_fold_agrees"] = check("potential", "mutation fold equals the potential", mutation_fold(d) == po);
        LatticePolytope np = newton_polytope(po);
        std::vector<IntVec> lifted;
        for (const auto& v : d.target.vertices()) lifted.push_back(concat(v, make_vec({1})));
        tj["newton_polytope"] = jrows(np.vertices());
        check("potential", "Newton polytope equals the target at height one", np == convex_hull(lifted));
        tj["critical"] = critical_json(critical_exists(d, static_cast<long double>(req.options.circle_tol)));
        out["potential"] = tj;
    });

    if (have_diagram) rep.diagram = diagram;
    if (!rep.failures.empty()) rep.exit_code = 4;
    out["failures"] = rep.failures;
    out["exit_code"] = rep.exit_code;
    return rep;
}

namespace detail {

inline std::string fmt(double v) {
    if (std::fabs(v) < 5e-4) v = 0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

// Oblique axonometric projection used by emit_svg.
inline std::pair<double, double> project(const IntVec& p) {
    const double pi = std::acos(-1.0);
    const double x = static_cast<double>(p[0]), y = static_cast<double>(p[1]), z = static_cast<double>(p[2]);
    return {x - 0.4 * z * std::cos(pi / 6), y - 0.4 * z * std::sin(pi / 6)};
}

// Renders the rays and cuts of a report whose base has dimension three.
inline std::string emit_svg(const AnalysisReport& r) {
    using detail::fmt;
    if (r.dimension + 1 != 3)
        throw Error(ErrorKind::UnsupportedDimension, "diagrams need n + 1 = 3, got " + std::to_string(r.dimension + 1));
    if (!r.diagram) throw Error(ErrorKind::EmptyInput, "report carries no diagram data");
    const DiagramData& dd = *r.diagram;

    Int top = 1;
    for (const auto& v : dd.rays) top = std::max(top, v[2]);
    std::vector<std::pair<IntVec, IntVec>> cut_segments;
    for (const auto& c : dd.cuts) {
        IntVec end = c.base;
        end[2] += top;
        cut_segments.emplace_back(c.base, end);
    }

    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    for (const auto& v : dd.rays) pts.push_back(project(v));
    for (const auto& [a, b] : cut_segments) {
        pts.push_back(project(a));
        pts.push_back(project(b));
    }
    double umin = pts[0].first, umax = umin, vmin = pts[0].second, vmax = vmin;
    for (const auto& [u, v] : pts) {
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double size = 640, margin = 80;
    const double scale = (size - 2 * margin) / std::max({umax - umin, vmax - vmin, 1.0});
    auto sx = [&](double u) { return margin + (u - umin) * scale; };
    auto sy = [&](double v) { return size - margin - (v - vmin) * scale; };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    s << "<!-- projection: (x,y,z) -> (x - 0.4*z*cos(30deg), y - 0.4*z*sin(30deg)), "
      << "uniform scale, y axis pointing up -->\n";
    s << "<title>" << detail::xml_escape(r.name) << "</title>\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double ox = sx(0), oy = sy(0);
    s << "<g id=\"rays\" stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& v : dd.rays) {
        auto [u, w] = project(v);
        s << "  <line x1=\"" << fmt(ox) << "\" y1=\"" << fmt(oy) << "\" x2=\"" << fmt(sx(u)) << "\" y2=\""
          << fmt(sy(w)) << "\"/>\n";
    }
    s << "</g>\n";
    s << "<g id=\"cuts\" stroke=\"firebrick\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\">\n";
    for (const auto& [a, b] : cut_segments) {
        auto [u1, w1] = project(a);
        auto [u2, w2] = project(b);
        s << "  <line x1=\"" << fmt(sx(u1)) << "\" y1=\"" << fmt(sy(w1)) << "\" x2=\"" << fmt(sx(u2)) << "\" y2=\""
          << fmt(sy(w2)) << "\"/>\n";
    }
    s << "</g>\n";
    s << "<g id=\"labels\" font-family=\"monospace\" font-size=\"12\">\n";
    for (const auto& v : dd.rays) {
        auto [u, w] = project(v);
        s << "  <text class=\"ray\" x=\"" << fmt(sx(u) + 4) << "\" y=\"" << fmt(sy(w) - 4) << "\">" << to_string(v)
          << "</text>\n";
    }
    for (const auto& c : dd.cuts) {
        auto [u, w] = project(c.base);
        s << "  <text class=\"cut\" fill=\"firebrick\" x=\"" << fmt(sx(u) + 4) << "\" y=\"" << fmt(sy(w) + 14)
          << "\">" << detail::xml_escape(c.label) << "</text>\n";
    }
    s << "</g>\n";
    s << "<circle cx=\"" << fmt(ox) << "\" cy=\"" << fmt(oy) << "\" r=\"3\" fill=\"black\"/>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace smoothfib
