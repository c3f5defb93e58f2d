#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "sbc/expr.hpp"
#include "sbc/hni.hpp"
#include "sbc/singular.hpp"
#include "sbc/testfns.hpp"
#include "sbc/tmvi.hpp"

namespace sbc::cli {

using nlohmann::json;

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw std::invalid_argument(fmt::format("unknown key '{}' in {}", key, where));
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw std::invalid_argument(fmt::format("missing key '{}' in {}", key, where));
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw std::invalid_argument(where + " must be a number");
    return v.get<double>();
}

Point2 point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument(where + " must be [x, y]");
    return {number(v[0], where), number(v[1], where)};
}

std::vector<Point2> points(const json& v, const std::string& where) {
    if (!v.is_array()) throw std::invalid_argument(where + " must be an array of [x, y]");
    std::vector<Point2> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(point(v[i], fmt::format("{}[{}]", where, i)));
    return out;
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) throw std::invalid_argument(where + " must be a string");
    return v.get<std::string>();
}

Curve parse_curve(const json& c, std::size_t i) {
    const std::string where = fmt::format("curves[{}]", i);
    const std::string type = text(field(c, "type", where), where + ".type");
    if (type == "segment") {
        require_keys(c, {"type", "from", "to"}, where);
        return Curve::segment(point(field(c, "from", where), where + ".from"), point(field(c, "to", where), where + ".to"));
    }
    if (type == "bezier") {
        require_keys(c, {"type", "control_points"}, where);
        return Curve::bezier(points(field(c, "control_points", where), where + ".control_points"));
    }
    if (type == "rational_bezier") {
        require_keys(c, {"type", "control_points", "weights"}, where);
        const json& w = field(c, "weights", where);
        if (!w.is_array()) throw std::invalid_argument(where + ".weights must be an array");
        std::vector<double> weights;
        for (const json& x : w) weights.push_back(number(x, where + ".weights"));
        return Curve::rational_bezier(points(field(c, "control_points", where), where + ".control_points"),
                                      std::move(weights));
    }
    if (type == "parametric") {
        require_keys(c, {"type", "x", "y", "t_range"}, where);
        double t0 = 0.0, t1 = 1.0;
        if (c.contains("t_range")) {
            const Point2 r = point(c.at("t_range"), where + ".t_range");
            t0 = r.x;
            t1 = r.y;
        }
        return Curve::parametric(text(field(c, "x", where), where + ".x"), text(field(c, "y", where), where + ".y"),
                                 t0, t1);
    }
    throw std::invalid_argument(fmt::format("{}.type '{}' is not one of segment, bezier, rational_bezier, parametric",
                                            where, type));
}

CenterPolicy parse_x0(const json& x) {
    require_keys(x, {"strategy", "index", "point"}, "x0");
    const std::string s = text(field(x, "strategy", "x0"), "x0.strategy");
    if (s == "origin") return center::Origin{};
    if (s == "vertex_average") return center::VertexAverage{};
    if (s == "vertex") {
        const json& idx = field(x, "index", "x0");
        if (!idx.is_number_integer() || idx.get<long long>() < 0)
            throw std::invalid_argument("x0.index must be a non-negative integer");
        return center::Vertex{idx.get<std::size_t>()};
    }
    if (s == "custom") return center::Custom{point(field(x, "point", "x0"), "x0.point")};
    throw std::invalid_argument(fmt::format("x0.strategy '{}' is not one of origin, vertex_average, vertex, custom", s));
}

double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument(fmt::format("bad {} '{}'", what, s));
    return v;
}

}  // namespace

Domain parse_domain(const json& doc) {
    require_keys(doc, {"curves", "x0"}, "domain file");
    const json& cs = field(doc, "curves", "domain file");
    if (!cs.is_array() || cs.empty()) throw std::invalid_argument("'curves' must be a non-empty array");
    std::vector<Curve> curves;
    for (std::size_t i = 0; i < cs.size(); ++i) curves.push_back(parse_curve(cs[i], i));
    CenterPolicy c = center::Origin{};
    if (doc.contains("x0")) c = parse_x0(doc.at("x0"));
    return Domain{Region(std::move(curves)), c};
}

Domain load_domain(const std::string& spec) {
    constexpr std::string_view kBuiltin = "builtin:";
    if (spec.starts_with(kBuiltin)) return Domain{lookup_geometry(spec.substr(kBuiltin.size())).make(), center::Origin{}};
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument(fmt::format("cannot open domain file '{}'", spec));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("{}: {}", spec, e.what()));
    }
    return parse_domain(doc);
}

CenterPolicy parse_center(const std::string& s) {
    if (s == "origin") return center::Origin{};
    if (s == "vertex_average") return center::VertexAverage{};
    if (s.starts_with("vertex:")) {
        const std::string idx = s.substr(7);
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), v);
        if (ec != std::errc() || p != idx.data() + idx.size() || idx.empty())
            throw std::invalid_argument(fmt::format("bad vertex index in --center '{}'", s));
        return center::Vertex{v};
    }
    if (s.starts_with("custom:")) {
        const std::string rest = s.substr(7);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--center custom needs custom:x,y");
        return center::Custom{{parse_double(std::string_view(rest).substr(0, comma), "center x"),
                               parse_double(std::string_view(rest).substr(comma + 1), "center y")}};
    }
    throw std::invalid_argument(
        fmt::format("--center '{}' is not one of origin, vertex_average, vertex:i, custom:x,y", s));
}

std::string format_real(double v) { return fmt::format("{:#.17g}", v); }

namespace {

struct FunctionSpec {
    ScalarField field;
    const NamedFunction* builtin = nullptr;
    std::optional<expr::Expr> expression;
};

FunctionSpec load_function(const std::string& spec) {
    if (spec.starts_with("builtin:")) {
        const NamedFunction& f = lookup_function(spec.substr(8));
        return {f.field, &f, std::nullopt};
    }
    if (spec.starts_with("expr:")) {
        expr::Expr e = expr::parse(spec.substr(5));
        if (e.uses(expr::Var::T)) throw std::invalid_argument("function expressions may use x and y only");
        auto shared = std::make_shared<const expr::Expr>(e);
        ScalarField f = [shared](Point2 p) { return expr::eval(*shared, expr::Bindings{p.x, p.y, std::nullopt}); };
        return {f, nullptr, std::move(e)};
    }
    throw std::invalid_argument(fmt::format("function spec '{}' must start with builtin: or expr:", spec));
}

struct SingularFlags {
    std::optional<double> beta;
    std::vector<double> xc;
    std::string radial = "jacobi";
    std::string t_transform = "none";

    void add_to(CLI::App* app) {
        app->add_option("--beta", beta, "singularity exponent: integrand is g / |x - xc|^beta");
        app->add_option("--xc", xc, "singular point x y")->expected(2);
        app->add_option("--radial", radial, "none | jacobi | gsb | gsb:<alpha> (default alpha: smallest admissible)");
        app->add_option("--t-transform", t_transform, "edge-parameter transform")
            ->check(CLI::IsMember({"none", "r1", "r2", "r3"}));
    }

    bool active() const { return beta.has_value(); }

    SingularSpec spec() const {
        SingularSpec s;
        s.beta = *beta;
        if (xc.size() == 2) s.xc = {xc[0], xc[1]};
        if (radial == "none") s.radial = radial::None{};
        else if (radial == "jacobi") s.radial = radial::GaussJacobi{};
        else if (radial == "gsb") s.radial = radial::GeneralizedSB{double(select_alpha(*beta))};
        else if (radial.starts_with("gsb:")) s.radial = radial::GeneralizedSB{parse_double(radial.substr(4), "alpha")};
        else throw std::invalid_argument(fmt::format("--radial '{}' is not one of none, jacobi, gsb, gsb:<alpha>", radial));
        s.t_transform = t_transform == "r1"   ? TTransform::R1
                        : t_transform == "r2" ? TTransform::R2
                        : t_transform == "r3" ? TTransform::R3
                                              : TTransform::None;
        return s;
    }

    // Smooth factor g: a builtin's own numerator when it declares one, the given function otherwise.
    SplitIntegrand split(const FunctionSpec& f) const {
        if (f.builtin && f.builtin->singular) {
            if (std::abs(f.builtin->singular->beta - *beta) > 1e-15)
                throw std::invalid_argument(fmt::format("{} has beta = {}, but --beta {} was given", f.builtin->name,
                                                        f.builtin->singular->beta, *beta));
            return {f.builtin->singular->numerator, *beta};
        }
        return {f.field, *beta};
    }
};

struct Evaluator {
    Region region;
    CenterPolicy center;
    FunctionSpec function;
    SingularFlags singular;
    SingularDiagnostics diag;

    double operator()(int n_xi, int n_t) {
        if (singular.active())
            return integrate_singular(region, singular.split(function), singular.spec(), n_xi, n_t, &diag);
        return integrate(region, center, function.field, n_xi, n_t);
    }
};

void print_warnings(const SingularDiagnostics& d, std::ostream& err) {
    for (const std::string& w : d.warnings) err << "warning: " << w << '\n';
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const EvaluationError& e) {
        err << "evaluation error: " << e.what() << '\n';
        return kEvaluationError;
    } catch (const expr::ParseError& e) {
        err << "expression error: " << e.what() << '\n';
        return kInputError;
    } catch (const NotFoundError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

// Interior grid over the bounding box: cell centres, exterior cells left empty.
int grid_command(const std::string& boundary, int grid, std::ostream& out,
                 const std::function<double(const BoundaryLoop&, Point2)>& value) {
    if (grid < 1) throw std::invalid_argument("--grid must be >= 1");
    const BoundaryLoop loop(load_domain(boundary).region);
    const Point2 lo = loop.region().bbox_min(), hi = loop.region().bbox_max();
    const double standoff = 1e-6 * loop.scale();
    const std::size_t cells = static_cast<std::size_t>(grid) * grid;
    std::vector<Point2> xs(cells);
    std::vector<std::optional<double>> vals(cells);
    for_each_index(cells, Execution::Parallel, [&](std::size_t k) {
        const std::size_t i = k % grid, j = k / grid;
        const Point2 x{lo.x + (i + 0.5) / grid * (hi.x - lo.x), lo.y + (j + 0.5) / grid * (hi.y - lo.y)};
        xs[k] = x;
        if (strictly_inside(loop, x, standoff)) vals[k] = value(loop, x);
    });
    out << "x,y,value\n";
    for (std::size_t k = 0; k < cells; ++k) {
        out << format_real(xs[k].x) << ',' << format_real(xs[k].y) << ',';
        if (vals[k]) out << format_real(*vals[k]);
        out << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scaled boundary cubature over planar regions"};
    app.require_subcommand(1);

    std::string domain, function, center_flag;
    int n_xi = 0, n_t = 0;
    std::optional<double> hni_q;
    SingularFlags sing;

    auto* integ = app.add_subcommand("integrate", "integrate a function over a domain");
    integ->add_option("domain", domain, "domain file or builtin:<geometry>")->required();
    integ->add_option("function", function, "builtin:<name> or expr:<expression in x, y>")->required();
    integ->add_option("n_xi", n_xi, "radial order")->required();
    integ->add_option("n_t", n_t, "boundary order")->required();
    integ->add_option("--center", center_flag, "origin | vertex_average | vertex:i | custom:x,y");
    integ->add_option("--hni", hni_q, "homogeneous degree q: integrate on the boundary only (x0 = origin)");
    sing.add_to(integ);

    auto* hni = app.add_subcommand("hni", "homogeneous integration on the boundary only (x0 = origin)");
    hni->add_option("domain", domain, "domain file or builtin:<geometry>")->required();
    hni->add_option("function", function, "builtin:<name> or expr:<expression in x, y>")->required();
    hni->add_option("n_t", n_t, "boundary order")->required();
    hni->add_option("--degree", hni_q, "homogeneous degree q > -2")->required();

    bool parametric = false;
    auto* rule = app.add_subcommand("rule", "print a cubature rule as CSV");
    rule->add_option("domain", domain, "domain file or builtin:<geometry>")->required();
    rule->add_option("n_xi", n_xi, "radial order")->required();
    rule->add_option("n_t", n_t, "boundary order")->required();
    rule->add_option("--center", center_flag, "origin | vertex_average | vertex:i | custom:x,y");
    rule->add_flag("--parametric", parametric, "append curve, xi and t columns");

    int n_min = 1, n_max = 1;
    std::string reference = "auto", sweep = "both";
    auto* conv = app.add_subcommand("convergence", "error table for increasing orders");
    conv->add_option("domain", domain, "domain file or builtin:<geometry>")->required();
    conv->add_option("function", function, "builtin:<name> or expr:<expression in x, y>")->required();
    conv->add_option("n_min", n_min, "smallest order")->required();
    conv->add_option("n_max", n_max, "largest order")->required();
    conv->add_option("--reference", reference, "reference value or 'auto'");
    conv->add_option("--sweep", sweep, "which order varies")->check(CLI::IsMember({"both", "xi", "t"}));
    conv->add_option("--center", center_flag, "origin | vertex_average | vertex:i | custom:x,y");
    sing.add_to(conv);

    std::string gspec;
    int grid = 20;
    int boundary_nt = 256;
    auto* tm = app.add_subcommand("tmvi", "transfinite mean value interpolant on a grid");
    tm->add_option("boundary", domain, "boundary file or builtin:<geometry>")->required();
    tm->add_option("g", gspec, "boundary data: builtin:<name> or expr:<expression in x, y>")->required();
    tm->add_option("--grid", grid, "grid cells per side");
    tm->add_option("--nt", boundary_nt, "boundary points per curve");

    double p = 1.0;
    auto* dist = app.add_subcommand("distfield", "Lp distance field on a grid");
    dist->add_option("boundary", domain, "boundary file or builtin:<geometry>")->required();
    dist->add_option("--p", p, "exponent p >= 1")->required();
    dist->add_option("--grid", grid, "grid cells per side");
    dist->add_option("--nt", boundary_nt, "boundary points per curve");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    return guarded(err, [&]() -> int {
        if (integ->parsed()) {
            Domain d = load_domain(domain);
            if (!center_flag.empty()) d.center = parse_center(center_flag);
            if (hni_q) {
                const HomogeneousField hf(load_function(function).field, *hni_q);
                out << format_real(hni_integrate(d.region, hf, n_t)) << '\n';
                return kOk;
            }
            Evaluator ev{d.region, d.center, load_function(function), sing, {}};
            const double v = ev(n_xi, n_t);
            print_warnings(ev.diag, err);
            out << format_real(v) << '\n';
            return kOk;
        }
        if (hni->parsed()) {
            const HomogeneousField hf(load_function(function).field, *hni_q);
            out << format_real(hni_integrate(load_domain(domain).region, hf, n_t)) << '\n';
            return kOk;
        }
        if (rule->parsed()) {
            Domain d = load_domain(domain);
            if (!center_flag.empty()) d.center = parse_center(center_flag);
            const CubatureRule r = generate_rule(d.region, d.center, n_xi, n_t, RuleOptions{parametric});
            out << (parametric ? "x,y,w,curve,xi,t\n" : "x,y,w\n");
            for (std::size_t k = 0; k < r.size(); ++k) {
                out << format_real(r.points[k].x) << ',' << format_real(r.points[k].y) << ','
                    << format_real(r.weights[k]);
                if (parametric)
                    out << ',' << r.curve_index[k] << ',' << format_real(r.xi[k]) << ',' << format_real(r.t[k]);
                out << '\n';
            }
            return kOk;
        }
        if (conv->parsed()) {
            if (n_min < 1 || n_min > n_max) throw std::invalid_argument("need 1 <= n_min <= n_max");
            Domain d = load_domain(domain);
            if (!center_flag.empty()) d.center = parse_center(center_flag);
            Evaluator ev{d.region, d.center, load_function(function), sing, {}};
            const int fixed = std::max(64, 2 * n_max);
            auto orders = [&](int n) {
                if (sweep == "xi") return std::pair{n, fixed};
                if (sweep == "t") return std::pair{fixed, n};
                return std::pair{n, n};
            };
            double ref = 0.0;
            if (reference == "auto") {
                const auto [rx, rt] = orders(n_max + 8);
                ref = ev(rx, rt);
            } else {
                ref = parse_double(reference, "--reference");
            }
            out << "n,abs_err,rel_err\n";
            for (int n = n_min; n <= n_max; ++n) {
                const auto [nx, nt] = orders(n);
                const double e = std::abs(ev(nx, nt) - ref);
                out << n << ',' << format_real(e) << ',' << format_real(e / std::abs(ref)) << '\n';
            }
            print_warnings(ev.diag, err);
            return kOk;
        }
        if (tm->parsed()) {
            const ScalarField g = load_function(gspec).field;
            return grid_command(domain, grid, out, [&](const BoundaryLoop& loop, Point2 x) {
                return tmvi_eval(loop, g, x, boundary_nt);
            });
        }
        return grid_command(domain, grid, out, [&](const BoundaryLoop& loop, Point2 x) {
            return lp_distance(loop, x, p, boundary_nt);
        });
    });
}

}  // namespace sbc::cli
