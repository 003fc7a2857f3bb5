#include "hermite_mc/config.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <variant>

namespace hermite_mc {

namespace wf = weight_family;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void require_object(const Json& j, const std::string& ctx)
{
    if (!j.is_object()) {
        fail(ctx + " must be an object");
    }
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& ctx)
{
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            known = known || item.key() == k;
        }
        if (!known) {
            fail("unknown key '" + item.key() + "' in " + ctx);
        }
    }
}

const Json& field(const Json& j, const char* key, const std::string& ctx)
{
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(ctx + " is missing '" + key + "'");
    }
    return *it;
}

double as_double(const Json& j, const std::string& ctx)
{
    if (!j.is_number()) {
        fail(ctx + " must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(ctx + " must be finite");
    }
    return v;
}

std::uint64_t as_u64(const Json& j, const std::string& ctx)
{
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    fail(ctx + " must be a nonnegative integer");
}

double num(const Json& j, const char* key, const std::string& ctx)
{
    return as_double(field(j, key, ctx), ctx + "." + key);
}

std::vector<double> as_double_list(const Json& j, const std::string& ctx)
{
    if (!j.is_array()) {
        fail(ctx + " must be an array");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_double(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::uint64_t> as_u64_list(const Json& j, const std::string& ctx)
{
    if (!j.is_array()) {
        fail(ctx + " must be an array");
    }
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_u64(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    return out;
}

template <class F>
auto rethrow_as_config(F&& f, const std::string& ctx)
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(ctx + ": " + e.what());
    } catch (const std::out_of_range& e) {
        fail(ctx + ": " + e.what());
    }
}

PointPair point_from_json(const Json& j, const std::string& ctx)
{
    require_object(j, ctx);
    check_keys(j, {"x", "y"}, ctx);
    PointPair p{as_double_list(field(j, "x", ctx), ctx + ".x"), as_double_list(field(j, "y", ctx), ctx + ".y")};
    if (p.x.empty() || p.x.size() != p.y.size()) {
        fail(ctx + ": x and y must be nonempty and of equal length");
    }
    return p;
}

void append_double(std::string& out, double v)
{
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    out += format_double(v, 17);
}

void dump_into(std::string& out, const Json& j)
{
    switch (j.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& item : j.items()) {
            if (!first) {
                out += ',';
            }
            first = false;
            out += Json(item.key()).dump();
            out += ':';
            dump_into(out, item.value());
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            dump_into(out, j[i]);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float:
        append_double(out, j.get<double>());
        break;
    default:
        out += j.dump();
        break;
    }
}

} // namespace

std::string format_double(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string dump_json(const Json& j)
{
    std::string out;
    dump_into(out, j);
    return out;
}

WeightSequenceSpec weight_from_json(const Json& j)
{
    const std::string ctx = "weight sequence";
    if (j.is_number()) {
        const double c = as_double(j, ctx);
        return rethrow_as_config([&] { return WeightSequenceSpec::constant(c); }, ctx);
    }
    require_object(j, ctx);
    const Json& tag = field(j, "family", ctx);
    if (!tag.is_string()) {
        fail(ctx + ".family must be a string");
    }
    const std::string family = tag.get<std::string>();
    const std::string fctx = ctx + " '" + family + "'";
    return rethrow_as_config(
        [&] {
            if (family == "constant") {
                check_keys(j, {"family", "c"}, fctx);
                return WeightSequenceSpec::constant(num(j, "c", fctx));
            }
            if (family == "polynomial") {
                check_keys(j, {"family", "c", "beta"}, fctx);
                return WeightSequenceSpec::polynomial_decay(num(j, "c", fctx), num(j, "beta", fctx));
            }
            if (family == "geometric") {
                check_keys(j, {"family", "c", "q"}, fctx);
                return WeightSequenceSpec::geometric(num(j, "c", fctx), num(j, "q", fctx));
            }
            if (family == "root_geometric") {
                check_keys(j, {"family", "c"}, fctx);
                return WeightSequenceSpec::root_geometric(num(j, "c", fctx));
            }
            if (family == "affine_polynomial") {
                check_keys(j, {"family", "base", "c", "beta"}, fctx);
                return WeightSequenceSpec::affine_polynomial(num(j, "base", fctx), num(j, "c", fctx),
                                                             num(j, "beta", fctx));
            }
            if (family == "table") {
                check_keys(j, {"family", "values", "tail"}, fctx);
                const Json& tail = field(j, "tail", fctx);
                if (!tail.is_string() || tail.get<std::string>() != "constant_last") {
                    fail(fctx + ".tail must be \"constant_last\"");
                }
                return WeightSequenceSpec::table(as_double_list(field(j, "values", fctx), fctx + ".values"),
                                                 wf::TailRule::ConstantLast);
            }
            fail("unknown weight family '" + family + "'");
        },
        fctx);
}

HermiteSpace space_from_json(const Json& j)
{
    const std::string ctx = "space";
    require_object(j, ctx);
    const Json& tag = field(j, "family", ctx);
    if (!tag.is_string()) {
        fail(ctx + ".family must be a string");
    }
    const std::string family = tag.get<std::string>();
    const std::string fctx = ctx + " '" + family + "'";
    return rethrow_as_config(
        [&]() -> HermiteSpace {
            if (family == "finite_smoothness") {
                check_keys(j, {"family", "s", "alpha", "gamma"}, fctx);
                return FiniteSmoothnessSpace(as_u64(field(j, "s", fctx), fctx + ".s"), num(j, "alpha", fctx),
                                             weight_from_json(field(j, "gamma", fctx)));
            }
            if (family == "analytic") {
                check_keys(j, {"family", "s", "omega", "a", "b"}, fctx);
                return AnalyticSpace(as_u64(field(j, "s", fctx), fctx + ".s"), num(j, "omega", fctx),
                                     weight_from_json(field(j, "a", fctx)),
                                     weight_from_json(field(j, "b", fctx)));
            }
            fail("unknown space family '" + family + "'");
        },
        fctx);
}

ExperimentConfig config_from_json(const Json& doc)
{
    const std::string ctx = "document";
    require_object(doc, ctx);
    check_keys(doc,
               {"space", "gamma", "n", "replications", "seed", "eps", "s_values", "tol", "points", "format",
                "output"},
               ctx);
    ExperimentConfig c;
    if (doc.contains("space")) {
        c.space = space_from_json(doc["space"]);
    }
    if (doc.contains("gamma")) {
        c.gamma = weight_from_json(doc["gamma"]);
        if (!c.gamma->is_nonincreasing()) {
            fail("gamma must be nonincreasing");
        }
    }
    if (doc.contains("n")) {
        c.n = as_u64_list(doc["n"], "n");
        for (auto v : c.n) {
            if (v == 0) {
                fail("every n must be >= 1");
            }
        }
    }
    if (doc.contains("replications")) {
        c.replications = as_u64(doc["replications"], "replications");
        if (*c.replications < 2) {
            fail("replications must be >= 2");
        }
    }
    if (doc.contains("seed")) {
        c.seed = as_u64(doc["seed"], "seed");
    }
    if (doc.contains("eps")) {
        c.eps = as_double_list(doc["eps"], "eps");
        for (double e : c.eps) {
            if (!(e > 0.0 && e < 1.0)) {
                fail("every eps must lie in (0,1)");
            }
        }
    }
    if (doc.contains("s_values")) {
        for (auto v : as_u64_list(doc["s_values"], "s_values")) {
            if (v == 0) {
                fail("every s must be >= 1");
            }
            c.s_values.push_back(static_cast<std::size_t>(v));
        }
    }
    if (doc.contains("tol")) {
        c.tol = as_double(doc["tol"], "tol");
        if (!(*c.tol > 0.0)) {
            fail("tol must be positive");
        }
    }
    if (doc.contains("points")) {
        const Json& pts = doc["points"];
        if (!pts.is_array()) {
            fail("points must be an array");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            PointPair p = point_from_json(pts[i], "points[" + std::to_string(i) + "]");
            if (c.space && p.x.size() != c.space->dim()) {
                fail("points[" + std::to_string(i) + "] dimension differs from space.s");
            }
            c.points.push_back(std::move(p));
        }
    }
    if (doc.contains("format")) {
        const Json& f = doc["format"];
        if (f == "csv") {
            c.format = OutputFormat::Csv;
        } else if (f == "json") {
            c.format = OutputFormat::Json;
        } else {
            fail("format must be \"csv\" or \"json\"");
        }
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) {
            fail("output must be a string");
        }
        c.output = doc["output"].get<std::string>();
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(doc);
}

Json to_json(const WeightSequenceSpec& w)
{
    return std::visit(Overloaded{
                          [](const wf::Constant& f) { return Json{{"family", "constant"}, {"c", f.c}}; },
                          [](const wf::PolynomialDecay& f) {
                              return Json{{"family", "polynomial"}, {"c", f.c}, {"beta", f.beta}};
                          },
                          [](const wf::Geometric& f) {
                              return Json{{"family", "geometric"}, {"c", f.c}, {"q", f.q}};
                          },
                          [](const wf::RootGeometric& f) { return Json{{"family", "root_geometric"}, {"c", f.c}}; },
                          [](const wf::AffinePolynomial& f) {
                              return Json{{"family", "affine_polynomial"}, {"base", f.base}, {"c", f.c}, {"beta", f.beta}};
                          },
                          [](const wf::Table& f) {
                              return Json{{"family", "table"}, {"values", f.values}, {"tail", "constant_last"}};
                          },
                      },
                      w.family());
}

Json to_json(const HermiteSpace& space)
{
    if (space.is_analytic()) {
        const AnalyticSpace& a = space.analytic();
        return Json{{"family", "analytic"}, {"s", a.dim()}, {"omega", a.omega()}, {"a", to_json(a.a())}, {"b", to_json(a.b())}};
    }
    const FiniteSmoothnessSpace& f = space.finite();
    return Json{{"family", "finite_smoothness"}, {"s", f.dim()}, {"alpha", f.alpha()}, {"gamma", to_json(f.gamma())}};
}

Json to_json(const ExperimentConfig& c)
{
    Json doc = Json::object();
    if (c.space) {
        doc["space"] = to_json(*c.space);
    }
    if (c.gamma) {
        doc["gamma"] = to_json(*c.gamma);
    }
    if (!c.n.empty()) {
        doc["n"] = c.n;
    }
    if (c.replications) {
        doc["replications"] = *c.replications;
    }
    if (c.seed) {
        doc["seed"] = *c.seed;
    }
    if (!c.eps.empty()) {
        doc["eps"] = c.eps;
    }
    if (!c.s_values.empty()) {
        doc["s_values"] = c.s_values;
    }
    if (c.tol) {
        doc["tol"] = *c.tol;
    }
    if (!c.points.empty()) {
        Json pts = Json::array();
        for (const auto& p : c.points) {
            pts.push_back(Json{{"x", p.x}, {"y", p.y}});
        }
        doc["points"] = pts;
    }
    if (c.format) {
        doc["format"] = *c.format == OutputFormat::Csv ? "csv" : "json";
    }
    if (c.output) {
        doc["output"] = *c.output;
    }
    return doc;
}

std::string serialize_config(const ExperimentConfig& config) { return dump_json(to_json(config)); }

} // namespace hermite_mc
