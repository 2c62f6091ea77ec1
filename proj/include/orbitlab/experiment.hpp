#pragma once

// JSON experiment configs and the runners behind the orbitlab CLI. Every
// runner computes its artifacts in memory; nothing touches the disk until
// the whole experiment has succeeded.

#include "orbitlab/degrees.hpp"
#include "orbitlab/error.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/io/atomic_file.hpp"
#include "orbitlab/io/csv.hpp"
#include "orbitlab/io/svg.hpp"
#include "orbitlab/langsiegel.hpp"
#include "orbitlab/maps.hpp"
#include "orbitlab/multiplicity.hpp"
#include "orbitlab/orbit.hpp"
#include "orbitlab/parser.hpp"
#include "orbitlab/place.hpp"
#include "orbitlab/proj_point.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace orbitlab {

using Json = nlohmann::ordered_json;

enum class ExperimentKind { Orbit, Alpha, Recursion, Cocycle, Ratio, Density, Roth };

inline constexpr std::array<std::string_view, 7> kExperimentKinds{"orbit", "alpha", "recursion", "cocycle",
                                                                  "ratio", "density", "roth"};

inline ExperimentKind parse_kind(std::string_view s) {
    for (std::size_t i = 0; i < kExperimentKinds.size(); ++i)
        if (kExperimentKinds[i] == s) return static_cast<ExperimentKind>(i);
    throw Error(ErrorKind::Validation, "unknown experiment kind '" + std::string(s) + "'");
}

inline std::string_view to_string(ExperimentKind k) { return kExperimentKinds[static_cast<std::size_t>(k)]; }

/// Process exit status for a failure of the given kind.
inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError: return 2;
    case ErrorKind::BudgetExceeded:
    case ErrorKind::DegreeCapExceeded: return 4;
    default: return 3;
    }
}

struct NamedSubscheme {
    std::string id;
    SubschemeSpec spec;
};

struct DensityConfig {
    std::string set = "multiples"; // multiples | squares | explicit
    std::size_t k = 2;
    std::vector<std::size_t> values;
    std::size_t horizon = 10000;
    std::vector<std::size_t> d_grid;
};

struct CocycleConfig {
    unsigned n_max = 6;
    std::size_t tail_window = 3;
    std::vector<ProjPoint> points;
};

struct ExperimentConfig {
    std::optional<RationalSelfMap> map;
    std::optional<ProductMap> product;
    std::vector<ProjPoint> start;
    OrbitOptions orbit;
    std::size_t tail_window = 5;
    std::optional<std::vector<double>> mu;
    std::vector<NamedSubscheme> subschemes;
    std::vector<Place> places{Place::infinite()};
    double theta = 0.5;
    double epsilon = 0.5;
    std::vector<unsigned long> coord_bounds{100};
    std::optional<RecursionOptions> recursion;
    std::optional<CocycleConfig> cocycle;
    std::size_t degree_cap = kDefaultDegreeCap;
    std::optional<DensityConfig> density;
    std::string output = "out";

    /// The config with every default filled in, echoed into summaries.
    Json resolved;
};

namespace detail {

[[noreturn]] inline void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

inline void check_keys(const Json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) invalid(std::string(where) + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            invalid("unknown key '" + key + "' in " + std::string(where));
    }
}

template <typename T>
T get_number(const Json& obj, std::string_view key, T fallback) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) return fallback;
    if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) invalid("'" + std::string(key) + "' must be a number");
    } else {
        if (!it->is_number_integer()) invalid("'" + std::string(key) + "' must be an integer");
        if (it->template get<long long>() < 0) invalid("'" + std::string(key) + "' must be nonnegative");
    }
    return it->template get<T>();
}

inline Rational parse_coordinate(const Json& v) {
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        Rational q;
        if (s.empty() || q.set_str(s, 10) != 0) invalid("bad coordinate '" + s + "'");
        if (q.get_den() == 0) invalid("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    invalid("coordinates must be integers or \"p/q\" strings");
}

inline ProjPoint parse_point(const Json& v) {
    if (!v.is_array() || v.size() < 2) invalid("a point is an array of at least two coordinates");
    std::vector<Rational> raw;
    for (const auto& c : v) raw.push_back(parse_coordinate(c));
    return normalize_point(raw);
}

inline Json point_json(const ProjPoint& p) {
    Json a = Json::array();
    for (const auto& c : p.coords()) a.push_back(c.get_str());
    return a;
}

inline Place parse_place(const Json& v) {
    if (v.is_string() && v.get<std::string>() == "inf") return Place::infinite();
    if (v.is_number_integer()) return Place::finite(Integer(v.dump()));
    invalid("places are \"inf\" or a prime");
}

inline std::vector<Form> parse_map_forms(const Json& v, std::string_view where) {
    if (!v.is_string()) invalid(std::string(where) + " must be a string of forms separated by '|'");
    return parse_forms(v.get<std::string>());
}

inline NamedSubscheme parse_subscheme(const Json& v, std::size_t dim_hint) {
    check_keys(v, "subscheme", {"id", "points", "forms"});
    if (!v.contains("id") || !v["id"].is_string()) invalid("subscheme needs a string id");
    const std::string id = v["id"].get<std::string>();
    if (v.contains("points") == v.contains("forms")) invalid("subscheme '" + id + "' needs exactly one of points, forms");
    if (v.contains("points")) {
        if (!v["points"].is_array()) invalid("points must be an array");
        std::vector<PointWithMultiplicity> pts;
        for (const auto& e : v["points"]) {
            check_keys(e, "subscheme point", {"point", "mult"});
            if (!e.contains("point")) invalid("subscheme point needs 'point'");
            const auto m = get_number<unsigned>(e, "mult", 1u);
            pts.push_back({parse_point(e["point"]), m});
        }
        return {id, SubschemeSpec::from_points(std::move(pts))};
    }
    if (!v["forms"].is_string()) invalid("forms must be a string");
    return {id, SubschemeSpec::from_forms(parse_forms(v["forms"].get<std::string>(), dim_hint + 1))};
}

} // namespace detail

/// Parses and validates a config for the given kind. Syntax errors in the
/// JSON or in a polynomial raise ParseError; everything else Validation.
inline ExperimentConfig parse_config(std::string_view text, ExperimentKind kind) {
    using namespace detail;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j, "config",
               {"map", "product", "start", "n_max", "bit_budget", "stop_on_cycle", "tail_window", "mu", "subschemes",
                "places", "theta", "epsilon", "coord_bounds", "recursion", "cocycle", "degree_cap", "density", "output"});
    ExperimentConfig c;
    Json& r = c.resolved;
    r["kind"] = std::string(to_string(kind));

    // maps and points
    if (j.contains("map") && j.contains("product")) invalid("give either 'map' or 'product', not both");
    if (j.contains("map")) {
        c.map = RationalSelfMap::from_forms(parse_map_forms(j["map"], "map"));
        r["map"] = c.map->to_string();
    } else if (j.contains("product")) {
        if (!j["product"].is_array() || j["product"].empty()) invalid("'product' must be a nonempty array of maps");
        std::vector<P1Morphism> factors;
        Json echo = Json::array();
        for (const auto& f : j["product"]) {
            factors.push_back(P1Morphism::certify(RationalSelfMap::from_forms(parse_map_forms(f, "product factor"))));
            echo.push_back(factors.back().to_string());
        }
        c.product = ProductMap(std::move(factors));
        r["product"] = echo;
    }
    const std::size_t dim = c.map ? c.map->dim() : 1;
    if (j.contains("start")) {
        const Json& s = j["start"];
        if (c.product) {
            if (!s.is_array() || s.size() != c.product->size()) invalid("'start' needs one P^1 point per product factor");
            for (const auto& p : s) c.start.push_back(parse_point(p));
        } else {
            c.start.push_back(parse_point(s));
        }
        Json echo = Json::array();
        for (const auto& p : c.start) {
            if (p.dim() != 1 && c.product) invalid("product start points must lie on P^1");
            if (c.map && p.dim() != dim) invalid("start point dimension differs from the map");
            echo.push_back(point_json(p));
        }
        r["start"] = c.product ? echo : echo[0];
    }
    c.orbit.n_max = get_number<std::size_t>(j, "n_max", 20);
    c.orbit.bit_budget = get_number<std::size_t>(j, "bit_budget", std::size_t{1} << 20);
    if (c.orbit.bit_budget < 64) invalid("bit_budget must be at least 64");
    if (j.contains("stop_on_cycle")) {
        if (!j["stop_on_cycle"].is_boolean()) invalid("'stop_on_cycle' must be a boolean");
        c.orbit.stop_on_cycle = j["stop_on_cycle"].get<bool>();
    }
    c.tail_window = get_number<std::size_t>(j, "tail_window", 5);
    if (c.tail_window == 0) invalid("tail_window must be positive");
    r["n_max"] = c.orbit.n_max;
    r["bit_budget"] = c.orbit.bit_budget;
    r["stop_on_cycle"] = c.orbit.stop_on_cycle;
    r["tail_window"] = c.tail_window;

    if (j.contains("mu")) {
        if (!j["mu"].is_array()) invalid("'mu' must be an array of numbers");
        std::vector<double> mu;
        for (const auto& v : j["mu"]) {
            if (!v.is_number()) invalid("'mu' entries must be numbers");
            mu.push_back(v.get<double>());
        }
        DegreeProfile::from_mu(mu);
        c.mu = mu;
        r["mu"] = mu;
    }

    if (j.contains("subschemes")) {
        if (!j["subschemes"].is_array()) invalid("'subschemes' must be an array");
        std::set<std::string> ids;
        Json echo = Json::array();
        for (const auto& s : j["subschemes"]) {
            auto y = parse_subscheme(s, dim);
            if (!ids.insert(y.id).second) invalid("duplicate subscheme id '" + y.id + "'");
            if (y.spec.dim() != dim) invalid("subscheme '" + y.id + "' has the wrong dimension");
            echo.push_back({{"id", y.id}, {"spec", y.spec.to_string()}});
            c.subschemes.push_back(std::move(y));
        }
        r["subschemes"] = echo;
    }
    if (j.contains("places")) {
        if (!j["places"].is_array() || j["places"].empty()) invalid("'places' must be a nonempty array");
        c.places.clear();
        for (const auto& p : j["places"]) c.places.push_back(parse_place(p));
        std::sort(c.places.begin(), c.places.end());
        if (std::adjacent_find(c.places.begin(), c.places.end()) != c.places.end()) invalid("repeated place");
    }
    {
        Json echo = Json::array();
        for (const auto& p : c.places) echo.push_back(p.to_string());
        r["places"] = echo;
    }
    c.theta = get_number<double>(j, "theta", 0.5);
    if (!(c.theta >= 0.0)) invalid("theta must be nonnegative");
    c.epsilon = get_number<double>(j, "epsilon", 0.5);
    if (!(c.epsilon > 0.0)) invalid("epsilon must be positive");
    r["theta"] = c.theta;
    r["epsilon"] = c.epsilon;
    if (j.contains("coord_bounds")) {
        if (!j["coord_bounds"].is_array() || j["coord_bounds"].empty()) invalid("'coord_bounds' must be a nonempty array");
        c.coord_bounds.clear();
        for (const auto& b : j["coord_bounds"]) {
            if (!b.is_number_integer() || b.get<long long>() < 10) invalid("coordinate bounds must be integers >= 10");
            c.coord_bounds.push_back(b.get<unsigned long>());
        }
    }
    r["coord_bounds"] = c.coord_bounds;
    c.degree_cap = get_number<std::size_t>(j, "degree_cap", kDefaultDegreeCap);
    r["degree_cap"] = c.degree_cap;

    if (j.contains("recursion")) {
        const Json& q = j["recursion"];
        check_keys(q, "recursion", {"mu_l", "mu_next", "m", "eta", "n0", "s", "floor"});
        RecursionOptions o;
        if (!q.contains("mu_l")) invalid("recursion needs mu_l");
        o.mu_l = get_number<double>(q, "mu_l", 1.0);
        o.mu_next = get_number<double>(q, "mu_next", 0.0);
        o.m = get_number<unsigned>(q, "m", 1u);
        o.eta = get_number<double>(q, "eta", 0.9);
        o.n0 = get_number<std::size_t>(q, "n0", 1);
        o.s = get_number<std::size_t>(q, "s", 0);
        o.floor = get_number<double>(q, "floor", 1e-3);
        if (!(o.eta > 0.0 && o.eta < 1.0)) invalid("eta must lie in (0, 1)");
        if (o.m == 0) invalid("m must be positive");
        if (!(o.floor > 0.0)) invalid("floor must be positive");
        c.recursion = o;
        r["recursion"] = {{"mu_l", o.mu_l}, {"mu_next", o.mu_next}, {"m", o.m}, {"eta", o.eta},
                          {"n0", o.n0},     {"s", o.s},             {"floor", o.floor}};
    }
    if (j.contains("cocycle")) {
        const Json& q = j["cocycle"];
        check_keys(q, "cocycle", {"n_max", "tail_window", "points"});
        CocycleConfig cc;
        cc.n_max = get_number<unsigned>(q, "n_max", 6u);
        cc.tail_window = get_number<std::size_t>(q, "tail_window", 3);
        if (cc.n_max == 0 || cc.tail_window == 0) invalid("cocycle n_max and tail_window must be positive");
        if (q.contains("points")) {
            if (!q["points"].is_array()) invalid("cocycle points must be an array");
            for (const auto& p : q["points"]) cc.points.push_back(parse_point(p));
        }
        Json echo = Json::array();
        for (const auto& p : cc.points) echo.push_back(point_json(p));
        c.cocycle = cc;
        r["cocycle"] = {{"n_max", cc.n_max}, {"tail_window", cc.tail_window}, {"points", echo}};
    }
    if (j.contains("density")) {
        const Json& q = j["density"];
        check_keys(q, "density", {"set", "k", "values", "horizon", "d_grid"});
        DensityConfig d;
        if (q.contains("set")) {
            if (!q["set"].is_string()) invalid("density set must be a string");
            d.set = q["set"].get<std::string>();
        }
        if (d.set != "multiples" && d.set != "squares" && d.set != "explicit")
            invalid("density set must be multiples, squares or explicit");
        d.k = get_number<std::size_t>(q, "k", 2);
        if (d.k == 0) invalid("k must be positive");
        d.horizon = get_number<std::size_t>(q, "horizon", 10000);
        if (d.horizon > 100000000) invalid("density horizon above 1e8");
        if (q.contains("values")) {
            if (!q["values"].is_array()) invalid("values must be an array");
            for (const auto& v : q["values"]) {
                if (!v.is_number_integer() || v.get<long long>() < 0) invalid("values must be nonnegative integers");
                d.values.push_back(v.get<std::size_t>());
            }
            std::sort(d.values.begin(), d.values.end());
            d.values.erase(std::unique(d.values.begin(), d.values.end()), d.values.end());
            if (!d.values.empty() && d.values.back() > d.horizon) invalid("values beyond the horizon");
        } else if (d.set == "explicit") {
            invalid("explicit density set needs values");
        }
        if (q.contains("d_grid")) {
            if (!q["d_grid"].is_array()) invalid("d_grid must be an array");
            for (const auto& v : q["d_grid"]) {
                if (!v.is_number_integer() || v.get<long long>() < 0) invalid("d_grid entries must be nonnegative integers");
                if (v.get<std::size_t>() > d.horizon) invalid("d_grid entry beyond the horizon");
                d.d_grid.push_back(v.get<std::size_t>());
            }
        } else {
            d.d_grid = default_d_grid(d.horizon);
        }
        c.density = d;
        Json dj = {{"set", d.set}};
        if (d.set == "multiples") dj["k"] = d.k;
        if (d.set == "explicit") dj["values"] = d.values;
        dj["horizon"] = d.horizon;
        dj["d_grid"] = d.d_grid;
        r["density"] = dj;
    }
    if (j.contains("output")) {
        if (!j["output"].is_string() || j["output"].get<std::string>().empty()) invalid("'output' must be a nonempty string");
        c.output = j["output"].get<std::string>();
    }
    r["output"] = c.output;

    // what each kind needs
    const bool needs_orbit = kind == ExperimentKind::Orbit || kind == ExperimentKind::Alpha ||
                             kind == ExperimentKind::Recursion || kind == ExperimentKind::Ratio;
    if (needs_orbit) {
        if (!c.map && !c.product) invalid("this experiment needs 'map' or 'product'");
        if (c.start.empty()) invalid("this experiment needs 'start'");
    }
    if (kind == ExperimentKind::Recursion && !c.recursion) invalid("recursion experiment needs a 'recursion' block");
    if (kind == ExperimentKind::Cocycle) {
        if (!c.map) invalid("cocycle experiment needs a P^1 'map'");
        if (c.map->dim() != 1) invalid("cocycle experiment needs a map of P^1");
        if (!c.cocycle) c.cocycle = CocycleConfig{};
        if (c.cocycle->points.empty()) {
            if (c.start.empty()) invalid("cocycle experiment needs cocycle.points or 'start'");
            c.cocycle->points = c.start;
            r["cocycle"] = {{"n_max", c.cocycle->n_max},
                            {"tail_window", c.cocycle->tail_window},
                            {"points", Json::array({point_json(c.start[0])})}};
        }
        for (const auto& p : c.cocycle->points)
            if (p.dim() != 1) invalid("cocycle points must lie on P^1");
    }
    if (kind == ExperimentKind::Ratio) {
        if (c.product) invalid("ratio experiment runs on a single map");
        if (c.subschemes.empty()) invalid("ratio experiment needs a subscheme Y");
    }
    if (kind == ExperimentKind::Density && !c.density) invalid("density experiment needs a 'density' block");
    if (kind == ExperimentKind::Roth) {
        if (c.subschemes.empty()) invalid("roth experiment needs a subscheme Y");
        const auto& Y = c.subschemes.front().spec;
        if (!Y.points_mode() || Y.dim() != 1) invalid("roth experiment needs Y given by points on P^1");
    }
    return c;
}

/// Named output files, written only once the whole experiment succeeded.
struct ExperimentOutput {
    std::map<std::string, std::string> files;
    Json summary;

    void write(const std::filesystem::path& dir) const {
        for (const auto& [name, content] : files) io::write_file_atomic(dir / name, content);
    }
};

namespace detail {

inline std::string points_string(const std::vector<ProjPoint>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += pts[i].to_string();
    }
    return s;
}

inline Orbit run_orbit(const ExperimentConfig& c) {
    if (c.product) return iterate_orbit(*c.product, c.start, c.orbit);
    return iterate_orbit(*c.map, c.start.front(), c.orbit);
}

/// Runs an analysis on the orbit prefix; a prefix cut short by the bit
/// budget and too short to analyse is reported as a budget failure.
template <typename Fn>
auto within_budget(const Orbit& o, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::OrbitTooShort && o.stop == StopReason::BitBudget)
            throw Error(ErrorKind::BudgetExceeded, "bit budget exhausted at n = " + std::to_string(o.records.back().n) + ": " + e.what());
        throw;
    }
}

/// Degree profile when one is known: user supplied, a product map, or a
/// map of P^1 (d_1 = d).
inline std::optional<DegreeProfile> known_profile(const ExperimentConfig& c) {
    if (c.mu) return DegreeProfile::from_mu(*c.mu);
    if (c.product) {
        const auto d = c.product->degrees();
        return product_map_profile(std::span<const unsigned>(d));
    }
    if (c.map && c.map->dim() == 1) return DegreeProfile::from_mu({static_cast<double>(c.map->degree())});
    return std::nullopt;
}

inline Json orbit_summary(const Orbit& o) {
    Json j;
    j["records"] = o.records.size();
    j["stop_reason"] = std::string(to_string(o.stop));
    if (o.cycle_start) j["cycle_start"] = *o.cycle_start;
    j["final_bits"] = o.records.back().bits;
    return j;
}

inline Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::string svg_name(ExperimentKind k) { return std::string(to_string(k)) + ".svg"; }

inline ExperimentOutput run_orbit_experiment(const ExperimentConfig& c, bool svg) {
    const Orbit o = run_orbit(c);
    std::vector<std::string> header{"n", "point", "height", "bits"};
    const bool with_local = !c.product && !c.subschemes.empty();
    if (with_local)
        for (const auto& y : c.subschemes)
            for (const auto& v : c.places) header.push_back("lambda_" + y.id + "_" + v.to_string());
    io::CsvTable t(header);
    io::Series hs{"h(f^n x)", {}, {}};
    for (const auto& rec : o.records) {
        auto row = t.row();
        row << rec.n << points_string(rec.points) << rec.height << rec.bits;
        if (with_local)
            for (const auto& y : c.subschemes)
                for (const auto& v : c.places) row << local_height(rec.point(), y.spec, v).value();
        hs.x.push_back(static_cast<double>(rec.n));
        hs.y.push_back(rec.height);
    }
    ExperimentOutput out;
    out.files["orbit.csv"] = t.str();
    out.summary["orbit"] = orbit_summary(o);
    if (svg) out.files[svg_name(ExperimentKind::Orbit)] = io::render_svg({"Orbit heights", "n", "h", true, {hs}});
    return out;
}

inline ExperimentOutput run_alpha_experiment(const ExperimentConfig& c, bool svg) {
    const Orbit o = run_orbit(c);
    const auto heights = o.heights_through(c.orbit.n_max);
    const auto profile = known_profile(c);
    const AlphaEstimate est = within_budget(o, [&] { return alpha_estimate(heights, c.tail_window, profile); });
    io::CsvTable t({"n", "h", "alpha_n"});
    io::Series s{"max(1,h_n)^(1/n)", {}, {}};
    for (std::size_t n = 1; n < heights.size(); ++n) {
        t.row() << n << heights[n] << est.sequence[n - 1];
        s.x.push_back(static_cast<double>(n));
        s.y.push_back(est.sequence[n - 1]);
    }
    ExperimentOutput out;
    out.files["alpha.csv"] = t.str();
    out.summary["orbit"] = orbit_summary(o);
    Json a;
    a["alpha_lower"] = est.alpha_lower;
    a["alpha_upper"] = est.alpha_upper;
    a["classified_value"] = optional_number(est.classified_value);
    if (profile) {
        a["profile_mu"] = profile->mu();
        a["profile_d"] = profile->d();
        a["peak"] = profile->peak() ? Json(*profile->peak()) : Json(nullptr);
        a["candidates"] = profile->candidate_values();
    }
    out.summary["alpha"] = a;
    if (svg) out.files[svg_name(ExperimentKind::Alpha)] = io::render_svg({"Arithmetic degree estimate", "n", "alpha_n", false, {s}});
    return out;
}

inline ExperimentOutput run_recursion_experiment(const ExperimentConfig& c, bool svg) {
    const Orbit o = run_orbit(c);
    const auto heights = o.heights_through(c.orbit.n_max);
    const RecursionOptions& opt = *c.recursion;
    const RecursionReport rep = within_budget(o, [&] { return recursion_verify(heights, opt); });
    io::CsvTable t({"j", "n", "H"});
    io::Series s{"H_j", {}, {}};
    std::size_t j = 0;
    for (std::size_t n = opt.s; n < heights.size(); n += opt.m, ++j) {
        const double H = std::max(1.0, heights[n]);
        t.row() << j << n << H;
        s.x.push_back(static_cast<double>(j));
        s.y.push_back(H);
    }
    io::CsvTable v({"n", "k", "ratio"});
    for (const auto& viol : rep.violations) v.row() << viol.n << viol.k << viol.ratio;
    ExperimentOutput out;
    out.files["recursion.csv"] = t.str();
    out.files["recursion_violations.csv"] = v.str();
    out.summary["orbit"] = orbit_summary(o);
    out.summary["recursion"] = {{"best_C", rep.best_C},       {"best_n", rep.best_n},
                                {"best_k", rep.best_k},       {"pairs_checked", rep.pairs_checked},
                                {"horizon", rep.horizon},     {"violations", rep.violations.size()}};
    if (svg) out.files[svg_name(ExperimentKind::Recursion)] = io::render_svg({"Subsampled heights", "j", "H_j", true, {s}});
    return out;
}

inline ExperimentOutput run_cocycle_experiment(const ExperimentConfig& c, bool svg) {
    const P1Morphism f = P1Morphism::certify(*c.map);
    const CocycleConfig& cc = *c.cocycle;
    io::CsvTable t({"point", "n", "kappa", "root"});
    std::vector<io::Series> series;
    Json per_point = Json::array();
    Bracket eY{0.0, 0.0};
    for (const auto& x : cc.points) {
        const CocycleTable tab = backward_cocycle(f, x, cc.n_max, c.degree_cap);
        io::Series s{x.to_string(), {}, {}};
        for (std::size_t n = 0; n <= tab.n_max(); ++n) {
            auto row = t.row();
            row << x.to_string() << n << tab.entries[n];
            if (n == 0) {
                row << "";
            } else {
                row << tab.root(n);
                s.x.push_back(static_cast<double>(n));
                s.y.push_back(tab.root(n));
            }
        }
        series.push_back(std::move(s));
        Json pj{{"point", x.to_string()}, {"kappa", tab.entries}};
        if (tab.entries.size() >= cc.tail_window + 1) {
            const Bracket b = e_minus_estimate(tab, cc.tail_window);
            pj["e_minus"] = {b.lower, b.upper};
            eY.lower = std::max(eY.lower, b.lower);
            eY.upper = std::max(eY.upper, b.upper);
        } else {
            pj["e_minus"] = nullptr;
        }
        per_point.push_back(pj);
    }
    ExperimentOutput out;
    out.files["cocycle.csv"] = t.str();
    out.summary["cocycle"] = {{"map", f.to_string()}, {"points", per_point}, {"e_fY", {eY.lower, eY.upper}}};
    if (svg) out.files[svg_name(ExperimentKind::Cocycle)] = io::render_svg({"kappa_{-n}^{1/n}", "n", "root", false, series});
    return out;
}

inline ExperimentOutput run_ratio_experiment(const ExperimentConfig& c, bool svg) {
    const Orbit o = run_orbit(c);
    const NamedSubscheme& Y = c.subschemes.front();
    const RatioSeries rs = ratio_series(o.records, Y.spec, c.places);
    const std::size_t k = c.map->dim();
    const CoordinateRatioSeries cs = coordinate_ratio_series(o.records, k);
    std::map<std::size_t, double> coord;
    for (const auto& [n, v] : cs.entries) coord[n] = v;

    io::CsvTable t({"n", "lambda_sum", "height", "ratio", "coordinate_ratio"});
    io::Series s{"ratio", {}, {}};
    for (const auto& e : rs.entries) {
        auto row = t.row();
        row << e.n << e.numerator << e.denominator;
        if (e.ratio) {
            row << *e.ratio;
            s.x.push_back(static_cast<double>(e.n));
            s.y.push_back(*e.ratio);
        } else {
            row << "";
        }
        if (auto it = coord.find(e.n); it != coord.end()) row << it->second;
        else row << "";
    }
    const ReturnSet ret = threshold_return_set(rs, c.theta);
    io::CsvTable d({"d", "count", "start", "density", "density_real"});
    for (const auto& e : ret.profile.entries) d.row() << e.d << e.count << e.start << e.value() << e.value().get_d();

    ExperimentOutput out;
    out.files["ratio.csv"] = t.str();
    out.files["ratio_density.csv"] = d.str();
    out.summary["orbit"] = orbit_summary(o);
    Json rj;
    rj["Y"] = Y.id;
    rj["skipped"] = rs.skipped;
    rj["return_set"] = ret.indices;
    rj["density_estimate"] = ret.profile.summary().get_str();

    // e(f;Y) < alpha_f(x) can only be checked for a morphism of P^1 and a
    // finite Y given by points
    Json hj;
    if (c.map->dim() == 1 && Y.spec.points_mode()) {
        const P1Morphism f = P1Morphism::certify(*c.map);
        const CocycleConfig cc = c.cocycle.value_or(CocycleConfig{});
        std::vector<ProjPoint> ys;
        for (const auto& p : Y.spec.points()) ys.push_back(p.point);
        const Bracket eb = e_fY(f, ys, cc.n_max, cc.tail_window, c.degree_cap);
        const auto heights = o.heights_through(c.orbit.n_max);
        const AlphaEstimate est = within_budget(o, [&] { return alpha_estimate(heights, c.tail_window, known_profile(c)); });
        const HypothesisCheck h = check_ratio_hypothesis(eb, est);
        hj["e_fY"] = {eb.lower, eb.upper};
        hj["alpha"] = {est.alpha_lower, est.alpha_upper};
        hj["alpha_classified"] = optional_number(est.classified_value);
        hj["holds"] = h.holds;
        hj["label"] = h.label();
    } else {
        hj["holds"] = nullptr;
        hj["label"] = "unchecked";
    }
    out.summary["ratio"] = rj;
    out.summary["hypothesis"] = hj;
    if (svg) out.files[svg_name(ExperimentKind::Ratio)] = io::render_svg({"Local height ratio", "n", "ratio", false, {s}});
    return out;
}

inline std::vector<std::size_t> density_set(const DensityConfig& d) {
    std::vector<std::size_t> A;
    if (d.set == "multiples") {
        for (std::size_t n = 0; n <= d.horizon; n += d.k) A.push_back(n);
    } else if (d.set == "squares") {
        for (std::size_t r = 0; r * r <= d.horizon; ++r) A.push_back(r * r);
    } else {
        A = d.values;
    }
    return A;
}

inline ExperimentOutput run_density_experiment(const ExperimentConfig& c, bool svg) {
    const DensityConfig& d = *c.density;
    const auto A = density_set(d);
    const DensityProfile p = banach_profile(A, d.horizon, d.d_grid);
    io::CsvTable t({"d", "count", "start", "density", "density_real"});
    io::Series s{"window density", {}, {}};
    for (const auto& e : p.entries) {
        t.row() << e.d << e.count << e.start << e.value() << e.value().get_d();
        s.x.push_back(static_cast<double>(e.d));
        s.y.push_back(e.value().get_d());
    }
    ExperimentOutput out;
    out.files["density.csv"] = t.str();
    out.summary["density"] = {{"set_size", A.size()}, {"horizon", d.horizon}, {"estimate", p.summary().get_str()}};
    if (svg) out.files[svg_name(ExperimentKind::Density)] = io::render_svg({"Banach density profile", "d", "density", false, {s}});
    return out;
}

inline ExperimentOutput run_roth_experiment(const ExperimentConfig& c, bool) {
    const NamedSubscheme& Y = c.subschemes.front();
    io::CsvTable t({"coord_bound", "point", "lambda_sum", "bound"});
    Json scans = Json::array();
    std::optional<std::vector<ProjPoint>> first;
    bool stable = true;
    for (unsigned long H : c.coord_bounds) {
        const RothScan scan = roth_scan(Y.spec, c.places, c.epsilon, H);
        std::vector<ProjPoint> pts;
        for (const auto& v : scan.violators) {
            t.row() << H << v.x.to_string() << v.lambda << v.bound;
            pts.push_back(v.x);
        }
        if (first && *first != pts) stable = false;
        if (!first) first = pts;
        scans.push_back({{"coord_bound", H},
                         {"height_bound", std::log(static_cast<double>(H))},
                         {"scanned", scan.scanned},
                         {"on_support", scan.on_support},
                         {"violators", scan.violators.size()}});
    }
    ExperimentOutput out;
    out.files["roth.csv"] = t.str();
    out.summary["roth"] = {{"Y", Y.id}, {"m_XY", m_XY(Y.spec)}, {"scans", scans}, {"stable", stable}};
    return out;
}

} // namespace detail

/// Runs one experiment; the returned files include <kind>_summary.json.
inline ExperimentOutput run_experiment(const ExperimentConfig& c, ExperimentKind kind, bool svg = false) {
    ExperimentOutput out;
    switch (kind) {
    case ExperimentKind::Orbit: out = detail::run_orbit_experiment(c, svg); break;
    case ExperimentKind::Alpha: out = detail::run_alpha_experiment(c, svg); break;
    case ExperimentKind::Recursion: out = detail::run_recursion_experiment(c, svg); break;
    case ExperimentKind::Cocycle: out = detail::run_cocycle_experiment(c, svg); break;
    case ExperimentKind::Ratio: out = detail::run_ratio_experiment(c, svg); break;
    case ExperimentKind::Density: out = detail::run_density_experiment(c, svg); break;
    case ExperimentKind::Roth: out = detail::run_roth_experiment(c, svg); break;
    }
    Json summary;
    summary["kind"] = std::string(to_string(kind));
    summary["config"] = c.resolved;
    for (auto& [key, value] : out.summary.items()) summary[key] = value;
    out.summary = summary;
    out.files[std::string(to_string(kind)) + "_summary.json"] = summary.dump(2) + "\n";
    return out;
}

} // namespace orbitlab
