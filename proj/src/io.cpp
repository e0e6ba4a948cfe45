#include "thetapress/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "thetapress/errors.hpp"
#include "thetapress/generators.hpp"

namespace thetapress {

using nlohmann::json;

ProfileOptions RunConfig::profile_options() const
{
    ProfileOptions o;
    o.solver = solver;
    o.tol = tol;
    o.mode = mode;
    o.cap = cap;
    o.jobs = jobs;
    return o;
}

namespace {

json parse_json(std::string_view text, std::string_view origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character.
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (auto pos = what.find("parse error"); pos != std::string::npos) {
            what = what.substr(pos);
        }
        throw ConfigError(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                          what);
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

[[noreturn]] void bad(const std::string& where, const std::string& message)
{
    throw ConfigError(where + ": " + message);
}

std::size_t as_count(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        bad(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

double as_number(const json& j, const std::string& where)
{
    if (!j.is_number()) {
        bad(where, "expected a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        bad(where, "expected a finite number");
    }
    return v;
}

void check_version(const json& doc, const std::string& where, bool required)
{
    if (!doc.contains("schema_version")) {
        if (required) {
            bad(where, "missing schema_version (expected " + std::to_string(schema_version) + ")");
        }
        return;
    }
    if (doc["schema_version"] != schema_version) {
        bad(where, "unsupported schema_version " + doc["schema_version"].dump() + ", expected " +
                       std::to_string(schema_version));
    }
}

std::vector<std::size_t> parse_index_list(std::string text, const std::string& where)
{
    std::vector<std::size_t> out;
    std::erase_if(text, [](char c) { return c == '{' || c == '}' || c == ' ' || c == '[' || c == ']'; });
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            auto v = std::stoull(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::logic_error&) {
            bad(where, "bad index '" + item + "'");
        }
    }
    return out;
}

double parse_double(const std::string& text, const std::string& where)
{
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::logic_error&) {
        bad(where, "bad number '" + text + "'");
    }
}

DistanceMatrix parse_metric(const json& j, std::optional<std::size_t> points, const std::string& where)
{
    if (j.is_array()) {
        const std::size_t p = j.size();
        if (points && *points != p) {
            bad(where, "matrix has " + std::to_string(p) + " rows, points = " + std::to_string(*points));
        }
        std::vector<double> flat;
        for (std::size_t r = 0; r < p; ++r) {
            if (!j[r].is_array() || j[r].size() != p) {
                bad(where + "[" + std::to_string(r) + "]", "expected a row of " + std::to_string(p) + " numbers");
            }
            for (std::size_t c = 0; c < p; ++c) {
                flat.push_back(as_number(j[r][c], where));
            }
        }
        return DistanceMatrix(p, std::move(flat));
    }
    json spec = j.is_string() ? json{{"generator", j}} : j;
    if (!spec.is_object() || !spec.contains("generator") || !spec["generator"].is_string()) {
        bad(where, "expected a distance matrix or a generator object");
    }
    const auto gen = spec["generator"].get<std::string>();
    DistanceMatrix d;
    if (gen == "circle" || gen == "line") {
        if (!points) {
            bad(where, gen + " metric needs `points`");
        }
        d = gen == "circle" ? circle_metric(*points) : line_metric(*points);
    } else if (gen == "hamming") {
        if (!spec.contains("bits")) {
            bad(where, "hamming metric needs `bits`");
        }
        d = hamming_metric(as_count(spec["bits"], where + ".bits"));
    } else if (gen == "ultrametric_tree") {
        if (!spec.contains("branching") || !spec.contains("depth")) {
            bad(where, "ultrametric_tree metric needs `branching` and `depth`");
        }
        d = ultrametric_tree_metric(as_count(spec["branching"], where + ".branching"),
                                    as_count(spec["depth"], where + ".depth"));
    } else {
        bad(where, "unknown metric generator '" + gen + "'");
    }
    if (points && *points != d.size()) {
        bad(where, gen + " metric has " + std::to_string(d.size()) + " points, points = " + std::to_string(*points));
    }
    return d;
}

MapTable parse_map(const json& j, std::size_t p, const std::string& where)
{
    if (j.is_array()) {
        if (j.size() != p) {
            bad(where, "map table has " + std::to_string(j.size()) + " entries, expected " + std::to_string(p));
        }
        MapTable f;
        for (const auto& v : j) {
            auto y = as_count(v, where);
            if (y >= p) {
                bad(where, "image " + std::to_string(y) + " out of range");
            }
            f.push_back(y);
        }
        return f;
    }
    if (!j.is_string()) {
        bad(where, "expected a table or a named map");
    }
    auto name = j.get<std::string>();
    auto colon = name.find(':');
    auto head = name.substr(0, colon);
    auto arg = colon == std::string::npos ? std::string() : name.substr(colon + 1);
    auto number = [&] {
        auto v = parse_index_list(arg, where);
        if (v.size() != 1) {
            bad(where, "'" + head + "' needs one integer argument");
        }
        return v[0];
    };
    if (head == "identity") {
        return identity_map(p);
    }
    if (head == "doubling") {
        return doubling_map(p);
    }
    if (head == "rotation") {
        return rotation_map(p, number() % p);
    }
    if (head == "constant") {
        auto v = number();
        if (v >= p) {
            bad(where, "constant value out of range");
        }
        return constant_map(p, v);
    }
    bad(where, "unknown named map '" + name + "'");
}

std::vector<double> parse_potential(const json& j, std::size_t p, const std::string& where)
{
    if (j.is_array()) {
        if (j.size() != p) {
            bad(where, "potential has " + std::to_string(j.size()) + " values, expected " + std::to_string(p));
        }
        std::vector<double> phi;
        for (const auto& v : j) {
            phi.push_back(as_number(v, where));
        }
        return phi;
    }
    if (!j.is_string()) {
        bad(where, "expected a vector or a named potential");
    }
    auto name = j.get<std::string>();
    if (name == "zero") {
        return std::vector<double>(p, 0.0);
    }
    if (name.starts_with("constant:")) {
        return std::vector<double>(p, parse_double(name.substr(9), where));
    }
    if (name.starts_with("indicator:")) {
        std::vector<double> phi(p, 0.0);
        for (auto x : parse_index_list(name.substr(10), where)) {
            if (x >= p) {
                bad(where, "indicator index " + std::to_string(x) + " out of range");
            }
            phi[x] = 1.0;
        }
        return phi;
    }
    bad(where, "unknown potential '" + name + "'");
}

NdsSystem system_from_json(const json& j, const std::filesystem::path& base_dir, const std::string& where);

NdsSystem system_ref(const json& j, const std::filesystem::path& base_dir, const std::string& where)
{
    if (j.is_string()) {
        auto path = base_dir / j.get<std::string>();
        auto doc = parse_json(read_file(path), path.string());
        check_version(doc, path.string(), true);
        return system_from_json(doc, path.parent_path(), path.string());
    }
    return system_from_json(j, base_dir, where);
}

NdsSystem system_from_json(const json& j, const std::filesystem::path&, const std::string& where)
{
    if (!j.is_object()) {
        bad(where, "system must be an object");
    }
    for (const char* key : {"metric", "maps"}) {
        if (!j.contains(key)) {
            bad(where, std::string("missing `") + key + "`");
        }
    }
    std::optional<std::size_t> points;
    if (j.contains("points")) {
        points = as_count(j["points"], where + ".points");
        if (*points == 0) {
            bad(where + ".points", "need at least one point");
        }
    }
    auto metric = parse_metric(j["metric"], points, where + ".metric");
    const std::size_t p = metric.size();

    const auto& maps = j["maps"];
    json tables = maps.is_object() ? maps.value("tables", json()) : maps;
    if (!tables.is_array() || tables.empty()) {
        bad(where + ".maps", "expected a nonempty `tables` list");
    }
    std::size_t prefix = maps.is_object() && maps.contains("prefix") ? as_count(maps["prefix"], where + ".maps.prefix")
                                                                       : 0;
    if (prefix >= tables.size()) {
        bad(where + ".maps", "prefix leaves no periodic maps");
    }
    std::size_t period = tables.size() - prefix;
    if (maps.is_object() && maps.contains("period")) {
        period = as_count(maps["period"], where + ".maps.period");
        if (period == 0 || prefix + period != tables.size()) {
            bad(where + ".maps", "prefix + period must equal the number of tables (" +
                                     std::to_string(tables.size()) + ")");
        }
    }
    std::vector<MapTable> pre;
    std::vector<MapTable> per;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        auto f = parse_map(tables[i], p, where + ".maps.tables[" + std::to_string(i) + "]");
        (i < prefix ? pre : per).push_back(std::move(f));
    }
    auto phi = j.contains("potential") ? parse_potential(j["potential"], p, where + ".potential")
                                       : std::vector<double>(p, 0.0);
    bool validate = j.value("validate_metric", true);
    if (!validate && p <= 256) {
        spdlog::info("{}: metric validation can only be skipped above 256 points; validating", where);
        validate = true;
    }
    return NdsSystem(std::move(metric), std::move(pre), std::move(per), std::move(phi), validate);
}

PointSet parse_subset(const json& j, std::size_t p, const std::string& where)
{
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "all")) {
        return PointSet::full(p);
    }
    std::vector<std::size_t> idx;
    if (j.is_array()) {
        for (const auto& v : j) {
            idx.push_back(as_count(v, where));
        }
    } else if (j.is_string()) {
        idx = parse_index_list(j.get<std::string>(), where);
    } else {
        bad(where, "expected \"all\" or a list of indices");
    }
    PointSet z(p);
    for (auto x : idx) {
        if (x >= p) {
            bad(where, "index " + std::to_string(x) + " out of range");
        }
        z.insert(x);
    }
    if (z.empty()) {
        bad(where, "subset must be nonempty");
    }
    return z;
}

DiscreteMeasure parse_measure(const json& j, const PointSet& z, std::size_t p, std::uint64_t seed,
                              const std::string& where)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        bad(where, "measure needs a `type`");
    }
    auto type = j["type"].get<std::string>();
    if (type == "dirac") {
        if (!j.contains("point")) {
            bad(where, "dirac measure needs `point`");
        }
        auto x = as_count(j["point"], where + ".point");
        if (x >= p) {
            bad(where, "dirac point out of range");
        }
        return DiscreteMeasure::dirac(p, x);
    }
    PointSet on = j.contains("support") ? parse_subset(j["support"], p, where + ".support") : z;
    if (type == "uniform") {
        return DiscreteMeasure::uniform(on);
    }
    if (type == "geometric") {
        return DiscreteMeasure::geometric(on);
    }
    if (type == "random") {
        return DiscreteMeasure::random(on, j.contains("seed") ? as_count(j["seed"], where + ".seed") : seed);
    }
    if (type == "explicit") {
        if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].size() != p) {
            bad(where, "explicit measure needs `weights` with one entry per point");
        }
        std::vector<double> w;
        for (const auto& v : j["weights"]) {
            w.push_back(as_number(v, where + ".weights"));
        }
        return DiscreteMeasure(std::move(w), j.value("name", std::string("explicit")));
    }
    bad(where, "unknown measure type '" + type + "'");
}

Theta parse_theta(const json& j, const std::string& where)
{
    if (j.is_string()) {
        return Theta::parse(j.get<std::string>());
    }
    return Theta::from_double(as_number(j, where));
}

std::pair<std::size_t, std::size_t> parse_window(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2) {
        bad(where, "expected [N_lo, N_hi]");
    }
    auto lo = as_count(j[0], where);
    auto hi = as_count(j[1], where);
    if (lo == 0 || lo > hi) {
        bad(where, "need 1 <= N_lo <= N_hi");
    }
    return {lo, hi};
}

SuiteInstance parse_instance(const json& j, const std::filesystem::path& base_dir, std::size_t index)
{
    const std::string where = "suite.instances[" + std::to_string(index) + "]";
    if (!j.is_object() || !j.contains("system")) {
        bad(where, "instance needs a `system`");
    }
    auto sys = system_ref(j["system"], base_dir, where + ".system");
    SuiteInstance inst{j.value("name", "instance" + std::to_string(index)), sys,
                       parse_subset(j.value("subset", json()), sys.size(), where + ".subset"), 0.0, std::nullopt,
                       std::nullopt};
    if (j.contains("epsilon")) {
        inst.eps = as_number(j["epsilon"], where + ".epsilon");
        if (!(inst.eps > 0.0)) {
            bad(where + ".epsilon", "must be positive");
        }
    }
    if (j.contains("factor")) {
        const auto& f = j["factor"];
        if (!f.is_object() || !f.contains("target") || !f.contains("pi")) {
            bad(where + ".factor", "needs `target` and `pi`");
        }
        auto target = system_ref(f["target"], base_dir, where + ".factor.target");
        auto pi = parse_map(f["pi"], sys.size(), where + ".factor.pi");
        for (auto y : pi) {
            if (y >= target.size()) {
                bad(where + ".factor.pi", "image outside the target");
            }
        }
        FactorMap fm(sys, target, pi);
        inst.system = fm.lifted_source();
        inst.factor = std::move(fm);
    }
    if (j.contains("commuting")) {
        const auto& c = j["commuting"];
        if (!c.is_array() || c.size() != 2) {
            bad(where + ".commuting", "expected two map tables");
        }
        inst.commuting = std::make_pair(parse_map(c[0], sys.size(), where + ".commuting[0]"),
                                        parse_map(c[1], sys.size(), where + ".commuting[1]"));
    }
    return inst;
}

void parse_suite(const json& j, const std::filesystem::path& base_dir, RunConfig& cfg)
{
    auto& suite = cfg.suite;
    suite.params.profile = cfg.profile_options();
    suite.params.profile.jobs = 1;
    suite.params.eps = cfg.eps_ladder.front();
    suite.seed = cfg.seed;
    suite.jobs = cfg.jobs;
    if (j.is_null()) {
        suite.battery = default_battery();
        return;
    }
    if (!j.is_object()) {
        bad("suite", "expected an object");
    }
    if (j.contains("theta")) {
        suite.params.theta = parse_theta(j["theta"], "suite.theta");
    }
    if (j.contains("window")) {
        std::tie(suite.params.N_lo, suite.params.N_hi) = parse_window(j["window"], "suite.window");
    }
    if (j.contains("epsilon")) {
        suite.params.eps = as_number(j["epsilon"], "suite.epsilon");
    }
    if (j.contains("checks")) {
        for (const auto& c : j["checks"]) {
            if (!c.is_string()) {
                bad("suite.checks", "expected check names");
            }
            suite.checks.push_back(c.get<std::string>());
        }
    }
    const bool has_instances = j.contains("instances");
    if (j.value("builtin", !has_instances)) {
        suite.battery = default_battery();
    }
    if (has_instances) {
        if (!j["instances"].is_array()) {
            bad("suite.instances", "expected a list");
        }
        for (std::size_t i = 0; i < j["instances"].size(); ++i) {
            suite.battery.push_back(parse_instance(j["instances"][i], base_dir, i));
        }
    }
    if (j.contains("random_systems")) {
        const auto count = as_count(j["random_systems"], "suite.random_systems");
        for (std::size_t k = 0; k < count; ++k) {
            auto seed = cfg.seed * 1'000'003 + k;
            auto sys = random_system(seed);
            std::mt19937_64 rng(seed);
            auto z = random_subset(sys.size(), rng);
            suite.battery.push_back({"random" + std::to_string(k), sys, z, 0.0, std::nullopt, std::nullopt});
        }
    }
    if (suite.battery.empty()) {
        bad("suite", "battery is empty");
    }
}

}  // namespace

NdsSystem parse_system(std::string_view text, const std::filesystem::path& base_dir, std::string_view origin)
{
    auto doc = parse_json(text, origin);
    check_version(doc, std::string(origin), true);
    return system_from_json(doc, base_dir, std::string(origin));
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir, const Overrides& overrides,
                       std::string_view origin)
{
    auto doc = parse_json(text, origin);
    if (!doc.is_object()) {
        bad(std::string(origin), "config must be a JSON object");
    }
    check_version(doc, std::string(origin), true);
    static const std::vector<std::string> known{
        "schema_version", "system", "subset", "potential", "theta_grid", "epsilon", "N", "cap", "solver",
        "tol", "weights", "out", "seed", "jobs", "measures", "suite", "description"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            bad(std::string(origin), "unknown key `" + key + "`");
        }
    }

    RunConfig cfg;
    if (doc.contains("seed")) {
        cfg.seed = as_count(doc["seed"], "seed");
    }
    if (doc.contains("jobs")) {
        cfg.jobs = std::max<std::size_t>(1, as_count(doc["jobs"], "jobs"));
    }
    if (doc.contains("tol")) {
        cfg.tol = as_number(doc["tol"], "tol");
    }
    if (doc.contains("solver")) {
        if (!doc["solver"].is_string()) {
            bad("solver", "expected exact, greedy or automatic");
        }
        cfg.solver = parse_solver(doc["solver"].get<std::string>());
    }
    if (doc.contains("weights")) {
        auto w = doc["weights"].get<std::string>();
        if (w == "sup") {
            cfg.mode = WeightMode::sup_value;
        } else if (w == "center") {
            cfg.mode = WeightMode::center_value;
        } else {
            bad("weights", "expected \"sup\" or \"center\"");
        }
    }
    if (doc.contains("out")) {
        cfg.out = base_dir / doc["out"].get<std::string>();
    }
    if (overrides.out) {
        cfg.out = *overrides.out;
    }
    if (overrides.solver) {
        cfg.solver = *overrides.solver;
    }
    if (overrides.tol) {
        cfg.tol = *overrides.tol;
    }
    if (overrides.jobs) {
        cfg.jobs = std::max<std::size_t>(1, *overrides.jobs);
    }
    if (overrides.seed) {
        cfg.seed = *overrides.seed;
    }
    if (!(cfg.tol >= 0.0)) {
        bad("tol", "must be non-negative");
    }

    if (doc.contains("theta_grid")) {
        const auto& g = doc["theta_grid"];
        if (!g.is_array() || g.empty()) {
            bad("theta_grid", "expected a nonempty list");
        }
        cfg.theta_grid.clear();
        for (const auto& t : g) {
            cfg.theta_grid.push_back(parse_theta(t, "theta_grid"));
        }
        std::sort(cfg.theta_grid.begin(), cfg.theta_grid.end());
        if (std::adjacent_find(cfg.theta_grid.begin(), cfg.theta_grid.end()) != cfg.theta_grid.end()) {
            bad("theta_grid", "duplicate theta value");
        }
    }
    if (doc.contains("epsilon")) {
        const auto& e = doc["epsilon"];
        cfg.eps_ladder.clear();
        if (e.is_number()) {
            cfg.eps_ladder.push_back(as_number(e, "epsilon"));
        } else if (e.is_array() && !e.empty()) {
            for (const auto& v : e) {
                cfg.eps_ladder.push_back(as_number(v, "epsilon"));
            }
        } else {
            bad("epsilon", "expected a number or a nonempty list");
        }
        for (std::size_t i = 0; i < cfg.eps_ladder.size(); ++i) {
            if (!(cfg.eps_ladder[i] > 0.0)) {
                bad("epsilon", "values must be positive");
            }
            if (i > 0 && !(cfg.eps_ladder[i] < cfg.eps_ladder[i - 1])) {
                bad("epsilon", "ladder must be strictly decreasing");
            }
        }
    }
    if (doc.contains("N")) {
        std::tie(cfg.N_lo, cfg.N_hi) = parse_window(doc["N"], "N");
    }
    if (doc.contains("cap")) {
        cfg.cap = as_count(doc["cap"], "cap");
        if (cfg.cap != 0 && cfg.cap < cfg.N_hi) {
            bad("cap", "theta = 0 cap must be at least N_hi");
        }
    }

    if (doc.contains("system")) {
        cfg.system = system_ref(doc["system"], base_dir, "system");
        if (doc.contains("potential")) {
            cfg.system = cfg.system->with_potential(parse_potential(doc["potential"], cfg.system->size(), "potential"));
        }
        cfg.z = parse_subset(doc.value("subset", json()), cfg.system->size(), "subset");
        if (doc.contains("measures")) {
            const auto& ms = doc["measures"];
            if (!ms.is_array() || ms.empty()) {
                bad("measures", "expected a nonempty list");
            }
            for (std::size_t i = 0; i < ms.size(); ++i) {
                cfg.measures.push_back(
                    parse_measure(ms[i], cfg.z, cfg.system->size(), cfg.seed, "measures[" + std::to_string(i) + "]"));
            }
        } else {
            cfg.measures.push_back(DiscreteMeasure::uniform(cfg.z));
        }
    } else {
        for (const char* key : {"potential", "subset", "measures"}) {
            if (doc.contains(key)) {
                bad(key, "given without a `system`");
            }
        }
    }
    parse_suite(doc.value("suite", json()), base_dir, cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides)
{
    return parse_config(read_file(path), path.parent_path().empty() ? "." : path.parent_path(), overrides,
                        path.string());
}

std::string config_schema()
{
    static const char* text = R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "thetapress config",
  "type": "object",
  "required": ["schema_version"],
  "additionalProperties": false,
  "properties": {
    "schema_version": {"const": 1},
    "description": {"type": "string"},
    "system": {"oneOf": [{"type": "string", "description": "path to a system file, relative to the config"},
                         {"$ref": "#/$defs/system"}]},
    "subset": {"$ref": "#/$defs/subset"},
    "potential": {"$ref": "#/$defs/potential", "description": "replaces the system potential"},
    "theta_grid": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/theta"}},
    "epsilon": {"oneOf": [{"type": "number", "exclusiveMinimum": 0},
                          {"type": "array", "minItems": 1, "items": {"type": "number", "exclusiveMinimum": 0},
                           "description": "strictly decreasing"}]},
    "N": {"$ref": "#/$defs/window"},
    "cap": {"type": "integer", "minimum": 0, "description": "longest candidate at theta = 0; 0 means 4 N_hi"},
    "solver": {"enum": ["exact", "greedy", "automatic"]},
    "tol": {"type": "number", "minimum": 0},
    "weights": {"enum": ["sup", "center"]},
    "out": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "jobs": {"type": "integer", "minimum": 1},
    "measures": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/measure"}},
    "suite": {"$ref": "#/$defs/suite"}
  },
  "$defs": {
    "theta": {"oneOf": [{"type": "number", "minimum": 0, "maximum": 1},
                        {"type": "string", "pattern": "^[0-9]+(/[0-9]+|\\.[0-9]*)?$"}]},
    "window": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
    "subset": {"oneOf": [{"const": "all"}, {"type": "array", "items": {"type": "integer", "minimum": 0}}]},
    "potential": {"oneOf": [{"type": "array", "items": {"type": "number"}},
                            {"const": "zero"},
                            {"type": "string", "pattern": "^constant:"},
                            {"type": "string", "pattern": "^indicator:"}]},
    "map": {"oneOf": [{"type": "array", "items": {"type": "integer", "minimum": 0}},
                      {"enum": ["identity", "doubling"]},
                      {"type": "string", "pattern": "^(rotation|constant):[0-9]+$"}]},
    "system": {
      "type": "object",
      "required": ["metric", "maps"],
      "properties": {
        "schema_version": {"const": 1},
        "points": {"type": "integer", "minimum": 1},
        "metric": {"oneOf": [
          {"type": "array", "items": {"type": "array", "items": {"type": "number", "minimum": 0}}},
          {"enum": ["circle", "line"]},
          {"type": "object", "required": ["generator"], "properties": {
            "generator": {"enum": ["circle", "line", "hamming", "ultrametric_tree"]},
            "bits": {"type": "integer", "minimum": 0},
            "branching": {"type": "integer", "minimum": 1},
            "depth": {"type": "integer", "minimum": 0}}}]},
        "maps": {"type": "object", "required": ["tables"], "properties": {
          "tables": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/map"}},
          "prefix": {"type": "integer", "minimum": 0},
          "period": {"type": "integer", "minimum": 1}}},
        "potential": {"$ref": "#/$defs/potential"},
        "validate_metric": {"type": "boolean", "description": "may be false only above 256 points"}
      }
    },
    "measure": {
      "type": "object",
      "required": ["type"],
      "properties": {
        "type": {"enum": ["dirac", "uniform", "geometric", "random", "explicit"]},
        "point": {"type": "integer", "minimum": 0},
        "support": {"$ref": "#/$defs/subset"},
        "seed": {"type": "integer", "minimum": 0},
        "weights": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "name": {"type": "string"}
      }
    },
    "suite": {
      "type": "object",
      "properties": {
        "builtin": {"type": "boolean", "description": "include the five built-in systems (default: only without instances)"},
        "random_systems": {"type": "integer", "minimum": 0},
        "theta": {"$ref": "#/$defs/theta"},
        "window": {"$ref": "#/$defs/window"},
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "checks": {"type": "array", "items": {"enum": ["closure", "power_rule", "time_shift", "commuting",
          "relabeling", "conjugacy", "factor_supentropy", "cover_invariants", "variational"]}},
        "instances": {"type": "array", "items": {
          "type": "object",
          "required": ["system"],
          "properties": {
            "name": {"type": "string"},
            "system": {"oneOf": [{"type": "string"}, {"$ref": "#/$defs/system"}]},
            "subset": {"$ref": "#/$defs/subset"},
            "epsilon": {"type": "number", "exclusiveMinimum": 0},
            "factor": {"type": "object", "required": ["target", "pi"], "properties": {
              "target": {"oneOf": [{"type": "string"}, {"$ref": "#/$defs/system"}]},
              "pi": {"type": "array", "items": {"type": "integer", "minimum": 0}}}},
            "commuting": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/map"}}
          }
        }}
      }
    }
  }
}
)schema";
    return text;
}

}  // namespace thetapress
