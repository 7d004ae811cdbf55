#include "cable/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cable {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigError(path + "." + it.key() + ": unknown field");
    }
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
    const json& v = parent.at(key);
    if (!v.is_object()) throw ConfigError(path + "." + key + ": expected an object");
    return v;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path + ": must be finite");
    return d;
}

double required(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
    return number(obj.at(key), path + "." + key);
}

double positive(const json& obj, const std::string& key, const std::string& path) {
    const double v = required(obj, key, path);
    if (!(v > 0.0)) throw ConfigError(path + "." + key + ": must be positive");
    return v;
}

std::optional<double> optional_positive(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return positive(obj, key, path);
}

int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return v.get<int>();
}

// Non-negative stiffness or the string "inf".
double stiffness(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
    const json& v = obj.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kRigid;
        throw ConfigError(path + "." + key + ": expected a number or \"inf\"");
    }
    const double d = number(v, path + "." + key);
    if (d < 0.0) throw ConfigError(path + "." + key + ": must be non-negative");
    return d;
}

json stiffness_json(double v) { return is_rigid(v) ? json("inf") : json(v); }

std::vector<double> profile(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = number(v[i], path + "[" + std::to_string(i) + "]");
        if (!(d > 0.0)) throw ConfigError(path + "[" + std::to_string(i) + "]: must be positive");
        out.push_back(d);
    }
    return out;
}

ParameterVector parameters(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    reject_unknown(obj, path, {kParamNames.begin(), kParamNames.end()});
    std::array<double, kParamCount> a{};
    for (std::size_t j = 0; j < kParamCount; ++j) a[j] = positive(obj, kParamNames[j], path);
    return ParameterVector::from_array(a);
}

json parameters_json(const ParameterVector& p) {
    json o = json::object();
    const auto a = p.to_array();
    for (std::size_t j = 0; j < kParamCount; ++j) o[kParamNames[j]] = a[j];
    return o;
}

AxisSpec axis(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    reject_unknown(obj, path, {"lo_exp", "hi_exp", "points", "include_zero", "include_rigid"});
    AxisSpec a;
    if (obj.contains("lo_exp")) a.lo_exp = number(obj.at("lo_exp"), path + ".lo_exp");
    if (obj.contains("hi_exp")) a.hi_exp = number(obj.at("hi_exp"), path + ".hi_exp");
    if (obj.contains("points")) a.points = integer(obj.at("points"), path + ".points");
    if (obj.contains("include_zero")) a.include_zero = obj.at("include_zero").get<bool>();
    if (obj.contains("include_rigid")) a.include_rigid = obj.at("include_rigid").get<bool>();
    if (a.points < 2 || !(a.hi_exp > a.lo_exp)) throw ConfigError(path + ": need points >= 2 and hi_exp > lo_exp");
    return a;
}

json axis_json(const AxisSpec& a) {
    return {{"lo_exp", a.lo_exp},
            {"hi_exp", a.hi_exp},
            {"points", a.points},
            {"include_zero", a.include_zero},
            {"include_rigid", a.include_rigid}};
}

CableBlock parse_cable(const json& c) {
    const std::string p = "cable";
    reject_unknown(c, p, {"m", "g", "L", "theta_degrees", "E", "A", "I", "EI", "EA", "profiles"});
    CableBlock b;
    b.m = positive(c, "m", p);
    if (c.contains("g")) b.g = positive(c, "g", p);
    b.L = positive(c, "L", p);
    b.theta_degrees = required(c, "theta_degrees", p);
    if (b.theta_degrees < 0.0 || b.theta_degrees > 90.0) throw ConfigError("cable.theta_degrees: must lie in [0, 90]");
    b.E = optional_positive(c, "E", p);
    b.A = optional_positive(c, "A", p);
    b.I = optional_positive(c, "I", p);
    b.EI = optional_positive(c, "EI", p);
    b.EA = optional_positive(c, "EA", p);
    const bool section = b.E || b.A || b.I;
    const bool merged = b.EI || b.EA;
    if (section && merged) throw ConfigError("cable: give either E/A/I or EI/EA, not both");
    if (section && !(b.E && b.A && b.I)) throw ConfigError("cable: E, A and I must be given together");
    if (merged && !(b.EI && b.EA)) throw ConfigError("cable: EI and EA must be given together");
    if (c.contains("profiles")) {
        const json& pr = object_at(c, "profiles", p);
        reject_unknown(pr, "cable.profiles", {"EI", "EA", "m"});
        if (pr.contains("EI")) b.EI_profile = profile(pr.at("EI"), "cable.profiles.EI");
        if (pr.contains("EA")) b.EA_profile = profile(pr.at("EA"), "cable.profiles.EA");
        if (pr.contains("m")) b.m_profile = profile(pr.at("m"), "cable.profiles.m");
    }
    return b;
}

pso::PsoConfig parse_pso(const json& o) {
    const std::string p = "pso";
    reject_unknown(o, p, {"population", "t_max", "delta", "lambda0", "lambda1", "lambda2", "v_max_fraction",
                          "v_init_fraction", "seed", "parallel"});
    pso::PsoConfig c;
    if (o.contains("population")) c.population = integer(o.at("population"), "pso.population");
    if (o.contains("t_max")) c.t_max = integer(o.at("t_max"), "pso.t_max");
    if (o.contains("delta") && !o.at("delta").is_null()) c.delta = number(o.at("delta"), "pso.delta");
    if (o.contains("lambda0")) c.lambda0 = number(o.at("lambda0"), "pso.lambda0");
    if (o.contains("lambda1")) c.lambda1 = number(o.at("lambda1"), "pso.lambda1");
    if (o.contains("lambda2")) c.lambda2 = number(o.at("lambda2"), "pso.lambda2");
    if (o.contains("v_max_fraction")) c.v_max_fraction = number(o.at("v_max_fraction"), "pso.v_max_fraction");
    if (o.contains("v_init_fraction")) c.v_init_fraction = number(o.at("v_init_fraction"), "pso.v_init_fraction");
    if (o.contains("seed")) {
        const auto& v = o.at("seed");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw ConfigError("pso.seed: expected a non-negative integer");
        c.seed = o.at("seed").get<std::uint64_t>();
    }
    if (o.contains("parallel")) {
        c.execution = o.at("parallel").get<bool>() ? pso::Execution::parallel : pso::Execution::serial;
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

SearchBlock parse_search(const json& o) {
    const std::string p = "search";
    reject_unknown(o, p, {"mode", "reference", "H_f", "EI_cal", "EA_cal", "intervals"});
    SearchBlock s;
    if (o.contains("mode") && o.contains("intervals")) {
        throw ConfigError("search: give either a derivation mode or explicit intervals, not both");
    }
    if (o.contains("mode")) {
        const std::string mode = o.at("mode").get<std::string>();
        if (mode == "numerical") s.mode = RangeMode::numerical;
        else if (mode == "engineering") s.mode = RangeMode::engineering;
        else throw ConfigError("search.mode: expected \"numerical\" or \"engineering\"");
        if (o.contains("reference")) s.reference = parameters(o.at("reference"), "search.reference");
        s.H_f = optional_positive(o, "H_f", p);
        s.EI_cal = optional_positive(o, "EI_cal", p);
        s.EA_cal = optional_positive(o, "EA_cal", p);
    } else if (o.contains("intervals")) {
        const json& iv = object_at(o, "intervals", p);
        reject_unknown(iv, "search.intervals", {kParamNames.begin(), kParamNames.end()});
        std::array<std::array<double, 2>, kParamCount> arr{};
        for (std::size_t j = 0; j < kParamCount; ++j) {
            const std::string path = std::string("search.intervals.") + kParamNames[j];
            if (!iv.contains(kParamNames[j])) throw ConfigError(path + ": missing required field");
            const json& pair = iv.at(kParamNames[j]);
            if (!pair.is_array() || pair.size() != 2) throw ConfigError(path + ": expected [lower, upper]");
            arr[j] = {number(pair[0], path + "[0]"), number(pair[1], path + "[1]")};
            if (!(arr[j][0] < arr[j][1])) throw ConfigError(path + ": lower must be below upper");
        }
        s.intervals = arr;
    } else {
        throw ConfigError("search: need \"mode\" or \"intervals\"");
    }
    return s;
}

}  // namespace

double CableBlock::flexural_stiffness() const {
    if (EI) return *EI;
    if (E && I) return *E * *I;
    throw ConfigError("cable: flexural stiffness not given (E and I, or EI)");
}

double CableBlock::axial_stiffness() const {
    if (EA) return *EA;
    if (E && A) return *E * *A;
    throw ConfigError("cable: axial stiffness not given (E and A, or EA)");
}

KnownCable RunConfig::known_cable() const {
    return {cable.m, cable.g, cable.L, cable.theta_degrees * M_PI / 180.0, n};
}

CableProperties RunConfig::properties() const {
    const auto kc = known_cable();
    const bool need_EI = !cable.EI_profile, need_EA = !cable.EA_profile;
    CableProperties p = CableProperties::uniform(kc.m, kc.g, kc.L, kc.theta, need_EI ? cable.flexural_stiffness() : 1.0,
                                                 need_EA ? cable.axial_stiffness() : 1.0, n);
    if (cable.EI_profile) p.EI_profile = *cable.EI_profile;
    if (cable.EA_profile) p.EA_profile = *cable.EA_profile;
    if (cable.m_profile) p.m_profile = *cable.m_profile;
    return p;
}

double RunConfig::require_H() const {
    if (!H_m) throw ConfigError("tension.H_m: required for this command");
    return *H_m;
}

const MeasuredFrequencies& RunConfig::require_measured() const {
    if (!measured) throw ConfigError("measured: required for this command");
    return *measured;
}

pso::SearchSpace RunConfig::search_space() const {
    if (!search) throw ConfigError("search: required for this command");
    if (search->intervals) {
        pso::SearchSpace s;
        for (const auto& iv : *search->intervals) {
            s.lower.push_back(iv[0]);
            s.upper.push_back(iv[1]);
        }
        return s;
    }
    if (*search->mode == RangeMode::numerical) {
        const auto ref = search->reference ? search->reference : exact;
        if (!ref) throw ConfigError("search.reference: numerical mode needs reference values (or an exact block)");
        return derive_search_space(RangeMode::numerical, ref, std::nullopt);
    }
    EngineeringReference er;
    er.H_f = search->H_f ? *search->H_f : string_theory_tension(cable.m, cable.L, require_measured());
    er.EI_cal = search->EI_cal ? *search->EI_cal : cable.flexural_stiffness();
    er.EA_cal = search->EA_cal ? *search->EA_cal : cable.axial_stiffness();
    return derive_search_space(RangeMode::engineering, std::nullopt, er);
}

IdentifyOptions RunConfig::identify_options() const {
    IdentifyOptions o;
    o.repetitions = run.repetitions;
    o.fixed = fixed;
    o.exact = exact;
    return o;
}

RunConfig parse_config(const json& doc) {
    try {
        if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
        reject_unknown(doc, "config", {"cable", "discretization", "boundary", "tension", "measured", "pso", "search",
                                       "fixed", "exact", "sweep", "run"});
        RunConfig c;
        if (!doc.contains("cable")) throw ConfigError("cable: missing required block");
        c.cable = parse_cable(object_at(doc, "cable", "config"));

        if (doc.contains("discretization")) {
            const json& d = object_at(doc, "discretization", "config");
            reject_unknown(d, "discretization", {"n"});
            if (d.contains("n")) c.n = integer(d.at("n"), "discretization.n");
        }
        if (c.n < 5) throw ConfigError("discretization.n: must be at least 5");
        const std::size_t len = static_cast<std::size_t>(c.n) + 2;
        for (const auto* prof : {&c.cable.EI_profile, &c.cable.EA_profile, &c.cable.m_profile}) {
            if (*prof && (*prof)->size() != len) {
                throw ConfigError("cable.profiles: every profile needs n+2 = " + std::to_string(len) + " entries");
            }
        }

        if (doc.contains("boundary")) {
            const json& b = object_at(doc, "boundary", "config");
            reject_unknown(b, "boundary", {"Kr1", "Kr2", "Ks1", "Ks2"});
            c.boundary = {stiffness(b, "Kr1", "boundary"), stiffness(b, "Kr2", "boundary"),
                          stiffness(b, "Ks1", "boundary"), stiffness(b, "Ks2", "boundary")};
        }
        if (doc.contains("tension")) {
            const json& t = object_at(doc, "tension", "config");
            reject_unknown(t, "tension", {"H_m"});
            c.H_m = positive(t, "H_m", "tension");
        }
        if (doc.contains("measured")) {
            const json& m = doc.at("measured");
            if (!m.is_array() || m.empty()) throw ConfigError("measured: expected a non-empty array");
            MeasuredFrequencies mf;
            for (std::size_t i = 0; i < m.size(); ++i) {
                const std::string path = "measured[" + std::to_string(i) + "]";
                if (!m[i].is_object()) throw ConfigError(path + ": expected {\"order\", \"hz\"}");
                reject_unknown(m[i], path, {"order", "hz"});
                if (!m[i].contains("order")) throw ConfigError(path + ".order: missing required field");
                mf.orders.push_back(integer(m[i].at("order"), path + ".order"));
                mf.values.push_back(positive(m[i], "hz", path));
            }
            try {
                mf.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("measured: ") + e.what());
            }
            c.measured = mf;
        }
        if (doc.contains("pso")) c.pso = parse_pso(object_at(doc, "pso", "config"));
        if (doc.contains("search")) c.search = parse_search(object_at(doc, "search", "config"));
        if (doc.contains("fixed")) {
            const json& f = object_at(doc, "fixed", "config");
            reject_unknown(f, "fixed", {kParamNames.begin(), kParamNames.end()});
            for (std::size_t j = 0; j < kParamCount; ++j) {
                if (f.contains(kParamNames[j])) c.fixed[j] = positive(f, kParamNames[j], "fixed");
            }
        }
        if (doc.contains("exact")) c.exact = parameters(doc.at("exact"), "exact");
        if (doc.contains("sweep")) {
            const json& s = object_at(doc, "sweep", "config");
            reject_unknown(s, "sweep", {"scenario", "kr", "ks", "orders"});
            SweepBlock sb;
            if (s.contains("scenario")) {
                const std::string sc = s.at("scenario").get<std::string>();
                if (sc == "tied") sb.scenario = Scenario::tied;
                else if (sc == "opposed") sb.scenario = Scenario::opposed;
                else throw ConfigError("sweep.scenario: expected \"tied\" or \"opposed\"");
            }
            if (s.contains("kr")) sb.kr = axis(s.at("kr"), "sweep.kr");
            if (s.contains("ks")) sb.ks = axis(s.at("ks"), "sweep.ks");
            if (s.contains("orders")) {
                sb.orders.clear();
                for (std::size_t i = 0; i < s.at("orders").size(); ++i) {
                    const int o = integer(s.at("orders")[i], "sweep.orders[" + std::to_string(i) + "]");
                    if (o < 1) throw ConfigError("sweep.orders: orders start at 1");
                    sb.orders.push_back(o);
                }
                if (sb.orders.empty()) throw ConfigError("sweep.orders: at least one order");
            }
            c.sweep = sb;
        }
        if (doc.contains("run")) {
            const json& r = object_at(doc, "run", "config");
            reject_unknown(r, "run", {"repetitions", "modes", "out_dir"});
            if (r.contains("repetitions")) c.run.repetitions = integer(r.at("repetitions"), "run.repetitions");
            if (r.contains("modes")) c.run.modes = integer(r.at("modes"), "run.modes");
            if (r.contains("out_dir")) c.run.out_dir = r.at("out_dir").get<std::string>();
            if (c.run.repetitions < 1) throw ConfigError("run.repetitions: must be at least 1");
            if (c.run.modes < 1 || c.run.modes > c.n) throw ConfigError("run.modes: must lie in [1, n]");
        }
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const RunConfig& c) {
    json doc = json::object();
    json cable = {{"m", c.cable.m}, {"g", c.cable.g}, {"L", c.cable.L}, {"theta_degrees", c.cable.theta_degrees}};
    if (c.cable.E) cable["E"] = *c.cable.E;
    if (c.cable.A) cable["A"] = *c.cable.A;
    if (c.cable.I) cable["I"] = *c.cable.I;
    if (c.cable.EI) cable["EI"] = *c.cable.EI;
    if (c.cable.EA) cable["EA"] = *c.cable.EA;
    if (c.cable.EI_profile || c.cable.EA_profile || c.cable.m_profile) {
        json pr = json::object();
        if (c.cable.EI_profile) pr["EI"] = *c.cable.EI_profile;
        if (c.cable.EA_profile) pr["EA"] = *c.cable.EA_profile;
        if (c.cable.m_profile) pr["m"] = *c.cable.m_profile;
        cable["profiles"] = pr;
    }
    doc["cable"] = cable;
    doc["discretization"] = {{"n", c.n}};
    doc["boundary"] = {{"Kr1", stiffness_json(c.boundary.Kr1)},
                       {"Kr2", stiffness_json(c.boundary.Kr2)},
                       {"Ks1", stiffness_json(c.boundary.Ks1)},
                       {"Ks2", stiffness_json(c.boundary.Ks2)}};
    if (c.H_m) doc["tension"] = {{"H_m", *c.H_m}};
    if (c.measured) {
        json m = json::array();
        for (std::size_t i = 0; i < c.measured->size(); ++i) {
            m.push_back({{"order", c.measured->orders[i]}, {"hz", c.measured->values[i]}});
        }
        doc["measured"] = m;
    }
    json p = {{"population", c.pso.population},
              {"t_max", c.pso.t_max},
              {"lambda0", c.pso.lambda0},
              {"lambda1", c.pso.lambda1},
              {"lambda2", c.pso.lambda2},
              {"v_max_fraction", c.pso.v_max_fraction},
              {"v_init_fraction", c.pso.v_init_fraction},
              {"seed", c.pso.seed},
              {"parallel", c.pso.execution == pso::Execution::parallel}};
    p["delta"] = c.pso.delta ? json(*c.pso.delta) : json(nullptr);
    doc["pso"] = p;
    if (c.search) {
        json s = json::object();
        if (c.search->intervals) {
            json iv = json::object();
            for (std::size_t j = 0; j < kParamCount; ++j) {
                iv[kParamNames[j]] = {(*c.search->intervals)[j][0], (*c.search->intervals)[j][1]};
            }
            s["intervals"] = iv;
        } else {
            s["mode"] = *c.search->mode == RangeMode::numerical ? "numerical" : "engineering";
            if (c.search->reference) s["reference"] = parameters_json(*c.search->reference);
            if (c.search->H_f) s["H_f"] = *c.search->H_f;
            if (c.search->EI_cal) s["EI_cal"] = *c.search->EI_cal;
            if (c.search->EA_cal) s["EA_cal"] = *c.search->EA_cal;
        }
        doc["search"] = s;
    }
    json fixed = json::object();
    for (std::size_t j = 0; j < kParamCount; ++j) {
        if (c.fixed[j]) fixed[kParamNames[j]] = *c.fixed[j];
    }
    if (!fixed.empty()) doc["fixed"] = fixed;
    if (c.exact) doc["exact"] = parameters_json(*c.exact);
    if (c.sweep) {
        doc["sweep"] = {{"scenario", c.sweep->scenario == Scenario::tied ? "tied" : "opposed"},
                        {"kr", axis_json(c.sweep->kr)},
                        {"ks", axis_json(c.sweep->ks)},
                        {"orders", c.sweep->orders}};
    }
    doc["run"] = {{"repetitions", c.run.repetitions}, {"modes", c.run.modes}, {"out_dir", c.run.out_dir}};
    return doc;
}

}  // namespace cable
