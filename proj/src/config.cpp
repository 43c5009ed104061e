#include "config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gpb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config error at `" + path + "`: " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

double get_num(const json& obj, const std::string& path, const char* key, double fallback,
               bool positive = true) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    const double d = v.get<double>();
    if (positive && !(d > 0.0)) fail(path + "." + key, "must be positive");
    return d;
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    const int i = v.get<int>();
    if (i < 1) fail(path + "." + key, "must be >= 1");
    return i;
}

GroundPlaneSpec parse_geometry(const json& g) {
    const std::string path = "geometry";
    if (!g.is_object()) fail(path, "expected an object");
    if (!g.contains("type")) fail(path + ".type", "missing");
    const std::string type = g.at("type").get<std::string>();

    if (type == "planar") {
        check_keys(g, path, {"type", "side_mm"});
        PlanarSpec s;
        s.side_mm = get_num(g, path, "side_mm", s.side_mm);
        return s;
    }
    if (type == "ribbed_planar") {
        check_keys(g, path, {"type", "side_mm", "rib_height_mm", "rib_width_mm", "rib_count"});
        RibbedPlanarSpec s;
        s.side_mm = get_num(g, path, "side_mm", s.side_mm);
        s.rib_height_mm = get_num(g, path, "rib_height_mm", s.rib_height_mm);
        s.rib_width_mm = get_num(g, path, "rib_width_mm", s.rib_width_mm);
        s.rib_count = get_int(g, path, "rib_count", s.rib_count);
        return s;
    }
    if (type == "planar_dish") {
        check_keys(g, path, {"type", "side_mm", "parent_radius_mm", "cap_height_mm"});
        PlanarDishSpec s;
        s.side_mm = get_num(g, path, "side_mm", s.side_mm);
        s.parent_radius_mm = get_num(g, path, "parent_radius_mm", s.parent_radius_mm);
        s.cap_height_mm = get_num(g, path, "cap_height_mm", s.cap_height_mm);
        return s;
    }
    if (type == "planar_horn") {
        check_keys(g, path, {"type", "side_mm", "lower_length_mm", "height_mm", "flare"});
        PlanarHornSpec s;
        s.side_mm = get_num(g, path, "side_mm", s.side_mm);
        s.lower_length_mm = get_num(g, path, "lower_length_mm", s.lower_length_mm);
        s.height_mm = get_num(g, path, "height_mm", s.height_mm);
        s.flare = get_num(g, path, "flare", s.flare);
        return s;
    }
    if (type == "planar_cone") {
        check_keys(g, path, {"type", "side_mm", "cone_radius_mm", "cone_height_mm"});
        PlanarConeSpec s;
        s.side_mm = get_num(g, path, "side_mm", s.side_mm);
        s.cone_radius_mm = get_num(g, path, "cone_radius_mm", s.cone_radius_mm);
        s.cone_height_mm = get_num(g, path, "cone_height_mm", s.cone_height_mm);
        return s;
    }
    if (type == "sphere") {
        check_keys(g, path, {"type", "radius_mm"});
        SphereSpec s;
        s.radius_mm = get_num(g, path, "radius_mm", s.radius_mm);
        return s;
    }
    if (type == "slotted_sphere") {
        check_keys(g, path, {"type", "radius_mm", "slot_length_mm", "slot_width_mm", "slot_count"});
        SlottedSphereSpec s;
        s.radius_mm = get_num(g, path, "radius_mm", s.radius_mm);
        s.slot_length_mm = get_num(g, path, "slot_length_mm", s.slot_length_mm);
        s.slot_width_mm = get_num(g, path, "slot_width_mm", s.slot_width_mm);
        s.slot_count = get_int(g, path, "slot_count", s.slot_count);
        return s;
    }
    if (type == "ringed_sphere") {
        check_keys(g, path, {"type", "radius_mm", "ring_widths_mm", "ring_spacing_mm"});
        RingedSphereSpec s;
        s.radius_mm = get_num(g, path, "radius_mm", s.radius_mm);
        s.ring_spacing_mm = get_num(g, path, "ring_spacing_mm", s.ring_spacing_mm);
        if (g.contains("ring_widths_mm")) {
            const json& arr = g.at("ring_widths_mm");
            if (!arr.is_array() || arr.empty())
                fail(path + ".ring_widths_mm", "expected a non-empty array");
            s.ring_widths_mm.clear();
            for (const auto& v : arr) {
                if (!v.is_number() || !(v.get<double>() > 0.0))
                    fail(path + ".ring_widths_mm", "entries must be positive numbers");
                s.ring_widths_mm.push_back(v.get<double>());
            }
        }
        return s;
    }
    if (type == "edge_mounted_sphere") {
        check_keys(g, path, {"type", "radius_mm", "mount_offset_mm"});
        EdgeMountedSphereSpec s;
        s.radius_mm = get_num(g, path, "radius_mm", s.radius_mm);
        s.mount_offset_mm = get_num(g, path, "mount_offset_mm", s.mount_offset_mm);
        return s;
    }
    if (type == "fin_sphere") {
        check_keys(g, path, {"type", "envelope_radius_mm", "fin_count", "fin_thickness_mm"});
        FinSphereSpec s;
        s.envelope_radius_mm = get_num(g, path, "envelope_radius_mm", s.envelope_radius_mm);
        s.fin_count = get_int(g, path, "fin_count", s.fin_count);
        s.fin_thickness_mm = get_num(g, path, "fin_thickness_mm", s.fin_thickness_mm);
        return s;
    }
    if (type == "spiked_sphere") {
        check_keys(g, path,
                   {"type", "radius_mm", "spike_length_mm", "spike_diameter_mm", "spike_pitch_mm"});
        SpikedSphereSpec s;
        s.radius_mm = get_num(g, path, "radius_mm", s.radius_mm);
        s.spike_length_mm = get_num(g, path, "spike_length_mm", s.spike_length_mm);
        s.spike_diameter_mm = get_num(g, path, "spike_diameter_mm", s.spike_diameter_mm);
        s.spike_pitch_mm = get_num(g, path, "spike_pitch_mm", s.spike_pitch_mm);
        return s;
    }
    fail(path + ".type", "unknown geometry type `" + type + "`");
}

json geometry_to_json(const GroundPlaneSpec& spec) {
    json g;
    g["type"] = spec_name(spec);
    struct V {
        json& g;
        void operator()(const PlanarSpec& s) { g["side_mm"] = s.side_mm; }
        void operator()(const RibbedPlanarSpec& s) {
            g["side_mm"] = s.side_mm;
            g["rib_height_mm"] = s.rib_height_mm;
            g["rib_width_mm"] = s.rib_width_mm;
            g["rib_count"] = s.rib_count;
        }
        void operator()(const PlanarDishSpec& s) {
            g["side_mm"] = s.side_mm;
            g["parent_radius_mm"] = s.parent_radius_mm;
            g["cap_height_mm"] = s.cap_height_mm;
        }
        void operator()(const PlanarHornSpec& s) {
            g["side_mm"] = s.side_mm;
            g["lower_length_mm"] = s.lower_length_mm;
            g["height_mm"] = s.height_mm;
            g["flare"] = s.flare;
        }
        void operator()(const PlanarConeSpec& s) {
            g["side_mm"] = s.side_mm;
            g["cone_radius_mm"] = s.cone_radius_mm;
            g["cone_height_mm"] = s.cone_height_mm;
        }
        void operator()(const SphereSpec& s) { g["radius_mm"] = s.radius_mm; }
        void operator()(const SlottedSphereSpec& s) {
            g["radius_mm"] = s.radius_mm;
            g["slot_length_mm"] = s.slot_length_mm;
            g["slot_width_mm"] = s.slot_width_mm;
            g["slot_count"] = s.slot_count;
        }
        void operator()(const RingedSphereSpec& s) {
            g["radius_mm"] = s.radius_mm;
            g["ring_widths_mm"] = s.ring_widths_mm;
            g["ring_spacing_mm"] = s.ring_spacing_mm;
        }
        void operator()(const EdgeMountedSphereSpec& s) {
            g["radius_mm"] = s.radius_mm;
            g["mount_offset_mm"] = s.mount_offset_mm;
        }
        void operator()(const FinSphereSpec& s) {
            g["envelope_radius_mm"] = s.envelope_radius_mm;
            g["fin_count"] = s.fin_count;
            g["fin_thickness_mm"] = s.fin_thickness_mm;
        }
        void operator()(const SpikedSphereSpec& s) {
            g["radius_mm"] = s.radius_mm;
            g["spike_length_mm"] = s.spike_length_mm;
            g["spike_diameter_mm"] = s.spike_diameter_mm;
            g["spike_pitch_mm"] = s.spike_pitch_mm;
        }
    };
    V v{g};
    std::visit(v, spec);
    return g;
}

Scenario parse_scenario_json(const json& j) {
    if (!j.is_object()) fail("", "scenario must be a JSON object");
    check_keys(j, "", {"geometry", "coax", "sweep", "mesh", "output"});
    Scenario s;
    if (!j.contains("geometry")) fail("geometry", "missing");
    s.geometry = parse_geometry(j.at("geometry"));
    if (j.contains("coax")) {
        const json& c = j.at("coax");
        check_keys(c, "coax", {"inner_mm", "dielectric_mm", "outer_mm", "element_mm", "gap_mm"});
        s.coax.inner_mm = get_num(c, "coax", "inner_mm", s.coax.inner_mm);
        s.coax.dielectric_mm = get_num(c, "coax", "dielectric_mm", s.coax.dielectric_mm);
        s.coax.outer_mm = get_num(c, "coax", "outer_mm", s.coax.outer_mm);
        s.coax.element_mm = get_num(c, "coax", "element_mm", s.coax.element_mm);
        s.coax.gap_mm = get_num(c, "coax", "gap_mm", s.coax.gap_mm);
    }
    if (j.contains("sweep")) {
        const json& w = j.at("sweep");
        check_keys(w, "sweep", {"start_hz", "stop_hz", "points"});
        s.sweep.start_hz = get_num(w, "sweep", "start_hz", s.sweep.start_hz);
        s.sweep.stop_hz = get_num(w, "sweep", "stop_hz", s.sweep.stop_hz);
        s.sweep.points = get_int(w, "sweep", "points", s.sweep.points);
    }
    if (j.contains("mesh")) {
        const json& m = j.at("mesh");
        check_keys(m, "mesh", {"edge_mm"});
        s.edge_mm = get_num(m, "mesh", "edge_mm", s.edge_mm);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "output", {"dir"});
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) fail("output.dir", "expected a string");
            s.out_dir = o.at("dir").get<std::string>();
        }
    }
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["geometry"] = geometry_to_json(s.geometry);
    j["coax"] = {{"inner_mm", s.coax.inner_mm},
                 {"dielectric_mm", s.coax.dielectric_mm},
                 {"outer_mm", s.coax.outer_mm},
                 {"element_mm", s.coax.element_mm},
                 {"gap_mm", s.coax.gap_mm}};
    j["sweep"] = {{"start_hz", s.sweep.start_hz},
                  {"stop_hz", s.sweep.stop_hz},
                  {"points", s.sweep.points}};
    j["mesh"] = {{"edge_mm", s.edge_mm}};
    j["output"] = {{"dir", s.out_dir}};
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("config is not valid JSON");
    return j;
}

}  // namespace

void FrequencyPlan::validate() const {
    if (!(start_hz > 0.0) || !(stop_hz > start_hz))
        throw std::invalid_argument("sweep.start_hz must be positive and below sweep.stop_hz");
    if (points < 3) throw std::invalid_argument("sweep.points must be >= 3");
}

void Scenario::validate() const {
    coax.validate();
    sweep.validate();
    if (!(edge_mm > 0.0)) throw std::invalid_argument("mesh.edge_mm must be positive");
    if (out_dir.empty()) throw std::invalid_argument("output.dir must be non-empty");
}

void SweepPlan::validate() const {
    base.validate();
    if (values.size() < 2) throw std::invalid_argument("sweep plan needs >= 2 values");
    Scenario probe = base;
    for (double v : values) apply_parameter(probe, parameter, v);  // throws if invalid
    for (const std::string& c : rule.components)
        if (c != "bandwidth" && c != "gain" && c != "min_im_zin")
            throw std::invalid_argument("unknown selection rule component `" + c + "`");
}

Scenario parse_scenario(const std::string& text) { return parse_scenario_json(parse_json_text(text)); }
Scenario parse_scenario_file(const std::string& path) { return parse_scenario(read_file(path)); }

SweepPlan parse_sweep(const std::string& text) {
    const json j = parse_json_text(text);
    if (!j.is_object()) fail("", "sweep plan must be a JSON object");
    check_keys(j, "", {"base", "parameter", "values_mm", "rule"});
    SweepPlan p;
    if (!j.contains("base")) fail("base", "missing");
    p.base = parse_scenario_json(j.at("base"));
    if (!j.contains("parameter") || !j.at("parameter").is_string())
        fail("parameter", "missing or not a string");
    p.parameter = j.at("parameter").get<std::string>();
    if (!j.contains("values_mm") || !j.at("values_mm").is_array())
        fail("values_mm", "missing or not an array");
    for (const auto& v : j.at("values_mm")) {
        if (!v.is_number()) fail("values_mm", "entries must be numbers");
        p.values.push_back(v.get<double>());
    }
    if (j.contains("rule")) {
        const json& r = j.at("rule");
        check_keys(r, "rule", {"components"});
        if (r.contains("components")) {
            if (!r.at("components").is_array()) fail("rule.components", "expected an array");
            p.rule.components.clear();
            for (const auto& c : r.at("components"))
                p.rule.components.push_back(c.get<std::string>());
        }
    }
    p.validate();
    return p;
}
SweepPlan parse_sweep_file(const std::string& path) { return parse_sweep(read_file(path)); }

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

std::string serialize_sweep(const SweepPlan& p) {
    json j;
    j["base"] = scenario_to_json(p.base);
    j["parameter"] = p.parameter;
    j["values_mm"] = p.values;
    j["rule"] = {{"components", p.rule.components}};
    return j.dump(2) + "\n";
}

void apply_parameter(Scenario& scenario, const std::string& path, double value) {
    if (path == "mesh.edge_mm") {
        if (!(value > 0.0)) throw std::invalid_argument("mesh.edge_mm must be positive");
        scenario.edge_mm = value;
        return;
    }
    const std::string prefix = "geometry.";
    if (path.rfind(prefix, 0) != 0)
        throw std::invalid_argument("swept parameter must be `mesh.edge_mm` or `geometry.<field>`, got `" +
                                    path + "`");
    const std::string field = path.substr(prefix.size());
    json g = geometry_to_json(scenario.geometry);
    if (!g.contains(field) || field == "type")
        throw std::invalid_argument("swept parameter `" + path + "` does not exist for geometry type `" +
                                    spec_name(scenario.geometry) + "`");
    if (g.at(field).is_number_integer())
        g[field] = static_cast<int>(value);
    else if (g.at(field).is_array())
        throw std::invalid_argument("swept parameter `" + path + "` is a list; sweeping lists is unsupported");
    else
        g[field] = value;
    scenario.geometry = parse_geometry(g);
}

std::string content_hash_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace gpb
