#include "cmo/config.hpp"

#include "cmo/constants.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cmo::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& where, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') fail(where, "expected a number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& where, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') fail(where, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& where, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(where, "expected true or false, got '" + v + "'");
}

sweep::AxisParam parse_axis_param(const std::string& where, const std::string& v) {
    using P = sweep::AxisParam;
    static const std::map<std::string, P> names = {
        {"delta_a_tilde", P::DeltaATilde}, {"delta_1", P::Delta1}, {"delta_2", P::Delta2},
        {"delta_m", P::DeltaM},            {"G", P::G},            {"g_m", P::Gm},
        {"g_1", P::G1},                    {"g_2", P::G2},         {"kappa_m", P::KappaM},
        {"temperature", P::Temperature}};
    auto it = names.find(v);
    if (it == names.end()) fail(where, "unknown sweep parameter '" + v + "'");
    return it->second;
}

sweep::NormRef parse_norm_ref(const std::string& where, const std::string& v) {
    using N = sweep::NormRef;
    if (v == "omega_b") return N::OmegaB;
    if (v == "kappa_a") return N::KappaA;
    if (v == "G") return N::G;
    fail(where, "unknown normalization reference '" + v + "' (use omega_b, kappa_a or G)");
}

// One parsed key with its location, for diagnostics.
struct Entry {
    std::string value;
    std::string where;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

struct RawConfig {
    std::map<std::string, Section> sections;  // "", params, sweep, sweep2, output
    std::string source;

    Entry* find(const std::string& section, const std::string& key) {
        auto s = sections.find(section);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    std::string require(const std::string& section, const std::string& key) {
        Entry* e = find(section, key);
        if (!e)
            fail(source, (section.empty() ? "missing key '" : "missing key '" + section + ".") +
                             key + "'");
        return e->value;
    }

    void check_all_used() const {
        for (const auto& [sec, entries] : sections)
            for (const auto& [key, e] : entries)
                if (!e.used) fail(e.where, "unknown key '" + (sec.empty() ? key : sec + "." + key) + "'");
    }
};

RawConfig tokenize_flat(const std::string& text, const std::string& source) {
    RawConfig raw;
    raw.source = source;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    std::set<std::string> seen_sections;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(where, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "sweep" && section != "sweep2" &&
                section != "output")
                fail(where, "unknown section [" + section + "]");
            if (!seen_sections.insert(section).second) fail(where, "duplicate section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(where, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(where, "expected 'key = value'");
        auto& sec = raw.sections[section];
        if (sec.count(key)) fail(where, "duplicate key '" + key + "'");
        sec[key] = Entry{value, where, false};
    }
    return raw;
}

RawConfig tokenize_json(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source, std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail(source, "top-level JSON value must be an object");

    RawConfig raw;
    raw.source = source;
    auto as_string = [&](const json& v, const std::string& where) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
            return buf;
        }
        fail(where, "expected a scalar value");
    };
    for (const auto& [key, value] : j.items()) {
        const std::string where = source + ":" + key;
        if (value.is_object()) {
            if (key != "params" && key != "sweep" && key != "sweep2" && key != "output")
                fail(where, "unknown section '" + key + "'");
            for (const auto& [k2, v2] : value.items())
                raw.sections[key][k2] = Entry{as_string(v2, where + "." + k2), where + "." + k2, false};
        } else {
            raw.sections[""][key] = Entry{as_string(value, where), where, false};
        }
    }
    return raw;
}

AxisSpec parse_axis_spec(RawConfig& raw, const std::string& section) {
    AxisSpec ax;
    ax.param = parse_axis_param(raw.source + ":[" + section + "]", raw.require(section, "param"));
    ax.start = parse_double(raw.source, raw.require(section, "start"));
    ax.stop = parse_double(raw.source, raw.require(section, "stop"));
    ax.count = parse_int(raw.source, raw.require(section, "count"));
    if (ax.count < 2) fail(raw.source + ":[" + section + "]", "count must be >= 2");
    if (ax.start == ax.stop) fail(raw.source + ":[" + section + "]", "start must differ from stop");
    if (Entry* e = raw.find(section, "normalize")) {
        ax.norm = parse_norm_ref(e->where, e->value);
        if (ax.param == sweep::AxisParam::Temperature)
            fail(e->where, "temperature axis takes no normalization");
    }
    return ax;
}

RunConfig assemble(RawConfig raw) {
    RunConfig cfg;
    const std::string mode = raw.require("", "mode");
    if (mode == "effective")
        cfg.mode = RunConfig::Mode::Effective;
    else if (mode == "physical")
        cfg.mode = RunConfig::Mode::Physical;
    else
        fail(raw.source, "mode must be 'effective' or 'physical', got '" + mode + "'");

    auto num = [&](const char* key) { return parse_double(raw.source, raw.require("params", key)); };

    if (cfg.mode == RunConfig::Mode::Effective) {
        EffectiveBlock e;
        e.omega_b = num("omega_b");
        e.kappa_a = num("kappa_a");
        e.gamma_b = num("gamma_b");
        e.delta_a_tilde = num("delta_a_tilde");
        e.delta_1 = num("delta_1");
        e.delta_2 = num("delta_2");
        e.G = num("G");
        e.g_1 = num("g_1");
        e.g_2 = num("g_2");
        e.kappa_1 = num("kappa_1");
        e.kappa_2 = num("kappa_2");
        e.omega_0 = num("omega_0");
        e.temperature = num("temperature");
        int pinned = 0;
        for (const char* key : {"n_bar_a", "n_bar_1", "n_bar_2", "n_bar_b"})
            if (Entry* en = raw.find("params", key)) {
                const double v = parse_double(en->where, en->value);
                if (key[6] == 'a') e.n_bar_a = v;
                else if (key[6] == '1') e.n_bar_1 = v;
                else if (key[6] == '2') e.n_bar_2 = v;
                else e.n_bar_b = v;
                ++pinned;
            }
        if (pinned != 0 && pinned != 4)
            fail(raw.source, "pin either all four n_bar_* occupations or none");
        cfg.effective = e;
    } else {
        PhysicalBlock p;
        p.omega_a = num("omega_a");
        p.omega_b = num("omega_b");
        p.omega_1 = num("omega_1");
        p.omega_2 = num("omega_2");
        p.omega_0 = num("omega_0");
        p.kappa_a = num("kappa_a");
        p.kappa_1 = num("kappa_1");
        p.kappa_2 = num("kappa_2");
        p.gamma_b = num("gamma_b");
        p.g_0 = num("g_0");
        p.g_1 = num("g_1");
        p.g_2 = num("g_2");
        p.drive_amplitude = num("drive_amplitude");
        p.temperature = num("temperature");
        cfg.physical = p;
    }

    if (Entry* e = raw.find("params", "gamma_b_sign")) {
        cfg.gamma_b_sign = parse_double(e->where, e->value);
        if (cfg.gamma_b_sign != -1.0 && cfg.gamma_b_sign != 1.0)
            fail(e->where, "gamma_b_sign must be -1 or +1");
    }

    if (raw.sections.count("sweep")) cfg.axes.push_back(parse_axis_spec(raw, "sweep"));
    if (raw.sections.count("sweep2")) {
        if (cfg.axes.empty()) fail(raw.source, "[sweep2] requires a [sweep] section");
        cfg.axes.push_back(parse_axis_spec(raw, "sweep2"));
        if (cfg.axes[0].param == cfg.axes[1].param)
            fail(raw.source, "the two sweep axes must use distinct parameters");
    }

    if (raw.sections.count("output")) {
        if (Entry* e = raw.find("output", "path")) cfg.output.path = e->value;
        if (Entry* e = raw.find("output", "format")) {
            if (e->value == "csv") cfg.output.format = OutputFormat::Csv;
            else if (e->value == "json") cfg.output.format = OutputFormat::Json;
            else fail(e->where, "format must be csv or json");
        }
        if (Entry* e = raw.find("output", "emit_plot_script"))
            cfg.output.emit_plot_script = parse_bool(e->where, e->value);
    }

    raw.check_all_used();
    return cfg;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
    const std::string t = trim(text);
    if (t.empty()) fail(source_name, "empty config");
    RawConfig raw =
        t.front() == '{' ? tokenize_json(text, source_name) : tokenize_flat(text, source_name);
    return assemble(std::move(raw));
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string dump_config(const RunConfig& c) {
    std::ostringstream out;
    out << "mode = " << (c.mode == RunConfig::Mode::Effective ? "effective" : "physical") << "\n\n";
    out << "[params]\n";
    if (c.mode == RunConfig::Mode::Effective) {
        const auto& e = *c.effective;
        out << "omega_b = " << fmt(e.omega_b) << "\n";
        out << "kappa_a = " << fmt(e.kappa_a) << "\n";
        out << "gamma_b = " << fmt(e.gamma_b) << "\n";
        out << "delta_a_tilde = " << fmt(e.delta_a_tilde) << "\n";
        out << "delta_1 = " << fmt(e.delta_1) << "\n";
        out << "delta_2 = " << fmt(e.delta_2) << "\n";
        out << "G = " << fmt(e.G) << "\n";
        out << "g_1 = " << fmt(e.g_1) << "\n";
        out << "g_2 = " << fmt(e.g_2) << "\n";
        out << "kappa_1 = " << fmt(e.kappa_1) << "\n";
        out << "kappa_2 = " << fmt(e.kappa_2) << "\n";
        out << "omega_0 = " << fmt(e.omega_0) << "\n";
        out << "temperature = " << fmt(e.temperature) << "\n";
        if (e.n_bar_a) {
            out << "n_bar_a = " << fmt(*e.n_bar_a) << "\n";
            out << "n_bar_1 = " << fmt(*e.n_bar_1) << "\n";
            out << "n_bar_2 = " << fmt(*e.n_bar_2) << "\n";
            out << "n_bar_b = " << fmt(*e.n_bar_b) << "\n";
        }
    } else {
        const auto& p = *c.physical;
        out << "omega_a = " << fmt(p.omega_a) << "\n";
        out << "omega_b = " << fmt(p.omega_b) << "\n";
        out << "omega_1 = " << fmt(p.omega_1) << "\n";
        out << "omega_2 = " << fmt(p.omega_2) << "\n";
        out << "omega_0 = " << fmt(p.omega_0) << "\n";
        out << "kappa_a = " << fmt(p.kappa_a) << "\n";
        out << "kappa_1 = " << fmt(p.kappa_1) << "\n";
        out << "kappa_2 = " << fmt(p.kappa_2) << "\n";
        out << "gamma_b = " << fmt(p.gamma_b) << "\n";
        out << "g_0 = " << fmt(p.g_0) << "\n";
        out << "g_1 = " << fmt(p.g_1) << "\n";
        out << "g_2 = " << fmt(p.g_2) << "\n";
        out << "drive_amplitude = " << fmt(p.drive_amplitude) << "\n";
        out << "temperature = " << fmt(p.temperature) << "\n";
    }
    if (c.gamma_b_sign != -1.0) out << "gamma_b_sign = " << fmt(c.gamma_b_sign) << "\n";

    const char* sections[2] = {"sweep", "sweep2"};
    for (std::size_t i = 0; i < c.axes.size(); ++i) {
        const auto& ax = c.axes[i];
        out << "\n[" << sections[i] << "]\n";
        out << "param = " << sweep::axis_param_name(ax.param) << "\n";
        out << "start = " << fmt(ax.start) << "\n";
        out << "stop = " << fmt(ax.stop) << "\n";
        out << "count = " << ax.count << "\n";
        if (ax.norm != sweep::NormRef::None)
            out << "normalize = " << sweep::norm_ref_name(ax.norm) << "\n";
    }

    out << "\n[output]\n";
    if (!c.output.path.empty()) out << "path = " << c.output.path << "\n";
    out << "format = " << output_format_name(c.output.format) << "\n";
    out << "emit_plot_script = " << (c.output.emit_plot_script ? "true" : "false") << "\n";
    return out.str();
}

sweep::Base to_base(const RunConfig& c) {
    sweep::Base base;
    base.gamma_b_sign = c.gamma_b_sign;
    if (c.mode == RunConfig::Mode::Effective) {
        const auto& e = *c.effective;
        auto& p = base.params;
        p.omega_b = kTwoPi * e.omega_b;
        p.kappa_a = kTwoPi * e.kappa_a;
        p.gamma_b = kTwoPi * e.gamma_b;
        p.delta_a_tilde = kTwoPi * e.delta_a_tilde;
        p.delta_1 = kTwoPi * e.delta_1;
        p.delta_2 = kTwoPi * e.delta_2;
        p.G = kTwoPi * e.G;
        p.g1 = kTwoPi * e.g_1;
        p.g2 = kTwoPi * e.g_2;
        p.kappa_1 = kTwoPi * e.kappa_1;
        p.kappa_2 = kTwoPi * e.kappa_2;
        base.omega_0 = kTwoPi * e.omega_0;
        base.temperature = e.temperature;
        if (e.n_bar_a) {
            p.nbar_a = *e.n_bar_a;
            p.nbar_1 = *e.n_bar_1;
            p.nbar_2 = *e.n_bar_2;
            p.nbar_b = *e.n_bar_b;
            base.pin_occupations = true;
        } else {
            base.params = model::with_occupations(base.params, base.omega_0, base.temperature);
        }
    } else {
        const auto& ph = *c.physical;
        model::PhysicalParams p;
        p.omega_a = kTwoPi * ph.omega_a;
        p.omega_b = kTwoPi * ph.omega_b;
        p.omega_1 = kTwoPi * ph.omega_1;
        p.omega_2 = kTwoPi * ph.omega_2;
        p.omega_0 = kTwoPi * ph.omega_0;
        p.kappa_a = kTwoPi * ph.kappa_a;
        p.kappa_1 = kTwoPi * ph.kappa_1;
        p.kappa_2 = kTwoPi * ph.kappa_2;
        p.gamma_b = kTwoPi * ph.gamma_b;
        p.g0 = kTwoPi * ph.g_0;
        p.g1 = kTwoPi * ph.g_1;
        p.g2 = kTwoPi * ph.g_2;
        p.drive_amplitude = kTwoPi * ph.drive_amplitude;
        p.temperature = ph.temperature;
        base.params = model::effective_params(p);
        base.omega_0 = p.omega_0;
        base.temperature = ph.temperature;
    }
    base.params.validate();
    return base;
}

sweep::Axis to_axis(const RunConfig&, const AxisSpec& spec) {
    sweep::Axis ax;
    ax.param = spec.param;
    ax.count = spec.count;
    ax.norm = spec.norm;
    if (spec.norm == sweep::NormRef::None && spec.param != sweep::AxisParam::Temperature) {
        ax.start = kTwoPi * spec.start;  // Hz -> rad/s
        ax.stop = kTwoPi * spec.stop;
    } else {
        ax.start = spec.start;
        ax.stop = spec.stop;
    }
    return ax;
}

const char* output_format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

}  // namespace cmo::cli
