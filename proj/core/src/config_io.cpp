#include "latkep/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "latkep/series_io.hpp"

namespace latkep {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    std::size_t end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ValidationError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& raw, int line) {
    const std::string v = trim(raw);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(line, "expected a decimal number, got '" + v + "'");
    return out;
}

int parse_int(const std::string& raw, int line) {
    const std::string v = trim(raw);
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(line, "expected an integer count, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    fail(line, "expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& raw, int line) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(item, line));
    if (out.empty() || out.size() > 3)
        fail(line, "expected 1 to 3 comma-separated components");
    return out;
}

Vec3 parse_vec(const std::string& raw, int line) {
    const auto items = parse_list(raw, line);
    Vec3 v{};
    for (std::size_t i = 0; i < items.size(); ++i)
        v[static_cast<int>(i)] = items[i];
    return v;
}

void parse_int_triple(const std::string& raw, int line, std::array<int, 3>& out) {
    std::vector<int> items;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        items.push_back(parse_int(item, line));
    if (items.empty() || items.size() > 3)
        fail(line, "expected 1 to 3 comma-separated counts");
    out = {1, 1, 1};
    for (std::size_t i = 0; i < items.size(); ++i)
        out[i] = items[i];
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    cfg.name = "unnamed";
    bool preset_loaded = false;
    bool epsilon_override = false;
    double epsilon_value = 0.0;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "lattice" && section != "source" &&
                section != "initial" && section != "integration" && section != "grid" &&
                section != "outputs")
                fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            fail(line_no, "key '" + key + "' appears before any [section]");
        if (key.empty())
            fail(line_no, "empty key");

        if (section == "scenario") {
            if (key == "preset") {
                if (preset_loaded)
                    fail(line_no, "preset named twice");
                cfg = preset(value);
                preset_loaded = true;
            } else if (key == "name") {
                cfg.name = value;
            } else if (key == "engine") {
                if (value == "semiclassical")
                    cfg.engine = Engine::semiclassical;
                else if (value == "quantum")
                    cfg.engine = Engine::quantum;
                else if (value == "paired")
                    cfg.engine = Engine::paired;
                else
                    fail(line_no, "engine must be semiclassical, quantum or paired");
            } else {
                fail(line_no, "unknown key '" + key + "' in [scenario]");
            }
        } else if (section == "lattice") {
            if (key == "dims")
                cfg.lattice.dims = parse_int(value, line_no);
            else if (key == "kind") {
                if (value == "lattice")
                    cfg.lattice.kind = DispersionKind::lattice;
                else if (value == "continuum")
                    cfg.lattice.kind = DispersionKind::continuum;
                else
                    fail(line_no, "kind must be lattice or continuum");
            } else if (key == "a")
                cfg.lattice.a = parse_double(value, line_no);
            else if (key == "b")
                cfg.lattice.b = parse_double(value, line_no);
            else if (key == "c")
                cfg.lattice.c = parse_double(value, line_no);
            else if (key == "A")
                cfg.lattice.A = parse_double(value, line_no);
            else if (key == "B")
                cfg.lattice.B = parse_double(value, line_no);
            else if (key == "C")
                cfg.lattice.C = parse_double(value, line_no);
            else
                fail(line_no, "unknown key '" + key + "' in [lattice]");
        } else if (section == "source") {
            if (key == "kind") {
                if (value == "coulomb")
                    cfg.potential_kind = PotentialSpec::Kind::coulomb;
                else if (value == "gradient")
                    cfg.potential_kind = PotentialSpec::Kind::uniform_gradient;
                else
                    fail(line_no, "source kind must be coulomb or gradient");
            } else if (key == "position")
                cfg.source_position = parse_vec(value, line_no);
            else if (key == "V1")
                cfg.v1 = parse_double(value, line_no);
            else if (key == "epsilon") {
                epsilon_override = true;
                epsilon_value = parse_double(value, line_no);
            } else if (key == "epsilon_semiclassical")
                cfg.sc_epsilon = parse_double(value, line_no);
            else if (key == "epsilon_quantum")
                cfg.qm_epsilon = parse_double(value, line_no);
            else if (key == "gradient")
                cfg.gradient = parse_vec(value, line_no);
            else
                fail(line_no, "unknown key '" + key + "' in [source]");
        } else if (section == "initial") {
            if (key == "r0")
                cfg.initial.r = parse_vec(value, line_no);
            else if (key == "k0") {
                cfg.initial.k = parse_vec(value, line_no);
                cfg.packet.k0 = cfg.initial.k;
            } else if (key == "center") {
                cfg.packet.center = parse_vec(value, line_no);
            } else if (key == "sigma")
                cfg.packet.sigma = parse_double(value, line_no);
            else
                fail(line_no, "unknown key '" + key + "' in [initial]");
        } else if (section == "integration") {
            if (key == "dt")
                cfg.integration.dt = parse_double(value, line_no);
            else if (key == "t_end")
                cfg.integration.t_end = parse_double(value, line_no);
            else if (key == "sample_every")
                cfg.integration.sample_every = parse_int(value, line_no);
            else
                fail(line_no, "unknown key '" + key + "' in [integration]");
        } else if (section == "grid") {
            if (key == "n")
                parse_int_triple(value, line_no, cfg.grid_n);
            else if (key == "origin")
                parse_int_triple(value, line_no, cfg.grid_origin);
            else
                fail(line_no, "unknown key '" + key + "' in [grid]");
        } else if (section == "outputs") {
            if (key == "series")
                cfg.outputs.series = parse_bool(value, line_no);
            else if (key == "density_initial")
                cfg.outputs.density_initial = parse_bool(value, line_no);
            else if (key == "density_final")
                cfg.outputs.density_final = parse_bool(value, line_no);
            else
                fail(line_no, "unknown key '" + key + "' in [outputs]");
        }
    }

    if (epsilon_override) {
        cfg.sc_epsilon = epsilon_value;
        cfg.qm_epsilon = epsilon_value;
        cfg.calibration.erase("epsilon_quantum");
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {
std::string vec_str(const Vec3& v, int dims) {
    std::string out = format_double(v.x);
    if (dims > 1)
        out += "," + format_double(v.y);
    if (dims > 2)
        out += "," + format_double(v.z);
    return out;
}
}  // namespace

std::string print_config(const ScenarioConfig& cfg) {
    const int d = cfg.lattice.dims;
    std::ostringstream os;
    os << "[scenario]\n";
    os << "name = " << cfg.name << "\n";
    os << "engine = "
       << (cfg.engine == Engine::semiclassical ? "semiclassical"
           : cfg.engine == Engine::quantum     ? "quantum"
                                               : "paired")
       << "\n";
    os << "\n[lattice]\n";
    os << "dims = " << d << "\n";
    os << "kind = " << (cfg.lattice.kind == DispersionKind::lattice ? "lattice" : "continuum") << "\n";
    os << "a = " << format_double(cfg.lattice.a) << "\n";
    os << "A = " << format_double(cfg.lattice.A) << "\n";
    if (d > 1) {
        os << "b = " << format_double(cfg.lattice.b) << "\n";
        os << "B = " << format_double(cfg.lattice.B) << "\n";
    }
    if (d > 2) {
        os << "c = " << format_double(cfg.lattice.c) << "\n";
        os << "C = " << format_double(cfg.lattice.C) << "\n";
    }
    os << "\n[source]\n";
    os << "kind = " << (cfg.potential_kind == PotentialSpec::Kind::coulomb ? "coulomb" : "gradient") << "\n";
    os << "position = " << vec_str(cfg.source_position, d) << "\n";
    os << "V1 = " << format_double(cfg.v1) << "\n";
    os << "epsilon_semiclassical = " << format_double(cfg.sc_epsilon) << "\n";
    os << "epsilon_quantum = " << format_double(cfg.qm_epsilon) << "\n";
    if (cfg.potential_kind == PotentialSpec::Kind::uniform_gradient)
        os << "gradient = " << vec_str(cfg.gradient, d) << "\n";
    os << "\n[initial]\n";
    os << "r0 = " << vec_str(cfg.initial.r, d) << "\n";
    os << "k0 = " << vec_str(cfg.initial.k, d) << "\n";
    os << "center = " << vec_str(cfg.packet.center, d) << "\n";
    os << "sigma = " << format_double(cfg.packet.sigma) << "\n";
    os << "\n[integration]\n";
    os << "dt = " << format_double(cfg.integration.dt) << "\n";
    os << "t_end = " << format_double(cfg.integration.t_end) << "\n";
    os << "sample_every = " << cfg.integration.sample_every << "\n";
    if (cfg.engine != Engine::semiclassical) {
        os << "\n[grid]\n";
        os << "n = " << cfg.grid_n[0];
        if (d > 1)
            os << "," << cfg.grid_n[1];
        if (d > 2)
            os << "," << cfg.grid_n[2];
        os << "\n";
        os << "origin = " << cfg.grid_origin[0];
        if (d > 1)
            os << "," << cfg.grid_origin[1];
        if (d > 2)
            os << "," << cfg.grid_origin[2];
        os << "\n";
    }
    os << "\n[outputs]\n";
    os << "series = " << (cfg.outputs.series ? "true" : "false") << "\n";
    os << "density_initial = " << (cfg.outputs.density_initial ? "true" : "false") << "\n";
    os << "density_final = " << (cfg.outputs.density_final ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace latkep
