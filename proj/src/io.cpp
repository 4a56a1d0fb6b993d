#include "foldbend/io.hpp"

#include "json.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "foldbend/errors.hpp"

namespace foldbend::io {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k];
    return s;
}

double parse_double(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ValidationError(where + ": '" + cell + "' is not a finite number");
    }
    return v;
}

double number(const json& block, const char* key, const std::string& where) {
    if (!block.contains(key)) throw ValidationError(where + ": missing key '" + key + "'", {key});
    const auto& v = block.at(key);
    if (!v.is_number()) throw ValidationError(where + ": key '" + std::string(key) + "' must be a number", {key});
    return v.get<double>();
}

std::optional<double> optional_number(const json& block, const char* key, const std::string& where) {
    if (!block.contains(key) || block.at(key).is_null()) return std::nullopt;
    return number(block, key, where);
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        auto doc = json::parse(text);
        if (!doc.is_object()) throw ValidationError(source + ": expected a JSON object");
        return doc;
    } catch (const json::parse_error& e) {
        throw ValidationError(source + ": malformed JSON: " + e.what());
    }
}

MooneyRivlinModel material_from_block(const json& m, const std::string& where) {
    if (!m.is_object()) throw ValidationError(where + ": material must be an object", {"material"});
    MooneyRivlinCoefficients c;
    c.c10 = number(m, "c10", where);
    c.c01 = number(m, "c01", where);
    c.c11 = number(m, "c11", where);
    c.c20 = number(m, "c20", where);
    c.c02 = number(m, "c02", where);
    c.c30 = optional_number(m, "c30", where).value_or(0.0);
    const double d = optional_number(m, "d", where).value_or(0.0);
    return MooneyRivlinModel(c, d);
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value);
    return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& in, const std::vector<std::string>& header,
                                                  const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (!have_header) {
            if (cells != header) {
                throw ValidationError(source + ": expected header '" + join(header) + "', got '" +
                                      trim(line) + "'");
            }
            have_header = true;
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_no);
        if (cells.size() != header.size()) {
            throw ValidationError(where + ": expected " + std::to_string(header.size()) + " columns");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c, where));
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ValidationError(source + ": empty file, expected header '" + join(header) + "'");
    return rows;
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& header) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return read_numeric_csv(in, header, path.string());
}

std::vector<StressStrainSample> read_stress_strain_csv(const std::filesystem::path& path) {
    std::vector<StressStrainSample> out;
    for (const auto& r : read_numeric_csv(path, {"strain", "stress_mpa"})) out.push_back({r[0], r[1]});
    return out;
}

std::vector<AngleSample> read_angle_csv(const std::filesystem::path& path) {
    std::vector<AngleSample> out;
    for (const auto& r : read_numeric_csv(path, {"pressure_kpa", "angle_deg"})) out.push_back({r[0], r[1]});
    return out;
}

ContourProfile read_contour_csv(const std::filesystem::path& path) {
    ContourProfile c;
    for (const auto& r : read_numeric_csv(path, {"x_mm", "y_mm"})) c.points.push_back({r[0], r[1]});
    validate(c);
    return c;
}

MooneyRivlinModel material_from_json_text(const std::string& text, const std::string& source) {
    return material_from_block(parse_json(text, source), source);
}

MooneyRivlinModel read_material(const std::filesystem::path& path) {
    return material_from_json_text(read_text_file(path), path.string());
}

std::string material_to_json(const MooneyRivlinModel& model) {
    // Values go through the 9-digit formatter so files are stable across runs.
    auto rounded = [](double v) { return std::stod(format_number(v)); };
    const auto& c = model.coefficients();
    json doc = json::object();
    doc["c10"] = rounded(c.c10);
    doc["c01"] = rounded(c.c01);
    doc["c11"] = rounded(c.c11);
    doc["c20"] = rounded(c.c20);
    doc["c02"] = rounded(c.c02);
    if (c.c30 != 0.0) doc["c30"] = rounded(c.c30);
    doc["d"] = 0.0;
    return doc.dump(2) + "\n";
}

void write_material(const std::filesystem::path& path, const MooneyRivlinModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << material_to_json(model);
}

ActuatorConfig config_from_json_text(const std::string& text, const std::filesystem::path& base_dir,
                                     const std::string& source) {
    const auto doc = parse_json(text, source);
    auto block = [&](const char* name) -> const json& {
        if (!doc.contains(name) || !doc.at(name).is_object()) {
            throw ValidationError(source + ": missing object '" + name + "'", {name});
        }
        return doc.at(name);
    };

    ActuatorConfig cfg;
    const auto& g = block("geometry");
    const std::string gw = source + " geometry";
    cfg.geometry.a = number(g, "a", gw);
    cfg.geometry.b = number(g, "b", gw);
    cfg.geometry.l_c = number(g, "l_c", gw);
    cfg.geometry.h1 = number(g, "h1", gw);
    cfg.geometry.t_w = number(g, "t_w", gw);
    cfg.geometry.t_c = number(g, "t_c", gw);
    cfg.geometry.alpha = number(g, "alpha", gw);
    cfg.geometry.H1 = number(g, "H1", gw);
    cfg.depth = number(g, "depth", gw);
    cfg.h_ee_override = optional_number(g, "h_ee_override", gw);

    const bool inline_material = doc.contains("material");
    const bool file_material = doc.contains("material_file");
    if (inline_material == file_material) {
        throw ValidationError(source + ": give exactly one of 'material' or 'material_file'",
                              {"material", "material_file"});
    }
    if (inline_material) {
        cfg.material = material_from_block(doc.at("material"), source + " material");
    } else {
        const auto& ref = doc.at("material_file");
        if (!ref.is_string()) throw ValidationError(source + ": material_file must be a path", {"material_file"});
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        cfg.material = read_material(p);
    }

    const auto& a = block("actuator");
    const std::string aw = source + " actuator";
    const double n = number(a, "n_folds", aw);
    if (n != std::floor(n) || n < 1 || n > 1e6) {
        throw ValidationError(aw + ": n_folds must be a positive integer", {"n_folds"});
    }
    cfg.n_folds = static_cast<int>(n);
    cfg.area_a = number(a, "area_a", aw);
    cfg.segment_pitch = optional_number(a, "segment_pitch", aw);

    if (doc.contains("solver")) {
        const auto& s = block("solver");
        const std::string sw = source + " solver";
        cfg.lambda_max = optional_number(s, "lambda_max", sw).value_or(cfg.lambda_max);
        cfg.solver_tol = optional_number(s, "solver_tol", sw).value_or(cfg.solver_tol);
    }
    validate(cfg);
    return cfg;
}

ActuatorConfig read_config(const std::filesystem::path& path) {
    return config_from_json_text(read_text_file(path), path.parent_path(), path.string());
}

void write_sweep_header(std::ostream& out) { out << join(kSweepHeader) << '\n'; }

void write_sweep_row(std::ostream& out, const BendingState& s) {
    out << format_number(s.pressure_kpa) << ',' << format_number(s.lambda_star) << ','
        << format_number(s.phi) << ',' << format_number(s.theta) << ',' << format_number(s.theta_deg())
        << ',' << format_number(s.residual) << '\n';
}

void write_shape_csv(std::ostream& out, const BackboneShape& shape) {
    out << join(kShapeHeader) << '\n';
    for (const auto& v : shape.vertices) {
        out << format_number(v.x) << ',' << format_number(v.y) << ',' << format_number(v.heading) << '\n';
    }
}

}  // namespace foldbend::io
