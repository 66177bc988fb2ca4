#include "dirac/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "dirac/errors.hpp"

namespace dirac::io {

namespace {

Json parse_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(what + " is not valid JSON: " + e.what());
    }
}

double number_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(std::string("missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// JSON has no infinities; they are written as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

GroupPresentation parse_group(const Json& j) {
    if (!j.is_object() || !j.contains("model") || !j.at("model").is_string()) {
        throw ValidationError("group file needs a string 'model'");
    }
    const auto model = j.at("model").get<std::string>();
    if (model == "gamma2") return GroupPresentation::gamma2();
    if (model == "cyclic") return GroupPresentation::cyclic(number_field(j, "ell"));
    if (model == "custom") {
        if (!j.contains("generators") || !j.at("generators").is_array()) {
            throw ValidationError("custom group needs a 'generators' array");
        }
        std::vector<MoebiusElement> gens;
        for (const auto& g : j.at("generators")) {
            if (!g.is_array() || g.size() != 2 || !g[0].is_array() || !g[1].is_array() || g[0].size() != 2 ||
                g[1].size() != 2) {
                throw ValidationError("each generator must be [[a,b],[c,d]]");
            }
            for (const auto& row : g)
                for (const auto& v : row)
                    if (!v.is_number()) throw ValidationError("generator entries must be numbers");
            try {
                gens.push_back(MoebiusElement::from_entries(g[0][0].get<double>(), g[0][1].get<double>(),
                                                            g[1][0].get<double>(), g[1][1].get<double>()));
            } catch (const DomainError& e) {
                throw ValidationError(e.what());
            }
        }
        return GroupPresentation::custom(std::move(gens));
    }
    throw ValidationError("unknown group model '" + model + "'");
}

GroupPresentation load_group(const std::string& path) {
    try {
        return parse_group(parse_text(read_file(path), path));
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

Json group_to_json(const GroupPresentation& g) {
    Json j{{"model", to_string(g.model())}};
    if (g.model() == GroupModel::cyclic) j["ell"] = g.ell();
    Json gens = Json::array();
    for (const auto& m : g.generators()) gens.push_back(Json{Json{m.a, m.b}, Json{m.c, m.d}});
    j["generators"] = gens;
    return j;
}

SpinAssignment parse_spin(const Json& j) {
    if (!j.is_object() || !j.contains("signs") || !j.at("signs").is_array()) {
        throw ValidationError("spin file needs a 'signs' array");
    }
    std::vector<int> s;
    for (const auto& v : j.at("signs")) {
        if (!v.is_number_integer()) throw ValidationError("spin signs must be integers");
        s.push_back(v.get<int>());
    }
    return SpinAssignment(std::move(s));
}

SpinAssignment load_spin(const std::string& path) { return parse_spin(parse_text(read_file(path), path)); }

Json report_to_json(const TraceReport& rep, const GroupPresentation& group, const SpinAssignment& spin) {
    const auto& g = rep.geometric;
    const auto& s = rep.settings;
    Json j;
    j["schema"] = "dirac-trace-report";
    j["schema_version"] = kSchemaVersion;
    j["inputs"] = {
        {"group", group_to_json(group)},
        {"spin", {{"signs", spin.signs}}},
        {"signature", {{"genus", rep.genus}, {"cusps", rep.cusps}, {"area", rep.area}}},
        {"window", {{"a", rep.window.a}, {"b", rep.window.b}, {"t", rep.window.t}}},
        {"L", rep.L},
    };
    j["settings"] = {
        {"resolution", s.grid.resolution},
        {"cusp_cutoff", s.grid.cusp_cutoff},
        {"angle_cutoff", s.grid.angle_cutoff},
        {"cluster_block", s.grid.cluster_block},
        {"truncation_radius", s.truncation_radius},
        {"tail_tolerance", s.tail_tolerance},
        {"negligible_tolerance", s.negligible_tolerance},
        {"max_word_len", s.max_word_len},
        {"node_budget", s.node_budget},
        {"prune_slack", s.prune_slack},
    };
    j["terms"] = {
        {"I", rep.I},
        {"M", rep.M},
        {"C", rep.C},
        {"R_plus", complex_json(g.R_plus)},
        {"R_minus", complex_json(g.R_minus)},
        {"R_K", complex_json(g.R_K())},
        {"density", rep.density},
    };
    const auto& e = rep.envelopes;
    j["envelopes"] = {
        {"prop6", e.prop6},
        {"prop7", e.prop7},
        {"prop10_at_r", e.prop10_at_r},
        {"lemma12", finite_or_null(e.lemma12)},
        {"lemma12_applicable", e.lemma12_applicable},
        {"lemma13", finite_or_null(e.lemma13)},
    };
    j["diagnostics"] = {
        {"truncation_radius", g.truncation_radius},
        {"effective_radius", g.effective_radius},
        {"systole", finite_or_null(g.systole)},
        {"counting_r", g.counting_r},
        {"grid_nodes", g.grid_nodes},
        {"total_weight", g.total_weight},
        {"thin_weight", g.thin_weight},
        {"thin_fraction", g.thin_fraction},
        {"min_local_injectivity", finite_or_null(g.min_local_injectivity)},
        {"max_local_injectivity", finite_or_null(g.max_local_injectivity)},
        {"terms", g.terms},
        {"walk_nodes", g.walk_nodes},
        {"possibly_incomplete", g.possibly_incomplete},
        {"kernel_table_error", g.kernel_table_error},
        {"imaginary_residue", rep.imaginary_residue},
        {"imaginary_residue_ok", rep.imaginary_residue_ok},
        {"warnings", g.warnings},
    };
    return j;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += f;
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ResourceError("failed writing '" + path + "'");
}

}  // namespace dirac::io
