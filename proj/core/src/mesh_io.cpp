#include "projconf/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace projconf {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

MetricTriangulation parse_mesh(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw MeshError(std::string("mesh JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("faces"))
        throw MeshError("mesh JSON needs a \"faces\" array");

    std::vector<std::array<int, 3>> faces;
    for (const auto& f : j.at("faces")) {
        if (!f.is_array() || f.size() != 3)
            throw MeshError("each face must be a triple of vertex indices");
        faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }

    std::optional<std::vector<PlanePoint>> positions;
    if (j.contains("vertices")) {
        positions.emplace();
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2)
                throw MeshError("each vertex must be a coordinate pair");
            positions->push_back({v[0].get<double>(), v[1].get<double>()});
        }
    }

    std::optional<std::vector<std::tuple<int, int, double>>> lengths;
    if (j.contains("lengths")) {
        lengths.emplace();
        for (const auto& l : j.at("lengths")) {
            if (!l.is_array() || l.size() != 3)
                throw MeshError("each length entry must be [i, j, length]");
            lengths->push_back({l[0].get<int>(), l[1].get<int>(), l[2].get<double>()});
        }
    }

    int n_vertices = positions ? int(positions->size()) : 0;
    if (!positions) {
        for (const auto& f : faces) n_vertices = std::max({n_vertices, f[0] + 1, f[1] + 1, f[2] + 1});
        if (lengths)
            for (const auto& [i, jj, l] : *lengths) n_vertices = std::max({n_vertices, i + 1, jj + 1});
    }
    return MetricTriangulation::create(n_vertices, std::move(faces), std::move(positions),
                                       std::move(lengths));
}

MetricTriangulation load_mesh(const std::string& path) {
    return parse_mesh(read_file(path));
}

std::string mesh_to_json(const MetricTriangulation& mesh, bool include_lengths) {
    nlohmann::json j;
    if (mesh.has_positions()) {
        auto& verts = j["vertices"] = nlohmann::json::array();
        for (PlanePoint p : mesh.positions()) verts.push_back({p.real(), p.imag()});
    }
    auto& faces = j["faces"] = nlohmann::json::array();
    for (const auto& f : mesh.faces()) faces.push_back({f[0], f[1], f[2]});
    if (include_lengths || !mesh.has_positions()) {
        auto& lengths = j["lengths"] = nlohmann::json::array();
        for (const auto& e : mesh.edges()) lengths.push_back({e.i, e.j, e.length});
    }
    return j.dump(2) + "\n";
}

void save_mesh(const MetricTriangulation& mesh, const std::string& path, bool include_lengths) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << mesh_to_json(mesh, include_lengths);
}

ProjectiveMap load_matrix(const std::string& path) {
    std::istringstream in(read_file(path));
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!(in >> m(r, c))) throw Error("matrix file needs 9 decimals: " + path);
    return ProjectiveMap(m);
}

ProjectiveMap parse_matrix_argument(const std::string& arg) {
    std::string cleaned = arg;
    for (char& ch : cleaned)
        if (ch == ',') ch = ' ';
    std::istringstream in(cleaned);
    Eigen::Matrix3d m;
    bool inline_ok = true;
    for (int r = 0; r < 3 && inline_ok; ++r)
        for (int c = 0; c < 3 && inline_ok; ++c)
            if (!(in >> m(r, c))) inline_ok = false;
    if (inline_ok) {
        std::string rest;
        if (in >> rest) inline_ok = false; // trailing tokens: not a clean 9-tuple
    }
    if (inline_ok) return ProjectiveMap(m);
    return load_matrix(arg);
}

} // namespace projconf
