#include "polywell/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polywell::io {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const char* field,
                                    const std::string& where) {
    if (!j.is_object())
        throw ParseError(where + ": expected an object with field \"" + field + "\"");
    auto it = j.find(field);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + field + "\"");
    return *it;
}

double require_number(const nlohmann::json& j, const char* field, const std::string& where) {
    const auto& v = require_field(j, field, where);
    if (!v.is_number()) throw ParseError(where + ": field \"" + field + "\" must be a number");
    return v.get<double>();
}

std::vector<double> require_vector(const nlohmann::json& j, const char* field,
                                   const std::string& where) {
    const auto& v = require_field(j, field, where);
    if (!v.is_array()) throw ParseError(where + ": field \"" + field + "\" must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw ParseError(where + ": field \"" + field + "\" must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

json to_json(const Matrix& m) {
    json j;
    j["n"] = m.dim();
    j["entries"] = m.rows();
    return j;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
    const auto& nj = require_field(j, "n", where);
    if (!nj.is_number_integer())
        throw ParseError(where + ": field \"n\" must be an integer");
    const int n = nj.get<int>();
    const auto& entries = require_field(j, "entries", where);
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n))
        throw ParseError(where + ": field \"entries\" must be an array of " +
                         std::to_string(n) + " rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(entries.size());
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw ParseError(where + ": field \"entries\" rows must each hold " +
                             std::to_string(n) + " numbers");
        std::vector<double> r;
        r.reserve(row.size());
        for (const auto& e : row) {
            if (!e.is_number())
                throw ParseError(where + ": field \"entries\" must hold numbers");
            r.push_back(e.get<double>());
        }
        rows.push_back(std::move(r));
    }
    try {
        return Matrix::from_rows(rows);
    } catch (const ValidationError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

json to_json(const DoubleWell& dw) {
    json j;
    j["X1"] = to_json(dw.x1);
    j["X2"] = to_json(dw.x2);
    return j;
}

DoubleWell wells_from_json(const nlohmann::json& j) {
    Matrix x1 = matrix_from_json(require_field(j, "X1", "wells"), "wells field \"X1\"");
    Matrix x2 = matrix_from_json(require_field(j, "X2", "wells"), "wells field \"X2\"");
    try {
        return DoubleWell(std::move(x1), std::move(x2));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("wells: ") + e.what());
    }
}

json to_json(const Certificate& cert) {
    json j;
    if (cert.polyconvex()) {
        j["verdict"] = "polyconvex";
        j["a"] = cert.a;
        j["Q"] = to_json(*cert.Q);
        j["B"] = to_json(*cert.B);
        j["sigma_spread"] = cert.sigma_spread;
    } else {
        j["verdict"] = "not_polyconvex";
        if (cert.witness) {
            j["u"] = cert.witness->u;
            j["v"] = cert.witness->v;
            j["value"] = cert.violation_value;
        } else {
            j["witness"] = "none-at-zero";
        }
        j["sigma"] = cert.sigma;
    }
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    const auto& verdict = require_field(j, "verdict", "certificate");
    if (!verdict.is_string())
        throw ParseError("certificate: field \"verdict\" must be a string");
    Certificate cert{};
    const std::string v = verdict.get<std::string>();
    if (v == "polyconvex") {
        cert.verdict = Verdict::polyconvex;
        cert.a = require_number(j, "a", "certificate");
        cert.Q = matrix_from_json(require_field(j, "Q", "certificate"),
                                  "certificate field \"Q\"");
        cert.B = matrix_from_json(require_field(j, "B", "certificate"),
                                  "certificate field \"B\"");
        cert.sigma_spread = require_number(j, "sigma_spread", "certificate");
    } else if (v == "not_polyconvex") {
        cert.verdict = Verdict::not_polyconvex;
        cert.sigma = require_vector(j, "sigma", "certificate");
        if (!cert.sigma.empty()) cert.sigma_spread = cert.sigma.front() - cert.sigma.back();
        if (j.contains("u")) {
            RankOneDirection dir;
            dir.u = require_vector(j, "u", "certificate");
            dir.v = require_vector(j, "v", "certificate");
            cert.witness = std::move(dir);
            cert.violation_value = require_number(j, "value", "certificate");
        }
    } else {
        throw ParseError("certificate: field \"verdict\" must be \"polyconvex\" or "
                         "\"not_polyconvex\"");
    }
    return cert;
}

json to_json(const Decomposition& dec, const Certificate& cert) {
    json j = to_json(cert);
    j["null_coeff"] = dec.null_coeff;
    return j;
}

json to_json(const Mesh2& mesh) {
    json j;
    j["nodes"] = mesh.nodes;
    j["triangles"] = mesh.triangles;
    j["boundary"] = mesh.boundary_nodes;
    return j;
}

Mesh2 mesh_from_json(const nlohmann::json& j) {
    Mesh2 mesh;
    const auto& nodes = require_field(j, "nodes", "mesh");
    if (!nodes.is_array()) throw ParseError("mesh: field \"nodes\" must be an array");
    for (const auto& p : nodes) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ParseError("mesh: field \"nodes\" must hold [x, y] pairs");
        mesh.nodes.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    const auto& tris = require_field(j, "triangles", "mesh");
    if (!tris.is_array()) throw ParseError("mesh: field \"triangles\" must be an array");
    for (const auto& t : tris) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
            !t[1].is_number_integer() || !t[2].is_number_integer())
            throw ParseError("mesh: field \"triangles\" must hold [i, j, k] index triples");
        mesh.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    const auto& bnd = require_field(j, "boundary", "mesh");
    if (!bnd.is_array()) throw ParseError("mesh: field \"boundary\" must be an array");
    for (const auto& b : bnd) {
        if (!b.is_number_integer())
            throw ParseError("mesh: field \"boundary\" must hold node indices");
        mesh.boundary_nodes.push_back(b.get<int>());
    }
    try {
        mesh.validate();
    } catch (const MeshError& e) {
        throw ParseError(std::string("mesh: ") + e.what());
    }
    return mesh;
}

json to_json(const std::vector<IdentityResult>& results, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    json list = json::array();
    for (const auto& r : results) {
        json e;
        e["name"] = r.name;
        e["samples"] = r.samples;
        e["max_residual"] = r.max_residual;
        e["tolerance"] = r.tolerance;
        e["pass"] = r.pass;
        list.push_back(std::move(e));
    }
    j["identities"] = std::move(list);
    j["all_pass"] = all_pass(results);
    return j;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("\"" + path + "\": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing \"" + path + "\"");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_field_csv(const std::string& path, const Mesh2& mesh, const VectorField& y) {
    if (y.values.size() != mesh.nodes.size())
        throw DimensionMismatch("field dump: field length does not match the mesh");
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << "node_index,x,y,y1,y2\n";
    for (std::size_t v = 0; v < mesh.nodes.size(); ++v)
        out << v << ',' << format_double(mesh.nodes[v][0]) << ','
            << format_double(mesh.nodes[v][1]) << ',' << format_double(y.values[v][0])
            << ',' << format_double(y.values[v][1]) << '\n';
    if (!out) throw ParseError("failed writing \"" + path + "\"");
}

VectorField read_field_csv(const std::string& path, const Mesh2& mesh) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::string line;
    if (!std::getline(in, line) || line != "node_index,x,y,y1,y2")
        throw ParseError("\"" + path + "\": expected header \"node_index,x,y,y1,y2\"");
    VectorField y{std::vector<std::array<double, 2>>(mesh.nodes.size(), {0.0, 0.0})};
    std::vector<bool> seen(mesh.nodes.size(), false);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::vector<double> cols;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                cols.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("\"" + path + "\" line " + std::to_string(lineno) +
                                 ": bad number \"" + tok + "\"");
            }
        }
        if (cols.size() != 5)
            throw ParseError("\"" + path + "\" line " + std::to_string(lineno) +
                             ": expected node_index,x,y,y1,y2");
        const double idx_raw = cols[0];
        const auto idx = static_cast<std::size_t>(idx_raw);
        if (idx_raw != static_cast<double>(idx) || idx >= mesh.nodes.size())
            throw ParseError("\"" + path + "\" line " + std::to_string(lineno) +
                             ": field \"node_index\" out of range");
        if (seen[idx])
            throw ParseError("\"" + path + "\" line " + std::to_string(lineno) +
                             ": duplicate node_index " + std::to_string(idx));
        const auto close = [](double got, double want) {
            return std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want));
        };
        if (!close(cols[1], mesh.nodes[idx][0]) || !close(cols[2], mesh.nodes[idx][1]))
            throw ParseError("\"" + path + "\" line " + std::to_string(lineno) +
                             ": node coordinates do not match the mesh");
        seen[idx] = true;
        y.values[idx] = {cols[3], cols[4]};
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v])
            throw ParseError("\"" + path + "\": no row for node_index " + std::to_string(v));
    return y;
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << "iter,I_C,grad_norm,step\n";
    for (const auto& row : history)
        out << row.iter << ',' << format_double(row.energy) << ','
            << format_double(row.grad_norm) << ',' << format_double(row.step) << '\n';
    if (!out) throw ParseError("failed writing \"" + path + "\"");
}

} // namespace polywell::io
