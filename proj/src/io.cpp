#include "twinheart/io.hpp"

#include <fstream>
#include <sstream>

#include "twinheart/nakayama.hpp"

namespace twinheart {

using nlohmann::json;

namespace {

json ids_json(const Obj& x)
{
    return json(x.summands());
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(path + ": missing key '" + key + "'");
    return j.at(key);
}

int as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw FormatError(path + ": expected an integer");
    return j.get<int>();
}

std::vector<int> as_ints(const json& j, const std::string& path)
{
    if (!j.is_array())
        throw FormatError(path + ": expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

json to_json(const TriangulatedStructure& t)
{
    const LinearCategory& cat = t.cat();
    const int n = cat.size();
    json j;
    j["format"] = "twinheart/1";
    j["p"] = cat.p();
    j["indecomposables"] = cat.names();
    json dims = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k)
            row.push_back(cat.hom_dim(i, k));
        dims.push_back(row);
    }
    j["hom_dims"] = dims;
    json comp = json::array();
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Vec& tensor = cat.comp_tensor(i, a, b);
                if (tensor.empty())
                    continue;
                comp.push_back({{"ijk", {i, a, b}}, {"tensor", tensor}});
            }
    j["composition"] = comp;
    json ids = json::array();
    for (int i = 0; i < n; ++i)
        ids.push_back(cat.identity_coeffs(i));
    j["identities"] = ids;
    json mats = json::array();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Matrix& m = t.shift_matrix(i, k);
            if (m.rows() == 0 && m.cols() == 0)
                continue;
            Vec data;
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    data.push_back(m(r, c));
            mats.push_back({{"ij", {i, k}}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}});
        }
    j["shift"] = {{"perm", t.shift_perm()}, {"matrices", mats}};
    json proc = {{"name", "none"}, {"params", json::object()}};
    if (t.procedure()) {
        proc["name"] = t.procedure()->name();
        for (const auto& [k, v] : t.procedure()->params())
            proc["params"][k] = v;
    }
    j["cone_procedure"] = proc;
    json table = json::array();
    for (const auto& [key, tri] : t.cone_table())
        table.push_back({{"a", ids_json(tri.a)},
                         {"b", ids_json(tri.b)},
                         {"c", ids_json(tri.c)},
                         {"f", tri.f.coords},
                         {"g", tri.g.coords},
                         {"h", tri.h.coords}});
    j["cone_table"] = table;
    return j;
}

TriangulatedStructure structure_from_json(const json& j)
{
    if (!j.is_object())
        throw FormatError("$: expected an object");
    if (j.contains("format") && j.at("format") != "twinheart/1")
        throw FormatError("$.format: unsupported format " + j.at("format").dump());
    int p = as_int(field(j, "p", "$"), "$.p");
    if (!Fp::is_prime(p))
        throw FormatError("$.p: " + std::to_string(p) + " is not a supported prime");
    const json& names_j = field(j, "indecomposables", "$");
    if (!names_j.is_array())
        throw FormatError("$.indecomposables: expected an array");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < names_j.size(); ++i) {
        if (!names_j[i].is_string())
            throw FormatError("$.indecomposables[" + std::to_string(i) + "]: expected a string");
        names.push_back(names_j[i].get<std::string>());
    }
    const int n = int(names.size());
    const json& dims_j = field(j, "hom_dims", "$");
    if (!dims_j.is_array() || int(dims_j.size()) != n)
        throw FormatError("$.hom_dims: expected " + std::to_string(n) + " rows");
    std::vector<std::vector<int>> dims;
    for (int i = 0; i < n; ++i)
        dims.push_back(as_ints(dims_j[i], "$.hom_dims[" + std::to_string(i) + "]"));
    for (int i = 0; i < n; ++i)
        if (int(dims[i].size()) != n)
            throw FormatError("$.hom_dims[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");

    std::vector<Vec> comp(std::size_t(n) * n * n);
    const json& comp_j = field(j, "composition", "$");
    if (!comp_j.is_array())
        throw FormatError("$.composition: expected an array");
    std::vector<bool> seen(comp.size(), false);
    for (std::size_t e = 0; e < comp_j.size(); ++e) {
        std::string path = "$.composition[" + std::to_string(e) + "]";
        auto ijk = as_ints(field(comp_j[e], "ijk", path), path + ".ijk");
        if (ijk.size() != 3)
            throw FormatError(path + ".ijk: expected three indices");
        for (int v : ijk)
            if (v < 0 || v >= n)
                throw FormatError(path + ".ijk: index out of range");
        std::size_t idx = (std::size_t(ijk[0]) * n + ijk[1]) * n + ijk[2];
        if (seen[idx])
            throw FormatError(path + ": duplicate tensor");
        seen[idx] = true;
        comp[idx] = as_ints(field(comp_j[e], "tensor", path), path + ".tensor");
    }
    const json& ids_j = field(j, "identities", "$");
    if (!ids_j.is_array() || int(ids_j.size()) != n)
        throw FormatError("$.identities: expected " + std::to_string(n) + " entries");
    std::vector<Vec> ids;
    for (int i = 0; i < n; ++i)
        ids.push_back(as_ints(ids_j[i], "$.identities[" + std::to_string(i) + "]"));
    LinearCategory cat(p, names, dims, std::move(comp), std::move(ids));

    const json& shift_j = field(j, "shift", "$");
    auto perm = as_ints(field(shift_j, "perm", "$.shift"), "$.shift.perm");
    std::vector<Matrix> mats(std::size_t(n) * n);
    const json& mats_j = field(shift_j, "matrices", "$.shift");
    if (!mats_j.is_array())
        throw FormatError("$.shift.matrices: expected an array");
    for (std::size_t e = 0; e < mats_j.size(); ++e) {
        std::string path = "$.shift.matrices[" + std::to_string(e) + "]";
        auto ij = as_ints(field(mats_j[e], "ij", path), path + ".ij");
        if (ij.size() != 2 || ij[0] < 0 || ij[0] >= n || ij[1] < 0 || ij[1] >= n)
            throw FormatError(path + ".ij: bad index pair");
        int rows = as_int(field(mats_j[e], "rows", path), path + ".rows");
        int cols = as_int(field(mats_j[e], "cols", path), path + ".cols");
        auto data = as_ints(field(mats_j[e], "data", path), path + ".data");
        if (rows < 0 || cols < 0 || data.size() != std::size_t(rows) * cols)
            throw FormatError(path + ": data does not match rows x cols");
        Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m(r, c) = data[std::size_t(r) * cols + c];
        mats[std::size_t(ij[0]) * n + ij[1]] = m;
    }

    std::shared_ptr<const ConeProcedure> proc;
    if (j.contains("cone_procedure")) {
        const json& pj = j.at("cone_procedure");
        const json& name = field(pj, "name", "$.cone_procedure");
        if (!name.is_string())
            throw FormatError("$.cone_procedure.name: expected a string");
        std::vector<std::pair<std::string, int>> params;
        if (pj.contains("params"))
            for (const auto& [k, v] : pj.at("params").items())
                params.emplace_back(k, as_int(v, "$.cone_procedure.params." + k));
        proc = make_cone_procedure(name.get<std::string>(), params);
    }

    std::map<std::string, Triangle> table;
    if (j.contains("cone_table")) {
        const json& tj = j.at("cone_table");
        if (!tj.is_array())
            throw FormatError("$.cone_table: expected an array");
        for (std::size_t e = 0; e < tj.size(); ++e) {
            std::string path = "$.cone_table[" + std::to_string(e) + "]";
            auto obj = [&](const char* key) {
                auto v = as_ints(field(tj[e], key, path), path + "." + key);
                for (int id : v)
                    if (id < 0 || id >= n)
                        throw FormatError(path + "." + key + ": id out of range");
                if (!std::is_sorted(v.begin(), v.end()))
                    throw FormatError(path + "." + key + ": summands must be sorted");
                return Obj(v);
            };
            Obj a = obj("a"), b = obj("b"), c = obj("c");
            Obj a1;
            {
                std::vector<int> shifted;
                for (int id : a.summands())
                    shifted.push_back(perm.at(id));
                a1 = Obj(shifted);
            }
            auto mor = [&](const char* key, const Obj& x, const Obj& y) {
                auto v = as_ints(field(tj[e], key, path), path + "." + key);
                if (int(v.size()) != cat.hom_dim(x, y))
                    throw FormatError(path + "." + key + ": wrong number of coordinates");
                return cat.from_coords(x, y, v);
            };
            Triangle tri{a, b, c, mor("f", a, b), mor("g", b, c), mor("h", c, a1)};
            table.emplace(morphism_key(tri.f), tri);
        }
    }
    return TriangulatedStructure(std::move(cat), std::move(perm), std::move(mats), std::move(proc),
                                 std::move(table));
}

std::string dump_canonical(const json& j)
{
    return j.dump(1) + "\n";
}

void save_structure(const TriangulatedStructure& t, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write " + path);
    out << dump_canonical(to_json(t));
}

TriangulatedStructure load_structure(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    return structure_from_json(j);
}

TriangulatedStructure load_fixture(const std::string& path)
{
    TriangulatedStructure t = load_structure(path);
    ValidationReport rep = validate_category(t.cat());
    if (rep.ok()) {
        for (const auto& [key, tri] : t.cone_table())
            rep.append(validate_triangle(t, tri));
        rep.append(validate_triangulation(t));
    }
    if (!rep.ok())
        throw ValidationError(path + " failed validation (" + std::to_string(rep.issues.size()) + " issues)", rep);
    return t;
}

}  // namespace twinheart
