#include "support.hpp"

#include "twinheart/io.hpp"

namespace twinheart::testing {

using nlohmann::json;

TriangulatedStructure with_procedure(const TriangulatedStructure& t, std::shared_ptr<const ConeProcedure> proc)
{
    std::vector<Matrix> mats;
    for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
            mats.push_back(t.shift_matrix(i, j));
    return TriangulatedStructure(t.cat(), t.shift_perm(), std::move(mats), std::move(proc), t.cone_table());
}

Triangle EditedCone::cone(const TriangulatedStructure& t, const Mor& f) const
{
    Triangle tri = inner_->cone(t, f);
    edit_(t, tri);
    return tri;
}

bool structure_validates(const TriangulatedStructure& t)
{
    ValidationReport rep = validate_category(t.cat());
    if (rep.ok())
        rep.append(validate_triangulation(t));
    return rep.ok();
}

bool json_validates(const json& j)
{
    try {
        return structure_validates(structure_from_json(j));
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<Mutant> mutation_controls(const TriangulatedStructure& t)
{
    const json base = to_json(t);
    const int p = t.cat().p();
    std::vector<Mutant> out;

    out.push_back({"flipped structure constant", [base, p] {
                       json j = base;
                       for (json& e : j["composition"]) {
                           auto ijk = e["ijk"].get<std::vector<int>>();
                           if (ijk[0] != ijk[1] && !e["tensor"].empty()) {
                               e["tensor"][0] = (e["tensor"][0].get<int>() + 1) % p;
                               return !json_validates(j);
                           }
                       }
                       return false;
                   }});
    out.push_back({"flipped identity coefficient", [base, p] {
                       json j = base;
                       j["identities"][0][0] = (j["identities"][0][0].get<int>() + 1) % p;
                       return !json_validates(j);
                   }});
    out.push_back({"broken shift matrix", [base, p] {
                       json j = base;
                       for (json& m : j["shift"]["matrices"]) {
                           auto ij = m["ij"].get<std::vector<int>>();
                           if (ij[0] == ij[1] && !m["data"].empty()) {
                               m["data"][0] = (m["data"][0].get<int>() + 1) % p;
                               return !json_validates(j);
                           }
                       }
                       return false;
                   }});
    out.push_back({"broken shift permutation", [base] {
                       json j = base;
                       auto& perm = j["shift"]["perm"];
                       if (perm.size() < 2)
                           return false;
                       std::swap(perm[0], perm[1]);
                       return !json_validates(j);
                   }});
    out.push_back({"cone with g := 0", [&t] {
                       auto proc = std::make_shared<EditedCone>(t.procedure(), [](const TriangulatedStructure& s,
                                                                                  Triangle& tri) {
                           tri.g = s.cat().zero(tri.b, tri.c);
                       });
                       return !structure_validates(with_procedure(t, proc));
                   }});
    out.push_back({"cone with h := 0", [&t] {
                       auto proc = std::make_shared<EditedCone>(t.procedure(), [](const TriangulatedStructure& s,
                                                                                  Triangle& tri) {
                           tri.h = s.cat().zero(tri.c, s.shift(tri.a));
                       });
                       return !structure_validates(with_procedure(t, proc));
                   }});
    return out;
}

}  // namespace twinheart::testing
