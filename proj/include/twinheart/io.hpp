#pragma once

// Canonical JSON encoding of triangulated structures.
//
// {
//   "format": "twinheart/1",
//   "p": 2,
//   "indecomposables": ["X0", ...],
//   "hom_dims": [[...], ...],
//   "composition": [{"ijk": [i,j,k], "tensor": [...]}, ...],   // nonempty tensors only
//   "identities": [[...], ...],
//   "shift": {"perm": [...], "matrices": [{"ij": [i,j], "rows": r, "cols": c, "data": [...]}]},
//   "cone_procedure": {"name": "nakayama_stable", "params": {"m": 2, "n": 3}},
//   "cone_table": [{"a": [...], "b": [...], "c": [...], "f": [...], "g": [...], "h": [...]}]
// }
//
// Tensors and matrices are flat, row-major, entries in [0, p). Saving
// writes keys in sorted order with fixed indentation, so load followed by
// save reproduces the bytes of a saved file.

#include <string>

#include <json.hpp>
#include "twinheart/tricat.hpp"

namespace twinheart {

nlohmann::json to_json(const TriangulatedStructure& t);
// Throws FormatError with a JSON path on malformed input. Does not
// validate the category axioms.
TriangulatedStructure structure_from_json(const nlohmann::json& j);

std::string dump_canonical(const nlohmann::json& j);
void save_structure(const TriangulatedStructure& t, const std::string& path);
TriangulatedStructure load_structure(const std::string& path);

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, ValidationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// load_structure followed by validate_category and validate_triangulation;
// throws ValidationError listing every issue when either fails.
TriangulatedStructure load_fixture(const std::string& path);

}  // namespace twinheart
