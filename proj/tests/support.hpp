#pragma once

// Deliberately broken substrates used as negative controls.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinheart/tricat.hpp"

namespace twinheart::testing {

// Rebuilds t with a different cone procedure.
TriangulatedStructure with_procedure(const TriangulatedStructure& t, std::shared_ptr<const ConeProcedure> proc);

// Wraps a cone procedure and edits every triangle it returns.
class EditedCone : public ConeProcedure {
public:
    using Edit = std::function<void(const TriangulatedStructure&, Triangle&)>;
    EditedCone(std::shared_ptr<const ConeProcedure> inner, Edit edit) : inner_(std::move(inner)), edit_(std::move(edit)) {}
    std::string name() const override { return inner_->name(); }
    Triangle cone(const TriangulatedStructure& t, const Mor& f) const override;

private:
    std::shared_ptr<const ConeProcedure> inner_;
    Edit edit_;
};

struct Mutant {
    std::string name;
    // Either a JSON encoding that must be rejected on load or by the
    // validators, or a structure that must fail validation.
    std::function<bool()> rejected;
};

// Mutation controls derived from a valid structure: a flipped structure
// constant, a flipped identity coefficient, a broken shift matrix, a broken
// shift permutation, cones with g := 0 and with h := 0.
std::vector<Mutant> mutation_controls(const TriangulatedStructure& t);

// Validators on a JSON encoding; false if loading throws or any issue is found.
bool json_validates(const nlohmann::json& j);
bool structure_validates(const TriangulatedStructure& t);

}  // namespace twinheart::testing
