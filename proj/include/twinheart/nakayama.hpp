#pragma once

// Stable module categories of self-injective Nakayama algebras.
//
// The algebra has m vertices on a cyclic quiver and Loewy length n. Its
// indecomposable modules are the uniserials U(i,l) with top at vertex i and
// length l; the non-projective ones (l < n) are the indecomposables of the
// stable category, named M(i,l). Homs, shift and cones are all computed in
// an explicit module model: graded vector spaces with a nilpotent arrow
// action x of degree +1.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twinheart/tricat.hpp"

namespace twinheart {

struct Uniserial {
    int top;
    int len;
    bool operator==(const Uniserial&) const = default;
};

// Finite-dimensional module with a vertex label per basis vector.
struct GradedModule {
    std::vector<int> vertex;
    Matrix x;  // arrow action, column = image of a basis vector
    int dim() const { return int(vertex.size()); }
};

class NakayamaAlgebra {
public:
    NakayamaAlgebra(int m, int n, int p);

    int m() const { return m_; }
    int n() const { return n_; }
    const Fp& field() const { return f_; }
    int indec_count() const { return m_ * (n_ - 1); }
    int id(int top, int len) const;
    Uniserial indec(int id) const;
    std::string name(int id) const;

    // Closed form: admissible k for the stable hom M(i,l) -> M(j,l'), each k
    // standing for the map sending the top b_0 to b_k.
    std::vector<int> stable_basis(int src, int dst) const;

    // Direct sum of uniserials in the given order, in the basis b_0..b_{l-1}
    // of each summand.
    GradedModule module_of(const std::vector<Uniserial>& parts) const;
    static std::vector<int> offsets(const std::vector<Uniserial>& parts);
    Uniserial injective_hull(Uniserial u) const { return {mod(u.top + u.len - n_), n_}; }

    // Module map of a stable morphism, using the chosen basis lifts.
    Matrix lift(const LinearCategory& cat, const Mor& f) const;

    // Decomposition into uniserials: the parts and a change of basis whose
    // columns are the string vectors x^a w of each part (parts in order).
    std::pair<std::vector<Uniserial>, Matrix> decompose(const GradedModule& mod) const;

    int mod(int v) const { return ((v % m_) + m_) % m_; }

private:
    int m_, n_;
    Fp f_;
};

class NakayamaConeProcedure : public ConeProcedure {
public:
    NakayamaConeProcedure(int m, int n) : m_(m), n_(n) {}
    std::string name() const override { return "nakayama_stable"; }
    std::vector<std::pair<std::string, int>> params() const override { return {{"m", m_}, {"n", n_}}; }
    Triangle cone(const TriangulatedStructure& t, const Mor& f) const override;

private:
    int m_, n_;
};

// Builds the stable category from the module model. Hom spaces and the
// shift action are computed by linear algebra in the module category and
// cross-checked against the closed-form bases; the result is not validated
// here (callers run validate_category / validate_triangulation).
TriangulatedStructure generate_nakayama_stable(int m, int n, int p);

// Named cone procedure lookup for serialized structures.
std::shared_ptr<const ConeProcedure> make_cone_procedure(const std::string& name,
                                                         const std::vector<std::pair<std::string, int>>& params);

}  // namespace twinheart
