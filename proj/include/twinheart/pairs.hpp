#pragma once

// Cotorsion pairs, twin cotorsion pairs and the derived classes
// W, C⁻, C⁺, H.

#include <optional>
#include <string>
#include <vector>

#include "twinheart/tricat.hpp"

namespace twinheart {

class NotATwinError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EngineBugError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct CotorsionPair {
    Subcategory u;
    Subcategory v;
    // witnesses[i]: U -> X_i -> V[1] -> U[1] for indecomposable i
    std::vector<Triangle> witnesses;
};

struct PairCheck {
    Verdict verdict = Verdict::fails;
    std::string reason;
    std::optional<CotorsionPair> pair;
};

PairCheck is_cotorsion_pair(const TriangulatedStructure& t, const Subcategory& u, const Subcategory& v,
                            const StarBudget& budget = {});

struct EnumerationOptions {
    int max_indecomposables = 16;
    int jobs = 1;
    StarBudget budget;
};

struct PairEnumeration {
    std::vector<CotorsionPair> pairs;      // sorted by (U key, V key)
    std::vector<Subcategory> indeterminate;  // U candidates whose check ran out of budget
};

// One candidate per subset U, with V := (U[-1])^⊥.
PairEnumeration enumerate_cotorsion_pairs(const TriangulatedStructure& t, const EnumerationOptions& opt = {});

// Every pair of subsets (U, V), checked directly. Returns (U, V) sorted.
std::vector<std::pair<Subcategory, Subcategory>> brute_force_cotorsion_pairs(const TriangulatedStructure& t,
                                                                             int max_indecomposables = 8);

struct PairFlags {
    bool t_structure = false;     // U[1] ⊆ U
    bool co_t_structure = false;  // U[-1] ⊆ U
    bool rigid = false;           // Ext¹(U,U) = 0
    bool cluster_tilting = false;  // U = V
    // the equivalent reformulations, each of which must agree with its flag
    bool t_alt = false;     // V[-1] ⊆ V
    bool co_t_alt = false;  // V[1] ⊆ V
    bool rigid_alt = false;  // U ⊆ V
    bool consistent() const { return t_structure == t_alt && co_t_structure == co_t_alt && rigid == rigid_alt; }
};

PairFlags classify_pair(const TriangulatedStructure& t, const CotorsionPair& pair);

struct TwinLink {
    bool ext_vanishes = false;  // Ext¹(S,V) = 0
    bool s_in_u = false;
    bool v_in_t = false;
    bool agree() const { return ext_vanishes == s_in_u && s_in_u == v_in_t; }
};

TwinLink twin_link(const TriangulatedStructure& t, const CotorsionPair& first, const CotorsionPair& second);

struct TwinCotorsionPair {
    CotorsionPair first;   // (S, T)
    CotorsionPair second;  // (U, V)
    Subcategory w, cminus, cplus, h;

    const Subcategory& s() const { return first.u; }
    const Subcategory& t() const { return first.v; }
    const Subcategory& u() const { return second.u; }
    const Subcategory& v() const { return second.v; }
    bool single() const { return first.u == second.u; }
    std::string key() const { return first.u.key() + "/" + second.u.key(); }
};

// Throws NotATwinError when the link fails and EngineBugError when the
// three equivalent link conditions disagree.
TwinCotorsionPair make_twin(const TriangulatedStructure& t, const CotorsionPair& first, const CotorsionPair& second);

struct Membership {
    Verdict in_cminus = Verdict::indeterminate;
    Verdict in_cplus = Verdict::indeterminate;
    bool in_h = false;
    bool in_w = false;
    std::optional<Triangle> cminus_witness;  // S[-1] -> C -> W -> S
    std::optional<Triangle> cplus_witness;   // W -> C -> V[1] -> W[1]
};

// Decided by the extension search on C itself, not summand by summand.
Membership membership_Cpm(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c,
                          const StarBudget& budget = {});

// Witness triangles used by the constructions; C may be any object.
// (S,T):  S[-1] -> C -> T -> S
// (U,V):  U -> C -> V[1] -> U[1]
// C⁻:     S[-1] -> C -> W -> S   (requires C ∈ C⁻)
// C⁺:     W -> C -> V[1] -> W[1] (requires C ∈ C⁺)
Triangle st_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c);
Triangle uv_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c);
std::optional<Triangle> cminus_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c);
std::optional<Triangle> cplus_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c);

// Span of all composites X -> N_i -> Y through indecomposables of N,
// computed per block; returned as a subspace of hom(X,Y) coordinates.
Subspace factoring_ideal(const LinearCategory& cat, const Subcategory& n, const Obj& x, const Obj& y);

// Property sweeps over the cones of all basis morphisms between
// indecomposables. Each returns a list of violations (empty = holds).
std::vector<std::string> check_extension_closure(const TriangulatedStructure& t, const TwinCotorsionPair& twin);
std::vector<std::string> check_approximation_factoring(const TriangulatedStructure& t, const TwinCotorsionPair& twin);
// Per-summand membership of the four classes agrees with membership of
// sums of two indecomposables.
std::vector<std::string> check_summand_closure(const TriangulatedStructure& t, const TwinCotorsionPair& twin);

}  // namespace twinheart
