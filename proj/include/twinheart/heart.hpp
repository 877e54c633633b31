#pragma once

// Ideal quotients by W and the constructions on them: K_C, Z_C, τ±,
// σ_U / σ_T, M_f, L_f and kernels / cokernels in H̄.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinheart/pairs.hpp"

namespace twinheart {

// C / [N] for a subcategory N, restricted to the objects of `allowed`.
// Quotient coordinates of hom(X,Y) are the concatenation, block by block,
// of the coset coordinates of hom(x_s, y_t) modulo [N](x_s, y_t).
class QuotientCategory {
public:
    QuotientCategory(const TriangulatedStructure& t, Subcategory ideal, Subcategory allowed);

    const TriangulatedStructure& ambient() const { return *t_; }
    const LinearCategory& cat() const { return t_->cat(); }
    const Subcategory& ideal() const { return ideal_; }
    const Subcategory& allowed() const { return allowed_; }

    int qdim(int i, int j) const { return qdims_[std::size_t(i) * n_ + j]; }
    int qdim(const Obj& x, const Obj& y) const;
    const Subspace& ideal_space(int i, int j) const { return ideals_[std::size_t(i) * n_ + j]; }

    Vec qcoords(const Mor& f) const;
    Mor lift(const Obj& x, const Obj& y, const Vec& q) const;
    bool is_zero(const Mor& f) const { return twinheart::is_zero(qcoords(f)); }
    bool equal(const Mor& a, const Mor& b) const { return is_zero(cat().sub(a, b)); }
    // f ∈ [N](X,Y)
    bool in_ideal(const Mor& f) const { return is_zero(f); }
    // X ≅ 0 in the quotient
    bool is_zero_object(const Obj& x) const { return is_zero(cat().identity(x)); }

    // g∘- : qhom(X, A) -> qhom(X, B) and -∘f : qhom(B, Y) -> qhom(A, Y)
    Matrix qpost(const Mor& g, const Obj& x) const;
    Matrix qpre(const Mor& f, const Obj& y) const;

    // Indecomposables of `allowed` that are not in the ideal.
    std::vector<int> nonzero_indecs() const;

private:
    const TriangulatedStructure* t_;
    Subcategory ideal_, allowed_;
    int n_;
    std::vector<Subspace> ideals_;
    std::vector<int> qdims_;
};

// If φ̄ is invertible in the quotient, returns an inverse.
std::optional<Mor> quotient_inverse(const QuotientCategory& q, const Mor& phi);

struct StepTrace {
    std::string label;
    Triangle triangle;
};

struct Construction {
    Obj object;  // K_C, Z_C, M_f, L_f, U_C or T_C
    Mor map;     // k_C: K_C -> C, z_C: C -> Z_C, m_f: B -> M_f, ...
    std::vector<StepTrace> steps;
};

class Heart {
public:
    Heart(const TriangulatedStructure& t, const TwinCotorsionPair& twin);

    const TriangulatedStructure& ambient() const { return *t_; }
    const TwinCotorsionPair& twin() const { return *twin_; }
    // C̄ = C / W on all objects; membership of C⁻, C⁺, H is separate.
    const QuotientCategory& quotient() const { return q_; }
    const LinearCategory& cat() const { return t_->cat(); }

    bool in_cminus(const Obj& x) const { return twin_->cminus.contains(x); }
    bool in_cplus(const Obj& x) const { return twin_->cplus.contains(x); }
    bool in_h(const Obj& x) const { return twin_->h.contains(x); }
    bool in_w(const Obj& x) const { return twin_->w.contains(x); }

    const Construction& construct_K(const Obj& c) const;
    const Construction& construct_Z(const Obj& c) const;
    Construction sigma_U(const Obj& c) const;  // map u_C: U_C -> C
    Construction sigma_T(const Obj& c) const;  // map t_C: C -> T_C
    // f: A -> B with A ∈ C⁻ (resp. B ∈ C⁺); throws std::invalid_argument otherwise.
    Construction construct_M(const Mor& f) const;
    Construction construct_L(const Mor& f) const;

    // τ⁺(f̄): Z_A -> Z_B, the unique morphism with τ⁺(f̄)∘z̄_A = z̄_B∘f̄.
    std::optional<Mor> tau_plus(const Mor& f) const;
    // τ⁻(f̄): K_A -> K_B, the unique morphism with k̄_B∘τ⁻(f̄) = f̄∘k̄_A.
    std::optional<Mor> tau_minus(const Mor& f) const;

    // cokernel: B -> Z_{M_f}, kernel: K_{L_f} -> A. f must lie in H.
    Mor cokernel(const Mor& f) const;
    Mor kernel(const Mor& f) const;

    // Witness triangles, memoized per object.
    const Triangle& st(const Obj& c) const;
    const Triangle& uv(const Obj& c) const;
    const std::optional<Triangle>& cminus_witness(const Obj& c) const;
    const std::optional<Triangle>& cplus_witness(const Obj& c) const;

private:
    const TriangulatedStructure* t_;
    const TwinCotorsionPair* twin_;
    QuotientCategory q_;
    // Per-object caches. A Heart is used from one thread at a time.
    mutable std::map<Obj, Triangle> st_, uv_;
    mutable std::map<Obj, std::optional<Triangle>> cm_, cp_;
    mutable std::map<Obj, Construction> k_, z_;
};

// Solves x∘a = b for x: dst(a) -> dst(b) in the quotient (b and a share a
// source); returns nullopt if there is no solution, and also reports
// whether the solution is unique.
struct QuotientSolve {
    std::optional<Mor> x;
    bool unique = false;
};
QuotientSolve solve_pre(const QuotientCategory& q, const Mor& a, const Mor& b);
// Solves a∘x = b for x: src(b) -> src(a).
QuotientSolve solve_post(const QuotientCategory& q, const Mor& a, const Mor& b);

// Renders a construction trace as indented text.
std::string render_trace(const LinearCategory& cat, const std::string& title, const Construction& c);

}  // namespace twinheart
