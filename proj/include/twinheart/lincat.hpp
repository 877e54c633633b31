#pragma once

// Finite F_p-linear additive categories given by structure constants.
//
// Objects are formal direct sums of indecomposables, kept as sorted
// multisets. A morphism X -> Y is a block matrix: for every pair of
// (source position s, target position t) a coordinate vector in the
// chosen basis of hom(x_s, y_t). Blocks are stored flat, source-major.

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twinheart/linalg.hpp"

namespace twinheart {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EnumerationBudgetError : public std::runtime_error {
public:
    EnumerationBudgetError(int dimension, std::uint64_t cap);
    int dimension() const { return dim_; }

private:
    int dim_;
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string s) { issues.push_back(std::move(s)); }
    void append(const ValidationReport& other);
};

class Obj {
public:
    Obj() = default;
    explicit Obj(std::vector<int> summands);
    static Obj single(int id) { return Obj({id}); }

    const std::vector<int>& summands() const { return ids_; }
    int size() const { return int(ids_.size()); }
    bool is_zero() const { return ids_.empty(); }
    int operator[](int pos) const { return ids_[pos]; }
    int multiplicity(int id) const;

    auto operator<=>(const Obj&) const = default;

private:
    std::vector<int> ids_;
};

// X ⊕ Y together with where the summands of each side landed.
struct DirectSum {
    Obj obj;
    std::vector<int> first_pos;
    std::vector<int> second_pos;
};
DirectSum direct_sum(const Obj& x, const Obj& y);

struct Mor {
    Obj src;
    Obj dst;
    Vec coords;

    bool operator==(const Mor&) const = default;
};

struct HomBasis {
    Obj src;
    Obj dst;
    std::vector<Mor> elems;
    int dim() const { return int(elems.size()); }
};

class LinearCategory {
public:
    // comp[(i*n + j)*n + k] holds the tensor for hom(j,k) x hom(i,j) -> hom(i,k)
    // laid out as [b][a][c]: coefficient of basis c of hom(i,k) in b∘a.
    LinearCategory(int p, std::vector<std::string> names,
                   std::vector<std::vector<int>> hom_dims,
                   std::vector<Vec> comp, std::vector<Vec> identities);

    const Fp& field() const { return f_; }
    int p() const { return f_.p(); }
    int size() const { return n_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int hom_dim(int i, int j) const { return dims_[std::size_t(i) * n_ + j]; }
    const Vec& identity_coeffs(int i) const { return ids_[i]; }
    const Vec& comp_tensor(int i, int j, int k) const { return comp_[(std::size_t(i) * n_ + j) * n_ + k]; }
    int comp_coeff(int i, int j, int k, int b, int a, int c) const;
    // Coordinates of (basis b of hom(j,k)) ∘ (basis a of hom(i,j)).
    Vec compose_basis(int i, int j, int k, int b, int a) const;
    // Composite of arbitrary coordinate vectors on indecomposables.
    Vec compose_indec(int i, int j, int k, const Vec& g, const Vec& f) const;

    int hom_dim(const Obj& x, const Obj& y) const;
    std::size_t block_offset(const Obj& x, const Obj& y, int s, int t) const;
    Vec block(const Mor& m, int s, int t) const;
    void set_block(Mor& m, int s, int t, const Vec& v) const;

    Mor zero(const Obj& x, const Obj& y) const;
    Mor identity(const Obj& x) const;
    Mor from_coords(const Obj& x, const Obj& y, Vec coords) const;
    Mor compose(const Mor& g, const Mor& f) const;
    Mor add(const Mor& a, const Mor& b) const;
    Mor sub(const Mor& a, const Mor& b) const;
    Mor scale(int c, const Mor& a) const;
    Mor neg(const Mor& a) const { return scale(f_.neg(1), a); }

    // Canonical injection/projection of a direct sum summand.
    Mor injection(const DirectSum& ds, bool first) const;
    Mor projection(const DirectSum& ds, bool first) const;
    // [f g] : X ⊕ Y -> Z  and  [f; g] : Z -> X ⊕ Y
    Mor row_pair(const DirectSum& ds, const Mor& f, const Mor& g) const;
    Mor column_pair(const DirectSum& ds, const Mor& f, const Mor& g) const;
    Mor sum_map(const DirectSum& src, const DirectSum& dst, const Mor& f, const Mor& g) const;

    HomBasis hom_space(const Obj& x, const Obj& y) const;

    // Matrices (acting on coordinate columns) of g∘- : hom(x, A) -> hom(x, B)
    // and -∘f : hom(B, y) -> hom(A, y).
    Matrix post_matrix(const Mor& g, const Obj& x) const;
    Matrix pre_matrix(const Mor& f, const Obj& y) const;

    void check_obj(const Obj& x) const;
    std::string describe(const Obj& x) const;
    std::string describe(const Mor& m) const;

private:
    Fp f_;
    int n_;
    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<Vec> comp_;
    std::vector<Vec> ids_;
};

// Associativity on every basis triple, both identity laws, local
// endomorphism rings and pairwise non-isomorphic indecomposables.
ValidationReport validate_category(const LinearCategory& cat);

std::uint64_t default_enumeration_cap();

// Visits all p^dim morphisms x -> y once each. Throws
// EnumerationBudgetError when p^dim exceeds cap. visit returns false to stop.
void enumerate_morphisms(const LinearCategory& cat, const Obj& x, const Obj& y,
                         const std::function<bool(const Mor&)>& visit,
                         std::uint64_t cap = default_enumeration_cap());

// Visits every vector of the given span (p^k of them).
void enumerate_span(const Fp& f, const std::vector<Vec>& gens, int ambient,
                    const std::function<bool(const Vec&)>& visit,
                    std::uint64_t cap = default_enumeration_cap());

std::uint64_t checked_power(int p, int dim, std::uint64_t cap);

}  // namespace twinheart
