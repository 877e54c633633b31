#pragma once

// Brute-force checks on H̄ = H/W: epi/mono by rank, oracle kernels and
// cokernels found by search, pullbacks and pushouts, and the property
// sweeps (preabelian, semi-abelian, integral, abelian, adjoint laws).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinheart/heart.hpp"

namespace twinheart {

// Deliberate defects used as negative controls for the semi-abelian and
// integral checkers.
enum class Mutation {
    none,
    zero_square_object,    // pullback / pushout object replaced by 0
    dropped_square_leg,    // the leg opposite δ (resp. α) replaced by 0
    unreflected_cokernel,  // cokernel taken as m_f (kernel as ℓ_f), skipping τ±
};
const char* to_string(Mutation m);
std::optional<Mutation> mutation_from_string(const std::string& s);

struct VerifyOptions {
    // Test objects are sums of up to this many nonzero indecomposables of H̄.
    int max_summands = 2;
    // Nested sweeps (pullbacks, pushouts) run exhaustively over
    // indecomposables, then draw nested_budget random instances in which
    // some object is a sum of two; nested_cap bounds the morphisms taken
    // per hom space when collecting the first leg. With nested_exhaustive
    // set, every instance over sums of two is visited instead.
    std::uint64_t nested_budget = 256;
    std::uint64_t nested_cap = 4;
    bool nested_exhaustive = false;
    // Hom spaces with more than this many quotient morphisms are sampled.
    std::uint64_t morphism_cap = 64;
    // Candidate morphisms tried by the oracle for one candidate object.
    std::uint64_t oracle_cap = std::uint64_t(1) << 14;
    std::uint64_t seed = 1;
    StarBudget budget;
    Mutation mutation = Mutation::none;
};

struct SearchStats {
    std::uint64_t instances = 0;
    std::uint64_t sampled_spaces = 0;  // hom spaces visited by sampling
    std::uint64_t skipped = 0;         // instances whose precondition failed
};

struct PropertyVerdict {
    std::string name;
    Verdict verdict = Verdict::holds;
    std::string reason;
    // {"property", "twin", "args"}; set when verdict is fails or indeterminate.
    nlohmann::json counterexample;
    SearchStats stats;
    double seconds = 0;
};

nlohmann::json verdict_json(const PropertyVerdict& v);

struct Outcome {
    Verdict verdict = Verdict::holds;
    std::string why;
    static Outcome ok() { return {}; }
    static Outcome fail(std::string w) { return {Verdict::fails, std::move(w)}; }
    static Outcome unknown(std::string w) { return {Verdict::indeterminate, std::move(w)}; }
};

struct Square {
    Obj p;
    Mor alpha;  // P -> B   (pullback)  or  C -> P   (pushout)
    Mor beta;   // P -> C   (pullback)  or  B -> P   (pushout)
};

struct OracleResult {
    Verdict verdict = Verdict::indeterminate;
    std::optional<Mor> map;
    std::uint64_t candidates = 0;
};

class Verifier {
public:
    Verifier(const Heart& heart, VerifyOptions opt = {});

    const Heart& heart() const { return *heart_; }
    const QuotientCategory& quotient() const { return heart_->quotient(); }
    const LinearCategory& cat() const { return heart_->cat(); }
    const VerifyOptions& options() const { return opt_; }

    // Indecomposables of H that are nonzero in H̄; the test objects of the
    // rank criteria.
    const std::vector<int>& h_indecs() const { return hy_; }
    // Sums of up to k elements of h_indecs(), smallest first.
    std::vector<Obj> test_objects(int k) const;

    bool is_epi(const Mor& f) const;
    bool is_mono(const Mor& f) const;
    // Universal property of c: B -> Q as a cokernel of f: A -> B in H̄,
    // decided by rank against every test indecomposable.
    bool is_cokernel(const Mor& f, const Mor& c) const;
    bool is_kernel(const Mor& f, const Mor& k) const;

    OracleResult oracle_cokernel(const Mor& f) const;
    OracleResult oracle_kernel(const Mor& f) const;

    // Kernel of (γ, -δ): B ⊕ C -> D, and cokernel of (α; -β): A -> B ⊕ C.
    Square pullback(const Mor& gamma, const Mor& delta) const;
    Square pushout(const Mor& alpha, const Mor& beta) const;
    // Commutation plus universality by rank; independent of how the square
    // was built.
    bool is_pullback(const Mor& gamma, const Mor& delta, const Square& sq) const;
    bool is_pushout(const Mor& alpha, const Mor& beta, const Square& sq) const;

    // Heart cokernel / kernel, with the mutation applied when requested.
    Mor cokernel(const Mor& f) const;
    Mor kernel(const Mor& f) const;

    // Visits quotient morphisms x -> y (all of them, or a deterministic
    // sample when there are more than the cap). Returns true when sampled.
    bool for_each_qmor(const Obj& x, const Obj& y, const std::function<bool(const Mor&)>& visit) const;

    // Per-instance checks. Each is self-contained so that a stored
    // counterexample can be replayed.
    Outcome cokernel_oracle(const Mor& f) const;
    Outcome kernel_oracle(const Mor& f) const;
    Outcome epi_criterion(const Mor& f) const;
    Outcome mono_criterion(const Mor& f) const;
    Outcome weak_cokernels(const Mor& f) const;
    Outcome factoring_epi_mono(const Mor& f) const;
    Outcome cokernel_cone_terms(const Mor& f) const;
    Outcome reflected_epi(const Mor& x) const;
    Outcome left_semi_abelian(const Mor& g, const Mor& gamma) const;
    Outcome right_semi_abelian(const Mor& g, const Mor& beta) const;
    Outcome left_integral(const Mor& delta, const Mor& gamma) const;
    Outcome right_integral(const Mor& alpha, const Mor& beta) const;
    Outcome abelian(const Mor& f) const;
    Outcome heart_object(const Obj& c) const;
    Outcome adjoint_object(const Obj& c) const;
    Outcome tau_functor(const Mor& g, const Mor& f) const;

    // Sweeps.
    PropertyVerdict check_preabelian() const;  // constructions + oracle agreement
    PropertyVerdict check_epi_criterion() const;
    PropertyVerdict check_weak_cokernels() const;
    PropertyVerdict check_factoring_epi_mono() const;
    PropertyVerdict check_cokernel_cone_terms() const;
    PropertyVerdict check_reflected_epi() const;
    PropertyVerdict check_semi_abelian(bool left) const;
    PropertyVerdict check_integral(bool left) const;
    PropertyVerdict check_abelian() const;
    PropertyVerdict check_heart_objects() const;
    PropertyVerdict check_adjoint_laws() const;
    PropertyVerdict check_tau_functor() const;

    Outcome replay(const nlohmann::json& counterexample) const;

private:
    template <class F>
    PropertyVerdict sweep(const std::string& name, F&& body) const;
    // First legs are (argument, morphism) pairs; second legs run into
    // m.dst (left) or out of m.src (right).
    using Leg = std::pair<Mor, Mor>;
    using FirstLegs = std::function<std::vector<Leg>(const std::vector<Obj>&, bool sums_only, std::uint64_t cap)>;
    using Instance = std::function<Outcome(const Mor&, const Mor&)>;
    PropertyVerdict nested_sweep(const std::string& name, bool left, const FirstLegs& firsts,
                                 const Instance& inst) const;
    std::vector<Obj> all_objects() const;

    const Heart* heart_;
    VerifyOptions opt_;
    std::vector<int> hy_;
};

// U ⊆ S ∗ T or T ⊆ U ∗ V, tested on indecomposables.
Verdict condition_double(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const StarBudget& budget = {});

// For a cluster-tilting pair (T,T): nonzero objects and hom dimensions of
// H̄ against C/T computed from minimal right T-approximations.
Outcome cluster_tilting_quotient(const Heart& heart);

// All indecomposables of H lie in W.
bool heart_is_zero(const Heart& heart);

nlohmann::json mor_json(const Mor& m);
Mor mor_from_json(const LinearCategory& cat, const nlohmann::json& j);

}  // namespace twinheart
