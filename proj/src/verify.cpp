#include "twinheart/verify.hpp"

#include <chrono>
#include <random>
#include <set>

namespace twinheart {

using nlohmann::json;

const char* to_string(Mutation m)
{
    switch (m) {
    case Mutation::none: return "none";
    case Mutation::zero_square_object: return "zero_square_object";
    case Mutation::dropped_square_leg: return "dropped_square_leg";
    case Mutation::unreflected_cokernel: return "unreflected_cokernel";
    }
    return "?";
}

std::optional<Mutation> mutation_from_string(const std::string& s)
{
    for (Mutation m : {Mutation::none, Mutation::zero_square_object, Mutation::dropped_square_leg,
                       Mutation::unreflected_cokernel})
        if (s == to_string(m))
            return m;
    return std::nullopt;
}

json mor_json(const Mor& m)
{
    return {{"src", m.src.summands()}, {"dst", m.dst.summands()}, {"coords", m.coords}};
}

Mor mor_from_json(const LinearCategory& cat, const json& j)
{
    auto obj = [&](const char* key) {
        std::vector<int> ids = j.at(key).get<std::vector<int>>();
        Obj x(ids);
        cat.check_obj(x);
        return x;
    };
    Obj x = obj("src"), y = obj("dst");
    Vec c = j.at("coords").get<Vec>();
    if (int(c.size()) != cat.hom_dim(x, y))
        throw FormatError("morphism coordinates have the wrong length");
    return cat.from_coords(x, y, c);
}

json verdict_json(const PropertyVerdict& v)
{
    json j = {{"property", v.name},
              {"verdict", to_string(v.verdict)},
              {"instances", v.stats.instances},
              {"sampled_spaces", v.stats.sampled_spaces},
              {"skipped", v.stats.skipped}};
    if (!v.reason.empty())
        j["reason"] = v.reason;
    if (!v.counterexample.is_null())
        j["counterexample"] = v.counterexample;
    return j;
}

namespace {

Outcome skip()
{
    return {Verdict::holds, "skip"};
}

std::uint64_t fnv(std::uint64_t h, const std::vector<int>& v)
{
    for (int x : v) {
        h ^= std::uint64_t(std::uint32_t(x)) + 0x9e3779b97f4a7c15ull;
        h *= 0x100000001b3ull;
    }
    h ^= 0xff;
    h *= 0x100000001b3ull;
    return h;
}

Matrix negated(const Fp& f, Matrix m)
{
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            m(r, c) = f.neg(m(r, c));
    return m;
}

Matrix stack(const Matrix& a, const Matrix& b)
{
    Matrix m(a.rows() + b.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            m(r, c) = a(r, c);
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
            m(a.rows() + r, c) = b(r, c);
    return m;
}

Matrix beside(const Matrix& a, const Matrix& b)
{
    Matrix m(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c)
            m(r, c) = a(r, c);
        for (int c = 0; c < b.cols(); ++c)
            m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

std::vector<int> members_nonzero(const QuotientCategory& q, const Subcategory& s)
{
    std::vector<int> out;
    for (int i : s.members())
        if (!q.is_zero_object(Obj::single(i)))
            out.push_back(i);
    return out;
}

}  // namespace

Verifier::Verifier(const Heart& heart, VerifyOptions opt) : heart_(&heart), opt_(opt)
{
    hy_ = members_nonzero(heart.quotient(), heart.twin().h);
}

std::vector<Obj> Verifier::test_objects(int k) const
{
    std::vector<Obj> out;
    std::vector<int> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (!cur.empty())
            out.push_back(Obj(cur));
        if (left == 0)
            return;
        for (std::size_t i = from; i < hy_.size(); ++i) {
            cur.push_back(hy_[i]);
            rec(i, left - 1);
            cur.pop_back();
        }
    };
    rec(0, k);
    std::stable_sort(out.begin(), out.end(), [](const Obj& a, const Obj& b) { return a.size() < b.size(); });
    return out;
}

std::vector<Obj> Verifier::all_objects() const
{
    const int n = cat().size();
    std::vector<Obj> out;
    for (int i = 0; i < n; ++i)
        out.push_back(Obj::single(i));
    if (opt_.max_summands >= 2)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                out.push_back(Obj({i, j}));
    return out;
}

bool Verifier::for_each_qmor(const Obj& x, const Obj& y, const std::function<bool(const Mor&)>& visit) const
{
    const QuotientCategory& q = quotient();
    const int d = q.qdim(x, y);
    const int p = cat().p();
    if (checked_power(p, d, opt_.morphism_cap) != 0) {
        Vec v(d, 0);
        while (true) {
            if (!visit(q.lift(x, y, v)))
                return false;
            int i = 0;
            while (i < d && ++v[i] == p)
                v[i++] = 0;
            if (i == d)
                return false;
        }
    }
    std::mt19937_64 rng(fnv(fnv(opt_.seed, x.summands()), y.summands()));
    std::uniform_int_distribution<int> digit(0, p - 1);
    for (std::uint64_t s = 0; s < opt_.morphism_cap; ++s) {
        Vec v(d);
        for (int& c : v)
            c = digit(rng);
        if (!visit(q.lift(x, y, v)))
            break;
    }
    return true;
}

bool Verifier::is_epi(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    for (int y : hy_) {
        Matrix m = q.qpre(f, Obj::single(y));
        if (rank(cat().field(), m) != m.cols())
            return false;
    }
    return true;
}

bool Verifier::is_mono(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    for (int x : hy_) {
        Matrix m = q.qpost(f, Obj::single(x));
        if (rank(cat().field(), m) != m.cols())
            return false;
    }
    return true;
}

bool Verifier::is_cokernel(const Mor& f, const Mor& c) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    if (c.src != f.dst || !heart_->in_h(c.dst) || !q.is_zero(cat().compose(c, f)))
        return false;
    for (int y : hy_) {
        const Obj yo = Obj::single(y);
        Matrix mf = q.qpre(f, yo);
        const int n = mf.cols() - rank(fp, mf);
        Matrix mc = q.qpre(c, yo);
        if (mc.cols() != n || rank(fp, mc) != n)
            return false;
    }
    return true;
}

bool Verifier::is_kernel(const Mor& f, const Mor& k) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    if (k.dst != f.src || !heart_->in_h(k.src) || !q.is_zero(cat().compose(f, k)))
        return false;
    for (int x : hy_) {
        const Obj xo = Obj::single(x);
        Matrix mf = q.qpost(f, xo);
        const int n = mf.cols() - rank(fp, mf);
        Matrix mk = q.qpost(k, xo);
        if (mk.cols() != n || rank(fp, mk) != n)
            return false;
    }
    return true;
}

namespace {

// Multiplicity vectors over `ys` whose hom dimensions against every test
// object match `need`; dim(i, y) is the hom dimension from (or to) i.
void candidate_objects(const std::vector<int>& ys, const std::vector<int>& need,
                       const std::function<int(int, int)>& dim, const std::function<bool(const Obj&)>& visit)
{
    std::vector<int> rest = need, cur;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (stop)
            return;
        if (idx == ys.size()) {
            for (int r : rest)
                if (r != 0)
                    return;
            if (!visit(Obj(cur)))
                stop = true;
            return;
        }
        const int i = ys[idx];
        int added = 0;
        while (true) {
            rec(idx + 1);
            // add one more copy of i if it fits
            bool fits = true;
            for (std::size_t t = 0; t < ys.size(); ++t)
                if (dim(i, ys[t]) > rest[t])
                    fits = false;
            bool grows = false;
            for (std::size_t t = 0; t < ys.size(); ++t)
                grows = grows || dim(i, ys[t]) > 0;
            if (!fits || !grows || stop)
                break;
            for (std::size_t t = 0; t < ys.size(); ++t)
                rest[t] -= dim(i, ys[t]);
            cur.push_back(i);
            ++added;
        }
        for (int a = 0; a < added; ++a) {
            cur.pop_back();
            for (std::size_t t = 0; t < ys.size(); ++t)
                rest[t] += dim(i, ys[t]);
        }
    };
    rec(0);
}

}  // namespace

OracleResult Verifier::oracle_cokernel(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    OracleResult res;
    std::vector<int> need;
    for (int y : hy_) {
        Matrix mf = q.qpre(f, Obj::single(y));
        need.push_back(mf.cols() - rank(fp, mf));
    }
    bool exhausted = false;
    candidate_objects(hy_, need, [&](int i, int y) { return q.qdim(i, y); }, [&](const Obj& cand) {
        ++res.candidates;
        const int d = q.qdim(f.dst, cand);
        std::vector<Vec> gens = nullspace(fp, q.qpre(f, cand));
        if (checked_power(fp.p(), int(gens.size()), opt_.oracle_cap) == 0) {
            exhausted = true;
            return true;
        }
        enumerate_span(fp, gens, d, [&](const Vec& v) {
            Mor c = q.lift(f.dst, cand, v);
            for (int y : hy_) {
                Matrix mc = q.qpre(c, Obj::single(y));
                if (rank(fp, mc) != mc.cols())
                    return true;
            }
            res.map = c;
            return false;
        });
        return !res.map;
    });
    res.verdict = res.map ? Verdict::holds : exhausted ? Verdict::indeterminate : Verdict::fails;
    return res;
}

OracleResult Verifier::oracle_kernel(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    OracleResult res;
    std::vector<int> need;
    for (int x : hy_) {
        Matrix mf = q.qpost(f, Obj::single(x));
        need.push_back(mf.cols() - rank(fp, mf));
    }
    bool exhausted = false;
    candidate_objects(hy_, need, [&](int i, int x) { return q.qdim(x, i); }, [&](const Obj& cand) {
        ++res.candidates;
        const int d = q.qdim(cand, f.src);
        std::vector<Vec> gens = nullspace(fp, q.qpost(f, cand));
        if (checked_power(fp.p(), int(gens.size()), opt_.oracle_cap) == 0) {
            exhausted = true;
            return true;
        }
        enumerate_span(fp, gens, d, [&](const Vec& v) {
            Mor k = q.lift(cand, f.src, v);
            for (int x : hy_) {
                Matrix mk = q.qpost(k, Obj::single(x));
                if (rank(fp, mk) != mk.cols())
                    return true;
            }
            res.map = k;
            return false;
        });
        return !res.map;
    });
    res.verdict = res.map ? Verdict::holds : exhausted ? Verdict::indeterminate : Verdict::fails;
    return res;
}

Mor Verifier::cokernel(const Mor& f) const
{
    if (opt_.mutation == Mutation::unreflected_cokernel)
        return heart_->construct_M(f).map;
    return heart_->cokernel(f);
}

Mor Verifier::kernel(const Mor& f) const
{
    if (opt_.mutation == Mutation::unreflected_cokernel)
        return heart_->construct_L(f).map;
    return heart_->kernel(f);
}

Square Verifier::pullback(const Mor& gamma, const Mor& delta) const
{
    DirectSum ds = direct_sum(gamma.src, delta.src);
    Mor k = kernel(cat().row_pair(ds, gamma, cat().neg(delta)));
    Square sq{k.src, cat().compose(cat().projection(ds, true), k), cat().compose(cat().projection(ds, false), k)};
    if (opt_.mutation == Mutation::zero_square_object)
        sq = {Obj(), cat().zero(Obj(), gamma.src), cat().zero(Obj(), delta.src)};
    if (opt_.mutation == Mutation::dropped_square_leg)
        sq.alpha = cat().zero(sq.p, gamma.src);
    return sq;
}

Square Verifier::pushout(const Mor& alpha, const Mor& beta) const
{
    DirectSum ds = direct_sum(alpha.dst, beta.dst);
    Mor c = cokernel(cat().column_pair(ds, alpha, cat().neg(beta)));
    Square sq{c.dst, cat().compose(c, cat().injection(ds, false)), cat().compose(c, cat().injection(ds, true))};
    if (opt_.mutation == Mutation::zero_square_object)
        sq = {Obj(), cat().zero(beta.dst, Obj()), cat().zero(alpha.dst, Obj())};
    if (opt_.mutation == Mutation::dropped_square_leg)
        sq.alpha = cat().zero(beta.dst, sq.p);
    return sq;
}

bool Verifier::is_pullback(const Mor& gamma, const Mor& delta, const Square& sq) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    if (!heart_->in_h(sq.p) || !q.equal(cat().compose(gamma, sq.alpha), cat().compose(delta, sq.beta)))
        return false;
    for (int x : hy_) {
        const Obj xo = Obj::single(x);
        Matrix legs = stack(q.qpost(sq.alpha, xo), q.qpost(sq.beta, xo));
        Matrix cond = beside(q.qpost(gamma, xo), negated(fp, q.qpost(delta, xo)));
        const int n = cond.cols() - rank(fp, cond);
        if (legs.cols() != n || rank(fp, legs) != n)
            return false;
    }
    return true;
}

bool Verifier::is_pushout(const Mor& alpha, const Mor& beta, const Square& sq) const
{
    // sq.alpha: C -> P (opposite alpha), sq.beta: B -> P (opposite beta)
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    if (!heart_->in_h(sq.p) || !q.equal(cat().compose(sq.beta, alpha), cat().compose(sq.alpha, beta)))
        return false;
    for (int y : hy_) {
        const Obj yo = Obj::single(y);
        Matrix legs = stack(q.qpre(sq.beta, yo), q.qpre(sq.alpha, yo));
        Matrix cond = beside(q.qpre(alpha, yo), negated(fp, q.qpre(beta, yo)));
        const int n = cond.cols() - rank(fp, cond);
        if (legs.cols() != n || rank(fp, legs) != n)
            return false;
    }
    return true;
}

// ---- instance checks ----

namespace {

// A representative of f̄ that differs from f by a nonzero element of the
// ideal, when the ideal is nonzero on hom(A,B).
std::optional<Mor> other_representative(const QuotientCategory& q, const Mor& f)
{
    const LinearCategory& cat = q.cat();
    for (int s = 0; s < f.src.size(); ++s)
        for (int t = 0; t < f.dst.size(); ++t) {
            const Subspace& sp = q.ideal_space(f.src[s], f.dst[t]);
            if (sp.dim() == 0)
                continue;
            Mor w = cat.zero(f.src, f.dst);
            cat.set_block(w, s, t, sp.basis().front());
            return cat.add(f, w);
        }
    return std::nullopt;
}

}  // namespace

Outcome Verifier::cokernel_oracle(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    if (!heart_->in_h(f.src) || !heart_->in_h(f.dst))
        return skip();
    Mor c = cokernel(f);
    if (!is_cokernel(f, c))
        return Outcome::fail("constructed cokernel " + cat().describe(c) + " fails the universal property");
    if (auto f2 = other_representative(q, f)) {
        Mor c2 = cokernel(*f2);
        QuotientSolve cmp = solve_pre(q, c, c2);
        if (!cmp.x || !quotient_inverse(q, *cmp.x))
            return Outcome::fail("cokernels of two representatives are not isomorphic");
    }
    OracleResult o = oracle_cokernel(f);
    if (o.verdict == Verdict::indeterminate)
        return Outcome::unknown("oracle search budget exhausted");
    if (o.verdict == Verdict::fails)
        return Outcome::fail("oracle found no cokernel among " + std::to_string(o.candidates) + " candidates");
    QuotientSolve cmp = solve_pre(q, c, *o.map);
    if (!cmp.x || !cmp.unique || !quotient_inverse(q, *cmp.x))
        return Outcome::fail("constructed cokernel and oracle cokernel " + cat().describe(*o.map) +
                             " are not isomorphic");
    return Outcome::ok();
}

Outcome Verifier::kernel_oracle(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    if (!heart_->in_h(f.src) || !heart_->in_h(f.dst))
        return skip();
    Mor k = kernel(f);
    if (!is_kernel(f, k))
        return Outcome::fail("constructed kernel " + cat().describe(k) + " fails the universal property");
    if (auto f2 = other_representative(q, f)) {
        Mor k2 = kernel(*f2);
        QuotientSolve cmp = solve_post(q, k, k2);
        if (!cmp.x || !quotient_inverse(q, *cmp.x))
            return Outcome::fail("kernels of two representatives are not isomorphic");
    }
    OracleResult o = oracle_kernel(f);
    if (o.verdict == Verdict::indeterminate)
        return Outcome::unknown("oracle search budget exhausted");
    if (o.verdict == Verdict::fails)
        return Outcome::fail("oracle found no kernel among " + std::to_string(o.candidates) + " candidates");
    QuotientSolve cmp = solve_post(q, k, *o.map);
    if (!cmp.x || !cmp.unique || !quotient_inverse(q, *cmp.x))
        return Outcome::fail("constructed kernel and oracle kernel " + cat().describe(*o.map) + " are not isomorphic");
    return Outcome::ok();
}

Outcome Verifier::epi_criterion(const Mor& f) const
{
    const bool epi = is_epi(f);
    Construction m = heart_->construct_M(f);
    const bool in_u = heart_->twin().u().contains(m.object);
    const bool z_in_w = heart_->in_w(heart_->construct_Z(m.object).object);
    if (epi == in_u && in_u == z_in_w)
        return Outcome::ok();
    return Outcome::fail(std::string("is_epi=") + (epi ? "1" : "0") + " M_f in U=" + (in_u ? "1" : "0") +
                         " Z_{M_f} in W=" + (z_in_w ? "1" : "0") + " (M_f = " + cat().describe(m.object) + ")");
}

Outcome Verifier::mono_criterion(const Mor& f) const
{
    const bool mono = is_mono(f);
    Construction l = heart_->construct_L(f);
    const bool in_t = heart_->twin().t().contains(l.object);
    const bool k_in_w = heart_->in_w(heart_->construct_K(l.object).object);
    if (mono == in_t && in_t == k_in_w)
        return Outcome::ok();
    return Outcome::fail(std::string("is_mono=") + (mono ? "1" : "0") + " L_f in T=" + (in_t ? "1" : "0") +
                         " K_{L_f} in W=" + (k_in_w ? "1" : "0") + " (L_f = " + cat().describe(l.object) + ")");
}

Outcome Verifier::weak_cokernels(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    const TwinCotorsionPair& tw = heart_->twin();
    if (!heart_->in_cminus(f.src) || !heart_->in_cplus(f.dst))
        return skip();
    Construction m = heart_->construct_M(f);
    if (!q.is_zero(cat().compose(m.map, f)))
        return Outcome::fail("m_f∘f is nonzero in the quotient");
    for (int y : members_nonzero(q, tw.cplus)) {
        const Obj yo = Obj::single(y);
        Matrix mf = q.qpre(f, yo);
        const int n = mf.cols() - rank(fp, mf);
        Matrix mm = q.qpre(m.map, yo);
        if (mm.cols() != n || rank(fp, mm) != n)
            return Outcome::fail("-∘m_f is not a bijection onto {β : βf = 0} at Y = " + cat().name(y));
    }
    if (heart_->in_cminus(f.dst) && !heart_->in_cminus(m.object))
        return Outcome::fail("B ∈ C⁻ but M_f = " + cat().describe(m.object) + " is not");
    Construction l = heart_->construct_L(f);
    if (!q.is_zero(cat().compose(f, l.map)))
        return Outcome::fail("f∘ℓ_f is nonzero in the quotient");
    for (int x : members_nonzero(q, tw.cminus)) {
        const Obj xo = Obj::single(x);
        Matrix mf = q.qpost(f, xo);
        const int n = mf.cols() - rank(fp, mf);
        Matrix ml = q.qpost(l.map, xo);
        if (ml.cols() != n || rank(fp, ml) != n)
            return Outcome::fail("ℓ_f∘- is not a bijection onto {α : fα = 0} at X = " + cat().name(x));
    }
    if (heart_->in_cplus(f.src) && !heart_->in_cplus(l.object))
        return Outcome::fail("A ∈ C⁺ but L_f = " + cat().describe(l.object) + " is not");
    return Outcome::ok();
}

Outcome Verifier::factoring_epi_mono(const Mor& f) const
{
    const TriangulatedStructure& t = heart_->ambient();
    const TwinCotorsionPair& tw = heart_->twin();
    if (!heart_->in_h(f.src) || !heart_->in_h(f.dst))
        return skip();
    Triangle tri = t.cone(f);
    bool applied = false;
    if (factoring_ideal(cat(), tw.u(), tri.b, tri.c).contains(tri.g.coords)) {
        applied = true;
        if (!is_epi(f))
            return Outcome::fail("g factors through U but f is not epi in H̄");
    }
    Triangle back = t.rotate_back(tri);  // C[-1] -e-> A -f-> B
    if (factoring_ideal(cat(), tw.t(), back.a, back.b).contains(back.f.coords)) {
        applied = true;
        if (!is_mono(f))
            return Outcome::fail("C[-1] -> A factors through T but f is not mono in H̄");
    }
    return applied ? Outcome::ok() : skip();
}

Outcome Verifier::cokernel_cone_terms(const Mor& f) const
{
    if (!heart_->in_h(f.src) || !heart_->in_h(f.dst))
        return skip();
    Mor beta = heart_->cokernel(f);
    Triangle tri = heart_->ambient().cone(beta);  // B -> C' -> S -> B[1]
    if (!heart_->twin().s().contains(tri.c))
        return Outcome::fail("cone of the cokernel representative is " + cat().describe(tri.c) + ", not in S");
    Mor alpha = heart_->kernel(f);
    Triangle co = heart_->ambient().cocone(alpha);  // V -> K -> A -> V[1]
    if (!heart_->twin().v().contains(co.a))
        return Outcome::fail("cocone of the kernel representative is " + cat().describe(co.a) + ", not in V");
    return Outcome::ok();
}

Outcome Verifier::reflected_epi(const Mor& x) const
{
    const QuotientCategory& q = quotient();
    if (!heart_->in_cminus(x.src) || !heart_->in_h(x.dst))
        return skip();
    Triangle tri = heart_->ambient().cone(x);
    if (!heart_->twin().u().contains(tri.c))
        return skip();
    const Construction& z = heart_->construct_Z(x.src);
    QuotientSolve zeta = solve_pre(q, z.map, x);
    if (!zeta.x || !zeta.unique)
        return Outcome::fail("no unique ζ with ζ∘z_X = x");
    if (!is_epi(*zeta.x))
        return Outcome::fail("ζ = " + cat().describe(*zeta.x) + " is not epi");
    return Outcome::ok();
}

Outcome Verifier::left_semi_abelian(const Mor& g, const Mor& gamma) const
{
    Mor delta = cokernel(g);
    if (gamma.dst != delta.dst)
        return Outcome::fail("γ does not end at the cokernel target");
    if (!is_cokernel(g, delta))
        return Outcome::fail("δ = " + cat().describe(delta) + " is not a cokernel of g in H̄");
    Square sq = pullback(gamma, delta);
    if (!is_pullback(gamma, delta, sq))
        return Outcome::fail("square over (γ, δ) with P = " + cat().describe(sq.p) + " is not a pullback");
    if (!is_epi(sq.alpha))
        return Outcome::fail("α = " + cat().describe(sq.alpha) + " opposite the cokernel δ is not epi");
    return Outcome::ok();
}

Outcome Verifier::right_semi_abelian(const Mor& g, const Mor& beta) const
{
    Mor alpha = kernel(g);
    if (beta.src != alpha.src)
        return Outcome::fail("β does not start at the kernel source");
    if (!is_kernel(g, alpha))
        return Outcome::fail("α = " + cat().describe(alpha) + " is not a kernel of g in H̄");
    Square sq = pushout(alpha, beta);
    if (!is_pushout(alpha, beta, sq))
        return Outcome::fail("square under (α, β) with P = " + cat().describe(sq.p) + " is not a pushout");
    if (!is_mono(sq.alpha))
        return Outcome::fail("edge " + cat().describe(sq.alpha) + " opposite the kernel α is not mono");
    return Outcome::ok();
}

Outcome Verifier::left_integral(const Mor& delta, const Mor& gamma) const
{
    if (!is_epi(delta))
        return skip();
    Square sq = pullback(gamma, delta);
    if (!is_pullback(gamma, delta, sq))
        return Outcome::fail("square over (γ, δ) with P = " + cat().describe(sq.p) + " is not a pullback");
    if (!is_epi(sq.alpha))
        return Outcome::fail("α = " + cat().describe(sq.alpha) + " opposite the epi δ is not epi");
    return Outcome::ok();
}

Outcome Verifier::right_integral(const Mor& alpha, const Mor& beta) const
{
    if (!is_mono(alpha))
        return skip();
    Square sq = pushout(alpha, beta);
    if (!is_pushout(alpha, beta, sq))
        return Outcome::fail("square under (α, β) with P = " + cat().describe(sq.p) + " is not a pushout");
    if (!is_mono(sq.alpha))
        return Outcome::fail("edge " + cat().describe(sq.alpha) + " opposite the mono α is not mono");
    return Outcome::ok();
}

Outcome Verifier::abelian(const Mor& f) const
{
    const QuotientCategory& q = quotient();
    if (!heart_->in_h(f.src) || !heart_->in_h(f.dst))
        return skip();
    if (is_mono(f)) {
        Mor c = heart_->cokernel(f);
        Mor k = heart_->kernel(c);
        QuotientSolve phi = solve_post(q, k, f);
        if (!phi.x || !quotient_inverse(q, *phi.x))
            return Outcome::fail("mono f is not the kernel of its cokernel");
    }
    if (is_epi(f)) {
        Mor k = heart_->kernel(f);
        Mor c = heart_->cokernel(k);
        QuotientSolve phi = solve_pre(q, c, f);
        if (!phi.x || !quotient_inverse(q, *phi.x))
            return Outcome::fail("epi f is not the cokernel of its kernel");
    }
    return Outcome::ok();
}

Outcome Verifier::heart_object(const Obj& c) const
{
    const QuotientCategory& q = quotient();
    const Fp& fp = cat().field();
    const TwinCotorsionPair& tw = heart_->twin();
    const bool cm = heart_->in_cminus(c), cp = heart_->in_cplus(c);

    const Construction& k = heart_->construct_K(c);
    if (!heart_->in_cminus(k.object))
        return Outcome::fail("K_C = " + cat().describe(k.object) + " is not in C⁻");
    if (cp && !heart_->in_h(k.object))
        return Outcome::fail("C ∈ C⁺ but K_C = " + cat().describe(k.object) + " is not in H");
    if (!heart_->in_w(k.steps[1].triangle.a))
        return Outcome::fail("the U-term of the K_C construction is not in W");
    for (int x : members_nonzero(q, tw.cminus)) {
        Matrix m = q.qpost(k.map, Obj::single(x));
        if (m.rows() != m.cols() || rank(fp, m) != m.cols())
            return Outcome::fail("k_C∘- is not bijective at X = " + cat().name(x));
    }

    const Construction& z = heart_->construct_Z(c);
    if (!heart_->in_cplus(z.object))
        return Outcome::fail("Z_C = " + cat().describe(z.object) + " is not in C⁺");
    if (cm && !heart_->in_h(z.object))
        return Outcome::fail("C ∈ C⁻ but Z_C = " + cat().describe(z.object) + " is not in H");
    if (!heart_->in_w(z.steps[1].triangle.c))
        return Outcome::fail("the T-term of the Z_C construction is not in W");
    for (int y : members_nonzero(q, tw.cplus)) {
        Matrix m = q.qpre(z.map, Obj::single(y));
        if (m.rows() != m.cols() || rank(fp, m) != m.cols())
            return Outcome::fail("-∘z_C is not bijective at Y = " + cat().name(y));
    }

    Construction su = heart_->sigma_U(c);
    const bool su_zero = q.is_zero_object(su.object), su_w = heart_->in_w(su.object);
    if (su_zero != su_w || su_w != cp)
        return Outcome::fail("σ_U(C)=0, U_C ∈ W and C ∈ C⁺ disagree");
    for (int u : members_nonzero(q, tw.u())) {
        Matrix m = q.qpost(su.map, Obj::single(u));
        if (m.rows() != m.cols() || rank(fp, m) != m.cols())
            return Outcome::fail("u_C∘- is not bijective at U' = " + cat().name(u));
    }
    Construction st = heart_->sigma_T(c);
    const bool st_zero = q.is_zero_object(st.object), st_w = heart_->in_w(st.object);
    if (st_zero != st_w || st_w != cm)
        return Outcome::fail("σ_T(C)=0, T_C ∈ W and C ∈ C⁻ disagree");
    for (int t : members_nonzero(q, tw.t())) {
        Matrix m = q.qpre(st.map, Obj::single(t));
        if (m.rows() != m.cols() || rank(fp, m) != m.cols())
            return Outcome::fail("-∘t_C is not bijective at T' = " + cat().name(t));
    }
    return Outcome::ok();
}

Outcome Verifier::adjoint_object(const Obj& c) const
{
    const QuotientCategory& q = quotient();
    const TwinCotorsionPair& tw = heart_->twin();

    const Construction& z = heart_->construct_Z(c);
    {
        const bool zero = q.is_zero_object(z.object), in_w = heart_->in_w(z.object), in_u = tw.u().contains(c);
        if (zero != in_w || in_w != in_u)
            return Outcome::fail("τ⁺(C)=0, Z_C ∈ W and C ∈ U disagree");
    }
    const Construction& k = heart_->construct_K(c);
    {
        const bool zero = q.is_zero_object(k.object), in_w = heart_->in_w(k.object), in_t = tw.t().contains(c);
        if (zero != in_w || in_w != in_t)
            return Outcome::fail("τ⁻(C)=0, K_C ∈ W and C ∈ T disagree");
    }

    // ε_{Z_C} ∘ τ⁺(z_C) = id
    auto tz = heart_->tau_plus(z.map);
    if (!tz)
        return Outcome::fail("τ⁺(z_C) is not uniquely defined");
    const Construction& zz = heart_->construct_Z(z.object);
    QuotientSolve eps = solve_pre(q, zz.map, cat().identity(z.object));
    if (!eps.x || !eps.unique)
        return Outcome::fail("no unique counit at Z_C");
    if (!q.equal(cat().compose(*eps.x, *tz), cat().identity(z.object)))
        return Outcome::fail("ε_{Z_C}∘τ⁺(z_C) is not the identity");
    if (heart_->in_cplus(c)) {
        QuotientSolve e = solve_pre(q, z.map, cat().identity(c));
        if (!e.x || !e.unique)
            return Outcome::fail("C ∈ C⁺ has no unique counit ε_C");
    }

    // τ⁻(k_C) ∘ η_{K_C} = id
    auto tk = heart_->tau_minus(k.map);
    if (!tk)
        return Outcome::fail("τ⁻(k_C) is not uniquely defined");
    const Construction& kk = heart_->construct_K(k.object);
    QuotientSolve eta = solve_post(q, kk.map, cat().identity(k.object));
    if (!eta.x || !eta.unique)
        return Outcome::fail("no unique unit at K_C");
    if (!q.equal(cat().compose(*tk, *eta.x), cat().identity(k.object)))
        return Outcome::fail("τ⁻(k_C)∘η_{K_C} is not the identity");
    if (heart_->in_cminus(c)) {
        QuotientSolve e = solve_post(q, k.map, cat().identity(c));
        if (!e.x || !e.unique)
            return Outcome::fail("C ∈ C⁻ has no unique unit η_C");
    }
    return Outcome::ok();
}

Outcome Verifier::tau_functor(const Mor& g, const Mor& f) const
{
    const QuotientCategory& q = quotient();
    if (g.src != f.dst)
        return Outcome::fail("morphisms are not composable");
    Mor gf = cat().compose(g, f);
    auto pf = heart_->tau_plus(f), pg = heart_->tau_plus(g), pgf = heart_->tau_plus(gf);
    if (!pf || !pg || !pgf)
        return Outcome::fail("τ⁺ is not uniquely defined on the sample");
    if (!q.equal(*pgf, cat().compose(*pg, *pf)))
        return Outcome::fail("τ⁺(g∘f) differs from τ⁺(g)∘τ⁺(f)");
    auto mf = heart_->tau_minus(f), mg = heart_->tau_minus(g), mgf = heart_->tau_minus(gf);
    if (!mf || !mg || !mgf)
        return Outcome::fail("τ⁻ is not uniquely defined on the sample");
    if (!q.equal(*mgf, cat().compose(*mg, *mf)))
        return Outcome::fail("τ⁻(g∘f) differs from τ⁻(g)∘τ⁻(f)");
    auto pid = heart_->tau_plus(cat().identity(f.src));
    auto mid = heart_->tau_minus(cat().identity(f.src));
    if (!pid || !q.equal(*pid, cat().identity(pid->src)))
        return Outcome::fail("τ⁺(id) is not the identity");
    if (!mid || !q.equal(*mid, cat().identity(mid->src)))
        return Outcome::fail("τ⁻(id) is not the identity");
    return Outcome::ok();
}

// ---- sweeps ----

namespace {

struct Recorder {
    PropertyVerdict& v;
    std::string twin;
    // Returns false once the sweep should stop.
    bool operator()(const std::string& kind, const Outcome& o, json args)
    {
        if (o.verdict == Verdict::holds) {
            if (o.why == "skip")
                ++v.stats.skipped;
            else
                ++v.stats.instances;
            return true;
        }
        if (o.verdict == Verdict::fails) {
            v.verdict = Verdict::fails;
            v.reason = o.why;
            v.counterexample = {{"property", kind}, {"twin", twin}, {"args", std::move(args)}};
            return false;
        }
        if (v.verdict == Verdict::holds) {
            v.verdict = Verdict::indeterminate;
            v.reason = o.why;
            v.counterexample = {{"property", kind}, {"twin", twin}, {"args", std::move(args)}};
        }
        return true;
    }
};

json mors_json(std::initializer_list<Mor> ms)
{
    json a = json::array();
    for (const Mor& m : ms)
        a.push_back(mor_json(m));
    return a;
}

}  // namespace

template <class F>
PropertyVerdict Verifier::sweep(const std::string& name, F&& body) const
{
    PropertyVerdict v;
    v.name = name;
    auto t0 = std::chrono::steady_clock::now();
    Recorder rec{v, heart_->twin().key()};
    body(rec);
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

// Visits every quotient morphism between test objects until visit says stop.
#define TH_FOR_MORPHISMS(OBJS, F, BODY)                                         \
    for (const Obj& a_ : OBJS) {                                                \
        bool stop_ = false;                                                     \
        for (const Obj& b_ : OBJS) {                                            \
            if (for_each_qmor(a_, b_, [&](const Mor& F) { BODY }))              \
                ++v_.stats.sampled_spaces;                                      \
            if (v_.verdict == Verdict::fails) {                                 \
                stop_ = true;                                                   \
                break;                                                          \
            }                                                                   \
        }                                                                       \
        if (stop_)                                                              \
            break;                                                              \
    }

PropertyVerdict Verifier::check_preabelian() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("preabelian", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        TH_FOR_MORPHISMS(objs, f, {
            if (!rec("cokernel_oracle", cokernel_oracle(f), mors_json({f})))
                return false;
            return rec("kernel_oracle", kernel_oracle(f), mors_json({f}));
        })
    });
}

PropertyVerdict Verifier::check_epi_criterion() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("epi_mono_criterion", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        TH_FOR_MORPHISMS(objs, f, {
            if (!rec("epi_criterion", epi_criterion(f), mors_json({f})))
                return false;
            return rec("mono_criterion", mono_criterion(f), mors_json({f}));
        })
    });
}

PropertyVerdict Verifier::check_weak_cokernels() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("weak_cokernels", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        TH_FOR_MORPHISMS(objs, f, { return rec("weak_cokernels", weak_cokernels(f), mors_json({f})); })
    });
}

PropertyVerdict Verifier::check_factoring_epi_mono() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("factoring_epi_mono", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        // Cones depend on the representative, so sweep ambient morphisms.
        for (const Obj& a : objs)
            for (const Obj& b : objs) {
                if (v_.verdict == Verdict::fails)
                    return;
                bool sampled = cat().hom_dim(a, b) > 0 &&
                               checked_power(cat().p(), cat().hom_dim(a, b), opt_.morphism_cap) == 0;
                if (sampled) {
                    ++v_.stats.sampled_spaces;
                    HomBasis hb = cat().hom_space(a, b);
                    for (const Mor& f : hb.elems)
                        if (!rec("factoring_epi_mono", factoring_epi_mono(f), mors_json({f})))
                            return;
                    continue;
                }
                enumerate_morphisms(cat(), a, b,
                                    [&](const Mor& f) { return rec("factoring_epi_mono", factoring_epi_mono(f), mors_json({f})); });
            }
    });
}

PropertyVerdict Verifier::check_cokernel_cone_terms() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("cokernel_cone_terms", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        TH_FOR_MORPHISMS(objs, f, { return rec("cokernel_cone_terms", cokernel_cone_terms(f), mors_json({f})); })
    });
}

PropertyVerdict Verifier::check_reflected_epi() const
{
    const QuotientCategory& q = quotient();
    auto xs = heart_->twin().cminus.members();
    return sweep("reflected_epi", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        for (int x : xs)
            for (int b : hy_) {
                if (v_.verdict == Verdict::fails)
                    return;
                const Obj xo = Obj::single(x), bo = Obj::single(b);
                (void)q;
                if (checked_power(cat().p(), cat().hom_dim(xo, bo), opt_.morphism_cap) == 0) {
                    ++v_.stats.sampled_spaces;
                    for (const Mor& m : cat().hom_space(xo, bo).elems)
                        if (!rec("reflected_epi", reflected_epi(m), mors_json({m})))
                            return;
                    continue;
                }
                enumerate_morphisms(cat(), xo, bo,
                                    [&](const Mor& m) { return rec("reflected_epi", reflected_epi(m), mors_json({m})); });
            }
    });
}

PropertyVerdict Verifier::nested_sweep(const std::string& name, bool left, const FirstLegs& firsts,
                                       const Instance& inst) const
{
    const QuotientCategory& q = quotient();
    auto singles = test_objects(1);
    auto pairs = test_objects(2);
    return sweep(name, [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        auto second = [&](const Leg& leg, const Obj& b) {
            const Mor& m = leg.second;
            bool sampled = left ? for_each_qmor(b, m.dst,
                                                [&](const Mor& x) { return rec(name, inst(leg.first, x),
                                                                               mors_json({leg.first, x})); })
                                : for_each_qmor(m.src, b, [&](const Mor& x) {
                                      return rec(name, inst(leg.first, x), mors_json({leg.first, x}));
                                  });
            if (sampled)
                ++v_.stats.sampled_spaces;
            return v_.verdict != Verdict::fails;
        };
        auto legs1 = firsts(singles, false, opt_.morphism_cap);
        for (const Leg& leg : legs1)
            for (const Obj& b : singles)
                if (!second(leg, b))
                    return;
        if (opt_.nested_exhaustive) {
            auto legs2 = firsts(pairs, true, opt_.morphism_cap);
            for (const Leg& leg : legs1)
                for (const Obj& b : pairs)
                    if (b.size() > 1 && !second(leg, b))
                        return;
            for (const Leg& leg : legs2)
                for (const Obj& b : pairs)
                    if (!second(leg, b))
                        return;
            return;
        }
        auto legs2 = firsts(pairs, true, opt_.nested_cap);
        std::vector<Leg> all = legs1;
        all.insert(all.end(), legs2.begin(), legs2.end());
        if (all.empty() || opt_.nested_budget == 0)
            return;
        ++v_.stats.sampled_spaces;
        std::mt19937_64 rng(fnv(opt_.seed, {int(name.size()), left ? 1 : 0}));
        const std::size_t n1 = legs1.size();
        for (std::uint64_t draw = 0; draw < opt_.nested_budget; ++draw) {
            const std::size_t li = std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng);
            const Obj& b = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
            if (li < n1 && b.size() == 1)
                continue;  // covered exhaustively above
            const Leg& leg = all[li];
            const Obj& src = left ? b : leg.second.src;
            const Obj& dst = left ? leg.second.dst : b;
            Vec c(q.qdim(src, dst));
            for (int& e : c)
                e = std::uniform_int_distribution<int>(0, cat().p() - 1)(rng);
            Mor m2 = q.lift(src, dst, c);
            if (!rec(name, inst(leg.first, m2), mors_json({leg.first, m2})))
                return;
        }
    });
}

PropertyVerdict Verifier::check_semi_abelian(bool left) const
{
    const QuotientCategory& q = quotient();
    FirstLegs firsts = [&](const std::vector<Obj>& objs, bool sums_only, std::uint64_t cap) {
        // One representative g per distinct (co)kernel morphism.
        std::map<std::string, Leg> reps;
        VerifyOptions o = opt_;
        o.morphism_cap = cap;
        Verifier capped(*heart_, o);
        for (const Obj& a : objs)
            for (const Obj& b : objs) {
                if (sums_only && a.size() == 1 && b.size() == 1)
                    continue;
                capped.for_each_qmor(a, b, [&](const Mor& g) {
                    Mor m = left ? cokernel(g) : kernel(g);
                    std::string key = cat().describe(m.src) + "|" + cat().describe(m.dst) + "|";
                    for (int c : q.qcoords(m))
                        key += std::to_string(c) + ",";
                    reps.emplace(key, Leg{g, m});
                    return true;
                });
            }
        std::vector<Leg> out;
        for (auto& [k, leg] : reps)
            out.push_back(std::move(leg));
        return out;
    };
    if (left)
        return nested_sweep("left_semi_abelian", true, firsts,
                            [&](const Mor& g, const Mor& x) { return left_semi_abelian(g, x); });
    return nested_sweep("right_semi_abelian", false, firsts,
                        [&](const Mor& g, const Mor& x) { return right_semi_abelian(g, x); });
}

PropertyVerdict Verifier::check_integral(bool left) const
{
    FirstLegs firsts = [&](const std::vector<Obj>& objs, bool sums_only, std::uint64_t cap) {
        std::vector<Leg> out;
        VerifyOptions o = opt_;
        o.morphism_cap = cap;
        Verifier capped(*heart_, o);
        for (const Obj& a : objs)
            for (const Obj& b : objs) {
                if (sums_only && a.size() == 1 && b.size() == 1)
                    continue;
                capped.for_each_qmor(a, b, [&](const Mor& m) {
                    if (left ? is_epi(m) : is_mono(m))
                        out.push_back({m, m});
                    return true;
                });
            }
        return out;
    };
    if (left)
        return nested_sweep("left_integral", true, firsts,
                            [&](const Mor& d, const Mor& x) { return left_integral(d, x); });
    return nested_sweep("right_integral", false, firsts,
                        [&](const Mor& a, const Mor& x) { return right_integral(a, x); });
}

PropertyVerdict Verifier::check_abelian() const
{
    auto objs = test_objects(opt_.max_summands);
    return sweep("abelian", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        TH_FOR_MORPHISMS(objs, f, { return rec("abelian", abelian(f), mors_json({f})); })
    });
}

PropertyVerdict Verifier::check_heart_objects() const
{
    auto objs = all_objects();
    return sweep("heart_objects", [&](Recorder& rec) {
        for (const Obj& c : objs)
            if (!rec("heart_object", heart_object(c), json{{"object", c.summands()}}))
                return;
    });
}

PropertyVerdict Verifier::check_adjoint_laws() const
{
    auto objs = all_objects();
    return sweep("adjoint_laws", [&](Recorder& rec) {
        for (const Obj& c : objs)
            if (!rec("adjoint_object", adjoint_object(c), json{{"object", c.summands()}}))
                return;
    });
}

PropertyVerdict Verifier::check_tau_functor() const
{
    const int n = cat().size();
    return sweep("tau_functor", [&](Recorder& rec) {
        PropertyVerdict& v_ = rec.v;
        // Basis morphisms between indecomposables, composed pairwise.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (const Mor& f : cat().hom_space(Obj::single(a), Obj::single(b)).elems)
                    for (int c = 0; c < n; ++c)
                        for (const Mor& g : cat().hom_space(Obj::single(b), Obj::single(c)).elems) {
                            if (!rec("tau_functor", tau_functor(g, f), mors_json({g, f})))
                                return;
                            if (v_.verdict == Verdict::fails)
                                return;
                        }
    });
}

#undef TH_FOR_MORPHISMS

Outcome Verifier::replay(const json& ce) const
{
    const std::string kind = ce.at("property").get<std::string>();
    const json& a = ce.at("args");
    auto mor = [&](int i) { return mor_from_json(cat(), a.at(i)); };
    if (kind == "heart_object" || kind == "adjoint_object") {
        Obj c(a.at("object").get<std::vector<int>>());
        cat().check_obj(c);
        return kind == "heart_object" ? heart_object(c) : adjoint_object(c);
    }
    if (kind == "cokernel_oracle") return cokernel_oracle(mor(0));
    if (kind == "kernel_oracle") return kernel_oracle(mor(0));
    if (kind == "epi_criterion") return epi_criterion(mor(0));
    if (kind == "mono_criterion") return mono_criterion(mor(0));
    if (kind == "weak_cokernels") return weak_cokernels(mor(0));
    if (kind == "factoring_epi_mono") return factoring_epi_mono(mor(0));
    if (kind == "cokernel_cone_terms") return cokernel_cone_terms(mor(0));
    if (kind == "reflected_epi") return reflected_epi(mor(0));
    if (kind == "abelian") return abelian(mor(0));
    if (kind == "left_semi_abelian") return left_semi_abelian(mor(0), mor(1));
    if (kind == "right_semi_abelian") return right_semi_abelian(mor(0), mor(1));
    if (kind == "left_integral") return left_integral(mor(0), mor(1));
    if (kind == "right_integral") return right_integral(mor(0), mor(1));
    if (kind == "tau_functor") return tau_functor(mor(0), mor(1));
    throw FormatError("unknown counterexample property '" + kind + "'");
}

Verdict condition_double(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const StarBudget& budget)
{
    auto contained = [&](const Subcategory& x, const Subcategory& m, const Subcategory& n) {
        Verdict v = Verdict::holds;
        for (int i : x.members()) {
            Verdict r = t.in_star(m, n, Obj::single(i), budget).verdict;
            if (r == Verdict::fails)
                return Verdict::fails;
            if (r == Verdict::indeterminate)
                v = Verdict::indeterminate;
        }
        return v;
    };
    Verdict a = contained(twin.u(), twin.s(), twin.t());
    if (a == Verdict::holds)
        return a;
    Verdict b = contained(twin.t(), twin.u(), twin.v());
    if (b == Verdict::holds)
        return b;
    return a == Verdict::fails && b == Verdict::fails ? Verdict::fails : Verdict::indeterminate;
}

Outcome cluster_tilting_quotient(const Heart& heart)
{
    const TriangulatedStructure& t = heart.ambient();
    const LinearCategory& cat = t.cat();
    const QuotientCategory& q = heart.quotient();
    const Subcategory& tt = heart.twin().t();
    std::vector<int> expected;
    for (int i = 0; i < cat.size(); ++i)
        if (!tt.contains(i))
            expected.push_back(i);
    std::vector<int> got = members_nonzero(q, heart.twin().h);
    if (got != expected)
        return Outcome::fail("nonzero objects of H̄ differ from the indecomposables outside T");
    for (int j : expected) {
        Mor approx = t.minimal_right_approximation(tt, Obj::single(j));
        for (int i : expected) {
            Matrix m = cat.post_matrix(approx, Obj::single(i));
            const int d = cat.hom_dim(i, j) - rank(cat.field(), m);
            if (d != q.qdim(i, j))
                return Outcome::fail("dim H̄(" + cat.name(i) + ", " + cat.name(j) + ") = " +
                                     std::to_string(q.qdim(i, j)) + " but C/T gives " + std::to_string(d));
        }
    }
    return Outcome::ok();
}

bool heart_is_zero(const Heart& heart)
{
    return heart.twin().h.subset_of(heart.twin().w);
}

}  // namespace twinheart
