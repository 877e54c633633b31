#include "twinheart/heart.hpp"

#include <sstream>
#include <stdexcept>

namespace twinheart {

QuotientCategory::QuotientCategory(const TriangulatedStructure& t, Subcategory ideal, Subcategory allowed)
    : t_(&t), ideal_(std::move(ideal)), allowed_(std::move(allowed)), n_(t.size())
{
    ideals_.reserve(std::size_t(n_) * n_);
    qdims_.reserve(std::size_t(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            ideals_.push_back(factoring_ideal(t.cat(), ideal_, Obj::single(i), Obj::single(j)));
            qdims_.push_back(ideals_.back().codim());
        }
}

int QuotientCategory::qdim(const Obj& x, const Obj& y) const
{
    int d = 0;
    for (int i : x.summands())
        for (int j : y.summands())
            d += qdim(i, j);
    return d;
}

Vec QuotientCategory::qcoords(const Mor& f) const
{
    Vec out;
    out.reserve(qdim(f.src, f.dst));
    for (int s = 0; s < f.src.size(); ++s)
        for (int t = 0; t < f.dst.size(); ++t) {
            const int i = f.src[s], j = f.dst[t];
            if (cat().hom_dim(i, j) == 0)
                continue;
            Vec q = ideal_space(i, j).quotient_coords(cat().block(f, s, t));
            out.insert(out.end(), q.begin(), q.end());
        }
    return out;
}

Mor QuotientCategory::lift(const Obj& x, const Obj& y, const Vec& q) const
{
    Mor m = cat().zero(x, y);
    std::size_t pos = 0;
    for (int s = 0; s < x.size(); ++s)
        for (int t = 0; t < y.size(); ++t) {
            const int i = x[s], j = y[t];
            if (cat().hom_dim(i, j) == 0)
                continue;
            const int d = qdim(i, j);
            Vec part(q.begin() + pos, q.begin() + pos + d);
            pos += d;
            cat().set_block(m, s, t, ideal_space(i, j).lift(part));
        }
    if (pos != q.size())
        throw CompositionError("quotient lift: coordinate length mismatch");
    return m;
}

Matrix QuotientCategory::qpost(const Mor& g, const Obj& x) const
{
    const int din = qdim(x, g.src), dout = qdim(x, g.dst);
    Matrix m(dout, din);
    for (int c = 0; c < din; ++c) {
        Vec e(din, 0);
        e[c] = 1;
        m.set_col(c, qcoords(cat().compose(g, lift(x, g.src, e))));
    }
    return m;
}

Matrix QuotientCategory::qpre(const Mor& f, const Obj& y) const
{
    const int din = qdim(f.dst, y), dout = qdim(f.src, y);
    Matrix m(dout, din);
    for (int c = 0; c < din; ++c) {
        Vec e(din, 0);
        e[c] = 1;
        m.set_col(c, qcoords(cat().compose(lift(f.dst, y, e), f)));
    }
    return m;
}

std::vector<int> QuotientCategory::nonzero_indecs() const
{
    std::vector<int> out;
    for (int i : allowed_.members())
        if (!is_zero_object(Obj::single(i)))
            out.push_back(i);
    return out;
}

QuotientSolve solve_pre(const QuotientCategory& q, const Mor& a, const Mor& b)
{
    QuotientSolve res;
    Matrix m = q.qpre(a, b.dst);
    auto x = solve(q.cat().field(), m, q.qcoords(b));
    if (!x)
        return res;
    res.x = q.lift(a.dst, b.dst, *x);
    res.unique = rank(q.cat().field(), m) == m.cols();
    return res;
}

QuotientSolve solve_post(const QuotientCategory& q, const Mor& a, const Mor& b)
{
    QuotientSolve res;
    Matrix m = q.qpost(a, b.src);
    auto x = solve(q.cat().field(), m, q.qcoords(b));
    if (!x)
        return res;
    res.x = q.lift(b.src, a.src, *x);
    res.unique = rank(q.cat().field(), m) == m.cols();
    return res;
}

std::optional<Mor> quotient_inverse(const QuotientCategory& q, const Mor& phi)
{
    QuotientSolve s = solve_pre(q, phi, q.cat().identity(phi.src));
    if (!s.x)
        return std::nullopt;
    if (!q.equal(q.cat().compose(phi, *s.x), q.cat().identity(phi.dst)))
        return std::nullopt;
    return s.x;
}

Heart::Heart(const TriangulatedStructure& t, const TwinCotorsionPair& twin)
    : t_(&t), twin_(&twin), q_(t, twin.w, Subcategory::all(t.size()))
{
}

const Triangle& Heart::st(const Obj& c) const
{
    auto it = st_.find(c);
    if (it == st_.end())
        it = st_.emplace(c, st_triangle(*t_, *twin_, c)).first;
    return it->second;
}

const Triangle& Heart::uv(const Obj& c) const
{
    auto it = uv_.find(c);
    if (it == uv_.end())
        it = uv_.emplace(c, uv_triangle(*t_, *twin_, c)).first;
    return it->second;
}

const std::optional<Triangle>& Heart::cminus_witness(const Obj& c) const
{
    auto it = cm_.find(c);
    if (it == cm_.end())
        it = cm_.emplace(c, cminus_triangle(*t_, *twin_, c)).first;
    return it->second;
}

const std::optional<Triangle>& Heart::cplus_witness(const Obj& c) const
{
    auto it = cp_.find(c);
    if (it == cp_.end())
        it = cp_.emplace(c, cplus_triangle(*t_, *twin_, c)).first;
    return it->second;
}

const Construction& Heart::construct_K(const Obj& c) const
{
    if (auto it = k_.find(c); it != k_.end())
        return it->second;
    Construction k;
    const Triangle& s = st(c);         // S[-1] -> C -a-> T -> S
    const Triangle& u = uv(s.c);       // U -> T -b-> V[1] -> U[1]
    Mor ba = cat().compose(u.g, s.g);
    Triangle third = t_->cocone(ba);  // K -k-> C -ba-> V[1]
    k.object = third.a;
    k.map = third.f;
    k.steps = {{"(S,T)-triangle of C", s}, {"(U,V)-triangle of T", u}, {"cocone of b∘a", third}};
    return k_.emplace(c, std::move(k)).first->second;
}

const Construction& Heart::construct_Z(const Obj& c) const
{
    if (auto it = z_.find(c); it != z_.end())
        return it->second;
    Construction z;
    const Triangle& u = uv(c);         // U -a-> C -> V[1]
    const Triangle& s = st(u.a);       // S[-1] -b-> U -> T
    Mor ab = cat().compose(u.f, s.f);
    Triangle third = t_->cone(ab);  // S[-1] -ab-> C -z-> Z
    z.object = third.c;
    z.map = third.g;
    z.steps = {{"(U,V)-triangle of C", u}, {"(S,T)-triangle of U", s}, {"cone of a∘b", third}};
    return z_.emplace(c, std::move(z)).first->second;
}

Construction Heart::sigma_U(const Obj& c) const
{
    const Triangle& u = uv(c);
    return {u.a, u.f, {{"(U,V)-triangle of C", u}}};
}

Construction Heart::sigma_T(const Obj& c) const
{
    const Triangle& s = st(c);
    return {s.c, s.g, {{"(S,T)-triangle of C", s}}};
}

Construction Heart::construct_M(const Mor& f) const
{
    const auto& w = cminus_witness(f.src);  // S_A[-1] -s_A-> A -> W_A
    if (!w)
        throw std::invalid_argument("construct_M: source " + cat().describe(f.src) + " is not in C-");
    Triangle third = t_->cone(cat().compose(f, w->f));
    return {third.c, third.g, {{"C- triangle of A", *w}, {"cone of f∘s_A", third}}};
}

Construction Heart::construct_L(const Mor& f) const
{
    const auto& w = cplus_witness(f.dst);  // W_B -> B -v_B-> V_B[1]
    if (!w)
        throw std::invalid_argument("construct_L: target " + cat().describe(f.dst) + " is not in C+");
    Triangle third = t_->cocone(cat().compose(w->g, f));
    return {third.a, third.f, {{"C+ triangle of B", *w}, {"cocone of v_B∘f", third}}};
}

std::optional<Mor> Heart::tau_plus(const Mor& f) const
{
    const Mor& za = construct_Z(f.src).map;
    const Mor& zb = construct_Z(f.dst).map;
    QuotientSolve s = solve_pre(q_, za, cat().compose(zb, f));
    if (!s.x || !s.unique)
        return std::nullopt;
    return s.x;
}

std::optional<Mor> Heart::tau_minus(const Mor& f) const
{
    const Mor& ka = construct_K(f.src).map;
    const Mor& kb = construct_K(f.dst).map;
    QuotientSolve s = solve_post(q_, kb, cat().compose(f, ka));
    if (!s.x || !s.unique)
        return std::nullopt;
    return s.x;
}

Mor Heart::cokernel(const Mor& f) const
{
    Construction m = construct_M(f);
    const Construction& z = construct_Z(m.object);
    return cat().compose(z.map, m.map);
}

Mor Heart::kernel(const Mor& f) const
{
    Construction l = construct_L(f);
    const Construction& k = construct_K(l.object);
    return cat().compose(l.map, k.map);
}

std::string render_trace(const LinearCategory& cat, const std::string& title, const Construction& c)
{
    std::ostringstream os;
    os << title << ": " << cat.describe(c.object) << " via " << cat.describe(c.map) << "\n";
    for (const auto& s : c.steps) {
        const Triangle& t = s.triangle;
        os << "  " << s.label << ": " << cat.describe(t.a) << " -> " << cat.describe(t.b) << " -> "
           << cat.describe(t.c) << "\n";
        os << "    f = " << cat.describe(t.f) << "\n    g = " << cat.describe(t.g) << "\n    h = "
           << cat.describe(t.h) << "\n";
    }
    return os.str();
}

}  // namespace twinheart
