#include "twinheart/pairs.hpp"

#include <algorithm>
#include <future>
#include <map>

namespace twinheart {

PairCheck is_cotorsion_pair(const TriangulatedStructure& t, const Subcategory& u, const Subcategory& v,
                            const StarBudget& budget)
{
    PairCheck res;
    const LinearCategory& cat = t.cat();
    for (int i : u.members())
        for (int j : v.members())
            if (t.ext1(Obj::single(i), Obj::single(j)) != 0) {
                res.reason = "Ext1(" + cat.name(i) + "," + cat.name(j) + ") != 0";
                return res;
            }
    Subcategory v1 = t.shift(v);
    CotorsionPair pair{u, v, {}};
    bool indeterminate = false;
    for (int c = 0; c < t.size(); ++c) {
        StarResult sr = t.in_star(u, v1, Obj::single(c), budget);
        if (sr.verdict == Verdict::fails) {
            res.reason = cat.name(c) + " is not in U * V[1]";
            return res;
        }
        if (sr.verdict == Verdict::indeterminate) {
            indeterminate = true;
            res.reason = "search budget exhausted on " + cat.name(c);
            continue;
        }
        pair.witnesses.push_back(*sr.witness);
    }
    if (indeterminate) {
        res.verdict = Verdict::indeterminate;
        return res;
    }
    res.verdict = Verdict::holds;
    res.pair = std::move(pair);
    return res;
}

namespace {

Subcategory subset_of_mask(int n, std::uint64_t mask)
{
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1)
            ids.push_back(i);
    return Subcategory(n, ids);
}

}  // namespace

PairEnumeration enumerate_cotorsion_pairs(const TriangulatedStructure& t, const EnumerationOptions& opt)
{
    const int n = t.size();
    if (n > opt.max_indecomposables)
        throw EnumerationBudgetError(n, std::uint64_t(1) << std::min(opt.max_indecomposables, 62));
    const std::uint64_t total = std::uint64_t(1) << n;
    const int jobs = std::max(1, opt.jobs);

    struct Out {
        std::vector<CotorsionPair> pairs;
        std::vector<Subcategory> indet;
    };
    auto work = [&](int job) {
        Out out;
        for (std::uint64_t mask = job; mask < total; mask += jobs) {
            Subcategory u = subset_of_mask(n, mask);
            Subcategory v = t.right_perp(t.shift(u, -1));
            PairCheck pc = is_cotorsion_pair(t, u, v, opt.budget);
            if (pc.verdict == Verdict::holds)
                out.pairs.push_back(std::move(*pc.pair));
            else if (pc.verdict == Verdict::indeterminate)
                out.indet.push_back(u);
        }
        return out;
    };
    std::vector<Out> outs;
    if (jobs == 1) {
        outs.push_back(work(0));
    } else {
        std::vector<std::future<Out>> fs;
        for (int j = 0; j < jobs; ++j)
            fs.push_back(std::async(std::launch::async, work, j));
        for (auto& f : fs)
            outs.push_back(f.get());
    }
    PairEnumeration res;
    for (auto& o : outs) {
        for (auto& p : o.pairs)
            res.pairs.push_back(std::move(p));
        for (auto& u : o.indet)
            res.indeterminate.push_back(u);
    }
    std::sort(res.pairs.begin(), res.pairs.end(), [](const CotorsionPair& a, const CotorsionPair& b) {
        return std::make_pair(a.u.key(), a.v.key()) < std::make_pair(b.u.key(), b.v.key());
    });
    std::sort(res.indeterminate.begin(), res.indeterminate.end());
    return res;
}

std::vector<std::pair<Subcategory, Subcategory>> brute_force_cotorsion_pairs(const TriangulatedStructure& t,
                                                                             int max_indecomposables)
{
    const int n = t.size();
    if (n > max_indecomposables)
        throw EnumerationBudgetError(n, std::uint64_t(1) << (2 * max_indecomposables));
    const std::uint64_t total = std::uint64_t(1) << n;
    // ext[i] = bitmask of j with Ext¹(i, j) != 0
    std::vector<std::uint64_t> ext(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (t.ext1(Obj::single(i), Obj::single(j)) != 0)
                ext[i] |= std::uint64_t(1) << j;
    std::vector<std::pair<Subcategory, Subcategory>> out;
    for (std::uint64_t mu = 0; mu < total; ++mu) {
        std::uint64_t bad = 0;
        for (int i = 0; i < n; ++i)
            if (mu >> i & 1)
                bad |= ext[i];
        Subcategory u = subset_of_mask(n, mu);
        for (std::uint64_t mv = 0; mv < total; ++mv) {
            if (mv & bad)
                continue;  // condition (i) fails; the full check would say the same
            Subcategory v = subset_of_mask(n, mv);
            if (is_cotorsion_pair(t, u, v).verdict == Verdict::holds)
                out.emplace_back(u, v);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.first.key(), a.second.key()) < std::make_pair(b.first.key(), b.second.key());
    });
    return out;
}

PairFlags classify_pair(const TriangulatedStructure& t, const CotorsionPair& pair)
{
    PairFlags f;
    f.t_structure = t.shift(pair.u, 1).subset_of(pair.u);
    f.co_t_structure = t.shift(pair.u, -1).subset_of(pair.u);
    f.rigid = t.ext1_vanishes(pair.u, pair.u);
    f.cluster_tilting = pair.u == pair.v;
    f.t_alt = t.shift(pair.v, -1).subset_of(pair.v);
    f.co_t_alt = t.shift(pair.v, 1).subset_of(pair.v);
    f.rigid_alt = pair.u.subset_of(pair.v);
    return f;
}

TwinLink twin_link(const TriangulatedStructure& t, const CotorsionPair& first, const CotorsionPair& second)
{
    TwinLink l;
    l.ext_vanishes = t.ext1_vanishes(first.u, second.v);
    l.s_in_u = first.u.subset_of(second.u);
    l.v_in_t = second.v.subset_of(first.v);
    return l;
}

TwinCotorsionPair make_twin(const TriangulatedStructure& t, const CotorsionPair& first, const CotorsionPair& second)
{
    TwinLink l = twin_link(t, first, second);
    if (!l.agree())
        throw EngineBugError("twin link conditions disagree for S=" + first.u.key() + " U=" + second.u.key());
    if (!l.ext_vanishes)
        throw NotATwinError("Ext1(S,V) != 0 for S=" + first.u.key() + " V=" + second.v.key());
    TwinCotorsionPair tw{first, second, {}, {}, {}, {}};
    const int n = t.size();
    tw.w = first.v.intersect(second.u);
    Subcategory s1 = t.shift(first.u, -1), v1 = t.shift(second.v, 1);
    std::vector<int> cm, cp;
    for (int c = 0; c < n; ++c) {
        StarResult a = t.in_star(s1, tw.w, Obj::single(c));
        StarResult b = t.in_star(tw.w, v1, Obj::single(c));
        if (a.verdict == Verdict::indeterminate || b.verdict == Verdict::indeterminate)
            throw EngineBugError("extension search was not decisive for a class with Hom(M,N) = 0");
        if (a.verdict == Verdict::holds)
            cm.push_back(c);
        if (b.verdict == Verdict::holds)
            cp.push_back(c);
    }
    tw.cminus = Subcategory(n, cm);
    tw.cplus = Subcategory(n, cp);
    tw.h = tw.cminus.intersect(tw.cplus);
    return tw;
}

Membership membership_Cpm(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c,
                          const StarBudget& budget)
{
    Membership m;
    StarResult a = t.in_star(t.shift(twin.s(), -1), twin.w, c, budget);
    StarResult b = t.in_star(twin.w, t.shift(twin.v(), 1), c, budget);
    m.in_cminus = a.verdict;
    m.in_cplus = b.verdict;
    m.cminus_witness = a.witness;
    m.cplus_witness = b.witness;
    m.in_h = a.verdict == Verdict::holds && b.verdict == Verdict::holds;
    m.in_w = twin.w.contains(c);
    return m;
}

namespace {

Triangle required(const StarResult& r, const char* what, const TriangulatedStructure& t, const Obj& c)
{
    if (r.verdict != Verdict::holds)
        throw EngineBugError(std::string("no ") + what + " triangle for " + t.cat().describe(c));
    return *r.witness;
}

}  // namespace

Triangle st_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c)
{
    return required(t.in_star(t.shift(twin.s(), -1), twin.t(), c), "(S,T)", t, c);
}

Triangle uv_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c)
{
    return required(t.in_star(twin.u(), t.shift(twin.v(), 1), c), "(U,V)", t, c);
}

std::optional<Triangle> cminus_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c)
{
    StarResult r = t.in_star(t.shift(twin.s(), -1), twin.w, c);
    if (r.verdict != Verdict::holds)
        return std::nullopt;
    return r.witness;
}

std::optional<Triangle> cplus_triangle(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const Obj& c)
{
    StarResult r = t.in_star(twin.w, t.shift(twin.v(), 1), c);
    if (r.verdict != Verdict::holds)
        return std::nullopt;
    return r.witness;
}

Subspace factoring_ideal(const LinearCategory& cat, const Subcategory& n, const Obj& x, const Obj& y)
{
    const int d = cat.hom_dim(x, y);
    Subspace ideal(cat.field(), d);
    for (int s = 0; s < x.size(); ++s)
        for (int tt = 0; tt < y.size(); ++tt) {
            const int i = x[s], j = y[tt];
            const int dij = cat.hom_dim(i, j);
            if (dij == 0)
                continue;
            std::size_t off = cat.block_offset(x, y, s, tt);
            for (int w : n.members()) {
                const int a_dim = cat.hom_dim(i, w), b_dim = cat.hom_dim(w, j);
                for (int b = 0; b < b_dim; ++b)
                    for (int a = 0; a < a_dim; ++a) {
                        Vec c = cat.compose_basis(i, w, j, b, a);
                        if (is_zero(c))
                            continue;
                        Vec full(d, 0);
                        std::copy(c.begin(), c.end(), full.begin() + off);
                        ideal.add(full);
                    }
            }
        }
    return ideal;
}

namespace {

// Cones of every basis morphism and zero morphism between indecomposables.
std::vector<Triangle> sweep_triangles(const TriangulatedStructure& t)
{
    const LinearCategory& cat = t.cat();
    std::vector<Triangle> out;
    for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j) {
            Obj x = Obj::single(i), y = Obj::single(j);
            out.push_back(t.cone(cat.zero(x, y)));
            for (int a = 0; a < cat.hom_dim(i, j); ++a) {
                Mor m = cat.zero(x, y);
                m.coords[a] = 1;
                out.push_back(t.cone(m));
            }
        }
    return out;
}

}  // namespace

std::vector<std::string> check_extension_closure(const TriangulatedStructure& t, const TwinCotorsionPair& twin)
{
    const LinearCategory& cat = t.cat();
    std::vector<std::string> bad;
    auto in_cm = [&](const Obj& x) { return twin.cminus.contains(x); };
    auto in_cp = [&](const Obj& x) { return twin.cplus.contains(x); };
    for (const Triangle& tri : sweep_triangles(t)) {
        Obj x1 = t.shift(tri.c, -1);
        std::string where = " on " + cat.describe(tri.f);
        if (twin.u().contains(tri.c) && in_cm(tri.a) && !in_cm(tri.b))
            bad.push_back("C⁻ not closed under extensions by U" + where);
        if (twin.s().contains(tri.c) && in_cm(tri.b) && !in_cm(tri.a))
            bad.push_back("C⁻ not closed under cocones from S" + where);
        if (twin.t().contains(x1) && in_cp(tri.b) && !in_cp(tri.a))
            bad.push_back("C⁺ not closed under cones into T" + where);
        if (twin.v().contains(x1) && in_cp(tri.a) && !in_cp(tri.b))
            bad.push_back("C⁺ not closed under extensions by V" + where);
    }
    return bad;
}

std::vector<std::string> check_approximation_factoring(const TriangulatedStructure& t, const TwinCotorsionPair& twin)
{
    const LinearCategory& cat = t.cat();
    const Fp& fp = cat.field();
    std::vector<std::string> bad;
    Subcategory u1 = t.shift(twin.u(), -1);
    for (int i = 0; i < t.size(); ++i) {
        Obj x = Obj::single(i);
        Triangle st = st_triangle(t, twin, x);  // S[-1] -> X -t_X-> T_X
        Triangle uv = [&] {
            StarResult r = t.in_star(u1, twin.v(), x);  // U[-1] -> X -v_X-> V_X
            if (r.verdict != Verdict::holds)
                throw EngineBugError("no (U[-1],V) triangle for " + cat.name(i));
            return *r.witness;
        }();
        for (int j = 0; j < t.size(); ++j) {
            Obj y = Obj::single(j);
            auto image_of = [&](const Mor& through) {
                Matrix m = cat.pre_matrix(through, y);
                Subspace s(fp, cat.hom_dim(x, y));
                for (int c = 0; c < m.cols(); ++c)
                    s.add(m.col(c));
                return s;
            };
            if (!image_of(st.g).contains(factoring_ideal(cat, twin.t(), x, y)))
                bad.push_back("maps into T do not factor through t_X at " + cat.name(i) + " -> " + cat.name(j));
            if (!image_of(uv.g).contains(factoring_ideal(cat, twin.v(), x, y)))
                bad.push_back("maps into V do not factor through v_X at " + cat.name(i) + " -> " + cat.name(j));
        }
    }
    return bad;
}

std::vector<std::string> check_summand_closure(const TriangulatedStructure& t, const TwinCotorsionPair& twin)
{
    const LinearCategory& cat = t.cat();
    std::vector<std::string> bad;
    for (int i = 0; i < t.size(); ++i)
        for (int j = i; j < t.size(); ++j) {
            Obj x({i, j});
            Membership m = membership_Cpm(t, twin, x);
            bool cm = m.in_cminus == Verdict::holds, cp = m.in_cplus == Verdict::holds;
            if (cm != twin.cminus.contains(x))
                bad.push_back("C- membership of " + cat.describe(x) + " is not summandwise");
            if (cp != twin.cplus.contains(x))
                bad.push_back("C+ membership of " + cat.describe(x) + " is not summandwise");
            if (m.in_h != twin.h.contains(x))
                bad.push_back("H membership of " + cat.describe(x) + " is not summandwise");
        }
    return bad;
}

}  // namespace twinheart
