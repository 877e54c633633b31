#include "twinheart/tricat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace twinheart {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds:
        return "holds";
    case Verdict::fails:
        return "fails";
    case Verdict::indeterminate:
        return "indeterminate";
    }
    return "?";
}

Subcategory::Subcategory(int universe, std::vector<int> members) : mask_(universe, false)
{
    for (int id : members) {
        if (id < 0 || id >= universe)
            throw FormatError("subcategory member " + std::to_string(id) + " out of range");
        mask_[id] = true;
    }
}

Subcategory Subcategory::all(int universe)
{
    Subcategory s;
    s.mask_.assign(universe, true);
    return s;
}

bool Subcategory::contains(const Obj& x) const
{
    for (int id : x.summands())
        if (!mask_[id])
            return false;
    return true;
}

std::vector<int> Subcategory::members() const
{
    std::vector<int> out;
    for (int i = 0; i < universe(); ++i)
        if (mask_[i])
            out.push_back(i);
    return out;
}

int Subcategory::count() const
{
    return int(std::count(mask_.begin(), mask_.end(), true));
}

bool Subcategory::subset_of(const Subcategory& other) const
{
    for (int i = 0; i < universe(); ++i)
        if (mask_[i] && !other.mask_[i])
            return false;
    return true;
}

Subcategory Subcategory::intersect(const Subcategory& other) const
{
    Subcategory s = *this;
    for (int i = 0; i < universe(); ++i)
        s.mask_[i] = mask_[i] && other.mask_[i];
    return s;
}

Subcategory Subcategory::unite(const Subcategory& other) const
{
    Subcategory s = *this;
    for (int i = 0; i < universe(); ++i)
        s.mask_[i] = mask_[i] || other.mask_[i];
    return s;
}

std::string Subcategory::key() const
{
    std::string k;
    for (bool b : mask_)
        k.push_back(b ? '1' : '0');
    return k;
}

std::string morphism_key(const Mor& f)
{
    std::ostringstream os;
    for (int i = 0; i < f.src.size(); ++i)
        os << (i ? "," : "") << f.src[i];
    os << "|";
    for (int i = 0; i < f.dst.size(); ++i)
        os << (i ? "," : "") << f.dst[i];
    os << "|";
    for (int v : f.coords)
        os << v;
    return os.str();
}

TriangulatedStructure::TriangulatedStructure(LinearCategory base, std::vector<int> shift_perm,
                                             std::vector<Matrix> shift_mats,
                                             std::shared_ptr<const ConeProcedure> procedure,
                                             std::map<std::string, Triangle> cone_table)
    : cat_(std::move(base)), perm_(std::move(shift_perm)), mats_(std::move(shift_mats)),
      proc_(std::move(procedure)), table_(std::move(cone_table)), memo_(std::make_unique<Memo>())
{
    const int n = cat_.size();
    if (int(perm_.size()) != n)
        throw FormatError("shift permutation has wrong length");
    inv_perm_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (perm_[i] < 0 || perm_[i] >= n || inv_perm_[perm_[i]] != -1)
            throw FormatError("shift is not a permutation of the indecomposables (at " + cat_.name(i) + ")");
        inv_perm_[perm_[i]] = i;
    }
    if (mats_.size() != std::size_t(n) * n)
        throw FormatError("shift matrix table must have n^2 entries");
    inv_mats_.resize(mats_.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Matrix& m = shift_matrix(i, j);
            int din = cat_.hom_dim(i, j), dout = cat_.hom_dim(perm_[i], perm_[j]);
            if (m.rows() != dout || m.cols() != din)
                throw FormatError("shift matrix for (" + cat_.name(i) + "," + cat_.name(j) + ") has shape " +
                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                                  std::to_string(dout) + "x" + std::to_string(din));
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    if (m(r, c) < 0 || m(r, c) >= cat_.p())
                        throw FormatError("shift matrix entry outside F_p");
            inv_mats_[std::size_t(i) * n + j] = inverse(cat_.field(), m);
        }

    // Jacobson radical of each endomorphism ring: the non-units, which form
    // a subspace when the ring is local.
    rad_.resize(n);
    const Fp& f = cat_.field();
    for (int i = 0; i < n; ++i) {
        const int d = cat_.hom_dim(i, i);
        if (d == 0 || checked_power(f.p(), d, default_enumeration_cap()) == 0)
            continue;
        std::vector<Vec> units_basis;
        for (int a = 0; a < d; ++a) {
            Vec e(d, 0);
            e[a] = 1;
            units_basis.push_back(e);
        }
        Subspace non_units(f, d);
        enumerate_span(f, units_basis, d, [&](const Vec& x) {
            Matrix lm(d, d);
            for (int a = 0; a < d; ++a) {
                Vec e(d, 0);
                e[a] = 1;
                lm.set_col(a, cat_.compose_indec(i, i, i, x, e));
            }
            if (rank(f, lm) < d)
                non_units.add(x);
            return true;
        });
        rad_[i] = non_units.basis();
    }
}

int TriangulatedStructure::shift_id(int i, int k) const
{
    while (k > 0) {
        i = perm_[i];
        --k;
    }
    while (k < 0) {
        i = inv_perm_[i];
        ++k;
    }
    return i;
}

std::vector<int> TriangulatedStructure::shift_positions(const Obj& x, int k) const
{
    std::vector<std::pair<int, int>> tagged;
    for (int s = 0; s < x.size(); ++s)
        tagged.emplace_back(shift_id(x[s], k), s);
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> pos(x.size());
    for (int q = 0; q < int(tagged.size()); ++q)
        pos[tagged[q].second] = q;
    return pos;
}

Obj TriangulatedStructure::shift(const Obj& x, int k) const
{
    std::vector<int> ids;
    for (int id : x.summands())
        ids.push_back(shift_id(id, k));
    return Obj(std::move(ids));
}

Subcategory TriangulatedStructure::shift(const Subcategory& s, int k) const
{
    std::vector<int> ids;
    for (int id : s.members())
        ids.push_back(shift_id(id, k));
    return Subcategory(s.universe(), ids);
}

Mor TriangulatedStructure::shift(const Mor& m, int k) const
{
    if (k == 0)
        return m;
    if (k > 1)
        return shift(shift(m, 1), k - 1);
    if (k < -1)
        return shift(shift(m, -1), k + 1);
    const int n = size();
    Obj xs = shift(m.src, k), ys = shift(m.dst, k);
    std::vector<int> px = shift_positions(m.src, k), py = shift_positions(m.dst, k);
    Mor out = cat_.zero(xs, ys);
    for (int s = 0; s < m.src.size(); ++s)
        for (int t = 0; t < m.dst.size(); ++t) {
            Vec v = cat_.block(m, s, t);
            if (v.empty())
                continue;
            int i = m.src[s], j = m.dst[t];
            Vec w;
            if (k == 1) {
                w = apply(cat_.field(), mats_[std::size_t(i) * n + j], v);
            } else {
                int i0 = inv_perm_[i], j0 = inv_perm_[j];
                const auto& inv = inv_mats_[std::size_t(i0) * n + j0];
                if (!inv)
                    throw FormatError("shift is not invertible on hom(" + cat_.name(i0) + "," + cat_.name(j0) + ")");
                w = apply(cat_.field(), *inv, v);
            }
            cat_.set_block(out, px[s], py[t], w);
        }
    return out;
}

Triangle TriangulatedStructure::cone(const Mor& f) const
{
    cat_.check_obj(f.src);
    cat_.check_obj(f.dst);
    if (int(f.coords.size()) != cat_.hom_dim(f.src, f.dst))
        throw CompositionError("cone: malformed morphism");
    // degenerate inputs never reach the oracle
    if (f.src.is_zero()) {
        Obj zero;
        return Triangle{zero, f.dst, f.dst, f, cat_.identity(f.dst), cat_.zero(f.dst, zero)};
    }
    if (f.dst.is_zero()) {
        Obj a1 = shift(f.src);
        return Triangle{f.src, f.dst, a1, f, cat_.zero(f.dst, a1), cat_.neg(cat_.identity(a1))};
    }
    std::string key = morphism_key(f);
    if (auto it = table_.find(key); it != table_.end())
        return it->second;
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        if (auto it = memo_->cones.find(key); it != memo_->cones.end())
            return it->second;
    }
    Triangle t = compute_cone(f);
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->cones.emplace(key, t);
    return t;
}

std::size_t TriangulatedStructure::cones_computed() const
{
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->cones.size();
}

Triangle TriangulatedStructure::compute_cone(const Mor& f) const
{
    if (!proc_)
        throw UnsupportedMorphismError("no cone recorded for " + cat_.describe(f) + " and no cone procedure");
    Triangle t = proc_->cone(*this, f);
    if (t.f != f)
        throw UnsupportedMorphismError("cone procedure " + proc_->name() + " returned a triangle on another morphism");
    return t;
}

Triangle TriangulatedStructure::rotate(const Triangle& t) const
{
    Obj a1 = shift(t.a);
    return Triangle{t.b, t.c, a1, t.g, t.h, cat_.neg(shift(t.f))};
}

Triangle TriangulatedStructure::rotate_back(const Triangle& t) const
{
    Obj c0 = shift(t.c, -1);
    return Triangle{c0, t.a, t.b, cat_.neg(shift(t.h, -1)), t.f, t.g};
}

Triangle TriangulatedStructure::cocone(const Mor& f) const
{
    return rotate_back(cone(f));
}

bool TriangulatedStructure::hom_vanishes(const Subcategory& m, const Subcategory& n) const
{
    for (int i : m.members())
        for (int j : n.members())
            if (cat_.hom_dim(i, j) != 0)
                return false;
    return true;
}

bool TriangulatedStructure::ext1_vanishes(const Subcategory& m, const Subcategory& n) const
{
    return hom_vanishes(m, shift(n));
}

Subcategory TriangulatedStructure::left_perp(const Subcategory& n) const
{
    std::vector<int> ids;
    for (int i = 0; i < size(); ++i) {
        bool ok = true;
        for (int j : n.members())
            if (cat_.hom_dim(i, j) != 0) {
                ok = false;
                break;
            }
        if (ok)
            ids.push_back(i);
    }
    return Subcategory(size(), ids);
}

Subcategory TriangulatedStructure::right_perp(const Subcategory& m) const
{
    std::vector<int> ids;
    for (int i = 0; i < size(); ++i) {
        bool ok = true;
        for (int j : m.members())
            if (cat_.hom_dim(j, i) != 0) {
                ok = false;
                break;
            }
        if (ok)
            ids.push_back(i);
    }
    return Subcategory(size(), ids);
}

namespace {

// Morphism from ⊕ members^{mult} to c whose columns are the given vectors
// of hom(member, c); columns are grouped by member in increasing id order.
Mor assemble_columns(const LinearCategory& cat, const Obj& c, const std::vector<int>& ids,
                     const std::vector<std::vector<Vec>>& columns)
{
    std::vector<int> src;
    Vec coords;
    for (std::size_t q = 0; q < ids.size(); ++q)
        for (const Vec& col : columns[q]) {
            src.push_back(ids[q]);
            coords.insert(coords.end(), col.begin(), col.end());
        }
    return cat.from_coords(Obj(src), c, std::move(coords));
}

}  // namespace

Mor TriangulatedStructure::minimal_right_approximation(const Subcategory& m, const Obj& c) const
{
    std::vector<int> ids;
    std::vector<std::vector<Vec>> columns;
    for (int i : m.members()) {
        const int hi = cat_.hom_dim(Obj::single(i), c);
        if (hi == 0)
            continue;
        // radical maps i -> C: composites i -> j -> C with i -> j radical
        Subspace rad(cat_.field(), hi);
        for (int j : m.members()) {
            const int hj = cat_.hom_dim(Obj::single(j), c);
            if (hj == 0)
                continue;
            std::vector<Vec> rij;
            if (i == j) {
                rij = rad_[i];
            } else {
                for (int a = 0; a < cat_.hom_dim(i, j); ++a) {
                    Vec e(cat_.hom_dim(i, j), 0);
                    e[a] = 1;
                    rij.push_back(e);
                }
            }
            for (const Vec& r : rij) {
                Mor rm = cat_.from_coords(Obj::single(i), Obj::single(j), r);
                for (int b = 0; b < hj; ++b) {
                    Mor cm = cat_.zero(Obj::single(j), c);
                    cm.coords[b] = 1;
                    rad.add(cat_.compose(cm, rm).coords);
                }
            }
        }
        std::vector<Vec> cols;
        for (int pos : rad.free_positions()) {
            Vec e(hi, 0);
            e[pos] = 1;
            cols.push_back(e);
        }
        if (!cols.empty()) {
            ids.push_back(i);
            columns.push_back(std::move(cols));
        }
    }
    return assemble_columns(cat_, c, ids, columns);
}

StarResult TriangulatedStructure::in_star(const Subcategory& m, const Subcategory& n, const Obj& c,
                                          const StarBudget& budget) const
{
    StarResult res;
    if (c.is_zero()) {
        Obj z;
        res.verdict = Verdict::holds;
        res.witness = Triangle{z, z, z, cat_.zero(z, z), cat_.zero(z, z), cat_.zero(z, z)};
        return res;
    }
    auto try_map = [&](const Mor& a) -> bool {
        ++res.cones_tried;
        Triangle t = cone(a);
        if (n.contains(t.c)) {
            res.verdict = Verdict::holds;
            res.witness = t;
            return true;
        }
        return false;
    };

    // If Hom(M, N) = 0 the first map of any witness is a right
    // approximation, and its cone contains the cone of the minimal one as a
    // summand. So the minimal approximation decides membership.
    Mor approx = minimal_right_approximation(m, c);
    if (try_map(approx))
        return res;
    if (hom_vanishes(m, n)) {
        res.verdict = Verdict::fails;
        return res;
    }

    // General case. Up to automorphisms of M' = ⊕ M_i^{d_i} (column
    // operations inside each isotypic block) the first map is determined by
    // a subspace of each hom(M_i, C) plus zero columns, and zero columns only
    // add summands M_i[1] to the cone, which can be split off a witness.
    // Enumerating one echelon basis per subspace tuple is therefore complete.
    std::vector<int> ids;
    std::vector<int> dims;
    for (int i : m.members()) {
        int h = cat_.hom_dim(Obj::single(i), c);
        if (h > 0) {
            ids.push_back(i);
            dims.push_back(h);
        }
    }
    std::vector<std::vector<Vec>> chosen(ids.size());
    bool exhausted_budget = false;
    std::function<bool(std::size_t)> rec = [&](std::size_t q) -> bool {
        if (q == ids.size()) {
            if (res.cones_tried >= budget.max_cones) {
                exhausted_budget = true;
                return true;
            }
            return try_map(assemble_columns(cat_, c, ids, chosen));
        }
        for (int r = 0; r <= dims[q]; ++r) {
            bool found = false;
            for_each_subspace(cat_.field(), dims[q], r, [&](const std::vector<Vec>& basis) {
                chosen[q] = basis;
                if (rec(q + 1)) {
                    found = true;
                    return false;
                }
                return !exhausted_budget;
            });
            if (found)
                return true;
            if (exhausted_budget)
                return false;
        }
        return false;
    };
    if (rec(0))
        return res;
    res.verdict = exhausted_budget ? Verdict::indeterminate : Verdict::fails;
    return res;
}

ValidationReport validate_triangle(const TriangulatedStructure& t, const Triangle& tri)
{
    ValidationReport rep;
    const LinearCategory& cat = t.cat();
    const Fp& fp = cat.field();
    auto where = [&] {
        return " in triangle " + cat.describe(tri.a) + " -> " + cat.describe(tri.b) + " -> " + cat.describe(tri.c) +
               " (f = " + cat.describe(tri.f) + ")";
    };
    Obj a1 = t.shift(tri.a), b1 = t.shift(tri.b);
    if (tri.f.src != tri.a || tri.f.dst != tri.b || tri.g.src != tri.b || tri.g.dst != tri.c ||
        tri.h.src != tri.c || tri.h.dst != a1) {
        rep.add("shape mismatch" + where());
        return rep;
    }
    Mor f1 = t.shift(tri.f);
    if (!is_zero(cat.compose(tri.g, tri.f).coords))
        rep.add("g∘f != 0" + where());
    if (!is_zero(cat.compose(tri.h, tri.g).coords))
        rep.add("h∘g != 0" + where());
    if (!is_zero(cat.compose(f1, tri.h).coords))
        rep.add("f[1]∘h != 0" + where());
    if (!rep.ok())
        return rep;
    for (int x = 0; x < cat.size(); ++x) {
        Obj X = Obj::single(x);
        int rf = rank(fp, cat.post_matrix(tri.f, X));
        int rg = rank(fp, cat.post_matrix(tri.g, X));
        int rh = rank(fp, cat.post_matrix(tri.h, X));
        int rf1 = rank(fp, cat.post_matrix(f1, X));
        if (rf + rg != cat.hom_dim(X, tri.b))
            rep.add("hom(" + cat.name(x) + ",-) not exact at B" + where());
        if (rg + rh != cat.hom_dim(X, tri.c))
            rep.add("hom(" + cat.name(x) + ",-) not exact at C" + where());
        if (rh + rf1 != cat.hom_dim(X, a1))
            rep.add("hom(" + cat.name(x) + ",-) not exact at A[1]" + where());
        int cf1 = rank(fp, cat.pre_matrix(f1, X));
        int ch = rank(fp, cat.pre_matrix(tri.h, X));
        int cg = rank(fp, cat.pre_matrix(tri.g, X));
        int cf = rank(fp, cat.pre_matrix(tri.f, X));
        if (cf1 + ch != cat.hom_dim(a1, X))
            rep.add("hom(-," + cat.name(x) + ") not exact at A[1]" + where());
        if (ch + cg != cat.hom_dim(tri.c, X))
            rep.add("hom(-," + cat.name(x) + ") not exact at C" + where());
        if (cg + cf != cat.hom_dim(tri.b, X))
            rep.add("hom(-," + cat.name(x) + ") not exact at B" + where());
        (void)b1;
    }
    return rep;
}

ValidationReport validate_triangulation(const TriangulatedStructure& t, const TriangulationCheckOptions& opt)
{
    ValidationReport rep;
    const LinearCategory& cat = t.cat();
    const int n = cat.size();
    const Fp& fp = cat.field();

    // shift is an additive autoequivalence
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int d = cat.hom_dim(i, j);
            if (d != cat.hom_dim(t.shift_id(i), t.shift_id(j)))
                rep.add("shift changes dim hom(" + cat.name(i) + "," + cat.name(j) + ")");
            else if (rank(fp, t.shift_matrix(i, j)) != d)
                rep.add("shift is not bijective on hom(" + cat.name(i) + "," + cat.name(j) + ")");
        }
    if (!rep.ok())
        return rep;
    for (int i = 0; i < n; ++i) {
        Mor id = cat.identity(Obj::single(i));
        if (t.shift(id) != cat.identity(Obj::single(t.shift_id(i))))
            rep.add("shift does not preserve the identity of " + cat.name(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                int dij = cat.hom_dim(i, j), djk = cat.hom_dim(j, k);
                for (int a = 0; a < dij; ++a)
                    for (int b = 0; b < djk; ++b) {
                        Mor fa = cat.zero(Obj::single(i), Obj::single(j));
                        fa.coords[a] = 1;
                        Mor gb = cat.zero(Obj::single(j), Obj::single(k));
                        gb.coords[b] = 1;
                        if (t.shift(cat.compose(gb, fa)) != cat.compose(t.shift(gb), t.shift(fa)))
                            rep.add("shift does not respect composition on (" + cat.name(i) + "," + cat.name(j) +
                                    "," + cat.name(k) + ")");
                    }
            }
    if (!rep.ok())
        return rep;

    auto check = [&](const Mor& f) {
        try {
            Triangle tri = t.cone(f);
            rep.append(validate_triangle(t, tri));
        } catch (const std::exception& e) {
            rep.add(std::string("cone failed on ") + cat.describe(f) + ": " + e.what());
        }
    };
    for (int i = 0; i < n; ++i) {
        Obj X = Obj::single(i);
        check(cat.identity(X));
        for (int j = 0; j < n; ++j) {
            Obj Y = Obj::single(j);
            check(cat.zero(X, Y));
            for (int a = 0; a < cat.hom_dim(i, j); ++a) {
                Mor m = cat.zero(X, Y);
                m.coords[a] = 1;
                check(m);
            }
        }
    }
    std::mt19937_64 rng(opt.seed);
    for (int s = 0; s < opt.random_block_samples && n > 0; ++s) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        Obj X({pick(rng), pick(rng)});
        Obj Y({pick(rng), pick(rng)});
        Mor m = cat.zero(X, Y);
        std::uniform_int_distribution<int> coef(0, cat.p() - 1);
        for (int& c : m.coords)
            c = coef(rng);
        check(m);
    }
    return rep;
}

namespace {

// Nonnegative integer solution of dims * mult = target, if there is one.
std::optional<std::vector<int>> solve_multiplicities(const std::vector<std::vector<int>>& dims,
                                                     const std::vector<int>& target)
{
    const int n = int(dims.size());
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c)
            a[r][c] = dims[r][c];
        a[r][n] = target[r];
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col]))
                piv = r;
        if (std::fabs(a[piv][col]) < 1e-9)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col)
                continue;
            long double factor = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c)
                a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<int> mult(n);
    for (int i = 0; i < n; ++i) {
        long double v = a[i][n] / a[i][i];
        long long rounded = std::llround(v);
        if (std::fabs(v - rounded) > 1e-6 || rounded < 0)
            return std::nullopt;
        mult[i] = int(rounded);
    }
    for (int r = 0; r < n; ++r) {
        long long s = 0;
        for (int c = 0; c < n; ++c)
            s += (long long)dims[r][c] * mult[c];
        if (s != target[r])
            return std::nullopt;
    }
    return mult;
}

}  // namespace

Triangle ExactCompletionProcedure::cone(const TriangulatedStructure& t, const Mor& f) const
{
    const LinearCategory& cat = t.cat();
    const Fp& fp = cat.field();
    const int n = cat.size();
    Obj a1 = t.shift(f.src), b1 = t.shift(f.dst);
    Mor f1 = t.shift(f);
    std::vector<int> target(n);
    std::vector<std::vector<int>> dims(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x) {
        Obj X = Obj::single(x);
        int coker = cat.hom_dim(X, f.dst) - rank(fp, cat.post_matrix(f, X));
        int ker = cat.hom_dim(X, a1) - rank(fp, cat.post_matrix(f1, X));
        target[x] = coker + ker;
        for (int i = 0; i < n; ++i)
            dims[x][i] = cat.hom_dim(x, i);
    }
    auto mult = solve_multiplicities(dims, target);
    if (!mult)
        throw UnsupportedMorphismError("exact_completion: no object has the hom dimensions of the cone of " +
                                       cat.describe(f));
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < (*mult)[i]; ++k)
            ids.push_back(i);
    Obj c(ids);

    std::optional<Triangle> found;
    std::vector<Vec> g_space = nullspace(fp, cat.pre_matrix(f, c));
    enumerate_span(fp, g_space, cat.hom_dim(f.dst, c), [&](const Vec& gv) {
        Mor g = cat.from_coords(f.dst, c, gv);
        for (int x = 0; x < n; ++x) {
            Obj X = Obj::single(x);
            if (rank(fp, cat.post_matrix(f, X)) + rank(fp, cat.post_matrix(g, X)) != cat.hom_dim(X, f.dst))
                return true;
            if (rank(fp, cat.pre_matrix(g, X)) + rank(fp, cat.pre_matrix(f, X)) != cat.hom_dim(f.dst, X))
                return true;
        }
        Matrix pg = cat.pre_matrix(g, a1);
        Matrix pf = cat.post_matrix(f1, c);
        Matrix stacked(pg.rows() + pf.rows(), pg.cols());
        for (int r = 0; r < pg.rows(); ++r)
            for (int col = 0; col < pg.cols(); ++col)
                stacked(r, col) = pg(r, col);
        for (int r = 0; r < pf.rows(); ++r)
            for (int col = 0; col < pf.cols(); ++col)
                stacked(pg.rows() + r, col) = pf(r, col);
        std::vector<Vec> h_space = nullspace(fp, stacked);
        enumerate_span(fp, h_space, cat.hom_dim(c, a1), [&](const Vec& hv) {
            Triangle tri{f.src, f.dst, c, f, g, cat.from_coords(c, a1, hv)};
            if (validate_triangle(t, tri).ok()) {
                found = tri;
                return false;
            }
            return true;
        });
        return !found;
    });
    if (!found)
        throw UnsupportedMorphismError("exact_completion: no exact completion of " + cat.describe(f));
    (void)b1;
    return *found;
}

}  // namespace twinheart
