#include "twinheart/lincat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twinheart {

EnumerationBudgetError::EnumerationBudgetError(int dimension, std::uint64_t cap)
    : std::runtime_error("enumeration budget exceeded: hom dimension " + std::to_string(dimension) +
                         " exceeds cap " + std::to_string(cap)),
      dim_(dimension)
{
}

void ValidationReport::append(const ValidationReport& other)
{
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
}

Obj::Obj(std::vector<int> summands) : ids_(std::move(summands))
{
    std::sort(ids_.begin(), ids_.end());
}

int Obj::multiplicity(int id) const
{
    return int(std::count(ids_.begin(), ids_.end(), id));
}

DirectSum direct_sum(const Obj& x, const Obj& y)
{
    // tag each summand with its origin so the merge is stable and reproducible
    std::vector<std::pair<int, int>> tagged;
    for (int s = 0; s < x.size(); ++s)
        tagged.emplace_back(x[s], s);
    for (int s = 0; s < y.size(); ++s)
        tagged.emplace_back(y[s], x.size() + s);
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    DirectSum ds;
    std::vector<int> ids;
    ds.first_pos.resize(x.size());
    ds.second_pos.resize(y.size());
    for (int pos = 0; pos < int(tagged.size()); ++pos) {
        ids.push_back(tagged[pos].first);
        int origin = tagged[pos].second;
        if (origin < x.size())
            ds.first_pos[origin] = pos;
        else
            ds.second_pos[origin - x.size()] = pos;
    }
    ds.obj = Obj(std::move(ids));
    return ds;
}

LinearCategory::LinearCategory(int p, std::vector<std::string> names,
                               std::vector<std::vector<int>> hom_dims,
                               std::vector<Vec> comp, std::vector<Vec> identities)
    : f_(p), n_(int(names.size())), names_(std::move(names)), comp_(std::move(comp)),
      ids_(std::move(identities))
{
    if (int(hom_dims.size()) != n_)
        throw FormatError("hom_dim table has " + std::to_string(hom_dims.size()) + " rows, expected " +
                          std::to_string(n_));
    dims_.assign(std::size_t(n_) * n_, 0);
    for (int i = 0; i < n_; ++i) {
        if (int(hom_dims[i].size()) != n_)
            throw FormatError("hom_dim row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n_; ++j) {
            if (hom_dims[i][j] < 0)
                throw FormatError("negative hom dimension at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            dims_[std::size_t(i) * n_ + j] = hom_dims[i][j];
        }
    }
    if (comp_.size() != std::size_t(n_) * n_ * n_)
        throw FormatError("composition table must have n^3 tensors");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                const Vec& t = comp_tensor(i, j, k);
                std::size_t want = std::size_t(hom_dim(j, k)) * hom_dim(i, j) * hom_dim(i, k);
                if (t.size() != want)
                    throw FormatError("composition tensor (" + std::to_string(i) + "," + std::to_string(j) +
                                      "," + std::to_string(k) + ") has " + std::to_string(t.size()) +
                                      " entries, expected " + std::to_string(want));
                for (int v : t)
                    if (v < 0 || v >= p)
                        throw FormatError("composition tensor (" + std::to_string(i) + "," +
                                          std::to_string(j) + "," + std::to_string(k) +
                                          ") has an entry outside F_p");
            }
    if (int(ids_.size()) != n_)
        throw FormatError("identity table has wrong length");
    for (int i = 0; i < n_; ++i) {
        if (int(ids_[i].size()) != hom_dim(i, i))
            throw FormatError("identity coordinates of " + std::to_string(i) + " have wrong length");
        for (int v : ids_[i])
            if (v < 0 || v >= p)
                throw FormatError("identity coordinates of " + std::to_string(i) + " outside F_p");
    }
}

int LinearCategory::comp_coeff(int i, int j, int k, int b, int a, int c) const
{
    const int dij = hom_dim(i, j), dik = hom_dim(i, k);
    return comp_tensor(i, j, k)[(std::size_t(b) * dij + a) * dik + c];
}

Vec LinearCategory::compose_basis(int i, int j, int k, int b, int a) const
{
    const int dij = hom_dim(i, j), dik = hom_dim(i, k);
    const Vec& t = comp_tensor(i, j, k);
    auto start = t.begin() + (std::size_t(b) * dij + a) * dik;
    return Vec(start, start + dik);
}

Vec LinearCategory::compose_indec(int i, int j, int k, const Vec& g, const Vec& f) const
{
    const int dij = hom_dim(i, j), djk = hom_dim(j, k), dik = hom_dim(i, k);
    const Vec& t = comp_tensor(i, j, k);
    const int p = f_.p();
    Vec out(dik, 0);
    for (int b = 0; b < djk; ++b) {
        if (g[b] == 0)
            continue;
        for (int a = 0; a < dij; ++a) {
            int c = g[b] * f[a] % p;
            if (c == 0)
                continue;
            const int* row = t.data() + (std::size_t(b) * dij + a) * dik;
            for (int r = 0; r < dik; ++r)
                out[r] = (out[r] + c * row[r]) % p;
        }
    }
    return out;
}

void LinearCategory::check_obj(const Obj& x) const
{
    for (int id : x.summands())
        if (id < 0 || id >= n_)
            throw FormatError("object summand id " + std::to_string(id) + " out of range");
}

int LinearCategory::hom_dim(const Obj& x, const Obj& y) const
{
    int d = 0;
    for (int a : x.summands())
        for (int b : y.summands())
            d += hom_dim(a, b);
    return d;
}

std::size_t LinearCategory::block_offset(const Obj& x, const Obj& y, int s, int t) const
{
    std::size_t off = 0;
    for (int s2 = 0; s2 < s; ++s2)
        for (int b : y.summands())
            off += hom_dim(x[s2], b);
    for (int t2 = 0; t2 < t; ++t2)
        off += hom_dim(x[s], y[t2]);
    return off;
}

Vec LinearCategory::block(const Mor& m, int s, int t) const
{
    std::size_t off = block_offset(m.src, m.dst, s, t);
    int d = hom_dim(m.src[s], m.dst[t]);
    return Vec(m.coords.begin() + off, m.coords.begin() + off + d);
}

void LinearCategory::set_block(Mor& m, int s, int t, const Vec& v) const
{
    std::size_t off = block_offset(m.src, m.dst, s, t);
    int d = hom_dim(m.src[s], m.dst[t]);
    if (int(v.size()) != d)
        throw CompositionError("block length mismatch");
    std::copy(v.begin(), v.end(), m.coords.begin() + off);
}

Mor LinearCategory::zero(const Obj& x, const Obj& y) const
{
    return Mor{x, y, Vec(hom_dim(x, y), 0)};
}

Mor LinearCategory::identity(const Obj& x) const
{
    Mor m = zero(x, x);
    for (int s = 0; s < x.size(); ++s)
        set_block(m, s, s, ids_[x[s]]);
    return m;
}

Mor LinearCategory::from_coords(const Obj& x, const Obj& y, Vec coords) const
{
    if (int(coords.size()) != hom_dim(x, y))
        throw CompositionError("coordinate vector has length " + std::to_string(coords.size()) +
                               ", hom space has dimension " + std::to_string(hom_dim(x, y)));
    return Mor{x, y, std::move(coords)};
}

Mor LinearCategory::compose(const Mor& g, const Mor& f) const
{
    if (f.dst != g.src)
        throw CompositionError("cannot compose: " + describe(f.dst) + " != " + describe(g.src));
    const Obj& x = f.src;
    const Obj& y = f.dst;
    const Obj& z = g.dst;
    const int p = f_.p();
    Mor out = zero(x, z);
    // offsets of the blocks of f and g
    std::vector<std::size_t> foff(std::size_t(x.size()) * y.size());
    {
        std::size_t off = 0;
        for (int s = 0; s < x.size(); ++s)
            for (int t = 0; t < y.size(); ++t) {
                foff[std::size_t(s) * y.size() + t] = off;
                off += hom_dim(x[s], y[t]);
            }
    }
    std::vector<std::size_t> goff(std::size_t(y.size()) * z.size());
    {
        std::size_t off = 0;
        for (int t = 0; t < y.size(); ++t)
            for (int u = 0; u < z.size(); ++u) {
                goff[std::size_t(t) * z.size() + u] = off;
                off += hom_dim(y[t], z[u]);
            }
    }
    std::size_t ooff = 0;
    for (int s = 0; s < x.size(); ++s)
        for (int u = 0; u < z.size(); ++u) {
            const int i = x[s], k = z[u];
            const int dik = hom_dim(i, k);
            for (int t = 0; t < y.size(); ++t) {
                const int j = y[t];
                const int dij = hom_dim(i, j), djk = hom_dim(j, k);
                if (dij == 0 || djk == 0 || dik == 0)
                    continue;
                const int* fb = f.coords.data() + foff[std::size_t(s) * y.size() + t];
                const int* gb = g.coords.data() + goff[std::size_t(t) * z.size() + u];
                const Vec& tensor = comp_tensor(i, j, k);
                for (int b = 0; b < djk; ++b) {
                    if (gb[b] == 0)
                        continue;
                    for (int a = 0; a < dij; ++a) {
                        int c = gb[b] * fb[a] % p;
                        if (c == 0)
                            continue;
                        const int* row = tensor.data() + (std::size_t(b) * dij + a) * dik;
                        int* dst = out.coords.data() + ooff;
                        for (int r = 0; r < dik; ++r)
                            dst[r] = (dst[r] + c * row[r]) % p;
                    }
                }
            }
            ooff += dik;
        }
    return out;
}

Mor LinearCategory::add(const Mor& a, const Mor& b) const
{
    if (a.src != b.src || a.dst != b.dst)
        throw CompositionError("cannot add morphisms with different source or target");
    return Mor{a.src, a.dst, f_.sum(a.coords, b.coords)};
}

Mor LinearCategory::sub(const Mor& a, const Mor& b) const
{
    if (a.src != b.src || a.dst != b.dst)
        throw CompositionError("cannot subtract morphisms with different source or target");
    return Mor{a.src, a.dst, f_.diff(a.coords, b.coords)};
}

Mor LinearCategory::scale(int c, const Mor& a) const
{
    return Mor{a.src, a.dst, f_.scaled(f_.norm(c), a.coords)};
}

Mor LinearCategory::injection(const DirectSum& ds, bool first) const
{
    const std::vector<int>& pos = first ? ds.first_pos : ds.second_pos;
    std::vector<int> ids;
    for (int q : pos)
        ids.push_back(ds.obj[q]);
    Obj part(ids);
    Mor m = zero(part, ds.obj);
    for (int s = 0; s < part.size(); ++s)
        set_block(m, s, pos[s], ids_[part[s]]);
    return m;
}

Mor LinearCategory::projection(const DirectSum& ds, bool first) const
{
    const std::vector<int>& pos = first ? ds.first_pos : ds.second_pos;
    std::vector<int> ids;
    for (int q : pos)
        ids.push_back(ds.obj[q]);
    Obj part(ids);
    Mor m = zero(ds.obj, part);
    for (int s = 0; s < part.size(); ++s)
        set_block(m, pos[s], s, ids_[part[s]]);
    return m;
}

Mor LinearCategory::row_pair(const DirectSum& ds, const Mor& f, const Mor& g) const
{
    return add(compose(f, projection(ds, true)), compose(g, projection(ds, false)));
}

Mor LinearCategory::column_pair(const DirectSum& ds, const Mor& f, const Mor& g) const
{
    return add(compose(injection(ds, true), f), compose(injection(ds, false), g));
}

Mor LinearCategory::sum_map(const DirectSum& src, const DirectSum& dst, const Mor& f, const Mor& g) const
{
    Mor a = compose(injection(dst, true), compose(f, projection(src, true)));
    Mor b = compose(injection(dst, false), compose(g, projection(src, false)));
    return add(a, b);
}

HomBasis LinearCategory::hom_space(const Obj& x, const Obj& y) const
{
    HomBasis hb{x, y, {}};
    int d = hom_dim(x, y);
    for (int k = 0; k < d; ++k) {
        Mor m = zero(x, y);
        m.coords[k] = 1;
        hb.elems.push_back(std::move(m));
    }
    return hb;
}

Matrix LinearCategory::post_matrix(const Mor& g, const Obj& x) const
{
    const int din = hom_dim(x, g.src), dout = hom_dim(x, g.dst);
    Matrix m(dout, din);
    for (int k = 0; k < din; ++k) {
        Mor e = zero(x, g.src);
        e.coords[k] = 1;
        m.set_col(k, compose(g, e).coords);
    }
    return m;
}

Matrix LinearCategory::pre_matrix(const Mor& f, const Obj& y) const
{
    const int din = hom_dim(f.dst, y), dout = hom_dim(f.src, y);
    Matrix m(dout, din);
    for (int k = 0; k < din; ++k) {
        Mor e = zero(f.dst, y);
        e.coords[k] = 1;
        m.set_col(k, compose(e, f).coords);
    }
    return m;
}

std::string LinearCategory::describe(const Obj& x) const
{
    if (x.is_zero())
        return "0";
    std::ostringstream os;
    for (int s = 0; s < x.size(); ++s) {
        if (s)
            os << " + ";
        os << names_[x[s]];
    }
    return os.str();
}

std::string LinearCategory::describe(const Mor& m) const
{
    std::ostringstream os;
    os << describe(m.src) << " -> " << describe(m.dst) << " [";
    for (std::size_t i = 0; i < m.coords.size(); ++i)
        os << (i ? " " : "") << m.coords[i];
    os << "]";
    return os.str();
}

namespace {

std::string triple_name(const LinearCategory& cat, int i, int j, int k)
{
    return "(" + cat.name(i) + "," + cat.name(j) + "," + cat.name(k) + ")";
}

}  // namespace

ValidationReport validate_category(const LinearCategory& cat)
{
    ValidationReport rep;
    const int n = cat.size();
    const Fp& f = cat.field();

    // identity laws
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int d = cat.hom_dim(i, j);
            for (int a = 0; a < d; ++a) {
                Vec e(d, 0);
                e[a] = 1;
                if (cat.compose_indec(i, j, j, cat.identity_coeffs(j), e) != e)
                    rep.add("left identity law fails on basis " + std::to_string(a) + " of hom" +
                            triple_name(cat, i, j, j));
                if (cat.compose_indec(i, i, j, e, cat.identity_coeffs(i)) != e)
                    rep.add("right identity law fails on basis " + std::to_string(a) + " of hom" +
                            triple_name(cat, i, i, j));
            }
        }

    // associativity on every basis triple
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int dij = cat.hom_dim(i, j);
            if (dij == 0)
                continue;
            for (int k = 0; k < n; ++k) {
                const int djk = cat.hom_dim(j, k);
                if (djk == 0)
                    continue;
                for (int l = 0; l < n; ++l) {
                    const int dkl = cat.hom_dim(k, l);
                    if (dkl == 0)
                        continue;
                    bool bad = false;
                    for (int a = 0; a < dij && !bad; ++a)
                        for (int b = 0; b < djk && !bad; ++b)
                            for (int c = 0; c < dkl && !bad; ++c) {
                                Vec ba = cat.compose_basis(i, j, k, b, a);
                                Vec cb = cat.compose_basis(j, k, l, c, b);
                                Vec ea(dij, 0);
                                ea[a] = 1;
                                Vec ec(dkl, 0);
                                ec[c] = 1;
                                Vec left = cat.compose_indec(i, k, l, ec, ba);
                                Vec right = cat.compose_indec(i, j, l, cb, ea);
                                if (left != right) {
                                    rep.add("associativity fails on basis triple (" + std::to_string(a) + "," +
                                            std::to_string(b) + "," + std::to_string(c) + ") over objects (" +
                                            cat.name(i) + "," + cat.name(j) + "," + cat.name(k) + "," +
                                            cat.name(l) + "); tensors " + triple_name(cat, i, j, k) + ", " +
                                            triple_name(cat, j, k, l) + ", " + triple_name(cat, i, k, l) +
                                            ", " + triple_name(cat, i, j, l));
                                    bad = true;
                                }
                            }
                }
            }
        }
    if (!rep.ok())
        return rep;

    // Krull-Schmidt presentation: local endomorphism rings, and no two
    // indecomposables isomorphic.
    for (int i = 0; i < n; ++i) {
        const int d = cat.hom_dim(i, i);
        if (d == 0) {
            rep.add("indecomposable " + cat.name(i) + " has zero endomorphism ring");
            continue;
        }
        if (checked_power(cat.p(), d, default_enumeration_cap()) == 0) {
            rep.add("endomorphism ring of " + cat.name(i) + " too large to check locality");
            continue;
        }
        // an element is a unit iff left multiplication is invertible
        std::vector<Vec> non_units;
        enumerate_span(f, [&] {
            std::vector<Vec> g;
            for (int a = 0; a < d; ++a) {
                Vec e(d, 0);
                e[a] = 1;
                g.push_back(e);
            }
            return g;
        }(), d, [&](const Vec& x) {
            Matrix lm(d, d);
            for (int a = 0; a < d; ++a) {
                Vec e(d, 0);
                e[a] = 1;
                lm.set_col(a, cat.compose_indec(i, i, i, x, e));
            }
            if (rank(f, lm) < d)
                non_units.push_back(x);
            return true;
        });
        Subspace span = Subspace::span(f, d, non_units);
        if (int(non_units.size()) != 0) {
            std::uint64_t expected = checked_power(cat.p(), span.dim(), ~std::uint64_t(0));
            if (expected != non_units.size())
                rep.add("endomorphism ring of " + cat.name(i) + " is not local");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // i ≅ j iff some g∘f is a unit of End(i) and f∘g a unit of End(j);
            // in a local ring it suffices that some composite g∘f is a unit.
            const int dij = cat.hom_dim(i, j), dji = cat.hom_dim(j, i), dii = cat.hom_dim(i, i);
            if (dij == 0 || dji == 0)
                continue;
            std::vector<Vec> comps;
            for (int a = 0; a < dij; ++a)
                for (int b = 0; b < dji; ++b)
                    comps.push_back(cat.compose_basis(i, j, i, b, a));
            // the span of composites is an ideal; it is proper iff it is
            // contained in the radical, i.e. contains no unit. Test the
            // identity directly: proper ideals never contain it.
            Subspace s = Subspace::span(f, dii, comps);
            if (s.contains(cat.identity_coeffs(i)))
                rep.add("indecomposables " + cat.name(i) + " and " + cat.name(j) + " are isomorphic");
        }
    return rep;
}

std::uint64_t default_enumeration_cap()
{
    return std::uint64_t(1) << 20;
}

std::uint64_t checked_power(int p, int dim, std::uint64_t cap)
{
    std::uint64_t total = 1;
    for (int i = 0; i < dim; ++i) {
        if (total > cap / std::uint64_t(p))
            return 0;
        total *= std::uint64_t(p);
    }
    return total <= cap ? total : 0;
}

void enumerate_span(const Fp& f, const std::vector<Vec>& gens, int ambient,
                    const std::function<bool(const Vec&)>& visit, std::uint64_t cap)
{
    const int k = int(gens.size());
    if (checked_power(f.p(), k, cap) == 0)
        throw EnumerationBudgetError(k, cap);
    std::vector<int> digits(k, 0);
    Vec v(ambient, 0);
    while (true) {
        if (!visit(v))
            return;
        int i = 0;
        while (i < k) {
            // digit i goes up by one: add gens[i]
            f.axpy(v, 1, gens[i]);
            if (++digits[i] < f.p())
                break;
            digits[i] = 0;  // p additions returned v to its previous value
            ++i;
        }
        if (i == k)
            return;
    }
}

void enumerate_morphisms(const LinearCategory& cat, const Obj& x, const Obj& y,
                         const std::function<bool(const Mor&)>& visit, std::uint64_t cap)
{
    const int d = cat.hom_dim(x, y);
    if (checked_power(cat.p(), d, cap) == 0)
        throw EnumerationBudgetError(d, cap);
    std::vector<Vec> gens;
    for (int a = 0; a < d; ++a) {
        Vec e(d, 0);
        e[a] = 1;
        gens.push_back(std::move(e));
    }
    Mor m = cat.zero(x, y);
    enumerate_span(cat.field(), gens, d, [&](const Vec& v) {
        m.coords = v;
        return visit(m);
    }, cap);
}

}  // namespace twinheart
