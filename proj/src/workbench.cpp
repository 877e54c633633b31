#include "twinheart/workbench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"

namespace twinheart {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kEngineVersion = "1";

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Subcategory from_key(const std::string& key)
{
    std::vector<int> members;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (key[i] != '0' && key[i] != '1')
            throw InputError("bad subcategory key '" + key + "'");
        if (key[i] == '1')
            members.push_back(int(i));
    }
    return Subcategory(int(key.size()), members);
}

std::string file_safe(std::string s)
{
    for (char& c : s)
        if (c == '/')
            c = '_';
    return s;
}

void write_file(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + p.string());
    out << text;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json flags_json(const PairFlags& f)
{
    return {{"t_structure", f.t_structure},
            {"co_t_structure", f.co_t_structure},
            {"rigid", f.rigid},
            {"cluster_tilting", f.cluster_tilting}};
}

PairFlags flags_from_json(const json& j)
{
    PairFlags f;
    f.t_structure = f.t_alt = j.at("t_structure").get<bool>();
    f.co_t_structure = f.co_t_alt = j.at("co_t_structure").get<bool>();
    f.rigid = f.rigid_alt = j.at("rigid").get<bool>();
    f.cluster_tilting = j.at("cluster_tilting").get<bool>();
    return f;
}

Verdict verdict_from_string(const std::string& s)
{
    if (s == "holds")
        return Verdict::holds;
    if (s == "fails")
        return Verdict::fails;
    if (s == "indeterminate")
        return Verdict::indeterminate;
    throw InputError("bad verdict '" + s + "'");
}

Row row_of(const PropertyVerdict& v, bool must = true)
{
    Row r;
    r.name = v.name;
    r.verdict = v.verdict;
    r.must = must;
    r.note = v.reason;
    r.counterexample = v.counterexample;
    r.stats = v.stats;
    r.seconds = v.seconds;
    return r;
}

Row row_of_list(const std::string& name, const std::string& twin, const std::vector<std::string>& violations,
                double seconds)
{
    Row r;
    r.name = name;
    r.seconds = seconds;
    if (!violations.empty()) {
        r.verdict = Verdict::fails;
        r.note = violations.front();
        r.counterexample = {{"property", "twin_check"}, {"check", name}, {"twin", twin}, {"violation", violations.front()}};
    }
    return r;
}

template <class F>
Row timed_list(const std::string& name, const std::string& twin, F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    auto v = f();
    return row_of_list(name, twin, v, since(t0));
}

}  // namespace

const Row* TwinResult::row(const std::string& name) const
{
    for (const Row& r : rows)
        if (r.name == name)
            return &r;
    return nullptr;
}

Substrate load_substrate(const std::string& spec)
{
    Substrate s;
    s.spec = spec;
    const std::string prefix = "nakayama:";
    if (spec.rfind(prefix, 0) == 0) {
        int m = 0, n = 0, p = 0;
        char tail = 0;
        if (std::sscanf(spec.c_str() + prefix.size(), "%d,%d,%d%c", &m, &n, &p, &tail) != 3)
            throw InputError("expected nakayama:m,n,p but got '" + spec + "'");
        if (m < 1 || n < 2 || !Fp::is_prime(p))
            throw InputError("nakayama parameters need m >= 1, n >= 2 and a supported prime p");
        s.name = "nakayama_" + std::to_string(m) + "_" + std::to_string(n) + "_" + std::to_string(p);
        s.t = std::make_unique<TriangulatedStructure>(generate_nakayama_stable(m, n, p));
        return s;
    }
    if (!fs::exists(spec))
        throw InputError("no such substrate file: " + spec);
    try {
        s.t = std::make_unique<TriangulatedStructure>(load_structure(spec));
    } catch (const FormatError& e) {
        throw InputError(e.what());
    }
    s.name = fs::path(spec).stem().string();
    return s;
}

std::vector<std::string> default_substrates(const std::vector<std::string>& fixtures)
{
    std::vector<std::string> out;
    for (int p : {2, 3})
        for (int m = 1; m <= 3; ++m)
            for (int n = 2; n <= 4; ++n)
                out.push_back("nakayama:" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p));
    out.insert(out.end(), fixtures.begin(), fixtures.end());
    return out;
}

std::string substrate_digest(const TriangulatedStructure& t)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump_canonical(to_json(t))) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json config_json(const RunConfig& cfg)
{
    const VerifyOptions& v = cfg.verify;
    return {{"max_summands", v.max_summands},
            {"morphism_cap", v.morphism_cap},
            {"oracle_cap", v.oracle_cap},
            {"nested_budget", v.nested_budget},
            {"nested_cap", v.nested_cap},
            {"nested_exhaustive", v.nested_exhaustive},
            {"seed", v.seed},
            {"star_budget", v.budget.max_cones},
            {"mutation", to_string(v.mutation)},
            {"max_indecomposables", cfg.enumeration.max_indecomposables},
            {"brute_force_max", cfg.brute_force_max},
            {"twin_filter", cfg.twin_filter},
            {"trace_limit", cfg.trace_limit}};
}

void apply_config_json(RunConfig& cfg, const json& j)
{
    if (!j.is_object())
        throw InputError("config: expected an object");
    auto pos = [](const json& v, const std::string& key) {
        if (!v.is_number_integer() || v.get<long long>() <= 0)
            throw InputError("config." + key + ": expected a positive integer");
        return v.get<std::uint64_t>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "max_summands")
            cfg.verify.max_summands = int(pos(v, key));
        else if (key == "morphism_cap")
            cfg.verify.morphism_cap = pos(v, key);
        else if (key == "oracle_cap")
            cfg.verify.oracle_cap = pos(v, key);
        else if (key == "nested_budget")
            cfg.verify.nested_budget = pos(v, key);
        else if (key == "nested_cap")
            cfg.verify.nested_cap = pos(v, key);
        else if (key == "nested_exhaustive") {
            if (!v.is_boolean())
                throw InputError("config.nested_exhaustive: expected a boolean");
            cfg.verify.nested_exhaustive = v.get<bool>();
        } else if (key == "seed")
            cfg.verify.seed = pos(v, key);
        else if (key == "star_budget")
            cfg.verify.budget.max_cones = cfg.enumeration.budget.max_cones = pos(v, key);
        else if (key == "mutation") {
            auto m = v.is_string() ? mutation_from_string(v.get<std::string>()) : std::nullopt;
            if (!m)
                throw InputError("config.mutation: unknown mutation");
            cfg.verify.mutation = *m;
        } else if (key == "max_indecomposables")
            cfg.enumeration.max_indecomposables = int(pos(v, key));
        else if (key == "brute_force_max")
            cfg.brute_force_max = int(pos(v, key));
        else if (key == "jobs")
            cfg.jobs = int(pos(v, key));
        else if (key == "cache") {
            std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s == "use")
                cfg.cache = CachePolicy::use;
            else if (s == "refresh")
                cfg.cache = CachePolicy::refresh;
            else if (s == "off")
                cfg.cache = CachePolicy::off;
            else
                throw InputError("config.cache: expected use, refresh or off");
        } else if (key == "twin_filter") {
            if (!v.is_string())
                throw InputError("config.twin_filter: expected a string");
            cfg.twin_filter = v.get<std::string>();
        } else if (key == "trace_limit") {
            if (!v.is_number_integer() || v.get<int>() < 0)
                throw InputError("config.trace_limit: expected a non-negative integer");
            cfg.trace_limit = v.get<int>();
        } else
            throw InputError("config: unknown key '" + key + "'");
    }
}

TwinCotorsionPair twin_from_key(const TriangulatedStructure& t, const std::string& key)
{
    auto slash = key.find('/');
    if (slash == std::string::npos)
        throw InputError("bad twin key '" + key + "'");
    Subcategory s = from_key(key.substr(0, slash)), u = from_key(key.substr(slash + 1));
    if (s.universe() != t.size() || u.universe() != t.size())
        throw InputError("twin key '" + key + "' does not match the substrate size");
    auto pair_of = [&](const Subcategory& x) {
        PairCheck c = is_cotorsion_pair(t, x, t.right_perp(t.shift(x, -1)));
        if (c.verdict != Verdict::holds)
            throw InputError("twin key '" + key + "' names a non-cotorsion pair");
        return *c.pair;
    };
    try {
        return make_twin(t, pair_of(s), pair_of(u));
    } catch (const NotATwinError& e) {
        throw InputError(e.what());
    }
}

TwinResult evaluate_twin(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const RunConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    TwinResult res;
    res.key = twin.key();
    res.single = twin.single();
    res.first_flags = classify_pair(t, twin.first);
    res.second_flags = classify_pair(t, twin.second);
    res.sets = {{"S", twin.s().key()}, {"T", twin.t().key()},       {"U", twin.u().key()},
                {"V", twin.v().key()}, {"W", twin.w.key()},         {"C-", twin.cminus.key()},
                {"C+", twin.cplus.key()}, {"H", twin.h.key()}};

    Heart heart(t, twin);
    Verifier ver(heart, cfg.verify);
    for (int i : ver.h_indecs())
        res.heart_objects.push_back(t.cat().name(i));

    res.rows.push_back(timed_list("extension_closure", res.key, [&] { return check_extension_closure(t, twin); }));
    res.rows.push_back(timed_list("approximation_factoring", res.key, [&] { return check_approximation_factoring(t, twin); }));
    res.rows.push_back(timed_list("summand_closure", res.key, [&] { return check_summand_closure(t, twin); }));
    res.rows.push_back(row_of(ver.check_heart_objects()));
    res.rows.push_back(row_of(ver.check_adjoint_laws()));
    res.rows.push_back(row_of(ver.check_tau_functor()));
    res.rows.push_back(row_of(ver.check_preabelian()));
    res.rows.push_back(row_of(ver.check_epi_criterion()));
    res.rows.push_back(row_of(ver.check_weak_cokernels()));
    res.rows.push_back(row_of(ver.check_factoring_epi_mono()));
    res.rows.push_back(row_of(ver.check_cokernel_cone_terms()));
    res.rows.push_back(row_of(ver.check_reflected_epi()));

    PropertyVerdict sl = ver.check_semi_abelian(true), sr = ver.check_semi_abelian(false);
    res.rows.push_back(row_of(sl));
    res.rows.push_back(row_of(sr));

    res.star_condition = condition_double(t, twin, cfg.verify.budget);
    PropertyVerdict il = ver.check_integral(true), ir = ver.check_integral(false);
    const bool semi = sl.verdict == Verdict::holds && sr.verdict == Verdict::holds;
    std::string escalated;
    if (semi && il.verdict != ir.verdict && il.verdict != Verdict::indeterminate &&
        ir.verdict != Verdict::indeterminate) {
        // Sampled sums of two can separate the two sides; settle it exhaustively.
        VerifyOptions o = cfg.verify;
        o.nested_exhaustive = true;
        Verifier full(heart, o);
        il = full.check_integral(true);
        ir = full.check_integral(false);
        escalated = "settled with exhaustive sums of two";
    }
    const bool must_integral = res.star_condition == Verdict::holds;
    for (PropertyVerdict* v : {&il, &ir}) {
        Row r = row_of(*v, must_integral);
        if (!must_integral && v->verdict != Verdict::holds)
            r.note += std::string(r.note.empty() ? "" : "; ") + "U ⊆ S ∗ T or T ⊆ U ∗ V is " + to_string(res.star_condition);
        if (!escalated.empty())
            r.note += std::string(r.note.empty() ? "" : "; ") + escalated;
        res.rows.push_back(std::move(r));
    }
    if (semi) {
        Row f;
        f.name = "integral_sides_agree";
        if (il.verdict == Verdict::indeterminate || ir.verdict == Verdict::indeterminate)
            f.verdict = Verdict::indeterminate;
        else if (il.verdict != ir.verdict)
            f.verdict = Verdict::fails;
        f.note = std::string("left ") + to_string(il.verdict) + ", right " + to_string(ir.verdict);
        if (f.verdict != Verdict::holds)
            f.counterexample = {{"property", "integral_sides_agree"}, {"twin", res.key}};
        res.rows.push_back(std::move(f));
    }

    res.rows.push_back(row_of(ver.check_abelian(), twin.single()));
    if (twin.single() && res.first_flags.cluster_tilting) {
        Row r;
        r.name = "cluster_tilting_quotient";
        auto t1 = std::chrono::steady_clock::now();
        Outcome o = cluster_tilting_quotient(heart);
        r.seconds = since(t1);
        r.verdict = o.verdict;
        r.note = o.why;
        if (o.verdict != Verdict::holds)
            r.counterexample = {{"property", "cluster_tilting_quotient"}, {"twin", res.key}};
        res.rows.push_back(std::move(r));
    }
    if (twin.single()) {
        Row r;
        r.name = "co_t_collapse";
        const bool zero = heart_is_zero(heart), co_t = res.first_flags.co_t_structure;
        r.verdict = zero == co_t ? Verdict::holds : Verdict::fails;
        r.note = std::string(co_t ? "co-t-structure" : "not co-t") + ", H̄ " + (zero ? "zero" : "nonzero");
        if (r.verdict == Verdict::fails)
            r.counterexample = {{"property", "co_t_collapse"}, {"twin", res.key}};
        res.rows.push_back(std::move(r));
    }
    res.seconds = since(t0);
    return res;
}

namespace {

std::string make_trace(const TriangulatedStructure& t, const TwinCotorsionPair& twin)
{
    Heart heart(t, twin);
    std::ostringstream os;
    os << "twin " << twin.key() << "\n";
    for (int i = 0; i < t.size(); ++i) {
        Obj c = Obj::single(i);
        os << render_trace(t.cat(), "K_" + t.cat().name(i), heart.construct_K(c));
        os << render_trace(t.cat(), "Z_" + t.cat().name(i), heart.construct_Z(c));
    }
    return os.str();
}

bool pass_filter(const std::string& filter, const TwinCotorsionPair& twin)
{
    if (filter == "all")
        return true;
    if (filter == "single")
        return twin.single();
    if (filter == "nonzero-heart")
        return !twin.h.subset_of(twin.w);
    return filter == twin.key();
}

PairEnumeration pairs_with_cache(const Substrate& s, const RunConfig& cfg, std::string& note)
{
    const TriangulatedStructure& t = *s.t;
    // The catalog depends on the substrate, the star budget and the engine.
    const std::string digest = substrate_digest(t) + "-" + std::to_string(cfg.enumeration.budget.max_cones) + "-" +
                               kEngineVersion;
    fs::path cache;
    if (!cfg.out_dir.empty() && cfg.cache != CachePolicy::off)
        cache = fs::path(cfg.out_dir) / "pairs" / (s.name + ".json");
    if (!cache.empty() && cfg.cache == CachePolicy::use && fs::exists(cache)) {
        json j = json::parse(read_file(cache));
        if (j.value("digest", "") == digest) {
            PairEnumeration e;
            for (const json& p : j.at("pairs")) {
                PairCheck c = is_cotorsion_pair(t, from_key(p.at("u").get<std::string>()),
                                                from_key(p.at("v").get<std::string>()), cfg.enumeration.budget);
                if (c.verdict != Verdict::holds)
                    throw InputError("pair cache " + cache.string() + " lists a non-pair; rerun with --cache refresh");
                e.pairs.push_back(*c.pair);
            }
            for (const json& u : j.at("indeterminate"))
                e.indeterminate.push_back(from_key(u.get<std::string>()));
            note = "from cache";
            return e;
        }
    }
    EnumerationOptions eo = cfg.enumeration;
    eo.jobs = cfg.jobs;
    PairEnumeration e = enumerate_cotorsion_pairs(t, eo);
    if (!cache.empty()) {
        json j;
        j["digest"] = digest;
        j["substrate"] = s.spec;
        j["pairs"] = json::array();
        for (const CotorsionPair& p : e.pairs) {
            PairFlags f = classify_pair(t, p);
            j["pairs"].push_back({{"u", p.u.key()}, {"v", p.v.key()}, {"flags", flags_json(f)}});
        }
        j["indeterminate"] = json::array();
        for (const Subcategory& u : e.indeterminate)
            j["indeterminate"].push_back(u.key());
        write_file(cache, dump_canonical(j));
    }
    return e;
}

}  // namespace

SubstrateResult run_substrate(const Substrate& s, const RunConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    const TriangulatedStructure& t = *s.t;
    SubstrateResult res;
    res.spec = s.spec;
    res.name = s.name;
    res.indecomposables = t.size();

    {
        Row r;
        r.name = "validation";
        auto t1 = std::chrono::steady_clock::now();
        ValidationReport rep = validate_category(t.cat());
        if (rep.ok()) {
            for (const auto& [key, tri] : t.cone_table())
                rep.append(validate_triangle(t, tri));
            rep.append(validate_triangulation(t));
        }
        r.seconds = since(t1);
        if (!rep.ok()) {
            r.verdict = Verdict::fails;
            r.note = std::to_string(rep.issues.size()) + " issues; first: " + rep.issues.front();
            r.counterexample = {{"property", "validation"}, {"issues", rep.issues}};
            res.rows.push_back(std::move(r));
            res.seconds = since(t0);
            return res;
        }
        res.rows.push_back(std::move(r));
    }

    auto t1 = std::chrono::steady_clock::now();
    std::string cache_note;
    PairEnumeration e = pairs_with_cache(s, cfg, cache_note);
    res.pairs = e.pairs.size();
    {
        Row r;
        r.name = "pair_enumeration";
        r.note = std::to_string(e.pairs.size()) + " pairs";
        if (!e.indeterminate.empty()) {
            r.verdict = Verdict::indeterminate;
            r.note += "; " + std::to_string(e.indeterminate.size()) + " candidates ran out of budget";
        }
        r.seconds = since(t1);
        res.rows.push_back(std::move(r));
    }
    if (t.size() <= cfg.brute_force_max) {
        Row r;
        r.name = "pair_completeness";
        auto t2 = std::chrono::steady_clock::now();
        auto bf = brute_force_cotorsion_pairs(t, cfg.brute_force_max);
        bool same = bf.size() == e.pairs.size();
        for (std::size_t i = 0; same && i < bf.size(); ++i)
            same = bf[i].first == e.pairs[i].u && bf[i].second == e.pairs[i].v;
        r.seconds = since(t2);
        r.note = "brute force found " + std::to_string(bf.size()) + " pairs";
        if (!same) {
            r.verdict = Verdict::fails;
            r.counterexample = {{"property", "pair_completeness"}};
        }
        res.rows.push_back(std::move(r));
    }
    {
        Row r;
        r.name = "pair_flags";
        for (const CotorsionPair& p : e.pairs)
            if (!classify_pair(t, p).consistent() && r.verdict == Verdict::holds) {
                r.verdict = Verdict::fails;
                r.note = "flag reformulations disagree on U = " + p.u.key();
                r.counterexample = {{"property", "pair_flags"}, {"u", p.u.key()}};
            }
        res.rows.push_back(std::move(r));
    }

    std::vector<TwinCotorsionPair> twins;
    {
        Row r;
        r.name = "twin_link";
        auto t2 = std::chrono::steady_clock::now();
        std::size_t candidates = 0;
        for (const CotorsionPair& a : e.pairs)
            for (const CotorsionPair& b : e.pairs) {
                ++candidates;
                TwinLink l = twin_link(t, a, b);
                if (!l.agree()) {
                    if (r.verdict == Verdict::holds) {
                        r.verdict = Verdict::fails;
                        r.note = "link conditions disagree for " + a.u.key() + "/" + b.u.key();
                        r.counterexample = {{"property", "twin_link"}, {"s", a.u.key()}, {"u", b.u.key()}};
                    }
                    continue;
                }
                if (l.ext_vanishes)
                    twins.push_back(make_twin(t, a, b));
            }
        r.seconds = since(t2);
        r.note = std::to_string(candidates) + " candidate pairs of pairs, " + std::to_string(twins.size()) + " twins";
        res.rows.push_back(std::move(r));
    }
    res.twins_total = twins.size();

    std::vector<const TwinCotorsionPair*> chosen;
    for (const TwinCotorsionPair& tw : twins)
        if (pass_filter(cfg.twin_filter, tw))
            chosen.push_back(&tw);
    res.twins.resize(chosen.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < chosen.size();) {
            try {
                res.twins[i] = evaluate_twin(t, *chosen[i], cfg);
            } catch (const std::exception& ex) {
                TwinResult& r = res.twins[i];
                r.key = chosen[i]->key();
                Row row;
                row.name = "engine_error";
                row.verdict = Verdict::fails;
                row.note = ex.what();
                row.counterexample = {{"property", "engine_error"}, {"twin", r.key}};
                r.rows.push_back(std::move(row));
            }
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    int traced = 0;
    for (std::size_t i = 0; i < chosen.size() && traced < cfg.trace_limit; ++i)
        if (!res.twins[i].heart_objects.empty()) {
            res.twins[i].trace = make_trace(t, *chosen[i]);
            ++traced;
        }

    // Findings: rows with no expected verdict and the open questions.
    std::vector<std::string> nonintegral, bm_shape, nonabelian;
    for (const TwinResult& r : res.twins) {
        const Row* il = r.row("left_integral");
        const Row* ir = r.row("right_integral");
        if (il && ir && !il->must && (il->verdict == Verdict::fails || ir->verdict == Verdict::fails))
            nonintegral.push_back(r.key);
        const Row* ab = r.row("abelian");
        if (r.sets.contains("T") && r.sets["T"] == r.sets["U"] && !r.heart_objects.empty())
            bm_shape.push_back(r.key + " (abelian " + (ab ? to_string(ab->verdict) : "?") + ", left integral " +
                               (il ? to_string(il->verdict) : "?") + ")");
        if (ab && !ab->must && ab->verdict == Verdict::fails)
            nonabelian.push_back(r.key);
    }
    auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + v[i];
        return s;
    };
    if (!nonintegral.empty())
        res.findings.push_back(std::to_string(nonintegral.size()) +
                               " twins where neither U ⊆ S ∗ T nor T ⊆ U ∗ V and H̄ is not integral: " + list(nonintegral));
    if (!bm_shape.empty())
        res.findings.push_back(std::to_string(bm_shape.size()) + " twins with T = U and nonzero H̄: " + list(bm_shape));
    if (!nonabelian.empty())
        res.findings.push_back(std::to_string(nonabelian.size()) + " two-pair twins with non-abelian H̄");
    res.seconds = since(t0);
    return res;
}

int exit_code(const std::vector<SubstrateResult>& results)
{
    bool fails = false, open = false;
    auto see = [&](const Row& r) {
        if (!r.must)
            return;
        fails = fails || r.verdict == Verdict::fails;
        open = open || r.verdict == Verdict::indeterminate;
    };
    for (const SubstrateResult& s : results) {
        for (const Row& r : s.rows)
            see(r);
        for (const TwinResult& t : s.twins)
            for (const Row& r : t.rows)
                see(r);
    }
    return fails ? 1 : open ? 2 : 0;
}

json row_json(const Row& r)
{
    json j = {{"property", r.name},
              {"verdict", to_string(r.verdict)},
              {"expectation", r.must ? "must_hold" : "finding"},
              {"instances", r.stats.instances},
              {"sampled_spaces", r.stats.sampled_spaces},
              {"skipped", r.stats.skipped}};
    if (!r.note.empty())
        j["note"] = r.note;
    if (!r.counterexample.is_null())
        j["counterexample"] = r.counterexample;
    return j;
}

Row row_from_json(const json& j)
{
    Row r;
    r.name = j.at("property").get<std::string>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.must = j.at("expectation").get<std::string>() == "must_hold";
    r.note = j.value("note", "");
    if (j.contains("counterexample"))
        r.counterexample = j.at("counterexample");
    r.stats.instances = j.value("instances", std::uint64_t(0));
    r.stats.sampled_spaces = j.value("sampled_spaces", std::uint64_t(0));
    r.stats.skipped = j.value("skipped", std::uint64_t(0));
    return r;
}

json twin_json(const TwinResult& r)
{
    json rows = json::array();
    for (const Row& row : r.rows)
        rows.push_back(row_json(row));
    return {{"twin", r.key},
            {"single", r.single},
            {"first_pair", flags_json(r.first_flags)},
            {"second_pair", flags_json(r.second_flags)},
            {"star_condition", to_string(r.star_condition)},
            {"sets", r.sets},
            {"heart_objects", r.heart_objects},
            {"rows", rows}};
}

namespace {

TwinResult twin_from_json(const json& j)
{
    TwinResult r;
    r.key = j.at("twin").get<std::string>();
    r.single = j.at("single").get<bool>();
    r.first_flags = flags_from_json(j.at("first_pair"));
    r.second_flags = flags_from_json(j.at("second_pair"));
    r.star_condition = verdict_from_string(j.at("star_condition").get<std::string>());
    r.sets = j.at("sets");
    r.heart_objects = j.at("heart_objects").get<std::vector<std::string>>();
    for (const json& row : j.at("rows"))
        r.rows.push_back(row_from_json(row));
    return r;
}

std::string counterexample_file(const std::string& substrate, const std::string& twin, const std::string& row)
{
    return "counterexamples/" + substrate + "__" + (twin.empty() ? "substrate" : file_safe(twin)) + "__" + row +
           ".json";
}

}  // namespace

std::string render_summary(const std::vector<SubstrateResult>& results)
{
    std::ostringstream os;
    os << "twinheart run summary\n";
    std::size_t must_fail = 0, must_open = 0;
    for (const SubstrateResult& s : results) {
        os << "\n== " << s.name << " (" << s.spec << "): " << s.indecomposables << " indecomposables, " << s.pairs
           << " cotorsion pairs, " << s.twins_total << " twins, " << s.twins.size() << " evaluated\n";
        for (const Row& r : s.rows) {
            std::ostringstream line;
            line << "  " << std::left << std::setw(24) << r.name << std::setw(14) << to_string(r.verdict) << r.note;
            std::string l = line.str();
            l.erase(l.find_last_not_of(' ') + 1);
            os << l << "\n";
            if (r.must && r.verdict == Verdict::fails)
                ++must_fail;
            if (r.must && r.verdict == Verdict::indeterminate)
                ++must_open;
        }
        // Tallies per property over twins, in first-seen order.
        std::vector<std::string> order;
        std::map<std::string, std::array<std::size_t, 4>> tally;  // holds, fails, indeterminate, finding
        for (const TwinResult& t : s.twins)
            for (const Row& r : t.rows) {
                if (!tally.count(r.name)) {
                    order.push_back(r.name);
                    tally[r.name] = {0, 0, 0, 0};
                }
                auto& c = tally[r.name];
                if (!r.must && r.verdict != Verdict::holds)
                    ++c[3];
                else
                    ++c[r.verdict == Verdict::holds ? 0 : r.verdict == Verdict::fails ? 1 : 2];
                if (r.must && r.verdict == Verdict::fails)
                    ++must_fail;
                if (r.must && r.verdict == Verdict::indeterminate)
                    ++must_open;
            }
        if (!order.empty()) {
            os << "  " << std::left << std::setw(26) << "property" << std::right << std::setw(7) << "holds"
               << std::setw(7) << "fails" << std::setw(7) << "indet" << std::setw(9) << "finding" << "\n";
            for (const std::string& name : order) {
                const auto& c = tally[name];
                os << "  " << std::left << std::setw(26) << name << std::right << std::setw(7) << c[0] << std::setw(7)
                   << c[1] << std::setw(7) << c[2] << std::setw(9) << c[3] << "\n";
            }
        }
        bool header = false;
        for (const TwinResult& t : s.twins)
            for (const Row& r : t.rows) {
                // Two-pair twins carry no abelian expectation; they are counted in the findings.
                if (r.verdict == Verdict::holds || (!r.must && r.name == "abelian"))
                    continue;
                if (!header) {
                    os << "  rows that do not hold:\n";
                    header = true;
                }
                os << "    " << t.key << "  " << r.name << " " << to_string(r.verdict)
                   << (r.must ? "" : " [finding]") << "  " << r.note << "\n";
                if (!r.counterexample.is_null())
                    os << "      -> " << counterexample_file(s.name, t.key, r.name) << "\n";
            }
        for (const std::string& f : s.findings)
            os << "  finding: " << f << "\n";
    }
    os << "\noverall: ";
    if (must_fail)
        os << must_fail << " required rows fail";
    else if (must_open)
        os << must_open << " required rows indeterminate";
    else
        os << "all required rows hold";
    os << "\n";
    return os.str();
}

void write_run(const std::vector<SubstrateResult>& results, const RunConfig& cfg)
{
    const fs::path root(cfg.out_dir);
    fs::create_directories(root);
    json run = {{"format", "twinheart-run/1"}, {"config", config_json(cfg)}, {"substrates", json::array()}};
    json timing = json::array();
    for (const SubstrateResult& s : results) {
        json rows = json::array();
        for (const Row& r : s.rows) {
            json rj = row_json(r);
            if (!r.counterexample.is_null()) {
                std::string file = counterexample_file(s.name, "", r.name);
                rj["counterexample_file"] = file;
                write_file(root / file, dump_canonical({{"substrate", s.spec},
                                                        {"twin", ""},
                                                        {"row", r.name},
                                                        {"verdict", to_string(r.verdict)},
                                                        {"reason", r.note},
                                                        {"counterexample", r.counterexample},
                                                        {"config", config_json(cfg)}}));
            }
            rows.push_back(rj);
        }
        json keys = json::array();
        json twin_timing = json::object();
        for (const TwinResult& t : s.twins) {
            keys.push_back(t.key);
            json tj = twin_json(t);
            for (std::size_t i = 0; i < t.rows.size(); ++i) {
                const Row& r = t.rows[i];
                if (r.counterexample.is_null())
                    continue;
                std::string file = counterexample_file(s.name, t.key, r.name);
                tj["rows"][i]["counterexample_file"] = file;
                write_file(root / file, dump_canonical({{"substrate", s.spec},
                                                        {"twin", t.key},
                                                        {"row", r.name},
                                                        {"verdict", to_string(r.verdict)},
                                                        {"reason", r.note},
                                                        {"counterexample", r.counterexample},
                                                        {"config", config_json(cfg)}}));
            }
            write_file(root / "twins" / s.name / (file_safe(t.key) + ".json"), dump_canonical(tj));
            if (!t.trace.empty())
                write_file(root / "traces" / s.name / (file_safe(t.key) + ".txt"), t.trace);
            json rt = json::object();
            for (const Row& r : t.rows)
                rt[r.name] = r.seconds;
            twin_timing[t.key] = {{"seconds", t.seconds}, {"rows", rt}};
        }
        run["substrates"].push_back({{"spec", s.spec},
                                     {"name", s.name},
                                     {"indecomposables", s.indecomposables},
                                     {"pairs", s.pairs},
                                     {"twins_total", s.twins_total},
                                     {"twins", keys},
                                     {"rows", rows},
                                     {"findings", s.findings}});
        timing.push_back({{"substrate", s.name}, {"seconds", s.seconds}, {"twins", twin_timing}});
    }
    write_file(root / "run.json", dump_canonical(run));
    write_file(root / "summary.txt", render_summary(results));
    write_file(root / "timing.json", timing.dump(1) + "\n");
}

Verdict replay_counterexample(const json& payload)
{
    Substrate s = load_substrate(payload.at("substrate").get<std::string>());
    RunConfig cfg;
    apply_config_json(cfg, payload.at("config"));
    cfg.out_dir.clear();
    const std::string twin_key = payload.at("twin").get<std::string>();
    const std::string row = payload.at("row").get<std::string>();
    const json& ce = payload.at("counterexample");
    if (twin_key.empty()) {
        cfg.twin_filter = "none";
        SubstrateResult r = run_substrate(s, cfg);
        for (const Row& x : r.rows)
            if (x.name == row)
                return x.verdict;
        throw InputError("substrate row '" + row + "' not produced on replay");
    }
    TwinCotorsionPair twin = twin_from_key(*s.t, twin_key);
    const std::string kind = ce.value("property", "");
    static const std::set<std::string> instance_kinds = {
        "cokernel_oracle", "kernel_oracle",     "epi_criterion",      "mono_criterion", "weak_cokernels",
        "factoring_epi_mono",           "cokernel_cone_terms",             "reflected_epi",              "abelian",        "left_semi_abelian",
        "right_semi_abelian", "left_integral", "right_integral",     "tau_functor",    "heart_object",
        "adjoint_object"};
    if (instance_kinds.count(kind)) {
        Heart heart(*s.t, twin);
        Verifier v(heart, cfg.verify);
        return v.replay(ce).verdict;
    }
    TwinResult r = evaluate_twin(*s.t, twin, cfg);
    if (const Row* x = r.row(row))
        return x->verdict;
    throw InputError("row '" + row + "' not produced on replay");
}

ReportCheck check_report(const std::string& run_dir)
{
    const fs::path root(run_dir);
    if (!fs::exists(root / "run.json"))
        throw InputError("no run.json in " + run_dir);
    json run = json::parse(read_file(root / "run.json"));
    ReportCheck out;
    std::vector<SubstrateResult> results;
    for (const json& sj : run.at("substrates")) {
        SubstrateResult s;
        s.spec = sj.at("spec").get<std::string>();
        s.name = sj.at("name").get<std::string>();
        s.indecomposables = sj.at("indecomposables").get<int>();
        s.pairs = sj.at("pairs").get<std::size_t>();
        s.twins_total = sj.at("twins_total").get<std::size_t>();
        s.findings = sj.at("findings").get<std::vector<std::string>>();
        for (const json& rj : sj.at("rows"))
            s.rows.push_back(row_from_json(rj));
        std::vector<std::pair<std::string, std::string>> to_replay;  // (file, twin)
        for (const json& rj : sj.at("rows"))
            if (rj.contains("counterexample_file"))
                to_replay.emplace_back(rj.at("counterexample_file").get<std::string>(), "");
        for (const json& k : sj.at("twins")) {
            const std::string key = k.get<std::string>();
            fs::path p = root / "twins" / s.name / (file_safe(key) + ".json");
            if (!fs::exists(p)) {
                out.problems.push_back("missing twin record " + p.string());
                continue;
            }
            json tj = json::parse(read_file(p));
            s.twins.push_back(twin_from_json(tj));
            for (const json& rj : tj.at("rows")) {
                const bool needs = rj.at("verdict") == "fails";
                if (needs && !rj.contains("counterexample_file"))
                    out.problems.push_back(key + " " + rj.at("property").get<std::string>() +
                                           " fails without a counterexample");
                if (needs && rj.contains("counterexample_file"))
                    to_replay.emplace_back(rj.at("counterexample_file").get<std::string>(), key);
            }
        }
        for (const auto& [file, key] : to_replay) {
            fs::path p = root / file;
            if (!fs::exists(p)) {
                out.problems.push_back("missing counterexample " + p.string());
                continue;
            }
            json payload = json::parse(read_file(p));
            Verdict stored = verdict_from_string(payload.at("verdict").get<std::string>());
            if (stored != Verdict::fails)
                continue;
            Verdict again = replay_counterexample(payload);
            if (again != stored)
                out.problems.push_back(file + " replays to " + to_string(again) + ", not " + to_string(stored));
        }
        results.push_back(std::move(s));
    }
    out.summary = render_summary(results);
    if (fs::exists(root / "summary.txt") && read_file(root / "summary.txt") != out.summary)
        out.problems.push_back("summary.txt differs from the re-rendered summary");
    out.exit = out.problems.empty() ? exit_code(results) : 1;
    return out;
}

}  // namespace twinheart
