// Runs the full suite over the Nakayama grid and the pentagon fixture and
// prints one PASS/FAIL line per acceptance criterion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"
#include "twinheart/workbench.hpp"

using namespace twinheart;

namespace {

struct Tally {
    std::size_t checked = 0, bad = 0;
    std::string first;
    void see(bool ok, const std::string& where)
    {
        ++checked;
        if (!ok && bad++ == 0)
            first = where;
    }
    bool pass() const { return bad == 0 && checked > 0; }
    std::string text(const std::string& what) const
    {
        std::ostringstream os;
        os << checked << " " << what << ", " << bad << " violations";
        if (bad)
            os << " (first: " << first << ")";
        return os.str();
    }
};

bool holds(const Row* r) { return r && r->verdict == Verdict::holds; }

int failures = 0;

void report(int n, bool pass, const std::string& title, const std::string& detail)
{
    if (!pass)
        ++failures;
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  [" << detail << "]"
              << std::endl;
}

}  // namespace

int main()
{
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.cache = CachePolicy::off;
    cfg.out_dir = "acceptance-run";
    if (const char* j = std::getenv("TWINHEART_JOBS"))
        cfg.jobs = std::max(1, std::atoi(j));

    std::vector<std::string> specs = default_substrates({TWINHEART_FIXTURES "/pentagon.json"});
    std::vector<Substrate> subs;
    std::vector<SubstrateResult> results;
    for (const std::string& s : specs) {
        subs.push_back(load_substrate(s));
        results.push_back(run_substrate(subs.back(), cfg));
        std::cerr << "  " << results.back().name << ": " << results.back().twins.size() << " twins, "
                  << results.back().seconds << " s" << std::endl;
    }
    write_run(results, cfg);

    auto substrate_row = [](const SubstrateResult& s, const std::string& name) -> const Row* {
        for (const Row& r : s.rows)
            if (r.name == name)
                return &r;
        return nullptr;
    };
    auto twin_rows = [&](const std::string& row, const std::function<bool(const TwinResult&)>& applies,
                         const std::string& what) {
        Tally t;
        for (const SubstrateResult& s : results)
            for (const TwinResult& tw : s.twins)
                if (applies(tw))
                    t.see(holds(tw.row(row)), s.name + " " + tw.key);
        return t.text(what + " " + row);
    };
    auto all_hold = [&](const std::vector<std::string>& rows, const std::function<bool(const TwinResult&)>& applies) {
        for (const SubstrateResult& s : results)
            for (const TwinResult& tw : s.twins)
                if (applies(tw))
                    for (const std::string& r : rows)
                        if (!holds(tw.row(r)))
                            return false;
        return true;
    };
    auto every = [](const TwinResult&) { return true; };

    // 1. Validators accept every substrate and reject every mutation control.
    {
        Tally valid, mutants;
        for (const SubstrateResult& s : results)
            valid.see(holds(substrate_row(s, "validation")), s.name);
        for (const Substrate& s : subs) {
            if (s.name != "nakayama_3_3_2" && s.name != "nakayama_2_4_3" && s.name != "pentagon")
                continue;
            for (const auto& m : testing::mutation_controls(*s.t))
                mutants.see(m.rejected(), s.name + ": " + m.name);
        }
        report(1, valid.pass() && mutants.pass() && mutants.checked >= 5, "validator soundness",
               valid.text("substrates") + "; " + mutants.text("mutation controls"));
    }

    // 2. Perpendicular enumeration equals brute force where it is affordable.
    {
        Tally t;
        for (const SubstrateResult& s : results)
            if (s.indecomposables <= 8)
                t.see(holds(substrate_row(s, "pair_completeness")), s.name);
        report(2, t.pass(), "cotorsion-pair completeness", t.text("substrates with at most 8 indecomposables"));
    }

    // 3. Twin-link conditions coincide on all candidate pairs of pairs.
    {
        Tally t;
        for (const SubstrateResult& s : results)
            t.see(holds(substrate_row(s, "twin_link")), s.name);
        report(3, t.pass(), "twin-link equivalence", t.text("substrates"));
    }

    report(4, all_hold({"preabelian"}, every), "construction/oracle agreement", twin_rows("preabelian", every, "twins"));
    report(5, all_hold({"epi_mono_criterion"}, every), "epi/mono criterion",
           twin_rows("epi_mono_criterion", every, "twins"));

    // 6. Semi-abelian everywhere; the negative controls must fail.
    {
        bool ok = all_hold({"left_semi_abelian", "right_semi_abelian"}, every);
        Tally controls;
        const Substrate& s = *std::find_if(subs.begin(), subs.end(),
                                           [](const Substrate& x) { return x.name == "nakayama_2_4_2"; });
        PairEnumeration e = enumerate_cotorsion_pairs(*s.t);
        for (Mutation m : {Mutation::zero_square_object, Mutation::dropped_square_leg, Mutation::unreflected_cokernel}) {
            bool caught = false;
            for (const auto& a : e.pairs) {
                for (const auto& b : e.pairs) {
                    if (caught || !twin_link(*s.t, a, b).ext_vanishes)
                        continue;
                    auto twin = make_twin(*s.t, a, b);
                    Heart h(*s.t, twin);
                    VerifyOptions o;
                    o.mutation = m;
                    Verifier v(h, o);
                    caught = v.check_semi_abelian(true).verdict == Verdict::fails ||
                             v.check_semi_abelian(false).verdict == Verdict::fails;
                }
            }
            controls.see(caught, std::string("mutant ") + to_string(m) + " not caught");
        }
        // A corrupted composition table never reaches the suite.
        nlohmann::json j = to_json(*s.t);
        for (auto& entry : j["composition"])
            if (!entry["tensor"].empty()) {
                entry["tensor"][0] = 1 - entry["tensor"][0].get<int>();
                break;
            }
        controls.see(!testing::json_validates(j), "corrupted composition table accepted");
        report(6, ok && controls.pass(), "semi-abelian hearts",
               twin_rows("left_semi_abelian", every, "twins") + "; " + controls.text("negative controls"));
    }

    // 7. Integral whenever U ⊆ S ∗ T or T ⊆ U ∗ V; left and right agree when semi-abelian.
    {
        auto cond = [](const TwinResult& t) { return t.star_condition == Verdict::holds; };
        auto semi = [](const TwinResult& t) { return t.row("integral_sides_agree") != nullptr; };
        bool ok = all_hold({"left_integral", "right_integral"}, cond) && all_hold({"integral_sides_agree"}, semi);
        report(7, ok, "integral hearts",
               twin_rows("left_integral", cond, "twins with U ⊆ S ∗ T or T ⊆ U ∗ V,") + "; " + twin_rows("integral_sides_agree", semi, "twins"));
    }

    // 8. Single twins are abelian; cluster-tilting hearts match C/T.
    {
        auto single = [](const TwinResult& t) { return t.single; };
        auto ct = [](const TwinResult& t) { return t.single && t.first_flags.cluster_tilting; };
        std::size_t n_ct = 0;
        for (const SubstrateResult& s : results)
            for (const TwinResult& t : s.twins)
                n_ct += ct(t);
        bool ok = all_hold({"abelian"}, single) && all_hold({"cluster_tilting_quotient"}, ct) && n_ct > 0;
        report(8, ok, "single-pair hearts are abelian",
               twin_rows("abelian", single, "single twins") + "; " +
                   twin_rows("cluster_tilting_quotient", ct, "cluster-tilting twins"));
    }

    // 9. Co-t-structures have zero hearts.
    {
        Tally t;
        for (const SubstrateResult& s : results)
            for (const TwinResult& tw : s.twins)
                if (tw.single && tw.first_flags.co_t_structure)
                    t.see(tw.heart_objects.empty(), s.name + " " + tw.key);
        report(9, t.pass(), "co-t-structure collapse", t.text("co-t-structure pairs"));
    }

    report(10, all_hold({"adjoint_laws"}, every), "adjoint laws", twin_rows("adjoint_laws", every, "twins"));

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria pass")
              << " in " << int(secs) << " s" << std::endl;
    return failures ? 1 : 0;
}
