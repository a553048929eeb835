#include <algorithm>
#include <set>

#include "doctest.h"
#include "mgx/census.hpp"
#include "mgx/models.hpp"
#include "mgx/oracle.hpp"
#include "mgx/pipeline.hpp"

using namespace mgx;

namespace {

const std::string kCorpus = std::string(MGX_ASSET_DIR) + "/paper_words.corpus";

std::uint64_t order_of(const std::vector<Element>& gens)
{
    std::vector<Permutation> ps;
    for (const auto& g : gens) ps.push_back(std::get<Permutation>(g));
    return subgroup_order(ps);
}

std::vector<Element> all_elements(const GroupModel& g)
{
    std::vector<Element> out;
    for (auto& p : elements(schreier_sims(g.permutation_generators()))) out.emplace_back(std::move(p));
    return out;
}

}  // namespace

TEST_CASE("projector polynomial")
{
    CHECK(b_group_projector() == FFPolynomial(3, {-1, 0, -1, -1, 0, 1, 0, -1, 1, 1}));
    CHECK(b_group_projector().to_string() == "x^9 + x^8 - x^7 + x^5 - x^3 - x^2 - 1");
}

TEST_CASE("find_torus")
{
    const SearchBudget budget;
    SUBCASE("cyclic 13")
    {
        const auto g = models::cyclic13();
        const TorusData td = find_torus(g, budget);
        CHECK(std::get<Permutation>(td.t).order() == 13);
        CHECK(td.inverting.empty());
        CHECK(td.d26_count == 0);
    }
    SUBCASE("PSL2(27) by brute force")
    {
        const auto g = models::psl2_27();
        const TorusData td = find_torus(g, budget);
        std::size_t brute = 0;
        const Element tinv = inverse(td.t);
        for (const auto& x : all_elements(g)) {
            if (!is_identity(x) && is_identity(x * x) && conjugate(td.t, x) == tinv) ++brute;
        }
        CHECK(td.inverting.size() == 13);
        CHECK(brute == 13);
        CHECK(td.d26_count == 1);
        for (const auto& x : td.inverting) {
            CHECK(is_identity(x * x));
            CHECK(conjugate(td.t, x) == tinv);
        }
    }
    SUBCASE("13:2 x PSL3(3)")
    {
        const auto g = models::c13_2_x_psl3_3();
        const TorusData td = find_torus(g, budget, g.generator("t"));
        CHECK(td.d26_count == 118);
        CHECK(td.inverting.size() == 118 * 13);
    }
}

TEST_CASE("find_torus rejects groups without 13")
{
    const GroupModel s4("S4", {{"a", Permutation::from_cycles(4, {{1, 2, 3, 4}})}, {"b", Permutation::from_cycles(4, {{1, 2}})}});
    CHECK_THROWS_AS(find_torus(s4, SearchBudget{}), Inapplicable);
    const auto l3 = models::psl3_3();
    const TorusData td = find_torus(l3, SearchBudget{});
    CHECK(std::get<Permutation>(td.t).order() == 13);
    CHECK(td.inverting.empty());
}

TEST_CASE("build_b_group")
{
    const SearchBudget budget;
    SUBCASE("PSL2(27)")
    {
        const auto g = models::psl2_27();
        const TorusData td = find_torus(g, budget, g.generator("t"));
        const BGroupData b = build_b_group(g, td.t, budget);
        CHECK(order_of(b.generators) == 27);
        CHECK(order_of({b.t, b.u}) == 351);
        CHECK(b.minpoly.to_string() == "x^3 - x - 1");
        CHECK(power(td.t, b.t_power) == b.t);
        for (const auto& x : b.generators) CHECK(std::get<Permutation>(x).order() == 3);
    }
    SUBCASE("PSL3(3) has no valid 3^3")
    {
        const auto g = models::psl3_3();
        const TorusData td = find_torus(g, budget);
        CHECK_THROWS_WITH_AS(build_b_group(g, td.t, budget), "no valid 3^3", Inapplicable);
        // Independent check: no elementary abelian subgroup of order 27 at all.
        std::vector<Permutation> threes;
        for (auto& p : elements(schreier_sims(g.permutation_generators()))) {
            if (p.order() == 3) threes.push_back(p);
        }
        bool found = false;
        for (std::size_t i = 0; i < threes.size() && !found; ++i) {
            std::vector<Permutation> cent;
            for (const auto& q : threes) {
                if (q * threes[i] == threes[i] * q) cent.push_back(q);
            }
            for (std::size_t a = 0; a < cent.size() && !found; ++a)
                for (std::size_t b = a + 1; b < cent.size() && !found; ++b) {
                    if (cent[a] * cent[b] != cent[b] * cent[a]) continue;
                    if (subgroup_order(std::vector<Permutation>{threes[i], cent[a], cent[b]}) == 27) found = true;
                }
        }
        CHECK_FALSE(found);
    }
    SUBCASE("3^3:13 returns the translation group")
    {
        const auto g = models::affine_27_13();
        const BGroupData b = build_b_group(g, g.generator("t"), budget);
        std::vector<Permutation> gens;
        for (const auto& x : b.generators) gens.push_back(std::get<Permutation>(x));
        const auto e = elements(schreier_sims(gens));
        CHECK(e.size() == 27);
        for (const auto& x : e) {
            if (!x.is_identity()) CHECK(x.cycle_lengths() == std::vector<std::size_t>(9, 3));
        }
    }
    SUBCASE("t of wrong order")
    {
        const auto g = models::psl2_27();
        CHECK_THROWS_AS(build_b_group(g, g.generator("u"), budget), std::invalid_argument);
    }
}

TEST_CASE("b_group_certificate")
{
    const auto g = models::affine_27_13();
    const Element u = g.generator("u"), t = g.generator("t");
    const auto cert = b_group_certificate(u, t);
    REQUIRE(cert);
    CHECK(cert->degree() == 3);
    CHECK_FALSE(b_group_certificate(t, t));
}

TEST_CASE("fuse_cases")
{
    const auto g = models::psl2_27();
    const TorusData td = find_torus(g, SearchBudget{}, g.generator("t"));
    const FusedCases none = fuse_cases(td, {});
    CHECK(none.sizes == std::vector<std::size_t>(13, 1));
    const FusedCases by_t = fuse_cases(td, {td.t});
    CHECK(by_t.sizes == std::vector<std::size_t>{13});
    std::vector<Permutation> inv;
    for (const auto& x : td.inverting) inv.push_back(std::get<Permutation>(x));
    CHECK(std::get<Permutation>(by_t.representatives.front()) == *std::min_element(inv.begin(), inv.end()));
    CHECK_THROWS(fuse_cases(td, {g.generator("u")}));
}

TEST_CASE("Heisenberg model fusion")
{
    const auto h = models::heisenberg_13();
    CHECK(order_of(h.group.generators()) == 316368);
    CHECK(order_of(h.k) == 18);
    const TorusData td = find_torus(h.group, SearchBudget{}, h.t);
    CHECK(td.inverting.size() == 1014);
    CHECK(td.d26_count == 78);
    for (const auto& k : h.k) {
        const Element c = conjugate(h.t, k);
        const bool normalizes = c == h.t || c == power(h.t, 9);
        CHECK(normalizes);
    }

    const FusedCases f = fuse_d26(td, h.k);
    CHECK(f.sizes == std::vector<std::size_t>{3, 3, 18, 18, 18, 18});

    std::vector<Element> tk = h.k;
    tk.push_back(h.t);
    const FusedCases g = fuse_cases(td, tk);
    CHECK(g.sizes == std::vector<std::size_t>{39, 39, 234, 234, 234, 234});
}

TEST_CASE("criterion_test")
{
    SUBCASE("rejects bad inputs")
    {
        const auto g = models::d26();
        const Element t = g.generator("t"), x = g.generator("x");
        CHECK_THROWS_AS(criterion_test(identity_of(g.backend()), x, t), std::invalid_argument);
        const auto a = models::affine_27_d26();
        CHECK_THROWS_AS(criterion_test(a.generator("u1"), a.generator("t"), a.generator("t")), std::invalid_argument);
    }
    SUBCASE("never holds in 3^3:D26")
    {
        const auto g = models::affine_27_d26();
        const Element t = g.generator("t");
        const TorusData td = find_torus(g, SearchBudget{}, t);
        CHECK(td.d26_count == 27);
        std::vector<Permutation> gens{std::get<Permutation>(g.generator("u1")), std::get<Permutation>(g.generator("u2")),
                                      std::get<Permutation>(g.generator("u3"))};
        std::size_t tested = 0;
        for (const auto& u : elements(schreier_sims(gens))) {
            if (u.is_identity()) continue;
            for (const auto& x : td.inverting) {
                CHECK_FALSE(criterion_test(Element(u), x, t));
                ++tested;
            }
        }
        CHECK(tested == 26 * 351);
    }
    SUBCASE("holds in PSL2(27)")
    {
        const auto g = models::psl2_27();
        const SearchBudget budget;
        const TorusData td = find_torus(g, budget, g.generator("t"));
        const BGroupData b = build_b_group(g, td.t, budget);
        std::size_t hits = 0;
        for (const auto& x : td.inverting) {
            const auto m = criterion_test(b.u, x, b.t);
            if (!m) continue;
            ++hits;
            const Element w = b.u * x * power(b.t, *m);
            CHECK(std::get<Permutation>(w).order() == 3);
            for (int k = 0; k < *m; ++k) CHECK(std::get<Permutation>(b.u * x * power(b.t, k)).order() != 3);
            CHECK(order_of({b.t, b.u, x}) == 9828);
        }
        CHECK(hits > 0);
    }
}

TEST_CASE("cost_report")
{
    const WordCorpus corpus = load_corpus(kCorpus);
    const CostTable c = cost_report(corpus, {"x0", "x1", "x2", "x3", "x4", "x5"});
    CHECK(c.t_count_u == 28);
    CHECK(c.total_t_count_x == 24);
    CHECK(c.mean_t_count_x == 4.0);
    CHECK(c.mean_applications_per_test == 96.0);
    CHECK(c.torus_t_count == 0);
    CHECK(c.cases.size() == 6);
    CHECK(c.cases[1].applications == 96);
    CHECK(c.reduced_t_count_u == 28);
    CHECK_THROWS(cost_report(corpus, {"nosuchword"}));
    CHECK(format_cost_table(c).find("96") != std::string::npos);
}

TEST_CASE("classify")
{
    const SearchBudget budget;
    SUBCASE("PSL2(27) found")
    {
        const auto g = models::psl2_27();
        const PipelineReport r = classify(g, budget);
        CHECK(r.verdict == Verdict::Found);
        CHECK(r.inverting_involutions == 13);
        CHECK(r.d26_count == 1);
        REQUIRE(r.cases.size() == 1);
        CHECK(r.cases[0].m_hit);
        CHECK(r.cases[0].verified_order == 9828u);
    }
    SUBCASE("PSL3(3) has no valid 3^3")
    {
        const PipelineReport r = classify(models::psl3_3(), budget);
        CHECK(r.verdict == Verdict::NotFound);
        CHECK(r.reason == "no valid 3^3");
    }
    SUBCASE("3^3:13:3")
    {
        const PipelineReport r = classify(models::affine_27_13_3(), budget);
        CHECK(r.verdict == Verdict::NotFound);
        CHECK(r.inverting_involutions == 0);
    }
    SUBCASE("3^3:D26")
    {
        const auto g = models::affine_27_d26();
        const PipelineReport r = classify(g, budget);
        CHECK(r.verdict == Verdict::NotFound);
        CHECK(r.d26_count == 27);
        // The 13 centralizes the 3^3, so no module with minimal polynomial x^3-x-1 exists.
        CHECK(r.reason == "no valid 3^3");
    }
    SUBCASE("no element of order 13")
    {
        const GroupModel s4("S4", {{"a", Permutation::from_cycles(4, {{1, 2, 3, 4}})}, {"b", Permutation::from_cycles(4, {{1, 2}})}});
        const PipelineReport r = classify(s4, budget);
        CHECK(r.verdict == Verdict::Inapplicable);
        CHECK(report_json(r)["verdict"] == "inapplicable");
    }
    SUBCASE("thread count does not change the report")
    {
        const auto g = models::psl2_27();
        ClassifyOptions serial;
        serial.stabilizer = std::vector<Element>{};
        ClassifyOptions parallel = serial;
        parallel.threads = 4;
        const WordCorpus corpus = load_corpus(kCorpus);
        serial.corpus = parallel.corpus = &corpus;
        const auto a = report_json(classify(g, budget, serial)).dump(2);
        const auto b = report_json(classify(g, budget, parallel)).dump(2);
        CHECK(a == b);
        CHECK(report_json(classify(g, budget, serial))["cases"].size() == 13);
        CHECK(a.find("\"mean_applications_per_test\": 96.0") != std::string::npos);
    }
    SUBCASE("same seed, same report")
    {
        const auto g = models::psl2_27();
        const SearchBudget b7{1000, 7};
        CHECK(report_json(classify(g, b7)).dump() == report_json(classify(g, b7)).dump());
        CHECK(report_json(classify(g, b7))["seed"] == 7);
    }
}

TEST_CASE("3^2:D8 subgroups of PSL3(3)")
{
    const BSGS l3 = schreier_sims(models::psl3_3().permutation_generators());
    const auto cands = find_3sq_d8_subgroups(l3);
    REQUIRE_FALSE(cands.empty());
    const std::vector<std::size_t> expected{6, 6, 9, 12, 12, 36, 36};
    bool any = false;
    for (const auto& c : cands) {
        CHECK(c.elements.size() == 72);
        std::size_t total = 0;
        for (auto s : c.involution_orbits) total += s;
        CHECK(total == 117);
        CHECK(std::find(c.involution_orbits.begin(), c.involution_orbits.end(), 72) == c.involution_orbits.end());
        if (c.involution_orbits == expected) any = true;
    }
    CHECK(any);
    MESSAGE(cands.size() << " subgroups of shape 3^2:D8");
}
