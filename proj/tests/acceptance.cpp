// Acceptance suite: one PASS/FAIL/SKIPPED line per criterion.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "mgx/census.hpp"
#include "mgx/groupfile.hpp"
#include "mgx/models.hpp"
#include "mgx/oracle.hpp"
#include "mgx/pipeline.hpp"
#include "mgx/projective.hpp"

using namespace mgx;

namespace {

const std::string kAssets = MGX_ASSET_DIR;

struct Outcome {
    enum Kind { Pass, Fail, Skipped } kind = Pass;
    std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }

class Criterion {
public:
    Criterion(int id, std::string title, double limit_seconds, std::function<Outcome()> body)
        : id_(id), title_(std::move(title)), limit_(limit_seconds), body_(std::move(body))
    {
    }

    bool run() const
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body_();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.kind == Outcome::Pass && secs > limit_) {
            o = fail(o.detail + "; exceeded time limit");
        }
        const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Fail ? "FAIL" : "SKIPPED";
        std::ostringstream time;
        if (secs < 0.01) {
            time << std::fixed << std::setprecision(3) << secs * 1000 << " ms";
        } else {
            time << std::fixed << std::setprecision(2) << secs << " s";
        }
        std::cout << std::left << std::setw(8) << tag << std::right << std::setw(2) << id_ << "  " << title_ << " ["
                  << time.str() << "]: " << o.detail << std::endl;
        return o.kind != Outcome::Fail;
    }

private:
    int id_;
    std::string title_;
    double limit_;
    std::function<Outcome()> body_;
};

std::string join(const std::vector<std::size_t>& xs)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    os << "}";
    return os.str();
}

std::vector<Permutation> perms(const std::vector<Element>& xs)
{
    std::vector<Permutation> out;
    for (const auto& x : xs) out.push_back(std::get<Permutation>(x));
    return out;
}

Outcome polynomial_quotient()
{
    const FFPolynomial num = FFPolynomial::x_pow_minus_one(3, 13);
    const FFPolynomial den = FFPolynomial(3, {-1, 1}) * FFPolynomial(3, {-1, -1, 0, 1});
    const auto start = std::chrono::steady_clock::now();
    const DivMod qr = poly_divmod(num, den);
    const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    // x^9 + x^8 - x^7 + x^5 - x^3 - x^2 - 1, lowest degree first
    const FFPolynomial expected(3, {-1, 0, -1, -1, 0, 1, 0, -1, 1, 1});
    if (!(qr.quotient == expected)) return fail("quotient " + qr.quotient.to_string());
    if (!qr.remainder.is_zero()) return fail("nonzero remainder " + qr.remainder.to_string());
    if (us > 1000) return fail("division took " + std::to_string(us) + " us");
    return pass("quotient " + qr.quotient.to_string() + ", remainder 0");
}

Outcome psl3_census()
{
    const std::vector<FFMatrix> sl3 = {FFMatrix(3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                                       FFMatrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})};
    const auto gens = projective_action(sl3);
    const BSGS g = schreier_sims(gens);
    const std::size_t inv = involutions(g).size();
    const std::string d = "order " + std::to_string(g.order()) + ", " + std::to_string(inv) + " involutions";
    return g.order() == 5616 && inv == 117 ? pass(d) : fail(d);
}

Outcome orbit_multiset()
{
    const BSGS l3 = schreier_sims(models::psl3_3().permutation_generators());
    const auto cands = find_3sq_d8_subgroups(l3);
    if (cands.empty()) return fail("no 3^2:D8 subgroups found");
    const std::vector<std::size_t> expected{6, 6, 9, 12, 12, 36, 36};
    std::size_t matching = 0, regular = 0;
    for (const auto& c : cands) {
        if (c.involution_orbits == expected) ++matching;
        if (std::find(c.involution_orbits.begin(), c.involution_orbits.end(), 72) != c.involution_orbits.end()) ++regular;
    }
    const std::string d = std::to_string(cands.size()) + " subgroups of order 72, " + std::to_string(matching) +
                          " with orbits " + join(expected) + ", " + std::to_string(regular) + " with an orbit of size 72";
    return matching > 0 && regular == 0 ? pass(d) : fail(d);
}

Outcome count_118()
{
    const auto g = models::c13_2_x_psl3_3();
    const TorusData td = find_torus(g, SearchBudget{}, g.generator("t"));
    const std::string d = "d26_count " + std::to_string(td.d26_count) + " (" + std::to_string(td.inverting.size()) +
                          " inverting involutions)";
    return td.d26_count == 118 ? pass(d) : fail(d);
}

PipelineReport run_file(const std::string& file, const SearchBudget& budget)
{
    const GroupFile f = load_group_file(kAssets + "/" + file);
    ClassifyOptions opts;
    if (f.torus) opts.t = f.model().generator(*f.torus);
    return classify(f.model(), budget, opts);
}

Outcome positive_control()
{
    const SearchBudget budget{1000, 0};
    const PipelineReport r = run_file("psl2_27.grp", budget);
    if (r.verdict != Verdict::Found) return fail("verdict " + to_string(r.verdict) + " " + r.reason);
    if (r.inverting_involutions != 13) return fail(std::to_string(r.inverting_involutions) + " inverting involutions");
    // Rebuild the torus and 3^3 with the same seed and recheck each hit directly.
    const GroupFile f = load_group_file(kAssets + "/psl2_27.grp");
    const GroupModel g = f.model();
    const TorusData td = find_torus(g, budget, g.generator("t"));
    const BGroupData b = build_b_group(g, td.t, budget);
    std::size_t hits = 0;
    for (const auto& c : r.cases) {
        if (!c.m_hit) continue;
        const Element w = b.u * c.representative * power(b.t, *c.m_hit);
        if (std::get<Permutation>(w).order() != 3) return fail("reported m does not give order 3");
        if (subgroup_order(perms({b.t, b.u, c.representative})) != 9828) return fail("hit does not generate 9828");
        ++hits;
    }
    if (hits == 0) return fail("no criterion hit");
    return pass("verdict found, 13 inverting involutions, " + std::to_string(hits) + " case(s) with order-3 hit at m = " +
                std::to_string(*r.cases.front().m_hit) + ", verified order 9828");
}

Outcome negative_controls()
{
    const SearchBudget budget{1000, 0};
    std::ostringstream d;
    const PipelineReport l3 = run_file("l3_3.grp", budget);
    d << "PSL3(3): " << to_string(l3.verdict) << " (" << l3.reason << ")";
    if (l3.verdict != Verdict::NotFound || l3.reason != "no valid 3^3") return fail(d.str());
    const PipelineReport f = run_file("3e3_13_3.grp", budget);
    d << "; 3^3:13:3: " << to_string(f.verdict) << " (" << f.reason << ")";
    if (f.verdict != Verdict::NotFound) return fail(d.str());
    const PipelineReport dd = run_file("3e3_d26.grp", budget);
    d << "; 3^3:D26: " << to_string(dd.verdict) << " (" << dd.reason << ")";
    if (dd.verdict != Verdict::NotFound) return fail(d.str());

    // The criterion itself, exhausted over every u in the 3^3 and every inverting x.
    const GroupModel g = load_group_file(kAssets + "/3e3_d26.grp").model();
    const Element t = g.generator("t");
    const TorusData td = find_torus(g, budget, t);
    const auto three = elements(schreier_sims(perms({g.generator("u1"), g.generator("u2"), g.generator("u3")})));
    std::size_t tests = 0;
    for (const auto& u : three) {
        if (u.is_identity()) continue;
        for (const auto& x : td.inverting) {
            if (criterion_test(Element(u), x, t)) return fail(d.str() + "; criterion hit in 3^3:D26");
            tests += 13;
        }
    }
    d << ", criterion fails for all " << tests << " words (26 u, " << td.inverting.size() << " x, 13 m)";
    return pass(d.str());
}

Outcome cost_model()
{
    const WordCorpus corpus = load_corpus(kAssets + "/paper_words.corpus");
    const CostTable c = cost_report(corpus, {"x0", "x1", "x2", "x3", "x4", "x5"});
    std::ostringstream d;
    d << "T-count(j'') = " << c.t_count_u << ", case words total " << c.total_t_count_x << " (mean "
      << c.mean_t_count_x << "), applications per test " << c.mean_applications_per_test;
    const bool ok = c.t_count_u == 28 && c.total_t_count_x == 24 && c.total_t_count_x % c.cases.size() == 0 &&
                    c.total_t_count_x / c.cases.size() == 4 && 3 * (c.t_count_u + 4) == 96 &&
                    c.mean_applications_per_test == 96.0;
    return ok ? pass(d.str()) : fail(d.str());
}

Outcome corpus_integrity()
{
    std::ifstream in(kAssets + "/paper_words.corpus");
    if (!in) return fail("cannot open corpus");
    const CorpusReport rep = corpus_check(in);
    const WordCorpus corpus = load_corpus(kAssets + "/paper_words.corpus");
    std::ostringstream d;
    d << rep.errors.size() << " diagnostics, " << rep.rows.size() << " definitions, round trip "
      << (rep.round_trip_ok ? "stable" : "UNSTABLE");
    for (const auto& def : corpus.definitions()) free_reduce(def.word);
    const bool ok = rep.errors.empty() && rep.round_trip_ok && rep.rows.size() == corpus.definitions().size() &&
                    !rep.rows.empty();
    return ok ? pass(d.str()) : fail(d.str());
}

Permutation random_involution(std::size_t n, std::mt19937_64& rng)
{
    std::vector<Permutation::Point> pts(n), img(n);
    std::iota(pts.begin(), pts.end(), Permutation::Point{0});
    std::iota(img.begin(), img.end(), Permutation::Point{0});
    std::shuffle(pts.begin(), pts.end(), rng);
    const std::size_t pairs = 1 + rng() % (n / 2);
    for (std::size_t i = 0; i < pairs; ++i) std::swap(img[pts[2 * i]], img[pts[2 * i + 1]]);
    return Permutation(img);
}

Outcome dihedral_suite()
{
    std::mt19937_64 rng(20);
    std::size_t odd = 0, even = 0, rejected = 0;
    while (odd < 1000) {
        const Permutation x = random_involution(20, rng), y = random_involution(20, rng);
        if ((x * y).order() % 2 == 1) {
            const Element c = dihedral_conjugator(x, y);
            if (conjugate(Element(y), c) != Element(x)) return fail("y^c != x in trial " + std::to_string(odd));
            ++odd;
        } else if (even < 1000) {
            ++even;
            try {
                dihedral_conjugator(x, y);
            } catch (const SearchError&) {
                ++rejected;
            }
        }
    }
    const std::string d = std::to_string(odd) + " odd pairs conjugated, " + std::to_string(rejected) + "/" +
                          std::to_string(even) + " even pairs rejected";
    return rejected == even ? pass(d) : fail(d);
}

Outcome formula_suite()
{
    std::mt19937_64 rng(10);
    std::size_t lifts = 0;
    for (const auto& g : {models::q6_13_12(), models::q12_13_12()}) {
        const auto* q = g.normal_subgroup_members();
        if (!q) return fail("Q of " + g.name() + " not enumerated");
        const std::vector<Element> qv(q->begin(), q->end());
        const Element t = g.generator("t"), s = g.generator("s");
        long long e = 1;
        Element sj = identity_of(g.backend());
        for (int j = 0; j < 12; ++j, sj = sj * s, e = (2 * e) % 13) {
            for (int trial = 0; trial < 5; ++trial) {
                const Element x = sj * qv[rng() % qv.size()];
                const Element y = formula_lift(t, x, FormulaPattern::power(e), &g);
                if (conjugate(t, y) != power(t, e)) return fail(g.name() + ": t^y != t^e");
                if (!q->contains(inverse(x) * y)) return fail(g.name() + ": lift outside xQ");
                ++lifts;
            }
        }
        // Inverting and commuting patterns.
        const Element inv = power(s, 6) * qv[rng() % qv.size()];
        const Element yi = formula_lift(t, inv, FormulaPattern::inverting(), &g);
        if (conjugate(t, yi) != inverse(t) || !q->contains(inverse(inv) * yi)) return fail(g.name() + ": inverting lift");
        ++lifts;
        for (long long k = 0; k < 13; ++k) {
            const Element x = power(t, k);
            if (formula_lift(t, x, FormulaPattern::commuting(), &g) != x) return fail(g.name() + ": commuting lift moved x");
            ++lifts;
        }
    }
    return pass(std::to_string(lifts) + " lifts verified in 2^6:(13:12) and 2^12:(13:12)");
}

Outcome projection_suite()
{
    const GroupModel g = models::gf3_12_translations();
    const Element t = g.generator("t");
    const FFPolynomial f = b_group_projector();
    const FFPolynomial target(3, {-1, -1, 0, 1});
    const auto& qg = g.normal_subgroup();
    std::mt19937_64 rng(11);
    auto random_q = [&] {
        Element x = identity_of(g.backend());
        for (const auto& b : qg) x = x * power(b, static_cast<long long>(rng() % 3));
        return x;
    };
    std::size_t good = 0, kernel = 0;
    while (good < 100) {
        const Element u = random_q();
        if (is_identity(u)) continue;
        if (is_identity(apply_polynomial(u, t, f))) {
            ++kernel;  // u has no component in the x^3-x-1 summand
            continue;
        }
        const Element p = polynomial_projection(u, t, f, target);
        std::vector<Element> orbit;
        Element v = p;
        for (int i = 0; i < 13; ++i, v = conjugate(v, t)) orbit.push_back(v);
        if (enumerate_group(orbit, g.backend()).size() != 27) return fail("t-closure not of order 27");
        const auto cert = b_group_certificate(p, t);
        if (!cert || !(*cert == target)) return fail("minimal polynomial is not x^3 - x - 1");
        const Element u2 = random_q();
        if (apply_polynomial(u * u2, t, f) != p * apply_polynomial(u2, t, f)) return fail("additivity fails");
        ++good;
    }
    return pass("100 projections with closure 27 and minpoly x^3 - x - 1, additivity holds (" + std::to_string(kernel) +
                " draws in the kernel redrawn)");
}

Outcome fusion_stretch()
{
    models::HeisenbergModel h;
    try {
        h = models::heisenberg_13();
    } catch (const std::exception& e) {
        return {Outcome::Skipped, std::string("model construction failed: ") + e.what()};
    }
    const std::uint64_t order = subgroup_order(perms(h.group.generators()));
    if (order != 316368) return fail("model order " + std::to_string(order));
    if (subgroup_order(perms(h.k)) != 18) return fail("K is not of order 18");
    const TorusData td = find_torus(h.group, SearchBudget{}, h.t);
    if (td.d26_count != 78) return fail(std::to_string(td.d26_count) + " D26 above t");
    const FusedCases f = fuse_d26(td, h.k);
    const std::vector<std::size_t> expected{3, 3, 18, 18, 18, 18};
    const std::string d = "|G| = 316368, 78 D26 fuse into " + join(f.sizes);
    return f.sizes == expected ? pass(d) : fail(d);
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "polynomial quotient", 1.0, polynomial_quotient},
        {2, "PSL3(3) census", 10, psl3_census},
        {3, "3^2:D8 orbit multiset", 300, orbit_multiset},
        {4, "118 D26 in 13:2 x PSL3(3)", 120, count_118},
        {5, "positive control PSL2(27)", 300, positive_control},
        {6, "negative controls", 300, negative_controls},
        {7, "cost model", 60, cost_model},
        {8, "corpus integrity", 60, corpus_integrity},
        {9, "dihedral trick", 30, dihedral_suite},
        {10, "formula lift", 120, formula_suite},
        {11, "projection", 60, projection_suite},
        {12, "fusion orbit lengths (stretch)", 600, fusion_stretch},
    };
    bool ok = true;
    for (const auto& c : criteria) ok = c.run() && ok;
    return ok ? 0 : 1;
}
