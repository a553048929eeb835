#include "mgx/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>
#include <thread>

#include "mgx/oracle.hpp"

namespace mgx {

namespace {

constexpr std::uint64_t kPsl227Order = 9828;
constexpr std::uint64_t kExhaustiveCap = 1000000;

std::vector<Permutation> as_permutations(const std::vector<Element>& xs)
{
    std::vector<Permutation> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        const auto* p = std::get_if<Permutation>(&x);
        if (!p) throw BackendMismatch("pipeline: permutation elements required");
        out.push_back(*p);
    }
    return out;
}

bool has_order(const Element& g, std::uint64_t n)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->order() == n;
    return element_order(g) == n;
}

bool inverts(const Element& x, const Element& t) { return conjugate(t, x) == inverse(t); }

std::string element_text(const Element& e)
{
    if (const auto* p = std::get_if<Permutation>(&e)) return p->to_cycle_string();
    return to_string(e);
}

}  // namespace

TorusData find_torus(const GroupModel& g, const SearchBudget& budget, const std::optional<Element>& t)
{
    const auto gens = g.permutation_generators();
    const BSGS bsgs = schreier_sims(gens, g.backend().degree);
    TorusData out;
    if (t) {
        if (!has_order(*t, 13)) throw std::invalid_argument("find_torus: t must have order 13");
        if (!is_member(std::get<Permutation>(*t), bsgs)) throw std::invalid_argument("find_torus: t is not in the group");
        out.t = *t;
    } else {
        if (bsgs.order() % 13 != 0) throw Inapplicable("no element of order 13");
        ProductReplacement pr(g.generators(), budget.seed);
        bool found = false;
        for (std::uint64_t i = 0; i < budget.trials && !found; ++i) {
            const Element x = pr.next();
            const std::uint64_t n = element_order(x);
            if (n % 13 == 0) {
                out.t = power(x, static_cast<long long>(n / 13));
                found = true;
            }
        }
        if (!found) throw SearchError("find_torus: no element of order 13 within budget");
    }
    for (auto& x : involutions(bsgs)) {
        Element e = std::move(x);
        if (inverts(e, out.t)) out.inverting.push_back(std::move(e));
    }
    if (out.inverting.size() % 13 != 0) throw VerificationError("find_torus: inverting involutions not a multiple of 13");
    out.d26_count = out.inverting.size() / 13;
    return out;
}

FFPolynomial b_group_projector()
{
    const FFPolynomial den = FFPolynomial(3, {-1, 1}) * FFPolynomial(3, {-1, -1, 0, 1});
    return poly_divmod(FFPolynomial::x_pow_minus_one(3, 13), den).quotient;
}

std::optional<FFPolynomial> b_group_certificate(const Element& u, const Element& t)
{
    if (!has_order(u, 3)) return std::nullopt;
    const Element a = u, b = conjugate(a, t), c = conjugate(b, t), d = conjugate(c, t);
    if (a * b != b * a || a * c != c * a || b * c != c * b) return std::nullopt;
    std::unordered_set<Element, ElementHash> seen;
    std::optional<std::array<int, 3>> coords;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Element e = power(a, i) * power(b, j) * power(c, k);
                if (e == d) coords = std::array<int, 3>{i, j, k};
                seen.insert(std::move(e));
            }
    if (seen.size() != 27 || !coords) return std::nullopt;
    const auto& [c0, c1, c2] = *coords;
    return FFPolynomial(3, {-c0, -c1, -c2, 1});
}

BGroupData build_b_group(const GroupModel& g, const Element& t, const SearchBudget& budget)
{
    if (!has_order(t, 13)) throw std::invalid_argument("build_b_group: t must have order 13");
    const FFPolynomial f = b_group_projector();
    const FFPolynomial target(3, {-1, -1, 0, 1});

    auto attempt = [&](const Element& u0) -> std::optional<BGroupData> {
        if (conjugate(u0, t) * u0 != u0 * conjugate(u0, t)) return std::nullopt;
        Element tk = t;
        for (int k = 1; k <= 12; ++k, tk = tk * t) {
            Element u = apply_polynomial(u0, tk, f);
            if (is_identity(u)) continue;
            auto cert = b_group_certificate(u, tk);
            if (!cert || !(*cert == target)) continue;
            BGroupData out;
            out.u = u;
            out.t = tk;
            out.t_power = k;
            out.generators = {u, conjugate(u, tk), conjugate(conjugate(u, tk), tk)};
            out.minpoly = *cert;
            return out;
        }
        return std::nullopt;
    };

    ProductReplacement pr(g.generators(), budget.seed + 1);
    for (std::uint64_t i = 0; i < budget.trials; ++i) {
        const Element x = pr.next();
        const std::uint64_t n = element_order(x);
        if (n % 3 != 0) continue;
        if (auto out = attempt(power(x, static_cast<long long>(n / 3)))) return *out;
    }

    if (g.backend().kind == BackendKind::Permutation) {
        const auto gens = g.permutation_generators();
        const BSGS bsgs = schreier_sims(gens, g.backend().degree);
        if (bsgs.order() <= kExhaustiveCap) {
            std::optional<BGroupData> found;
            bsgs.for_each_element([&](const Permutation& p) {
                if (p.order() != 3) return true;
                found = attempt(Element(p));
                return !found.has_value();
            });
            if (found) return *found;
            throw Inapplicable("no valid 3^3");
        }
    }
    throw SearchError("build_b_group: no valid 3^3 within budget");
}

FusedCases fuse_cases(const TorusData& torus, const std::vector<Element>& stabilizer)
{
    const auto set = as_permutations(torus.inverting);
    const auto acting = as_permutations(stabilizer);
    const OrbitPartition part = conjugation_orbits(acting, set);
    FusedCases out;
    out.sizes = part.sizes;
    for (const auto& r : part.representatives) out.representatives.emplace_back(r);
    return out;
}

FusedCases fuse_d26(const TorusData& torus, const std::vector<Element>& stabilizer)
{
    std::vector<Element> acting = stabilizer;
    acting.push_back(torus.t);
    FusedCases out = fuse_cases(torus, acting);
    for (auto& s : out.sizes) {
        if (s % 13 != 0) throw VerificationError("fuse_d26: orbit is not a union of D26 involution sets");
        s /= 13;
    }
    return out;
}

std::optional<int> criterion_test(const Element& u, const Element& x, const Element& t)
{
    if (!has_order(u, 3)) throw std::invalid_argument("criterion_test: u must have order 3");
    if (!has_order(t, 13)) throw std::invalid_argument("criterion_test: t must have order 13");
    if (!has_order(x, 2) || !inverts(x, t)) throw std::invalid_argument("criterion_test: x must be an involution inverting t");
    Element ux = u * x;
    for (int m = 0; m <= 12; ++m, ux = ux * t) {
        if (!is_identity(ux) && is_identity(power(ux, 3))) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- costs

CostTable cost_report(const WordCorpus& corpus, const std::vector<std::string>& case_words, const std::string& u_word,
                      const std::string& torus_word, const std::string& target)
{
    if (case_words.empty()) throw std::invalid_argument("cost_report: no case words");
    CostTable out;
    out.target = target;
    out.u_word = u_word;
    out.t_count_u = gen_count(u_word, corpus, target);
    out.reduced_t_count_u = reduced_gen_count(parse_word(u_word), corpus, target);
    out.torus_t_count = gen_count(torus_word, corpus, target);
    std::uint64_t reduced_total = 0;
    for (const auto& name : case_words) {
        CaseRow row;
        row.name = name;
        row.t_count = gen_count(name, corpus, target);
        row.reduced_t_count = reduced_gen_count(parse_word(name), corpus, target);
        // Averaged over m = 0..12, the torus power contributes 6 copies of it.
        row.applications = 3 * (out.t_count_u + row.t_count + 6 * out.torus_t_count);
        out.total_t_count_x += row.t_count;
        reduced_total += row.reduced_t_count;
        out.cases.push_back(std::move(row));
    }
    const double n = static_cast<double>(case_words.size());
    out.mean_t_count_x = static_cast<double>(out.total_t_count_x) / n;
    out.mean_reduced_t_count_x = static_cast<double>(reduced_total) / n;
    std::uint64_t apps = 0;
    for (const auto& r : out.cases) apps += r.applications;
    out.mean_applications_per_test = static_cast<double>(apps) / n;
    return out;
}

namespace {

std::string fmt_number(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string format_cost_table(const CostTable& table)
{
    std::ostringstream os;
    os << "word        " << table.target << "-count  reduced  applications/test\n";
    auto line = [&](const std::string& name, std::uint64_t c, std::uint64_t r, const std::string& apps) {
        std::string pad = name;
        pad.resize(std::max<std::size_t>(pad.size(), 12), ' ');
        std::string cs = std::to_string(c);
        cs.resize(std::max<std::size_t>(cs.size(), 9), ' ');
        std::string rs = std::to_string(r);
        rs.resize(std::max<std::size_t>(rs.size(), 9), ' ');
        os << pad << cs << rs << apps << "\n";
    };
    line(table.u_word, table.t_count_u, table.reduced_t_count_u, "");
    for (const auto& row : table.cases) line(row.name, row.t_count, row.reduced_t_count, std::to_string(row.applications));
    os << "mean " << table.target << "-count of case words: " << fmt_number(table.mean_t_count_x) << " (reduced "
       << fmt_number(table.mean_reduced_t_count_x) << ")\n";
    os << "mean applications per order-3 test: " << fmt_number(table.mean_applications_per_test) << "\n";
    return os.str();
}

nlohmann::json cost_json(const CostTable& table)
{
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& r : table.cases) {
        cases.push_back({{"name", r.name},
                         {"t_count", r.t_count},
                         {"reduced_t_count", r.reduced_t_count},
                         {"applications", r.applications}});
    }
    return {{"target", table.target},
            {"u_word", table.u_word},
            {"t_count_u", table.t_count_u},
            {"reduced_t_count_u", table.reduced_t_count_u},
            {"torus_t_count", table.torus_t_count},
            {"cases", cases},
            {"mean_t_count_x", table.mean_t_count_x},
            {"mean_reduced_t_count_x", table.mean_reduced_t_count_x},
            {"mean_applications_per_test", table.mean_applications_per_test}};
}

// ---------------------------------------------------------------- classify

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Found: return "found";
    case Verdict::NotFound: return "not_found";
    case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

PipelineReport classify(const GroupModel& g, const SearchBudget& budget, const ClassifyOptions& options)
{
    PipelineReport report;
    report.group = g.name();
    report.seed = budget.seed;
    if (options.corpus) report.costs = cost_report(*options.corpus, options.case_words);

    TorusData torus;
    try {
        torus = find_torus(g, budget, options.t);
    } catch (const Inapplicable& e) {
        report.verdict = Verdict::Inapplicable;
        report.reason = e.what();
        return report;
    }
    report.torus_order = 13;
    report.inverting_involutions = torus.inverting.size();
    report.d26_count = torus.d26_count;

    BGroupData b;
    try {
        b = build_b_group(g, torus.t, budget);
    } catch (const Inapplicable& e) {
        report.verdict = Verdict::NotFound;
        report.reason = e.what();
        return report;
    }
    report.t_power = b.t_power;

    if (torus.inverting.empty()) {
        report.verdict = Verdict::NotFound;
        report.reason = "no involution inverts t";
        return report;
    }

    const FusedCases fused = fuse_cases(torus, options.stabilizer.value_or(std::vector<Element>{torus.t}));
    report.orbit_sizes = fused.sizes;
    const std::size_t n = fused.representatives.size();
    report.cases.resize(n);

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            CaseResult& r = report.cases[i];
            r.representative = fused.representatives[i];
            r.orbit_size = fused.sizes[i];
            r.m_hit = criterion_test(b.u, r.representative, b.t);
            if (r.m_hit) {
                r.verified_order = subgroup_order(as_permutations({b.t, b.u, r.representative}), g.backend().degree);
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    }

    bool any_hit = false;
    for (const auto& r : report.cases) {
        if (r.m_hit) any_hit = true;
        if (r.verified_order == kPsl227Order) report.verdict = Verdict::Found;
    }
    if (report.verdict != Verdict::Found) {
        report.verdict = Verdict::NotFound;
        report.reason = any_hit ? "criterion hits do not generate a group of order 9828" : "order-3 criterion never holds";
    }
    return report;
}

nlohmann::json report_json(const PipelineReport& report)
{
    using nlohmann::json;
    json cases = json::array();
    for (const auto& c : report.cases) {
        cases.push_back({{"representative", element_text(c.representative)},
                         {"orbit_size", c.orbit_size},
                         {"m_hit", c.m_hit ? json(*c.m_hit) : json(nullptr)},
                         {"verified_order", c.verified_order ? json(*c.verified_order) : json(nullptr)}});
    }
    return {{"group", report.group},
            {"seed", report.seed},
            {"verdict", to_string(report.verdict)},
            {"reason", report.reason},
            {"torus_order", report.torus_order},
            {"inverting_involutions", report.inverting_involutions},
            {"d26_count", report.d26_count},
            {"t_power", report.t_power ? json(*report.t_power) : json(nullptr)},
            {"orbit_sizes", report.orbit_sizes},
            {"cases", cases},
            {"costs", report.costs ? cost_json(*report.costs) : json(nullptr)}};
}

std::string format_report(const PipelineReport& report)
{
    std::ostringstream os;
    os << "group " << report.group << "\n";
    os << "seed " << report.seed << "\n";
    os << "verdict " << to_string(report.verdict);
    if (!report.reason.empty()) os << " (" << report.reason << ")";
    os << "\n";
    if (report.torus_order) {
        os << "torus order " << report.torus_order << ", " << report.inverting_involutions << " inverting involutions, "
           << report.d26_count << " D26\n";
    }
    if (report.t_power) os << "3^3:13 built with t^" << *report.t_power << "\n";
    if (!report.orbit_sizes.empty()) {
        os << "orbit sizes";
        for (auto s : report.orbit_sizes) os << " " << s;
        os << "\n";
    }
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const auto& c = report.cases[i];
        os << "case " << i << " (orbit " << c.orbit_size << ") " << element_text(c.representative) << ": ";
        if (c.m_hit) {
            os << "m = " << *c.m_hit << ", verified order " << *c.verified_order;
        } else {
            os << "no m";
        }
        os << "\n";
    }
    if (report.costs) os << format_cost_table(*report.costs);
    return os.str();
}

}  // namespace mgx
