#pragma once

// The PSL2(27) detection procedure: find a 13-torus, build 3^3:13 on it,
// enumerate and fuse the D26 extensions, and test u*x*t^m for order 3.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgx/blackbox.hpp"
#include "mgx/word.hpp"

namespace mgx {

// A structural obstruction (no order-13 element, no valid 3^3).
class Inapplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TorusData {
    Element t;
    std::vector<Element> inverting;  // involutions x with t^x = t^-1, sorted
    std::size_t d26_count = 0;
};

// Uses `t` when given, otherwise powers random elements.  Inverting involutions
// are found exhaustively, so G must be a permutation group of enumerable size.
// Throws Inapplicable when no element of order 13 turns up within the budget.
TorusData find_torus(const GroupModel& g, const SearchBudget& budget, const std::optional<Element>& t = std::nullopt);

struct BGroupData {
    Element u;
    Element t;  // the power of the torus generator used, t^(t_power)
    int t_power = 1;
    std::vector<Element> generators;  // u, u^t, u^(t^2)
    FFPolynomial minpoly;
};

// (x^13 - 1) / ((x - 1)(x^3 - x - 1)) over GF(3).
FFPolynomial b_group_projector();

// Checks that <u, u^t, u^t^2> is elementary abelian of order 27 and returns
// the minimal polynomial of t on it, or nullopt if it is not such a group.
std::optional<FFPolynomial> b_group_certificate(const Element& u, const Element& t);

// Random order-3 elements (then an exhaustive pass for groups of at most 10^6
// elements) are projected onto the x^3-x-1 summand for each power of t.
// Throws Inapplicable("no valid 3^3") when nothing certifies.
BGroupData build_b_group(const GroupModel& g, const Element& t, const SearchBudget& budget);

struct FusedCases {
    std::vector<Element> representatives;
    std::vector<std::size_t> sizes;
};

FusedCases fuse_cases(const TorusData& torus, const std::vector<Element>& stabilizer);

// Orbits of a subgroup normalizing <t> on the D26 subgroups containing t,
// computed as the orbits of <t, stabilizer> on involutions divided by 13.
FusedCases fuse_d26(const TorusData& torus, const std::vector<Element>& stabilizer);

// Least m in 0..12 with u*x*t^m of order 3.  Throws std::invalid_argument when
// u is not of order 3, t not of order 13, or x not an involution inverting t.
std::optional<int> criterion_test(const Element& u, const Element& x, const Element& t);

struct CaseRow {
    std::string name;
    std::uint64_t t_count = 0;
    std::uint64_t reduced_t_count = 0;
    std::uint64_t applications = 0;  // 3 * (u-word + this word) per order-3 test
};

struct CostTable {
    std::string target;
    std::string u_word;
    std::uint64_t t_count_u = 0;
    std::uint64_t reduced_t_count_u = 0;
    std::uint64_t torus_t_count = 0;
    std::vector<CaseRow> cases;
    std::uint64_t total_t_count_x = 0;
    double mean_t_count_x = 0;
    double mean_applications_per_test = 0;
    double mean_reduced_t_count_x = 0;
};

CostTable cost_report(const WordCorpus& corpus, const std::vector<std::string>& case_words,
                      const std::string& u_word = "j''", const std::string& torus_word = "g8",
                      const std::string& target = "T");
std::string format_cost_table(const CostTable& table);
nlohmann::json cost_json(const CostTable& table);

enum class Verdict { Found, NotFound, Inapplicable };
std::string to_string(Verdict v);

struct CaseResult {
    Element representative;
    std::size_t orbit_size = 0;
    std::optional<int> m_hit;
    std::optional<std::uint64_t> verified_order;
};

struct PipelineReport {
    std::string group;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::NotFound;
    std::string reason;
    std::uint64_t torus_order = 0;
    std::size_t inverting_involutions = 0;
    std::size_t d26_count = 0;
    std::optional<int> t_power;
    std::vector<std::size_t> orbit_sizes;
    std::vector<CaseResult> cases;
    std::optional<CostTable> costs;
};

struct ClassifyOptions {
    std::optional<Element> t;
    // Acts on the inverting involutions; defaults to <t>.
    std::optional<std::vector<Element>> stabilizer;
    const WordCorpus* corpus = nullptr;
    std::vector<std::string> case_words = {"x0", "x1", "x2", "x3", "x4", "x5"};
    unsigned threads = 1;  // 0 = hardware concurrency
};

PipelineReport classify(const GroupModel& g, const SearchBudget& budget, const ClassifyOptions& options = {});

nlohmann::json report_json(const PipelineReport& report);
std::string format_report(const PipelineReport& report);

}  // namespace mgx
