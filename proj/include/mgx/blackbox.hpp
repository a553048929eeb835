#pragma once

// Generic black-box techniques: element orders, random elements, the dihedral
// conjugation trick, the normalizer lift ("apply the formula"), coset searches
// split by a fixed subgroup, and polynomial projection in a module.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mgx/element.hpp"
#include "mgx/eval.hpp"

namespace mgx {

class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a constructed element fails its postcondition check.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A group given by named generators, optionally with a designated normal
// subgroup Q (generators only).
class GroupModel {
public:
    GroupModel() = default;
    // Throws BackendMismatch on mixed backends and VerificationError if Q is
    // small enough to enumerate and is not normalized by the generators.
    GroupModel(std::string name, std::vector<std::pair<std::string, Element>> generators,
               std::vector<Element> normal_subgroup = {});

    const std::string& name() const { return name_; }
    const Backend& backend() const { return backend_; }
    const std::vector<std::pair<std::string, Element>>& named_generators() const { return gens_; }
    std::vector<Element> generators() const;
    // Throws std::out_of_range for an unknown name.
    const Element& generator(const std::string& name) const;
    bool has_generator(const std::string& name) const;
    const std::vector<Element>& normal_subgroup() const { return q_; }
    // Elements of Q when it has at most 2^13 of them, else null.
    const std::unordered_set<Element, ElementHash>* normal_subgroup_members() const { return q_members_.get(); }
    Binding binding() const;
    // Permutation generators; throws BackendMismatch for a matrix model.
    std::vector<Permutation> permutation_generators() const;

private:
    std::string name_;
    Backend backend_;
    std::vector<std::pair<std::string, Element>> gens_;
    std::vector<Element> q_;
    std::shared_ptr<const std::unordered_set<Element, ElementHash>> q_members_;
};

struct SearchBudget {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kOrderCap = 1000000;

// Least n >= 1 with g^n = 1.  Permutations use cycle lengths; matrices are
// powered step by step and throw SearchError beyond `cap`.
std::uint64_t element_order(const Element& g, std::uint64_t cap = kOrderCap);

// Accumulator product replacement.
class ProductReplacement {
public:
    ProductReplacement(std::vector<Element> generators, std::uint64_t seed, std::size_t slots = 10,
                       std::size_t burn_in = 50);
    Element next();

private:
    void step();

    std::vector<Element> slots_;
    Element acc_;
    std::mt19937_64 rng_;
};

// First draw of a fresh walk seeded from the budget.
Element random_element(const GroupModel& g, const SearchBudget& budget);

// For involutions x, y with xy of odd order 2m+1, returns c = (xy)^m, which
// satisfies y^c = x.  Throws std::invalid_argument for non-involutions and
// SearchError for an even product order.
Element dihedral_conjugator(const Element& x, const Element& y);

// y = t x (t^e x^-1 t x)^k, optionally squared.  If t^x = t^e modulo Q then y
// lies in xQ (x^2 Q when squared) and t^y = t^e (t^(e^2) when squared) exactly.
struct FormulaPattern {
    long long e = 1;
    std::optional<long long> k;  // default (order(t) - 1) / 2
    bool outer_square = false;

    static FormulaPattern commuting() { return {1, std::nullopt, false}; }
    static FormulaPattern inverting() { return {-1, std::nullopt, false}; }
    static FormulaPattern power(long long e, bool square = false) { return {e, std::nullopt, square}; }
    long long declared_action() const { return outer_square ? e * e : e; }
};

// Verifies t^y = t^(declared action) and, when the model carries an
// enumerable Q, the coset condition.  Throws VerificationError otherwise.
Element formula_lift(const Element& t, const Element& x, const FormulaPattern& pattern,
                     const GroupModel* model = nullptr);

// ---- searches over an elementary abelian normal subgroup

enum class LiftForm { Coset, Conjugate };  // x*q or x^q

using ElementPredicate = std::function<bool(const Element&)>;

struct SplitSpec {
    Element s;
    // Must be constant on cosets of C_Q(s) for the split to be exact.
    ElementPredicate coarse;
};

struct CosetSearchOptions {
    LiftForm form = LiftForm::Coset;
    std::optional<SplitSpec> split;
    bool find_all = false;
};

struct CosetSearchResult {
    Element element;          // first hit, x*q or x^q
    Element q;                // its Q-part
    std::vector<Element> hits;  // all hits (q values) when find_all
    std::uint64_t evaluations = 0;
    std::uint64_t coarse_evaluations = 0;
    std::size_t fixed_dimension = 0;  // dim C_Q(s) with a split
};

// Searches x*<Q> (or the Q-conjugates of x).  Q must be elementary abelian with
// at most 2^22 elements.  Throws SearchError when nothing satisfies the predicate.
CosetSearchResult coset_lift_search(const Element& x, const std::vector<Element>& q_generators,
                                    const ElementPredicate& predicate, const CosetSearchOptions& options = {});

// u * f(t) in module notation: the product over i of (u^c_i)^(t^i).
Element apply_polynomial(const Element& u, const Element& t, const FFPolynomial& f);

// apply_polynomial with sanity checks: u must have order p, the result must be
// nontrivial, and, if a check polynomial is given, annihilated by it.
Element polynomial_projection(const Element& u, const Element& t, const FFPolynomial& f,
                              const std::optional<FFPolynomial>& check = std::nullopt);

// All elements of <gens>, breadth first, throwing SearchError beyond `cap`.
std::vector<Element> enumerate_group(const std::vector<Element>& gens, const Backend& backend,
                                     std::size_t cap = std::size_t{1} << 20);

}  // namespace mgx
