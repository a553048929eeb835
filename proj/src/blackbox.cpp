#include "mgx/blackbox.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace mgx {

// ---------------------------------------------------------------- GroupModel

GroupModel::GroupModel(std::string name, std::vector<std::pair<std::string, Element>> generators,
                       std::vector<Element> normal_subgroup)
    : name_(std::move(name)), gens_(std::move(generators)), q_(std::move(normal_subgroup))
{
    if (gens_.empty()) throw std::invalid_argument("group model '" + name_ + "' has no generators");
    backend_ = backend_of(gens_.front().second);
    for (const auto& [n, g] : gens_) {
        if (backend_of(g) != backend_) throw BackendMismatch("generator '" + n + "' does not match the model backend");
    }
    for (const auto& g : q_) {
        if (backend_of(g) != backend_) throw BackendMismatch("normal subgroup generator does not match the model backend");
    }
    if (q_.empty()) return;
    std::vector<Element> q_elems;
    try {
        q_elems = enumerate_group(q_, backend_, std::size_t{1} << 13);
    } catch (const SearchError&) {
        return;  // too large to check here
    }
    auto members_ptr = std::make_shared<std::unordered_set<Element, ElementHash>>(q_elems.begin(), q_elems.end());
    const auto& members = *members_ptr;
    for (const auto& [n, g] : gens_) {
        for (const auto& q : q_) {
            if (!members.count(conjugate(q, g)) || !members.count(conjugate(q, inverse(g)))) {
                throw VerificationError("generator '" + n + "' does not normalize the designated subgroup");
            }
        }
    }
    q_members_ = std::move(members_ptr);
}

std::vector<Element> GroupModel::generators() const
{
    std::vector<Element> out;
    for (const auto& [n, g] : gens_) out.push_back(g);
    return out;
}

const Element& GroupModel::generator(const std::string& name) const
{
    for (const auto& [n, g] : gens_) {
        if (n == name) return g;
    }
    throw std::out_of_range("no generator '" + name + "' in " + name_);
}

bool GroupModel::has_generator(const std::string& name) const
{
    return std::any_of(gens_.begin(), gens_.end(), [&](const auto& p) { return p.first == name; });
}

Binding GroupModel::binding() const
{
    Binding b;
    for (const auto& [n, g] : gens_) b.emplace(n, g);
    return b;
}

std::vector<Permutation> GroupModel::permutation_generators() const
{
    if (backend_.kind != BackendKind::Permutation) throw BackendMismatch(name_ + " is not a permutation group");
    std::vector<Permutation> out;
    for (const auto& [n, g] : gens_) out.push_back(std::get<Permutation>(g));
    return out;
}

// ---------------------------------------------------------------- orders, random elements

std::uint64_t element_order(const Element& g, std::uint64_t cap)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->order();
    const auto& m = std::get<FFMatrix>(g);
    FFMatrix x = m;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (x.is_identity()) return n;
        x = x * m;
    }
    throw SearchError("element order exceeds " + std::to_string(cap));
}

ProductReplacement::ProductReplacement(std::vector<Element> generators, std::uint64_t seed, std::size_t slots,
                                       std::size_t burn_in)
    : rng_(seed)
{
    if (generators.empty()) throw std::invalid_argument("product replacement needs a generator");
    if (slots < 2) slots = 2;
    for (std::size_t i = 0; i < slots; ++i) slots_.push_back(generators[i % generators.size()]);
    acc_ = identity_of(backend_of(generators.front()));
    for (std::size_t i = 0; i < burn_in; ++i) step();
}

void ProductReplacement::step()
{
    const std::size_t n = slots_.size();
    const std::size_t i = rng_() % n;
    std::size_t j = rng_() % (n - 1);
    if (j >= i) ++j;
    const std::uint64_t r = rng_();
    const Element sj = (r & 1) ? inverse(slots_[j]) : slots_[j];
    slots_[i] = (r & 2) ? sj * slots_[i] : slots_[i] * sj;
    acc_ = acc_ * slots_[i];
}

Element ProductReplacement::next()
{
    step();
    return acc_;
}

Element random_element(const GroupModel& g, const SearchBudget& budget)
{
    return ProductReplacement(g.generators(), budget.seed).next();
}

// ---------------------------------------------------------------- dihedral trick

Element dihedral_conjugator(const Element& x, const Element& y)
{
    if (is_identity(x) || !is_identity(x * x)) throw std::invalid_argument("dihedral_conjugator: x is not an involution");
    if (is_identity(y) || !is_identity(y * y)) throw std::invalid_argument("dihedral_conjugator: y is not an involution");
    const Element xy = x * y;
    const std::uint64_t n = element_order(xy);
    if (n % 2 == 0) throw SearchError("dihedral_conjugator: product has even order " + std::to_string(n));
    const Element c = power(xy, static_cast<long long>((n - 1) / 2));
    if (!(conjugate(y, c) == x)) throw VerificationError("dihedral_conjugator: y^c != x");
    return c;
}

// ---------------------------------------------------------------- formula lift

Element formula_lift(const Element& t, const Element& x, const FormulaPattern& pattern, const GroupModel* model)
{
    const std::uint64_t n = element_order(t);
    if (n % 2 == 0) throw std::invalid_argument("formula_lift: torus element has even order");
    const long long k = pattern.k.value_or(static_cast<long long>((n - 1) / 2));
    const Element bracket = power(t, pattern.e) * inverse(x) * t * x;
    Element y = t * x * power(bracket, k);
    if (pattern.outer_square) y = y * y;

    const long long nn = static_cast<long long>(n);
    const long long action = ((pattern.declared_action() % nn) + nn) % nn;
    if (!(conjugate(t, y) == power(t, action))) {
        throw VerificationError("formula_lift: result does not act on <t> as t -> t^" + std::to_string(action));
    }
    if (model && !model->normal_subgroup().empty()) {
        std::unordered_set<Element, ElementHash> local;
        const auto* members_ptr = model->normal_subgroup_members();
        if (!members_ptr) {
            const auto q = enumerate_group(model->normal_subgroup(), model->backend());
            local.insert(q.begin(), q.end());
            members_ptr = &local;
        }
        const auto& members = *members_ptr;
        const Element base = pattern.outer_square ? x * x : x;
        if (!members.count(inverse(base) * y)) throw VerificationError("formula_lift: result left the coset of Q");
    }
    return y;
}

// ---------------------------------------------------------------- enumeration

std::vector<Element> enumerate_group(const std::vector<Element>& gens, const Backend& backend, std::size_t cap)
{
    std::vector<Element> out{identity_of(backend)};
    std::unordered_set<Element, ElementHash> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            Element h = out[i] * g;
            if (seen.insert(h).second) {
                if (out.size() >= cap) throw SearchError("group has more than " + std::to_string(cap) + " elements");
                out.push_back(std::move(h));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- coset search

namespace {

constexpr std::size_t kQCap = std::size_t{1} << 22;

// An elementary abelian p-group with an independent basis; element k of
// `elems` has coordinates given by the base-p digits of k.
class AbelianSpace {
public:
    explicit AbelianSpace(const std::vector<Element>& gens)
    {
        if (gens.empty()) throw std::invalid_argument("coset_lift_search: Q has no generators");
        const Backend b = backend_of(gens.front());
        elems_.push_back(identity_of(b));
        index_.emplace(elems_.front(), 0);
        for (const auto& g : gens) {
            if (is_identity(g)) continue;
            const std::uint64_t o = element_order(g);
            if (p_ == 0) {
                p_ = static_cast<int>(o);
                if (p_ != 2 && p_ != 3 && p_ != 5 && p_ != 7 && p_ != 11 && p_ != 13) {
                    throw std::invalid_argument("coset_lift_search: Q generators must have prime order");
                }
            } else if (static_cast<int>(o) != p_) {
                throw std::invalid_argument("coset_lift_search: Q is not elementary abelian");
            }
            for (const auto& h : basis_) {
                if (!(g * h == h * g)) throw std::invalid_argument("coset_lift_search: Q is not abelian");
            }
            if (index_.count(g)) continue;
            const std::size_t n = elems_.size();
            if (n * static_cast<std::size_t>(p_) > kQCap) throw SearchError("coset_lift_search: Q too large");
            Element gc = g;
            for (int c = 1; c < p_; ++c) {
                for (std::size_t i = 0; i < n; ++i) {
                    Element e = elems_[i] * gc;
                    index_.emplace(e, elems_.size());
                    elems_.push_back(std::move(e));
                }
                gc = gc * g;
            }
            basis_.push_back(g);
        }
        if (p_ == 0) p_ = 2;
    }

    int p() const { return p_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t size() const { return elems_.size(); }
    const Element& at(std::size_t k) const { return elems_[k]; }
    const std::vector<Element>& basis() const { return basis_; }

    std::optional<std::size_t> index_of(const Element& g) const
    {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    FFVector coords(std::size_t k) const
    {
        FFVector v(p_, dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            v.set(i, static_cast<Elt>(k % p_));
            k /= p_;
        }
        return v;
    }

    std::size_t index(const FFVector& v) const
    {
        std::size_t k = 0;
        for (std::size_t i = dim(); i-- > 0;) k = k * p_ + v.get(i);
        return k;
    }

private:
    int p_ = 0;
    std::vector<Element> basis_;
    std::vector<Element> elems_;
    std::unordered_map<Element, std::size_t, ElementHash> index_;
};

// All GF(p) combinations of the given vectors (span enumerated with repetition
// only if the vectors are dependent; callers pass independent ones).
std::vector<FFVector> span_of(const std::vector<FFVector>& vs, int p, std::size_t len)
{
    std::vector<FFVector> out{FFVector(p, len)};
    for (const auto& v : vs) {
        const std::size_t n = out.size();
        for (int c = 1; c < p; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                FFVector w = out[i];
                w.add_scaled(v, static_cast<Elt>(c));
                out.push_back(std::move(w));
            }
        }
    }
    return out;
}

}  // namespace

CosetSearchResult coset_lift_search(const Element& x, const std::vector<Element>& q_generators,
                                    const ElementPredicate& predicate, const CosetSearchOptions& options)
{
    const AbelianSpace q(q_generators);
    auto candidate = [&](const Element& qe) { return options.form == LiftForm::Coset ? x * qe : conjugate(x, qe); };

    CosetSearchResult result;
    bool found = false;
    auto record = [&](std::size_t k) {
        const Element& qe = q.at(k);
        if (!found) {
            result.q = qe;
            result.element = candidate(qe);
            found = true;
        }
        if (options.find_all) result.hits.push_back(qe);
    };

    if (!options.split) {
        for (std::size_t k = 0; k < q.size(); ++k) {
            ++result.evaluations;
            if (predicate(candidate(q.at(k)))) {
                record(k);
                if (!options.find_all) break;
            }
        }
    } else {
        const Element& s = options.split->s;
        FFMatrix m(q.p(), q.dim(), q.dim());
        for (std::size_t i = 0; i < q.dim(); ++i) {
            const auto k = q.index_of(conjugate(q.basis()[i], s));
            if (!k) throw std::invalid_argument("coset_lift_search: split element does not normalize Q");
            m.row(i) = q.coords(*k);
        }
        const auto fixed = fixed_space(m);
        result.fixed_dimension = fixed.size();
        std::vector<bool> pivot(q.dim(), false);
        for (const auto& v : fixed) pivot[v.leading_index()] = true;
        std::vector<FFVector> complement;
        for (std::size_t j = 0; j < q.dim(); ++j) {
            if (!pivot[j]) complement.push_back(FFVector::unit(q.p(), q.dim(), j));
        }
        const auto reps = span_of(complement, q.p(), q.dim());
        const auto fixed_elems = span_of(fixed, q.p(), q.dim());
        for (const auto& r : reps) {
            ++result.evaluations;
            ++result.coarse_evaluations;
            if (!options.split->coarse(candidate(q.at(q.index(r))))) continue;
            for (const auto& f : fixed_elems) {
                const std::size_t k = q.index(r + f);
                ++result.evaluations;
                if (predicate(candidate(q.at(k)))) {
                    record(k);
                    if (!options.find_all) break;
                }
            }
            if (found && !options.find_all) break;
        }
    }
    if (!found) throw SearchError("coset_lift_search: no element of the coset satisfies the predicate");
    return result;
}

// ---------------------------------------------------------------- projection

Element apply_polynomial(const Element& u, const Element& t, const FFPolynomial& f)
{
    Element out = identity_of(backend_of(u));
    Element tp = identity_of(backend_of(t));
    for (int i = 0; i <= f.degree(); ++i) {
        if (const Elt c = f.coefficient(static_cast<std::size_t>(i))) out = out * conjugate(power(u, c), tp);
        tp = tp * t;
    }
    return out;
}

Element polynomial_projection(const Element& u, const Element& t, const FFPolynomial& f,
                              const std::optional<FFPolynomial>& check)
{
    if (element_order(u) != static_cast<std::uint64_t>(f.characteristic())) {
        throw std::invalid_argument("polynomial_projection: u must have order " + std::to_string(f.characteristic()));
    }
    Element out = apply_polynomial(u, t, f);
    if (is_identity(out)) throw SearchError("polynomial_projection: projection annihilates u");
    if (check && !is_identity(apply_polynomial(out, t, *check))) {
        throw VerificationError("polynomial_projection: result is not annihilated by " + check->to_string());
    }
    return out;
}

}  // namespace mgx
