#include "mgx/census.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace mgx {

namespace {

std::vector<Permutation> closure_elements(const std::vector<Permutation>& gens, std::size_t degree)
{
    return elements(schreier_sims(gens, degree));
}

}  // namespace

std::vector<std::vector<Permutation>> elementary_abelian_9(const BSGS& group)
{
    const auto all = elements(group);
    std::vector<Permutation> threes;
    for (const auto& g : all) {
        if (g.order() == 3) threes.push_back(g);
    }
    std::set<std::vector<Permutation>> found;
    for (std::size_t i = 0; i < threes.size(); ++i) {
        const auto& a = threes[i];
        const Permutation a2 = a * a;
        for (std::size_t j = i + 1; j < threes.size(); ++j) {
            const auto& b = threes[j];
            if (b == a2 || a * b != b * a) continue;
            std::vector<Permutation> e;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) e.push_back(a.pow(x) * b.pow(y));
            std::sort(e.begin(), e.end());
            found.insert(std::move(e));
        }
    }
    return {found.begin(), found.end()};
}

std::vector<SubgroupCandidate> find_3sq_d8_subgroups(const BSGS& group)
{
    const std::size_t degree = group.degree();
    const auto all = elements(group);
    const auto invols = involutions(group);
    std::set<std::vector<Permutation>> seen;
    std::vector<SubgroupCandidate> out;

    for (const auto& e : elementary_abelian_9(group)) {
        const std::set<Permutation> eset(e.begin(), e.end());
        // E is generated by any two of its elements outside a common cyclic subgroup.
        std::vector<Permutation> egens{e[1]};
        for (const auto& g : e) {
            if (!g.is_identity() && g != e[1] && g != e[1] * e[1]) {
                egens.push_back(g);
                break;
            }
        }
        std::vector<Permutation> normalizer_invols;
        for (const auto& g : invols) {
            if (eset.contains(conjugate(egens[0], g)) && eset.contains(conjugate(egens[1], g)))
                normalizer_invols.push_back(g);
        }
        std::vector<std::unordered_set<Permutation, PermutationHash>> local;
        for (std::size_t i = 0; i < normalizer_invols.size(); ++i) {
            for (std::size_t j = i + 1; j < normalizer_invols.size(); ++j) {
                const auto& x = normalizer_invols[i];
                const auto& y = normalizer_invols[j];
                if (std::any_of(local.begin(), local.end(), [&](const auto& h) { return h.contains(x) && h.contains(y); }))
                    continue;
                std::vector<Permutation> gens{egens[0], egens[1], x, y};
                if (subgroup_order(gens, degree) != 72) continue;
                auto h = closure_elements(gens, degree);
                local.emplace_back(h.begin(), h.end());
                std::size_t quotient_involutions = 0;
                std::set<std::vector<Permutation>> cosets;
                for (const auto& g : h) {
                    if (eset.contains(g) || !eset.contains(g * g)) continue;
                    std::vector<Permutation> coset;
                    for (const auto& q : e) coset.push_back(q * g);
                    std::sort(coset.begin(), coset.end());
                    if (cosets.insert(std::move(coset)).second) ++quotient_involutions;
                }
                if (quotient_involutions != 5) continue;
                if (!seen.insert(h).second) continue;
                SubgroupCandidate c;
                c.generators = gens;
                c.involution_orbits = conjugation_orbits(gens, invols).sizes;
                c.elements = std::move(h);
                out.push_back(std::move(c));
            }
        }
    }
    (void)all;
    return out;
}

}  // namespace mgx
