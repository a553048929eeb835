#include "mgx/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace mgx {

std::uint64_t BSGS::order() const
{
    std::uint64_t n = 1;
    for (const auto& l : levels_) n *= l.orbit.size();
    return n;
}

std::vector<Permutation::Point> BSGS::base() const
{
    std::vector<Permutation::Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
}

std::pair<Permutation, std::size_t> BSGS::sift(const Permutation& g) const
{
    Permutation h = g;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const auto& level = levels_[i];
        const auto beta = h[level.base];
        if (!level.transversal[beta]) return {h, i};
        h = h * level.transversal[beta]->inverse();
    }
    return {h, levels_.size()};
}

void BSGS::extend_orbit(std::size_t li)
{
    Level& level = levels_[li];
    // Re-run the closure from every known point so new generators reach it.
    std::deque<Permutation::Point> queue(level.orbit.begin(), level.orbit.end());
    while (!queue.empty()) {
        const auto pt = queue.front();
        queue.pop_front();
        for (const auto& s : level.generators) {
            const auto img = s[pt];
            if (level.transversal[img]) continue;
            level.transversal[img] = *level.transversal[pt] * s;
            level.orbit.push_back(img);
            queue.push_back(img);
        }
    }
}

void BSGS::add_generator(std::size_t li, const Permutation& g)
{
    if (li == levels_.size()) {
        Level fresh;
        fresh.base = g.first_moved();
        fresh.transversal.assign(degree_, std::nullopt);
        fresh.transversal[fresh.base] = Permutation::identity(degree_);
        fresh.orbit.push_back(fresh.base);
        levels_.push_back(std::move(fresh));
    }
    levels_[li].generators.push_back(g);
    extend_orbit(li);

    // Every Schreier generator must sift through the deeper levels.  Orbit and
    // generator lists are re-read by index because recursion only touches deeper
    // levels, leaving this one stable.
    for (std::size_t oi = 0; oi < levels_[li].orbit.size(); ++oi) {
        for (std::size_t si = 0; si < levels_[li].generators.size(); ++si) {
            const auto& level = levels_[li];
            const auto beta = level.orbit[oi];
            const Permutation& s = level.generators[si];
            Permutation schreier = *level.transversal[beta] * s * level.transversal[s[beta]]->inverse();
            if (schreier.is_identity()) continue;
            Permutation h = schreier;
            std::size_t stop = li + 1;
            for (; stop < levels_.size(); ++stop) {
                const auto& deeper = levels_[stop];
                const auto b = h[deeper.base];
                if (!deeper.transversal[b]) break;
                h = h * deeper.transversal[b]->inverse();
            }
            if (!h.is_identity()) add_generator(li + 1, h);
        }
    }
}

BSGS schreier_sims(std::span<const Permutation> generators, std::size_t degree)
{
    BSGS b;
    b.degree_ = generators.empty() ? degree : generators.front().degree();
    for (const auto& g : generators) {
        if (g.degree() != b.degree_) throw OracleError("generators have different degrees");
    }
    // Deterministic base: process generators in the given order; each new level
    // takes the smallest point moved by the element that opened it.
    for (const auto& g : generators) {
        b.generators_.push_back(g);
        if (g.is_identity()) continue;
        auto [residue, level] = b.sift(g);
        if (residue.is_identity()) continue;
        b.add_generator(0, g);
    }
    return b;
}

bool is_member(const Permutation& g, const BSGS& group)
{
    if (g.degree() != group.degree()) return false;
    return group.sift(g).first.is_identity();
}

void BSGS::for_each_element(const std::function<bool(const Permutation&)>& visit) const
{
    if (levels_.empty()) {
        visit(Permutation::identity(degree_));
        return;
    }
    bool go_on = true;
    // element = r_{L-1} * ... * r_0 with r_i from level i's transversal
    std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t depth, const Permutation& acc) {
        const auto& level = levels_[depth];
        for (auto pt : level.orbit) {
            if (!go_on) return;
            Permutation next = acc * *level.transversal[pt];
            if (depth == 0) {
                go_on = visit(next);
            } else {
                rec(depth - 1, next);
            }
        }
    };
    rec(levels_.size() - 1, Permutation::identity(degree_));
}

std::vector<Permutation> elements(const BSGS& group, std::uint64_t cap)
{
    if (group.order() > cap) throw OracleError("group order exceeds enumeration bound");
    std::vector<Permutation> out;
    out.reserve(group.order());
    group.for_each_element([&out](const Permutation& g) {
        out.push_back(g);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Permutation> involutions(const BSGS& group, std::uint64_t cap)
{
    if (group.order() > cap) throw OracleError("group order exceeds enumeration bound");
    std::vector<Permutation> out;
    group.for_each_element([&out](const Permutation& g) {
        if (!g.is_identity() && (g * g).is_identity()) out.push_back(g);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

OrbitPartition conjugation_orbits(std::span<const Permutation> acting, std::span<const Permutation> set)
{
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    for (std::size_t i = 0; i < set.size(); ++i) index.emplace(set[i], i);
    std::vector<Permutation> inverses;
    for (const auto& h : acting) inverses.push_back(h.inverse());

    std::vector<bool> seen(set.size(), false);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t start = 0; start < set.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> orbit{start};
        seen[start] = true;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            for (std::size_t j = 0; j < acting.size(); ++j) {
                Permutation img = inverses[j] * set[orbit[k]] * acting[j];
                auto it = index.find(img);
                if (it == index.end()) throw OracleError("set is not closed under conjugation");
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    orbit.push_back(it->second);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end(), [&](std::size_t a, std::size_t b) { return set[a] < set[b]; });
        orbits.push_back(std::move(orbit));
    }

    const std::size_t degree = set.empty() ? (acting.empty() ? 0 : acting.front().degree()) : set.front().degree();
    const std::uint64_t acting_order = subgroup_order(acting, degree);
    for (const auto& o : orbits) {
        if (acting_order % o.size() != 0) throw OracleError("orbit size does not divide the acting group order");
    }

    std::sort(orbits.begin(), orbits.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return set[a.front()] < set[b.front()];
    });
    OrbitPartition out;
    for (auto& o : orbits) {
        out.sizes.push_back(o.size());
        out.representatives.push_back(set[o.front()]);
        out.orbits.push_back(std::move(o));
    }
    return out;
}

std::uint64_t subgroup_order(std::span<const Permutation> elements, std::size_t degree)
{
    return schreier_sims(elements, degree).order();
}

}  // namespace mgx
