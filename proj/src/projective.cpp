#include "mgx/projective.hpp"

#include <algorithm>

namespace mgx {

FFVector normalize_projective(FFVector v)
{
    const std::size_t lead = v.leading_index();
    if (lead == v.size()) throw FFError("zero vector has no projective point");
    v.scale(ff_inv(v.characteristic(), v.get(lead)));
    return v;
}

std::vector<FFVector> projective_points_pg23()
{
    std::vector<FFVector> pts;
    for (int code = 0; code < 27; ++code) {
        const Elt e[3] = {static_cast<Elt>(code / 9), static_cast<Elt>((code / 3) % 3), static_cast<Elt>(code % 3)};
        FFVector v(3, std::span<const Elt>(e, 3));
        if (v.is_zero() || v.get(v.leading_index()) != 1) continue;
        pts.push_back(std::move(v));
    }
    return pts;  // already lexicographic by construction
}

std::vector<Permutation> projective_action(std::span<const FFMatrix> generators)
{
    const auto points = projective_points_pg23();
    auto locate = [&points](const FFVector& v) {
        auto it = std::find(points.begin(), points.end(), v);
        return static_cast<Permutation::Point>(it - points.begin());
    };
    std::vector<Permutation> out;
    for (const auto& m : generators) {
        if (m.characteristic() != 3 || m.rows() != 3 || m.cols() != 3) {
            throw FFError("projective action needs 3x3 matrices over GF(3)");
        }
        if (m.rank() != 3) throw FFError("singular generator");
        std::vector<Permutation::Point> img;
        for (const auto& pt : points) img.push_back(locate(normalize_projective(vec_apply(pt, m))));
        out.emplace_back(std::move(img));
    }
    return out;
}

}  // namespace mgx
