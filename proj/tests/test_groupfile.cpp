#include <sstream>

#include "doctest.h"
#include "mgx/groupfile.hpp"
#include "mgx/models.hpp"
#include "mgx/oracle.hpp"

using namespace mgx;

namespace {

const std::string kAssets = MGX_ASSET_DIR;

std::uint64_t file_order(const GroupFile& g)
{
    std::vector<Permutation> ps;
    for (const auto& [n, e] : g.generators) ps.push_back(std::get<Permutation>(e));
    return subgroup_order(ps, g.backend.degree);
}

GroupFile parse(const std::string& text)
{
    std::istringstream in(text);
    return read_group_file(in);
}

}  // namespace

TEST_CASE("bundled group files match their constructions")
{
    const std::vector<std::tuple<std::string, GroupModel, std::uint64_t>> cases = {
        {"psl2_27.grp", models::psl2_27(), 9828},         {"l3_3.grp", models::psl3_3(), 5616},
        {"d26.grp", models::d26(), 26},                   {"3e3_13.grp", models::affine_27_13(), 351},
        {"3e3_13_3.grp", models::affine_27_13_3(), 1053}, {"3e3_d26.grp", models::affine_27_d26(), 702},
        {"13_2_x_l3_3.grp", models::c13_2_x_psl3_3(), 146016},
    };
    for (const auto& [file, model, order] : cases) {
        CAPTURE(file);
        const GroupFile g = load_group_file(kAssets + "/" + file);
        CHECK(g.name == model.name());
        CHECK(g.generators == model.named_generators());
        CHECK(file_order(g) == order);
    }
}

TEST_CASE("round trip")
{
    for (const auto& model : {models::psl2_27(), models::q12_13_12(), models::gf3_12_translations()}) {
        const GroupFile g = to_group_file(model, "t");
        std::ostringstream out;
        write_group_file(out, g);
        const GroupFile back = parse(out.str());
        CHECK(back.name == g.name);
        CHECK(back.backend == g.backend);
        CHECK(back.generators == g.generators);
        CHECK(back.normal == g.normal);
        CHECK(back.torus == std::optional<std::string>("t"));
        std::ostringstream again;
        write_group_file(again, back);
        CHECK(again.str() == out.str());
        CHECK(back.model().normal_subgroup().size() == model.normal_subgroup().size());
    }
}

TEST_CASE("images may span lines and comments are ignored")
{
    const GroupFile g = parse("# S3\nname S3\nperm 3\ngen a\n2 3\n1  # wraps\ngen b\n2 1 3\n");
    CHECK(file_order(g) == 6);
    CHECK(g.generators.size() == 2);
}

TEST_CASE("malformed files")
{
    auto line_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const GroupFileError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("perm 3\ngen a\n1 2 2\n") == 3);            // not a bijection
    CHECK(line_of("perm 3\ngen a\n1 2 4\n") == 3);            // out of range
    CHECK(line_of("perm 3\ngen a\n1 2\n") == 3);              // truncated
    CHECK(line_of("gen a\n1 2 3\n") == 1);                    // no kind line
    CHECK(line_of("perm 3\ngen a\n1 2 3\ngen a\n1 2 3\n") == 4);  // duplicate name
    CHECK(line_of("perm 3\ngen 1a\n1 2 3\n") == 2);           // bad name
    CHECK(line_of("perm 3\nfoo\n") == 2);
    CHECK(line_of("matgrp 3 2\ngen a\n12\n3\n") == 4);        // bad digit / length
    CHECK(line_of("matgrp 3 2\ngen a\n11\n22\n") == 4);       // singular
    CHECK(line_of("matgrp 5 2\n") == 1);
    CHECK(line_of("perm 3\ngen a\n1 2 3\ntorus b\n") == 4);
    CHECK(line_of("perm 3\n") == 1);                          // no generators
    CHECK_THROWS_AS(load_group_file("/nonexistent.grp"), GroupFileError);
}

TEST_CASE("matrix group files")
{
    const GroupFile g = parse("name m\nmatgrp 3 2\ngen a\n11\n01\n");
    const auto& m = std::get<FFMatrix>(g.generators.front().second);
    CHECK(m.get(0, 1) == 1);
    CHECK(m.get(1, 0) == 0);
    CHECK(g.backend.characteristic == 3);
}
