// Writes the bundled group files from the constructions in models.hpp.

#include <fstream>
#include <iostream>
#include <optional>

#include "mgx/groupfile.hpp"
#include "mgx/models.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make_assets <dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    using namespace mgx;
    const std::vector<std::tuple<std::string, GroupModel, std::optional<std::string>>> files = {
        {"psl2_27.grp", models::psl2_27(), "t"},
        {"l3_3.grp", models::psl3_3(), std::nullopt},
        {"d26.grp", models::d26(), "t"},
        {"3e3_13.grp", models::affine_27_13(), "t"},
        {"3e3_13_3.grp", models::affine_27_13_3(), "t"},
        {"3e3_d26.grp", models::affine_27_d26(), "t"},
        {"13_2_x_l3_3.grp", models::c13_2_x_psl3_3(), "t"},
    };
    for (const auto& [name, model, torus] : files) {
        std::ofstream out(dir + "/" + name);
        write_group_file(out, to_group_file(model, torus));
        if (!out) {
            std::cerr << "cannot write " << name << "\n";
            return 1;
        }
    }
    return 0;
}
