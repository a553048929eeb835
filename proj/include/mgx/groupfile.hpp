#pragma once

// Group files:
//
//   # comment
//   name PSL2(27)
//   perm 28            (or: matgrp <p> <d>)
//   gen t
//   <images, 1-based>  (or: d rows of digits)
//   normal q1          (optional elements generating a normal subgroup)
//   <data>
//   torus t            (optional hint: generator to use as the order-13 element)

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgx/blackbox.hpp"

namespace mgx {

class GroupFileError : public std::runtime_error {
public:
    GroupFileError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct GroupFile {
    std::string name;
    Backend backend;
    std::vector<std::pair<std::string, Element>> generators;
    std::vector<std::pair<std::string, Element>> normal;
    std::optional<std::string> torus;

    // Throws VerificationError if the normal subgroup is not normalized.
    GroupModel model() const;
};

GroupFile read_group_file(std::istream& in);
GroupFile load_group_file(const std::string& path);
void write_group_file(std::ostream& out, const GroupFile& g);
GroupFile to_group_file(const GroupModel& model, std::optional<std::string> torus = std::nullopt);

}  // namespace mgx
