#include "mgx/groupfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace mgx {

GroupFileError::GroupFileError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

namespace {

bool valid_name(const std::string& s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    std::size_t i = 1;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    while (i < s.size() && s[i] == '\'') ++i;
    return i == s.size();
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Next non-blank, non-comment line, split into tokens.
    std::optional<std::vector<std::string>> next()
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            std::vector<std::string> toks;
            for (std::string t; ss >> t;) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        return std::nullopt;
    }
    int line() const { return line_no_; }
    [[noreturn]] void fail(const std::string& msg) const { throw GroupFileError(line_no_, msg); }

private:
    std::istream& in_;
    int line_no_ = 0;
};

Element read_element(Reader& r, const Backend& b)
{
    if (b.kind == BackendKind::Permutation) {
        std::vector<Permutation::Point> img;
        while (img.size() < b.degree) {
            auto toks = r.next();
            if (!toks) r.fail("permutation truncated");
            for (const auto& t : *toks) {
                std::size_t pos = 0;
                long long v = 0;
                try {
                    v = std::stoll(t, &pos);
                } catch (const std::exception&) {
                    r.fail("bad permutation image '" + t + "'");
                }
                if (pos != t.size() || v < 1 || static_cast<std::size_t>(v) > b.degree)
                    r.fail("permutation image out of range: " + t);
                img.push_back(static_cast<Permutation::Point>(v - 1));
            }
            if (img.size() > b.degree) r.fail("too many permutation images");
        }
        try {
            return Permutation(std::move(img));
        } catch (const PermError& e) {
            r.fail(e.what());
        }
    }
    FFMatrix m(b.characteristic, b.degree, b.degree);
    for (std::size_t row = 0; row < b.degree; ++row) {
        auto toks = r.next();
        if (!toks || toks->size() != 1) r.fail("expected a matrix row of digits");
        const std::string& s = toks->front();
        if (s.size() != b.degree) r.fail("matrix row has wrong length");
        for (std::size_t c = 0; c < s.size(); ++c) {
            const int d = s[c] - '0';
            if (d < 0 || d >= b.characteristic) r.fail("bad matrix digit '" + std::string(1, s[c]) + "'");
            m.set(row, c, static_cast<Elt>(d));
        }
    }
    if (m.rank() != b.degree) r.fail("matrix is singular");
    return m;
}

}  // namespace

GroupFile read_group_file(std::istream& in)
{
    Reader r(in);
    GroupFile g;
    bool have_kind = false;
    std::set<std::string> names;
    while (auto toks = r.next()) {
        const std::string& key = toks->front();
        if (key == "name") {
            if (toks->size() < 2) r.fail("name needs a value");
            g.name = (*toks)[1];
            for (std::size_t i = 2; i < toks->size(); ++i) g.name += " " + (*toks)[i];
        } else if (key == "perm" || key == "matgrp") {
            if (have_kind) r.fail("kind declared twice");
            have_kind = true;
            try {
                if (key == "perm") {
                    if (toks->size() != 2) r.fail("expected `perm <n>`");
                    g.backend = {BackendKind::Permutation, std::stoul((*toks)[1]), 0};
                } else {
                    if (toks->size() != 3) r.fail("expected `matgrp <p> <d>`");
                    g.backend = {BackendKind::Matrix, std::stoul((*toks)[2]), std::stoi((*toks)[1])};
                    if (g.backend.characteristic != 2 && g.backend.characteristic != 3) r.fail("characteristic must be 2 or 3");
                }
            } catch (const std::logic_error&) {
                r.fail("bad kind line");
            }
            if (g.backend.degree == 0) r.fail("degree must be positive");
        } else if (key == "gen" || key == "normal") {
            if (!have_kind) r.fail("`perm` or `matgrp` must precede generators");
            if (toks->size() != 2) r.fail("expected `" + key + " <name>`");
            const std::string& nm = (*toks)[1];
            if (!valid_name(nm)) r.fail("invalid generator name '" + nm + "'");
            if (!names.insert(nm).second) r.fail("duplicate generator name '" + nm + "'");
            Element e = read_element(r, g.backend);
            (key == "gen" ? g.generators : g.normal).emplace_back(nm, std::move(e));
        } else if (key == "torus") {
            if (toks->size() != 2) r.fail("expected `torus <name>`");
            g.torus = (*toks)[1];
        } else {
            r.fail("unknown directive '" + key + "'");
        }
    }
    if (!have_kind) r.fail("missing `perm` or `matgrp` line");
    if (g.generators.empty()) r.fail("no generators");
    if (g.torus && std::none_of(g.generators.begin(), g.generators.end(), [&](const auto& p) { return p.first == *g.torus; }))
        r.fail("torus names an unknown generator '" + *g.torus + "'");
    if (g.name.empty()) g.name = "unnamed";
    return g;
}

GroupFile load_group_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw GroupFileError(0, "cannot open " + path);
    return read_group_file(in);
}

GroupModel GroupFile::model() const
{
    std::vector<Element> q;
    for (const auto& [n, e] : normal) q.push_back(e);
    return GroupModel(name, generators, std::move(q));
}

void write_group_file(std::ostream& out, const GroupFile& g)
{
    out << "name " << g.name << "\n";
    if (g.backend.kind == BackendKind::Permutation) {
        out << "perm " << g.backend.degree << "\n";
    } else {
        out << "matgrp " << g.backend.characteristic << " " << g.backend.degree << "\n";
    }
    auto block = [&](const char* key, const std::string& name, const Element& e) {
        out << key << " " << name << "\n";
        if (const auto* p = std::get_if<Permutation>(&e)) {
            for (std::size_t i = 0; i < p->degree(); ++i) out << (i ? " " : "") << (*p)[static_cast<Permutation::Point>(i)] + 1;
            out << "\n";
        } else {
            for (const auto& row : std::get<FFMatrix>(e).row_vectors()) out << row.digits() << "\n";
        }
    };
    for (const auto& [n, e] : g.generators) block("gen", n, e);
    for (const auto& [n, e] : g.normal) block("normal", n, e);
    if (g.torus) out << "torus " << *g.torus << "\n";
}

GroupFile to_group_file(const GroupModel& model, std::optional<std::string> torus)
{
    GroupFile g;
    g.name = model.name();
    g.backend = model.backend();
    g.generators = model.named_generators();
    for (std::size_t i = 0; i < model.normal_subgroup().size(); ++i)
        g.normal.emplace_back("q" + std::to_string(i + 1), model.normal_subgroup()[i]);
    g.torus = std::move(torus);
    return g;
}

}  // namespace mgx
