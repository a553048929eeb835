#pragma once

// Words over named generators: products, integer powers, conjugates and
// commutators.  This is the straight-line-program currency of the toolkit.
//
// Grammar (juxtaposition is product, '^' binds tighter and associates left):
//
//   expr     := term+
//   term     := atom ('^' exponent)*
//   atom     := NAME | '(' expr? ')' | '[' expr ',' expr ']' | '1'
//   exponent := ('+'|'-')? INT | atom
//   NAME     := letter (digit | '_')* '\''*
//
// x^n is an iterated product (negative n inverts), x^g = g^-1 x g and
// [x,y] = x^-1 y^-1 x y.  A name is one letter followed by digits, so "ab" is
// a*b and "t11''" is a single generator.  "()" and "1" denote the identity.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgx {

class WordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public WordError {
public:
    ParseError(const std::string& message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class Word {
public:
    enum class Kind { Generator, Product, Power, Conjugation, Commutator };

    // The identity, i.e. the empty product.
    Word();

    static Word generator(std::string name);
    // Flattens nothing; a single factor is returned as-is, no factors give the identity.
    static Word product(std::vector<Word> factors);
    static Word power(Word base, long long exponent);
    static Word conjugation(Word base, Word by);
    static Word commutator(Word left, Word right);

    Kind kind() const;
    bool is_identity() const { return kind() == Kind::Product && children().empty(); }
    const std::string& name() const;
    long long exponent() const;
    std::span<const Word> children() const;

    // Structural inverse: (xy)^-1 = y^-1 x^-1 with powers negated.
    Word inverse() const;

    std::string to_string() const;
    // Stable identity of the shared node, usable as a memo key within one call.
    const void* node_id() const { return node_.get(); }

    friend bool operator==(const Word& a, const Word& b);

    struct Node;  // opaque

private:
    explicit Word(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Word parse_word(const std::string& text);

bool is_valid_generator_name(const std::string& name);

struct Letter {
    std::string name;
    int sign = 1;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr std::size_t kExpansionCap = std::size_t{1} << 24;

// Fully expanded, freely reduced word in the free group on the names that
// occur in w.  Names are not inlined.  Throws WordError beyond kExpansionCap letters.
std::vector<Letter> free_reduce(const Word& w);

std::string format_letters(std::span<const Letter> letters);

// Names referenced by a word, in first-occurrence order.
std::vector<std::string> referenced_names(const Word& w);

struct Definition {
    std::string name;
    Word word;
    std::string text;
    int line = 0;
};

// Ordered named definitions over declared primitive generators.  Definitions
// may only reference primitives and earlier definitions.
class WordCorpus {
public:
    WordCorpus() = default;

    // Throws WordError on forward reference, redefinition or invalid name.
    void add_primitive(const std::string& name);
    void add_definition(const std::string& name, Word word, std::string text = {}, int line = 0);

    bool is_primitive(const std::string& name) const;
    bool contains(const std::string& name) const;
    const Definition* definition(const std::string& name) const;
    const std::vector<std::string>& primitives() const { return primitives_; }
    const std::vector<Definition>& definitions() const { return defs_; }

private:
    std::vector<std::string> primitives_;
    std::vector<Definition> defs_;
    std::map<std::string, std::size_t> index_;  // definitions
    std::map<std::string, std::size_t> prim_index_;
};

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string message;
};

struct CorpusParseResult {
    WordCorpus corpus;
    std::vector<Diagnostic> errors;
};

// Corpus file: `name = expression` lines, `#` comments, and
// `primitive a b T ...` declarations.  Bad lines are reported and skipped.
CorpusParseResult parse_corpus(std::istream& in);
CorpusParseResult parse_corpus_text(const std::string& text);
// Throws WordError listing the diagnostics if any.
WordCorpus load_corpus(const std::string& path);

// Occurrences of `target` or its inverse after inlining every corpus definition.
// This is the number of times an evaluator applies the target generator; no
// cancellation between neighbouring subwords is performed.  Throws WordError on
// unresolvable names.
std::uint64_t gen_count(const Word& w, const WordCorpus& corpus, const std::string& target);
std::uint64_t gen_count(const std::string& name, const WordCorpus& corpus, const std::string& target);

// The same count after free reduction of the fully inlined word.  Target-free
// stretches are compared through a random SL(2, 2^61-1) fingerprint, so the
// answer is exact with overwhelming probability rather than certainly.
std::uint64_t reduced_gen_count(const Word& w, const WordCorpus& corpus, const std::string& target,
                                std::uint64_t seed = 0);

// Letter count of the fully inlined, unreduced word, as a decimal string
// (these run to dozens of digits).
std::string inlined_length(const Word& w, const WordCorpus& corpus);

struct CorpusRow {
    std::string name;
    std::uint64_t target_count = 0;
    std::uint64_t reduced_target_count = 0;
    std::size_t free_length = 0;  // free reduction of the definition over its own names
    std::string inlined_length;
};

struct CorpusReport {
    std::vector<Diagnostic> errors;
    std::vector<CorpusRow> rows;
    bool round_trip_ok = true;
};

CorpusReport corpus_check(std::istream& in, const std::string& target = "T");

}  // namespace mgx
