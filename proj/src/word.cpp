#include "mgx/word.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgx {

ParseError::ParseError(const std::string& message, int line, int column)
    : WordError(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column)
{
}

// ---------------------------------------------------------------- AST

struct Word::Node {
    Kind kind = Kind::Product;
    std::string name;
    long long exponent = 0;
    std::vector<Word> children;
};

namespace {

std::shared_ptr<const Word::Node> identity_node()
{
    static const auto node = std::make_shared<const Word::Node>();
    return node;
}

}  // namespace

Word::Word() : node_(identity_node()) {}

Word Word::generator(std::string name)
{
    if (!is_valid_generator_name(name)) throw WordError("invalid generator name '" + name + "'");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Generator;
    n->name = std::move(name);
    return Word(std::move(n));
}

Word Word::product(std::vector<Word> factors)
{
    if (factors.empty()) return Word();
    if (factors.size() == 1) return std::move(factors.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(factors);
    return Word(std::move(n));
}

Word Word::power(Word base, long long exponent)
{
    if (exponent == 0 || base.is_identity()) return Word();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->exponent = exponent;
    n->children = {std::move(base)};
    return Word(std::move(n));
}

Word Word::conjugation(Word base, Word by)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Conjugation;
    n->children = {std::move(base), std::move(by)};
    return Word(std::move(n));
}

Word Word::commutator(Word left, Word right)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Commutator;
    n->children = {std::move(left), std::move(right)};
    return Word(std::move(n));
}

Word::Kind Word::kind() const { return node_->kind; }
const std::string& Word::name() const { return node_->name; }
long long Word::exponent() const { return node_->exponent; }
std::span<const Word> Word::children() const { return node_->children; }

bool operator==(const Word& a, const Word& b)
{
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.exponent == y.exponent && x.children == y.children;
}

Word Word::inverse() const
{
    switch (kind()) {
    case Kind::Generator:
        return power(*this, -1);
    case Kind::Product: {
        std::vector<Word> inv;
        for (auto it = node_->children.rbegin(); it != node_->children.rend(); ++it) inv.push_back(it->inverse());
        return product(std::move(inv));
    }
    case Kind::Power:
        return power(children()[0], -exponent());
    case Kind::Conjugation:
        return conjugation(children()[0].inverse(), children()[1]);
    case Kind::Commutator:
        return commutator(children()[1], children()[0]);
    }
    return Word();
}

// ---------------------------------------------------------------- printer

namespace {

std::string print_expr(const Word& w);

std::string print_atom(const Word& w)
{
    switch (w.kind()) {
    case Word::Kind::Generator:
        return w.name();
    case Word::Kind::Commutator:
        return "[" + print_expr(w.children()[0]) + "," + print_expr(w.children()[1]) + "]";
    case Word::Kind::Product:
        if (w.is_identity()) return "()";
        [[fallthrough]];
    default:
        return "(" + print_expr(w) + ")";
    }
}

std::string print_term(const Word& w)
{
    switch (w.kind()) {
    case Word::Kind::Power:
        return print_atom(w.children()[0]) + "^" + std::to_string(w.exponent());
    case Word::Kind::Conjugation:
        return print_atom(w.children()[0]) + "^" + print_atom(w.children()[1]);
    default:
        return print_atom(w);
    }
}

std::string print_expr(const Word& w)
{
    if (w.kind() != Word::Kind::Product || w.is_identity()) return print_term(w);
    std::string out;
    for (const auto& c : w.children()) {
        out += (c.kind() == Word::Kind::Product) ? print_atom(c) : print_term(c);
    }
    return out;
}

}  // namespace

std::string Word::to_string() const { return print_expr(*this); }

// ---------------------------------------------------------------- parser

bool is_valid_generator_name(const std::string& name)
{
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    std::size_t i = 1;
    while (i < name.size() && (std::isdigit(static_cast<unsigned char>(name[i])) || name[i] == '_')) ++i;
    while (i < name.size() && name[i] == '\'') ++i;
    return i == name.size();
}

namespace {

struct Token {
    enum class Type { Name, Int, LParen, RParen, LBracket, RBracket, Comma, Caret, Plus, Minus, End } type;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(const std::string& s, int first_line, int first_column)
{
    std::vector<Token> out;
    int line = first_line, col = first_column;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            while (j < s.size() && s[j] == '\'') ++j;
            out.push_back({Token::Type::Name, s.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Type::Int, s.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        Token::Type t;
        switch (c) {
        case '(': t = Token::Type::LParen; break;
        case ')': t = Token::Type::RParen; break;
        case '[': t = Token::Type::LBracket; break;
        case ']': t = Token::Type::RBracket; break;
        case ',': t = Token::Type::Comma; break;
        case '^': t = Token::Type::Caret; break;
        case '+': t = Token::Type::Plus; break;
        case '-': t = Token::Type::Minus; break;
        default:
            throw ParseError(std::string("unknown character '") + c + "'", tl, tc);
        }
        out.push_back({t, std::string(1, c), tl, tc});
        advance(1);
    }
    out.push_back({Token::Type::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Word parse_all()
    {
        Word w = expr();
        if (peek().type != Token::Type::End) fail("unexpected '" + peek().text + "'");
        return w;
    }

private:
    using T = Token::Type;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    bool starts_atom() const
    {
        const auto t = peek().type;
        return t == T::Name || t == T::LParen || t == T::LBracket || (t == T::Int && peek().text == "1");
    }

    Word expr()
    {
        std::vector<Word> terms;
        while (starts_atom()) terms.push_back(term());
        if (terms.empty()) {
            if (peek().type == T::End) fail("empty expression");
            fail("unexpected '" + peek().text + "'");
        }
        return Word::product(std::move(terms));
    }

    Word term()
    {
        Word w = atom();
        while (peek().type == T::Caret) {
            next();
            const auto t = peek().type;
            if (t == T::Int || t == T::Plus || t == T::Minus) {
                bool negative = false;
                if (t != T::Int) {
                    negative = (t == T::Minus);
                    next();
                    if (peek().type != T::Int) fail("expected integer after sign");
                }
                const Token& num = next();
                long long e = 0;
                try {
                    e = std::stoll(num.text);
                } catch (const std::out_of_range&) {
                    throw ParseError("exponent out of range", num.line, num.column);
                }
                w = Word::power(std::move(w), negative ? -e : e);
            } else if (starts_atom() && !(t == T::Int)) {
                w = Word::conjugation(std::move(w), atom());
            } else {
                fail("expected exponent after '^'");
            }
        }
        return w;
    }

    Word atom()
    {
        const Token& t = peek();
        switch (t.type) {
        case T::Name:
            next();
            return Word::generator(t.text);
        case T::Int:
            if (t.text != "1") fail("integer '" + t.text + "' is not a group element");
            next();
            return Word();
        case T::LParen: {
            next();
            if (peek().type == T::RParen) {
                next();
                return Word();
            }
            Word w = expr();
            if (peek().type != T::RParen) fail("expected ')'");
            next();
            return w;
        }
        case T::LBracket: {
            next();
            Word left = expr();
            if (peek().type != T::Comma) fail("expected ',' in commutator");
            next();
            Word right = expr();
            if (peek().type != T::RBracket) fail("expected ']'");
            next();
            return Word::commutator(std::move(left), std::move(right));
        }
        default:
            fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

Word parse_at(const std::string& text, int line, int column)
{
    return Parser(tokenize(text, line, column)).parse_all();
}

}  // namespace

Word parse_word(const std::string& text) { return parse_at(text, 1, 1); }

// ---------------------------------------------------------------- free reduction

namespace {

class Reducer {
public:
    void push(const Letter& l)
    {
        if (!out_.empty() && out_.back().name == l.name && out_.back().sign == -l.sign) {
            out_.pop_back();
            return;
        }
        if (++pushes_ > kExpansionCap) throw WordError("word expansion exceeds " + std::to_string(kExpansionCap) + " letters");
        out_.push_back(l);
    }
    void push_all(const std::vector<Letter>& ls, int sign)
    {
        if (sign > 0) {
            for (const auto& l : ls) push(l);
        } else {
            for (auto it = ls.rbegin(); it != ls.rend(); ++it) push({it->name, -it->sign});
        }
    }
    std::vector<Letter> take() { return std::move(out_); }

private:
    std::vector<Letter> out_;
    std::size_t pushes_ = 0;
};

std::vector<Letter> expand(const Word& w)
{
    Reducer r;
    switch (w.kind()) {
    case Word::Kind::Generator:
        r.push({w.name(), 1});
        break;
    case Word::Kind::Product:
        for (const auto& c : w.children()) r.push_all(expand(c), 1);
        break;
    case Word::Kind::Power: {
        const auto base = expand(w.children()[0]);
        const long long n = w.exponent();
        const unsigned long long reps = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
        if (!base.empty() && reps > kExpansionCap) throw WordError("word expansion exceeds cap");
        for (unsigned long long k = 0; k < reps && !base.empty(); ++k) r.push_all(base, n < 0 ? -1 : 1);
        break;
    }
    case Word::Kind::Conjugation: {
        const auto base = expand(w.children()[0]);
        const auto by = expand(w.children()[1]);
        r.push_all(by, -1);
        r.push_all(base, 1);
        r.push_all(by, 1);
        break;
    }
    case Word::Kind::Commutator: {
        const auto x = expand(w.children()[0]);
        const auto y = expand(w.children()[1]);
        r.push_all(x, -1);
        r.push_all(y, -1);
        r.push_all(x, 1);
        r.push_all(y, 1);
        break;
    }
    }
    return r.take();
}

void collect_names(const Word& w, std::vector<std::string>& out, std::set<std::string>& seen)
{
    if (w.kind() == Word::Kind::Generator) {
        if (seen.insert(w.name()).second) out.push_back(w.name());
        return;
    }
    for (const auto& c : w.children()) collect_names(c, out, seen);
}

}  // namespace

std::vector<Letter> free_reduce(const Word& w) { return expand(w); }

std::string format_letters(std::span<const Letter> letters)
{
    std::string out;
    for (const auto& l : letters) {
        if (!out.empty()) out += ' ';
        out += l.name;
        if (l.sign < 0) out += "^-1";
    }
    return out;
}

std::vector<std::string> referenced_names(const Word& w)
{
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_names(w, out, seen);
    return out;
}

// ---------------------------------------------------------------- corpus

void WordCorpus::add_primitive(const std::string& name)
{
    if (!is_valid_generator_name(name)) throw WordError("invalid generator name '" + name + "'");
    if (contains(name)) throw WordError("redefinition of '" + name + "'");
    prim_index_.emplace(name, primitives_.size());
    primitives_.push_back(name);
}

void WordCorpus::add_definition(const std::string& name, Word word, std::string text, int line)
{
    if (!is_valid_generator_name(name)) throw WordError("invalid definition name '" + name + "'");
    if (contains(name)) throw WordError("redefinition of '" + name + "'");
    for (const auto& ref : referenced_names(word)) {
        if (ref == name) throw WordError("'" + name + "' refers to itself");
        if (!contains(ref)) throw WordError("forward reference to '" + ref + "' in definition of '" + name + "'");
    }
    index_.emplace(name, defs_.size());
    defs_.push_back({name, std::move(word), std::move(text), line});
}

bool WordCorpus::is_primitive(const std::string& name) const { return prim_index_.count(name) != 0; }

bool WordCorpus::contains(const std::string& name) const
{
    return prim_index_.count(name) != 0 || index_.count(name) != 0;
}

const Definition* WordCorpus::definition(const std::string& name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &defs_[it->second];
}

CorpusParseResult parse_corpus(std::istream& in)
{
    CorpusParseResult result;
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);

    // Names defined anywhere, to tell forward references from unknown names.
    std::set<std::string> later;
    for (const auto& l : lines) {
        const auto eq = l.find('=');
        if (eq == std::string::npos || l.find('#') < eq) continue;
        std::string lhs = l.substr(0, eq);
        lhs.erase(std::remove_if(lhs.begin(), lhs.end(), [](unsigned char c) { return std::isspace(c); }), lhs.end());
        later.insert(lhs);
    }

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        std::string line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) continue;
        if (first == "primitive") {
            for (std::string name; words >> name;) {
                try {
                    result.corpus.add_primitive(name);
                } catch (const WordError& e) {
                    result.errors.push_back({lineno, 1, e.what()});
                }
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            result.errors.push_back({lineno, 1, "expected `name = expression`"});
            continue;
        }
        std::string name = line.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
        const std::string rhs = line.substr(eq + 1);
        try {
            Word w = parse_at(rhs, lineno, static_cast<int>(eq) + 2);
            for (const auto& ref : referenced_names(w)) {
                if (!result.corpus.contains(ref) && ref != name) {
                    const std::string what = later.count(ref) ? "forward reference to '" : "unknown name '";
                    throw WordError(what + ref + "' in definition of '" + name + "'");
                }
            }
            std::string text = rhs;
            text.erase(0, text.find_first_not_of(" \t"));
            text.erase(text.find_last_not_of(" \t\r") + 1);
            result.corpus.add_definition(name, std::move(w), std::move(text), lineno);
        } catch (const ParseError& e) {
            result.errors.push_back({e.line(), e.column(), e.what()});
        } catch (const WordError& e) {
            result.errors.push_back({lineno, 1, e.what()});
        }
    }
    return result;
}

CorpusParseResult parse_corpus_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_corpus(in);
}

WordCorpus load_corpus(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw WordError("cannot open corpus file '" + path + "'");
    auto parsed = parse_corpus(in);
    if (!parsed.errors.empty()) {
        std::string msg = "corpus '" + path + "' has errors:";
        for (const auto& d : parsed.errors) msg += "\n  line " + std::to_string(d.line) + ": " + d.message;
        throw WordError(msg);
    }
    return std::move(parsed.corpus);
}

// ---------------------------------------------------------------- counts

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw WordError("count overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw WordError("count overflow");
    return r;
}

std::uint64_t abs_exponent(long long e)
{
    return e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
}

class Counter {
public:
    Counter(const WordCorpus& corpus, std::string target) : corpus_(corpus), target_(std::move(target)) {}

    std::uint64_t name(const std::string& n)
    {
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        std::uint64_t c = 0;
        if (const Definition* d = corpus_.definition(n)) {
            c = word(d->word);
        } else if (corpus_.is_primitive(n)) {
            c = (n == target_) ? 1 : 0;
        } else {
            throw WordError("unresolvable name '" + n + "'");
        }
        memo_.emplace(n, c);
        return c;
    }

    std::uint64_t word(const Word& w)
    {
        switch (w.kind()) {
        case Word::Kind::Generator:
            return name(w.name());
        case Word::Kind::Product: {
            std::uint64_t s = 0;
            for (const auto& c : w.children()) s = checked_add(s, word(c));
            return s;
        }
        case Word::Kind::Power:
            return checked_mul(abs_exponent(w.exponent()), word(w.children()[0]));
        case Word::Kind::Conjugation:
            return checked_add(word(w.children()[0]), checked_mul(2, word(w.children()[1])));
        case Word::Kind::Commutator:
            return checked_mul(2, checked_add(word(w.children()[0]), word(w.children()[1])));
        }
        return 0;
    }

private:
    const WordCorpus& corpus_;
    std::string target_;
    std::map<std::string, std::uint64_t> memo_;
};

using boost::multiprecision::cpp_int;

class LengthCounter {
public:
    explicit LengthCounter(const WordCorpus& corpus) : corpus_(corpus) {}

    cpp_int name(const std::string& n)
    {
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        cpp_int c = 1;
        if (const Definition* d = corpus_.definition(n)) {
            c = word(d->word);
        } else if (!corpus_.is_primitive(n)) {
            throw WordError("unresolvable name '" + n + "'");
        }
        memo_.emplace(n, c);
        return c;
    }

    cpp_int word(const Word& w)
    {
        switch (w.kind()) {
        case Word::Kind::Generator:
            return name(w.name());
        case Word::Kind::Product: {
            cpp_int s = 0;
            for (const auto& c : w.children()) s += word(c);
            return s;
        }
        case Word::Kind::Power:
            return cpp_int(abs_exponent(w.exponent())) * word(w.children()[0]);
        case Word::Kind::Conjugation:
            return word(w.children()[0]) + 2 * word(w.children()[1]);
        case Word::Kind::Commutator:
            return 2 * (word(w.children()[0]) + word(w.children()[1]));
        }
        return 0;
    }

private:
    const WordCorpus& corpus_;
    std::map<std::string, cpp_int> memo_;
};

// 2x2 matrices over GF(2^61 - 1).
struct Fingerprint {
    static constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
    std::uint64_t a = 1, b = 0, c = 0, d = 1;

    static std::uint64_t mulmod(std::uint64_t x, std::uint64_t y)
    {
        const unsigned __int128 p = static_cast<unsigned __int128>(x) * y;
        std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
        if (r >= kMod) r -= kMod;
        return r;
    }
    static std::uint64_t addmod(std::uint64_t x, std::uint64_t y)
    {
        std::uint64_t r = x + y;
        if (r >= kMod) r -= kMod;
        return r;
    }
    static std::uint64_t negmod(std::uint64_t x) { return x == 0 ? 0 : kMod - x; }
    static std::uint64_t powmod(std::uint64_t x, std::uint64_t e)
    {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1;
        }
        return r;
    }

    friend Fingerprint operator*(const Fingerprint& x, const Fingerprint& y)
    {
        return {addmod(mulmod(x.a, y.a), mulmod(x.b, y.c)), addmod(mulmod(x.a, y.b), mulmod(x.b, y.d)),
                addmod(mulmod(x.c, y.a), mulmod(x.d, y.c)), addmod(mulmod(x.c, y.b), mulmod(x.d, y.d))};
    }
    // Determinant one, so the adjugate is the inverse.
    Fingerprint inverse() const { return {d, negmod(b), negmod(c), a}; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    Fingerprint pow(long long e) const
    {
        Fingerprint base = e < 0 ? inverse() : *this;
        std::uint64_t k = abs_exponent(e);
        Fingerprint r;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }
    static Fingerprint random(std::mt19937_64& rng)
    {
        std::uniform_int_distribution<std::uint64_t> dist(1, kMod - 1);
        const std::uint64_t a = dist(rng), b = dist(rng), c = dist(rng);
        const std::uint64_t d = mulmod(addmod(1, mulmod(b, c)), powmod(a, kMod - 2));
        return {a, b, c, d};
    }
};

struct Item {
    bool is_target = false;
    int sign = 1;
    Fingerprint fp;
};

class ReducedCounter {
public:
    ReducedCounter(const WordCorpus& corpus, std::string target, std::uint64_t seed)
        : corpus_(corpus), target_(target), counts_(corpus, std::move(target)), rng_(seed)
    {
    }

    std::vector<Item> expand(const Word& w)
    {
        if (counts_.word(w) == 0) return block(fingerprint(w));
        std::vector<Item> out;
        switch (w.kind()) {
        case Word::Kind::Generator:
            return expand_name(w.name());
        case Word::Kind::Product:
            for (const auto& c : w.children()) append(out, expand(c), 1);
            break;
        case Word::Kind::Power: {
            const auto base = expand(w.children()[0]);
            for (std::uint64_t k = 0; k < abs_exponent(w.exponent()); ++k) append(out, base, w.exponent() < 0 ? -1 : 1);
            break;
        }
        case Word::Kind::Conjugation: {
            const auto base = expand(w.children()[0]);
            const auto by = expand(w.children()[1]);
            append(out, by, -1);
            append(out, base, 1);
            append(out, by, 1);
            break;
        }
        case Word::Kind::Commutator: {
            const auto x = expand(w.children()[0]);
            const auto y = expand(w.children()[1]);
            append(out, x, -1);
            append(out, y, -1);
            append(out, x, 1);
            append(out, y, 1);
            break;
        }
        }
        return out;
    }

private:
    static std::vector<Item> block(const Fingerprint& fp)
    {
        if (fp.is_identity()) return {};
        Item it;
        it.fp = fp;
        return {it};
    }

    static void push(std::vector<Item>& out, const Item& item)
    {
        if (item.is_target) {
            if (!out.empty() && out.back().is_target && out.back().sign == -item.sign) {
                out.pop_back();
            } else {
                out.push_back(item);
            }
            return;
        }
        if (!out.empty() && !out.back().is_target) {
            out.back().fp = out.back().fp * item.fp;
            if (out.back().fp.is_identity()) out.pop_back();
            return;
        }
        if (!item.fp.is_identity()) out.push_back(item);
    }

    static void append(std::vector<Item>& out, const std::vector<Item>& items, int sign)
    {
        if (sign > 0) {
            for (const auto& it : items) push(out, it);
        } else {
            for (auto r = items.rbegin(); r != items.rend(); ++r) {
                Item inv = *r;
                inv.sign = -inv.sign;
                inv.fp = inv.fp.inverse();
                push(out, inv);
            }
        }
    }

    std::vector<Item> expand_name(const std::string& n)
    {
        if (auto it = items_memo_.find(n); it != items_memo_.end()) return it->second;
        std::vector<Item> out;
        if (n == target_ && corpus_.is_primitive(n)) {
            Item t;
            t.is_target = true;
            out.push_back(t);
        } else if (const Definition* d = corpus_.definition(n)) {
            out = expand(d->word);
        } else {
            out = block(fingerprint_name(n));
        }
        items_memo_.emplace(n, out);
        return out;
    }

    Fingerprint fingerprint_name(const std::string& n)
    {
        if (auto it = fp_memo_.find(n); it != fp_memo_.end()) return it->second;
        Fingerprint fp;
        if (const Definition* d = corpus_.definition(n)) {
            fp = fingerprint(d->word);
        } else if (corpus_.is_primitive(n)) {
            fp = Fingerprint::random(rng_);
        } else {
            throw WordError("unresolvable name '" + n + "'");
        }
        fp_memo_.emplace(n, fp);
        return fp;
    }

    Fingerprint fingerprint(const Word& w)
    {
        switch (w.kind()) {
        case Word::Kind::Generator:
            return fingerprint_name(w.name());
        case Word::Kind::Product: {
            Fingerprint r;
            for (const auto& c : w.children()) r = r * fingerprint(c);
            return r;
        }
        case Word::Kind::Power:
            return fingerprint(w.children()[0]).pow(w.exponent());
        case Word::Kind::Conjugation: {
            const Fingerprint by = fingerprint(w.children()[1]);
            return by.inverse() * fingerprint(w.children()[0]) * by;
        }
        case Word::Kind::Commutator: {
            const Fingerprint x = fingerprint(w.children()[0]);
            const Fingerprint y = fingerprint(w.children()[1]);
            return x.inverse() * y.inverse() * x * y;
        }
        }
        return {};
    }

    const WordCorpus& corpus_;
    std::string target_;
    Counter counts_;
    std::mt19937_64 rng_;
    std::map<std::string, Fingerprint> fp_memo_;
    std::map<std::string, std::vector<Item>> items_memo_;
};

}  // namespace

std::uint64_t gen_count(const Word& w, const WordCorpus& corpus, const std::string& target)
{
    return Counter(corpus, target).word(w);
}

std::uint64_t gen_count(const std::string& name, const WordCorpus& corpus, const std::string& target)
{
    return Counter(corpus, target).name(name);
}

std::uint64_t reduced_gen_count(const Word& w, const WordCorpus& corpus, const std::string& target, std::uint64_t seed)
{
    ReducedCounter rc(corpus, target, seed);
    std::uint64_t n = 0;
    for (const auto& it : rc.expand(w)) n += it.is_target;
    return n;
}

std::string inlined_length(const Word& w, const WordCorpus& corpus) { return LengthCounter(corpus).word(w).str(); }

CorpusReport corpus_check(std::istream& in, const std::string& target)
{
    CorpusReport report;
    auto parsed = parse_corpus(in);
    report.errors = parsed.errors;
    const WordCorpus& corpus = parsed.corpus;
    if (!corpus.is_primitive(target)) {
        report.errors.push_back({0, 0, "target generator '" + target + "' is not declared primitive"});
        return report;
    }
    Counter counts(corpus, target);
    LengthCounter lengths(corpus);
    ReducedCounter reduced(corpus, target, 0);
    for (const auto& d : corpus.definitions()) {
        CorpusRow row;
        row.name = d.name;
        try {
            row.target_count = counts.name(d.name);
            row.inlined_length = lengths.name(d.name).str();
            for (const auto& it : reduced.expand(d.word)) row.reduced_target_count += it.is_target;
            row.free_length = free_reduce(d.word).size();
            if (!(parse_word(d.word.to_string()) == d.word)) {
                report.round_trip_ok = false;
                report.errors.push_back({d.line, 1, "printer round trip changed '" + d.name + "'"});
            }
        } catch (const WordError& e) {
            report.errors.push_back({d.line, 1, e.what()});
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace mgx
