// mgx: command-line front end.
//
// Exit status: 0 on success (including a "not_found" verdict), 2 on input
// errors, 3 when a randomized search exhausts its budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mgx/census.hpp"
#include "mgx/groupfile.hpp"
#include "mgx/oracle.hpp"
#include "mgx/pipeline.hpp"

using namespace mgx;

namespace {

constexpr int kInputError = 2;
constexpr int kBudgetExhausted = 3;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string format_element(const Element& e)
{
    if (const auto* m = std::get_if<FFMatrix>(&e)) {
        std::ostringstream os;
        write_matrix(os, *m);
        return os.str();
    }
    return std::get<Permutation>(e).to_cycle_string() + "\n";
}

WordCorpus read_corpus(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus " + path);
    CorpusParseResult r = parse_corpus(in);
    if (!r.errors.empty()) {
        const auto& d = r.errors.front();
        throw InputError(path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message);
    }
    return std::move(r.corpus);
}

// Group generators by name, overridden or extended by `--bind name=gen,...`.
Binding make_binding(const GroupFile& g, const std::string& spec)
{
    Binding b;
    for (const auto& [n, e] : g.generators) b.emplace(n, e);
    for (const auto& [n, e] : g.normal) b.emplace(n, e);
    for (const auto& item : split(spec, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("bad --bind item '" + item + "', expected name=generator");
        const std::string name = item.substr(0, eq), gen = item.substr(eq + 1);
        auto it = std::find_if(g.generators.begin(), g.generators.end(), [&](const auto& p) { return p.first == gen; });
        if (it == g.generators.end()) throw InputError("--bind: unknown generator '" + gen + "'");
        b[name] = it->second;
    }
    return b;
}

// Comma-separated words in the group's generators.
std::vector<Element> parse_elements(const std::string& spec, const Binding& binding)
{
    std::vector<Element> out;
    for (const auto& w : split(spec, ',')) out.push_back(evaluate(parse_word(w), binding));
    return out;
}

std::vector<Permutation> permutations_of(const std::vector<Element>& xs)
{
    std::vector<Permutation> out;
    for (const auto& x : xs) {
        const auto* p = std::get_if<Permutation>(&x);
        if (!p) throw InputError("oracle commands need a permutation group");
        out.push_back(*p);
    }
    return out;
}

unsigned threads_from_env()
{
    const char* v = std::getenv("MGX_THREADS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0') throw InputError("MGX_THREADS must be a non-negative integer");
    return static_cast<unsigned>(n);
}

struct Options {
    std::string corpus, word, group, bind, subgroup, format = "text", torus, stabilizer, target = "T";
    std::string u_word = "j''", torus_word = "g8", cases = "x0,x1,x2,x3,x4,x5";
    std::uint64_t seed = 0, budget = 1000;
    bool list = false;
};

std::string run_eval(const Options& o, bool order_only)
{
    const WordCorpus corpus = read_corpus(o.corpus);
    const GroupFile g = load_group_file(o.group);
    const Binding b = make_binding(g, o.bind);
    const Element e = evaluate(parse_word(o.word), b, &corpus);
    if (order_only) return std::to_string(element_order(e)) + "\n";
    return format_element(e);
}

std::string run_corpus_check(const Options& o, int& status)
{
    std::ifstream in(o.corpus);
    if (!in) throw InputError("cannot open corpus " + o.corpus);
    const CorpusReport rep = corpus_check(in, o.target);
    std::ostringstream os;
    for (const auto& d : rep.errors) os << o.corpus << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
    os << rep.errors.size() << " errors\n";
    os << "round trip " << (rep.round_trip_ok ? "ok" : "FAILED") << "\n";
    os << "name " << o.target << "-count reduced free-length inlined-length\n";
    for (const auto& r : rep.rows) {
        os << r.name << " " << r.target_count << " " << r.reduced_target_count << " " << r.free_length << " "
           << r.inlined_length << "\n";
    }
    if (!rep.errors.empty() || !rep.round_trip_ok) status = kInputError;
    return os.str();
}

std::string run_oracle(const std::string& what, const Options& o)
{
    const GroupFile g = load_group_file(o.group);
    const Binding b = make_binding(g, "");
    std::vector<Element> all;
    for (const auto& [n, e] : g.generators) all.push_back(e);
    const auto gens = permutations_of(all);
    const std::size_t degree = g.backend.degree;
    const auto sub = o.subgroup.empty() ? gens : permutations_of(parse_elements(o.subgroup, b));
    std::ostringstream os;
    if (what == "order") {
        os << subgroup_order(sub, degree) << "\n";
    } else if (what == "involutions") {
        const auto inv = involutions(schreier_sims(sub, degree));
        os << inv.size() << "\n";
        if (o.list) {
            for (const auto& x : inv) os << x.to_cycle_string() << "\n";
        }
    } else {
        const auto inv = involutions(schreier_sims(gens, degree));
        const OrbitPartition part = conjugation_orbits(sub, inv);
        os << inv.size() << " involutions, " << part.sizes.size() << " orbits:";
        for (auto s : part.sizes) os << " " << s;
        os << "\n";
        if (o.list) {
            for (std::size_t i = 0; i < part.sizes.size(); ++i)
                os << part.sizes[i] << " " << part.representatives[i].to_cycle_string() << "\n";
        }
    }
    return os.str();
}

std::string run_pipeline(const Options& o)
{
    const GroupFile g = load_group_file(o.group);
    const GroupModel model = g.model();
    const Binding b = make_binding(g, "");
    ClassifyOptions opts;
    opts.threads = threads_from_env();
    const std::string torus = o.torus.empty() ? g.torus.value_or("") : o.torus;
    if (!torus.empty()) opts.t = evaluate(parse_word(torus), b);
    if (!o.stabilizer.empty()) opts.stabilizer = parse_elements(o.stabilizer, b);
    std::optional<WordCorpus> corpus;
    if (!o.corpus.empty()) {
        corpus = read_corpus(o.corpus);
        opts.corpus = &*corpus;
        opts.case_words = split(o.cases, ',');
    }
    const PipelineReport r = classify(model, SearchBudget{o.budget, o.seed}, opts);
    if (o.format == "json") return report_json(r).dump(2) + "\n";
    return format_report(r);
}

std::string run_costs(const Options& o)
{
    const WordCorpus corpus = read_corpus(o.corpus);
    const CostTable t = cost_report(corpus, split(o.cases, ','), o.u_word, o.torus_word, o.target);
    if (o.format == "json") return cost_json(t).dump(2) + "\n";
    return format_cost_table(t);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mgx: black-box group computations and the PSL2(27) detection pipeline"};
    app.require_subcommand(1);
    Options o;
    const auto formats = CLI::IsMember({"text", "json"});

    auto* eval = app.add_subcommand("eval", "evaluate a word in a group");
    auto* order = app.add_subcommand("order", "order of an evaluated word");
    for (auto* sc : {eval, order}) {
        sc->add_option("corpus", o.corpus, "corpus file")->required()->check(CLI::ExistingFile);
        sc->add_option("word", o.word, "corpus name or word expression")->required();
        sc->add_option("--group", o.group, "group file")->required()->check(CLI::ExistingFile);
        sc->add_option("--bind", o.bind, "name=generator,...");
    }

    auto* corpus = app.add_subcommand("corpus", "corpus tools");
    corpus->require_subcommand(1);
    auto* check = corpus->add_subcommand("check", "parse, resolve and count a corpus");
    check->add_option("file", o.corpus)->required()->check(CLI::ExistingFile);
    check->add_option("--target", o.target, "generator to count");

    auto* oracle = app.add_subcommand("oracle", "exact permutation-group computations");
    oracle->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> oracle_cmds;
    for (const char* name : {"order", "involutions", "orbits"}) {
        auto* sc = oracle->add_subcommand(name);
        sc->add_option("--group", o.group)->required()->check(CLI::ExistingFile);
        sc->add_option("--subgroup", o.subgroup, "comma-separated words in the generators");
        sc->add_flag("--list", o.list, "list elements or orbit representatives");
        oracle_cmds.emplace_back(name, sc);
    }

    auto* pipeline = app.add_subcommand("pipeline", "detection pipelines");
    pipeline->require_subcommand(1);
    auto* psl = pipeline->add_subcommand("psl227", "look for PSL2(27) over a 13-torus");
    psl->add_option("--group", o.group)->required()->check(CLI::ExistingFile);
    psl->add_option("--seed", o.seed);
    psl->add_option("--budget", o.budget, "random trials per search")->check(CLI::PositiveNumber);
    psl->add_option("--format", o.format)->check(formats);
    psl->add_option("--torus", o.torus, "word for the order-13 element");
    psl->add_option("--stabilizer", o.stabilizer, "words acting on the inverting involutions");
    psl->add_option("--corpus", o.corpus, "corpus for the cost table")->check(CLI::ExistingFile);
    psl->add_option("--cases", o.cases);

    auto* costs = app.add_subcommand("costs", "T-count cost table");
    costs->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
    costs->add_option("--format", o.format)->check(formats);
    costs->add_option("--cases", o.cases);
    costs->add_option("--u-word", o.u_word);
    costs->add_option("--torus-word", o.torus_word);
    costs->add_option("--target", o.target);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    int status = 0;
    std::string out;
    try {
        if (eval->parsed()) {
            out = run_eval(o, false);
        } else if (order->parsed()) {
            out = run_eval(o, true);
        } else if (check->parsed()) {
            out = run_corpus_check(o, status);
        } else if (oracle->parsed()) {
            for (const auto& [name, sc] : oracle_cmds) {
                if (sc->parsed()) out = run_oracle(name, o);
            }
        } else if (psl->parsed()) {
            out = run_pipeline(o);
        } else if (costs->parsed()) {
            out = run_costs(o);
        }
    } catch (const SearchError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudgetExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    std::cout << out;
    return status;
}
