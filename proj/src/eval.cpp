#include "mgx/eval.hpp"

#include <optional>

namespace mgx {

namespace {

class Evaluator {
public:
    Evaluator(const Binding& binding, const WordCorpus* corpus) : binding_(binding), corpus_(corpus)
    {
        if (binding.empty()) throw WordError("empty binding");
        backend_ = backend_of(binding.begin()->second);
        for (const auto& [name, g] : binding) {
            if (backend_of(g) != backend_) {
                throw BackendMismatch("generator '" + name + "' is " + backend_of(g).describe() + ", expected " +
                                      backend_.describe());
            }
        }
    }

    Element name(const std::string& n)
    {
        if (auto it = binding_.find(n); it != binding_.end()) return it->second;
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        const Definition* d = corpus_ ? corpus_->definition(n) : nullptr;
        if (!d) throw WordError("unbound generator '" + n + "'");
        Element v = word(d->word);
        memo_.emplace(n, v);
        return v;
    }

    Element word(const Word& w)
    {
        switch (w.kind()) {
        case Word::Kind::Generator:
            return name(w.name());
        case Word::Kind::Product: {
            std::optional<Element> acc;
            for (const auto& c : w.children()) {
                Element v = word(c);
                acc = acc ? multiply(*acc, v) : std::move(v);
            }
            return acc ? *acc : identity_of(backend_);
        }
        case Word::Kind::Power:
            return power(word(w.children()[0]), w.exponent());
        case Word::Kind::Conjugation:
            return conjugate(word(w.children()[0]), word(w.children()[1]));
        case Word::Kind::Commutator:
            return commutator(word(w.children()[0]), word(w.children()[1]));
        }
        return identity_of(backend_);
    }

private:
    const Binding& binding_;
    const WordCorpus* corpus_;
    Backend backend_;
    std::map<std::string, Element> memo_;
};

}  // namespace

Element evaluate(const Word& w, const Binding& binding, const WordCorpus* corpus)
{
    return Evaluator(binding, corpus).word(w);
}

Element evaluate(const std::string& name, const Binding& binding, const WordCorpus& corpus)
{
    return Evaluator(binding, &corpus).name(name);
}

}  // namespace mgx
