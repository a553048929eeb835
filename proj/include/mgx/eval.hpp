#pragma once

// Evaluating words in a concrete group.

#include <map>
#include <string>

#include "mgx/element.hpp"
#include "mgx/word.hpp"

namespace mgx {

// Values of primitive generators.  All must share one backend.
using Binding = std::map<std::string, Element>;

// Names are looked up in the binding first, then among the corpus definitions
// (each evaluated at most once per call).  Throws WordError on an unbound name
// and BackendMismatch on a mixed binding.
Element evaluate(const Word& w, const Binding& binding, const WordCorpus* corpus = nullptr);
Element evaluate(const std::string& name, const Binding& binding, const WordCorpus& corpus);

}  // namespace mgx
