#pragma once

#include <string>

#include "evokit/algebra.hpp"

namespace evokit {

/// Parse failure for an algebra document; line/col are 1-based when known.
struct document_error : std::runtime_error {
    int line = 0;
    int col = 0;
    document_error(const std::string& msg, int l = 0, int c = 0)
        : std::runtime_error(msg), line(l), col(c) {}
};

/// Documents are JSON objects with keys dim, field, matrix and optional
/// label. Exact fields write scalar literals as strings ("p/q",
/// "<rat>+<rat>i"); complex_float entries are [re, im] number pairs.
EvolutionAlgebra parse_algebra_document(const std::string& text);
std::string serialize_algebra_document(const EvolutionAlgebra& alg);

EvolutionAlgebra load_algebra_document(const std::string& path);
void write_algebra_document(const EvolutionAlgebra& alg, const std::string& path);

}  // namespace evokit
