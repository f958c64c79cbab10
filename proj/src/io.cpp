#include "evokit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace evokit {

namespace {

using nlohmann::json;

std::pair<int, int> line_col_of(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Scalar parse_entry(Field f, const json& cell, int i, int j) {
    const std::string where =
        " at matrix row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1);
    try {
        switch (f) {
            case Field::rational:
                if (cell.is_number_integer())
                    return Scalar(mpq_class(cell.get<long>()));
                if (!cell.is_string())
                    throw document_error("rational entries must be literal strings" + where);
                return Scalar(parse_rational_literal(cell.get<std::string>()));
            case Field::gaussian_rational:
                if (cell.is_number_integer())
                    return Scalar::gaussian(cell.get<long>(), 0);
                if (!cell.is_string())
                    throw document_error("gaussian_rational entries must be literal strings" + where);
                return Scalar(parse_gaussian_literal(cell.get<std::string>()));
            case Field::complex_float:
                if (cell.is_number()) return Scalar::complex(cell.get<double>());
                if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                    !cell[1].is_number())
                    throw document_error("complex_float entries must be [re, im] numbers" + where);
                return Scalar::complex(cell[0].get<double>(), cell[1].get<double>());
        }
    } catch (const std::invalid_argument& e) {
        throw document_error(std::string(e.what()) + where);
    }
    throw document_error("unreachable field" + where);
}

}  // namespace

EvolutionAlgebra parse_algebra_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw document_error("document is not valid JSON (line " + std::to_string(line) +
                                 ", column " + std::to_string(col) + "): " + e.what(),
                             line, col);
    }
    if (!doc.is_object()) throw document_error("document must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw document_error("document needs an integer \"dim\"");
    if (!doc.contains("field") || !doc["field"].is_string())
        throw document_error("document needs a \"field\" name");
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw document_error("document needs a \"matrix\" array");

    const int dim = doc["dim"].get<int>();
    if (dim < 1) throw document_error("dim must be >= 1");
    Field f;
    try {
        f = field_from_name(doc["field"].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw document_error(e.what());
    }

    const json& matrix = doc["matrix"];
    if (static_cast<int>(matrix.size()) != dim)
        throw document_error("matrix has " + std::to_string(matrix.size()) + " rows, expected " +
                             std::to_string(dim));
    std::vector<Scalar> entries;
    entries.reserve(static_cast<size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = matrix[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw document_error("matrix row " + std::to_string(i + 1) + " must have " +
                                 std::to_string(dim) + " entries");
        for (int j = 0; j < dim; ++j) entries.push_back(parse_entry(f, row[static_cast<size_t>(j)], i, j));
    }

    std::optional<std::string> label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw document_error("label must be a string");
        label = doc["label"].get<std::string>();
    }
    return EvolutionAlgebra(dim, std::move(entries), std::move(label));
}

std::string serialize_algebra_document(const EvolutionAlgebra& alg) {
    json doc;
    doc["dim"] = alg.dim();
    doc["field"] = field_name(alg.field());
    json matrix = json::array();
    for (int i = 0; i < alg.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < alg.dim(); ++j) {
            const Scalar& s = alg.at(i, j);
            if (alg.field() == Field::complex_float) {
                const auto z = s.as_complex_float();
                row.push_back(json::array({z.real(), z.imag()}));
            } else {
                row.push_back(s.str());
            }
        }
        matrix.push_back(std::move(row));
    }
    doc["matrix"] = std::move(matrix);
    if (alg.label()) doc["label"] = *alg.label();
    return doc.dump(2) + "\n";
}

EvolutionAlgebra load_algebra_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw document_error("cannot open \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra_document(ss.str());
}

void write_algebra_document(const EvolutionAlgebra& alg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw document_error("cannot write \"" + path + "\"");
    out << serialize_algebra_document(alg);
}

}  // namespace evokit
