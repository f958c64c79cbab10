#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evokit/canonical.hpp"
#include "evokit/dibaric.hpp"
#include "evokit/families.hpp"
#include "evokit/io.hpp"
#include "evokit/oracle.hpp"
#include "evokit/powers.hpp"
#include "evokit/spectrum.hpp"

namespace py = pybind11;
using namespace evokit;

namespace {

Scalar scalar_from_py(Field f, const py::handle& h) {
    if (f == Field::complex_float) {
        if (py::isinstance<py::tuple>(h) || py::isinstance<py::list>(h)) {
            const auto seq = h.cast<std::vector<double>>();
            if (seq.size() != 2) throw py::value_error("complex entries are (re, im) pairs");
            return Scalar::complex(seq[0], seq[1]);
        }
        return Scalar(h.cast<std::complex<double>>());
    }
    if (py::isinstance<py::int_>(h)) {
        const long v = h.cast<long>();
        return f == Field::rational ? Scalar(mpq_class(v)) : Scalar::gaussian(v, 0);
    }
    const std::string lit = h.cast<std::string>();
    return f == Field::rational ? Scalar(parse_rational_literal(lit))
                                : Scalar(parse_gaussian_literal(lit));
}

EvolutionAlgebra algebra_from_py(const std::string& field, const py::sequence& rows,
                                 const std::optional<std::string>& label) {
    const Field f = field_from_name(field);
    std::vector<Scalar> entries;
    const int n = static_cast<int>(py::len(rows));
    for (const auto& row : rows) {
        const py::sequence r = py::reinterpret_borrow<py::sequence>(row);
        if (static_cast<int>(py::len(r)) != n)
            throw py::value_error("matrix must be square");
        for (const auto& cell : r) entries.push_back(scalar_from_py(f, cell));
    }
    return EvolutionAlgebra(n, std::move(entries), label);
}

py::object scalar_to_py(const Scalar& s) {
    if (s.field() == Field::complex_float) return py::cast(s.as_complex_float());
    return py::cast(s.str());
}

py::list matrix_to_py(const EvolutionAlgebra& alg) {
    py::list rows;
    for (int i = 0; i < alg.dim(); ++i) {
        py::list row;
        for (int j = 0; j < alg.dim(); ++j) row.append(scalar_to_py(alg.at(i, j)));
        rows.append(std::move(row));
    }
    return rows;
}

Vector vector_from_py(const EvolutionAlgebra& alg, const py::sequence& seq) {
    Vector v;
    for (const auto& cell : seq) v.push_back(scalar_from_py(alg.field(), cell));
    if (static_cast<int>(v.size()) != alg.dim())
        throw py::value_error("vector length must equal the algebra dimension");
    return v;
}

py::list vector_to_py(const Vector& v) {
    py::list out;
    for (const auto& s : v) out.append(scalar_to_py(s));
    return out;
}

BqPair pair_from_py(const EvolutionAlgebra& alg, const py::sequence& f, const py::sequence& g) {
    return BqPair{vector_from_py(alg, f), vector_from_py(alg, g)};
}

}  // namespace

PYBIND11_MODULE(_evokit, m) {
    m.doc() = "exact-arithmetic analysis of finite-dimensional evolution algebras";

    py::register_exception<backend_mismatch>(m, "BackendMismatch", PyExc_ValueError);
    py::register_exception<dimension_mismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<document_error>(m, "DocumentError", PyExc_ValueError);

    py::class_<EvolutionAlgebra>(m, "Algebra")
        .def(py::init(&algebra_from_py), py::arg("field"), py::arg("matrix"),
             py::arg("label") = std::nullopt)
        .def_property_readonly("dim", &EvolutionAlgebra::dim)
        .def_property_readonly("field",
                               [](const EvolutionAlgebra& a) { return field_name(a.field()); })
        .def_property_readonly("label",
                               [](const EvolutionAlgebra& a) { return a.label(); })
        .def("matrix", &matrix_to_py)
        .def("__eq__",
             [](const EvolutionAlgebra& a, const EvolutionAlgebra& b) { return a == b; })
        .def("__repr__", [](const EvolutionAlgebra& a) {
            return "Algebra(dim=" + std::to_string(a.dim()) + ", field=" + field_name(a.field()) +
                   ")";
        });

    py::class_<PowerChainReport>(m, "PowerChainReport")
        .def_property_readonly("kind",
                               [](const PowerChainReport& r) { return chain_kind_name(r.kind); })
        .def_readonly("dims", &PowerChainReport::dims)
        .def_readonly("index", &PowerChainReport::index)
        .def_readonly("stabilized_at", &PowerChainReport::stabilized_at)
        .def_readonly("tolerance_dependent", &PowerChainReport::tolerance_dependent);

    py::class_<NilpotencyVerdict>(m, "NilpotencyVerdict")
        .def_readonly("is_nil", &NilpotencyVerdict::is_nil)
        .def_readonly("witness_cycle", &NilpotencyVerdict::witness_cycle)
        .def_readonly("triangularizing_permutation",
                      &NilpotencyVerdict::triangularizing_permutation)
        .def_readonly("tolerance_dependent", &NilpotencyVerdict::tolerance_dependent);

    py::class_<CanonicalForm>(m, "CanonicalForm")
        .def_readonly("dim", &CanonicalForm::dim)
        .def_property_readonly("normalized_entry",
                               [](const CanonicalForm& f) { return f.normalized_entry; })
        .def("matrix",
             [](const CanonicalForm& f) {
                 py::list rows;
                 for (int i = 0; i < f.dim; ++i) {
                     py::list row;
                     for (int j = 0; j < f.dim; ++j) row.append(f.at(i, j).as_complex_float());
                     rows.append(std::move(row));
                 }
                 return rows;
             })
        .def("algebra", &CanonicalForm::algebra);

    py::class_<BqPair>(m, "BqPair")
        .def_property_readonly("f", [](const BqPair& p) { return vector_to_py(p.f); })
        .def_property_readonly("g", [](const BqPair& p) { return vector_to_py(p.g); })
        .def("nonzero", &BqPair::nonzero);

    py::class_<DibaricityVerdict>(m, "DibaricityVerdict")
        .def_property_readonly(
            "decision", [](const DibaricityVerdict& v) { return dibaric_decision_name(v.decision); })
        .def_property_readonly(
            "rule", [](const DibaricityVerdict& v) { return dibaric_rule_name(v.rule); })
        .def_readonly("witness", &DibaricityVerdict::witness)
        .def_readonly("tolerance_dependent", &DibaricityVerdict::tolerance_dependent);

    m.def("multiply",
          [](const EvolutionAlgebra& a, const py::sequence& x, const py::sequence& y) {
              return vector_to_py(multiply(a, vector_from_py(a, x), vector_from_py(a, y)));
          });
    m.def("plus_power", [](const EvolutionAlgebra& a, const py::sequence& x, int mexp) {
        return vector_to_py(plus_power(a, vector_from_py(a, x), mexp));
    });

    m.def("principal_powers", &principal_powers, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("right_powers", &right_powers, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("derived_powers", &derived_powers, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("nil_check", &nil_check, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("is_nilpotent", &is_nilpotent, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("nilpotent_index", &nilpotent_index, py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("right_nilpotency_index", &right_nilpotency_index, py::arg("algebra"),
          py::arg("eps") = kDefaultEps);
    m.def("solvability_index", &solvability_index, py::arg("algebra"),
          py::arg("eps") = kDefaultEps);
    m.def("max_index_criterion", &max_index_criterion, py::arg("algebra"),
          py::arg("eps") = kDefaultEps);

    m.def("canonicalize", static_cast<CanonicalForm (*)(const EvolutionAlgebra&, double)>(&evokit::canonicalize), py::arg("algebra"), py::arg("eps") = kDefaultEps);
    m.def("isomorphic_max_index", &isomorphic_max_index, py::arg("a"), py::arg("b"),
          py::arg("eps") = kDefaultEps);
    m.def("canonical_families", [](int n) {
        py::list out;
        for (const auto& fam : enumerate_canonical_families(n)) {
            py::dict d;
            d["dim"] = fam.dim;
            d["cells"] = fam.cells;
            d["parameters"] = fam.parameters;
            out.append(std::move(d));
        }
        return out;
    });

    m.def(
        "is_bq_homomorphism",
        [](const EvolutionAlgebra& a, const py::sequence& f, const py::sequence& g, double eps) {
            return is_bq_homomorphism(a, pair_from_py(a, f, g), eps);
        },
        py::arg("algebra"), py::arg("f"), py::arg("g"), py::arg("eps") = kDefaultEps);
    m.def(
        "dibaric",
        [](const EvolutionAlgebra& a, int attempts, double eps, unsigned long long seed,
           int workers) {
            BqSearchOptions opts;
            opts.attempts = attempts;
            opts.eps = eps;
            opts.seed = seed;
            opts.workers = workers;
            return decide_dibaric(a, opts);
        },
        py::arg("algebra"), py::arg("attempts") = 200, py::arg("eps") = kDefaultEps,
        py::arg("seed") = 0x9e3779b97f4a7c15ULL, py::arg("workers") = 1);
    m.def(
        "numeric_bq_search",
        [](const EvolutionAlgebra& a, int attempts, double eps, unsigned long long seed,
           int workers) {
            BqSearchOptions opts;
            opts.attempts = attempts;
            opts.eps = eps;
            opts.seed = seed;
            opts.workers = workers;
            return numeric_bq_search(a, opts);
        },
        py::arg("algebra"), py::arg("attempts") = 200, py::arg("eps") = kDefaultEps,
        py::arg("seed") = 0x9e3779b97f4a7c15ULL, py::arg("workers") = 1);

    m.def(
        "generate",
        [](const std::string& family, int n, const std::map<std::string, std::string>& params) {
            families::FamilySpec spec;
            spec.kind = families::family_kind_from_name(family);
            spec.dim = n;
            spec.params = params;
            return families::generate(spec);
        },
        py::arg("family"), py::arg("n"), py::arg("params") = std::map<std::string, std::string>{});
    m.def(
        "expected_index",
        [](const std::string& family, int n, const std::map<std::string, std::string>& params) {
            families::FamilySpec spec;
            spec.kind = families::family_kind_from_name(family);
            spec.dim = n;
            spec.params = params;
            return families::expected_index(spec);
        },
        py::arg("family"), py::arg("n"), py::arg("params") = std::map<std::string, std::string>{});

    m.def(
        "spectrum",
        [](int n, const std::vector<std::string>& grid, long budget, int workers) {
            SpectrumOptions opts;
            opts.n = n;
            opts.budget = budget;
            opts.workers = workers;
            for (const auto& lit : grid) opts.grid.push_back(parse_rational_literal(lit));
            const auto res = run_spectrum(opts);
            py::dict out;
            py::dict counts, witnesses;
            for (const auto& [idx, c] : res.index_counts) counts[py::int_(idx)] = c;
            for (const auto& [idx, mat] : res.witnesses) {
                std::vector<Scalar> entries;
                for (const auto& q : mat) entries.push_back(Scalar(q));
                witnesses[py::int_(idx)] = EvolutionAlgebra(n, entries);
            }
            out["counts"] = counts;
            out["witnesses"] = witnesses;
            out["exhaustive"] = res.exhaustive;
            out["enumerated"] = res.enumerated;
            out["space_size"] = res.space_size;
            return out;
        },
        py::arg("n"), py::arg("grid"), py::arg("budget") = 100000, py::arg("workers") = 1);

    m.def("naive_principal_power_dim", [](const EvolutionAlgebra& a, int k) {
        return static_cast<int>(oracle::naive_principal_power(a, k).size());
    });
    m.def("naive_nil_check", &oracle::naive_nil_check);

    m.def("parse_document", &parse_algebra_document);
    m.def("serialize_document", &serialize_algebra_document);
}
