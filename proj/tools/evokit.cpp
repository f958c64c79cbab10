#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "evokit/canonical.hpp"
#include "evokit/dibaric.hpp"
#include "evokit/families.hpp"
#include "evokit/io.hpp"
#include "evokit/oracle.hpp"
#include "evokit/powers.hpp"
#include "evokit/spectrum.hpp"

namespace {

using nlohmann::json;
using namespace evokit;

constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

struct CliError {
    int code;
    std::string message;
};

std::string join_ints(const std::vector<int>& xs, int base = 0) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(xs[i] + base);
    }
    return out;
}

json chain_json(const PowerChainReport& rep) {
    json j;
    j["kind"] = chain_kind_name(rep.kind);
    j["dims"] = rep.dims;
    if (rep.index) j["index"] = *rep.index;
    if (rep.stabilized_at) j["stabilized_at"] = *rep.stabilized_at;
    j["tolerance_dependent"] = rep.tolerance_dependent;
    return j;
}

json witness_json(const BqPair& w) {
    json jf = json::array(), jg = json::array();
    for (const auto& s : w.f) jf.push_back(s.to_complex().real());
    for (const auto& s : w.g) jg.push_back(s.to_complex().real());
    return json{{"f", jf}, {"g", jg}};
}

bool real_backed(const EvolutionAlgebra& alg) {
    if (alg.field() == Field::gaussian_rational) return false;
    for (const auto& s : alg.entries())
        if (!s.is_real()) return false;
    return true;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

int cmd_analyze(const std::string& path, double eps, bool with_oracle,
                const std::vector<std::string>& chains) {
    const auto t0 = std::chrono::steady_clock::now();
    const EvolutionAlgebra alg = load_algebra_document(path);

    const auto want = [&](const char* name) {
        return chains.empty() || std::find(chains.begin(), chains.end(), name) != chains.end();
    };

    std::ostringstream out;
    json m;
    out << "report: evokit-analyze\n";
    if (alg.label()) out << "label: " << *alg.label() << "\n";
    out << "dim: " << alg.dim() << "\n";
    out << "field: " << field_name(alg.field()) << "\n";
    m["dim"] = alg.dim();
    m["field"] = field_name(alg.field());

    const auto nil = nil_check(alg, eps);
    out << "nil: " << (nil.is_nil ? "true" : "false") << "\n";
    m["nil"] = nil.is_nil;
    if (nil.witness_cycle) {
        out << "nil_witness_cycle: " << join_ints(*nil.witness_cycle, 1) << "\n";
        m["nil_witness_cycle"] = *nil.witness_cycle;
    }
    if (nil.triangularizing_permutation) {
        out << "triangularizing_permutation: " << join_ints(*nil.triangularizing_permutation, 1)
            << "\n";
        m["triangularizing_permutation"] = *nil.triangularizing_permutation;
    }

    std::optional<PowerChainReport> principal, right, derived;
    if (want("principal")) principal = principal_powers(alg, eps);
    if (want("right")) right = right_powers(alg, eps);
    if (want("derived")) derived = derived_powers(alg, eps);

    if (principal) {
        out << "nilpotent: " << (principal->index ? "true" : "false") << "\n";
        m["chains"]["principal"] = chain_json(*principal);
        if (principal->index)
            out << "nilpotent_index: " << *principal->index << "\n";
        else
            out << "principal_stabilized_at: " << *principal->stabilized_at << "\n";
        out << "principal_dims:";
        for (int d : principal->dims) out << ' ' << d;
        out << "\n";
        const auto plateau = check_plateau_laws(*principal, eps);
        out << "plateau_violations: " << plateau.size() << "\n";
        for (const auto& v : plateau) out << "plateau_violation: " << v << "\n";
        m["plateau_violations"] = plateau;
        if (principal->index) {
            const bool mx = *principal->index == max_nilpotent_index(alg.dim());
            out << "max_index: " << (mx ? "true" : "false") << "\n";
            m["max_index"] = mx;
        }
    }
    if (right) {
        m["chains"]["right"] = chain_json(*right);
        if (right->index)
            out << "right_nilpotency_index: " << *right->index << "\n";
        else
            out << "right_stabilized_at: " << *right->stabilized_at << "\n";
        out << "right_dims:";
        for (int d : right->dims) out << ' ' << d;
        out << "\n";
    }
    if (derived) {
        m["chains"]["derived"] = chain_json(*derived);
        if (derived->index)
            out << "solvability_index: " << *derived->index << "\n";
        else
            out << "derived_stabilized_at: " << *derived->stabilized_at << "\n";
        out << "derived_dims:";
        for (int d : derived->dims) out << ' ' << d;
        out << "\n";
    }
    if (principal && right && derived) {
        const auto incl = check_chain_inclusions(*principal, *right, *derived, eps);
        out << "inclusion_violations: " << incl.size() << "\n";
        for (const auto& v : incl) out << "inclusion_violation: " << v << "\n";
    }

    if (real_backed(alg)) {
        BqSearchOptions opts;
        opts.eps = eps;
        const auto verdict = decide_dibaric(alg, opts);
        out << "dibaric: " << dibaric_decision_name(verdict.decision) << "\n";
        out << "dibaric_rule: " << dibaric_rule_name(verdict.rule) << "\n";
        m["dibaric"] = dibaric_decision_name(verdict.decision);
        m["dibaric_rule"] = dibaric_rule_name(verdict.rule);
        if (verdict.witness) m["dibaric_witness"] = witness_json(*verdict.witness);
    } else {
        out << "dibaric: skipped_nonreal\n";
    }

    if (with_oracle) {
        bool chains_agree = true;
        if (principal) {
            const long kmax = std::min<long>(principal->max_exponent(), (1L << alg.dim()) + 1);
            for (long k = 1; k <= kmax && chains_agree; ++k) {
                const auto naive = oracle::naive_principal_power(alg, static_cast<int>(k));
                const Subspace ns = Subspace::span(naive, alg.dim(), alg.field(), eps);
                chains_agree = equals(ns, principal->at_exponent(static_cast<int>(k)), eps);
            }
            out << "oracle_principal_agrees: " << (chains_agree ? "true" : "false") << "\n";
            m["oracle_principal_agrees"] = chains_agree;
        }
        if (alg.dim() <= 8 && alg.field() != Field::complex_float) {
            const bool agree = oracle::naive_nil_check(alg) == nil.is_nil;
            out << "oracle_nil_agrees: " << (agree ? "true" : "false") << "\n";
            m["oracle_nil_agrees"] = agree;
        }
    }

    out << "elapsed_ms: " << elapsed_ms(t0) << "\n";
    out << "machine: " << m.dump() << "\n";
    std::cout << out.str();
    return 0;
}

json canonical_document(const CanonicalForm& form) {
    json doc;
    doc["dim"] = form.dim;
    doc["field"] = "complex_float";
    json matrix = json::array();
    for (int i = 0; i < form.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < form.dim; ++j) {
            const auto z = form.at(i, j).as_complex_float();
            row.push_back(json::array({z.real(), z.imag()}));
        }
        matrix.push_back(std::move(row));
    }
    doc["matrix"] = std::move(matrix);
    doc["label"] = "canonical_form";
    if (form.normalized_entry)
        doc["normalized_entry"] =
            json::array({form.normalized_entry->first + 1, form.normalized_entry->second + 1});
    json residuals = json::array();
    for (const auto& [pos, val] : form.residual_entries) {
        const auto z = val.as_complex_float();
        residuals.push_back(json{{"row", pos.first + 1},
                                 {"col", pos.second + 1},
                                 {"value", json::array({z.real(), z.imag()})}});
    }
    doc["residual_entries"] = std::move(residuals);
    return doc;
}

int cmd_canon(const std::string& path, double eps, const std::string& out_path) {
    const EvolutionAlgebra alg = load_algebra_document(path);
    const auto form = canonicalize(alg, eps);
    const std::string text = canonical_document(form).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw CliError{kExitSemantic, "cannot write \"" + out_path + "\""};
        out << text;
    }
    return 0;
}

int cmd_iso(const std::string& path_a, const std::string& path_b, double eps) {
    EvolutionAlgebra a = load_algebra_document(path_a);
    EvolutionAlgebra b = load_algebra_document(path_b);
    const bool iso = isomorphic_max_index(a, b, eps);
    std::cout << "isomorphic: " << (iso ? "true" : "false") << "\n";
    return iso ? 0 : 1;
}

int cmd_gen(const std::string& family, int n, const std::vector<std::string>& params,
            const std::string& out_path) {
    families::FamilySpec spec;
    spec.kind = families::family_kind_from_name(family);
    spec.dim = n;
    for (const auto& p : params) {
        const auto pos = p.find('=');
        if (pos == std::string::npos)
            throw CliError{kExitSemantic, "--param expects key=value, got \"" + p + "\""};
        spec.params[p.substr(0, pos)] = p.substr(pos + 1);
    }
    const auto alg = families::generate(spec);
    if (out_path.empty())
        std::cout << serialize_algebra_document(alg);
    else
        write_algebra_document(alg, out_path);
    const auto expect = families::expected_index(spec);
    if (expect) std::cerr << "expected_index: " << *expect << "\n";
    return 0;
}

int cmd_dibaric(const std::string& path, double eps, int starts, int workers,
                unsigned long long seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const EvolutionAlgebra alg = load_algebra_document(path);
    BqSearchOptions opts;
    opts.eps = eps;
    opts.attempts = starts;
    opts.workers = workers;
    opts.seed = seed;
    const auto verdict = decide_dibaric(alg, opts);

    json m;
    std::cout << "report: evokit-dibaric\n";
    std::cout << "decision: " << dibaric_decision_name(verdict.decision) << "\n";
    std::cout << "rule: " << dibaric_rule_name(verdict.rule) << "\n";
    std::cout << "tolerance_dependent: " << (verdict.tolerance_dependent ? "true" : "false")
              << "\n";
    m["decision"] = dibaric_decision_name(verdict.decision);
    m["rule"] = dibaric_rule_name(verdict.rule);
    for (const auto r : verdict.fired)
        std::cout << "obstruction_fired: " << dibaric_rule_name(r) << "\n";
    if (verdict.witness) {
        m["witness"] = witness_json(*verdict.witness);
        std::cout << "witness_f:";
        for (const auto& s : verdict.witness->f) std::cout << ' ' << s.to_complex().real();
        std::cout << "\nwitness_g:";
        for (const auto& s : verdict.witness->g) std::cout << ' ' << s.to_complex().real();
        std::cout << "\n";
    }
    if (alg.dim() == 2) {
        const bool printed_formula = dibaric_2d_discriminant_test(alg.at(0, 0), alg.at(0, 1),
                                                                  alg.at(1, 0), alg.at(1, 1));
        const bool criterion = verdict.decision == DibaricDecision::dibaric;
        std::cout << "discriminant_formula: " << (printed_formula ? "dibaric" : "not_dibaric")
                  << "\n";
        if (printed_formula != criterion) std::cout << "discriminant_formula_disagrees: true\n";
        m["discriminant_formula"] = printed_formula;
    }
    std::cout << "elapsed_ms: " << elapsed_ms(t0) << "\n";
    std::cout << "machine: " << m.dump() << "\n";
    return 0;
}

int cmd_spectrum(int n, const std::string& grid_csv, long budget, int workers) {
    const auto t0 = std::chrono::steady_clock::now();
    SpectrumOptions opts;
    opts.n = n;
    opts.budget = budget;
    opts.workers = workers;
    std::stringstream ss(grid_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) opts.grid.push_back(parse_rational_literal(tok));
    const auto res = run_spectrum(opts);

    json m;
    std::cout << "report: evokit-spectrum\n";
    std::cout << "n: " << n << "\n";
    std::cout << "grid_size: " << opts.grid.size() << "\n";
    std::cout << "space_size: " << res.space_size << "\n";
    std::cout << "enumerated: " << res.enumerated << "\n";
    std::cout << "exhaustive: " << (res.exhaustive ? "true" : "false") << "\n";
    m["space_size"] = res.space_size;
    m["enumerated"] = res.enumerated;
    m["exhaustive"] = res.exhaustive;
    std::cout << "observed_indices:";
    for (const auto& [idx, cnt] : res.index_counts) std::cout << ' ' << idx;
    std::cout << "\n";
    for (const auto& [idx, cnt] : res.index_counts) {
        std::cout << "count_index_" << idx << ": " << cnt << "\n";
        m["counts"][std::to_string(idx)] = cnt;
    }
    for (const auto& [idx, mat] : res.witnesses) {
        std::vector<Scalar> entries;
        for (const auto& q : mat) entries.push_back(Scalar(q));
        EvolutionAlgebra alg(n, entries);
        alg.set_label("spectrum witness, nilpotent index " + std::to_string(idx));
        json w = json::parse(serialize_algebra_document(alg));
        m["witnesses"][std::to_string(idx)] = w;
        std::cout << "witness_index_" << idx << ": " << w["matrix"].dump() << "\n";
    }
    std::cout << "elapsed_ms: " << elapsed_ms(t0) << "\n";
    std::cout << "machine: " << m.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic analysis of finite-dimensional evolution algebras"};
    app.require_subcommand(1);

    std::string path, path_b, out_path, family, grid = "0,1,-1,2", chains_csv;
    double eps = kDefaultEps;
    bool with_oracle = false;
    int n = 3, starts = 200, workers = 1;
    long budget = 100000;
    unsigned long long seed = 0x9e3779b97f4a7c15ULL;
    std::vector<std::string> params;

    const auto add_eps = [&](CLI::App* sub) {
        sub->add_option("--eps", eps, "comparison tolerance for float backends")
            ->envname("EVOKIT_EPS");
    };

    auto* analyze = app.add_subcommand("analyze", "parse an algebra document and run all analyses");
    analyze->add_option("path", path, "algebra document")->required();
    analyze->add_flag("--oracle", with_oracle, "cross-check against the brute-force oracle");
    analyze->add_option("--chains", chains_csv, "comma list of chains (principal,right,derived)");
    add_eps(analyze);

    auto* canon = app.add_subcommand("canon", "canonical form of a maximal-index algebra");
    canon->add_option("path", path)->required();
    canon->add_option("--out", out_path, "write the canonical document here");
    add_eps(canon);

    auto* iso = app.add_subcommand("iso", "isomorphism test within the maximal-index class");
    iso->add_option("pathA", path)->required();
    iso->add_option("pathB", path_b)->required();
    add_eps(iso);

    std::string family_help = "family name:";
    for (const auto& k : families::family_kind_names()) family_help += " " + k;
    auto* gen = app.add_subcommand("gen", "generate a named algebra family member");
    gen->add_option("--family", family, family_help)->required();
    gen->add_option("--n", n, "dimension")->required();
    gen->add_option("--param", params, "family parameter key=value");
    gen->add_option("--out", out_path, "write the document here");

    auto* dib = app.add_subcommand("dibaric", "layered dibaricity decision");
    dib->add_option("path", path)->required();
    dib->add_option("--starts", starts, "numeric search attempts");
    dib->add_option("--parallel", workers, "worker threads for the search");
    dib->add_option("--seed", seed, "base seed for the search");
    add_eps(dib);

    auto* spec = app.add_subcommand("spectrum", "observed nilpotent indices over a grid");
    spec->add_option("--n", n, "dimension")->required();
    spec->add_option("--grid", grid, "comma list of rational grid values");
    spec->add_option("--budget", budget, "maximum number of matrices to analyze");
    spec->add_option("--parallel", workers, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (iso->parsed()) {
            try {
                return cmd_iso(path, path_b, eps);
            } catch (const document_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 10;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 11;
            }
        }
        if (analyze->parsed()) {
            std::vector<std::string> chains;
            std::stringstream ss(chains_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) chains.push_back(tok);
            return cmd_analyze(path, eps, with_oracle, chains);
        }
        if (canon->parsed()) return cmd_canon(path, eps, out_path);
        if (gen->parsed()) return cmd_gen(family, n, params, out_path);
        if (dib->parsed()) return cmd_dibaric(path, eps, starts, workers, seed);
        if (spec->parsed()) return cmd_spectrum(n, grid, budget, workers);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const document_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return 0;
}
