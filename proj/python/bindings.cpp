#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "btrace/automaton.hpp"
#include "btrace/classes.hpp"
#include "btrace/inference.hpp"
#include "btrace/lang.hpp"
#include "btrace/lattice.hpp"
#include "btrace/oracle.hpp"
#include "btrace/report.hpp"

namespace py = pybind11;

namespace {

std::string analyze_json(const std::string& program_text, const std::string& policy_text,
                         std::string entry, bool all_procs) {
    btrace::Program p = btrace::parse_program(program_text);
    btrace::Automaton a = btrace::parse_automaton(policy_text);
    btrace::validate(p, a);
    if (entry.empty()) entry = p.procedures.front().first;
    btrace::ClassTable t = btrace::build_class_table(a);
    btrace::PairTable pt = btrace::build_pairs(t);
    btrace::Verdict v = btrace::check_policy(p, a, t, pt, entry, all_procs);
    return btrace::render_json(a, t, pt, v);
}

std::string classes_json(const std::string& policy_text) {
    btrace::Automaton a = btrace::parse_automaton(policy_text);
    btrace::ClassTable t = btrace::build_class_table(a);
    btrace::PairTable pt = btrace::build_pairs(t);
    return btrace::render_classes_json(a, t, pt);
}

std::vector<std::pair<std::string, std::string>> enumerate_prefixes_py(
    const std::string& program_text, const std::string& proc, unsigned budget) {
    btrace::Program p = btrace::parse_program(program_text);
    btrace::Alphabet sigma = btrace::program_alphabet(p);
    auto runs = btrace::enumerate_prefixes(p, sigma, proc, budget);
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(runs.size());
    for (const auto& [word, flag] : runs)
        out.emplace_back(btrace::format_word(sigma, word),
                         flag == btrace::RunFlag::Terminated ? "terminated" : "truncated");
    return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> iterate_phi_py(
    const std::string& program_text, unsigned level) {
    btrace::Program p = btrace::parse_program(program_text);
    btrace::Alphabet sigma = btrace::program_alphabet(p);
    btrace::PhiIterate it = btrace::iterate_phi(p, sigma, level);
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    out.reserve(p.procedures.size());
    for (std::size_t i = 0; i < p.procedures.size(); ++i) {
        std::vector<std::string> words;
        words.reserve(it.per_proc[i].size());
        for (const btrace::Word& w : it.per_proc[i]) words.push_back(btrace::format_word(sigma, w));
        out.emplace_back(p.procedures[i].first, std::move(words));
    }
    return out;
}

std::optional<std::pair<std::string, std::string>> search_lasso_py(const std::string& program_text,
                                                                   const std::string& proc,
                                                                   std::size_t max_u,
                                                                   std::size_t max_v,
                                                                   std::size_t max_stack) {
    btrace::Program p = btrace::parse_program(program_text);
    btrace::Alphabet sigma = btrace::program_alphabet(p);
    auto l = btrace::search_lasso(p, sigma, proc, max_u, max_v, max_stack);
    if (!l) return std::nullopt;
    return std::make_pair(btrace::format_word(sigma, l->prefix),
                          btrace::format_word(sigma, l->period));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Trace abstraction and policy checking for recursive event programs";

    m.def("analyze_json", &analyze_json, py::arg("program"), py::arg("policy"),
          py::arg("entry") = std::string(), py::arg("all_procs") = false,
          "Checks program traces against the policy automaton; returns a JSON report.");

    m.def("classes_json", &classes_json, py::arg("policy"),
          "Word classes and pairs induced by the policy automaton, as JSON.");

    m.def("enumerate_prefixes", &enumerate_prefixes_py, py::arg("program"), py::arg("proc"),
          py::arg("budget"),
          "Bounded run enumeration: list of (word, 'terminated'|'truncated').");

    m.def("iterate_phi", &iterate_phi_py, py::arg("program"), py::arg("level"),
          "Exact terminating-trace sets after `level` rounds, per procedure.");

    m.def("search_lasso", &search_lasso_py, py::arg("program"), py::arg("proc"),
          py::arg("max_u") = 8, py::arg("max_v") = 8, py::arg("max_stack") = 64,
          "Bounded search for an infinite run; returns (prefix, period) or None.");
}
