#include <CLI11.hpp>

#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "btrace/inference.hpp"
#include "btrace/oracle.hpp"
#include "btrace/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Options {
    std::string program_path, policy_path, entry, proc;
    std::string format = "text";
    bool all = false;
    bool dump_classes = false, dump_pairs = false, dump_table = false;
    bool lasso = false;
    unsigned budget = 4;
    int phi = -1;
    std::size_t max_u = 8, max_v = 8, max_stack = 64;
};

int run_analyze(const Options& o) {
    btrace::Program program = btrace::parse_program(read_file(o.program_path));
    btrace::Automaton policy = btrace::parse_automaton(read_file(o.policy_path));
    btrace::validate(program, policy);
    std::string entry = o.entry.empty() ? program.procedures.front().first : o.entry;

    btrace::ClassTable table = btrace::build_class_table(policy);
    btrace::PairTable pairs = btrace::build_pairs(table);
    btrace::Verdict verdict = btrace::check_policy(program, policy, table, pairs, entry, o.all);

    btrace::ReportOptions ropt{o.dump_classes, o.dump_pairs, o.dump_table};
    std::cout << (o.format == "json" ? btrace::render_json(policy, table, pairs, verdict, ropt)
                                     : btrace::render_text(policy, table, pairs, verdict, ropt));
    return verdict.overall ? 0 : 1;
}

int run_classes(const Options& o) {
    btrace::Automaton policy = btrace::parse_automaton(read_file(o.policy_path));
    btrace::ClassTable table = btrace::build_class_table(policy);
    btrace::PairTable pairs = btrace::build_pairs(table);
    btrace::ReportOptions ropt;
    ropt.dump_table = o.dump_table;
    std::cout << (o.format == "json" ? btrace::render_classes_json(policy, table, pairs, ropt)
                                     : btrace::render_classes_text(policy, table, pairs, ropt));
    return 0;
}

int run_oracle(const Options& o) {
    btrace::Program program = btrace::parse_program(read_file(o.program_path));
    btrace::Alphabet sigma = btrace::program_alphabet(program);
    std::string proc = o.proc.empty() ? program.procedures.front().first : o.proc;

    if (o.phi >= 0) {
        btrace::PhiIterate it =
            btrace::iterate_phi(program, sigma, static_cast<unsigned>(o.phi));
        for (std::size_t i = 0; i < program.size(); ++i)
            for (const btrace::Word& w : it.per_proc[i])
                std::cout << program.procedures[i].first << "\t" << btrace::format_word(sigma, w)
                          << "\n";
        return 0;
    }
    if (o.lasso) {
        auto found = btrace::search_lasso(program, sigma, proc, o.max_u, o.max_v, o.max_stack);
        if (found)
            std::cout << btrace::format_word(sigma, found->prefix) << "\t"
                      << btrace::format_word(sigma, found->period) << "\n";
        else
            std::cout << "none\n";
        return 0;
    }
    for (const auto& [word, flag] : btrace::enumerate_prefixes(program, sigma, proc, o.budget))
        std::cout << btrace::format_word(sigma, word) << "\t"
                  << (flag == btrace::RunFlag::Terminated ? "terminated" : "truncated") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks that every trace of a recursive event program, finite or infinite, "
                 "satisfies an automaton policy"};
    app.require_subcommand(1);
    Options o;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a program against a policy");
    analyze->add_option("--program", o.program_path, "Program file (.rec)")->required();
    analyze->add_option("--policy", o.policy_path, "Policy automaton file (.aut)")->required();
    analyze->add_option("--entry", o.entry, "Entry procedure (default: first declared)");
    analyze->add_flag("--all", o.all, "Check every procedure, not just the entry");
    analyze->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_flag("--dump-classes", o.dump_classes, "Also dump the word classes");
    analyze->add_flag("--dump-pairs", o.dump_pairs, "Also dump the class pairs");
    analyze->add_flag("--dump-table", o.dump_table, "Also dump the class product table");

    CLI::App* classes = app.add_subcommand("classes", "Dump the policy's classes and pairs");
    classes->add_option("--policy", o.policy_path, "Policy automaton file (.aut)")->required();
    classes->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    classes->add_flag("--dump-table", o.dump_table, "Also dump the class product table");

    CLI::App* oracle = app.add_subcommand("oracle", "Run a program's trace oracle");
    oracle->add_option("--program", o.program_path, "Program file (.rec)")->required();
    oracle->add_option("--proc", o.proc, "Procedure to run (default: first declared)");
    oracle->add_option("--budget", o.budget, "Call budget for prefix enumeration");
    oracle->add_option("--phi", o.phi, "Print the level-n terminating-trace sets instead");
    oracle->add_flag("--lasso", o.lasso, "Search for an ultimately periodic trace instead");
    oracle->add_option("--max-u", o.max_u, "Lasso prefix length bound");
    oracle->add_option("--max-v", o.max_v, "Lasso period length bound");
    oracle->add_option("--max-stack", o.max_stack, "Lasso configuration stack bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits clean; bad usage is an input error
    }

    try {
        if (analyze->parsed()) return run_analyze(o);
        if (classes->parsed()) return run_classes(o);
        return run_oracle(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
