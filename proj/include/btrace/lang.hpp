#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "btrace/automaton.hpp"

namespace btrace {

/// Expression of the recursive event language:
///   e ::= o(a) | f | e1 ; e2 | e1 ? e2
/// Emit produces one event; Call invokes a procedure (and is the only source
/// of recursion); Seq runs left then right; Choice is nondeterministic.
struct Expr {
    enum class Kind { Emit, Call, Seq, Choice };

    Kind kind;
    std::string name;  // event symbol (Emit) or procedure name (Call)
    std::unique_ptr<Expr> lhs, rhs;

    static std::unique_ptr<Expr> emit(std::string symbol);
    static std::unique_ptr<Expr> call(std::string proc);
    static std::unique_ptr<Expr> seq(std::unique_ptr<Expr> l, std::unique_ptr<Expr> r);
    static std::unique_ptr<Expr> choice(std::unique_ptr<Expr> l, std::unique_ptr<Expr> r);
};

/// A program: procedures in declaration order, each `name = body`.
struct Program {
    std::vector<std::pair<std::string, std::unique_ptr<Expr>>> procedures;

    std::optional<std::size_t> index_of(std::string_view name) const;
    const Expr& body(std::size_t i) const { return *procedures[i].second; }
    std::size_t size() const { return procedures.size(); }

    /// Every symbol emitted anywhere, in first-appearance order.
    std::vector<std::string> emitted_symbols() const;
};

/// Parses one definition per line (`name = expr`), `\` at end of line
/// continues the definition, `#` starts a comment. `;` binds tighter than `?`
/// and associates to the right; `?` associates to the left. Identifiers are
/// [A-Za-z_][A-Za-z0-9_]*; `o` is reserved. Duplicate procedure names are an
/// error. Throws ParseError with the offending line.
Program parse_program(std::string_view text);

/// Checks that every called procedure is declared and every emitted symbol is
/// in the policy alphabet; throws std::invalid_argument otherwise.
void validate(const Program& p, const Automaton& a);

/// Renders an expression with minimal parentheses; parsing the result yields
/// the same tree.
std::string to_string(const Expr& e);

/// Renders a whole program, one definition per line.
std::string to_string(const Program& p);

/// Alphabet of the program's own emitted symbols, for running the trace
/// oracle without a policy automaton.
Alphabet program_alphabet(const Program& p);

}  // namespace btrace
