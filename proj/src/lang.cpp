#include "btrace/lang.hpp"

#include <cctype>

namespace btrace {

std::unique_ptr<Expr> Expr::emit(std::string symbol) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Emit;
    e->name = std::move(symbol);
    return e;
}

std::unique_ptr<Expr> Expr::call(std::string proc) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Call;
    e->name = std::move(proc);
    return e;
}

std::unique_ptr<Expr> Expr::seq(std::unique_ptr<Expr> l, std::unique_ptr<Expr> r) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Seq;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

std::unique_ptr<Expr> Expr::choice(std::unique_ptr<Expr> l, std::unique_ptr<Expr> r) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Choice;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

std::optional<std::size_t> Program::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < procedures.size(); ++i)
        if (procedures[i].first == name) return i;
    return std::nullopt;
}

namespace {

void collect_symbols(const Expr& e, std::vector<std::string>& out, std::set<std::string>& seen) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            if (seen.insert(e.name).second) out.push_back(e.name);
            break;
        case Expr::Kind::Call:
            break;
        case Expr::Kind::Seq:
        case Expr::Kind::Choice:
            collect_symbols(*e.lhs, out, seen);
            collect_symbols(*e.rhs, out, seen);
            break;
    }
}

}  // namespace

std::vector<std::string> Program::emitted_symbols() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& [name, body] : procedures) collect_symbols(*body, out, seen);
    return out;
}

namespace {

struct Token {
    enum class Kind { Ident, Reserved, LParen, RParen, Semi, Query, Equals, End };
    Kind kind;
    std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenizes one logical line of a definition.
std::vector<Token> lex_line(std::string_view line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '#') {
            break;
        } else if (c == '(') {
            out.push_back({Token::Kind::LParen, "("}), ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::RParen, ")"}), ++i;
        } else if (c == ';') {
            out.push_back({Token::Kind::Semi, ";"}), ++i;
        } else if (c == '?') {
            out.push_back({Token::Kind::Query, "?"}), ++i;
        } else if (c == '=') {
            out.push_back({Token::Kind::Equals, "="}), ++i;
        } else if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < line.size() && ident_char(line[j])) ++j;
            std::string word(line.substr(i, j - i));
            out.push_back({word == "o" ? Token::Kind::Reserved : Token::Kind::Ident, word});
            i = j;
        } else {
            throw ParseError(line_no, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::Kind::End, ""});
    return out;
}

class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, int line_no) : toks_(toks), line_(line_no) {}

    // expr := seq ('?' seq)*   -- '?' associates to the left
    std::unique_ptr<Expr> parse_expr() {
        auto e = parse_seq();
        while (peek().kind == Token::Kind::Query) {
            advance();
            e = Expr::choice(std::move(e), parse_seq());
        }
        return e;
    }

    // seq := atom (';' seq)?   -- ';' associates to the right, binds tighter
    std::unique_ptr<Expr> parse_seq() {
        auto e = parse_atom();
        if (peek().kind == Token::Kind::Semi) {
            advance();
            return Expr::seq(std::move(e), parse_seq());
        }
        return e;
    }

    std::unique_ptr<Expr> parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::Reserved: {  // o ( symbol )
                advance();
                expect(Token::Kind::LParen, "'(' after o");
                const Token& sym = peek();
                if (sym.kind != Token::Kind::Ident)
                    throw ParseError(line_, "expected event symbol inside o(...)");
                std::string name = sym.text;
                advance();
                expect(Token::Kind::RParen, "')' after event symbol");
                return Expr::emit(std::move(name));
            }
            case Token::Kind::Ident: {
                std::string name = t.text;
                advance();
                return Expr::call(std::move(name));
            }
            case Token::Kind::LParen: {
                advance();
                auto e = parse_expr();
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            default:
                throw ParseError(line_, "expected expression, found '" + describe(t) + "'");
        }
    }

    void finish() {
        if (peek().kind != Token::Kind::End)
            throw ParseError(line_, "syntax error at '" + describe(peek()) + "'");
    }

    const Token& peek() const { return toks_[pos_]; }

private:
    void advance() { ++pos_; }

    void expect(Token::Kind k, const char* what) {
        if (peek().kind != k)
            throw ParseError(line_, std::string("expected ") + what + ", found '" +
                                        describe(peek()) + "'");
        advance();
    }

    static std::string describe(const Token& t) {
        return t.kind == Token::Kind::End ? "end of definition" : t.text;
    }

    const std::vector<Token>& toks_;
    int line_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
    Program p;
    std::set<std::string, std::less<>> names;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        // assemble one logical line, honoring trailing-backslash continuations
        std::string logical;
        int start_line = line_no + 1;
        bool more = true;
        while (more && pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            while (!line.empty() && (line.back() == '\r')) line.remove_suffix(1);
            if (!line.empty() && line.back() == '\\') {
                logical.append(line.substr(0, line.size() - 1));
                logical += ' ';
            } else {
                logical.append(line);
                more = false;
            }
        }

        auto toks = lex_line(logical, start_line);
        if (toks.size() == 1) continue;  // blank or comment-only

        if (toks[0].kind != Token::Kind::Ident)
            throw ParseError(start_line, "expected procedure name");
        if (toks[1].kind != Token::Kind::Equals)
            throw ParseError(start_line, "expected '=' after procedure name");
        if (!names.insert(toks[0].text).second)
            throw ParseError(start_line, "duplicate procedure '" + toks[0].text + "'");

        std::vector<Token> rest(toks.begin() + 2, toks.end());
        ExprParser ep(rest, start_line);
        auto body = ep.parse_expr();
        ep.finish();
        p.procedures.emplace_back(toks[0].text, std::move(body));
    }

    if (p.procedures.empty()) throw ParseError(line_no, "program declares no procedures");
    return p;
}

namespace {

void validate_expr(const Expr& e, const Program& p, const Automaton& a) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            if (!a.alphabet().find(e.name))
                throw std::invalid_argument("emitted symbol '" + e.name +
                                            "' is not in the policy alphabet");
            break;
        case Expr::Kind::Call:
            if (!p.index_of(e.name))
                throw std::invalid_argument("call to undeclared procedure '" + e.name + "'");
            break;
        case Expr::Kind::Seq:
        case Expr::Kind::Choice:
            validate_expr(*e.lhs, p, a);
            validate_expr(*e.rhs, p, a);
            break;
    }
}

// Parenthesization: '?' children of '?' on the right, and any '?' under ';',
// need parentheses; right-nested ';' does not.
void print_expr(const Expr& e, std::string& out, int parent_level, bool right_child) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            out += "o(" + e.name + ")";
            return;
        case Expr::Kind::Call:
            out += e.name;
            return;
        case Expr::Kind::Seq: {
            bool paren = parent_level > 1;
            if (paren) out += "(";
            print_expr(*e.lhs, out, 2, false);
            out += " ; ";
            print_expr(*e.rhs, out, 1, true);
            if (paren) out += ")";
            return;
        }
        case Expr::Kind::Choice: {
            bool paren = parent_level > 1 || (parent_level == 1 && right_child);
            if (paren) out += "(";
            print_expr(*e.lhs, out, 1, false);
            out += " ? ";
            print_expr(*e.rhs, out, 1, true);
            if (paren) out += ")";
            return;
        }
    }
}

}  // namespace

void validate(const Program& p, const Automaton& a) {
    for (const auto& [name, body] : p.procedures) validate_expr(*body, p, a);
}

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, out, 0, false);
    return out;
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& [name, body] : p.procedures) {
        out += name;
        out += " = ";
        out += to_string(*body);
        out += '\n';
    }
    return out;
}

Alphabet program_alphabet(const Program& p) {
    Alphabet sigma;
    for (const std::string& s : p.emitted_symbols()) sigma.add(s);
    return sigma;
}

}  // namespace btrace
