#include "gtorsion/expr.hpp"

#include <cctype>
#include <string>
#include <vector>

// Expression grammar (whitespace-insensitive):
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | factor
//   factor := base ('^' unary)?          -- exponent must fold to a rational
//   base   := NUMBER
//           | NAME '\''* '(' expr ')'    -- opaque function, quotes = d/darg
//           | NAME '(' expr ')'          -- elementary when NAME is sin, cos,
//                                           exp, ln, sqrt, abs
//           | NAME                       -- symbol
//           | '(' expr ')'
//   NUMBER := digits ('.' digits)?
//   NAME   := [A-Za-z_][A-Za-z0-9_]*
//
// parse() returns the canonical (simplified) tree so that printing and
// re-parsing is a fixed point.

namespace gtorsion {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Quote, End };

struct Token {
    Tok type;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        current_.line = line_;
        current_.col = col_;
        current_.text.clear();
        if (pos_ >= src_.size()) {
            current_.type = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                bump();
            if (pos_ < src_.size() && src_[pos_] == '.' && pos_ + 1 < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    bump();
            }
            current_.type = Tok::Number;
            current_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            current_.type = Tok::Name;
            current_.text = src_.substr(start, pos_ - start);
            return;
        }
        switch (c) {
            case '+': current_.type = Tok::Plus; break;
            case '-': current_.type = Tok::Minus; break;
            case '*': current_.type = Tok::Star; break;
            case '/': current_.type = Tok::Slash; break;
            case '^': current_.type = Tok::Caret; break;
            case '(': current_.type = Tok::LParen; break;
            case ')': current_.type = Tok::RParen; break;
            case '\'': current_.type = Tok::Quote; break;
            default:
                throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        current_.text = c;
        bump();
    }

    void bump() {
        ++pos_;
        ++col_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_{Tok::End, "", 1, 1};
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Expr run() {
        Expr e = expr();
        const Token& t = lex_.peek();
        if (t.type != Tok::End)
            throw ParseError(t.line, t.col, "unexpected trailing input '" + t.text + "'");
        return e;
    }

private:
    Expr expr() {
        Expr e = term();
        while (lex_.peek().type == Tok::Plus || lex_.peek().type == Tok::Minus) {
            Token op = lex_.take();
            Expr rhs = term();
            e = op.type == Tok::Plus ? sum({e, rhs}) : sum({e, neg(rhs)});
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (lex_.peek().type == Tok::Star || lex_.peek().type == Tok::Slash) {
            Token op = lex_.take();
            Expr rhs = unary();
            e = op.type == Tok::Star ? product({e, rhs}) : product({e, pow(rhs, Rational(-1))});
        }
        return e;
    }

    Expr unary() {
        if (lex_.peek().type == Tok::Minus) {
            lex_.take();
            return neg(unary());
        }
        if (lex_.peek().type == Tok::Plus) {
            lex_.take();
            return unary();
        }
        return factor();
    }

    Expr factor() {
        Expr b = base();
        if (lex_.peek().type == Tok::Caret) {
            Token caret = lex_.take();
            Expr raw = unary();
            Expr folded = simplify(raw);
            if (folded->kind != Kind::Constant)
                throw ParseError(caret.line, caret.col,
                                 "exponent must evaluate to a rational constant, got '" +
                                     print(raw) + "'");
            return pow(b, folded->value);
        }
        return b;
    }

    Expr base() {
        Token t = lex_.take();
        switch (t.type) {
            case Tok::Number: {
                return constant(Rational::from_decimal(t.text));
            }
            case Tok::LParen: {
                Expr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Name: {
                int ticks = 0;
                while (lex_.peek().type == Tok::Quote) {
                    lex_.take();
                    ++ticks;
                }
                bool has_args = lex_.peek().type == Tok::LParen;
                std::optional<Elem> elem = elem_from_name(t.text);
                if (elem) {
                    if (ticks > 0)
                        throw ParseError(t.line, t.col,
                                         "'" + t.text + "' is an elementary function; "
                                         "derivative quotes apply only to named opaque functions");
                    if (!has_args)
                        throw ParseError(t.line, t.col,
                                         "elementary function '" + t.text + "' needs an argument");
                    lex_.take();
                    Expr arg = expr();
                    expect(Tok::RParen, "')'");
                    return func(*elem, arg);
                }
                if (has_args) {
                    lex_.take();
                    Expr arg = expr();
                    expect(Tok::RParen, "')'");
                    return apply(t.text, ticks, arg);
                }
                if (ticks > 0)
                    throw ParseError(t.line, t.col,
                                     "derivative quotes need an argument list, e.g. " + t.text +
                                         "'(t)");
                return symbol(t.text);
            }
            default:
                throw ParseError(t.line, t.col,
                                 t.type == Tok::End ? "unexpected end of input"
                                                    : "unexpected token '" + t.text + "'");
        }
    }

    void expect(Tok type, const std::string& what) {
        const Token& t = lex_.peek();
        if (t.type != type)
            throw ParseError(t.line, t.col, "expected " + what +
                                                (t.type == Tok::End ? " before end of input"
                                                                    : ", got '" + t.text + "'"));
        lex_.take();
    }

    Lexer lex_;
};

}  // namespace

Expr parse(const std::string& src) {
    Parser p(src);
    return simplify(p.run());
}

}  // namespace gtorsion
