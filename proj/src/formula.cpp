#include "autostruct/formula.hpp"

#include <cctype>
#include <sstream>

namespace autostruct {

FormulaPtr make_atom(std::string rel, std::vector<std::string> args) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::atom;
    f->name = std::move(rel);
    f->args = std::move(args);
    return f;
}
FormulaPtr make_eq(std::string l, std::string r) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::eq;
    f->args = {std::move(l), std::move(r)};
    return f;
}
FormulaPtr make_not(FormulaPtr x) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::not_;
    f->lhs = std::move(x);
    return f;
}
namespace {
FormulaPtr binary(FKind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}
FormulaPtr quantifier(FKind k, std::string v, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->name = std::move(v);
    f->lhs = std::move(body);
    return f;
}
} // namespace
FormulaPtr make_and(FormulaPtr l, FormulaPtr r) { return binary(FKind::and_, std::move(l), std::move(r)); }
FormulaPtr make_or(FormulaPtr l, FormulaPtr r) { return binary(FKind::or_, std::move(l), std::move(r)); }
FormulaPtr make_implies(FormulaPtr l, FormulaPtr r) {
    return binary(FKind::implies, std::move(l), std::move(r));
}
FormulaPtr make_forall(std::string v, FormulaPtr body) {
    return quantifier(FKind::forall, std::move(v), std::move(body));
}
FormulaPtr make_exists(std::string v, FormulaPtr body) {
    return quantifier(FKind::exists, std::move(v), std::move(body));
}

namespace {

struct Token {
    enum Type { ident, lparen, rparen, comma, dot, eq, bang, amp, pipe, arrow, end } type;
    std::string text;
    int line, col;
};

struct Lexer {
    std::vector<Token> toks;
    size_t pos = 0;

    explicit Lexer(const std::string& text) {
        int line = 1, col = 1;
        size_t i = 0;
        auto push = [&](Token::Type t, std::string s) {
            toks.push_back(Token{t, std::move(s), line, col});
        };
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                col = 1;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                           text[j] == '_'))
                    ++j;
                push(Token::ident, text.substr(i, j - i));
                col += static_cast<int>(j - i);
                i = j;
                continue;
            }
            switch (c) {
                case '(': push(Token::lparen, "("); break;
                case ')': push(Token::rparen, ")"); break;
                case ',': push(Token::comma, ","); break;
                case '.': push(Token::dot, "."); break;
                case '=': push(Token::eq, "="); break;
                case '!': push(Token::bang, "!"); break;
                case '&': push(Token::amp, "&"); break;
                case '|': push(Token::pipe, "|"); break;
                case '-':
                    if (i + 1 < text.size() && text[i + 1] == '>') {
                        push(Token::arrow, "->");
                        ++i;
                        ++col;
                        break;
                    }
                    throw SyntaxError("stray '-'", line, col);
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
            }
            ++i;
            ++col;
        }
        toks.push_back(Token{Token::end, "", line, col});
    }

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    bool eat(Token::Type t) {
        if (toks[pos].type == t) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(Token::Type t, const std::string& what) {
        if (!eat(t)) throw SyntaxError("expected " + what, peek().line, peek().col);
    }
};

struct Parser {
    const Presentation& pres;
    Lexer lex;
    std::set<std::string> bound;

    Parser(const Presentation& p, const std::string& text) : pres(p), lex(text) {}

    bool is_const(const std::string& n) const { return pres.has_constant(n); }

    FormulaPtr parse() {
        FormulaPtr f = formula();
        if (lex.peek().type != Token::end)
            throw SyntaxError("trailing input", lex.peek().line, lex.peek().col);
        return f;
    }

    FormulaPtr formula() { return implication(); }

    FormulaPtr implication() {
        FormulaPtr l = disjunction();
        if (lex.eat(Token::arrow)) return make_implies(std::move(l), implication());
        return l;
    }

    FormulaPtr disjunction() {
        FormulaPtr l = conjunction();
        while (lex.eat(Token::pipe)) l = make_or(std::move(l), conjunction());
        return l;
    }

    FormulaPtr conjunction() {
        FormulaPtr l = negation();
        while (lex.eat(Token::amp)) l = make_and(std::move(l), negation());
        return l;
    }

    FormulaPtr negation() {
        const Token& t = lex.peek();
        if (t.type == Token::bang) {
            lex.take();
            return make_not(negation());
        }
        if (t.type == Token::ident && (t.text == "all" || t.text == "ex")) return quantified();
        return primary();
    }

    FormulaPtr quantified() {
        Token q = lex.take();
        Token v = lex.take();
        if (v.type != Token::ident)
            throw SyntaxError("expected a variable after '" + q.text + "'", v.line, v.col);
        if (is_const(v.text))
            throw SyntaxError("cannot quantify over constant '" + v.text + "'", v.line, v.col);
        if (v.text == "all" || v.text == "ex")
            throw SyntaxError("'" + v.text + "' is a keyword", v.line, v.col);
        if (bound.count(v.text))
            throw SyntaxError("variable '" + v.text + "' is already bound", v.line, v.col);
        lex.expect(Token::dot, "'.'");
        bound.insert(v.text);
        FormulaPtr body = formula(); // quantifiers scope maximally to the right
        bound.erase(v.text);
        return q.text == "all" ? make_forall(v.text, std::move(body))
                               : make_exists(v.text, std::move(body));
    }

    FormulaPtr primary() {
        Token t = lex.take();
        if (t.type == Token::lparen) {
            FormulaPtr f = formula();
            lex.expect(Token::rparen, "')'");
            return f;
        }
        if (t.type != Token::ident)
            throw SyntaxError("expected a formula", t.line, t.col);
        if (t.text == "all" || t.text == "ex")
            throw SyntaxError("misplaced quantifier", t.line, t.col);
        if (lex.eat(Token::lparen)) {
            // relation atom
            std::vector<std::string> args;
            if (lex.peek().type != Token::rparen) {
                for (;;) {
                    Token a = lex.take();
                    if (a.type != Token::ident)
                        throw SyntaxError("expected an argument", a.line, a.col);
                    args.push_back(a.text);
                    if (!lex.eat(Token::comma)) break;
                }
            }
            lex.expect(Token::rparen, "')'");
            auto it = pres.relations.find(t.text);
            if (it == pres.relations.end())
                throw UnknownSymbol("unknown relation '" + t.text + "'");
            if (static_cast<int>(args.size()) != it->second.arity)
                throw ArityError("relation '" + t.text + "' takes " +
                                 std::to_string(it->second.arity) + " arguments, got " +
                                 std::to_string(args.size()));
            return make_atom(t.text, std::move(args));
        }
        if (lex.eat(Token::eq)) {
            Token r = lex.take();
            if (r.type != Token::ident)
                throw SyntaxError("expected right-hand side of '='", r.line, r.col);
            return make_eq(t.text, r.text);
        }
        throw SyntaxError("identifier '" + t.text + "' is not a formula", t.line, t.col);
    }
};

void collect_free(const Presentation& pres, const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
    switch (f->kind) {
        case FKind::atom:
        case FKind::eq:
            for (const std::string& a : f->args)
                if (!pres.has_constant(a) && !bound.count(a)) out.insert(a);
            break;
        case FKind::not_:
            collect_free(pres, f->lhs, bound, out);
            break;
        case FKind::and_:
        case FKind::or_:
        case FKind::implies:
            collect_free(pres, f->lhs, bound, out);
            collect_free(pres, f->rhs, bound, out);
            break;
        case FKind::forall:
        case FKind::exists: {
            bool fresh = bound.insert(f->name).second;
            collect_free(pres, f->lhs, bound, out);
            if (fresh) bound.erase(f->name);
            break;
        }
    }
}

} // namespace

FormulaPtr parse_formula(const Presentation& pres, const std::string& text) {
    Parser parser(pres, text);
    return parser.parse();
}

std::vector<std::string> free_vars(const Presentation& pres, const FormulaPtr& f) {
    std::set<std::string> bound, out;
    collect_free(pres, f, bound, out);
    return std::vector<std::string>(out.begin(), out.end());
}

std::string to_string(const FormulaPtr& f) {
    std::ostringstream out;
    switch (f->kind) {
        case FKind::atom: {
            out << f->name << '(';
            for (size_t i = 0; i < f->args.size(); ++i) {
                if (i) out << ',';
                out << f->args[i];
            }
            out << ')';
            break;
        }
        case FKind::eq: out << f->args[0] << " = " << f->args[1]; break;
        case FKind::not_: out << '!' << to_string(f->lhs); break;
        case FKind::and_: out << '(' << to_string(f->lhs) << " & " << to_string(f->rhs) << ')'; break;
        case FKind::or_: out << '(' << to_string(f->lhs) << " | " << to_string(f->rhs) << ')'; break;
        case FKind::implies:
            out << '(' << to_string(f->lhs) << " -> " << to_string(f->rhs) << ')';
            break;
        case FKind::forall: out << "all " << f->name << ". " << to_string(f->lhs); break;
        case FKind::exists: out << "ex " << f->name << ". " << to_string(f->lhs); break;
    }
    return out.str();
}

} // namespace autostruct
