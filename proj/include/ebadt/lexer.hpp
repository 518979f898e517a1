#pragma once

// Tokenizer for the ASCII modelling notation.  Longest-match ("maximal
// munch") on operator clusters; `//` starts a line comment; identifiers are
// [A-Za-z_][A-Za-z0-9_]*; integer literals are unsigned digit runs (unary
// minus is handled by the parser).

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "ebadt/span.hpp"

namespace ebadt {

enum class Tok : std::uint8_t {
    Ident, IntLit,
    // punctuation / operators
    LParen, RParen, LBrace, RBrace, Comma, Dot, Bar,
    Maplet,      // |->
    Colon,       // :
    NotMember,   // /:
    Subset,      // <:
    Cross,       // **
    Union,       // backslash-slash
    Inter,       // slash-backslash
    Diff,        // backslash
    Interval,    // ..
    TotalFun,    // -->
    PartialFun,  // +->
    TotalInj,    // >->
    Relation,    // <->
    Override,    // <+
    DomSub,      // <<|
    LBracket, RBracket,  // f[S]
    Plus, MinusSign,     // + -
    EqualSign,   // =
    NotEqual,    // /=
    LessEq,      // <=
    Less,        // <
    Becomes,     // :=
    Conj,        // &
    ImpliesTok,  // =>
    Bang,        // !
    Hash,        // #
    Semicolon,   // ;
    EndOfFile,
};

struct Token {
    Tok kind;
    std::string text;   // identifier spelling or literal digits
    std::int64_t value = 0;  // IntLit
    SourceSpan span;
};

inline const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::IntLit: return "integer literal";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Bar: return "'|'";
        case Tok::Maplet: return "'|->'";
        case Tok::Colon: return "':'";
        case Tok::NotMember: return "'/:'";
        case Tok::Subset: return "'<:'";
        case Tok::Cross: return "'**'";
        case Tok::Union: return "'\\/'";
        case Tok::Inter: return "'/\\'";
        case Tok::Diff: return "'\\'";
        case Tok::Interval: return "'..'";
        case Tok::TotalFun: return "'-->'";
        case Tok::PartialFun: return "'+->'";
        case Tok::TotalInj: return "'>->'";
        case Tok::Relation: return "'<->'";
        case Tok::Override: return "'<+'";
        case Tok::DomSub: return "'<<|'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Plus: return "'+'";
        case Tok::MinusSign: return "'-'";
        case Tok::EqualSign: return "'='";
        case Tok::NotEqual: return "'/='";
        case Tok::LessEq: return "'<='";
        case Tok::Less: return "'<'";
        case Tok::Becomes: return "':='";
        case Tok::Conj: return "'&'";
        case Tok::ImpliesTok: return "'=>'";
        case Tok::Bang: return "'!'";
        case Tok::Hash: return "'#'";
        case Tok::Semicolon: return "';'";
        case Tok::EndOfFile: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    Lexer(std::string_view text, std::string file = "")
        : text_(text), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws_and_comments();
            if (pos_ >= text_.size()) {
                out.push_back(make(Tok::EndOfFile, pos_, pos_));
                return out;
            }
            out.push_back(next_token());
        }
    }

private:
    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;

    char peek(std::size_t k = 0) const {
        return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
    }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        }
    }
    SourceSpan span_from(std::size_t begin, std::uint32_t line, std::uint32_t col) const {
        return SourceSpan{file_, (std::uint32_t)begin, (std::uint32_t)pos_, line, col};
    }
    Token make(Tok k, std::size_t begin, std::size_t end, std::string text = {}) {
        (void)end;
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.span = SourceSpan{file_, (std::uint32_t)begin, (std::uint32_t)pos_, line_, col_};
        return t;
    }

    void skip_ws_and_comments() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) advance(1);
            if (peek() == '/' && peek(1) == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
                continue;
            }
            return;
        }
    }

    Token next_token() {
        std::size_t begin = pos_;
        std::uint32_t line = line_, col = col_;
        char c = peek();

        auto tok = [&](Tok k, std::size_t len, std::string text = {}) {
            advance(len);
            Token t;
            t.kind = k;
            t.text = std::move(text);
            t.span = SourceSpan{file_, (std::uint32_t)begin, (std::uint32_t)pos_, line, col};
            return t;
        };

        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t n = 0;
            while (std::isalnum((unsigned char)peek(n)) || peek(n) == '_') ++n;
            std::string name(text_.substr(pos_, n));
            return tok(Tok::Ident, n, std::move(name));
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t n = 0;
            while (std::isdigit((unsigned char)peek(n))) ++n;
            std::string digits(text_.substr(pos_, n));
            Token t = tok(Tok::IntLit, n, digits);
            errno = 0;
            t.value = std::strtoll(digits.c_str(), nullptr, 10);
            if (errno != 0)
                fail("lex.int-overflow", "integer literal out of range: " + digits, t.span);
            return t;
        }

        // Operator clusters, longest first within each leading character.
        switch (c) {
            case '(': return tok(Tok::LParen, 1);
            case ')': return tok(Tok::RParen, 1);
            case '{': return tok(Tok::LBrace, 1);
            case '}': return tok(Tok::RBrace, 1);
            case '[': return tok(Tok::LBracket, 1);
            case ']': return tok(Tok::RBracket, 1);
            case ',': return tok(Tok::Comma, 1);
            case ';': return tok(Tok::Semicolon, 1);
            case '&': return tok(Tok::Conj, 1);
            case '!': return tok(Tok::Bang, 1);
            case '#': return tok(Tok::Hash, 1);
            case '|':
                if (peek(1) == '-' && peek(2) == '>') return tok(Tok::Maplet, 3);
                return tok(Tok::Bar, 1);
            case ':':
                if (peek(1) == '=') return tok(Tok::Becomes, 2);
                return tok(Tok::Colon, 1);
            case '/':
                if (peek(1) == '\\') return tok(Tok::Inter, 2);
                if (peek(1) == ':') return tok(Tok::NotMember, 2);
                if (peek(1) == '=') return tok(Tok::NotEqual, 2);
                break;
            case '\\':
                if (peek(1) == '/') return tok(Tok::Union, 2);
                return tok(Tok::Diff, 1);
            case '.':
                if (peek(1) == '.') return tok(Tok::Interval, 2);
                return tok(Tok::Dot, 1);
            case '*':
                if (peek(1) == '*') return tok(Tok::Cross, 2);
                break;
            case '-':
                if (peek(1) == '-' && peek(2) == '>') return tok(Tok::TotalFun, 3);
                return tok(Tok::MinusSign, 1);
            case '+':
                if (peek(1) == '-' && peek(2) == '>') return tok(Tok::PartialFun, 3);
                return tok(Tok::Plus, 1);
            case '>':
                if (peek(1) == '-' && peek(2) == '>') return tok(Tok::TotalInj, 3);
                break;
            case '<':
                if (peek(1) == '<' && peek(2) == '|') return tok(Tok::DomSub, 3);
                if (peek(1) == '-' && peek(2) == '>') return tok(Tok::Relation, 3);
                if (peek(1) == '+') return tok(Tok::Override, 2);
                if (peek(1) == ':') return tok(Tok::Subset, 2);
                if (peek(1) == '=') return tok(Tok::LessEq, 2);
                return tok(Tok::Less, 1);
            case '=':
                if (peek(1) == '>') return tok(Tok::ImpliesTok, 2);
                return tok(Tok::EqualSign, 1);
            default: break;
        }
        fail("lex.unexpected-char",
             std::string("unexpected character '") + c + "'",
             span_from(begin, line, col));
    }
};

inline std::vector<Token> lex(std::string_view text, std::string file = "") {
    return Lexer(text, std::move(file)).run();
}

}  // namespace ebadt
