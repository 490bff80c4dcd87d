#include "paramsynth/ratfunc/expression_parser.h"

#include "paramsynth/errors.h"

#include <cctype>

namespace paramsynth {

namespace {

enum class TokenKind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LeftParen, RightParen, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            bool seenDot = false;
            while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || (text[i] == '.' && !seenDot))) {
                seenDot = seenDot || text[i] == '.';
                ++i;
            }
            std::string number(text.substr(start, i - start));
            if (number == ".") {
                throw ParseError("malformed number", 0, start + 1);
            }
            tokens.push_back({TokenKind::Number, std::move(number), start + 1});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                ++i;
            }
            tokens.push_back({TokenKind::Identifier, std::string(text.substr(start, i - start)), start + 1});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '/': kind = TokenKind::Slash; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LeftParen; break;
            case ')': kind = TokenKind::RightParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", 0, start + 1);
        }
        tokens.push_back({kind, std::string(1, c), start + 1});
        ++i;
    }
    tokens.push_back({TokenKind::End, "", text.size() + 1});
    return tokens;
}

class Parser {
public:
    Parser(std::string_view text, VariablePool* pool, VariablePool const& lookup)
        : tokens_(tokenize(text)), pool_(pool), lookup_(lookup) {}

    RationalFunction parse() {
        if (peek().kind == TokenKind::End) {
            throw ParseError("empty expression", 0, peek().column);
        }
        RationalFunction result = expression();
        if (peek().kind != TokenKind::End) {
            throw ParseError("unexpected '" + peek().text + "'", 0, peek().column);
        }
        return result;
    }

private:
    Token const& peek() const { return tokens_[pos_]; }
    Token const& next() { return tokens_[pos_++]; }

    RationalFunction expression() {
        RationalFunction result = term();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            bool plus = next().kind == TokenKind::Plus;
            RationalFunction rhs = term();
            result = plus ? result + rhs : result - rhs;
        }
        return result;
    }

    RationalFunction term() {
        RationalFunction result = factor();
        while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
            Token const& op = next();
            std::size_t column = peek().column;
            RationalFunction rhs = factor();
            if (op.kind == TokenKind::Star) {
                result = result * rhs;
            } else {
                if (rhs.isZero()) {
                    throw ParseError("division by zero", 0, column);
                }
                result = result / rhs;
            }
        }
        return result;
    }

    RationalFunction factor() {
        if (peek().kind == TokenKind::Minus) {
            next();
            return -factor();
        }
        RationalFunction base = atom();
        if (peek().kind == TokenKind::Caret) {
            next();
            Token const& exponent = next();
            if (exponent.kind != TokenKind::Number || exponent.text.find('.') != std::string::npos) {
                throw ParseError("exponent must be a non-negative integer", 0, exponent.column);
            }
            unsigned long e = std::stoul(exponent.text);
            if (e > 64) {
                throw ParseError("exponent too large", 0, exponent.column);
            }
            base = RationalFunction(base.numerator().pow(e), base.denominator().pow(e));
        }
        return base;
    }

    RationalFunction atom() {
        Token const& token = next();
        switch (token.kind) {
            case TokenKind::Number:
                return RationalFunction(parseRational(token.text));
            case TokenKind::Identifier: {
                std::optional<VariableId> id = lookup_.find(token.text);
                if (!id) {
                    if (pool_ == nullptr) {
                        throw ParseError("unknown parameter '" + token.text + "'", 0, token.column);
                    }
                    id = pool_->intern(token.text);
                }
                return RationalFunction(Polynomial::variable(*id));
            }
            case TokenKind::LeftParen: {
                RationalFunction inner = expression();
                if (peek().kind != TokenKind::RightParen) {
                    throw ParseError("expected ')'", 0, peek().column);
                }
                next();
                return inner;
            }
            case TokenKind::End:
                throw ParseError("unexpected end of expression", 0, token.column);
            default:
                throw ParseError("unexpected '" + token.text + "'", 0, token.column);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    VariablePool* pool_;
    VariablePool const& lookup_;
};

}  // namespace

RationalFunction parseExpression(std::string_view text, VariablePool& pool, bool allowNewVariables) {
    Parser parser(text, allowNewVariables ? &pool : nullptr, pool);
    return parser.parse();
}

RationalFunction parseExpression(std::string_view text, VariablePool const& pool) {
    Parser parser(text, nullptr, pool);
    return parser.parse();
}

}  // namespace paramsynth
