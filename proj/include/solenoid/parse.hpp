#pragma once

#include "solenoid/rule.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace solenoid {

struct ParseError : SolenoidError {
    int line, column;
    ParseError(int line_, int column_, const std::string& msg)
        : SolenoidError("parse error at line " + std::to_string(line_) + ", column " +
                        std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

namespace detail {

struct Token {
    std::string text;
    int line, column;
};

// Whitespace separates tokens, '#' comments to end of line, ';' is a line
// separator and comes out as its own token.
inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            tokens.push_back({"\n", line, col});
            ++line;
            col = 1;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
        } else if (c == ';') {
            tokens.push_back({";", line, col});
            ++col;
            ++i;
        } else {
            int start_col = col;
            std::string tok;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
                   text[i] != ';' && text[i] != '#') {
                tok.push_back(text[i]);
                ++col;
                ++i;
            }
            tokens.push_back({tok, line, start_col});
        }
    }
    tokens.push_back({"\n", line, col});
    return tokens;
}

inline bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

}  // namespace detail

// Grammar:
//   file    := "edges:" name+ NEWLINE line+
//   line    := name "->" letter* (NEWLINE | ";")
//   letter  := name ["^-1"]
//   name    := [A-Za-z][A-Za-z0-9_]*
inline WrappingRule parse_rule(const std::string& text) {
    using detail::Token;
    std::vector<Token> toks = detail::tokenize(text);
    size_t pos = 0;
    auto peek = [&]() -> const Token& { return toks[pos]; };
    auto advance = [&]() -> const Token& { return toks[pos++]; };
    auto at_end = [&]() { return pos >= toks.size(); };
    auto skip_breaks = [&]() {
        while (!at_end() && (peek().text == "\n" || peek().text == ";"))
            advance();
    };

    skip_breaks();
    if (at_end())
        throw ParseError(1, 1, "empty input");
    {
        const Token& t = advance();
        if (t.text != "edges:")
            throw ParseError(t.line, t.column, "expected 'edges:', found '" + t.text + "'");
    }

    WrappingRule rule;
    std::map<std::string, int> index;
    while (!at_end() && peek().text != "\n" && peek().text != ";") {
        const Token& t = advance();
        if (!detail::valid_name(t.text))
            throw ParseError(t.line, t.column, "invalid edge name '" + t.text + "'");
        if (index.count(t.text))
            throw ParseError(t.line, t.column, "duplicate edge declaration '" + t.text + "'");
        index[t.text] = rule.edge_count();
        rule.edge_names.push_back(t.text);
    }
    if (rule.edge_count() == 0) {
        const Token& t = peek();
        throw ParseError(t.line, t.column, "empty edge list");
    }
    rule.words.resize(rule.edge_names.size());
    std::vector<bool> defined(rule.edge_names.size(), false);

    skip_breaks();
    while (!at_end()) {
        if (peek().text == "\n" || peek().text == ";") {
            advance();
            continue;
        }
        const Token& lhs = advance();
        auto it = index.find(lhs.text);
        if (it == index.end())
            throw ParseError(lhs.line, lhs.column, "unknown edge symbol '" + lhs.text + "'");
        if (defined[size_t(it->second)])
            throw ParseError(lhs.line, lhs.column, "duplicate rule line for edge '" + lhs.text + "'");
        if (at_end() || peek().text != "->") {
            const Token& t = peek();
            throw ParseError(t.line, t.column, "expected '->' after edge name");
        }
        advance();
        SignedWord word;
        while (!at_end() && peek().text != "\n" && peek().text != ";") {
            const Token& t = advance();
            std::string name = t.text;
            int sign = +1;
            size_t caret = name.find('^');
            if (caret != std::string::npos) {
                std::string exp = name.substr(caret);
                name = name.substr(0, caret);
                if (exp != "^-1")
                    throw ParseError(t.line, t.column,
                                     "malformed exponent '" + exp + "' (only ^-1 is allowed)");
                sign = -1;
            }
            auto lit = index.find(name);
            if (lit == index.end())
                throw ParseError(t.line, t.column, "unknown edge symbol '" + name + "'");
            word.letters.push_back({lit->second, sign});
        }
        rule.words[size_t(it->second)] = word;
        defined[size_t(it->second)] = true;
    }

    for (size_t i = 0; i < defined.size(); ++i)
        if (!defined[i]) {
            const Token& t = toks.back();
            throw ParseError(t.line, t.column,
                             "missing rule line for edge '" + rule.edge_names[i] + "'");
        }
    return rule;
}

inline std::string format_word(const WrappingRule& rule, const SignedWord& w) {
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : w.letters) {
        if (!first)
            os << ' ';
        first = false;
        os << rule.edge_names[size_t(l.edge)];
        if (l.sign < 0)
            os << "^-1";
    }
    return os.str();
}

inline std::string format_rule(const WrappingRule& rule) {
    std::ostringstream os;
    os << "edges:";
    for (const auto& n : rule.edge_names)
        os << ' ' << n;
    os << '\n';
    for (int i = 0; i < rule.edge_count(); ++i) {
        os << rule.edge_names[size_t(i)] << " ->";
        std::string w = format_word(rule, rule.word(i));
        if (!w.empty())
            os << ' ' << w;
        os << '\n';
    }
    return os.str();
}

}  // namespace solenoid
