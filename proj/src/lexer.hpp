#pragma once

#include <catlift/errors.hpp>
#include <string>
#include <string_view>
#include <vector>


namespace catlift::detail {

struct Token
{
    enum Kind { Word, Quoted, Symbol, End } kind;
    std::string text;
    std::size_t line;
};

/// Words, double-quoted strings, the symbols `{ } [ ] ( ) ; : , = ->`, and `#` line comments.
std::vector<Token> tokenize(std::string_view text, const std::string &file);

class TokenStream
{
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string file_;

    public:
    TokenStream(std::string_view text, std::string file);

    const Token & peek(std::size_t ahead = 0) const;
    Token next();
    bool at_end() const { return peek().kind == Token::End; }

    bool is_symbol(std::string_view s, std::size_t ahead = 0) const;
    bool is_word(std::string_view w, std::size_t ahead = 0) const;
    /// Consumes the symbol if present.
    bool accept(std::string_view symbol);
    void expect(std::string_view symbol);
    void expect_word(std::string_view keyword);
    /// A bare word (identifier).
    std::string word(std::string_view what);
    /// A bare word or a quoted string.
    std::string name(std::string_view what);
    /// `[a b c]`.
    std::vector<std::string> bracket_list();

    [[noreturn]] void fail(const std::string &what) const;
    [[noreturn]] void fail_at(std::size_t line, const std::string &what) const;
    std::size_t line() const { return peek().line; }
    const std::string & file() const { return file_; }
};

/// Reads a whole file; throws `ParseError` at line 0 if it cannot be opened.
std::string read_file(const std::string &path);

}
