#include "lexer.hpp"

#include <fstream>
#include <sstream>


using namespace catlift;
using namespace catlift::detail;


namespace {

bool is_single_symbol(char c)
{
    return c == '{' or c == '}' or c == '[' or c == ']' or c == '(' or c == ')' or c == ';' or c == ':' or
           c == ',' or c == '=';
}

bool is_space(char c)
{
    return c == ' ' or c == '\t' or c == '\r' or c == '\n';
}

}

std::vector<Token> catlift::detail::tokenize(std::string_view text, const std::string &file)
{
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (is_space(c)) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() and text[i] != '\n')
                ++i;
        } else if (c == '-' and i + 1 < text.size() and text[i + 1] == '>') {
            out.push_back({Token::Symbol, "->", line});
            i += 2;
        } else if (is_single_symbol(c)) {
            out.push_back({Token::Symbol, std::string(1, c), line});
            ++i;
        } else if (c == '"') {
            std::string s;
            ++i;
            while (i < text.size() and text[i] != '"') {
                if (text[i] == '\n')
                    throw ParseError(file, line, "unterminated string");
                s += text[i++];
            }
            if (i == text.size())
                throw ParseError(file, line, "unterminated string");
            ++i;
            out.push_back({Token::Quoted, std::move(s), line});
        } else {
            std::string s;
            while (i < text.size() and not is_space(text[i]) and not is_single_symbol(text[i]) and text[i] != '#' and
                   text[i] != '"' and not (text[i] == '-' and i + 1 < text.size() and text[i + 1] == '>'))
                s += text[i++];
            out.push_back({Token::Word, std::move(s), line});
        }
    }
    out.push_back({Token::End, "", line});
    return out;
}

TokenStream::TokenStream(std::string_view text, std::string file)
    : tokens_(tokenize(text, file))
    , file_(std::move(file))
{ }

const Token & TokenStream::peek(std::size_t ahead) const
{
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next()
{
    Token t = peek();
    if (pos_ < tokens_.size() - 1)
        ++pos_;
    return t;
}

bool TokenStream::is_symbol(std::string_view s, std::size_t ahead) const
{
    return peek(ahead).kind == Token::Symbol and peek(ahead).text == s;
}

bool TokenStream::is_word(std::string_view w, std::size_t ahead) const
{
    return peek(ahead).kind == Token::Word and peek(ahead).text == w;
}

bool TokenStream::accept(std::string_view symbol)
{
    if (not is_symbol(symbol))
        return false;
    next();
    return true;
}

void TokenStream::expect(std::string_view symbol)
{
    if (not accept(symbol))
        fail("expected '" + std::string(symbol) + "'");
}

void TokenStream::expect_word(std::string_view keyword)
{
    if (not is_word(keyword))
        fail("expected '" + std::string(keyword) + "'");
    next();
}

std::string TokenStream::word(std::string_view what)
{
    if (peek().kind != Token::Word)
        fail("expected " + std::string(what));
    return next().text;
}

std::string TokenStream::name(std::string_view what)
{
    if (peek().kind != Token::Word and peek().kind != Token::Quoted)
        fail("expected " + std::string(what));
    return next().text;
}

std::vector<std::string> TokenStream::bracket_list()
{
    expect("[");
    std::vector<std::string> out;
    while (not accept("]"))
        out.push_back(word("generator name or ']'"));
    return out;
}

void TokenStream::fail(const std::string &what) const
{
    const Token &t = peek();
    std::string found = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(file_, t.line, what + ", found " + found);
}

void TokenStream::fail_at(std::size_t line, const std::string &what) const
{
    throw ParseError(file_, line, what);
}

std::string catlift::detail::read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (not in)
        throw ParseError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
