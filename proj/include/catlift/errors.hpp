#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catlift {

/// Base of every exception thrown by the engine.
class Error : public std::runtime_error
{
    public:
    using std::runtime_error::runtime_error;
};

/// Malformed schema, ill-typed path, or a morphism whose endpoints do not line up.
class TypingError : public Error
{
    public:
    using Error::Error;
};

/// A bounded enumeration (hom-set, comma category, functor space) did not saturate.
class UnboundedError : public Error
{
    public:
    using Error::Error;
};

/// Tables that cannot be read as a total functor: dangling references, nulls, duplicates.
class InstanceError : public Error
{
    public:
    using Error::Error;
};

class NotAFibration : public Error
{
    public:
    using Error::Error;
};

/// Syntax error in one of the text formats.
class ParseError : public Error
{
    public:
    ParseError(std::string file, std::size_t line, const std::string &what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line)
    { }

    const std::string & file() const { return file_; }
    std::size_t line() const { return line_; }

    private:
    std::string file_;
    std::size_t line_;
};

/// Constant resolution failures while compiling a graph pattern.
class ReferentError : public Error
{
    public:
    enum class Kind { NoReferent, AmbiguousReferent, UnknownPredicate, UntypedTerm };

    ReferentError(Kind kind, const std::string &what) : Error(what), kind_(kind) { }

    Kind kind() const { return kind_; }

    private:
    Kind kind_;
};

}
