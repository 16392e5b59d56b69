#pragma once

#include <stdexcept>
#include <string>

namespace autostruct {

// Base class for everything this library throws; the CLI catches this one
// type at its boundary and maps it to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDigit : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct TrackOutOfRange : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct EvenPrimeUnsupported : Error { using Error::Error; };
struct NotInDomain : Error { using Error::Error; };
struct BadGenerator : Error { using Error::Error; };
struct UnknownSymbol : Error { using Error::Error; };
struct ArityError : Error { using Error::Error; };
struct NotASentence : Error { using Error::Error; };
struct DuplicateName : Error { using Error::Error; };
struct PresentationMismatch : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Formula text errors carry a 1-based position.
struct SyntaxError : Error {
    int line;
    int col;
    SyntaxError(const std::string& msg, int line_, int col_)
        : Error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
          line(line_), col(col_) {}
};

// Automaton file errors carry the offending line.
struct AutParseError : Error {
    int line;
    AutParseError(const std::string& msg, int line_)
        : Error(msg + " at line " + std::to_string(line_)), line(line_) {}
};

} // namespace autostruct
