#pragma once

#include <stdexcept>
#include <string>

namespace treecompat {

/// Malformed textual input (Newick or JSON). Carries a 0-based character
/// offset when one is known, -1 otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long position = -1)
        : std::runtime_error(position >= 0
                                 ? what + " (at offset " + std::to_string(position) + ")"
                                 : what),
          position_(position) {}

    long position() const { return position_; }

private:
    long position_;
};

/// A caller violated an operation's contract (bad labels, invalid
/// decomposition, non-chordal input where chordal is required, ...).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// The instance exceeds a resource cap (candidate fill edges, taxa for the
/// exhaustive oracle). Distinct from "incompatible".
class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace treecompat
