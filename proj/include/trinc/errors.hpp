#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trinc {

// A decode equation reduced to 1 = 0: the input data is corrupt.
class ContradictionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by decode_all when the packet list is exhausted with enough distinct
// ids to determine the batch but no single-unknown equation left to peel.
// Carries a snapshot of the residual system for diagnosis.
class StallError : public std::runtime_error {
public:
    StallError(std::string msg, std::size_t unsolved_bits, std::size_t open_equations,
               std::vector<std::uint64_t> pushed_seqs)
        : std::runtime_error(std::move(msg)),
          unsolved_bits_(unsolved_bits),
          open_equations_(open_equations),
          pushed_seqs_(std::move(pushed_seqs)) {}

    std::size_t unsolved_bits() const { return unsolved_bits_; }
    std::size_t open_equations() const { return open_equations_; }
    const std::vector<std::uint64_t>& pushed_seqs() const { return pushed_seqs_; }

private:
    std::size_t unsolved_bits_;
    std::size_t open_equations_;
    std::vector<std::uint64_t> pushed_seqs_;
};

class InsufficientPacketsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind {
        BadMagic,
        BadVersion,
        BadMode,
        Truncated,
        TrailingBytes,
        BadField,
    };

    ParseError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace trinc
