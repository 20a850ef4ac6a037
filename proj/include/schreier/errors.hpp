#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schreier {

/// Base class for every error raised by the toolkit. Law violations and
/// failed checks are never errors; they are reported as values.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: non-square tables, indices out of range, bad files.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened or written.
class FileError : public Error {
public:
    using Error::Error;
};

/// Two algebras (or a hom and an algebra) do not share a signature.
class SignatureMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured bound.
class GuardExceeded : public Error {
public:
    GuardExceeded(std::string what, std::uint64_t required, std::uint64_t limit)
        : Error(what + ": needs " + std::to_string(required) + " candidates, guard is " +
                std::to_string(limit)),
          required_(required),
          limit_(limit) {}
    explicit GuardExceeded(const std::string& what) : Error(what), required_(0), limit_(0) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t required_;
    std::uint64_t limit_;
};

/// Bounds on brute-force enumeration.
struct Guards {
    /// Candidate assignments tried while enumerating homomorphisms.
    std::uint64_t homs = 10'000'000;
    /// Size of a function space filtered by a right-adjoint construction.
    std::uint64_t functions = 1'000'000;
};

}  // namespace schreier
