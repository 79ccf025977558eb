#pragma once

#include <stdexcept>
#include <string>

namespace chowdr {

/// Base class of every error the engine raises on malformed input or
/// violated preconditions. Internal invariant breaches use it too, so no
/// code path terminates the process on bad data.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model construction failed an invariant (symmetry, unit law,
/// associativity, degree bookkeeping, contradictory tables, ...).
/// The message names the offending pair or triple.
class validation_error : public error {
public:
    using error::error;
};

class duplicate_basis_name : public validation_error {
public:
    using validation_error::validation_error;
};

class not_ring_homomorphism : public validation_error {
public:
    using validation_error::validation_error;
};

class projection_formula_violation : public validation_error {
public:
    using validation_error::validation_error;
};

class degree_mismatch : public validation_error {
public:
    using validation_error::validation_error;
};

/// Two classes from different rings were combined.
class ring_mismatch : public error {
public:
    using error::error;
};

class composition_mismatch : public error {
public:
    using error::error;
};

/// exp of a class with a nonzero codimension-0 part.
class non_nilpotent_input : public error {
public:
    using error::error;
};

class no_point_class : public error {
public:
    using error::error;
};

class unsupported_model : public error {
public:
    using error::error;
};

/// A fiber integral that should certify a polarization rank came out
/// non-integral or non-positive; the model is malformed, refuse rather
/// than round.
class not_positive_integer : public error {
public:
    using error::error;
};

class invalid_rank : public error {
public:
    using error::error;
};

class not_abelian_family : public error {
public:
    using error::error;
};

class not_a_curve_family : public error {
public:
    using error::error;
};

class invalid_genus : public error {
public:
    using error::error;
};

struct SourcePos {
    int line = 1;
    int column = 1;
};

/// Parse failure; carries the position and what was expected there.
class syntax_error : public error {
public:
    syntax_error(const std::string& msg, SourcePos pos, std::string expected = "")
        : error(msg + " at line " + std::to_string(pos.line) + ", column "
                + std::to_string(pos.column)
                + (expected.empty() ? "" : " (expected " + expected + ")")),
          pos_(pos),
          expected_(std::move(expected))
    {
    }

    SourcePos pos() const { return pos_; }
    const std::string& expected() const { return expected_; }

private:
    SourcePos pos_;
    std::string expected_;
};

class unbound_name : public error {
public:
    using error::error;
};

class forward_reference : public error {
public:
    using error::error;
};

class unknown_model : public error {
public:
    using error::error;
};

/// Evaluation failure wrapped with the position of the offending
/// subexpression.
class eval_error : public error {
public:
    eval_error(const std::string& msg, SourcePos pos)
        : error(msg + " at line " + std::to_string(pos.line) + ", column "
                + std::to_string(pos.column)),
          pos_(pos)
    {
    }

    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

} // namespace chowdr
