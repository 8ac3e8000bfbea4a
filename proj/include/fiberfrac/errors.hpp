#pragma once

#include <stdexcept>
#include <string>

namespace fiberfrac {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    /// Stable machine-readable tag, used in the CLI error JSON.
    virtual const char* kind() const noexcept { return "error"; }
};

class InvalidSection : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_section"; }
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_geometry"; }
};

/// The return-mapping denominator H + EA/l_e is not positive: the element is
/// too long for its softening modulus (l_e >= EA/|H|).
class SnapBack : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "snap_back"; }
};

class SingularCondensation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "singular_condensation"; }
};

class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, long dof) : Error(what), dof_(dof) {}
    const char* kind() const noexcept override { return "singular_matrix"; }
    /// Free-DOF index of the offending pivot, or -1 when unknown.
    long dof() const noexcept { return dof_; }

private:
    long dof_;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "generation_failed"; }
};

class InvalidConfig : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_config"; }
};

class FormatError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "format_error"; }
};

/// Wraps an element-level error with the id of the element that raised it.
class ElementError : public Error {
public:
    ElementError(const std::string& what, int element_id, std::string inner_kind)
        : Error(what), element_id_(element_id), inner_kind_(std::move(inner_kind)) {}
    const char* kind() const noexcept override { return inner_kind_.c_str(); }
    int element_id() const noexcept { return element_id_; }

private:
    int element_id_;
    std::string inner_kind_;
};

}  // namespace fiberfrac
