#pragma once

#include <stdexcept>
#include <string>

namespace xdiff {

// Base for all contract violations raised by the library. `code()` is the
// stable machine-readable name; what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidParameters : public Error {
public:
    InvalidParameters(std::string reason, const std::string& detail)
        : Error("InvalidParameters", reason + "; " + detail), reason_(std::move(reason)) {}

    // "nonpositive" or "ad<=bc"
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

class NegativeState : public Error {
public:
    explicit NegativeState(const std::string& detail) : Error("NegativeState", detail) {}
};

class BadDomain : public Error {
public:
    explicit BadDomain(const std::string& detail) : Error("BadDomain", detail) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& detail) : Error("LengthMismatch", detail) {}
};

class IncompatibleGrids : public Error {
public:
    explicit IncompatibleGrids(const std::string& detail) : Error("IncompatibleGrids", detail) {}
};

class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& detail) : Error("GridMismatch", detail) {}
};

class NewtonDiverged : public Error {
public:
    NewtonDiverged(double final_residual, const std::string& detail)
        : Error("NewtonDiverged", detail), final_residual_(final_residual) {}

    double final_residual() const noexcept { return final_residual_; }

private:
    double final_residual_;
};

class PositivityLost : public Error {
public:
    explicit PositivityLost(const std::string& detail) : Error("PositivityLost", detail) {}
};

class BadTime : public Error {
public:
    explicit BadTime(const std::string& detail) : Error("BadTime", detail) {}
};

class DegenerateReference : public Error {
public:
    explicit DegenerateReference(const std::string& detail) : Error("DegenerateReference", detail) {}
};

class BadEta : public Error {
public:
    explicit BadEta(const std::string& detail) : Error("BadEta", detail) {}
};

class BadArgs : public Error {
public:
    explicit BadArgs(const std::string& detail) : Error("BadArgs", detail) {}
};

class BadSeries : public Error {
public:
    explicit BadSeries(const std::string& detail) : Error("BadSeries", detail) {}
};

class EmptySeries : public Error {
public:
    explicit EmptySeries(const std::string& detail) : Error("EmptySeries", detail) {}
};

class NonFinite : public Error {
public:
    explicit NonFinite(const std::string& detail) : Error("NonFinite", detail) {}
};

class SupportTouchedBoundary : public Error {
public:
    explicit SupportTouchedBoundary(const std::string& detail)
        : Error("SupportTouchedBoundary", detail) {}
};

// Configuration file problems (syntax, unknown keys, unreadable file).
class BadConfig : public Error {
public:
    explicit BadConfig(const std::string& detail) : Error("BadConfig", detail) {}
};

} // namespace xdiff
