#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msnet {

inline constexpr const char* kVersion = "msnet 0.1.0";

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Non-negative integer time: microseconds for traces, version index for releases.
using Timestamp = std::int64_t;

using NodeId = int;

// Input file could not be decoded (bad JSON, bad CSV); carries line/position context.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Input decoded but violates the documented schema (unknown field, negative weight, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An analysis could not produce a result on this input (disconnected graph,
// non-converged iteration); distinct from precondition violations, which are
// std::invalid_argument.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace msnet
