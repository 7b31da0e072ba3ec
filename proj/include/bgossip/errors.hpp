#pragma once

#include <stdexcept>
#include <string>

namespace bgossip {

// Malformed textual input (edge lists, rule lists, bit strings).
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested constructor cannot produce a graph (e.g. infeasible regular degree).
class construction_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Violated operation precondition (disconnected graph, absorbing start, ...).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// State space exceeds the configured node cap.
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// Operation undefined for this chain (e.g. absorption on a non-absorbing chain).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace bgossip
