#ifndef LATVAR_ERRORS_HPP
#define LATVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latvar {

// Invalid user input: maps to CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at runtime: maps to CLI exit code 1.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularGenerator : public InvalidInput {
public:
    explicit SingularGenerator(const std::string& msg = "singular generator")
        : InvalidInput(msg) {}
};

class OverflowGuard : public NumericalFailure {
public:
    explicit OverflowGuard(const std::string& msg) : NumericalFailure(msg) {}
};

class DivergentExponent : public NumericalFailure {
public:
    explicit DivergentExponent(const std::string& msg) : NumericalFailure(msg) {}
};

class TailBoundFailure : public NumericalFailure {
public:
    explicit TailBoundFailure(const std::string& msg) : NumericalFailure(msg) {}
};

class NonConvergence : public NumericalFailure {
public:
    explicit NonConvergence(const std::string& msg) : NumericalFailure(msg) {}
};

class PoleAt : public NumericalFailure {
public:
    explicit PoleAt(const std::string& msg) : NumericalFailure(msg) {}
};

class SlowDecay : public NumericalFailure {
public:
    explicit SlowDecay(const std::string& msg) : NumericalFailure(msg) {}
};

} // namespace latvar

#endif
