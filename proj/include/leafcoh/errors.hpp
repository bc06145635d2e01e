#pragma once

#include <stdexcept>
#include <string>

namespace leafcoh {

// Malformed requests: bad dimensions, unparsable input, unsupported sizes.
// The CLI maps these to exit status 1.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mathematical failures of a well-formed request (resonances, non-hyperbolic
// matrices, non-closed forms, ...). The CLI maps these to exit status 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

// An approximate (float) value was handed to an operation that needs exact input.
class ExactnessError : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedError : public InputError {
public:
    using InputError::InputError;
};

// A Fourier mode with nonzero coefficient whose divisor vanishes exactly.
class ObstructionError : public DomainError {
public:
    using DomainError::DomainError;
};

class NotHyperbolicError : public DomainError {
public:
    using DomainError::DomainError;
};

class NotAutomorphismError : public DomainError {
public:
    using DomainError::DomainError;
};

class NotClosedError : public DomainError {
public:
    using DomainError::DomainError;
};

class IllConditionedError : public DomainError {
public:
    using DomainError::DomainError;
};

class InsufficientDataError : public DomainError {
public:
    using DomainError::DomainError;
};

class NonPositiveError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace leafcoh
