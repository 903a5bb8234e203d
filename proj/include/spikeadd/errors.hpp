#pragma once

#include <stdexcept>
#include <string>

namespace spikeadd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownPort : public Error {
public:
    using Error::Error;
};

class ValueOutOfRange : public Error {
public:
    using Error::Error;
};

/// An output neuron fired at a step other than the one its port is read at.
class SpuriousSpike : public Error {
public:
    using Error::Error;
};

class InvalidCircuit : public Error {
public:
    using Error::Error;
};

/// A circuit cannot be deployed under the active hardware model.
class ConstraintError : public Error {
public:
    using Error::Error;
};

class DelayOverflow : public ConstraintError {
public:
    using ConstraintError::ConstraintError;
};

class WeightOverflow : public ConstraintError {
public:
    using ConstraintError::ConstraintError;
};

class BiasOverflow : public ConstraintError {
public:
    using ConstraintError::ConstraintError;
};

/// Exhaustive verification requested above the configured width cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace spikeadd
