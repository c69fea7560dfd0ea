#pragma once

#include <stdexcept>
#include <string>

namespace skeptic {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition or invariant of the reasoning tree.
struct TreeError : Error {
    using Error::Error;
};

// Unusable media input (missing file, undecodable video, empty frame set).
struct MediaError : Error {
    using Error::Error;
};

// Invalid evaluation manifest (duplicate id, unknown label, missing field).
struct ManifestError : Error {
    using Error::Error;
};

// Bad engine or CLI configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Base class for model-backend failures.
struct GatewayError : Error {
    using Error::Error;
};

// Scripted backend has no recorded response for the request fingerprint.
struct UnknownFingerprintError : GatewayError {
    using GatewayError::GatewayError;
};

// Rate limited and the retry budget is spent.
struct RateLimitedError : GatewayError {
    using GatewayError::GatewayError;
};

// Network-level failure (connect, TLS, timeout) after retries.
struct TransportError : GatewayError {
    using GatewayError::GatewayError;
};

// The endpoint answered but the payload is not a usable chat completion.
struct MalformedResponseError : GatewayError {
    using GatewayError::GatewayError;
};

}  // namespace skeptic
