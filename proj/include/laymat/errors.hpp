#pragma once

#include <stdexcept>
#include <string>

namespace laymat {

/// Base class for all laymat errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Carries 1-based source position.
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// Structurally invalid JSON input (bad field, dangling index, out-of-range value).
struct SchemaError : Error {
    using Error::Error;
};

/// Strict-mode error-map query for an instruction the calibration does not cover.
struct CalibrationLookupError : Error {
    using Error::Error;
};

/// A circuit could not be embedded into a coupling map.
struct NoEmbeddingError : Error {
    NoEmbeddingError(const std::string& msg, bool search_exhausted)
        : Error(msg), search_exhausted(search_exhausted) {}
    /// False when a search budget ran out before the search space was covered,
    /// i.e. embeddings may exist that were never visited.
    bool search_exhausted;
};

/// Noise-oracle preconditions violated (too many qubits, zero shots, unknown gate).
struct SimulationError : Error {
    using Error::Error;
};

}  // namespace laymat
