// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace latham {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape or size mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Window or index outside the valid range.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// A structural invariant does not hold (symmetry, rank metadata, block layout).
class StructureError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be positive definite is not.
class DefinitenessError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap would be exceeded; the operation is refused.
class ResourceCapError : public Error {
public:
    using Error::Error;
};

}  // namespace latham
