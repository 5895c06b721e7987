// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etrace {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Malformed input document (fixture, ABI file, RPC payload, config).
class ParseError : public Error {
  public:
    using Error::Error;
};

//! Well-formed input whose values break a domain invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class TransportError : public Error {
  public:
    TransportError(const std::string& what, bool retriable) : Error(what), retriable_{retriable} {}
    [[nodiscard]] bool retriable() const noexcept { return retriable_; }

  private:
    bool retriable_;
};

class NotFoundError : public Error {
  public:
    using Error::Error;
};

class DecodeError : public Error {
  public:
    using Error::Error;
};

class ConflictError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace etrace
