/*
 * Copyright 2026 The fuzzydd authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzydd {

/// Base class of everything this library throws.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside its legal range (grade above 10^p, element outside
/// the universe, unsupported precision, degenerate domain size).
class domain_error : public error {
 public:
  using error::error;
};

/// An operation was applied to incompatible operands (mismatched tables,
/// universes, sizes or precisions) or to a handle the table does not own.
class usage_error : public error {
 public:
  using error::error;
};

/// A diagram construction step would violate structural ordering
/// (node level not strictly above its children, partition level too deep).
class structure_error : public error {
 public:
  using error::error;
};

/// The node arena reached its configured capacity.
class capacity_error : public error {
 public:
  using error::error;
};

/// An operation's precondition does not hold (e.g. closure of a
/// non-reflexive relation).
class precondition_error : public error {
 public:
  using error::error;
};

/// Malformed input data. `position()` is a byte offset for binary inputs
/// and a 1-based line number for line-oriented text inputs; the message
/// says which.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fuzzydd
