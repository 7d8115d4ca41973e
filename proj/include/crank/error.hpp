/*
 * Copyright 2026 The crank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CRANK_ERROR_HPP_
#define CRANK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace crank {

// Base class for every error raised by the library: precondition violations,
// dimension mismatches and degenerate inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model or dataset text. The message names the offending field or
// row.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace crank

#endif  // CRANK_ERROR_HPP_
