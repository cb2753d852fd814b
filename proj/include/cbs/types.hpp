// Copyright 2026 The cbsearch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBS_TYPES_HPP
#define CBS_TYPES_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbs {

using VarId = int;
using Value = int;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

enum class Consistency { kForwardChecking, kBounds, kDomain };

std::string_view to_string(Consistency c);
Consistency consistency_from_string(std::string_view name);

enum class PropStatus { kConsistent, kWipeout };

// Kinds map one-to-one onto the C API status codes.
enum class ErrorKind { kInvalidArgument, kParse, kIo, kUnknownName, kCapExceeded };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cbs

#endif  // CBS_TYPES_HPP
