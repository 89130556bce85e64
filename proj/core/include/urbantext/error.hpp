// Copyright 2026 The urbantext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URBANTEXT_ERROR_HPP
#define URBANTEXT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace urbantext {

/// Bad user-supplied data: malformed files, out-of-range parameters,
/// unknown keys. The CLI maps this to exit code 1.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A broken internal contract. The CLI maps this to exit code 2.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace urbantext

#endif  // URBANTEXT_ERROR_HPP
