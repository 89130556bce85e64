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

#ifndef URBANTEXT_PORTER_HPP
#define URBANTEXT_PORTER_HPP

#include <string>

namespace urbantext::text {

/// Porter (1980) suffix stripper, steps 1a through 5b as published.
/// Expects a lowercase ASCII token; words of length <= 2 and tokens with
/// non-ASCII bytes pass through unchanged (the algorithm is defined for
/// English).
std::string porter_stem(const std::string& token);

}  // namespace urbantext::text

#endif  // URBANTEXT_PORTER_HPP
