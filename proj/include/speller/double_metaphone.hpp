// Copyright 2026 The Speller Authors
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

#pragma once

#include <string>
#include <string_view>

namespace speller {

struct MetaphoneCodes {
  std::string primary;
  std::string alternate;  // empty when identical to primary
};

// Lawrence Philips' Double Metaphone, codes truncated to 4 characters.
// Input is UTF-8; Latin accented letters are folded to their base letter
// (ç keeps its own S rule, ñ encodes as N) and other symbols are ignored.
MetaphoneCodes double_metaphone(std::string_view word);

}  // namespace speller
