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

// Unrestricted Damerau-Levenshtein distance over code points: the minimum
// number of insertions, deletions, substitutions and adjacent transpositions
// turning `a` into `b` (Lowrance-Wagner).
int damerau_levenshtein(std::u32string_view a, std::u32string_view b);

// UTF-8 convenience overload.
int damerau_levenshtein(std::string_view a, std::string_view b);

// Same metric, but returns `max_distance + 1` as soon as the length gap
// alone proves the distance exceeds `max_distance`.
int damerau_levenshtein_bounded(std::u32string_view a, std::u32string_view b,
                                int max_distance);

}  // namespace speller
