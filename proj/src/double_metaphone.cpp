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

#include "speller/double_metaphone.hpp"

#include <initializer_list>

#include "speller/text.hpp"

namespace speller {
namespace {

constexpr char kCedilla = '\x01';
constexpr std::size_t kMaxCodeLength = 4;

std::string prepare(std::string_view word) {
  std::string out;
  for (char32_t c : to_u32(word)) {
    if (c < 0x80) {
      char ch = static_cast<char>(c);
      if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
      if ((ch >= 'A' && ch <= 'Z') || ch == ' ') out.push_back(ch);
      continue;
    }
    switch (c) {
      case U'ç': case U'Ç': out.push_back(kCedilla); break;
      case U'ñ': case U'Ñ': out.push_back('N'); break;
      case U'à': case U'á': case U'â': case U'ä': case U'ã': case U'å':
      case U'À': case U'Á': case U'Â': case U'Ä': case U'Ã': case U'Å':
        out.push_back('A'); break;
      case U'è': case U'é': case U'ê': case U'ë':
      case U'È': case U'É': case U'Ê': case U'Ë':
        out.push_back('E'); break;
      case U'ì': case U'í': case U'î': case U'ï':
      case U'Ì': case U'Í': case U'Î': case U'Ï':
        out.push_back('I'); break;
      case U'ò': case U'ó': case U'ô': case U'ö': case U'õ':
      case U'Ò': case U'Ó': case U'Ô': case U'Ö': case U'Õ':
        out.push_back('O'); break;
      case U'ù': case U'ú': case U'û': case U'ü':
      case U'Ù': case U'Ú': case U'Û': case U'Ü':
        out.push_back('U'); break;
      case U'ý': case U'ÿ': case U'Ý': out.push_back('Y'); break;
      case U'ß': out.append("SS"); break;
      default: break;
    }
  }
  return out;
}

class Encoder {
 public:
  explicit Encoder(std::string word)
      : word_(std::move(word)),
        length_(static_cast<int>(word_.size())),
        last_(length_ - 1) {
    padded_ = word_ + "     ";
    slavo_germanic_ = word_.find('W') != std::string::npos ||
                      word_.find('K') != std::string::npos ||
                      word_.find("CZ") != std::string::npos ||
                      word_.find("WITZ") != std::string::npos;
  }

  MetaphoneCodes run();

 private:
  char at(int i) const {
    if (i < 0 || i >= static_cast<int>(padded_.size())) return '\0';
    return padded_[static_cast<std::size_t>(i)];
  }

  bool is_vowel(int i) const {
    if (i < 0 || i >= length_) return false;
    const char c = word_[static_cast<std::size_t>(i)];
    return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U' || c == 'Y';
  }

  bool string_at(int start, int len,
                 std::initializer_list<std::string_view> options) const {
    if (start < 0 || start >= static_cast<int>(padded_.size())) return false;
    const std::string_view piece = std::string_view(padded_).substr(
        static_cast<std::size_t>(start), static_cast<std::size_t>(len));
    for (auto opt : options) {
      if (piece == opt) return true;
    }
    return false;
  }

  void add(std::string_view main) {
    primary_.append(main);
    alternate_.append(main);
  }

  void add(std::string_view main, std::string_view alt) {
    primary_.append(main);
    alternate_.append(alt);
  }

  void encode_c();
  void encode_g();
  void encode_j();
  void encode_l();
  void encode_s();
  void encode_t();
  void encode_w();

  std::string word_;
  std::string padded_;
  int length_;
  int last_;
  int current_ = 0;
  bool slavo_germanic_ = false;
  std::string primary_;
  std::string alternate_;
};

void Encoder::encode_c() {
  const int c = current_;
  // Germanic "-ach-" as in "bacher", "macher".
  if (c > 1 && !is_vowel(c - 2) && string_at(c - 1, 3, {"ACH"}) &&
      at(c + 2) != 'I' &&
      (at(c + 2) != 'E' || string_at(c - 2, 6, {"BACHER", "MACHER"}))) {
    add("K");
    current_ += 2;
    return;
  }
  if (c == 0 && string_at(c, 6, {"CAESAR"})) {
    add("S");
    current_ += 2;
    return;
  }
  if (string_at(c, 4, {"CHIA"})) {
    add("K");
    current_ += 2;
    return;
  }
  if (string_at(c, 2, {"CH"})) {
    if (c > 0 && string_at(c, 4, {"CHAE"})) {
      add("K", "X");
      current_ += 2;
      return;
    }
    // Greek roots: "chemistry", "chorus".
    if (c == 0 &&
        (string_at(c + 1, 5, {"HARAC", "HARIS"}) ||
         string_at(c + 1, 3, {"HOR", "HYM", "HIA", "HEM"})) &&
        !string_at(0, 5, {"CHORE"})) {
      add("K");
      current_ += 2;
      return;
    }
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) ||
        string_at(c - 2, 6, {"ORCHES", "ARCHIT", "ORCHID"}) ||
        string_at(c + 2, 1, {"T", "S"}) ||
        ((string_at(c - 1, 1, {"A", "O", "U", "E"}) || c == 0) &&
         string_at(c + 2, 1, {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}))) {
      add("K");
    } else if (c > 0) {
      if (string_at(0, 2, {"MC"})) {
        add("K");
      } else {
        add("X", "K");
      }
    } else {
      add("X");
    }
    current_ += 2;
    return;
  }
  if (string_at(c, 2, {"CZ"}) && !string_at(c - 2, 4, {"WICZ"})) {
    add("S", "X");
    current_ += 2;
    return;
  }
  if (string_at(c + 1, 3, {"CIA"})) {
    add("X");
    current_ += 3;
    return;
  }
  if (string_at(c, 2, {"CC"}) && !(c == 1 && at(0) == 'M')) {
    if (string_at(c + 2, 1, {"I", "E", "H"}) && !string_at(c + 2, 2, {"HU"})) {
      if ((c == 1 && at(c - 1) == 'A') ||
          string_at(c - 1, 5, {"UCCEE", "UCCES"})) {
        add("KS");
      } else {
        add("X");
      }
      current_ += 3;
      return;
    }
    add("K");
    current_ += 2;
    return;
  }
  if (string_at(c, 2, {"CK", "CG", "CQ"})) {
    add("K");
    current_ += 2;
    return;
  }
  if (string_at(c, 2, {"CI", "CE", "CY"})) {
    if (string_at(c, 3, {"CIO", "CIE", "CIA"})) {
      add("S", "X");
    } else {
      add("S");
    }
    current_ += 2;
    return;
  }
  add("K");
  if (string_at(c + 1, 2, {" C", " Q", " G"})) {
    current_ += 3;
  } else if (string_at(c + 1, 1, {"C", "K", "Q"}) &&
             !string_at(c + 1, 2, {"CE", "CI"})) {
    current_ += 2;
  } else {
    current_ += 1;
  }
}

void Encoder::encode_g() {
  const int c = current_;
  if (at(c + 1) == 'H') {
    if (c > 0 && !is_vowel(c - 1)) {
      add("K");
      current_ += 2;
      return;
    }
    if (c == 0) {
      // "ghislane", "ghiradelli"
      add(at(c + 2) == 'I' ? "J" : "K");
      current_ += 2;
      return;
    }
    // Parker's rule: "hugh", "bough", "broughton".
    if ((c > 1 && string_at(c - 2, 1, {"B", "H", "D"})) ||
        (c > 2 && string_at(c - 3, 1, {"B", "H", "D"})) ||
        (c > 3 && string_at(c - 4, 1, {"B", "H"}))) {
      current_ += 2;
      return;
    }
    // "laugh", "cough", "rough", "tough"
    if (c > 2 && at(c - 1) == 'U' &&
        string_at(c - 3, 1, {"C", "G", "L", "R", "T"})) {
      add("F");
    } else if (c > 0 && at(c - 1) != 'I') {
      add("K");
    }
    current_ += 2;
    return;
  }
  if (at(c + 1) == 'N') {
    if (c == 1 && is_vowel(0) && !slavo_germanic_) {
      add("KN", "N");
    } else if (!string_at(c + 2, 2, {"EY"}) && at(c + 1) != 'Y' &&
               !slavo_germanic_) {
      add("N", "KN");
    } else {
      add("KN");
    }
    current_ += 2;
    return;
  }
  if (string_at(c + 1, 2, {"LI"}) && !slavo_germanic_) {
    add("KL", "L");
    current_ += 2;
    return;
  }
  if (c == 0 && (at(c + 1) == 'Y' ||
                 string_at(c + 1, 2, {"ES", "EP", "EB", "EL", "EY", "IB", "IL",
                                      "IN", "IE", "EI", "ER"}))) {
    add("K", "J");
    current_ += 2;
    return;
  }
  if ((string_at(c + 1, 2, {"ER"}) || at(c + 1) == 'Y') &&
      !string_at(0, 6, {"DANGER", "RANGER", "MANGER"}) &&
      !string_at(c - 1, 1, {"E", "I"}) && !string_at(c - 1, 3, {"RGY", "OGY"})) {
    add("K", "J");
    current_ += 2;
    return;
  }
  if (string_at(c + 1, 1, {"E", "I", "Y"}) ||
      string_at(c - 1, 4, {"AGGI", "OGGI"})) {
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) ||
        string_at(c + 1, 2, {"ET"})) {
      add("K");
    } else if (string_at(c + 1, 4, {"IER "})) {
      add("J");
    } else {
      add("J", "K");
    }
    current_ += 2;
    return;
  }
  current_ += at(c + 1) == 'G' ? 2 : 1;
  add("K");
}

void Encoder::encode_j() {
  const int c = current_;
  if (string_at(c, 4, {"JOSE"}) || string_at(0, 4, {"SAN "})) {
    if ((c == 0 && at(c + 4) == ' ') || string_at(0, 4, {"SAN "})) {
      add("H");
    } else {
      add("J", "H");
    }
    current_ += 1;
    return;
  }
  if (c == 0 && !string_at(c, 4, {"JOSE"})) {
    add("J", "A");
  } else if (is_vowel(c - 1) && !slavo_germanic_ &&
             (at(c + 1) == 'A' || at(c + 1) == 'O')) {
    add("J", "H");
  } else if (c == last_) {
    add("J", "");
  } else if (!string_at(c + 1, 1, {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
             !string_at(c - 1, 1, {"S", "K", "L"})) {
    add("J");
  }
  current_ += at(c + 1) == 'J' ? 2 : 1;
}

void Encoder::encode_l() {
  const int c = current_;
  if (at(c + 1) == 'L') {
    // Spanish "cabrillo", "gallegos"
    if ((c == length_ - 3 && string_at(c - 1, 4, {"ILLO", "ILLA", "ALLE"})) ||
        ((string_at(last_ - 1, 2, {"AS", "OS"}) ||
          string_at(last_, 1, {"A", "O"})) &&
         string_at(c - 1, 4, {"ALLE"}))) {
      add("L", "");
      current_ += 2;
      return;
    }
    current_ += 2;
  } else {
    current_ += 1;
  }
  add("L");
}

void Encoder::encode_s() {
  const int c = current_;
  if (string_at(c - 1, 3, {"ISL", "YSL"})) {
    current_ += 1;
    return;
  }
  if (c == 0 && string_at(c, 5, {"SUGAR"})) {
    add("X", "S");
    current_ += 1;
    return;
  }
  if (string_at(c, 2, {"SH"})) {
    add(string_at(c + 1, 4, {"HEIM", "HOEK", "HOLM", "HOLZ"}) ? "S" : "X");
    current_ += 2;
    return;
  }
  if (string_at(c, 3, {"SIO", "SIA"}) || string_at(c, 4, {"SIAN"})) {
    if (slavo_germanic_) {
      add("S");
    } else {
      add("S", "X");
    }
    current_ += 3;
    return;
  }
  if ((c == 0 && string_at(c + 1, 1, {"M", "N", "L", "W"})) ||
      string_at(c + 1, 1, {"Z"})) {
    add("S", "X");
    current_ += string_at(c + 1, 1, {"Z"}) ? 2 : 1;
    return;
  }
  if (string_at(c, 2, {"SC"})) {
    if (at(c + 2) == 'H') {
      if (string_at(c + 3, 2, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
        if (string_at(c + 3, 2, {"ER", "EN"})) {
          add("X", "SK");
        } else {
          add("SK");
        }
      } else if (c == 0 && !is_vowel(3) && at(3) != 'W') {
        add("X", "S");
      } else {
        add("X");
      }
      current_ += 3;
      return;
    }
    add(string_at(c + 2, 1, {"I", "E", "Y"}) ? "S" : "SK");
    current_ += 3;
    return;
  }
  if (c == last_ && string_at(c - 2, 2, {"AI", "OI"})) {
    add("", "S");
  } else {
    add("S");
  }
  current_ += string_at(c + 1, 1, {"S", "Z"}) ? 2 : 1;
}

void Encoder::encode_t() {
  const int c = current_;
  if (string_at(c, 4, {"TION"}) || string_at(c, 3, {"TIA", "TCH"})) {
    add("X");
    current_ += 3;
    return;
  }
  if (string_at(c, 2, {"TH"}) || string_at(c, 3, {"TTH"})) {
    if (string_at(c + 2, 2, {"OM", "AM"}) || string_at(0, 4, {"VAN ", "VON "}) ||
        string_at(0, 3, {"SCH"})) {
      add("T");
    } else {
      add("0", "T");
    }
    current_ += 2;
    return;
  }
  current_ += string_at(c + 1, 1, {"T", "D"}) ? 2 : 1;
  add("T");
}

void Encoder::encode_w() {
  const int c = current_;
  if (string_at(c, 2, {"WR"})) {
    add("R");
    current_ += 2;
    return;
  }
  if (c == 0 && (is_vowel(c + 1) || string_at(c, 2, {"WH"}))) {
    if (is_vowel(c + 1)) {
      add("A", "F");
    } else {
      add("A");
    }
  }
  if ((c == last_ && is_vowel(c - 1)) ||
      string_at(c - 1, 5, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) ||
      string_at(0, 3, {"SCH"})) {
    add("", "F");
    current_ += 1;
    return;
  }
  if (string_at(c, 4, {"WICZ", "WITZ"})) {
    add("TS", "FX");
    current_ += 4;
    return;
  }
  current_ += 1;
}

MetaphoneCodes Encoder::run() {
  if (length_ < 1) return {};
  if (string_at(0, 2, {"GN", "KN", "PN", "WR", "PS"})) current_ += 1;
  if (at(0) == 'X') {
    add("S");
    current_ += 1;
  }

  while (primary_.size() < kMaxCodeLength || alternate_.size() < kMaxCodeLength) {
    if (current_ >= length_) break;
    const int c = current_;
    switch (at(c)) {
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
        if (c == 0) add("A");
        current_ += 1;
        break;
      case 'B':
        add("P");
        current_ += at(c + 1) == 'B' ? 2 : 1;
        break;
      case kCedilla:
        add("S");
        current_ += 1;
        break;
      case 'C':
        encode_c();
        break;
      case 'D':
        if (string_at(c, 2, {"DG"})) {
          if (string_at(c + 2, 1, {"I", "E", "Y"})) {
            add("J");
            current_ += 3;
          } else {
            add("TK");
            current_ += 2;
          }
        } else if (string_at(c, 2, {"DT", "DD"})) {
          add("T");
          current_ += 2;
        } else {
          add("T");
          current_ += 1;
        }
        break;
      case 'F':
        add("F");
        current_ += at(c + 1) == 'F' ? 2 : 1;
        break;
      case 'G':
        encode_g();
        break;
      case 'H':
        if ((c == 0 || is_vowel(c - 1)) && is_vowel(c + 1)) {
          add("H");
          current_ += 2;
        } else {
          current_ += 1;
        }
        break;
      case 'J':
        encode_j();
        break;
      case 'K':
        add("K");
        current_ += at(c + 1) == 'K' ? 2 : 1;
        break;
      case 'L':
        encode_l();
        break;
      case 'M':
        if ((string_at(c - 1, 3, {"UMB"}) &&
             (c + 1 == last_ || string_at(c + 2, 2, {"ER"}))) ||
            at(c + 1) == 'M') {
          current_ += 2;
        } else {
          current_ += 1;
        }
        add("M");
        break;
      case 'N':
        add("N");
        current_ += at(c + 1) == 'N' ? 2 : 1;
        break;
      case 'P':
        if (at(c + 1) == 'H') {
          add("F");
          current_ += 2;
        } else {
          add("P");
          current_ += string_at(c + 1, 1, {"P", "B"}) ? 2 : 1;
        }
        break;
      case 'Q':
        add("K");
        current_ += at(c + 1) == 'Q' ? 2 : 1;
        break;
      case 'R':
        // French "rogier", but not "hochmeier".
        if (c == last_ && !slavo_germanic_ && string_at(c - 2, 2, {"IE"}) &&
            !string_at(c - 4, 2, {"ME", "MA"})) {
          add("", "R");
        } else {
          add("R");
        }
        current_ += at(c + 1) == 'R' ? 2 : 1;
        break;
      case 'S':
        encode_s();
        break;
      case 'T':
        encode_t();
        break;
      case 'V':
        add("F");
        current_ += at(c + 1) == 'V' ? 2 : 1;
        break;
      case 'W':
        encode_w();
        break;
      case 'X':
        // French "breaux"
        if (!(c == last_ && (string_at(c - 3, 3, {"IAU", "EAU"}) ||
                             string_at(c - 2, 2, {"AU", "OU"})))) {
          add("KS");
        }
        current_ += string_at(c + 1, 1, {"C", "X"}) ? 2 : 1;
        break;
      case 'Z':
        if (at(c + 1) == 'H') {
          add("J");
          current_ += 2;
          break;
        }
        if (string_at(c + 1, 2, {"ZO", "ZI", "ZA"}) ||
            (slavo_germanic_ && c > 0 && at(c - 1) != 'T')) {
          add("S", "TS");
        } else {
          add("S");
        }
        current_ += at(c + 1) == 'Z' ? 2 : 1;
        break;
      default:
        current_ += 1;
        break;
    }
  }

  MetaphoneCodes codes;
  codes.primary = primary_.substr(0, kMaxCodeLength);
  codes.alternate = alternate_.substr(0, kMaxCodeLength);
  if (codes.alternate == codes.primary) codes.alternate.clear();
  return codes;
}

}  // namespace

MetaphoneCodes double_metaphone(std::string_view word) {
  return Encoder(prepare(word)).run();
}

}  // namespace speller
