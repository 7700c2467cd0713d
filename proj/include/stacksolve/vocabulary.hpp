#pragma once
// Object vocabularies: everyday household items and out-of-distribution
// items. Loaded from a sectioned text file ("[household]" / "[ood]", one name
// per line, '#' comments).

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stacksolve/core.hpp"

namespace stacksolve {

class VocabularyError : public Error {
 public:
  using Error::Error;
};

struct Vocabulary {
  std::vector<std::string> household;
  std::vector<std::string> ood;

  bool is_ood(const std::string& name) const {
    return std::find(ood.begin(), ood.end(), name) != ood.end();
  }

  ObjectId object(const std::string& name) const { return {name, is_ood(name)}; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

  /// The shipped default; data/vocabulary.txt holds the same lists.
  static const Vocabulary& builtin();
};

namespace detail {

// Phrases the sentence templates use as delimiters; a name containing one
// would make the inverse parse ambiguous.
inline const std::vector<std::string>& reserved_phrases() {
  static const std::vector<std::string> k{"table", "is on", "rests on", "nothing on", "onto", "the"};
  return k;
}

inline bool contains_word_sequence(const std::string& haystack, const std::string& needle) {
  const std::string h = " " + haystack + " ";
  return h.find(" " + needle + " ") != std::string::npos;
}

}  // namespace detail

/// Names must be lower-case words separated by single spaces, without
/// hyphens, and must not collide with template keywords.
inline bool valid_object_name(const std::string& name) {
  if (name.empty() || name.front() == ' ' || name.back() == ' ') return false;
  char prev = 0;
  for (char c : name) {
    if (c == ' ') {
      if (prev == ' ') return false;
    } else if (c < 'a' || c > 'z') {
      return false;
    }
    prev = c;
  }
  for (const auto& phrase : detail::reserved_phrases())
    if (detail::contains_word_sequence(name, phrase)) return false;
  return true;
}

/// Throws VocabularyError if the lists overlap, contain invalid names, or one
/// name occurs as a word sequence inside another.
inline void check_vocabulary(const Vocabulary& v) {
  std::vector<std::string> all = v.household;
  all.insert(all.end(), v.ood.begin(), v.ood.end());
  std::set<std::string> seen;
  for (const auto& n : all) {
    if (!valid_object_name(n)) throw VocabularyError("invalid object name '" + n + "'");
    if (!seen.insert(n).second) throw VocabularyError("duplicate object name '" + n + "'");
  }
  for (const auto& a : all)
    for (const auto& b : all)
      if (a != b && detail::contains_word_sequence(b, a))
        throw VocabularyError("'" + a + "' occurs inside '" + b + "'");
}

inline Vocabulary parse_vocabulary(std::istream& in) {
  Vocabulary v;
  std::vector<std::string>* section = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line.erase(0, start);
    if (line.empty()) continue;
    if (line == "[household]") {
      section = &v.household;
    } else if (line == "[ood]") {
      section = &v.ood;
    } else if (line.front() == '[') {
      throw VocabularyError("line " + std::to_string(lineno) + ": unknown section " + line);
    } else if (!section) {
      throw VocabularyError("line " + std::to_string(lineno) + ": name outside of a section");
    } else {
      section->push_back(line);
    }
  }
  check_vocabulary(v);
  return v;
}

inline Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VocabularyError("cannot open vocabulary file " + path);
  return parse_vocabulary(in);
}

inline std::string format_vocabulary(const Vocabulary& v) {
  std::ostringstream os;
  os << "[household]\n";
  for (const auto& n : v.household) os << n << "\n";
  os << "\n[ood]\n";
  for (const auto& n : v.ood) os << n << "\n";
  return os.str();
}

inline const Vocabulary& Vocabulary::builtin() {
  static const Vocabulary v = [] {
    Vocabulary out{
        {"plate", "keyboard", "writing pad", "notebook", "tissue box", "tablet", "mug",
         "bowl", "laptop", "lamp", "vase", "candle", "coaster", "remote control",
         "cutting board", "napkin", "magazine", "picture frame", "fruit basket", "teapot",
         "saucer", "wallet", "calculator", "stapler"},
        {"meteorite", "corduroy pants", "anvil", "canoe", "traffic cone", "bowling ball",
         "tire", "cinder block", "saddle", "accordion", "surfboard", "beehive"}};
    check_vocabulary(out);
    return out;
  }();
  return v;
}

}  // namespace stacksolve
