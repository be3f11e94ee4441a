#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "commscore/ingest.hpp"

namespace commscore {

/// Disjoint lowercase positive and negative word sets.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  /// Throws Error when the sets overlap. Words are lowercased.
  SentimentLexicon(std::set<std::string> positive, std::set<std::string> negative);

  /// Text with `[positive]` / `[negative]` sections, one word per line,
  /// '#' comments and blank lines ignored.
  static SentimentLexicon parse(std::istream& in);
  static SentimentLexicon load(const std::filesystem::path& path);

  /// The versioned word list shipped with the library.
  static const SentimentLexicon& bundled();

  const std::set<std::string>& positive() const noexcept { return positive_; }
  const std::set<std::string>& negative() const noexcept { return negative_; }

  /// Stable digest of both word lists, for report fingerprints.
  std::string digest() const;

 private:
  std::set<std::string> positive_;
  std::set<std::string> negative_;
};

enum class Sentiment { positive, negative, neutral };

std::string_view to_string(Sentiment s);

/// Lowercase runs of ASCII letters/digits; bytes >= 0x80 are kept inside
/// words so UTF-8 text is not split.
std::vector<std::string> tokenize(std::string_view text);

Sentiment sentiment(std::string_view subject, const SentimentLexicon& lexicon);

enum class EmotionalityMode { cumulative, normalized };

EmotionalityMode parse_emotionality_mode(std::string_view name);
std::string_view to_string(EmotionalityMode m);

/// cumulative: number of positive subjects; normalized: that number over all
/// messages (0 for an empty corpus).
double emotionality(const TeamCorpus& corpus, const SentimentLexicon& lexicon,
                    EmotionalityMode mode = EmotionalityMode::cumulative);

}  // namespace commscore
