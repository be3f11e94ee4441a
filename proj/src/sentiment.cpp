#include "commscore/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

namespace {

constexpr const char* kBundledLexicon =
#include "default_lexicon.inc"
    ;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

SentimentLexicon::SentimentLexicon(std::set<std::string> positive, std::set<std::string> negative) {
  for (const auto& w : positive) positive_.insert(lower(w));
  for (const auto& w : negative) negative_.insert(lower(w));
  for (const auto& w : positive_) {
    if (negative_.contains(w))
      throw Error(fmt::format("lexicon word '{}' is both positive and negative", w));
  }
}

SentimentLexicon SentimentLexicon::parse(std::istream& in) {
  std::set<std::string> pos, neg;
  std::set<std::string>* section = nullptr;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string l = lower(t);
    if (l == "[positive]") {
      section = &pos;
    } else if (l == "[negative]") {
      section = &neg;
    } else if (section == nullptr) {
      throw Error(fmt::format("lexicon line {}: word outside a [positive]/[negative] section", lineno));
    } else {
      section->insert(l);
    }
  }
  return SentimentLexicon{std::move(pos), std::move(neg)};
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open lexicon '{}'", path.string()));
  return parse(in);
}

const SentimentLexicon& SentimentLexicon::bundled() {
  static const SentimentLexicon lexicon = [] {
    std::istringstream in(kBundledLexicon);
    return parse(in);
  }();
  return lexicon;
}

std::string SentimentLexicon::digest() const {
  std::string all = "+";
  for (const auto& w : positive_) all += w + "\n";
  all += "-";
  for (const auto& w : negative_) all += w + "\n";
  return fmt::format("{:016x}", fnv1a64(all));
}

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return "positive";
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
  }
  return "?";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

Sentiment sentiment(std::string_view subject, const SentimentLexicon& lexicon) {
  std::size_t pos = 0, neg = 0;
  for (const auto& w : tokenize(subject)) {
    if (lexicon.positive().contains(w)) ++pos;
    if (lexicon.negative().contains(w)) ++neg;
  }
  if (pos > neg) return Sentiment::positive;
  if (neg > pos) return Sentiment::negative;
  return Sentiment::neutral;
}

EmotionalityMode parse_emotionality_mode(std::string_view name) {
  if (name == "cumulative") return EmotionalityMode::cumulative;
  if (name == "normalized") return EmotionalityMode::normalized;
  throw Error(fmt::format("emotionality mode '{}' is not 'cumulative' or 'normalized'", name));
}

std::string_view to_string(EmotionalityMode m) {
  return m == EmotionalityMode::cumulative ? "cumulative" : "normalized";
}

double emotionality(const TeamCorpus& corpus, const SentimentLexicon& lexicon,
                    EmotionalityMode mode) {
  const auto events = corpus.events();
  if (events.empty()) return 0.0;
  std::size_t positive = 0;
  for (const auto& e : events) {
    if (sentiment(e.subject, lexicon) == Sentiment::positive) ++positive;
  }
  if (mode == EmotionalityMode::cumulative) return static_cast<double>(positive);
  return static_cast<double>(positive) / static_cast<double>(events.size());
}

}  // namespace commscore
