#ifndef IDEOLEX_ONTOLOGY_HPP
#define IDEOLEX_ONTOLOGY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ideolex/core.hpp"

namespace ideolex {

/// A manually annotated training word: its characters plus a one-hot
/// sentiment vector.
struct TrainingWord {
  std::u32string chars;
  SentimentVector vector;

  TrainingWord(std::u32string c, SentimentVector v)
      : chars(std::move(c)), vector(std::move(v)) {
    if (chars.empty())
      throw std::invalid_argument("training word has no characters");
    if (!vector.is_one_hot())
      throw std::invalid_argument("training word vector is not one-hot");
  }

  friend bool operator==(const TrainingWord&, const TrainingWord&) = default;
};

struct TrainingLexicon {
  SentimentScheme scheme;
  std::vector<TrainingWord> words;

  // Every category must be the orientation of at least one training word.
  // Returns the list of uncovered category indices (empty when valid).
  std::vector<std::size_t> uncovered_categories() const {
    std::vector<bool> covered(scheme.size(), false);
    for (const auto& w : words)
      covered[orientation(w.vector).index] = true;
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) missing.push_back(i);
    return missing;
  }
};

struct NegationSet {
  std::set<char32_t> chars;

  bool contains(char32_t c) const { return chars.count(c) != 0; }
};

/// The three governing parameters: support threshold T and the scaled
/// variance bounds LVB/UVB.
struct BuilderParams {
  int threshold = 1;
  double lvb = 0.0;
  double uvb = 1.0;

  void validate() const {
    if (threshold < 1)
      throw std::invalid_argument("threshold must be >= 1");
    if (!(lvb >= 0.0) || !(lvb <= uvb))
      throw std::invalid_argument("bounds must satisfy 0 <= LVB <= UVB");
  }
};

struct CharacterEntry {
  char32_t ch = 0;
  SentimentVector vector;
  bool is_key = false;
  std::size_t support = 0;

  friend bool operator==(const CharacterEntry&, const CharacterEntry&) = default;
};

enum class RejectionReason {
  LowSupport,       // support count below T
  Nonsentiment,     // scaled variance below LVB
  UndeterminedVector,  // every supporting occurrence was negated
};

inline const char* to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::LowSupport: return "LowSupport";
    case RejectionReason::Nonsentiment: return "Nonsentiment";
    case RejectionReason::UndeterminedVector: return "UndeterminedVector";
  }
  return "?";
}

struct Diagnostic {
  char32_t ch = 0;
  RejectionReason reason = RejectionReason::LowSupport;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// The trained artifact: admitted characters with sentiment vectors, key
/// flags and support counts, plus everything needed to reproduce or apply
/// the build.
struct CharacterOntology {
  SentimentScheme scheme;
  BuilderParams params;
  NegationSet negations;
  std::map<char32_t, CharacterEntry> entries;
  std::vector<Diagnostic> diagnostics;

  const CharacterEntry* find(char32_t c) const {
    auto it = entries.find(c);
    return it == entries.end() ? nullptr : &it->second;
  }
};

/// Training words containing c at least once. Each word counts once no
/// matter how often c occurs in it.
inline std::vector<TrainingWord> collect_support(char32_t c,
                                                 const TrainingLexicon& lexicon) {
  std::vector<TrainingWord> support;
  for (const auto& w : lexicon.words)
    if (w.chars.find(c) != std::u32string::npos) support.push_back(w);
  return support;
}

namespace detail {

// True when some occurrence of c in the word is immediately preceded by a
// negation character.
inline bool occurrence_negated(char32_t c, const std::u32string& word,
                               const NegationSet& negations) {
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] == c && i > 0 && negations.contains(word[i - 1])) return true;
  return false;
}

}  // namespace detail

/// Mean sentiment vector of the supporting words, with negated occurrences
/// contributing a one-hot at the orientation of the plain-word base sum.
/// Returns nullopt when every supporting word is negated (no base
/// orientation exists to reverse onto).
inline std::optional<SentimentVector> char_vector(char32_t c,
                                                  std::span<const TrainingWord> support,
                                                  const NegationSet& negations) {
  if (support.empty())
    throw std::invalid_argument("char_vector with empty support");
  if (negations.contains(c))
    throw std::invalid_argument("char_vector called on a negation character");
  const std::size_t n = support.front().vector.size();
  std::vector<double> sum(n, 0.0);
  std::size_t negated = 0;
  for (const auto& w : support) {
    if (detail::occurrence_negated(c, w.chars, negations)) {
      ++negated;
    } else {
      for (std::size_t i = 0; i < n; ++i) sum[i] += w.vector[i];
    }
  }
  if (negated > 0) {
    if (negated == support.size()) return std::nullopt;
    const std::size_t m = argmax(sum).index;
    sum[m] += static_cast<double>(negated);
  }
  for (double& s : sum) s /= static_cast<double>(support.size());
  for (double& s : sum) s = std::min(1.0, std::max(0.0, s));
  return SentimentVector(std::move(sum));
}

enum class AdmissionStatus { Admitted, RejectedLowSupport, RejectedNonsentiment };

struct AdmissionResult {
  AdmissionStatus status = AdmissionStatus::Admitted;
  std::optional<CharacterEntry> entry;  // engaged iff status == Admitted
};

/// Admission rule: support must reach T; scaled variance below LVB rejects
/// as nonsentiment; strictly above UVB promotes to key with a permanent
/// one-hot vector. Equality at either bound is not strict: v == LVB admits,
/// v == UVB stays non-key.
inline AdmissionResult admit(char32_t c, const SentimentVector& vector,
                             std::size_t support_count, const BuilderParams& params) {
  params.validate();
  if (support_count < static_cast<std::size_t>(params.threshold))
    return {AdmissionStatus::RejectedLowSupport, std::nullopt};
  const double v = scaled_variance(vector);
  if (v < params.lvb)
    return {AdmissionStatus::RejectedNonsentiment, std::nullopt};
  if (v > params.uvb) {
    auto key_vec = one_hot(vector.size(), orientation(vector).index);
    return {AdmissionStatus::Admitted,
            CharacterEntry{c, std::move(key_vec), true, support_count}};
  }
  return {AdmissionStatus::Admitted, CharacterEntry{c, vector, false, support_count}};
}

/// Runs collect_support -> char_vector -> admit for every distinct
/// non-negation character in the lexicon. Deterministic: each character
/// depends only on its own support set.
inline CharacterOntology build_ontology(const TrainingLexicon& lexicon,
                                        const BuilderParams& params,
                                        const NegationSet& negations) {
  params.validate();
  if (auto missing = lexicon.uncovered_categories(); !missing.empty()) {
    std::string msg = "training lexicon has no word for category:";
    for (std::size_t i : missing) msg += " " + lexicon.scheme.name(i);
    throw std::invalid_argument(msg);
  }
  std::set<char32_t> chars;
  for (const auto& w : lexicon.words)
    for (char32_t c : w.chars)
      if (!negations.contains(c)) chars.insert(c);

  CharacterOntology onto{lexicon.scheme, params, negations, {}, {}};
  for (char32_t c : chars) {
    auto support = collect_support(c, lexicon);
    auto vec = char_vector(c, support, negations);
    if (!vec) {
      onto.diagnostics.push_back({c, RejectionReason::UndeterminedVector});
      continue;
    }
    auto res = admit(c, *vec, support.size(), params);
    switch (res.status) {
      case AdmissionStatus::Admitted:
        onto.entries.emplace(c, std::move(*res.entry));
        break;
      case AdmissionStatus::RejectedLowSupport:
        onto.diagnostics.push_back({c, RejectionReason::LowSupport});
        break;
      case AdmissionStatus::RejectedNonsentiment:
        onto.diagnostics.push_back({c, RejectionReason::Nonsentiment});
        break;
    }
  }
  return onto;
}

}  // namespace ideolex

#endif  // IDEOLEX_ONTOLOGY_HPP
