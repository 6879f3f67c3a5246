#ifndef IDEOLEX_CLASSIFIER_HPP
#define IDEOLEX_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideolex/core.hpp"
#include "ideolex/ontology.hpp"

namespace ideolex {

enum class AbstainReason {
  NoKnownChars,
  LeadingNegation,
  ConflictingKeyChars,
  UndeterminedBase,
};

inline const char* to_string(AbstainReason r) {
  switch (r) {
    case AbstainReason::NoKnownChars: return "NoKnownChars";
    case AbstainReason::LeadingNegation: return "LeadingNegation";
    case AbstainReason::ConflictingKeyChars: return "ConflictingKeyChars";
    case AbstainReason::UndeterminedBase: return "UndeterminedBase";
  }
  return "?";
}

/// Either a computed vector with its orientation, or a typed abstention.
class ClassificationResult {
public:
  static ClassificationResult computed(SentimentVector v) {
    ClassificationResult r;
    r.orientation_ = orientation(v);
    r.vector_ = std::move(v);
    return r;
  }
  static ClassificationResult uncomputable(AbstainReason reason) {
    ClassificationResult r;
    r.reason_ = reason;
    return r;
  }

  bool is_computed() const { return vector_.has_value(); }
  const SentimentVector& vector() const { return vector_.value(); }
  Orientation orient() const {
    if (!is_computed()) throw std::logic_error("orientation of uncomputable result");
    return orientation_;
  }
  AbstainReason reason() const {
    if (is_computed()) throw std::logic_error("reason of computed result");
    return reason_;
  }

  friend bool operator==(const ClassificationResult& a, const ClassificationResult& b) {
    if (a.is_computed() != b.is_computed()) return false;
    if (a.is_computed()) return a.vector() == b.vector();
    return a.reason() == b.reason();
  }

private:
  ClassificationResult() = default;
  std::optional<SentimentVector> vector_;
  Orientation orientation_{};
  AbstainReason reason_ = AbstainReason::NoKnownChars;
};

/// Distinct characters of w present in the ontology, each at its first
/// occurrence, in ascending position order.
inline std::vector<std::pair<std::size_t, const CharacterEntry*>> known_chars(
    const std::u32string& w, const CharacterOntology& ontology) {
  if (w.empty()) throw std::invalid_argument("known_chars of empty word");
  std::vector<std::pair<std::size_t, const CharacterEntry*>> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.find(w[i]) != i) continue;  // not the first occurrence
    if (const CharacterEntry* e = ontology.find(w[i])) out.emplace_back(i, e);
  }
  return out;
}

/// Word ideogram evaluation. Characters after the first negation contribute
/// a one-hot at the orientation of the raw prefix sum; key characters
/// dominate and must agree. Ontology entries are never modified.
inline ClassificationResult classify(const std::u32string& w,
                                     const CharacterOntology& ontology) {
  if (w.empty()) throw std::invalid_argument("classify of empty word");

  std::size_t neg_pos = std::u32string::npos;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (ontology.negations.contains(w[i])) { neg_pos = i; break; }
  if (neg_pos == 0) return ClassificationResult::uncomputable(AbstainReason::LeadingNegation);

  auto known = known_chars(w, ontology);
  if (known.empty()) return ClassificationResult::uncomputable(AbstainReason::NoKnownChars);

  const std::size_t n = ontology.scheme.size();
  const bool has_negation = neg_pos != std::u32string::npos;

  // Orientation of the raw sum of stored vectors before the negation, when
  // a suffix character needs adjusting.
  std::optional<std::size_t> suffix_orient;
  if (has_negation) {
    bool any_suffix = false;
    std::vector<double> prefix(n, 0.0);
    bool any_prefix = false;
    for (const auto& [pos, entry] : known) {
      if (pos < neg_pos) {
        any_prefix = true;
        for (std::size_t i = 0; i < n; ++i) prefix[i] += entry->vector[i];
      } else {
        any_suffix = true;
      }
    }
    if (any_suffix) {
      if (!any_prefix)
        return ClassificationResult::uncomputable(AbstainReason::UndeterminedBase);
      suffix_orient = argmax(prefix).index;
    }
  }

  auto effective = [&](std::size_t pos, const CharacterEntry* entry) -> SentimentVector {
    if (has_negation && pos > neg_pos) return one_hot(n, *suffix_orient);
    return entry->vector;
  };

  // Key characters are directly assigned; multiple keys must agree.
  std::optional<SentimentVector> key_vec;
  for (const auto& [pos, entry] : known) {
    if (!entry->is_key) continue;
    SentimentVector v = effective(pos, entry);
    if (key_vec && !(*key_vec == v))
      return ClassificationResult::uncomputable(AbstainReason::ConflictingKeyChars);
    if (!key_vec) key_vec = std::move(v);
  }
  if (key_vec) return ClassificationResult::computed(std::move(*key_vec));

  std::vector<SentimentVector> vecs;
  vecs.reserve(known.size());
  for (const auto& [pos, entry] : known) vecs.push_back(effective(pos, entry));
  return ClassificationResult::computed(mean_of(vecs));
}

}  // namespace ideolex

#endif  // IDEOLEX_CLASSIFIER_HPP
