// Brute-force reference for the whole pipeline: direct set scans, naive
// means and explicit negation case analysis over plain std::vector<double>
// probability rows. Deliberately shares no code with the library so the two
// can be checked against each other.
#ifndef IDEOLEX_TESTS_ORACLE_HPP
#define IDEOLEX_TESTS_ORACLE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Row = std::vector<double>;

struct Word {
  std::u32string chars;
  std::size_t label = 0;  // category index of the one-hot annotation
};

struct Params {
  int threshold = 1;
  double lvb = 0.0;
  double uvb = 1.0;
};

struct Entry {
  Row vec;
  bool key = false;
  std::size_t support = 0;
};

enum class Reject { Undetermined, LowSupport, Nonsentiment };

struct Ontology {
  std::map<char32_t, Entry> entries;
  std::map<char32_t, Reject> rejects;
};

enum class Outcome {
  Computed,
  NoKnownChars,
  LeadingNegation,
  ConflictingKeyChars,
  UndeterminedBase,
};

struct Result {
  Outcome outcome = Outcome::Computed;
  Row vec;  // only meaningful when outcome == Computed
};

inline std::size_t row_argmax(const Row& r) {
  std::size_t m = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[m]) m = i;
  return m;
}

inline double row_scaled_variance(const Row& r) {
  const double inv_n = 1.0 / static_cast<double>(r.size());
  double acc = 0.0;
  for (double p : r) acc += (p - inv_n) * (p - inv_n);
  return acc;
}

inline Row row_one_hot(std::size_t n, std::size_t i) {
  Row r(n, 0.0);
  r[i] = 1.0;
  return r;
}

inline bool char_in(char32_t c, const std::u32string& w) {
  for (char32_t x : w)
    if (x == c) return true;
  return false;
}

inline Ontology build(std::size_t n, const std::vector<Word>& training,
                      const std::set<char32_t>& negations, const Params& params) {
  Ontology onto;
  std::set<char32_t> all_chars;
  for (const auto& w : training)
    for (char32_t c : w.chars) all_chars.insert(c);

  for (char32_t c : all_chars) {
    if (negations.count(c)) continue;

    // Eq. (1): support set by direct scan.
    std::vector<const Word*> support;
    for (const auto& w : training)
      if (char_in(c, w.chars)) support.push_back(&w);

    // Split into plain and negated occurrences of c.
    std::vector<const Word*> plain, negated;
    for (const Word* w : support) {
      bool is_negated = false;
      for (std::size_t i = 1; i < w->chars.size(); ++i)
        if (w->chars[i] == c && negations.count(w->chars[i - 1]))
          is_negated = true;
      (is_negated ? negated : plain).push_back(w);
    }

    // Eq. (2) with the negation adjustment.
    Row sum(n, 0.0);
    for (const Word* w : plain) sum[w->label] += 1.0;
    if (!negated.empty()) {
      if (plain.empty()) {
        onto.rejects[c] = Reject::Undetermined;
        continue;
      }
      sum[row_argmax(sum)] += static_cast<double>(negated.size());
    }
    Row vec(n);
    for (std::size_t i = 0; i < n; ++i)
      vec[i] = sum[i] / static_cast<double>(support.size());

    if (support.size() < static_cast<std::size_t>(params.threshold)) {
      onto.rejects[c] = Reject::LowSupport;
      continue;
    }
    const double v = row_scaled_variance(vec);
    if (v < params.lvb) {
      onto.rejects[c] = Reject::Nonsentiment;
      continue;
    }
    Entry e;
    e.support = support.size();
    if (v > params.uvb) {
      e.key = true;
      e.vec = row_one_hot(n, row_argmax(vec));
    } else {
      e.key = false;
      e.vec = vec;
    }
    onto.entries[c] = e;
  }
  return onto;
}

inline Result classify(const std::u32string& word, const Ontology& onto,
                       const std::set<char32_t>& negations, std::size_t n) {
  if (negations.count(word[0])) return {Outcome::LeadingNegation, {}};

  std::size_t neg_pos = word.size();  // past-the-end = no negation
  for (std::size_t i = 0; i < word.size(); ++i)
    if (negations.count(word[i])) { neg_pos = i; break; }

  // Eq. (3): distinct known characters at their first occurrence.
  std::vector<std::pair<std::size_t, const Entry*>> known;
  for (std::size_t i = 0; i < word.size(); ++i) {
    bool first = true;
    for (std::size_t j = 0; j < i; ++j)
      if (word[j] == word[i]) first = false;
    if (!first) continue;
    auto it = onto.entries.find(word[i]);
    if (it != onto.entries.end()) known.emplace_back(i, &it->second);
  }
  if (known.empty()) return {Outcome::NoKnownChars, {}};

  // Orientation of the pre-negation raw sum, if any suffix char needs it.
  bool need_suffix = false;
  for (const auto& [pos, e] : known)
    if (pos > neg_pos) need_suffix = true;
  std::size_t suffix_m = 0;
  if (need_suffix) {
    Row prefix(n, 0.0);
    bool any = false;
    for (const auto& [pos, e] : known)
      if (pos < neg_pos) {
        any = true;
        for (std::size_t i = 0; i < n; ++i) prefix[i] += e->vec[i];
      }
    if (!any) return {Outcome::UndeterminedBase, {}};
    suffix_m = row_argmax(prefix);
  }

  std::vector<Row> effective;
  std::vector<bool> is_key;
  for (const auto& [pos, e] : known) {
    effective.push_back(pos > neg_pos ? row_one_hot(n, suffix_m) : e->vec);
    is_key.push_back(e->key);
  }

  // Key dominance with explicit agreement check.
  std::vector<Row> key_rows;
  for (std::size_t i = 0; i < effective.size(); ++i)
    if (is_key[i]) key_rows.push_back(effective[i]);
  if (!key_rows.empty()) {
    for (const auto& r : key_rows)
      if (r != key_rows.front()) return {Outcome::ConflictingKeyChars, {}};
    return {Outcome::Computed, key_rows.front()};
  }

  // Eq. (4): naive mean.
  Row mean(n, 0.0);
  for (const auto& r : effective)
    for (std::size_t i = 0; i < n; ++i) mean[i] += r[i];
  for (double& m : mean) m /= static_cast<double>(effective.size());
  return {Outcome::Computed, mean};
}

}  // namespace oracle

#endif  // IDEOLEX_TESTS_ORACLE_HPP
