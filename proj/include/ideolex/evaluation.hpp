#ifndef IDEOLEX_EVALUATION_HPP
#define IDEOLEX_EVALUATION_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ideolex/classifier.hpp"
#include "ideolex/core.hpp"
#include "ideolex/ontology.hpp"

namespace ideolex {

struct GoldLabeledWord {
  std::u32string chars;
  std::size_t gold = 0;
};

/// Harmonic mean of precision and recall; 0 when both are 0.
inline double f_measure(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

struct CategoryScore {
  std::size_t gold_count = 0;   // words with this gold label
  std::size_t predicted = 0;    // computed words predicted as this label
  std::size_t correct = 0;      // predicted == gold == this label
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t computed = 0;
  std::size_t correct = 0;
  std::size_t tie_broken = 0;   // computed results whose argmax was tied
  double precision = 0.0;       // micro: correct / computed
  double recall = 0.0;          // micro: correct / total
  double f = 0.0;
  double macro_f = 0.0;         // mean of per-category f
  std::vector<CategoryScore> per_category;
};

inline EvalReport evaluate(
    std::span<const std::pair<GoldLabeledWord, ClassificationResult>> results,
    std::size_t num_categories) {
  EvalReport rep;
  rep.total = results.size();
  rep.per_category.resize(num_categories);
  for (const auto& [gold, res] : results) {
    rep.per_category.at(gold.gold).gold_count++;
    if (!res.is_computed()) continue;
    rep.computed++;
    const Orientation o = res.orient();
    if (o.tied) rep.tie_broken++;
    rep.per_category.at(o.index).predicted++;
    if (o.index == gold.gold) {
      rep.correct++;
      rep.per_category[gold.gold].correct++;
    }
  }
  rep.precision = rep.computed ? static_cast<double>(rep.correct) / rep.computed : 0.0;
  rep.recall = rep.total ? static_cast<double>(rep.correct) / rep.total : 0.0;
  rep.f = f_measure(rep.precision, rep.recall);
  double macro_sum = 0.0;
  for (auto& c : rep.per_category) {
    c.precision = c.predicted ? static_cast<double>(c.correct) / c.predicted : 0.0;
    c.recall = c.gold_count ? static_cast<double>(c.correct) / c.gold_count : 0.0;
    c.f = f_measure(c.precision, c.recall);
    macro_sum += c.f;
  }
  rep.macro_f = num_categories ? macro_sum / num_categories : 0.0;
  return rep;
}

inline EvalReport evaluate_against(const CharacterOntology& ontology,
                                   std::span<const GoldLabeledWord> gold) {
  std::vector<std::pair<GoldLabeledWord, ClassificationResult>> results;
  results.reserve(gold.size());
  for (const auto& g : gold)
    results.emplace_back(g, classify(g.chars, ontology));
  return evaluate(results, ontology.scheme.size());
}

struct SweepRow {
  BuilderParams params;
  EvalReport report;
};

/// One row per grid point, in grid order: build a fresh ontology with the
/// row's parameters and evaluate the full gold set against it.
inline std::vector<SweepRow> sweep(const TrainingLexicon& lexicon,
                                   std::span<const GoldLabeledWord> gold,
                                   const NegationSet& negations,
                                   std::span<const BuilderParams> grid) {
  if (grid.empty()) throw std::invalid_argument("sweep with empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& params : grid) {
    try {
      auto onto = build_ontology(lexicon, params, negations);
      rows.push_back({params, evaluate_against(onto, gold)});
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at T=" + std::to_string(params.threshold) +
                               " LVB=" + std::to_string(params.lvb) +
                               " UVB=" + std::to_string(params.uvb) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace ideolex

#endif  // IDEOLEX_EVALUATION_HPP
