#ifndef IDEOLEX_CORE_HPP
#define IDEOLEX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ideolex {

// Absolute tolerance on the component sum of a probability vector.
inline constexpr double kSimplexTol = 1e-9;

/// Ordered list of sentiment category names. Defines n for every vector
/// in the pipeline.
class SentimentScheme {
public:
  explicit SentimentScheme(std::vector<std::string> categories)
      : categories_(std::move(categories)) {
    if (categories_.size() < 2)
      throw std::invalid_argument("scheme needs at least 2 categories");
    std::set<std::string> seen;
    for (const auto& c : categories_) {
      if (c.empty())
        throw std::invalid_argument("scheme category name is empty");
      if (!seen.insert(c).second)
        throw std::invalid_argument("duplicate scheme category: " + c);
    }
  }

  std::size_t size() const { return categories_.size(); }
  const std::string& name(std::size_t i) const { return categories_.at(i); }
  const std::vector<std::string>& categories() const { return categories_; }

  // Index of a category name, or npos if absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t index_of(const std::string& name) const {
    auto it = std::find(categories_.begin(), categories_.end(), name);
    return it == categories_.end() ? npos
                                   : static_cast<std::size_t>(it - categories_.begin());
  }

  friend bool operator==(const SentimentScheme&, const SentimentScheme&) = default;

private:
  std::vector<std::string> categories_;
};

/// Result of an argmax. index is the smallest index attaining the maximum;
/// tied is set when the maximum occurs at more than one index.
struct Orientation {
  std::size_t index = 0;
  bool tied = false;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

// Smallest-index argmax over a raw (not necessarily normalized) sequence.
inline Orientation argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  bool tied = false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != best && values[i] == values[best]) { tied = true; break; }
  return {best, tied};
}

/// Length-n probability vector on the simplex. Components are validated on
/// construction: each in [0,1] and summing to 1 within kSimplexTol.
class SentimentVector {
public:
  explicit SentimentVector(std::vector<double> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw std::invalid_argument("sentiment vector is empty");
    double sum = 0.0;
    for (double p : components_) {
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sentiment vector component outside [0,1]");
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kSimplexTol)
      throw std::invalid_argument("sentiment vector does not sum to 1");
  }

  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  const std::vector<double>& components() const { return components_; }

  bool is_one_hot() const {
    std::size_t ones = 0;
    for (double p : components_) {
      if (p == 1.0) ++ones;
      else if (p != 0.0) return false;
    }
    return ones == 1;
  }

  friend bool operator==(const SentimentVector&, const SentimentVector&) = default;

private:
  std::vector<double> components_;
};

inline SentimentVector one_hot(const SentimentScheme& scheme, std::size_t index) {
  if (index >= scheme.size())
    throw std::invalid_argument("one_hot index out of range");
  std::vector<double> v(scheme.size(), 0.0);
  v[index] = 1.0;
  return SentimentVector(std::move(v));
}

inline SentimentVector one_hot(std::size_t n, std::size_t index) {
  if (index >= n) throw std::invalid_argument("one_hot index out of range");
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return SentimentVector(std::move(v));
}

/// Population variance of the components scaled by n, i.e.
/// sum_i (P_i - 1/n)^2. For a one-hot vector this equals (n-1)/n.
inline double scaled_variance(const SentimentVector& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double p : v.components()) mean += p;
  mean /= n;
  double var = 0.0;
  for (double p : v.components()) var += (p - mean) * (p - mean);
  return var;  // n * (var / n)
}

inline Orientation orientation(const SentimentVector& v) {
  return argmax(v.components());
}

inline SentimentVector mean_of(std::span<const SentimentVector> vs) {
  if (vs.empty()) throw std::invalid_argument("mean_of empty sequence");
  const std::size_t n = vs.front().size();
  std::vector<double> acc(n, 0.0);
  for (const auto& v : vs) {
    if (v.size() != n)
      throw std::invalid_argument("mean_of dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) acc[i] += v[i];
  }
  for (double& a : acc) a /= static_cast<double>(vs.size());
  // Clamp float dust so the result stays a valid simplex vector.
  for (double& a : acc) a = std::min(1.0, std::max(0.0, a));
  return SentimentVector(std::move(acc));
}

}  // namespace ideolex

#endif  // IDEOLEX_CORE_HPP
