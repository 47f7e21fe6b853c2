#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgeo/errors.hpp"

namespace qgeo {

// Finite probability distribution: nonnegative weights summing to 1,
// optionally tagged with observable values x_i on the same index set.
// Immutable after construction; inputs off normalization by more than
// kNormTol are rejected, not renormalized.
class DiscreteDistribution {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit DiscreteDistribution(std::vector<double> weights,
                                std::optional<std::vector<double>> support = {})
      : weights_(std::move(weights)), support_(std::move(support)) {
    if (weights_.empty())
      throw DomainError("DiscreteDistribution: no atoms");
    if (support_ && support_->size() != weights_.size())
      throw DomainError("DiscreteDistribution: support length mismatch");
    long double sum = 0.0L;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw DomainError("DiscreteDistribution: negative or non-finite weight");
      sum += w;
    }
    if (std::abs(static_cast<double>(sum) - 1.0) > kNormTol)
      throw DomainError("DiscreteDistribution: weights do not sum to 1");
  }

  static DiscreteDistribution uniform(std::size_t n) {
    return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  // One atom per row, `weight[,x]`.
  static DiscreteDistribution from_csv(std::istream& in) {
    std::vector<double> w;
    std::vector<double> x;
    bool any_support = false;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string cell;
      if (!std::getline(row, cell, ',')) continue;
      w.push_back(std::stod(cell));
      if (std::getline(row, cell, ',')) {
        x.push_back(std::stod(cell));
        any_support = true;
      } else {
        x.push_back(0.0);
      }
    }
    if (any_support && x.size() != w.size())
      throw DomainError("distribution csv: ragged support column");
    if (any_support) return DiscreteDistribution(std::move(w), std::move(x));
    return DiscreteDistribution(std::move(w));
  }

  const std::vector<double>& weights() const { return weights_; }
  const std::optional<std::vector<double>>& support() const { return support_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
  std::optional<std::vector<double>> support_;
};

// Outer product of two independent distributions, row-major over (i, j).
// Support tags do not combine and are dropped.
inline DiscreteDistribution product_distribution(const DiscreteDistribution& p1,
                                                 const DiscreteDistribution& p2) {
  std::vector<double> w;
  w.reserve(p1.size() * p2.size());
  for (double a : p1.weights())
    for (double b : p2.weights()) w.push_back(a * b);
  return DiscreteDistribution(std::move(w));
}

}  // namespace qgeo
