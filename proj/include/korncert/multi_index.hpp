#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "korncert/rational.hpp"

namespace korncert {

/// Tuple of non-negative exponents (α, β, γ ...). Ordering is
/// lexicographic with the first axis most significant.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zero(std::size_t n);
  static MultiIndex unit(std::size_t n, std::size_t axis);

  std::size_t dim() const { return entries_.size(); }
  int order() const;
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// this - other, or nullopt when some entry would go negative.
  std::optional<MultiIndex> minus(const MultiIndex& other) const;
  /// Componentwise other <= this.
  bool dominates(const MultiIndex& other) const;
  MultiIndex with(std::size_t axis, int value) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  /// "(1,0,2)"
  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// All indices of the given order in n variables, descending lex order.
std::vector<MultiIndex> indices_of_order(std::size_t n, int order);

/// Product of binomial coefficients C(alpha_i, beta_i); zero unless
/// beta <= alpha.
Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// alpha! = Π alpha_i!
Rational multi_factorial(const MultiIndex& alpha);

}  // namespace korncert
