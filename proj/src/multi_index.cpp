#include "korncert/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace korncert {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t axis) {
  std::vector<int> e(n, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.entries_[i] += other.entries_[i];
  return out;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    out.entries_[i] -= other.entries_[i];
    if (out.entries_[i] < 0) return std::nullopt;
  }
  return out;
}

bool MultiIndex::dominates(const MultiIndex& other) const { return minus(other).has_value(); }

MultiIndex MultiIndex::with(std::size_t axis, int value) const {
  MultiIndex out = *this;
  out.entries_.at(axis) = value;
  if (value < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

namespace {

void enumerate(std::size_t n, int remaining, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(n, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

Rational factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

}  // namespace

std::vector<MultiIndex> indices_of_order(std::size_t n, int order) {
  std::vector<MultiIndex> out;
  if (n == 0 || order < 0) return out;
  std::vector<int> prefix;
  enumerate(n, order, prefix, out);
  return out;
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!alpha.dominates(beta)) return 0;
  mpz_class result = 1;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(alpha[i]), static_cast<unsigned long>(beta[i]));
    result *= c;
  }
  return Rational(result);
}

Rational multi_factorial(const MultiIndex& alpha) {
  Rational f = 1;
  for (int e : alpha.entries()) f *= factorial(e);
  return f;
}

}  // namespace korncert
