#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korncert/linalg.hpp"
#include "korncert/multi_index.hpp"
#include "korncert/opsym.hpp"
#include "korncert/presets.hpp"

namespace korncert::driver {

using linalg::RationalMatrix;
using linalg::RationalVector;

/// Line-oriented operator description. One `key = value` per line, `#`
/// starts a comment. Rationals are `p` or `p/q`; decimal literals are
/// rejected. Matrix rows are separated by `|`, entries by spaces.
///
///   name = dsym-r2
///   n = 2
///   k = 1
///   dimV = 2
///   dimE = 3
///   A 1 0 = 1 0 | 0 1/2 | 0 0        dimE×dimV block for ∂^α, |α| = k
///   L.k = 2                          optional cocanceling L: E → F
///   L.dimF = 1
///   L 0 2 = 1 0 0                    dimF×dimE block
///   K 0 2 = 1/2 | 0 | 0              K(y) = Σ K_γ y^γ, dimE×dimF blocks
///   K1 1 2 = 1/2 | 0 | 0             antiderivative K_1, same layout
///   G = dsym-r2                      Green's matrix preset
struct OperatorDocument {
  struct Companion {
    int k = 0;
    std::size_t dim_f = 0;
    std::map<MultiIndex, RationalMatrix> blocks;
    bool operator==(const Companion&) const = default;
  };

  std::string name;
  std::size_t n = 0;
  int k = 0;
  std::size_t dim_v = 0;
  std::size_t dim_e = 0;
  std::map<MultiIndex, RationalMatrix> a;
  std::optional<Companion> l;
  std::map<MultiIndex, RationalMatrix> kernel;
  /// Indexed by axis; empty maps for axes without a block.
  std::vector<std::map<MultiIndex, RationalMatrix>> antiderivatives;
  std::optional<std::string> green;

  bool operator==(const OperatorDocument&) const = default;

  opsym::OperatorSymbol a_symbol() const;
  std::optional<opsym::OperatorSymbol> l_symbol() const;
  /// Needs L, so that dim F is known.
  poly::PolyMatrix k_matrix() const;
  std::vector<poly::PolyMatrix> antiderivative_matrices() const;
};

struct ParseError {
  std::size_t line = 0;  ///< 1-based; 0 for whole-document errors
  std::string field;
  std::string message;
};

struct ParseResult {
  std::optional<OperatorDocument> document;
  std::vector<ParseError> errors;
  bool ok() const { return document.has_value(); }
};

ParseResult parse_operator_document(std::string_view text);
/// Canonical form: keys in a fixed order, blocks in multi-index order.
std::string serialize(const OperatorDocument& doc);
std::string format_errors(const std::vector<ParseError>& errors);

OperatorDocument document_from_bundle(const presets::Bundle& b);
/// Needs L, K and G. Expectations, the magic form and any exhibited T·P come
/// from the preset registry when the document's name is a registered
/// bundle; otherwise every identity is expected to hold except the magic
/// one, which is reported without expectation.
presets::Bundle bundle_from_document(const OperatorDocument& doc);

}  // namespace korncert::driver
