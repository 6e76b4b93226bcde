#include "korncert/driver/document.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "korncert/greens.hpp"

namespace korncert::driver {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::optional<long> parse_int(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Line {
  std::size_t number = 0;
  std::string key;
  std::string value;
};

// Block key such as "A 1 0" or "K2 0 1 1".
struct BlockKey {
  std::string kind;
  std::vector<std::string> index;
};

BlockKey block_key(const std::string& key) {
  auto toks = split_ws(key);
  BlockKey b;
  if (toks.empty()) return b;
  b.kind = toks.front();
  b.index.assign(toks.begin() + 1, toks.end());
  return b;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('\n', start);
      std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      ++number;
      start = end == std::string_view::npos ? text.size() + 1 : end + 1;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        error(number, line, "expected 'key = value'");
        continue;
      }
      lines_.push_back({number, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1))});
    }
  }

  ParseResult run() {
    OperatorDocument doc;
    std::set<std::string> seen;
    std::vector<const Line*> blocks;
    std::optional<long> l_k, l_dim_f;
    for (const auto& line : lines_) {
      if (!seen.insert(line.key).second) {
        error(line.number, line.key, "duplicate key");
        continue;
      }
      if (line.key == "name") {
        doc.name = line.value;
        if (doc.name.empty()) error(line.number, "name", "empty name");
      } else if (line.key == "n" || line.key == "k" || line.key == "dimV" || line.key == "dimE" || line.key == "L.k" ||
                 line.key == "L.dimF") {
        const auto v = parse_int(line.value);
        if (!v || *v < (line.key == "n" ? 1 : 0)) {
          error(line.number, line.key, "expected a non-negative integer, got '" + line.value + "'");
          continue;
        }
        if (line.key == "n") doc.n = static_cast<std::size_t>(*v);
        if (line.key == "k") doc.k = static_cast<int>(*v);
        if (line.key == "dimV") doc.dim_v = static_cast<std::size_t>(*v);
        if (line.key == "dimE") doc.dim_e = static_cast<std::size_t>(*v);
        if (line.key == "L.k") l_k = v;
        if (line.key == "L.dimF") l_dim_f = v;
      } else if (line.key == "G") {
        doc.green = line.value;
        const auto names = greens::greens_preset_names();
        if (std::find(names.begin(), names.end(), line.value) == names.end())
          error(line.number, "G", "unknown Green's matrix preset '" + line.value + "'");
      } else {
        blocks.push_back(&line);
      }
    }
    for (const char* key : {"name", "n", "k", "dimV", "dimE"})
      if (!seen.count(key)) error(0, key, "missing required key");
    if (l_k.has_value() != l_dim_f.has_value()) error(0, "L", "L.k and L.dimF must be given together");
    if (l_k && l_dim_f) doc.l = OperatorDocument::Companion{static_cast<int>(*l_k), static_cast<std::size_t>(*l_dim_f), {}};
    if (!errors_.empty()) return {std::nullopt, errors_};

    for (const Line* line : blocks) parse_block(*line, doc);
    if (doc.a.empty() && errors_.empty()) error(0, "A", "no coefficient blocks");
    if (!doc.kernel.empty() || !doc.antiderivatives.empty())
      if (!doc.l) error(0, "K", "K blocks need L.k and L.dimF");
    if (!errors_.empty()) return {std::nullopt, errors_};
    return {std::move(doc), {}};
  }

 private:
  void error(std::size_t line, std::string field, std::string message) {
    errors_.push_back({line, std::move(field), std::move(message)});
  }

  std::optional<MultiIndex> parse_index(const Line& line, const std::vector<std::string>& toks, std::size_t n) {
    if (toks.size() != n) {
      error(line.number, line.key,
            "dimension error: index has " + std::to_string(toks.size()) + " entries, expected n = " + std::to_string(n));
      return std::nullopt;
    }
    std::vector<int> e;
    for (const auto& t : toks) {
      const auto v = parse_int(t);
      if (!v || *v < 0) {
        error(line.number, line.key, "index entry '" + t + "' is not a non-negative integer");
        return std::nullopt;
      }
      e.push_back(static_cast<int>(*v));
    }
    return MultiIndex(e);
  }

  std::optional<RationalMatrix> parse_matrix(const Line& line, std::size_t rows, std::size_t cols) {
    std::vector<std::vector<std::string>> cells;
    std::size_t start = 0;
    while (true) {
      const auto bar = line.value.find('|', start);
      cells.push_back(split_ws(std::string_view(line.value).substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (cells.size() != rows || std::any_of(cells.begin(), cells.end(), [&](const auto& r) { return r.size() != cols; })) {
      std::string shape = std::to_string(cells.size()) + " rows of sizes";
      for (const auto& r : cells) shape += " " + std::to_string(r.size());
      error(line.number, line.key,
            "shape mismatch: expected " + std::to_string(rows) + "×" + std::to_string(cols) + ", got " + shape);
      return std::nullopt;
    }
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        try {
          m(i, j) = parse_rational(cells[i][j]);
        } catch (const std::invalid_argument&) {
          error(line.number, line.key, "malformed rational '" + cells[i][j] + "'");
          return std::nullopt;
        }
      }
    return m;
  }

  void parse_block(const Line& line, OperatorDocument& doc) {
    const BlockKey key = block_key(line.key);
    if (key.kind.empty()) {
      error(line.number, line.key, "empty key");
      return;
    }
    std::map<MultiIndex, RationalMatrix>* target = nullptr;
    std::size_t rows = 0, cols = 0;
    std::optional<int> order;
    if (key.kind == "A") {
      target = &doc.a;
      rows = doc.dim_e;
      cols = doc.dim_v;
      order = doc.k;
    } else if (key.kind == "L" && doc.l) {
      target = &doc.l->blocks;
      rows = doc.l->dim_f;
      cols = doc.dim_e;
      order = doc.l->k;
    } else if (key.kind == "K" && doc.l) {
      target = &doc.kernel;
      rows = doc.dim_e;
      cols = doc.l->dim_f;
    } else if (key.kind.size() >= 2 && key.kind[0] == 'K' && doc.l) {
      const auto axis = parse_int(key.kind.substr(1));
      if (!axis || *axis < 1 || static_cast<std::size_t>(*axis) > doc.n) {
        error(line.number, line.key, "antiderivative index must lie in 1.." + std::to_string(doc.n));
        return;
      }
      doc.antiderivatives.resize(doc.n);
      target = &doc.antiderivatives[static_cast<std::size_t>(*axis - 1)];
      rows = doc.dim_e;
      cols = doc.l->dim_f;
    } else if ((key.kind == "L" || key.kind[0] == 'K') && !doc.l) {
      error(line.number, line.key, "block needs L.k and L.dimF");
      return;
    } else {
      error(line.number, line.key, "unknown key");
      return;
    }
    const auto alpha = parse_index(line, key.index, doc.n);
    if (!alpha) return;
    if (order && alpha->order() != *order) {
      error(line.number, line.key,
            "|α| = " + std::to_string(alpha->order()) + " but the operator has order " + std::to_string(*order));
      return;
    }
    auto m = parse_matrix(line, rows, cols);
    if (!m) return;
    if (!target->emplace(*alpha, std::move(*m)).second) error(line.number, line.key, "duplicate block");
  }

  std::vector<Line> lines_;
  std::vector<ParseError> errors_;
};

std::string format_matrix(const RationalMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += " |";
    for (std::size_t j = 0; j < m.cols(); ++j) out += " " + to_string(m(i, j));
  }
  return out;
}

std::string format_index(const MultiIndex& a) {
  std::string out;
  for (int e : a.entries()) out += " " + std::to_string(e);
  return out;
}

void write_blocks(std::ostringstream& os, const std::string& kind, const std::map<MultiIndex, RationalMatrix>& blocks) {
  for (const auto& [alpha, m] : blocks) os << kind << format_index(alpha) << " =" << format_matrix(m) << "\n";
}

std::map<MultiIndex, RationalMatrix> blocks_of(const poly::PolyMatrix& p) {
  std::map<MultiIndex, RationalMatrix> out;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      for (const auto& [gamma, c] : p(i, j).terms()) {
        auto it = out.try_emplace(gamma, p.rows(), p.cols()).first;
        it->second(i, j) = c;
      }
  return out;
}

poly::PolyMatrix matrix_of(const std::map<MultiIndex, RationalMatrix>& blocks, std::size_t rows, std::size_t cols,
                           std::size_t n) {
  poly::PolyMatrix p(rows, cols, n);
  for (const auto& [gamma, m] : blocks)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (m(i, j) != 0) p(i, j).add_term(gamma, m(i, j));
  return p;
}

opsym::OperatorSymbol symbol_of(std::size_t n, int order, std::size_t source, std::size_t target,
                                const std::map<MultiIndex, RationalMatrix>& blocks) {
  opsym::OperatorSymbol s(n, order, source, target);
  for (const auto& [alpha, m] : blocks) s.set_coefficient(alpha, m);
  return s;
}

}  // namespace

opsym::OperatorSymbol OperatorDocument::a_symbol() const { return symbol_of(n, k, dim_v, dim_e, a); }

std::optional<opsym::OperatorSymbol> OperatorDocument::l_symbol() const {
  if (!l) return std::nullopt;
  return symbol_of(n, l->k, dim_e, l->dim_f, l->blocks);
}

poly::PolyMatrix OperatorDocument::k_matrix() const {
  if (!l) throw std::invalid_argument("operator document: K needs L");
  return matrix_of(kernel, dim_e, l->dim_f, n);
}

std::vector<poly::PolyMatrix> OperatorDocument::antiderivative_matrices() const {
  std::vector<poly::PolyMatrix> out;
  if (!l) return out;
  for (const auto& blocks : antiderivatives) out.push_back(matrix_of(blocks, dim_e, l->dim_f, n));
  return out;
}

ParseResult parse_operator_document(std::string_view text) { return Parser(text).run(); }

std::string serialize(const OperatorDocument& doc) {
  std::ostringstream os;
  os << "name = " << doc.name << "\n"
     << "n = " << doc.n << "\n"
     << "k = " << doc.k << "\n"
     << "dimV = " << doc.dim_v << "\n"
     << "dimE = " << doc.dim_e << "\n";
  write_blocks(os, "A", doc.a);
  if (doc.l) {
    os << "L.k = " << doc.l->k << "\n"
       << "L.dimF = " << doc.l->dim_f << "\n";
    write_blocks(os, "L", doc.l->blocks);
  }
  write_blocks(os, "K", doc.kernel);
  for (std::size_t i = 0; i < doc.antiderivatives.size(); ++i)
    write_blocks(os, "K" + std::to_string(i + 1), doc.antiderivatives[i]);
  if (doc.green) os << "G = " << *doc.green << "\n";
  return os.str();
}

std::string format_errors(const std::vector<ParseError>& errors) {
  std::string out;
  for (const auto& e : errors)
    out += (e.line ? "line " + std::to_string(e.line) : std::string("document")) + ", " + e.field + ": " + e.message + "\n";
  return out;
}

OperatorDocument document_from_bundle(const presets::Bundle& b) {
  OperatorDocument doc;
  doc.name = b.name;
  doc.n = b.n;
  doc.k = b.a.order();
  doc.dim_v = b.a.source_dim();
  doc.dim_e = b.a.target_dim();
  doc.a = b.a.coefficients();
  doc.l = OperatorDocument::Companion{b.l.order(), b.l.target_dim(), b.l.coefficients()};
  doc.kernel = blocks_of(b.k);
  for (const auto& ki : b.antiderivatives) doc.antiderivatives.push_back(blocks_of(ki));
  for (const auto& name : greens::greens_preset_names())
    if (greens::greens_preset(name).g == b.g) doc.green = name;
  return doc;
}

presets::Bundle bundle_from_document(const OperatorDocument& doc) {
  if (!doc.l) throw std::invalid_argument("operator document '" + doc.name + "' has no L");
  if (!doc.green) throw std::invalid_argument("operator document '" + doc.name + "' has no G");
  presets::Bundle b;
  const auto names = presets::bundle_names();
  const bool registered = std::find(names.begin(), names.end(), doc.name) != names.end();
  if (registered) {
    b = presets::bundle(doc.name);
  } else {
    b.name = doc.name;
    b.magic = doc.n == 2 ? presets::MagicForm::AntiderivativeSymmetry : presets::MagicForm::CandidateWeak;
    b.expected[3] = presets::Expectation::Any;
  }
  b.n = doc.n;
  b.a = doc.a_symbol();
  b.l = *doc.l_symbol();
  b.k = doc.k_matrix();
  b.antiderivatives = doc.antiderivative_matrices();
  b.g = greens::greens_preset(*doc.green).g;
  return b;
}

}  // namespace korncert::driver
