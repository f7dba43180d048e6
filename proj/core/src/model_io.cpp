#include "metriclie/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace metriclie {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok, int line) {
  const auto slash = tok.find('/');
  if (slash != std::string::npos) {
    const std::string num = tok.substr(0, slash);
    const std::string den = tok.substr(slash + 1);
    try {
      std::size_t pos_n = 0;
      std::size_t pos_d = 0;
      const long long p = std::stoll(num, &pos_n);
      const long long q = std::stoll(den, &pos_d);
      if (pos_n != num.size() || pos_d != den.size() || q == 0) {
        throw std::invalid_argument(tok);
      }
      return static_cast<double>(p) / static_cast<double>(q);
    } catch (const std::exception&) {
      throw ParseError(line, "invalid rational literal '" + tok + "'");
    }
  }
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line, "invalid numeric literal '" + tok + "'");
  }
  return v;
}

int parse_index(const std::string& tok, int line, int dim) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    if (v < 1 || v > dim) {
      throw ParseError(line, "basis index " + tok + " out of range 1.." +
                                 std::to_string(dim));
    }
    return static_cast<int>(v) - 1;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, "invalid basis index '" + tok + "'");
  }
}

Vec parse_vector(const std::vector<std::string>& tokens, std::size_t start,
                 int line, int dim) {
  if (static_cast<int>(tokens.size() - start) != dim) {
    throw ParseError(line, "expected " + std::to_string(dim) +
                               " coordinates, got " +
                               std::to_string(tokens.size() - start));
  }
  Vec v(dim);
  for (int c = 0; c < dim; ++c) v[c] = parse_number(tokens[start + c], line);
  return v;
}

void append_row(Mat& rows, const Vec& v) {
  rows.conservativeResize(rows.rows() + 1, v.size());
  rows.row(rows.rows() - 1) = v.transpose();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ModelDocument parse_model_document(const std::string& text) {
  ModelDocument doc;
  bool have_dim = false;
  bool have_name = false;
  std::map<std::string, std::size_t> subspace_index;
  std::map<std::tuple<int, int, int>, int> seen_brackets;
  std::vector<std::pair<int, std::vector<std::string>>> metric_pending;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];

    if (directive == "model") {
      if (tokens.size() != 2) throw ParseError(line_no, "model expects one name");
      if (have_name) throw ParseError(line_no, "duplicate model directive");
      doc.name = tokens[1];
      have_name = true;
      continue;
    }
    if (directive == "dim") {
      if (have_dim) throw ParseError(line_no, "duplicate dim directive");
      if (tokens.size() != 2) throw ParseError(line_no, "dim expects one integer");
      try {
        doc.dim = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "invalid dimension '" + tokens[1] + "'");
      }
      if (doc.dim <= 0) throw ParseError(line_no, "dimension must be positive");
      have_dim = true;
      doc.isotropy.resize(0, doc.dim);
      continue;
    }
    if (!have_dim) {
      throw ParseError(line_no, "'" + directive + "' before the dim directive");
    }

    if (directive == "basis") {
      if (static_cast<int>(tokens.size()) != doc.dim + 1) {
        throw ParseError(line_no, "basis expects " + std::to_string(doc.dim) +
                                      " names");
      }
      doc.basis_names.assign(tokens.begin() + 1, tokens.end());
    } else if (directive == "bracket") {
      if (tokens.size() != 5) {
        throw ParseError(line_no, "bracket expects: i j k coefficient");
      }
      BracketRecord rec;
      rec.i = parse_index(tokens[1], line_no, doc.dim);
      rec.j = parse_index(tokens[2], line_no, doc.dim);
      rec.k = parse_index(tokens[3], line_no, doc.dim);
      rec.c = parse_number(tokens[4], line_no);
      rec.line = line_no;
      if (rec.i >= rec.j) {
        throw ParseError(line_no, "bracket records require i < j (1-based)");
      }
      const auto key = std::make_tuple(rec.i, rec.j, rec.k);
      const auto prev = seen_brackets.find(key);
      if (prev != seen_brackets.end()) {
        throw ParseError(line_no, "duplicate bracket record for (" +
                                      std::to_string(rec.i + 1) + "," +
                                      std::to_string(rec.j + 1) + "," +
                                      std::to_string(rec.k + 1) +
                                      "); first seen at line " +
                                      std::to_string(prev->second));
      }
      seen_brackets.emplace(key, line_no);
      doc.brackets.push_back(rec);
    } else if (directive == "isotropy") {
      append_row(doc.isotropy, parse_vector(tokens, 1, line_no, doc.dim));
    } else if (directive == "complement") {
      if (!doc.complement) doc.complement = Mat(0, doc.dim);
      append_row(*doc.complement, parse_vector(tokens, 1, line_no, doc.dim));
    } else if (directive == "metric") {
      metric_pending.emplace_back(line_no,
                                  std::vector<std::string>(tokens.begin() + 1,
                                                           tokens.end()));
    } else if (directive == "subspace" || directive == "ideal") {
      if (tokens.size() < 2) {
        throw ParseError(line_no, directive + " expects a name and coordinates");
      }
      const std::string name = tokens[1];
      const Vec row = parse_vector(tokens, 2, line_no, doc.dim);
      auto it = subspace_index.find(name);
      if (it == subspace_index.end()) {
        subspace_index.emplace(name, doc.subspaces.size());
        doc.subspaces.push_back({name, directive == "ideal", Mat(0, doc.dim)});
        it = subspace_index.find(name);
      } else if (doc.subspaces[it->second].is_ideal != (directive == "ideal")) {
        throw ParseError(line_no, "'" + name + "' mixes subspace and ideal rows");
      }
      append_row(doc.subspaces[it->second].rows, row);
    } else if (directive == "eps_struct" || directive == "eps_rank" ||
               directive == "eps_len") {
      if (tokens.size() != 2) throw ParseError(line_no, directive + " expects one value");
      const double v = parse_number(tokens[1], line_no);
      if (v <= 0) throw ParseError(line_no, directive + " must be positive");
      if (directive == "eps_struct") doc.eps_struct = v;
      if (directive == "eps_rank") doc.eps_rank = v;
      if (directive == "eps_len") doc.eps_len = v;
    } else {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
  }

  if (!have_dim) throw ParseError(line_no == 0 ? 1 : line_no, "missing dim directive");

  // Metric rows: either r full rows or an upper triangle (r, r-1, ..., 1).
  const int r = doc.dim - static_cast<int>(doc.isotropy.rows());
  if (!metric_pending.empty()) {
    const int rows = static_cast<int>(metric_pending.size());
    if (rows != r) {
      throw ParseError(metric_pending.front().first,
                       "metric expects " + std::to_string(r) + " rows, got " +
                           std::to_string(rows));
    }
    bool full = true;
    bool upper = true;
    for (int i = 0; i < rows; ++i) {
      const int len = static_cast<int>(metric_pending[i].second.size());
      if (len != r) full = false;
      if (len != r - i) upper = false;
    }
    if (!full && !upper) {
      throw ParseError(metric_pending.front().first,
                       "metric rows must form a full r x r matrix or an "
                       "upper triangle");
    }
    Mat g(r, r);
    for (int i = 0; i < rows; ++i) {
      const auto& toks = metric_pending[i].second;
      const int line = metric_pending[i].first;
      if (full) {
        for (int j = 0; j < r; ++j) g(i, j) = parse_number(toks[j], line);
      } else {
        for (int j = i; j < r; ++j) {
          g(i, j) = g(j, i) = parse_number(toks[j - i], line);
        }
      }
    }
    doc.metric = g;
  }
  return doc;
}

ModelDocument load_model_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_document(buf.str());
}

StructureTensor tensor_from_document(const ModelDocument& doc) {
  StructureTensor t(doc.dim);
  for (const auto& rec : doc.brackets) t.set_bracket(rec.i, rec.j, rec.k, rec.c);
  return t;
}

BuiltModel build_from_document(const ModelDocument& doc,
                               std::optional<double> eps_struct,
                               std::optional<double> eps_rank,
                               std::optional<double> eps_len, bool force) {
  Tolerances tol;
  if (doc.eps_struct) tol.eps_struct = *doc.eps_struct;
  if (doc.eps_rank) tol.eps_rank = *doc.eps_rank;
  if (doc.eps_len) tol.eps_len = *doc.eps_len;
  if (eps_struct) tol.eps_struct = *eps_struct;
  if (eps_rank) tol.eps_rank = *eps_rank;
  if (eps_len) tol.eps_len = *eps_len;

  const int r = doc.dim - static_cast<int>(doc.isotropy.rows());
  if (r < 0) {
    throw ParseError(1, "more isotropy rows than the algebra dimension");
  }
  if (!doc.metric && r > 0) {
    throw ParseError(1, "missing metric block (" + std::to_string(r) + " rows)");
  }
  Mat metric = doc.metric.value_or(Mat(0, 0));
  if (metric.rows() != r) {
    throw ParseError(1, "metric size does not match the complement dimension");
  }

  std::optional<Subspace> complement;
  if (doc.complement) complement = Subspace(doc.dim, *doc.complement, "m");

  BuiltModel built{
      build_model(doc.name, tensor_from_document(doc),
                  Subspace(doc.dim, doc.isotropy, "h"), metric, complement, tol,
                  force, doc.basis_names),
      {}};
  for (const auto& s : doc.subspaces) {
    Subspace space(doc.dim, s.rows, s.name);
    if (!space.has_independent_rows(tol.eps_rank)) {
      throw ParseError(1, "rows of subspace '" + s.name + "' are linearly dependent");
    }
    built.subspaces.push_back({s.name, s.is_ideal, std::move(space)});
  }
  return built;
}

std::string emit_model_document(const ModelDocument& doc) {
  std::ostringstream os;
  os << "# metriclie model\n";
  os << "model " << doc.name << "\n";
  os << "dim " << doc.dim << "\n";
  if (!doc.basis_names.empty()) {
    os << "basis";
    for (const auto& n : doc.basis_names) os << " " << n;
    os << "\n";
  }
  auto records = doc.brackets;
  std::sort(records.begin(), records.end(),
            [](const BracketRecord& a, const BracketRecord& b) {
              return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
            });
  for (const auto& rec : records) {
    if (rec.c == 0.0) continue;
    os << "bracket " << rec.i + 1 << " " << rec.j + 1 << " " << rec.k + 1 << " "
       << format_number(rec.c) << "\n";
  }
  for (int i = 0; i < doc.isotropy.rows(); ++i) {
    os << "isotropy";
    for (int j = 0; j < doc.isotropy.cols(); ++j) {
      os << " " << format_number(doc.isotropy(i, j));
    }
    os << "\n";
  }
  if (doc.complement) {
    for (int i = 0; i < doc.complement->rows(); ++i) {
      os << "complement";
      for (int j = 0; j < doc.complement->cols(); ++j) {
        os << " " << format_number((*doc.complement)(i, j));
      }
      os << "\n";
    }
  }
  if (doc.metric) {
    for (int i = 0; i < doc.metric->rows(); ++i) {
      os << "metric";
      for (int j = 0; j < doc.metric->cols(); ++j) {
        os << " " << format_number((*doc.metric)(i, j));
      }
      os << "\n";
    }
  }
  for (const auto& s : doc.subspaces) {
    for (int i = 0; i < s.rows.rows(); ++i) {
      os << (s.is_ideal ? "ideal " : "subspace ") << s.name;
      for (int j = 0; j < s.rows.cols(); ++j) {
        os << " " << format_number(s.rows(i, j));
      }
      os << "\n";
    }
  }
  if (doc.eps_struct) os << "eps_struct " << format_number(*doc.eps_struct) << "\n";
  if (doc.eps_rank) os << "eps_rank " << format_number(*doc.eps_rank) << "\n";
  if (doc.eps_len) os << "eps_len " << format_number(*doc.eps_len) << "\n";
  return os.str();
}

ModelDocument document_from_entry(const CatalogEntry& entry) {
  ModelDocument doc;
  doc.name = entry.name;
  const int n = entry.model.dim();
  doc.dim = n;
  doc.basis_names = entry.model.basis_names();
  const StructureTensor& t = entry.model.algebra();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (t.coeff(i, j, k) != 0.0) {
          doc.brackets.push_back({i, j, k, t.coeff(i, j, k), 0});
        }
      }
    }
  }
  doc.isotropy = entry.model.isotropy().span();
  doc.complement = entry.model.complement().span();
  doc.metric = entry.model.metric();
  for (const auto& s : entry.subspaces) {
    if (s.space.dim() == 0) continue;  // zero subspaces have no row form
    doc.subspaces.push_back({s.name, s.is_ideal, s.space.span()});
  }
  return doc;
}

}  // namespace metriclie
