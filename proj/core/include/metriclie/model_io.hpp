#ifndef METRICLIE_MODEL_IO_HPP
#define METRICLIE_MODEL_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "metriclie/catalog.hpp"
#include "metriclie/homogeneous_model.hpp"

namespace metriclie {

/// Positioned syntax/semantic error in a model file.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line(line),
        message(message) {}
  int line;
  std::string message;
};

struct BracketRecord {
  int i = 0;  // 0-based, i < j enforced at parse time
  int j = 0;
  int k = 0;
  double c = 0.0;
  int line = 0;
};

/// Parsed but not yet validated model file. Indices are converted from the
/// 1-based file convention to 0-based on parse. Coefficients accept exact
/// rationals ("3/2") and are converted to double once.
struct ModelDocument {
  std::string name = "model";
  int dim = 0;
  std::vector<std::string> basis_names;
  std::vector<BracketRecord> brackets;
  Mat isotropy{0, 0};
  std::optional<Mat> complement;
  std::optional<Mat> metric;  // full symmetric matrix after parsing
  struct NamedRows {
    std::string name;
    bool is_ideal = false;
    Mat rows{0, 0};
  };
  std::vector<NamedRows> subspaces;
  std::optional<double> eps_struct;
  std::optional<double> eps_rank;
  std::optional<double> eps_len;
};

ModelDocument parse_model_document(const std::string& text);
ModelDocument load_model_document(const std::string& path);

StructureTensor tensor_from_document(const ModelDocument& doc);

struct BuiltModel {
  HomogeneousModel model;
  std::vector<NamedSubspace> subspaces;
};

/// Resolves tolerances (defaults, then file overrides, then explicit
/// overrides), builds the tensor and the model, and converts the named
/// subspaces. Throws ParseError for structural problems in the document
/// and ValidationError for model invariant violations (unless force).
BuiltModel build_from_document(const ModelDocument& doc,
                               std::optional<double> eps_struct = std::nullopt,
                               std::optional<double> eps_rank = std::nullopt,
                               std::optional<double> eps_len = std::nullopt,
                               bool force = false);

/// Canonical emission: sorted bracket records, %.17g coefficients. A
/// parse of the output reproduces the document, and re-emission is a
/// byte-identical fixed point.
std::string emit_model_document(const ModelDocument& doc);

ModelDocument document_from_entry(const CatalogEntry& entry);

}  // namespace metriclie

#endif
