#pragma once

#include "tdirac/dirac/dirac.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdirac::harness {

using dirac::DiracBasis;
using tensorcalc::ChartPtr;
using tensorcalc::TensorField;

/// Invalid instance document. `path` locates the offending value, e.g.
/// `fields.P.coeffs["0,1"]`; `position` is the byte offset inside an
/// expression string when the failure is a parse error.
class DocumentError : public std::runtime_error {
public:
  DocumentError(std::string path, const std::string& message, std::optional<std::size_t> position = {});
  const std::string& path() const { return path_; }
  std::optional<std::size_t> position() const { return position_; }

private:
  std::string path_;
  std::optional<std::size_t> position_;
};

enum class StructureKind { Poisson, Presymplectic, DiracBasis };
const char* to_string(StructureKind k);

/// Known task names: check, tangent, classify, xu, defect, pullback.
bool is_task(std::string_view name);

struct InstanceDocument {
  std::string name;
  ChartPtr chart; // carries the tubular split when one is declared
  std::map<std::string, TensorField> fields;
  StructureKind kind = StructureKind::DiracBasis;
  std::string source;                     // field name for poisson / presymplectic
  std::optional<DiracBasis> basis;        // the structure, built at load time
  std::optional<std::string> homogeneity; // vector field Z for the homogeneity check
  std::vector<std::string> tasks;
  std::map<std::string, bool> expect; // expected property values, keyed like report entries

  const DiracBasis& structure() const { return *basis; }
  const TensorField& field(const std::string& name) const;
};

/// Document grammar (JSON, unknown keys rejected):
///
///   { "name": str?,
///     "chart": { "vars": [str...], "tangent_split": { "tangent": [var...], "normal": [var...] }? },
///     "fields": { name: { "type": T, "coeffs": { "i,j": expr } } },
///     "structure": { "kind": "poisson"|"presymplectic"|"dirac-basis", "source": name?,
///                    "basis": [ { "X": { "i": expr }, "alpha": { "i": expr } } ]?,
///                    "homogeneity": name? },
///     "tasks": [str...],
///     "expect": { "<task>.<property>": bool }? }
///
/// T is function, vector, covector, bivector, "<k>-vector" or "<k>-form";
/// index keys are 0-based chart positions (the empty key for a function).
InstanceDocument parse_document(std::string_view json_text);
InstanceDocument load_document(const std::filesystem::path& path);

} // namespace tdirac::harness
