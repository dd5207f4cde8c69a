#include "tdirac/harness/document.hpp"

#include "tdirac/symexpr/parser.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace tdirac::harness {

using nlohmann::json;
using symexpr::Expr;
using tensorcalc::Signature;

namespace {

std::string key_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

std::string quoted(const std::string& parent, const std::string& key) { return parent + "[\"" + key + "\"]"; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw DocumentError(path.empty() ? "document" : path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || k == a;
    if (!known) throw DocumentError(key_path(path, k), "unknown field");
  }
}

const json& required(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) throw DocumentError(key_path(path, key), "missing field");
  return obj.at(key);
}

std::string string_of(const json& v, const std::string& path) {
  if (!v.is_string()) throw DocumentError(path, "expected a string");
  return v.get<std::string>();
}

Signature signature_of(const std::string& type, const std::string& path) {
  if (type == "function") return Signature::scalar();
  if (type == "vector") return Signature::multivector(1);
  if (type == "covector") return Signature::form(1);
  if (type == "bivector") return Signature::multivector(2);
  const auto dash = type.find('-');
  if (dash != std::string::npos) {
    unsigned k = 0;
    const auto [end, ec] = std::from_chars(type.data(), type.data() + dash, k);
    const std::string rest = type.substr(dash + 1);
    if (ec == std::errc{} && end == type.data() + dash) {
      if (rest == "form") return Signature::form(k);
      if (rest == "vector") return Signature::multivector(k);
    }
  }
  throw DocumentError(path, "unknown field type '" + type + "'");
}

tensorcalc::Index index_of(const std::string& key, unsigned degree, bool antisymmetric, std::size_t dim,
                            const std::string& path) {
  tensorcalc::Index idx;
  if (!key.empty()) {
    std::stringstream s(key);
    std::string part;
    while (std::getline(s, part, ',')) {
      std::size_t i = 0;
      const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), i);
      if (ec != std::errc{} || end != part.data() + part.size()) throw DocumentError(path, "malformed index key");
      if (i >= dim) throw DocumentError(path, "index " + std::to_string(i) + " out of range");
      idx.push_back(i);
    }
  }
  if (antisymmetric) {
    tensorcalc::Index sorted = idx;
    if (tensorcalc::sort_with_sign(sorted) == 0) throw DocumentError(path, "repeated index");
  }
  if (idx.size() != degree)
    throw DocumentError(path, "expected " + std::to_string(degree) + " indices, got " + std::to_string(idx.size()));
  return idx;
}

Expr expression(const json& v, const ChartPtr& chart, const std::string& path) {
  const std::string text = string_of(v, path);
  try {
    return symexpr::parse(text, chart->names());
  } catch (const symexpr::ParseError& e) {
    throw DocumentError(path, e.what(), e.position());
  }
}

TensorField coefficient_table(const json& coeffs, const ChartPtr& chart, Signature sig, const std::string& path) {
  if (!coeffs.is_object()) throw DocumentError(path, "expected an object");
  TensorField t(chart, sig);
  for (const auto& [k, v] : coeffs.items()) {
    const std::string p = quoted(path, k);
    const tensorcalc::Index idx = index_of(k, sig.rank(), sig.kind != tensorcalc::Kind::General, chart->dim(), p);
    t.add(idx, expression(v, chart, p));
  }
  return t;
}

std::size_t var_position(const json& v, const ChartPtr& chart, const std::string& path) {
  const std::string name = string_of(v, path);
  const auto i = chart->index_of(name);
  if (!i) throw DocumentError(path, "undeclared variable '" + name + "'");
  return *i;
}

ChartPtr read_chart(const json& j) {
  only_keys(j, "chart", {"vars", "tangent_split"});
  const json& vars = required(j, "chart", "vars");
  if (!vars.is_array() || vars.empty()) throw DocumentError("chart.vars", "expected a nonempty array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) names.push_back(string_of(vars[i], "chart.vars[" + std::to_string(i) + "]"));
  ChartPtr chart;
  try {
    chart = tensorcalc::Chart::make(names);
  } catch (const std::exception& e) {
    throw DocumentError("chart.vars", e.what());
  }
  if (!j.contains("tangent_split")) return chart;
  const json& s = j.at("tangent_split");
  only_keys(s, "chart.tangent_split", {"tangent", "normal"});
  tensorcalc::TubularSplit split;
  for (const char* part : {"tangent", "normal"}) {
    const std::string p = std::string("chart.tangent_split.") + part;
    const json& list = required(s, "chart.tangent_split", part);
    if (!list.is_array()) throw DocumentError(p, "expected an array");
    auto& out = std::string_view(part) == "tangent" ? split.tangent : split.normal;
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(var_position(list[i], chart, p + "[" + std::to_string(i) + "]"));
  }
  try {
    return tensorcalc::Chart::with_split(chart, split);
  } catch (const std::exception& e) {
    throw DocumentError("chart.tangent_split", e.what());
  }
}

const TensorField& field_named(const InstanceDocument& doc, const json& v, const std::string& path) {
  const std::string name = string_of(v, path);
  const auto it = doc.fields.find(name);
  if (it == doc.fields.end()) throw DocumentError(path, "no field named '" + name + "'");
  return it->second;
}

void read_structure(InstanceDocument& doc, const json& j) {
  only_keys(j, "structure", {"kind", "source", "basis", "homogeneity"});
  const std::string kind = string_of(required(j, "structure", "kind"), "structure.kind");
  if (j.contains("homogeneity")) {
    const TensorField& Z = field_named(doc, j.at("homogeneity"), "structure.homogeneity");
    if (Z.signature() != Signature::multivector(1)) throw DocumentError("structure.homogeneity", "expected a vector field");
    doc.homogeneity = j.at("homogeneity").get<std::string>();
  }
  if (kind == "poisson" || kind == "presymplectic") {
    doc.kind = kind == "poisson" ? StructureKind::Poisson : StructureKind::Presymplectic;
    if (j.contains("basis")) throw DocumentError("structure.basis", "only allowed for kind dirac-basis");
    const TensorField& f = field_named(doc, required(j, "structure", "source"), "structure.source");
    doc.source = j.at("source").get<std::string>();
    try {
      doc.basis = doc.kind == StructureKind::Poisson ? dirac::from_poisson(f) : dirac::from_presymplectic(f);
    } catch (const std::exception& e) {
      throw DocumentError("structure.source", e.what());
    }
    return;
  }
  if (kind != "dirac-basis") throw DocumentError("structure.kind", "unknown kind '" + kind + "'");
  doc.kind = StructureKind::DiracBasis;
  if (j.contains("source")) throw DocumentError("structure.source", "not allowed for kind dirac-basis");
  const json& list = required(j, "structure", "basis");
  if (!list.is_array()) throw DocumentError("structure.basis", "expected an array");
  std::vector<dirac::DiracPair> pairs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "structure.basis[" + std::to_string(i) + "]";
    only_keys(list[i], p, {"X", "alpha"});
    const json empty = json::object();
    pairs.emplace_back(coefficient_table(list[i].value("X", empty), doc.chart, Signature::multivector(1), p + ".X"),
                       coefficient_table(list[i].value("alpha", empty), doc.chart, Signature::form(1), p + ".alpha"));
  }
  doc.basis = DiracBasis(doc.chart, std::move(pairs));
}

} // namespace

DocumentError::DocumentError(std::string path, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(path + ": " + message),
      path_(std::move(path)), position_(position) {}

const char* to_string(StructureKind k) {
  switch (k) {
  case StructureKind::Poisson: return "poisson";
  case StructureKind::Presymplectic: return "presymplectic";
  case StructureKind::DiracBasis: return "dirac-basis";
  }
  return "?";
}

bool is_task(std::string_view name) {
  for (std::string_view t : {"check", "tangent", "classify", "xu", "defect", "pullback"})
    if (name == t) return true;
  return false;
}

const TensorField& InstanceDocument::field(const std::string& name) const {
  const auto it = fields.find(name);
  if (it == fields.end()) throw std::invalid_argument("no field named '" + name + "'");
  return it->second;
}

InstanceDocument parse_document(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DocumentError("document", "invalid JSON at byte " + std::to_string(e.byte), e.byte);
  }
  only_keys(j, "", {"name", "chart", "fields", "structure", "tasks", "expect"});

  InstanceDocument doc;
  if (j.contains("name")) doc.name = string_of(j.at("name"), "name");
  doc.chart = read_chart(required(j, "", "chart"));

  if (j.contains("fields")) {
    const json& fields = j.at("fields");
    if (!fields.is_object()) throw DocumentError("fields", "expected an object");
    for (const auto& [name, f] : fields.items()) {
      const std::string p = key_path("fields", name);
      only_keys(f, p, {"type", "coeffs"});
      const Signature sig = signature_of(string_of(required(f, p, "type"), p + ".type"), p + ".type");
      doc.fields.emplace(name, coefficient_table(required(f, p, "coeffs"), doc.chart, sig, p + ".coeffs"));
    }
  }

  read_structure(doc, required(j, "", "structure"));

  if (j.contains("tasks")) {
    const json& tasks = j.at("tasks");
    if (!tasks.is_array()) throw DocumentError("tasks", "expected an array");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const std::string p = "tasks[" + std::to_string(i) + "]";
      const std::string t = string_of(tasks[i], p);
      if (!is_task(t)) throw DocumentError(p, "unknown task '" + t + "'");
      doc.tasks.push_back(t);
    }
  }

  if (j.contains("expect")) {
    const json& e = j.at("expect");
    if (!e.is_object()) throw DocumentError("expect", "expected an object");
    for (const auto& [k, v] : e.items()) {
      if (!v.is_boolean()) throw DocumentError(quoted("expect", k), "expected a boolean");
      doc.expect[k] = v.get<bool>();
    }
  }
  return doc;
}

InstanceDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("document", "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_document(s.str());
}

} // namespace tdirac::harness
