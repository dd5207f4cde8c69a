// tdirac: command-line front end for instance documents.
//
// Exit codes: 0 every check passed, 1 a mathematical check failed,
// 2 input or usage error.

#include "tdirac/harness/runner.hpp"
#include "tdirac/lifts/lifts.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

namespace {

using namespace tdirac;
using harness::InstanceDocument;
using harness::Report;
using nlohmann::ordered_json;
using tensorcalc::Kind;
using tensorcalc::TensorField;

std::string frame_label(const TensorField& t, const tensorcalc::Index& idx) {
  const auto& names = t.chart()->names();
  const Kind kind = t.signature().kind;
  if (idx.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += kind == Kind::General ? "*" : "^";
    const bool upper = kind == Kind::Multivector || (kind == Kind::General && i < t.signature().contra);
    s += (upper ? "d/d" : "d") + names[idx[i]];
  }
  return s;
}

std::string render_field(const TensorField& t) {
  std::string s;
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.coefficient(f).is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + symexpr::render(t.coefficient(f), t.chart()->vars()) + ") " + frame_label(t, t.index_at(f));
  }
  return s.empty() ? "0" : s;
}

ordered_json coeffs_json(const TensorField& t) {
  ordered_json j = ordered_json::object();
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.coefficient(f).is_zero()) continue;
    std::string key;
    for (std::size_t i : t.index_at(f)) key += (key.empty() ? "" : ",") + std::to_string(i);
    j[key] = symexpr::render(t.coefficient(f), t.chart()->vars());
  }
  return j;
}

std::string type_name(const tensorcalc::Signature& sig) {
  const unsigned k = sig.rank();
  if (k == 0) return "function";
  if (sig.kind == Kind::Form) return k == 1 ? "covector" : std::to_string(k) + "-form";
  if (sig.kind == Kind::Multivector) return k == 1 ? "vector" : k == 2 ? "bivector" : std::to_string(k) + "-vector";
  return tensorcalc::describe(sig);
}

ordered_json basis_json(const dirac::DiracBasis& D) {
  ordered_json chart = {{"vars", D.chart()->names()}};
  ordered_json pairs = ordered_json::array();
  for (const auto& p : D) pairs.push_back({{"X", coeffs_json(p.X)}, {"alpha", coeffs_json(p.alpha)}});
  return {{"chart", chart}, {"basis", pairs}};
}

std::string basis_text(const dirac::DiracBasis& D) {
  std::string s = "chart (";
  for (std::size_t i = 0; i < D.dim(); ++i) s += (i ? ", " : "") + D.chart()->names()[i];
  s += ")\n";
  for (std::size_t i = 0; i < D.size(); ++i)
    s += "pair " + std::to_string(i) + ": X = " + render_field(D[i].X) + "; alpha = " + render_field(D[i].alpha) + "\n";
  return s;
}

struct Options {
  std::string doc_path;
  std::size_t points = 25;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "text";
  bool timing = false;

  harness::SamplePlan plan() const {
    harness::SamplePlan p;
    p.count = points;
    p.seed = seed;
    p.tol = tol;
    p.timing = timing;
    p.validate();
    return p;
  }
  bool json() const { return format == "json"; }
};

int emit(const Report& r, const Options& o, const std::string& prefix = {}, const ordered_json& extra = {}) {
  if (o.json()) {
    ordered_json j = ordered_json::parse(r.json());
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << prefix << r.text();
  }
  return r.passed() ? 0 : 1;
}

int run_task(const Options& o, const std::string& task) {
  const InstanceDocument doc = harness::load_document(o.doc_path);
  const std::string tasks[] = {task};
  const Report r = harness::run_tasks(doc, tasks, o.plan());
  if (task == "tangent") {
    const auto T = dirac::tangent_lift(doc.structure());
    return emit(r, o, basis_text(T), {{"tangent", basis_json(T)}});
  }
  return emit(r, o);
}

int run_lift(const Options& o, const std::string& field, const std::string& kind) {
  const InstanceDocument doc = harness::load_document(o.doc_path);
  const auto it = doc.fields.find(field);
  if (it == doc.fields.end()) throw harness::DocumentError("--field", "no field named '" + field + "'");
  const auto tc = lifts::tangent_chart(doc.chart);
  const TensorField lifted = kind == "complete" ? lifts::complete_lift(tc, it->second) : lifts::vertical_lift(tc, it->second);
  if (o.json()) {
    ordered_json j = {{"chart", {{"vars", tc->names()}}},
                      {"fields", {{field + "^" + (kind == "complete" ? "C" : "V"),
                                   {{"type", type_name(lifted.signature())}, {"coeffs", coeffs_json(lifted)}}}}}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << field << (kind == "complete" ? "^C" : "^V") << " = " << render_field(lifted) << '\n';
  }
  return 0;
}

int run_bracket(const Options& o, std::size_t left, std::size_t right) {
  const InstanceDocument doc = harness::load_document(o.doc_path);
  const auto& D = doc.structure();
  if (left >= D.size() || right >= D.size())
    throw harness::DocumentError("--left/--right", "pair index out of range (basis has " + std::to_string(D.size()) + " pairs)");
  const dirac::DiracPair b = dirac::courant_bracket(D[left], D[right]);
  const bool inside = dirac::span_contains(D, b);
  if (o.json()) {
    ordered_json j = {{"left", left},
                      {"right", right},
                      {"bracket", {{"X", coeffs_json(b.X)}, {"alpha", coeffs_json(b.alpha)}}},
                      {"in_structure", inside}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "[pair " << left << ", pair " << right << "]: X = " << render_field(b.X)
              << "; alpha = " << render_field(b.alpha) << '\n'
              << (inside ? "PASS   " : "FAIL   ") << "bracket.in_structure\n";
  }
  return inside ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tangent-bundle lifts, Dirac structures and submanifold classification"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--points", o.points, "Sample points per check")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Sampling seed");
  app.add_option("--tol", o.tol, "Relative SVD tolerance of the numeric oracle")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", o.timing, "Report wall-clock time per task");

  std::string field, kind = "complete";
  std::size_t left = 0, right = 0;
  int code = 0;

  auto doc_arg = [&](CLI::App* sub) { sub->add_option("doc", o.doc_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile); };

  auto* lift = app.add_subcommand("lift", "Vertical or complete lift of a document field");
  doc_arg(lift);
  lift->add_option("--field", field, "Field name")->required();
  lift->add_option("--kind", kind, "Lift kind")->check(CLI::IsMember({"complete", "vertical"}));
  lift->callback([&] { code = run_lift(o, field, kind); });

  auto* bracket = app.add_subcommand("bracket", "Courant bracket of two basis pairs");
  doc_arg(bracket);
  bracket->add_option("--left", left, "Index of the left pair")->required();
  bracket->add_option("--right", right, "Index of the right pair")->required();
  bracket->callback([&] { code = run_bracket(o, left, right); });

  for (const auto& [name, help] : std::initializer_list<std::pair<const char*, const char*>>{
           {"check", "Almost-Dirac, integrability and homogeneity checks"},
           {"tangent", "Tangent Dirac structure and its checks"},
           {"classify", "Submanifold classification"},
           {"xu", "Totally Dirac versus the lifted normal bundle, with certificates"}}) {
    auto* sub = app.add_subcommand(name, help);
    doc_arg(sub);
    sub->callback([&, task = std::string(name)] { code = run_task(o, task); });
  }

  auto* suite = app.add_subcommand("suite", "Run the document's task list");
  doc_arg(suite);
  suite->callback([&] {
    const InstanceDocument doc = harness::load_document(o.doc_path);
    code = emit(harness::run_suite(doc, o.plan()), o);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const harness::DocumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}
