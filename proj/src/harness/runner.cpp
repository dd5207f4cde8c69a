#include "tdirac/harness/runner.hpp"

#include "tdirac/harness/numeric.hpp"
#include "tdirac/submanifold/submanifold.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tdirac::harness {

namespace sm = submanifold;
using dirac::CheckContext;
using dirac::DiracPair;
using dirac::Verdict;

void SamplePlan::validate() const {
  if (count < 1) throw std::invalid_argument("point count must be at least 1");
  if (range < 1 || max_den < 1) throw std::invalid_argument("sampling range and denominator bound must be positive");
  if (!(tol > 0) || !(fd_step > 0) || !(fd_tol > 0)) throw std::invalid_argument("tolerances must be positive");
}

CheckContext SamplePlan::context(dirac::DecisionSink* sink) const {
  CheckContext ctx;
  ctx.count = count;
  ctx.seed = seed;
  ctx.range = range;
  ctx.max_den = max_den;
  ctx.sink = sink;
  return ctx;
}

namespace {

std::string scientific(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

class Recorder {
public:
  explicit Recorder(Report& report) : report_(report) {}

  void check(std::string name, bool ok, std::string detail = {}) {
    report_.entries.push_back({ReportEntry::Kind::Check, std::move(name), ok, std::move(detail), {}});
  }
  void check(std::string name, const Verdict& v) { check(std::move(name), v.holds, v.certificate); }
  void property(std::string name, bool value, std::string detail = {}) {
    report_.entries.push_back({ReportEntry::Kind::Property, std::move(name), value, std::move(detail), {}});
  }
  void property(std::string name, const Verdict& v) { property(std::move(name), v.holds, v.certificate); }

private:
  Report& report_;
};

const tensorcalc::TubularSplit& require_split(const InstanceDocument& doc, const char* task) {
  if (!doc.chart->split()) throw std::invalid_argument(std::string(task) + " needs chart.tangent_split");
  return *doc.chart->split();
}

void run_check(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  const DiracBasis& D = doc.structure();
  out.check("check.almost_dirac", dirac::check_almost_dirac(D, ctx));
  out.check("check.integrable", dirac::check_integrable(D));
  if (doc.homogeneity) out.check("check.homogeneous", dirac::check_homogeneous(D, doc.field(*doc.homogeneity)));
}

void run_tangent(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  const DiracBasis& D = doc.structure();
  const DiracBasis T = dirac::tangent_lift(D);
  const std::size_t n = D.dim();
  out.check("tangent.size", T.size() == 2 * n, std::to_string(T.size()) + " pairs on a chart of dimension " + std::to_string(2 * n));
  out.check("tangent.almost_dirac", dirac::check_almost_dirac(T, ctx));

  const bool base_integrable = dirac::check_integrable(D).holds;
  const Verdict lifted = dirac::check_integrable(T);
  out.property("tangent.integrable", lifted);
  out.check("tangent.integrability_matches_base", lifted.holds == base_integrable,
            base_integrable ? "D integrable" : "D not integrable");

  const auto S = lifts::tangent_structure(T.chart());
  std::string s_fail;
  for (std::size_t i = 0; i < T.size() && s_fail.empty(); ++i)
    if (!dirac::span_contains(T, DiracPair(S.apply(T[i].X), S.pull(T[i].alpha))))
      s_fail = "S applied to pair " + std::to_string(i) + " leaves the structure";
  out.check("tangent.s_invariant", s_fail.empty(), s_fail);

  if (base_integrable) out.check("tangent.homogeneous", dirac::check_homogeneous(T, lifts::euler_field(T.chart())));

  if (doc.kind != StructureKind::DiracBasis) {
    const TensorField lifted_source = lifts::complete_lift(T.chart(), doc.field(doc.source));
    const DiracBasis graph = doc.kind == StructureKind::Poisson ? dirac::from_poisson(lifted_source)
                                                                : dirac::from_presymplectic(lifted_source);
    out.check("tangent.graph_agreement", dirac::same_span(T, graph));
  }
}

void run_classify(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  const auto& split = require_split(doc, "classify");
  const sm::ClassificationReport r = sm::classify(doc.structure(), split, ctx);
  out.property("classify.properly_normalized", r.properly_normalized);
  out.property("classify.cosymplectic", r.cosymplectic.verdict);
  out.property("classify.totally_dirac", r.totally_dirac);
  out.property("classify.coisotropic", r.coisotropic);
  out.property("classify.isotropic", r.isotropic);
  if (r.second_fundamental_form) out.check("classify.second_fundamental_form_skew", r.second_fundamental_form->skew());
  if (r.cosymplectic.verdict)
    out.check("classify.cosymplectic_totally_dirac", r.totally_dirac.holds,
              r.totally_dirac.holds ? std::string() : r.totally_dirac.certificate);
}

void run_xu(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  const auto& split = require_split(doc, "xu");
  if (doc.kind == StructureKind::DiracBasis) throw std::invalid_argument("xu needs a poisson or presymplectic structure");
  const bool poisson = doc.kind == StructureKind::Poisson;
  const TensorField& f = doc.field(doc.source);
  const sm::XuResult r = poisson ? sm::xu_test(f, split, ctx) : sm::xu_test_presymplectic(f, split, ctx);
  out.property("xu.totally_dirac", r.totally_dirac);
  out.property(poisson ? "xu.nu_coisotropic" : "xu.nu_isotropic", r.lifted);
  out.check("xu.equivalence", r.consistent(),
            "mixed: " + r.mixed.render(doc.chart) + "; normal derivatives: " + r.normal_derivatives.render(doc.chart));
}

void run_defect(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  const auto& split = require_split(doc, "defect");
  const Verdict cosymplectic = sm::check_cosymplectic(doc.structure(), split, ctx).verdict;
  if (!cosymplectic) {
    out.property("defect.applicable", false, "N is not cosymplectic");
    return;
  }
  const sm::DefectReport r = sm::defect_of_natural_normal_bundle(doc.structure(), split, ctx);
  std::size_t lo = r.dim, hi = 0;
  for (const auto& [p, d] : r.defaults) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  std::string detail = r.verdict.holds ? "d in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], bounds [" +
                                             std::to_string(r.codim) + ", " + std::to_string(r.dim) + "]"
                                       : r.verdict.certificate;
  out.check("defect.bounds", r.verdict.holds, detail);
}

void run_pullback(const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  out.check("pullback.never_coisotropic", sm::vertical_pullback_nu_check(doc.structure(), require_split(doc, "pullback"), ctx));
}

void run_task(const std::string& task, const InstanceDocument& doc, const CheckContext& ctx, Recorder& out) {
  static const std::map<std::string, std::function<void(const InstanceDocument&, const CheckContext&, Recorder&)>> table{
      {"check", run_check},   {"tangent", run_tangent}, {"classify", run_classify},
      {"xu", run_xu},         {"defect", run_defect},   {"pullback", run_pullback}};
  const auto it = table.find(task);
  if (it == table.end()) throw std::invalid_argument("unknown task '" + task + "'");
  it->second(doc, ctx, out);
}

std::vector<symexpr::NumericPoint> numeric_points(const CheckContext& ctx, const tensorcalc::ChartPtr& chart) {
  std::vector<symexpr::NumericPoint> out;
  for (const auto& p : ctx.points(chart->vars())) out.push_back(to_numeric(p));
  return out;
}

void derivative_audit(const InstanceDocument& doc, const SamplePlan& plan, const CheckContext& ctx, Recorder& out) {
  DerivativeAudit audit;
  const auto tc = lifts::tangent_chart(doc.chart);
  const auto base_points = numeric_points(ctx, doc.chart);
  const auto lifted_points = numeric_points(ctx, tc);
  auto audit_field = [&](const TensorField& t) {
    audit_partials(audit, t, base_points, plan.fd_step);
    audit_complete_lifts(audit, tc, t, lifted_points, plan.fd_step);
  };
  for (const auto& [name, t] : doc.fields) audit_field(t);
  for (const DiracPair& p : doc.structure()) {
    audit_field(p.X);
    audit_field(p.alpha);
  }
  std::string detail = std::to_string(audit.checked) + " derivatives, max relative error " + scientific(audit.max_error);
  if (audit.max_error >= plan.fd_tol) detail += " at " + audit.worst;
  out.check("oracle.finite_difference", audit.max_error < plan.fd_tol, detail);
}

} // namespace

bool Report::passed() const {
  for (const auto& e : entries)
    if (e.kind == ReportEntry::Kind::Check && !e.value) return false;
  return true;
}

std::string Report::text() const {
  std::ostringstream s;
  s << "document " << (document.empty() ? "(unnamed)" : document) << " (seed " << seed << ", " << points
    << " points)\n";
  std::size_t checks = 0, failed = 0;
  for (const auto& e : entries) {
    std::string tag;
    if (e.kind == ReportEntry::Kind::Check) {
      ++checks;
      failed += !e.value;
      tag = e.value ? "PASS" : "FAIL";
    } else {
      tag = e.value ? "true" : "false";
    }
    tag.resize(7, ' ');
    s << tag << e.name;
    if (!e.detail.empty()) s << ": " << e.detail;
    if (e.millis) s << " [" << scientific(*e.millis) << " ms]";
    s << '\n';
  }
  s << checks << " checks, " << failed << " failed\n";
  return s.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["document"] = document;
  j["seed"] = seed;
  j["points"] = points;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json x;
    x["kind"] = e.kind == ReportEntry::Kind::Check ? "check" : "property";
    x["name"] = e.name;
    x["value"] = e.value;
    x["detail"] = e.detail;
    if (e.millis) x["millis"] = *e.millis;
    j["entries"].push_back(std::move(x));
  }
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

Report run_tasks(const InstanceDocument& doc, std::span<const std::string> tasks, const SamplePlan& plan) {
  plan.validate();
  Report report;
  report.document = doc.name;
  report.seed = plan.seed;
  report.points = plan.count;
  if (tasks.empty()) return report;

  NumericOracle oracle(plan.tol);
  const CheckContext ctx = plan.context(&oracle);
  Recorder out(report);
  for (const std::string& task : tasks) {
    const std::size_t first = report.entries.size();
    const auto start = std::chrono::steady_clock::now();
    try {
      run_task(task, doc, ctx, out);
    } catch (const std::exception& e) {
      out.check(task + ".error", false, e.what());
    }
    if (plan.timing && report.entries.size() > first) {
      const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
      report.entries.back().millis = took.count();
    }
  }

  for (const auto& [key, expected] : doc.expect) {
    // expectations about tasks that were not selected are skipped
    if (std::ranges::find(tasks, key.substr(0, key.find('.'))) == tasks.end()) continue;
    const ReportEntry* found = nullptr;
    for (const auto& e : report.entries)
      if (e.name == key) found = &e;
    if (!found)
      out.check("expect." + key, false, "not reported by the selected tasks");
    else
      out.check("expect." + key, found->value == expected,
                std::string("expected ") + (expected ? "true" : "false"));
  }

  std::string detail = std::to_string(oracle.decisions()) + " decisions, " +
                       std::to_string(oracle.disagreements().size()) + " disagreements";
  if (!oracle.disagreements().empty()) detail += "; first: " + oracle.disagreements().front();
  out.check("oracle.numeric_agreement", oracle.disagreements().empty(), detail);
  derivative_audit(doc, plan, ctx, out);
  return report;
}

Report run_suite(const InstanceDocument& doc, const SamplePlan& plan) { return run_tasks(doc, doc.tasks, plan); }

} // namespace tdirac::harness
