#include "tdirac/symexpr/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tdirac::symexpr {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(v, exponent);
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, Var x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::lowered(Var v) const {
  Monomial m = *this;
  for (auto it = m.factors_.begin(); it != m.factors_.end(); ++it) {
    if (it->first != v) continue;
    --m.degree_;
    if (--it->second == 0) m.factors_.erase(it);
    return m;
  }
  throw std::logic_error("Monomial::lowered: variable absent");
}

Monomial Monomial::without(Var v) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != v) {
      m.factors_.push_back(f);
      m.degree_ += f.second;
    }
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::optional<Monomial> Monomial::quotient(const Monomial& a, const Monomial& b) {
  Monomial q;
  auto i = a.factors_.begin();
  for (const auto& [v, e] : b.factors_) {
    while (i != a.factors_.end() && i->first < v) q.factors_.push_back(*i++);
    if (i == a.factors_.end() || i->first != v || i->second < e) return std::nullopt;
    if (i->second > e) q.factors_.emplace_back(v, i->second - e);
    ++i;
  }
  while (i != a.factors_.end()) q.factors_.push_back(*i++);
  q.degree_ = a.degree_ - b.degree_;
  return q;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    // A factor in an earlier variable makes the monomial larger.
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first ? 1 : -1;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second ? 1 : -1;
  }
  if (i < fa.size()) return 1;
  if (i < fb.size()) return -1;
  return 0;
}

// -------------------------------------------------------------------- Expr

namespace {

bool term_greater(const Term& x, const Term& y) {
  return grlex_compare(x.monomial, y.monomial) > 0;
}

} // namespace

Expr::Expr(const Rational& c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

Expr Expr::variable(Var v) { return monomial(Rational(1), Monomial::of(v)); }

Expr Expr::monomial(Rational c, Monomial m) {
  if (c == 0) return Expr{};
  std::vector<Term> t;
  t.push_back(Term{std::move(m), std::move(c)});
  return Expr(std::move(t));
}

Expr Expr::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return Expr(std::move(out));
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Expr::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return Rational(0);
}

std::uint32_t Expr::degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Expr& Expr::operator+=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    int c = 0;
    if (i == terms_.end()) c = -1;
    else if (j == o.terms_.end()) c = 1;
    else c = grlex_compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(std::move(*i++));
    } else if (c < 0) {
      out.push_back(*j++);
    } else {
      Rational s = i->coeff + j->coeff;
      if (s != 0) out.push_back(Term{std::move(i->monomial), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr{};
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back(Term{x.monomial * y.monomial, x.coeff * y.coeff});
  return Expr::from_unsorted(std::move(prod));
}

Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

Expr Expr::scaled(const Rational& c) const {
  if (c == 0) return Expr{};
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Expr Expr::pow(std::uint32_t k) const {
  Expr result(1);
  Expr base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

// ------------------------------------------------------------- operations

Expr differentiate(const Expr& e, Var v) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    const auto k = t.monomial.exponent(v);
    if (k == 0) continue;
    out.push_back(Term{t.monomial.lowered(v), t.coeff * k});
  }
  // Monomial orders are compatible with division by a common variable, so
  // `out` is still sorted and duplicate-free.
  return Expr(std::move(out));
}

Rational evaluate(const Expr& e, const Point& point) {
  Rational total(0);
  for (const auto& t : e.terms()) {
    Rational value = t.coeff;
    for (const auto& [v, k] : t.monomial.factors()) {
      auto it = point.find(v);
      if (it == point.end())
        throw std::invalid_argument("evaluate: unassigned variable '" + v.name() + "'");
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), k);
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), k);
      value *= p;
    }
    total += value;
  }
  return total;
}

double evaluate_numeric(const Expr& e, const NumericPoint& point) {
  double total = 0.0;
  for (const auto& t : e.terms()) {
    double value = t.coeff.get_d();
    for (const auto& [v, k] : t.monomial.factors()) {
      auto it = point.find(v);
      if (it == point.end())
        throw std::invalid_argument("evaluate_numeric: unassigned variable '" + v.name() + "'");
      value *= std::pow(it->second, static_cast<double>(k));
    }
    total += value;
  }
  return total;
}

Expr substitute(const Expr& e, const Substitution& assignments) {
  if (assignments.empty()) return e;
  Expr result;
  std::map<std::pair<Var, std::uint32_t>, Expr> powers;
  for (const auto& t : e.terms()) {
    Monomial kept;
    Expr factor(t.coeff);
    for (const auto& [v, k] : t.monomial.factors()) {
      auto it = assignments.find(v);
      if (it == assignments.end()) {
        kept = kept * Monomial::of(v, k);
        continue;
      }
      auto key = std::make_pair(v, k);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, it->second.pow(k)).first;
      factor *= pw->second;
    }
    result += factor * Expr::monomial(Rational(1), kept);
  }
  return result;
}

std::optional<Expr> divide_exact(const Expr& dividend, const Expr& divisor) {
  if (divisor.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (divisor.is_constant()) return dividend.scaled(1 / divisor.leading().coeff);
  Expr remainder = dividend;
  Expr quotient;
  const Term& lead = divisor.leading();
  while (!remainder.is_zero()) {
    const Term& r = remainder.leading();
    auto m = Monomial::quotient(r.monomial, lead.monomial);
    if (!m) return std::nullopt;
    Expr step = Expr::monomial(r.coeff / lead.coeff, std::move(*m));
    remainder -= step * divisor;
    quotient += step;
  }
  return quotient;
}

std::vector<Var> variables(const Expr& e) {
  std::vector<Var> vars;
  for (const auto& t : e.terms())
    for (const auto& f : t.monomial.factors()) vars.push_back(f.first);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool depends_on(const Expr& e, Var v) {
  for (const auto& t : e.terms())
    if (t.monomial.exponent(v) > 0) return true;
  return false;
}

namespace {

struct RenderTerm {
  Rational coeff;
  std::vector<Monomial::Factor> factors;
};

std::string render_terms(std::span<const RenderTerm> terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const RenderTerm& t : terms) {
    Rational c = t.coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = (c == 1);
    if (!unit || t.factors.empty()) os << c.get_str();
    bool need_star = !unit;
    for (const auto& [v, k] : t.factors) {
      if (need_star) os << '*';
      os << v.name();
      if (k > 1) os << '^' << k;
      need_star = true;
    }
  }
  return os.str();
}

} // namespace

std::string render(const Expr& e) {
  std::vector<RenderTerm> terms;
  for (const auto& t : e.terms())
    terms.push_back({t.coeff, {t.monomial.factors().begin(), t.monomial.factors().end()}});
  return render_terms(terms);
}

std::string render(const Expr& e, std::span<const Var> order) {
  auto rank_of = [&](Var v) -> std::uint64_t {
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] == v) return i;
    return order.size() + static_cast<std::uint64_t>(v.id());
  };
  // Exponent vectors over the requested order, then graded lex comparison.
  using Key = std::vector<std::pair<std::uint64_t, std::uint32_t>>;
  std::vector<std::pair<Key, const Term*>> keyed;
  for (const auto& t : e.terms()) {
    Key k;
    for (const auto& [v, x] : t.monomial.factors()) k.emplace_back(rank_of(v), x);
    std::sort(k.begin(), k.end());
    keyed.emplace_back(std::move(k), &t);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const auto da = a.second->monomial.degree(), db = b.second->monomial.degree();
    if (da != db) return da > db;
    const Key& ka = a.first;
    const Key& kb = b.first;
    for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i) {
      if (ka[i].first != kb[i].first) return ka[i].first < kb[i].first;
      if (ka[i].second != kb[i].second) return ka[i].second > kb[i].second;
    }
    return ka.size() > kb.size();
  });
  std::vector<RenderTerm> terms;
  for (const auto& [key, t] : keyed) {
    RenderTerm r{t->coeff, {t->monomial.factors().begin(), t->monomial.factors().end()}};
    std::sort(r.factors.begin(), r.factors.end(),
              [&](const auto& a, const auto& b) { return rank_of(a.first) < rank_of(b.first); });
    terms.push_back(std::move(r));
  }
  return render_terms(terms);
}

} // namespace tdirac::symexpr
