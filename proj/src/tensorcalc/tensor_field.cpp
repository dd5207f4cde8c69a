#include "tdirac/tensorcalc/tensor_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tdirac::tensorcalc {

std::string describe(const Signature& s) {
  switch (s.kind) {
  case Kind::Form: return std::to_string(s.co) + "-form";
  case Kind::Multivector: return std::to_string(s.contra) + "-vector";
  case Kind::General: return "(" + std::to_string(s.contra) + "," + std::to_string(s.co) + ")-tensor";
  }
  return "?";
}

int sort_with_sign(Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

namespace {

void combinations(std::size_t n, std::size_t k, std::size_t start, Index& cur, std::vector<Index>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::shared_ptr<const std::vector<Index>> layout_for(std::size_t n, const Signature& sig) {
  using Key = std::tuple<std::size_t, int, unsigned, unsigned>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const std::vector<Index>>> cache;
  const Key key{n, static_cast<int>(sig.kind), sig.contra, sig.co};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto tuples = std::make_shared<std::vector<Index>>();
  const unsigned r = sig.rank();
  if (sig.antisymmetric()) {
    Index cur;
    if (r <= n) combinations(n, r, 0, cur, *tuples);
  } else {
    std::size_t total = 1;
    for (unsigned s = 0; s < r; ++s) total *= n;
    for (std::size_t f = 0; f < total; ++f) {
      Index idx(r);
      std::size_t rest = f;
      for (unsigned s = r; s-- > 0;) {
        idx[s] = rest % n;
        rest /= n;
      }
      tuples->push_back(std::move(idx));
    }
  }
  cache.emplace(key, tuples);
  return tuples;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace

TensorField::TensorField(ChartPtr chart, Signature sig) : chart_(std::move(chart)), sig_(sig) {
  if (!chart_) throw std::invalid_argument("TensorField: null chart");
  if (sig_.kind == Kind::Form && sig_.contra != 0) throw std::invalid_argument("TensorField: form with upper slots");
  if (sig_.kind == Kind::Multivector && sig_.co != 0)
    throw std::invalid_argument("TensorField: multivector with lower slots");
  if (sig_.kind == Kind::Multivector && sig_.contra == 0) sig_ = Signature::scalar();
  if (sig_.kind == Kind::General && sig_.rank() == 0) sig_ = Signature::scalar();
  layout_ = layout_for(chart_->dim(), sig_);
  coeffs_.resize(layout_->size());
}

TensorField TensorField::function(ChartPtr chart, Expr f) {
  TensorField t(std::move(chart), Signature::scalar());
  t.coeffs_[0] = std::move(f);
  return t;
}

TensorField TensorField::vector_field(ChartPtr chart, std::vector<Expr> components) {
  TensorField t(std::move(chart), Signature::multivector(1));
  if (components.size() != t.dim()) throw std::invalid_argument("vector_field: wrong component count");
  t.coeffs_ = std::move(components);
  return t;
}

TensorField TensorField::one_form(ChartPtr chart, std::vector<Expr> components) {
  TensorField t(std::move(chart), Signature::form(1));
  if (components.size() != t.dim()) throw std::invalid_argument("one_form: wrong component count");
  t.coeffs_ = std::move(components);
  return t;
}

TensorField TensorField::coordinate_vector(ChartPtr chart, std::size_t i) {
  TensorField t(std::move(chart), Signature::multivector(1));
  t.coeffs_.at(i) = Expr(1);
  return t;
}

TensorField TensorField::coordinate_covector(ChartPtr chart, std::size_t i) {
  TensorField t(std::move(chart), Signature::form(1));
  t.coeffs_.at(i) = Expr(1);
  return t;
}

const Index& TensorField::index_at(std::size_t flat) const { return (*layout_)[flat]; }

std::size_t TensorField::flat_index(std::span<const std::size_t> idx) const {
  const std::size_t n = dim();
  std::size_t flat = 0;
  if (!sig_.antisymmetric()) {
    for (auto i : idx) flat = flat * n + i;
    return flat;
  }
  const std::size_t k = idx.size();
  std::size_t prev = 0;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = prev; j < idx[s]; ++j) flat += binomial(n - 1 - j, k - 1 - s);
    prev = idx[s] + 1;
  }
  return flat;
}

Expr TensorField::component(std::span<const std::size_t> idx) const {
  if (idx.size() != sig_.rank()) throw std::invalid_argument("component: wrong index count");
  for (auto i : idx)
    if (i >= dim()) throw std::out_of_range("component: index out of range");
  if (!sig_.antisymmetric()) return coeffs_[flat_index(idx)];
  Index sorted(idx.begin(), idx.end());
  const int sign = sort_with_sign(sorted);
  if (sign == 0) return Expr{};
  const Expr& c = coeffs_[flat_index(sorted)];
  return sign > 0 ? c : -c;
}

const Expr& TensorField::value() const {
  if (!sig_.is_scalar()) throw std::logic_error("value: field is not a function");
  return coeffs_[0];
}

void TensorField::set(std::span<const std::size_t> idx, Expr value) {
  if (idx.size() != sig_.rank()) throw std::invalid_argument("set: wrong index count");
  for (auto i : idx)
    if (i >= dim()) throw std::out_of_range("set: index out of range");
  if (!sig_.antisymmetric()) {
    coeffs_[flat_index(idx)] = std::move(value);
    return;
  }
  Index sorted(idx.begin(), idx.end());
  const int sign = sort_with_sign(sorted);
  if (sign == 0) {
    if (!value.is_zero()) throw std::invalid_argument("set: repeated index in antisymmetric field");
    return;
  }
  coeffs_[flat_index(sorted)] = sign > 0 ? std::move(value) : -value;
}

void TensorField::add(std::span<const std::size_t> idx, const Expr& value) {
  if (value.is_zero()) return;
  if (!sig_.antisymmetric()) {
    coeffs_[flat_index(idx)] += value;
    return;
  }
  Index sorted(idx.begin(), idx.end());
  const int sign = sort_with_sign(sorted);
  if (sign == 0) return;
  if (sign > 0) coeffs_[flat_index(sorted)] += value;
  else coeffs_[flat_index(sorted)] -= value;
}

bool TensorField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Expr& e) { return e.is_zero(); });
}

TensorField TensorField::map(const std::function<Expr(const Expr&)>& f) const {
  TensorField r = *this;
  for (auto& c : r.coeffs_) c = f(c);
  return r;
}

TensorField& TensorField::operator+=(const TensorField& o) {
  require_same_chart(chart_, o.chart_, "operator+");
  if (!(sig_ == o.sig_)) throw std::invalid_argument("operator+: signature mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TensorField& TensorField::operator-=(const TensorField& o) {
  require_same_chart(chart_, o.chart_, "operator-");
  if (!(sig_ == o.sig_)) throw std::invalid_argument("operator-: signature mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TensorField TensorField::operator-() const {
  return map([](const Expr& e) { return -e; });
}

TensorField operator*(const Expr& f, const TensorField& t) {
  return t.map([&](const Expr& e) { return f * e; });
}

bool operator==(const TensorField& a, const TensorField& b) {
  return same_chart(a.chart_, b.chart_) && a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
}

std::string to_string(const TensorField& t) {
  std::ostringstream os;
  os << describe(t.signature()) << " {";
  bool first = true;
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.coefficient(f).is_zero()) continue;
    os << (first ? " " : ", ") << '[';
    const auto& idx = t.index_at(f);
    for (std::size_t s = 0; s < idx.size(); ++s) os << (s ? "," : "") << idx[s] + 1;
    os << "]: " << symexpr::render(t.coefficient(f), t.chart()->vars());
    first = false;
  }
  os << (first ? "}" : " }");
  return os.str();
}

} // namespace tdirac::tensorcalc
