#include "tdirac/symexpr/var.hpp"
#include "tdirac/symexpr/rational.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace tdirac::symexpr {

namespace {

struct Registry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

} // namespace

Var Var::named(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  std::string key(name);
  if (auto it = r.ids.find(key); it != r.ids.end()) return Var(it->second);
  const auto id = static_cast<std::uint32_t>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(std::move(key), id);
  return Var(id);
}

const std::string& Var::name() const {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  if (id_ >= r.names.size()) throw std::out_of_range("Var: unregistered id");
  return r.names[id_];
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

} // namespace tdirac::symexpr
