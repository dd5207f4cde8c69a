#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tdirac::symexpr {

/// Interned variable name. Ids are process-wide and assigned in order of first
/// use, so the monomial order follows the order in which charts declare their
/// variables.
class Var {
public:
  Var() = default;

  static Var named(std::string_view name);

  std::uint32_t id() const { return id_; }
  const std::string& name() const;

  friend auto operator<=>(const Var&, const Var&) = default;

private:
  explicit Var(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = UINT32_MAX;
};

} // namespace tdirac::symexpr
