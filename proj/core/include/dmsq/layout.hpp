#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace dmsq {

enum class Quadrature { X, Y };

/// Identifies one bosonic mode: a mechanical mode b_l (0-based index l)
/// or the cavity mode a. Printed names are "b1".."bN" and "a".
class ModeId {
 public:
  static constexpr ModeId mechanical(std::size_t index) { return ModeId(index, false); }
  static constexpr ModeId optical() { return ModeId(0, true); }

  /// Accepts "a", "b1", "b2", ... (1-based on the text side).
  static ModeId parse(std::string_view name);

  constexpr bool is_optical() const { return optical_; }
  /// 0-based mechanical index; meaningless for the optical mode.
  constexpr std::size_t index() const { return index_; }
  std::string name() const;

  friend constexpr bool operator==(ModeId, ModeId) = default;

 private:
  constexpr ModeId(std::size_t index, bool optical) : index_(index), optical_(optical) {}

  std::size_t index_;
  bool optical_;
};

/// Fixed quadrature ordering [X_b1, Y_b1, ..., X_bN, Y_bN, X_a, Y_a].
/// Every matrix in the library is indexed through this class.
class QuadratureLayout {
 public:
  explicit QuadratureLayout(std::size_t n_mech) : n_mech_(n_mech) {}

  std::size_t n_mech() const { return n_mech_; }
  std::size_t dim() const { return 2 * (n_mech_ + 1); }

  /// Throws std::out_of_range for a mechanical index >= n_mech.
  std::size_t index(ModeId mode, Quadrature quad) const;
  std::size_t x(ModeId mode) const { return index(mode, Quadrature::X); }
  std::size_t y(ModeId mode) const { return index(mode, Quadrature::Y); }

  std::size_t mech_x(std::size_t l) const { return x(ModeId::mechanical(l)); }
  std::size_t mech_y(std::size_t l) const { return y(ModeId::mechanical(l)); }
  std::size_t cav_x() const { return 2 * n_mech_; }
  std::size_t cav_y() const { return 2 * n_mech_ + 1; }

 private:
  std::size_t n_mech_;
};

}  // namespace dmsq
