#include "dmsq/layout.hpp"

#include <charconv>
#include <stdexcept>

namespace dmsq {

ModeId ModeId::parse(std::string_view name) {
  if (name == "a") return optical();
  if (name.size() >= 2 && name.front() == 'b') {
    std::size_t one_based = 0;
    const char* first = name.data() + 1;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, one_based);
    if (ec == std::errc() && ptr == last && one_based >= 1) return mechanical(one_based - 1);
  }
  throw std::invalid_argument("unknown mode name '" + std::string(name) + "' (expected a, b1, b2, ...)");
}

std::string ModeId::name() const {
  return optical_ ? std::string("a") : "b" + std::to_string(index_ + 1);
}

std::size_t QuadratureLayout::index(ModeId mode, Quadrature quad) const {
  const std::size_t offset = quad == Quadrature::X ? 0 : 1;
  if (mode.is_optical()) return 2 * n_mech_ + offset;
  if (mode.index() >= n_mech_) {
    throw std::out_of_range("mode " + mode.name() + " out of range for " + std::to_string(n_mech_) +
                            " mechanical modes");
  }
  return 2 * mode.index() + offset;
}

}  // namespace dmsq
