#pragma once

#include <cstddef>
#include <vector>

namespace jchm {

enum class Atom { Ground = 0, Excited = 1 };

struct BasisState {
  Atom atom = Atom::Ground;
  int photons = 0;

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Conserved quantity L = l*sigma_+ sigma_- + a^dagger a of a single basis state.
int l_eigenvalue(const BasisState& s, int l);

/// Single-site space |atom> (x) |n>, n = 0..n_max, enumerated with the atom
/// index running fastest: |g,0>, |e,0>, |g,1>, |e,1>, ...
class HilbertSpace {
 public:
  HilbertSpace(int l, int n_max);

  int l() const noexcept { return l_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return 2 * static_cast<std::size_t>(n_max_ + 1); }

  static constexpr std::size_t index_of(const BasisState& s) noexcept {
    return 2 * static_cast<std::size_t>(s.photons) + static_cast<std::size_t>(s.atom);
  }
  static constexpr BasisState state_of(std::size_t i) noexcept {
    return {i % 2 == 0 ? Atom::Ground : Atom::Excited, static_cast<int>(i / 2)};
  }

  bool contains(const BasisState& s) const noexcept {
    return s.photons >= 0 && s.photons <= n_max_;
  }

  int l_of(std::size_t i) const noexcept { return l_eigenvalue(state_of(i), l_); }

 private:
  int l_;
  int n_max_;
};

/// Validates 1 <= l <= 4 and n_max >= l; throws InvalidParameter otherwise.
HilbertSpace build_space(int l, int n_max);

}  // namespace jchm
