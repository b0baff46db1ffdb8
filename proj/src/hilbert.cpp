#include "jchm/hilbert.hpp"

#include <string>

#include "jchm/error.hpp"

namespace jchm {

int l_eigenvalue(const BasisState& s, int l) {
  return s.photons + (s.atom == Atom::Excited ? l : 0);
}

HilbertSpace::HilbertSpace(int l, int n_max) : l_(l), n_max_(n_max) {
  if (l < 1 || l > 4) {
    throw InvalidParameter("l", "photon order must lie in 1..4, got " + std::to_string(l));
  }
  if (n_max < l) {
    throw InvalidParameter("n_max", "truncation " + std::to_string(n_max) +
                                        " is below the photon order l=" + std::to_string(l));
  }
}

HilbertSpace build_space(int l, int n_max) { return HilbertSpace(l, n_max); }

}  // namespace jchm
