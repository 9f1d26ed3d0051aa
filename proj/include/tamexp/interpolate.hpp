#pragma once

#include <vector>

#include "tamexp/ff.hpp"

namespace tamexp {

// f in F_p[y] with f(mus[i]) = nus[i]; requires pairwise distinct minimal
// polynomials and nus[i] in F_p(mus[i])
UPoly interpolate(const Field& F, const std::vector<Elem>& mus, const std::vector<Elem>& nus);

}  // namespace tamexp
