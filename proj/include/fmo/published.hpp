// Published FMO decomposition values, recomputed from first principles and
// compared item by item.
#pragma once

#include "fmo/decomposition.hpp"

#include <string>
#include <vector>

namespace fmo {

struct ClaimCheck {
  std::string id;
  std::string description;
  std::string claimed;
  std::string derived;
  bool match = false;
};

/// The two printed 8×8 conjugators, entered verbatim.
ComplexMatrix published_dissipative_conjugator();  // first stage-1 matrix (dissipative)
ComplexMatrix published_dephasing_conjugator();    // stage-1 matrix (dephasing)

/// Angle vectors printed for the universal-set elements. `generator` is the
/// 1-based site label; returns empty vectors where nothing was printed.
CanonicalParams published_dissipative_params(int generator);
CanonicalParams published_dephasing_params(int generator);

/// Every concrete claim with derived values, in a fixed order.
std::vector<ClaimCheck> check_published_claims(const OperatorBasis& basis);

/// "{i: value, ...}" over components above 1e−12 with 1-based indices.
std::string format_sparse(const ComplexVector& v);
std::string format_sparse(const RealVector& v);

}  // namespace fmo
