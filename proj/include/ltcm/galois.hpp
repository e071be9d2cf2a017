#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltcm/curves.hpp"
#include "ltcm/gl2.hpp"
#include "ltcm/rational.hpp"

namespace ltcm {

/// Explicit Gal(K(E[m_E])/K) inside GL2(Z/m_E Z).
struct GaloisModel {
  std::string curve_id;
  MatrixGroup group;
  std::string recipe;  // one clause per prime-power part
};

struct GammaSet {
  std::uint32_t m_E;
  std::vector<std::uint32_t> residues;  // ascending
};

/// Per isogeny class; members of a class share one model. Cached.
const GaloisModel& build_group(const CurveSpec& curve);

/// The recipe group at level p^k (k >= 1), as used for modulus m_E and for
/// the pullback check. For p not dividing m_E this is the full Cartan.
MatrixGroup local_group(const CurveSpec& curve, std::uint32_t p, unsigned k);
/// The Cartan container at level p^k housing local_group.
CartanParams local_cartan_params(const CurveSpec& curve, std::uint32_t p, unsigned k);

/// census[r mod m_E] / |G|; 0 when r is not a trace. Throws
/// std::invalid_argument for r = 0.
Rational kappa(const CurveSpec& curve, std::int64_t r);

GammaSet gamma_set(const CurveSpec& curve);

/// Pullback property at multiplier * m_E, multiplier in {2, 3, 5}.
bool verify_mE(const CurveSpec& curve, unsigned multiplier);

}  // namespace ltcm
