#include "zcwell/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace zcwell {

DeltaArrayPotential::DeltaArrayPotential(WellDomain domain,
                                         std::vector<DeltaSpike> spikes)
    : domain_(domain), spikes_(std::move(spikes)) {
  const double w = domain_.width;
  for (std::size_t i = 0; i < spikes_.size(); ++i) {
    const DeltaSpike& s = spikes_[i];
    if (!std::isfinite(s.position) || !std::isfinite(s.strength))
      throw std::invalid_argument("spike fields must be finite");
    const bool inside = domain_.boundary == Boundary::Periodic
                            ? (s.position >= 0.0 && s.position < w)
                            : (s.position > 0.0 && s.position < w);
    if (!inside)
      throw std::invalid_argument("spike position outside the admissible range");
    if (i > 0 && !(s.position > spikes_[i - 1].position))
      throw std::invalid_argument("spike positions must be strictly increasing");
  }
}

}  // namespace zcwell
