#pragma once

#include <vector>

#include "zcwell/wave.hpp"

namespace zcwell {

struct DeltaSpike {
  double position = 0.0;  // symbol c
  double strength = 0.0;  // symbol g, units energy * length
};

// Array of delta spikes inside a well.  Positions are strictly increasing;
// Dirichlet wells admit spikes only strictly inside (0, width), periodic
// wells additionally admit a seam spike at x = 0.
class DeltaArrayPotential {
public:
  DeltaArrayPotential(WellDomain domain, std::vector<DeltaSpike> spikes);

  const WellDomain& domain() const { return domain_; }
  const std::vector<DeltaSpike>& spikes() const { return spikes_; }

private:
  WellDomain domain_;
  std::vector<DeltaSpike> spikes_;
};

}  // namespace zcwell
