#pragma once

#include <string>
#include <vector>

#include "zcwell/designer.hpp"
#include "zcwell/oracle.hpp"
#include "zcwell/susy.hpp"

namespace zcwell {

// Design file schema:
//   {"a": number, "hbar": number, "mass": number,
//    "boundary": "dirichlet"|"periodic", "knots": [[x, psi], ...],
//    "spikes": [{"position": x, "strength": g}, ...]}   (optional)
// Numbers are written with 17 significant digits so doubles round-trip
// losslessly; identical inputs produce byte-identical files.
struct DesignFile {
  UnitSystem units;
  PiecewiseLinearWave wave;
  bool has_spikes = false;
  std::vector<DeltaSpike> spikes;
};

DesignFile parse_design(const std::string& text);
DesignFile load_design(const std::string& path);
std::string format_design(const UnitSystem& units,
                          const PiecewiseLinearWave& wave,
                          const std::vector<DeltaSpike>* spikes);
void save_design(const std::string& path, const UnitSystem& units,
                 const PiecewiseLinearWave& wave,
                 const std::vector<DeltaSpike>* spikes);

// Builds a ZcDesign from a file: stored spikes are used verbatim when
// present (the wave is normalized), otherwise critical strengths are
// computed.
ZcDesign design_from_file(const DesignFile& file);

// Partner file schema:
//   {"spikes": [[x, g], ...],
//    "smooth": [{"interval": [lo, hi], "pole": x0, "K": k}
//               | {"interval": [lo, hi], "zero": true}, ...]}
std::string format_partner(const PartnerPotential& partner);
void save_partner(const std::string& path, const PartnerPotential& partner);

std::string format_spectral_report(const SpectralReport& report,
                                   const std::vector<int>& ladder);

// CSV: '.' decimal separator, comma field separator, Unix newlines, one
// mandatory header row.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);  // %.17g

// "lo:hi:count" -> uniformly spaced grid, count >= 2.
std::vector<double> parse_grid_spec(const std::string& spec);

// "599,1199,2399" -> ladder of interior counts.
std::vector<int> parse_ladder(const std::string& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace zcwell
