#include "zcwell/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

using nlohmann::json;

json must_get(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError("BadDesignFile",
                          std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number_field(const json& j, const char* key) {
  const json v = must_get(j, key);
  if (!v.is_number())
    throw ValidationError("BadDesignFile",
                          std::string("field \"") + key +
                              "\" must be a number");
  return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DesignFile parse_design(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("BadDesignFile",
                          std::string("invalid JSON: ") + e.what());
  }

  const double width = number_field(j, "a");
  const double hbar = number_field(j, "hbar");
  const double mass = number_field(j, "mass");
  const std::string boundary_name =
      must_get(j, "boundary").get<std::string>();
  Boundary boundary;
  if (boundary_name == "dirichlet")
    boundary = Boundary::Dirichlet;
  else if (boundary_name == "periodic")
    boundary = Boundary::Periodic;
  else
    throw ValidationError("BadDesignFile",
                          "boundary must be \"dirichlet\" or \"periodic\"");

  const json jknots = must_get(j, "knots");
  if (!jknots.is_array() || jknots.size() < 2)
    throw ValidationError("BadDesignFile",
                          "knots must be an array of at least two [x, psi]");
  std::vector<Knot> knots;
  knots.reserve(jknots.size());
  for (const json& k : jknots) {
    if (!k.is_array() || k.size() != 2)
      throw ValidationError("BadDesignFile", "each knot must be [x, psi]");
    knots.push_back(Knot{k[0].get<double>(), k[1].get<double>()});
  }

  try {
    DesignFile out{make_units(hbar, mass),
                   PiecewiseLinearWave(make_domain(width, boundary),
                                       std::move(knots)),
                   false,
                   {}};
    if (j.contains("spikes")) {
      out.has_spikes = true;
      for (const json& s : j.at("spikes")) {
        if (!s.is_object() || !s.contains("position") ||
            !s.contains("strength"))
          throw ValidationError(
              "BadDesignFile",
              "each spike must be {\"position\": x, \"strength\": g}");
        out.spikes.push_back(DeltaSpike{s.at("position").get<double>(),
                                        s.at("strength").get<double>()});
      }
    }
    return out;
  } catch (const std::invalid_argument& e) {
    throw ValidationError("BadDesignFile", e.what());
  }
}

DesignFile load_design(const std::string& path) {
  return parse_design(read_file(path));
}

std::string format_design(const UnitSystem& units,
                          const PiecewiseLinearWave& wave,
                          const std::vector<DeltaSpike>* spikes) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"a\": " << format_double(wave.width()) << ",\n";
  out << "  \"hbar\": " << format_double(units.hbar) << ",\n";
  out << "  \"mass\": " << format_double(units.mass) << ",\n";
  out << "  \"boundary\": \""
      << (wave.domain().boundary == Boundary::Dirichlet ? "dirichlet"
                                                        : "periodic")
      << "\",\n";
  out << "  \"knots\": [";
  for (std::size_t i = 0; i < wave.knots().size(); ++i) {
    if (i) out << ", ";
    out << "[" << format_double(wave.knots()[i].x) << ", "
        << format_double(wave.knots()[i].psi) << "]";
  }
  out << "]";
  if (spikes != nullptr) {
    out << ",\n  \"spikes\": [";
    for (std::size_t i = 0; i < spikes->size(); ++i) {
      if (i) out << ", ";
      out << "{\"position\": " << format_double((*spikes)[i].position)
          << ", \"strength\": " << format_double((*spikes)[i].strength)
          << "}";
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

void save_design(const std::string& path, const UnitSystem& units,
                 const PiecewiseLinearWave& wave,
                 const std::vector<DeltaSpike>* spikes) {
  write_file(path, format_design(units, wave, spikes));
}

ZcDesign design_from_file(const DesignFile& file) {
  if (!file.has_spikes) return critical_strengths(file.wave, file.units);
  PiecewiseLinearWave wave = file.wave.normalized();
  return ZcDesign{wave,
                  DeltaArrayPotential(wave.domain(), file.spikes),
                  file.units};
}

std::string format_partner(const PartnerPotential& partner) {
  std::ostringstream out;
  out << "{\n  \"spikes\": [";
  for (std::size_t i = 0; i < partner.spikes.size(); ++i) {
    if (i) out << ", ";
    out << "[" << format_double(partner.spikes[i].position) << ", "
        << format_double(partner.spikes[i].strength) << "]";
  }
  out << "],\n  \"smooth\": [";
  for (std::size_t i = 0; i < partner.smooth.size(); ++i) {
    const SmoothSegment& s = partner.smooth[i];
    if (i) out << ", ";
    out << "{\"interval\": [" << format_double(s.x_lo) << ", "
        << format_double(s.x_hi) << "], ";
    if (s.zero)
      out << "\"zero\": true}";
    else
      out << "\"pole\": " << format_double(s.pole)
          << ", \"K\": " << format_double(s.coefficient) << "}";
  }
  out << "]\n}\n";
  return out.str();
}

void save_partner(const std::string& path,
                  const PartnerPotential& partner) {
  write_file(path, format_partner(partner));
}

std::string format_spectral_report(const SpectralReport& report,
                                   const std::vector<int>& ladder) {
  std::ostringstream out;
  out << "{\n  \"ladder\": [";
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (i) out << ", ";
    out << ladder[i];
  }
  out << "],\n  \"eigenvalues\": [";
  for (std::size_t i = 0; i < report.rungs.size(); ++i) {
    if (i) out << ", ";
    out << "[";
    for (std::size_t j = 0; j < report.rungs[i].eigenvalues.size(); ++j) {
      if (j) out << ", ";
      out << format_double(report.rungs[i].eigenvalues[j]);
    }
    out << "]";
  }
  out << "],\n  \"zero_mode\": [";
  for (std::size_t i = 0; i < report.rungs.size(); ++i) {
    if (i) out << ", ";
    out << format_double(report.rungs[i].zero_mode);
  }
  out << "],\n  \"overlap\": [";
  for (std::size_t i = 0; i < report.rungs.size(); ++i) {
    if (i) out << ", ";
    out << format_double(report.rungs[i].overlap);
  }
  out << "],\n  \"convergence_order\": "
      << format_double(report.convergence_order)
      << ",\n  \"zero_mode_at_noise_floor\": "
      << (report.zero_mode_at_noise_floor ? "true" : "false")
      << ",\n  \"ok\": " << (report.ok ? "true" : "false")
      << ",\n  \"message\": \"" << report.message << "\"\n}\n";
  return out.str();
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
  write_file(path, out.str());
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  long count = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &extra)
          != 3 ||
      count < 2 || !(hi > lo))
    throw ValidationError("BadGridSpec",
                          "grid spec must be lo:hi:count with count >= 2 "
                          "and hi > lo, got \"" + spec + "\"");
  std::vector<double> grid(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (long i = 0; i < count; ++i)
    grid[i] = i + 1 == count ? hi : lo + step * static_cast<double>(i);
  return grid;
}

std::vector<int> parse_ladder(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("BadLadderSpec",
                            "ladder must be comma-separated integers, got \"" +
                                spec + "\"");
    }
  }
  if (out.empty())
    throw ValidationError("BadLadderSpec", "empty grid ladder");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("FileError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("FileError", "cannot write " + path);
  out << content;
}

}  // namespace zcwell
