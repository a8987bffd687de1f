#include "jbpcic/channel.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace jbpcic {

namespace {

constexpr double pi = std::numbers::pi;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

SteeringVector steering_vector(double theta, int antennas, double d_over_lambda) {
  if (antennas < 1) throw std::invalid_argument("steering_vector: antenna count must be at least 1");
  if (!(theta >= 0.0 && theta <= pi)) throw std::invalid_argument("steering_vector: angle outside [0, pi]");
  SteeringVector sv;
  sv.angle = theta;
  sv.entries.resize(static_cast<std::size_t>(antennas));
  const double kd = 2.0 * pi * d_over_lambda;
  const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
  const double c = std::cos(theta);
  for (int m = 0; m < antennas; ++m) sv.entries[m] = std::polar(scale, kd * m * c);
  return sv;
}

const SteeringVector& BeamCodebook::operator[](int n) const {
  const int m = size();
  return beams_[static_cast<std::size_t>(((n % m) + m) % m)];
}

BeamCodebook build_codebook(int antennas, double d_over_lambda, CodebookAlignment alignment) {
  if (!power_of_two(antennas) || antennas > 64)
    throw std::invalid_argument("build_codebook: unsupported array size " + std::to_string(antennas));
  const double spacing = pi / antennas;
  const double offset = alignment == CodebookAlignment::centered ? 0.5 : 0.0;
  std::vector<SteeringVector> beams;
  beams.reserve(static_cast<std::size_t>(antennas));
  for (int n = 0; n < antennas; ++n)
    beams.push_back(steering_vector((n + offset) * spacing, antennas, d_over_lambda));
  return BeamCodebook(std::move(beams), spacing);
}

double PathLossModel::intercept_db() const { return 32.4 + 20.0 * std::log10(carrier_mhz / 1000.0); }

double PathLossModel::shadow_sigma_db(bool los) const {
  if (band == Band::sub6) return shadow_sub6_db;
  return los ? shadow_los_db : shadow_nlos_db;
}

PathLossModel path_loss_model(const NetworkConfig& cfg) {
  PathLossModel m;
  m.band = cfg.band();
  m.carrier_mhz = cfg.carrier_mhz;
  m.exponent_los = cfg.ci_exponent_los;
  m.exponent_nlos = cfg.ci_exponent_nlos;
  m.shadow_los_db = cfg.ci_shadow_los_db;
  m.shadow_nlos_db = cfg.ci_shadow_nlos_db;
  m.bs_height_m = cfg.hata_bs_height_m;
  m.ue_height_m = cfg.hata_ue_height_m;
  m.shadow_sub6_db = cfg.hata_shadow_db;
  return m;
}

double median_path_loss_db(const PathLossModel& model, double distance_m, bool los) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("path_loss_db: distance must be positive");
  if (model.band == Band::mmwave) {
    const double n = los ? model.exponent_los : model.exponent_nlos;
    return model.intercept_db() + 10.0 * n * std::log10(distance_m);
  }
  const double f = model.carrier_mhz;
  const double hb = model.bs_height_m;
  const double hm = model.ue_height_m;
  const double a_hm = 3.2 * std::pow(std::log10(11.75 * hm), 2) - 4.97;
  const double hata = 46.3 + 33.9 * std::log10(f) - 13.82 * std::log10(hb) - a_hm +
                      (44.9 - 6.55 * std::log10(hb)) * std::log10(distance_m / 1000.0) + 3.0;
  const double free_space = 20.0 * std::log10(distance_m) + 20.0 * std::log10(f) - 27.55;
  return std::max(hata, free_space);
}

double path_loss_db(const PathLossModel& model, double distance_m, bool los, Rng& rng) {
  const double median = median_path_loss_db(model, distance_m, los);
  if (!model.shadowing) return median;
  return median + model.shadow_sigma_db(los) * standard_normal(rng);
}

LinkGeometry link_geometry(const NetworkConfig& cfg, int antennas) {
  LinkGeometry g;
  g.antennas = antennas;
  g.d_over_lambda = cfg.d_over_lambda;
  g.p_los = cfg.p_los;
  g.n_paths_nlos = cfg.n_paths;
  g.antenna_gain_db = cfg.bs_antenna_gain_dbi + cfg.ue_antenna_gain_dbi;
  return g;
}

double bearing(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  const double r = norm(d);
  if (r == 0.0) return pi / 2.0;
  return std::acos(std::clamp(d.x / r, -1.0, 1.0));
}

std::vector<cplx> assemble_h(std::span<const PathComponent> paths, double rho, int antennas,
                             double d_over_lambda) {
  std::vector<cplx> h(static_cast<std::size_t>(antennas), cplx{0.0, 0.0});
  const double scale = std::sqrt(static_cast<double>(antennas)) / rho;
  for (const auto& p : paths) {
    const auto a = steering_vector(p.aod, antennas, d_over_lambda);
    for (int m = 0; m < antennas; ++m) h[m] += scale * p.gain * std::conj(a.entries[m]);
  }
  return h;
}

namespace {

void finish(ChannelRealization& ch, const LinkGeometry& geo) {
  ch.rho = std::pow(10.0, (ch.path_loss_db - ch.antenna_gain_db) / 20.0);
  ch.h = assemble_h(ch.paths, ch.rho, geo.antennas, geo.d_over_lambda);
}

}  // namespace

ChannelRealization sample_channel(const BsSite& tx, Vec2 ue_position, const LinkGeometry& geo,
                                  const PathLossModel& model, Rng& rng) {
  ChannelRealization ch;
  const double d = std::max(distance(tx.position, ue_position), geo.min_distance_m);
  ch.los = uniform01(rng) < geo.p_los;
  const double median = median_path_loss_db(model, d, ch.los);
  ch.shadow_db = model.shadowing ? model.shadow_sigma_db(ch.los) * standard_normal(rng) : 0.0;
  ch.path_loss_db = median + ch.shadow_db;
  ch.antenna_gain_db = geo.antenna_gain_db;
  if (ch.los) {
    ch.n_paths = 1;
    ch.paths.push_back({std::polar(1.0, 2.0 * pi * uniform01(rng)), bearing(tx.position, ue_position)});
  } else {
    ch.n_paths = geo.n_paths_nlos;
    const double sd = std::sqrt(0.5 / ch.n_paths);
    for (int p = 0; p < ch.n_paths; ++p) {
      const double re = sd * standard_normal(rng);
      const double im = sd * standard_normal(rng);
      ch.paths.push_back({cplx{re, im}, pi * uniform01(rng)});
    }
  }
  finish(ch, geo);
  return ch;
}

void update_channel(ChannelRealization& ch, const BsSite& tx, Vec2 ue_position, const LinkGeometry& geo,
                    const PathLossModel& model) {
  const double d = std::max(distance(tx.position, ue_position), geo.min_distance_m);
  ch.path_loss_db = median_path_loss_db(model, d, ch.los) + ch.shadow_db;
  if (ch.los) ch.paths.front().aod = bearing(tx.position, ue_position);
  finish(ch, geo);
}

}  // namespace jbpcic
