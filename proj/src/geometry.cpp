#include "jbpcic/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace jbpcic {

Layout build_layout(const NetworkConfig& cfg, int antennas) {
  if (cfg.num_bs < 2) throw ConfigError("config key 'num_bs': at least two base stations are required");
  if (!(cfg.cell_radius_m > 0.0)) throw ConfigError("config key 'cell_radius_m': must be positive");

  Layout layout;
  layout.cell_radius_m = cfg.cell_radius_m;
  layout.intersite_distance_m = cfg.intersite_distance_m;
  const double spacing = cfg.intersite_distance_m;
  const int n = cfg.num_bs;
  for (int i = 0; i < n; ++i) {
    BsSite site;
    site.id = i;
    site.max_power_dbm = cfg.max_power_dbm;
    site.antennas = antennas;
    site.band = cfg.band();
    if (n == 2) {
      site.position = {i * spacing, 0.0};
    } else {
      // Circumradius of a regular n-gon with side `spacing`.
      const double rho = spacing / (2.0 * std::sin(std::numbers::pi / n));
      const double phi = 2.0 * std::numbers::pi * i / n;
      site.position = {rho * std::cos(phi), rho * std::sin(phi)};
    }
    layout.sites.push_back(site);
  }
  return layout;
}

int associate(Vec2 position, const Layout& layout) {
  int best = layout.sites.front().id;
  double best_d = distance(position, layout.sites.front().position);
  for (const auto& s : layout.sites) {
    const double d = distance(position, s.position);
    if (d < best_d || (d == best_d && s.id < best)) {
      best = s.id;
      best_d = d;
    }
  }
  return best;
}

Vec2 sample_disk(Vec2 center, double radius, Rng& rng) {
  const double rad = radius * std::sqrt(uniform01(rng));
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  return {center.x + rad * std::cos(phi), center.y + rad * std::sin(phi)};
}

Vec2 sample_in_cell(const Layout& layout, int site, Rng& rng) {
  const Vec2 center = layout.sites.at(site).position;
  while (true) {
    const Vec2 p = sample_disk(center, layout.cell_radius_m, rng);
    if (associate(p, layout) == site) return p;
  }
}

std::vector<Ue> drop_ues(const Layout& layout, int n_per_bs, int max_per_bs, double speed_kmh,
                         Bearer bearer, Rng& rng) {
  if (n_per_bs < 1 || n_per_bs > max_per_bs)
    throw ConfigError("config key 'ue_per_bs': must lie in [1, " + std::to_string(max_per_bs) + "]");
  std::vector<Ue> ues;
  ues.reserve(layout.sites.size() * static_cast<std::size_t>(n_per_bs));
  for (const auto& site : layout.sites) {
    for (int k = 0; k < n_per_bs; ++k) {
      Ue ue;
      ue.id = static_cast<int>(ues.size());
      ue.position = sample_disk(site.position, layout.cell_radius_m, rng);
      ue.speed_kmh = speed_kmh;
      ue.bearer = bearer;
      ue.serving_bs = associate(ue.position, layout);
      ues.push_back(ue);
    }
  }
  return ues;
}

Ue step_mobility(const Ue& ue, double dt_s, const Layout& layout, Rng& rng) {
  Ue next = ue;
  const double step = ue.speed_kmh / 3.6 * dt_s;
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  if (step == 0.0) return next;
  const Vec2 center = layout.sites.at(ue.serving_bs).position;
  const double r = layout.cell_radius_m;
  Vec2 p = ue.position + Vec2{step * std::cos(phi), step * std::sin(phi)};
  const Vec2 off = p - center;
  const double d = norm(off);
  if (d > r) {
    // Mirror across the boundary circle along the radial direction.
    const double back = std::max(0.0, 2.0 * r - d);
    p = center + (back / d) * off;
  }
  next.position = p;
  return next;
}

}  // namespace jbpcic
