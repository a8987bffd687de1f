#pragma once

#include <cmath>
#include <vector>

#include "jbpcic/config.hpp"
#include "jbpcic/rng.hpp"

namespace jbpcic {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct BsSite {
  int id = 0;
  Vec2 position;
  double max_power_dbm = 46.0;
  int antennas = 1;
  Band band = Band::mmwave;
};

struct Ue {
  int id = 0;
  Vec2 position;
  double speed_kmh = 0.0;
  int serving_bs = 0;
  Bearer bearer = Bearer::data;
};

struct Layout {
  std::vector<BsSite> sites;
  double cell_radius_m = 0.0;
  double intersite_distance_m = 0.0;
};

// Sites on a line (L = 2) or on a regular L-gon whose side is the intersite
// distance. Throws ConfigError on degenerate geometry.
Layout build_layout(const NetworkConfig& cfg, int antennas);

// Nearest site; ties go to the lowest id.
int associate(Vec2 position, const Layout& layout);
inline int associate(const Ue& ue, const Layout& layout) { return associate(ue.position, layout); }

// Drops n UEs per site, each uniform over its site's disk; serving_bs is then
// set by the nearest-site rule. Throws ConfigError when n is outside [1, max].
std::vector<Ue> drop_ues(const Layout& layout, int n_per_bs, int max_per_bs, double speed_kmh,
                         Bearer bearer, Rng& rng);

Vec2 sample_disk(Vec2 center, double radius, Rng& rng);

// Uniform over the part of the site's disk where that site is the nearest one.
Vec2 sample_in_cell(const Layout& layout, int site, Rng& rng);

// One step of a random-direction walk of length v*dt, reflected back into the
// serving disk when it would leave it.
Ue step_mobility(const Ue& ue, double dt_s, const Layout& layout, Rng& rng);

}  // namespace jbpcic
