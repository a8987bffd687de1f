#pragma once

#include <complex>
#include <span>
#include <vector>

#include "jbpcic/config.hpp"
#include "jbpcic/geometry.hpp"
#include "jbpcic/rng.hpp"

namespace jbpcic {

using cplx = std::complex<double>;

// a(theta) for an M-element ULA: entry m = exp(j*k*d*m*cos(theta)) / sqrt(M).
struct SteeringVector {
  std::vector<cplx> entries;
  double angle = 0.0;

  int size() const { return static_cast<int>(entries.size()); }
};

SteeringVector steering_vector(double theta, int antennas, double d_over_lambda);

// The M beams of a beamsteering codebook over [0, pi]. Indices wrap modulo M.
class BeamCodebook {
 public:
  BeamCodebook() = default;
  BeamCodebook(std::vector<SteeringVector> beams, double spacing)
      : beams_(std::move(beams)), spacing_(spacing) {}

  int size() const { return static_cast<int>(beams_.size()); }
  double spacing() const { return spacing_; }
  const SteeringVector& operator[](int n) const;
  const std::vector<SteeringVector>& beams() const { return beams_; }

 private:
  std::vector<SteeringVector> beams_;
  double spacing_ = 0.0;
};

// Accepts power-of-two array sizes up to 64. Centered bins put beam n at
// (n + 1/2) pi / M; edge bins at n pi / M.
BeamCodebook build_codebook(int antennas, double d_over_lambda,
                            CodebookAlignment alignment = CodebookAlignment::centered);

struct PathLossModel {
  Band band = Band::mmwave;
  double carrier_mhz = 28000.0;
  double exponent_los = 2.0;
  double exponent_nlos = 3.0;
  double shadow_los_db = 4.0;
  double shadow_nlos_db = 8.0;
  double bs_height_m = 30.0;
  double ue_height_m = 1.5;
  double shadow_sub6_db = 8.0;
  bool shadowing = true;

  // Close-in free-space intercept at 1 m: 32.4 + 20 log10(f_GHz).
  double intercept_db() const;
  double shadow_sigma_db(bool los) const;
};

PathLossModel path_loss_model(const NetworkConfig& cfg);

// Median loss without shadowing. mmWave: close-in model with d0 = 1 m.
// Sub-6: COST231-Hata (metropolitan), never below free-space loss.
double median_path_loss_db(const PathLossModel& model, double distance_m, bool los);

// Median loss plus one log-normal shadowing draw.
double path_loss_db(const PathLossModel& model, double distance_m, bool los, Rng& rng);

struct PathComponent {
  cplx gain;
  double aod = 0.0;
};

// One (BS, UE) link: h = (sqrt(M) / rho) * sum_p alpha_p conj(a(theta_p)).
// rho is the amplitude loss, so the mean array power is M / rho^2.
struct ChannelRealization {
  std::vector<cplx> h;
  std::vector<PathComponent> paths;
  double path_loss_db = 0.0;   // propagation loss including shadowing
  double shadow_db = 0.0;
  double antenna_gain_db = 0.0;
  double rho = 1.0;
  bool los = false;
  int n_paths = 0;
};

struct LinkGeometry {
  int antennas = 1;
  double d_over_lambda = 0.5;
  double p_los = 0.8;
  int n_paths_nlos = 4;
  double antenna_gain_db = 0.0;  // BS plus UE antenna gain
  double min_distance_m = 1.0;
};

LinkGeometry link_geometry(const NetworkConfig& cfg, int antennas);

// Angle of departure from a ULA laid along the x axis, in [0, pi].
double bearing(Vec2 from, Vec2 to);

std::vector<cplx> assemble_h(std::span<const PathComponent> paths, double rho, int antennas,
                             double d_over_lambda);

ChannelRealization sample_channel(const BsSite& tx, Vec2 ue_position, const LinkGeometry& geo,
                                  const PathLossModel& model, Rng& rng);

// Re-evaluates distance-dependent terms after the UE moved: median loss, the
// LOS bearing, and h. Shadowing and path gains are kept.
void update_channel(ChannelRealization& ch, const BsSite& tx, Vec2 ue_position, const LinkGeometry& geo,
                    const PathLossModel& model);

}  // namespace jbpcic
