#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>
#include "json.hpp"

#include "vlcnoma/geometry.hpp"

namespace vlcnoma {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

struct SurfaceElement {
  Vec3 position;
  Vec3 normal;  // unit, pointing into the room
  double area;
  double reflectivity;
};

/// m = -1 / log2(cos(half_power_semiangle)).
double lambertian_order(double half_power_semiangle);

/// Lambertian point-to-point gain (m+1) A / (2 pi d^2) cos^m(phi) cos(psi),
/// zero outside the receiver's field of view or behind either face.
double lambertian_gain(double order, double rx_area, double rx_fov, const Vec3& tx_pos,
                       const Vec3& tx_normal, const Vec3& rx_pos, const Vec3& rx_normal);

double los_gain(const ApNode& ap, const UeNode& ue);

/// Tiles all six interior faces into equal patches of side <= resolution.
std::vector<SurfaceElement> discretize_room(const RoomConfig& room, double resolution);

/// Diffuse reflections to all orders:
///   h_NLOS = r^T G (I - E G)^{-1} t.
/// The transfer matrix E and the factorization of (I - E G) are built once and
/// are read-only afterwards, so one instance can be shared across threads.
class ReflectionModel {
 public:
  explicit ReflectionModel(std::vector<SurfaceElement> elements,
                           double condition_bound = 1e12);

  const std::vector<SurfaceElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// E(i, j): gain from element j (as an m=1 radiator) onto element i.
  const Eigen::MatrixXd& transfer() const { return transfer_; }
  const Eigen::VectorXd& reflectivities() const { return zeta_; }
  double condition_estimate() const { return condition_; }
  double spectral_radius() const { return spectral_radius_; }

  /// t: AP -> every element.
  Eigen::VectorXd source_vector(const ApNode& ap) const;
  /// r: every element -> UE.
  Eigen::VectorXd receiver_vector(const UeNode& ue) const;

  /// q = G (I - E G)^{-1} t; depends only on the AP, cache it per AP.
  Eigen::VectorXd reflected_power(const ApNode& ap) const;
  double nlos_gain(const Eigen::VectorXd& reflected, const UeNode& ue) const;
  double nlos_gain(const ApNode& ap, const UeNode& ue) const;

 private:
  std::vector<SurfaceElement> elements_;
  Eigen::MatrixXd transfer_;
  Eigen::VectorXd zeta_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_ = 1.0;
  double spectral_radius_ = 0.0;
};

double nlos_gain(const ApNode& ap, const UeNode& ue, const std::vector<SurfaceElement>& elements);

struct LinkGain {
  double los = 0.0;
  double nlos = 0.0;
  double total() const { return los + nlos; }
};

/// Gains of one 2-AP / 3-UE cluster. strong[k][i]: UE k (a, b) from AP i.
struct ChannelState {
  std::array<std::array<LinkGain, 2>, 2> strong{};
  std::array<LinkGain, 2> weak{};

  /// Rows (a, b), columns (AP1, AP2).
  Mat2 h_ab() const;
  /// (h_1w, h_2w).
  Vec2 h_w() const;
  /// Harvestable DC gain h_1k + h_2k for strong UE k.
  double dc_gain(int k) const { return strong[k][0].total() + strong[k][1].total(); }
};

/// Per-AP precomputation for NLOS evaluation inside one scenario.
class ChannelBuilder {
 public:
  ChannelBuilder(std::array<ApNode, 2> aps, const ReflectionModel* reflections);

  const std::array<ApNode, 2>& aps() const { return aps_; }
  bool nlos_enabled() const { return reflections_ != nullptr; }
  LinkGain gain(int ap, const UeNode& ue) const;

 private:
  std::array<ApNode, 2> aps_;
  const ReflectionModel* reflections_;
  std::array<Eigen::VectorXd, 2> reflected_;
};

/// `ues` must hold exactly one UE of each role. A null `reflections` disables NLOS.
ChannelState build_channel_state(const std::array<ApNode, 2>& aps, const std::vector<UeNode>& ues,
                                 const ReflectionModel* reflections = nullptr);
ChannelState build_channel_state(const ChannelBuilder& builder, const UeNode& strong_a,
                                 const UeNode& strong_b, const UeNode& weak);

nlohmann::json to_json(const ChannelState& ch);

}  // namespace vlcnoma
