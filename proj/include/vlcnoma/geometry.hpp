#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace vlcnoma {

/// Position in meters, or a dimensionless unit direction.
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Interior faces of the box-shaped room.
enum class Face { floor, ceiling, west, east, south, north };
inline constexpr std::array<Face, 6> kAllFaces{Face::floor, Face::ceiling, Face::west,
                                               Face::east,  Face::south,   Face::north};

/// Room with its origin at the floor center: x in [-length/2, length/2],
/// y in [-width/2, width/2], z in [0, ap_height]. APs hang from the ceiling.
struct RoomConfig {
  double length = 7.0;
  double width = 7.0;
  double ap_height = 2.5;
  double ue_height = 0.9;
  double ap_separation = 4.0;
  /// Indexed by Face.
  std::array<double, 6> reflectivity{0.3, 0.8, 0.8, 0.8, 0.8, 0.8};

  double face_reflectivity(Face f) const { return reflectivity[static_cast<std::size_t>(f)]; }
  void validate() const;
};

struct ApNode {
  Vec3 position = Vec3::Zero();
  Vec3 orientation{0.0, 0.0, -1.0};
  double half_power_semiangle = deg_to_rad(45.0);
  double efficiency = 0.6;         // W/A
  double dc_bias = 0.31623;        // A
  double modulation_index = 0.33;

  double lambertian_order() const;
};

enum class UeRole { strong_cell1, strong_cell2, weak };

struct UeNode {
  Vec3 position = Vec3::Zero();
  Vec3 normal{0.0, 0.0, 1.0};
  double pd_area = 1e-4;          // m^2
  double responsivity = 0.58;     // A/W
  double fov = deg_to_rad(60.0);
  UeRole role = UeRole::weak;
};

/// Where UEs are dropped. Strong UEs land in a disk of `center_radius` around
/// their AP's floor projection; weak UEs land in the lens where both coverage
/// disks of radius ap_height * tan(half_power_semiangle) overlap.
struct PlacementPolicy {
  double center_radius = 0.5;
  double half_power_semiangle = deg_to_rad(45.0);
  int strong_per_cell = 1;
  int weak_count = 1;
  UeNode receiver{};  // PD parameters copied onto every UE
};

/// Polar tilt ~ Gaussian clipped to [0, 90] deg by resampling, azimuth uniform.
struct OrientationModel {
  double mean_polar_deg = 41.0;
  double std_polar_deg = 9.0;
};

struct LinkAngles {
  double distance;
  double radiance;   // rad, at the transmitter
  double incidence;  // rad, at the receiver
  double cos_radiance;
  double cos_incidence;
};

/// Coverage radius of one AP on the floor.
double coverage_radius(const RoomConfig& room, double half_power_semiangle);

/// Two APs symmetric about the room center on the x axis, facing down.
std::array<ApNode, 2> place_aps(const RoomConfig& room, const ApNode& prototype);

/// Positions only; every returned UE faces straight up. Order: all
/// strong-cell1 UEs, then strong-cell2, then weak.
std::vector<UeNode> place_ues(const RoomConfig& room, const PlacementPolicy& policy,
                              std::uint64_t seed);

Vec3 sample_orientation(const OrientationModel& model, std::mt19937_64& rng);
Vec3 sample_orientation(const OrientationModel& model, std::uint64_t seed);

/// Generic transmitter/receiver angle computation.
LinkAngles link_angles(const Vec3& tx_pos, const Vec3& tx_normal, const Vec3& rx_pos,
                       const Vec3& rx_normal);
LinkAngles link_angles(const ApNode& ap, const UeNode& ue);

}  // namespace vlcnoma
