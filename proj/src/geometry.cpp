#include "vlcnoma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

void RoomConfig::validate() const {
  std::ostringstream err;
  if (!(length > 0) || !(width > 0)) err << "room dimensions must be positive; ";
  if (!(ue_height > 0) || !(ue_height < ap_height))
    err << "need 0 < ue_height < ap_height (ue_height=" << ue_height
        << ", ap_height=" << ap_height << "); ";
  if (!(ap_separation >= 0) || !(ap_separation < length))
    err << "need 0 <= ap_separation < length (ap_separation=" << ap_separation
        << ", length=" << length << "); ";
  for (auto f : kAllFaces) {
    double z = face_reflectivity(f);
    if (!(z >= 0.0 && z < 1.0)) {
      err << "reflectivity must lie in [0,1); ";
      break;
    }
  }
  if (auto s = err.str(); !s.empty()) throw ConfigError("room: " + s);
}

double ApNode::lambertian_order() const {
  return -1.0 / std::log2(std::cos(half_power_semiangle));
}

double coverage_radius(const RoomConfig& room, double half_power_semiangle) {
  return room.ap_height * std::tan(half_power_semiangle);
}

std::array<ApNode, 2> place_aps(const RoomConfig& room, const ApNode& prototype) {
  std::array<ApNode, 2> aps{prototype, prototype};
  aps[0].position = Vec3(-room.ap_separation / 2.0, 0.0, room.ap_height);
  aps[1].position = Vec3(room.ap_separation / 2.0, 0.0, room.ap_height);
  for (auto& ap : aps) ap.orientation = Vec3(0.0, 0.0, -1.0);
  return aps;
}

namespace {

bool inside_room(const RoomConfig& room, double x, double y) {
  return std::abs(x) <= room.length / 2.0 && std::abs(y) <= room.width / 2.0;
}

Vec3 sample_disk(std::mt19937_64& rng, double cx, double radius, double z) {
  // Area-uniform via sqrt of the radial fraction.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = radius * std::sqrt(u(rng));
  double theta = 2.0 * kPi * u(rng);
  return Vec3(cx + r * std::cos(theta), r * std::sin(theta), z);
}

}  // namespace

std::vector<UeNode> place_ues(const RoomConfig& room, const PlacementPolicy& policy,
                              std::uint64_t seed) {
  room.validate();
  const double R = coverage_radius(room, policy.half_power_semiangle);
  const double half_sep = room.ap_separation / 2.0;
  if (!(R > half_sep)) {
    std::ostringstream msg;
    msg << "coverage disks do not overlap: need H_AP*tan(Phi_half) > d_AP/2 (d_AP="
        << room.ap_separation << ", H_AP=" << room.ap_height
        << ", Phi_half=" << rad_to_deg(policy.half_power_semiangle) << " deg)";
    throw ConfigError(msg.str());
  }
  if (policy.center_radius < 0) throw ConfigError("placement: center_radius must be >= 0");

  std::mt19937_64 rng(seed);
  std::vector<UeNode> ues;
  ues.reserve(static_cast<std::size_t>(2 * policy.strong_per_cell + policy.weak_count));

  auto make = [&](const Vec3& pos, UeRole role) {
    UeNode ue = policy.receiver;
    ue.position = pos;
    ue.normal = Vec3(0.0, 0.0, 1.0);
    ue.role = role;
    ues.push_back(ue);
  };

  for (int cell = 0; cell < 2; ++cell) {
    const double cx = cell == 0 ? -half_sep : half_sep;
    const UeRole role = cell == 0 ? UeRole::strong_cell1 : UeRole::strong_cell2;
    for (int i = 0; i < policy.strong_per_cell; ++i)
      make(sample_disk(rng, cx, policy.center_radius, room.ue_height), role);
  }

  // Lens: |x| <= R - d/2, |y| <= sqrt(R^2 - (d/2)^2); rejection inside both disks.
  const double x_half = R - half_sep;
  const double y_half = std::sqrt(R * R - half_sep * half_sep);
  std::uniform_real_distribution<double> ux(-x_half, x_half), uy(-y_half, y_half);
  for (int i = 0; i < policy.weak_count; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1'000'000)
        throw ConfigError("placement: overlap region does not intersect the room");
      double x = ux(rng), y = uy(rng);
      double d1 = (x + half_sep) * (x + half_sep) + y * y;
      double d2 = (x - half_sep) * (x - half_sep) + y * y;
      if (d1 <= R * R && d2 <= R * R && inside_room(room, x, y)) {
        make(Vec3(x, y, room.ue_height), UeRole::weak);
        break;
      }
    }
  }
  return ues;
}

Vec3 sample_orientation(const OrientationModel& model, std::mt19937_64& rng) {
  double polar = model.mean_polar_deg;
  if (model.std_polar_deg > 0.0) {
    std::normal_distribution<double> n(model.mean_polar_deg, model.std_polar_deg);
    do {
      polar = n(rng);
    } while (polar < 0.0 || polar > 90.0);
  }
  polar = std::clamp(polar, 0.0, 90.0);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  const double azimuth = u(rng);
  const double th = deg_to_rad(polar);
  Vec3 v(std::sin(th) * std::cos(azimuth), std::sin(th) * std::sin(azimuth), std::cos(th));
  return v.normalized();
}

Vec3 sample_orientation(const OrientationModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_orientation(model, rng);
}

LinkAngles link_angles(const Vec3& tx_pos, const Vec3& tx_normal, const Vec3& rx_pos,
                       const Vec3& rx_normal) {
  const Vec3 ray = rx_pos - tx_pos;
  const double d = ray.norm();
  if (!(d > 0.0)) throw DomainError("link_angles: coincident transmitter and receiver");
  const Vec3 u = ray / d;
  const double cos_phi = std::clamp(u.dot(tx_normal), -1.0, 1.0);
  const double cos_psi = std::clamp(-u.dot(rx_normal), -1.0, 1.0);
  return {d, std::acos(cos_phi), std::acos(cos_psi), cos_phi, cos_psi};
}

LinkAngles link_angles(const ApNode& ap, const UeNode& ue) {
  return link_angles(ap.position, ap.orientation, ue.position, ue.normal);
}

}  // namespace vlcnoma
