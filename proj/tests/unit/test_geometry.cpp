#include <cmath>

#include "doctest.h"
#include "vlcnoma/error.hpp"
#include "vlcnoma/geometry.hpp"

using namespace vlcnoma;

TEST_CASE("placement is deterministic per seed") {
  RoomConfig room;
  PlacementPolicy pol;
  pol.strong_per_cell = 2;
  pol.weak_count = 2;
  const auto a = place_ues(room, pol, 42);
  const auto b = place_ues(room, pol, 42);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].position == b[i].position);
  const auto c = place_ues(room, pol, 43);
  CHECK(a[0].position != c[0].position);
}

TEST_CASE("zero center radius pins strong UEs to the AP floor projections") {
  RoomConfig room;
  PlacementPolicy pol;
  pol.center_radius = 0.0;
  const auto aps = place_aps(room, ApNode{});
  const auto ues = place_ues(room, pol, 7);
  CHECK(ues[0].position.x() == doctest::Approx(aps[0].position.x()));
  CHECK(ues[0].position.y() == doctest::Approx(aps[0].position.y()));
  CHECK(ues[1].position.x() == doctest::Approx(aps[1].position.x()));
  CHECK(ues[1].position.y() == doctest::Approx(aps[1].position.y()));
  CHECK(ues[0].position.z() == doctest::Approx(room.ue_height));
}

TEST_CASE("default layout has a non-empty overlap lens") {
  RoomConfig room;
  const double r = coverage_radius(room, deg_to_rad(45.0));
  CHECK(r == doctest::Approx(2.5 * std::tan(deg_to_rad(45.0))));
  CHECK(r > room.ap_separation / 2);
  CHECK_NOTHROW(place_ues(room, PlacementPolicy{}, 1));
}

TEST_CASE("disjoint cells are a configuration error") {
  RoomConfig room;
  room.ap_separation = 6.0;
  PlacementPolicy pol;
  pol.half_power_semiangle = deg_to_rad(20.0);
  CHECK_THROWS_AS(place_ues(room, pol, 1), ConfigError);
}

TEST_CASE("sampled UEs respect their regions") {
  RoomConfig room;
  PlacementPolicy pol;
  pol.strong_per_cell = 3;
  pol.weak_count = 3;
  const auto aps = place_aps(room, ApNode{});
  const double R = coverage_radius(room, pol.half_power_semiangle);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto ues = place_ues(room, pol, seed);
    for (const auto& ue : ues) {
      const auto d = [&](int i) {
        return std::hypot(ue.position.x() - aps[i].position.x(),
                          ue.position.y() - aps[i].position.y());
      };
      switch (ue.role) {
        case UeRole::strong_cell1: CHECK(d(0) <= pol.center_radius + 1e-12); break;
        case UeRole::strong_cell2: CHECK(d(1) <= pol.center_radius + 1e-12); break;
        case UeRole::weak:
          CHECK(d(0) <= R + 1e-12);
          CHECK(d(1) <= R + 1e-12);
          break;
      }
    }
  }
}

TEST_CASE("orientation sampling") {
  SUBCASE("degenerate distribution faces straight up") {
    const Vec3 v = sample_orientation(OrientationModel{0.0, 0.0}, 5);
    CHECK(v.x() == doctest::Approx(0.0));
    CHECK(v.y() == doctest::Approx(0.0));
    CHECK(v.z() == doctest::Approx(1.0));
  }
  SUBCASE("polar-angle mean matches the configured model") {
    std::mt19937_64 rng(11);
    const OrientationModel m{41.0, 9.0};
    double sum = 0.0, worst_norm = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const Vec3 v = sample_orientation(m, rng);
      worst_norm = std::max(worst_norm, std::abs(v.norm() - 1.0));
      sum += rad_to_deg(std::acos(std::clamp(v.z(), -1.0, 1.0)));
    }
    CHECK(std::abs(sum / n - 41.0) <= 0.5);
    CHECK(worst_norm <= 1e-12);
  }
}

TEST_CASE("link angles") {
  ApNode ap;
  ap.position = Vec3(0, 0, 2.5);
  UeNode ue;
  SUBCASE("collinear") {
    ue.position = Vec3(0, 0, 0.9);
    const auto a = link_angles(ap, ue);
    CHECK(a.distance == doctest::Approx(1.6));
    CHECK(a.radiance == doctest::Approx(0.0));
    CHECK(a.incidence == doctest::Approx(0.0));
  }
  SUBCASE("orthogonal normal") {
    ue.position = Vec3(0, 0, 0.9);
    ue.normal = Vec3(1, 0, 0);
    CHECK(link_angles(ap, ue).incidence == doctest::Approx(kPi / 2));
  }
  SUBCASE("45 degree geometry against vector arithmetic") {
    ue.position = Vec3(1.6, 0, 0.9);
    const auto a = link_angles(ap, ue);
    const Vec3 ray = ue.position - ap.position;
    CHECK(a.distance == doctest::Approx(1.6 * std::sqrt(2.0)));
    CHECK(a.distance == doctest::Approx(ray.norm()));
    CHECK(a.radiance == doctest::Approx(kPi / 4));
    CHECK(a.incidence == doctest::Approx(kPi / 4));
    CHECK(std::cos(a.radiance) == doctest::Approx(ray.normalized().dot(ap.orientation)));
  }
  SUBCASE("coincident positions") {
    ue.position = ap.position;
    CHECK_THROWS_AS(link_angles(ap, ue), DomainError);
  }
}

TEST_CASE("mirroring a UE across the symmetry plane swaps its AP geometry") {
  const auto aps = place_aps(RoomConfig{}, ApNode{});
  UeNode u;
  u.position = Vec3(0.7, -0.4, 0.9);
  u.normal = Vec3(0.3, 0.2, 0.9).normalized();
  UeNode m = u;
  m.position.x() = -u.position.x();
  m.normal.x() = -u.normal.x();
  const auto a1 = link_angles(aps[0], u), b2 = link_angles(aps[1], m);
  CHECK(a1.distance == doctest::Approx(b2.distance));
  CHECK(a1.radiance == doctest::Approx(b2.radiance));
  CHECK(a1.incidence == doctest::Approx(b2.incidence));
}
