#include "vlcnoma/vlc_channel.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "vlcnoma/error.hpp"

namespace vlcnoma {

double lambertian_order(double half_power_semiangle) {
  return -1.0 / std::log2(std::cos(half_power_semiangle));
}

double lambertian_gain(double order, double rx_area, double rx_fov, const Vec3& tx_pos,
                       const Vec3& tx_normal, const Vec3& rx_pos, const Vec3& rx_normal) {
  const Vec3 ray = rx_pos - tx_pos;
  const double d2 = ray.squaredNorm();
  if (!(d2 > 0.0)) throw DomainError("lambertian_gain: coincident transmitter and receiver");
  const double d = std::sqrt(d2);
  const double cos_phi = ray.dot(tx_normal) / d;
  const double cos_psi = -ray.dot(rx_normal) / d;
  if (cos_phi <= 0.0 || cos_psi <= 0.0) return 0.0;
  if (std::acos(std::min(cos_psi, 1.0)) > rx_fov) return 0.0;
  return (order + 1.0) * rx_area / (2.0 * kPi * d2) * std::pow(cos_phi, order) * cos_psi;
}

double los_gain(const ApNode& ap, const UeNode& ue) {
  return lambertian_gain(ap.lambertian_order(), ue.pd_area, ue.fov, ap.position, ap.orientation,
                         ue.position, ue.normal);
}

std::vector<SurfaceElement> discretize_room(const RoomConfig& room, double resolution) {
  room.validate();
  const double L = room.length, W = room.width, H = room.ap_height;
  if (!(resolution > 0.0)) throw ConfigError("discretize_room: resolution must be positive");
  if (resolution > std::min({L, W, H}))
    throw ConfigError("discretize_room: resolution exceeds the smallest room dimension");

  auto cells = [&](double span) {
    // Guard against 7.0/0.5 landing at 14.000000000000002.
    return static_cast<int>(std::ceil(span / resolution - 1e-9));
  };
  std::vector<SurfaceElement> out;

  // A face spanned by two axes (u, v) at fixed coordinate along the normal.
  auto tile = [&](Face face, const Vec3& origin, const Vec3& u_axis, double u_len,
                  const Vec3& v_axis, double v_len, const Vec3& normal) {
    const int nu = cells(u_len), nv = cells(v_len);
    const double du = u_len / nu, dv = v_len / nv;
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        out.push_back({origin + u_axis * ((i + 0.5) * du) + v_axis * ((j + 0.5) * dv), normal,
                       du * dv, room.face_reflectivity(face)});
  };
  const Vec3 ex = Vec3::UnitX(), ey = Vec3::UnitY(), ez = Vec3::UnitZ();
  tile(Face::floor, Vec3(-L / 2, -W / 2, 0.0), ex, L, ey, W, ez);
  tile(Face::ceiling, Vec3(-L / 2, -W / 2, H), ex, L, ey, W, -ez);
  tile(Face::west, Vec3(-L / 2, -W / 2, 0.0), ey, W, ez, H, ex);
  tile(Face::east, Vec3(L / 2, -W / 2, 0.0), ey, W, ez, H, -ex);
  tile(Face::south, Vec3(-L / 2, -W / 2, 0.0), ex, L, ez, H, ey);
  tile(Face::north, Vec3(-L / 2, W / 2, 0.0), ex, L, ez, H, -ey);
  return out;
}

namespace {
constexpr double kHalfPi = kPi / 2.0;
}

ReflectionModel::ReflectionModel(std::vector<SurfaceElement> elements, double condition_bound)
    : elements_(std::move(elements)) {
  const auto M = static_cast<Eigen::Index>(elements_.size());
  transfer_ = Eigen::MatrixXd::Zero(M, M);
  zeta_.resize(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& ei = elements_[static_cast<std::size_t>(i)];
    zeta_(i) = ei.reflectivity;
    for (Eigen::Index j = 0; j < M; ++j) {
      if (i == j) continue;
      const auto& ej = elements_[static_cast<std::size_t>(j)];
      transfer_(i, j) =
          lambertian_gain(1.0, ei.area, kHalfPi, ej.position, ej.normal, ei.position, ei.normal);
    }
  }

  const Eigen::MatrixXd EG = transfer_ * zeta_.asDiagonal();

  // Perron root of the non-negative EG by power iteration.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M);
  double rho = 0.0;
  for (int it = 0; it < 200 && M > 0; ++it) {
    Eigen::VectorXd w = EG * v;
    double n = w.norm();
    if (n == 0.0) {
      rho = 0.0;
      break;
    }
    rho = n / v.norm();
    v = w / n;
  }
  spectral_radius_ = rho;
  if (!(rho < 1.0)) {
    std::ostringstream msg;
    msg << "reflection operator has spectral radius " << rho
        << " >= 1; lower the reflectivities or refine the resolution";
    throw NumericalError(msg.str());
  }

  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M, M) - EG;
  lu_.compute(A);
  const double rcond = lu_.rcond();
  condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition_ <= condition_bound)) {
    std::ostringstream msg;
    msg << "(I - E G) is ill-conditioned (condition estimate " << condition_
        << "); lower the reflectivities or refine the resolution";
    throw NumericalError(msg.str());
  }
}

Eigen::VectorXd ReflectionModel::source_vector(const ApNode& ap) const {
  Eigen::VectorXd t(static_cast<Eigen::Index>(elements_.size()));
  const double m = ap.lambertian_order();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& e = elements_[i];
    // A ceiling-mounted AP can sit exactly on an element center; that element
    // lies in the emitter plane and receives nothing.
    if ((e.position - ap.position).squaredNorm() == 0.0) {
      t(static_cast<Eigen::Index>(i)) = 0.0;
      continue;
    }
    t(static_cast<Eigen::Index>(i)) =
        lambertian_gain(m, e.area, kHalfPi, ap.position, ap.orientation, e.position, e.normal);
  }
  return t;
}

Eigen::VectorXd ReflectionModel::receiver_vector(const UeNode& ue) const {
  Eigen::VectorXd r(static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& e = elements_[i];
    if ((e.position - ue.position).squaredNorm() == 0.0) {
      r(static_cast<Eigen::Index>(i)) = 0.0;
      continue;
    }
    r(static_cast<Eigen::Index>(i)) =
        lambertian_gain(1.0, ue.pd_area, ue.fov, e.position, e.normal, ue.position, ue.normal);
  }
  return r;
}

Eigen::VectorXd ReflectionModel::reflected_power(const ApNode& ap) const {
  Eigen::VectorXd x = lu_.solve(source_vector(ap));
  return zeta_.cwiseProduct(x);
}

double ReflectionModel::nlos_gain(const Eigen::VectorXd& reflected, const UeNode& ue) const {
  // Every term is non-negative; clip round-off.
  return std::max(0.0, receiver_vector(ue).dot(reflected));
}

double ReflectionModel::nlos_gain(const ApNode& ap, const UeNode& ue) const {
  return nlos_gain(reflected_power(ap), ue);
}

double nlos_gain(const ApNode& ap, const UeNode& ue, const std::vector<SurfaceElement>& elements) {
  return ReflectionModel(elements).nlos_gain(ap, ue);
}

Mat2 ChannelState::h_ab() const {
  Mat2 H;
  H << strong[0][0].total(), strong[0][1].total(), strong[1][0].total(), strong[1][1].total();
  return H;
}

Vec2 ChannelState::h_w() const { return Vec2(weak[0].total(), weak[1].total()); }

ChannelBuilder::ChannelBuilder(std::array<ApNode, 2> aps, const ReflectionModel* reflections)
    : aps_(std::move(aps)), reflections_(reflections) {
  if (reflections_)
    for (int i = 0; i < 2; ++i) reflected_[i] = reflections_->reflected_power(aps_[i]);
}

LinkGain ChannelBuilder::gain(int ap, const UeNode& ue) const {
  LinkGain g;
  g.los = los_gain(aps_[ap], ue);
  if (reflections_) g.nlos = reflections_->nlos_gain(reflected_[ap], ue);
  if (!std::isfinite(g.los) || !std::isfinite(g.nlos))
    throw PropagationError("non-finite channel gain");
  return g;
}

ChannelState build_channel_state(const ChannelBuilder& builder, const UeNode& strong_a,
                                 const UeNode& strong_b, const UeNode& weak) {
  ChannelState ch;
  for (int i = 0; i < 2; ++i) {
    ch.strong[0][i] = builder.gain(i, strong_a);
    ch.strong[1][i] = builder.gain(i, strong_b);
    ch.weak[i] = builder.gain(i, weak);
  }
  return ch;
}

ChannelState build_channel_state(const std::array<ApNode, 2>& aps, const std::vector<UeNode>& ues,
                                 const ReflectionModel* reflections) {
  const UeNode* a = nullptr;
  const UeNode* b = nullptr;
  const UeNode* w = nullptr;
  if (ues.size() != 3) throw ConfigError("build_channel_state: expected exactly 3 UEs");
  for (const auto& ue : ues) {
    const UeNode** slot = ue.role == UeRole::strong_cell1   ? &a
                          : ue.role == UeRole::strong_cell2 ? &b
                                                            : &w;
    if (*slot) throw ConfigError("build_channel_state: duplicate UE role");
    *slot = &ue;
  }
  ChannelBuilder builder(aps, reflections);
  return build_channel_state(builder, *a, *b, *w);
}

nlohmann::json to_json(const ChannelState& ch) {
  auto link = [](const LinkGain& g) {
    return nlohmann::json{{"total", g.total()}, {"los", g.los}, {"nlos", g.nlos}};
  };
  return nlohmann::json{
      {"h11", link(ch.strong[0][0])}, {"h12", link(ch.strong[1][0])},
      {"h21", link(ch.strong[0][1])}, {"h22", link(ch.strong[1][1])},
      {"h1w", link(ch.weak[0])},      {"h2w", link(ch.weak[1])},
  };
}

}  // namespace vlcnoma
