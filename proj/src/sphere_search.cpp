#include "xqd/sphere_search.hpp"

#include <numbers>

namespace xqd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSimplexTol = 1e-10;
constexpr double kPoleSin = 1e-6;
constexpr double kSameDirection = 1e-4;

struct Sample {
  double value;
  double theta;
  double psi;
};

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Orthonormal tangent pair at u.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& u) {
  const Vec3 seed = std::abs(u[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const double s = dot(seed, u);
  const Vec3 e1 = normalized({seed[0] - s * u[0], seed[1] - s * u[1], seed[2] - s * u[2]});
  const Vec3 e2{u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
                u[0] * e1[1] - u[1] * e1[0]};
  return {e1, e2};
}

struct Refined {
  double value;
  Vec3 u;
};

// Nelder-Mead on g(a, b) = f(normalize(u0 + a e1 + b e2)), maximising.
Refined nelder_mead(const SphereFunction& f, const Vec3& u0, double step, int max_iters) {
  const auto [e1, e2] = tangent_frame(u0);
  auto point = [&](double a, double b) {
    return normalized({u0[0] + a * e1[0] + b * e2[0], u0[1] + a * e1[1] + b * e2[1],
                       u0[2] + a * e1[2] + b * e2[2]});
  };
  struct Vertex {
    double a, b, value;
  };
  auto eval = [&](double a, double b) { return Vertex{a, b, f(point(a, b))}; };

  std::array<Vertex, 3> s{eval(0.0, 0.0), eval(step, 0.0), eval(0.0, step)};
  for (int it = 0; it < max_iters; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) { return l.value > r.value; });
    const double size = std::max(std::hypot(s[1].a - s[0].a, s[1].b - s[0].b),
                                 std::hypot(s[2].a - s[0].a, s[2].b - s[0].b));
    if (size < kSimplexTol) break;

    const double ca = 0.5 * (s[0].a + s[1].a);
    const double cb = 0.5 * (s[0].b + s[1].b);
    const Vertex refl = eval(2.0 * ca - s[2].a, 2.0 * cb - s[2].b);
    if (refl.value > s[0].value) {
      const Vertex expd = eval(3.0 * ca - 2.0 * s[2].a, 3.0 * cb - 2.0 * s[2].b);
      s[2] = expd.value > refl.value ? expd : refl;
      continue;
    }
    if (refl.value > s[1].value) {
      s[2] = refl;
      continue;
    }
    const bool outside = refl.value > s[2].value;
    const Vertex contr = outside ? eval(0.5 * (ca + refl.a), 0.5 * (cb + refl.b))
                                 : eval(0.5 * (ca + s[2].a), 0.5 * (cb + s[2].b));
    if (contr.value > (outside ? refl.value : s[2].value)) {
      s[2] = contr;
      continue;
    }
    for (int k = 1; k < 3; ++k)
      s[k] = eval(0.5 * (s[0].a + s[k].a), 0.5 * (s[0].b + s[k].b));
  }
  const auto best = std::max_element(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) {
    return l.value < r.value;
  });
  return {best->value, point(best->a, best->b)};
}

double polar_angle(const Vec3& u) { return std::acos(std::clamp(u[2], -1.0, 1.0)); }

double azimuth(const Vec3& u) {
  double p = std::atan2(u[1], u[0]);
  if (p < 0.0) p += 2.0 * kPi;
  return p;
}

}  // namespace

void GridConfig::validate() const {
  if (n_theta < 32 || n_psi < 64)
    throw Error(ErrorKind::InvalidParams, "sphere grid must be at least 32 x 64");
  if (refine_iters < 0 || starts < 1)
    throw Error(ErrorKind::InvalidParams,
                "refinement iterations must be >= 0 and starts >= 1");
}

std::string_view to_string(FreeFamily family) noexcept {
  switch (family) {
    case FreeFamily::None: return "none";
    case FreeFamily::FreePsi: return "free_psi";
    case FreeFamily::FreeTheta: return "free_theta";
    case FreeFamily::FreeBoth: return "free_both";
  }
  return "none";
}

Vec3 bloch_vector(double theta, double psi) {
  return {std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi), std::cos(theta)};
}

SphereMax maximize_on_sphere(const SphereFunction& f, const GridConfig& grid) {
  grid.validate();
  const int nt = grid.n_theta;
  const int np = grid.n_psi;
  const double dtheta = kPi / (nt - 1);
  const double dpsi = 2.0 * kPi / np;

  // Row i holds theta_i; the poles are evaluated once and copied across.
  std::vector<double> values(static_cast<std::size_t>(nt) * np);
  std::vector<Sample> samples;
  samples.reserve(values.size());
  for (int i = 0; i < nt; ++i) {
    const double theta = i * dtheta;
    const bool pole = i == 0 || i == nt - 1;
    const double pole_value = pole ? f(bloch_vector(theta, 0.0)) : 0.0;
    for (int j = 0; j < np; ++j) {
      const double psi = j * dpsi;
      const double v = pole ? pole_value : f(bloch_vector(theta, psi));
      values[static_cast<std::size_t>(i) * np + j] = v;
      if (!pole || j == 0) samples.push_back({v, theta, psi});
    }
  }

  const std::size_t n_starts = std::min<std::size_t>(grid.starts, samples.size());
  std::partial_sort(samples.begin(), samples.begin() + n_starts, samples.end(),
                    [](const Sample& l, const Sample& r) { return l.value > r.value; });

  std::vector<Refined> refined;
  for (std::size_t k = 0; k < n_starts; ++k) {
    const Vec3 u0 = bloch_vector(samples[k].theta, samples[k].psi);
    Refined r = nelder_mead(f, u0, std::min(dtheta, dpsi), grid.refine_iters);
    if (r.value < samples[k].value) r = {samples[k].value, u0};
    refined.push_back(r);
  }

  SphereMax out;
  out.value = samples.front().value;
  for (const auto& r : refined) out.value = std::max(out.value, r.value);

  for (const auto& r : refined) {
    if (r.value < out.value - kArgmaxTol) continue;
    const bool seen = std::any_of(out.argmax.begin(), out.argmax.end(), [&](const Vec3& v) {
      return 1.0 - std::abs(dot(v, r.u)) < kSameDirection * kSameDirection;
    });
    if (!seen) out.argmax.push_back(r.u);
  }

  // Free families: a full theta-row or psi-column of the grid at the maximum,
  // or the circle / meridian through a refined maximiser.
  const double cut = out.value - kArgmaxTol;
  bool free_psi = false;
  bool free_theta = false;
  for (int i = 1; i + 1 < nt && !free_psi; ++i) {
    const auto row = values.begin() + static_cast<std::ptrdiff_t>(i) * np;
    free_psi = std::all_of(row, row + np, [&](double v) { return v >= cut; });
  }
  for (int j = 0; j < np && !free_theta; ++j) {
    bool all = true;
    for (int i = 0; i < nt && all; ++i) all = values[static_cast<std::size_t>(i) * np + j] >= cut;
    free_theta = all;
  }
  for (const Vec3& u : out.argmax) {
    const double theta = polar_angle(u);
    const double psi = azimuth(u);
    if (!free_psi && std::sin(theta) > kPoleSin) {
      bool all = true;
      for (int j = 0; j < np && all; ++j) all = f(bloch_vector(theta, psi + j * dpsi)) >= cut;
      free_psi = all;
    }
    if (!free_theta) {
      bool all = true;
      for (int i = 0; i < nt && all; ++i) all = f(bloch_vector(i * dtheta, psi)) >= cut;
      free_theta = all;
    }
  }
  if (free_psi && free_theta)
    out.family = FreeFamily::FreeBoth;
  else if (free_psi)
    out.family = FreeFamily::FreePsi;
  else if (free_theta)
    out.family = FreeFamily::FreeTheta;
  return out;
}

}  // namespace xqd
