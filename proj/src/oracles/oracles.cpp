#include "activesep/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

namespace activesep::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> lattice(double from, double to, double step) {
  std::vector<double> out;
  for (long k = static_cast<long>(std::ceil(from / step - 1e-9)); k * step <= to + 1e-12; ++k) {
    out.push_back(static_cast<double>(k) * step);
  }
  return out;
}

bool satisfies(std::span<const LabeledPoint> pts, double rho, double c, bool strict) {
  for (const auto& p : pts) {
    const double s = p.label * (p.z - rho * p.x - c);
    if (strict ? !(s > 0.0) : s < 0.0) return false;
  }
  return true;
}

// a . x = b over a small number of unknowns, by Gaussian elimination with
// partial pivoting. Returns false for (near) singular systems.
template <std::size_t N>
bool solve(std::array<std::array<double, N + 1>, N> m, std::array<double, N>& x) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-12) return false;
    std::swap(m[col], m[piv]);
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k <= N; ++k) m[r][k] -= f * m[col][k];
    }
  }
  for (std::size_t i = 0; i < N; ++i) x[i] = m[i][N] / m[i][i];
  return true;
}

}  // namespace

bool lp_separable(std::span<const LabeledPoint> points) {
  // Constraints a . (rho, c, t) <= b.
  struct Row {
    double a0, a1, a2, b;
  };
  std::vector<Row> rows;
  for (const auto& p : points) {
    // y (z - rho x - c) >= t  <=>  y x rho + y c + t <= y z
    rows.push_back({p.label * p.x, static_cast<double>(p.label), 1.0, p.label * p.z});
  }
  rows.push_back({1, 0, 0, 1e3});
  rows.push_back({-1, 0, 0, 1e3});
  rows.push_back({0, 1, 0, 1e5});
  rows.push_back({0, -1, 0, 1e5});
  rows.push_back({0, 0, 1, 1});

  double best = -kInf;
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<std::array<double, 4>, 3> m{{{rows[i].a0, rows[i].a1, rows[i].a2, rows[i].b},
                                                {rows[j].a0, rows[j].a1, rows[j].a2, rows[j].b},
                                                {rows[k].a0, rows[k].a1, rows[k].a2, rows[k].b}}};
        std::array<double, 3> x{};
        if (!solve<3>(m, x)) continue;
        bool ok = true;
        for (const auto& r : rows) {
          if (r.a0 * x[0] + r.a1 * x[1] + r.a2 * x[2] > r.b + 1e-7 * (1.0 + std::abs(r.b))) {
            ok = false;
            break;
          }
        }
        if (ok) best = std::max(best, x[2]);
      }
    }
  }
  return best > 1e-9;
}

bool grid_separable(std::span<const LabeledPoint> points, const GridSpec& grid) {
  for (double th : lattice(grid.theta_min, grid.theta_max, grid.dtheta)) {
    const double rho = std::tan(th);
    for (double c : lattice(grid.c_min, grid.c_max, grid.dc)) {
      if (satisfies(points, rho, c, true)) return true;
    }
  }
  return false;
}

Projection grid_projection(std::span<const LabeledPoint> points, const GridSpec& grid) {
  Projection out;
  const auto cs = lattice(grid.c_min, grid.c_max, grid.dc);
  for (double th : lattice(grid.theta_min, grid.theta_max, grid.dtheta)) {
    const double rho = std::tan(th);
    for (double c : cs) {
      if (!satisfies(points, rho, c, false)) continue;
      if (out.empty) {
        out = {false, th, th, c, c};
      } else {
        out.theta_lo = std::min(out.theta_lo, th);
        out.theta_hi = std::max(out.theta_hi, th);
        out.c_lo = std::min(out.c_lo, c);
        out.c_hi = std::max(out.c_hi, c);
      }
    }
  }
  return out;
}

Projection grid_cover_projection(std::span<const LabeledPoint> points, const GridSpec& grid) {
  Projection out;
  const auto cs = lattice(grid.c_min, grid.c_max, grid.dc);
  for (double th : lattice(grid.theta_min, grid.theta_max, grid.dtheta)) {
    const double rho = std::tan(th);
    const double drho = std::max(std::tan(th + grid.dtheta / 2) - rho, rho - std::tan(th - grid.dtheta / 2));
    for (double c : cs) {
      bool ok = true;
      for (const auto& p : points) {
        const double slack = std::abs(p.x) * drho + grid.dc / 2 + 1e-12;
        if (p.label * (p.z - rho * p.x - c) < -slack) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (out.empty) {
        out = {false, th, th, c, c};
      } else {
        out.theta_lo = std::min(out.theta_lo, th);
        out.theta_hi = std::max(out.theta_hi, th);
        out.c_lo = std::min(out.c_lo, c);
        out.c_hi = std::max(out.c_hi, c);
      }
    }
  }
  return out;
}

Projection exact_projection(std::span<const LabeledPoint> points, double theta_min, double theta_max,
                            double c_min, double c_max) {
  // Lines a0 rho + a1 c = b.
  struct Line {
    double a0, a1, b;
  };
  std::vector<Line> lines;
  for (const auto& p : points) lines.push_back({p.x, 1.0, p.z});
  const double r_lo = std::tan(theta_min);
  const double r_hi = std::tan(theta_max);
  lines.push_back({1, 0, r_lo});
  lines.push_back({1, 0, r_hi});
  lines.push_back({0, 1, c_min});
  lines.push_back({0, 1, c_max});

  auto feasible = [&](double rho, double c) {
    constexpr double tol = 1e-9;
    if (rho < r_lo - tol || rho > r_hi + tol || c < c_min - tol || c > c_max + tol) return false;
    for (const auto& p : points) {
      if (p.label * (p.z - rho * p.x - c) < -tol * (1.0 + std::abs(p.z) + std::abs(rho * p.x))) return false;
    }
    return true;
  };

  Projection out;
  double rho_lo = kInf, rho_hi = -kInf;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      std::array<std::array<double, 3>, 2> m{{{lines[i].a0, lines[i].a1, lines[i].b},
                                              {lines[j].a0, lines[j].a1, lines[j].b}}};
      std::array<double, 2> x{};
      if (!solve<2>(m, x) || !feasible(x[0], x[1])) continue;
      rho_lo = std::min(rho_lo, x[0]);
      rho_hi = std::max(rho_hi, x[0]);
      if (out.empty) {
        out = {false, 0, 0, x[1], x[1]};
      } else {
        out.c_lo = std::min(out.c_lo, x[1]);
        out.c_hi = std::max(out.c_hi, x[1]);
      }
    }
  }
  if (!out.empty) {
    out.theta_lo = std::atan(rho_lo);
    out.theta_hi = std::atan(rho_hi);
  }
  return out;
}

MarginResult grid_margin(std::span<const LabeledPoint> points, double dtheta, double dc) {
  MarginResult best;
  const double half = std::acos(-1.0) / 2.0;
  const long kmax = static_cast<long>(std::floor(half / dtheta));
  for (long k = -kmax; k <= kmax; ++k) {
    const double th = static_cast<double>(k) * dtheta;
    if (std::abs(th) >= half - 1e-12) continue;
    const double rho = std::tan(th);
    const double cos_th = std::cos(th);
    double lo = -kInf, hi = kInf;
    for (const auto& p : points) {
      const double r = p.z - rho * p.x;
      if (p.label > 0) hi = std::min(hi, r);
      else lo = std::max(lo, r);
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) continue;
    for (long j = static_cast<long>(std::ceil(lo / dc)); static_cast<double>(j) * dc <= hi; ++j) {
      const double c = static_cast<double>(j) * dc;
      double m = kInf;
      for (const auto& p : points) m = std::min(m, p.label * (p.z - rho * p.x - c) * cos_th);
      if (m > 0.0 && (!best.found || m > best.margin)) best = {true, m, th, c};
    }
  }
  return best;
}

std::optional<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>>
closest_pairs(std::span<const LabeledPoint> points, double min_separation) {
  using Key = std::tuple<long long, double, double, double, double>;
  auto key = [&](std::size_t n, std::size_t p) {
    const auto& a = points[n];
    const auto& b = points[p];
    return Key{std::llround(std::hypot(a.x - b.x, a.z - b.z) * 1e9), a.x, a.z, b.x, b.z};
  };
  std::optional<std::pair<std::size_t, std::size_t>> first;
  for (std::size_t n = 0; n < points.size(); ++n) {
    if (points[n].label != -1) continue;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p].label != 1) continue;
      if (!first || key(n, p) < key(first->first, first->second)) first = std::pair{n, p};
    }
  }
  if (!first) return std::nullopt;
  const double mx = (points[first->first].x + points[first->second].x) / 2.0;
  const double mz = (points[first->first].z + points[first->second].z) / 2.0;
  std::optional<std::pair<std::size_t, std::size_t>> second;
  for (std::size_t n = 0; n < points.size(); ++n) {
    if (points[n].label != -1 || n == first->first) continue;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p].label != 1 || p == first->second) continue;
      const double sx = (points[n].x + points[p].x) / 2.0;
      const double sz = (points[n].z + points[p].z) / 2.0;
      if (std::hypot(sx - mx, sz - mz) < min_separation) continue;
      if (!second || key(n, p) < key(second->first, second->second)) second = std::pair{n, p};
    }
  }
  if (!second) return std::nullopt;
  return std::pair{*first, *second};
}

}  // namespace activesep::oracles
