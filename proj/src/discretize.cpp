#include "contractlab/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "contractlab/rng.hpp"

namespace contractlab {

namespace {

constexpr double kZeroDirTol = 1e-9;
constexpr std::size_t kCandidateCap = 4'000'000;

std::size_t auto_density(double angle, std::size_t dim) {
  std::size_t n = std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(4.0 / angle)));
  // Keep the full candidate grid tractable.
  while (dim >= 1 && std::pow(static_cast<double>(n), static_cast<double>(dim)) >
                         static_cast<double>(kCandidateCap) &&
         n > 8)
    --n;
  return n;
}

// Enumerate candidate directions (f - v normalized) for f on the family's
// canonical grid, in lexicographic grid order.
std::vector<std::vector<double>> candidate_directions(const ContractFamily& family,
                                                      std::size_t n) {
  const std::size_t m = family.contract_length();
  std::vector<std::vector<double>> out;

  auto push_direction = [&](const Contract& f) {
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = f.payments[i] - family.anchor[i];
    double norm = l2_norm(d);
    if (norm < kZeroDirTol) return;
    for (double& x : d) x /= norm;
    out.push_back(std::move(d));
  };

  switch (family.kind) {
    case FamilyKind::FullCube: {
      const std::size_t dim = family.dim();
      std::vector<std::size_t> idx(dim, 0);
      std::vector<double> params(dim);
      const double step = n > 1 ? 1.0 / static_cast<double>(n - 1) : 0.0;
      while (true) {
        for (std::size_t i = 0; i < dim; ++i) params[i] = static_cast<double>(idx[i]) * step;
        push_direction(family.embed(params));
        std::size_t axis = dim;
        while (axis > 0) {
          --axis;
          if (++idx[axis] < n) break;
          idx[axis] = 0;
          if (axis == 0) return out;
        }
        if (dim == 0) break;
      }
      return out;
    }
    case FamilyKind::Linear: {
      // All directions of alpha*v - v are parallel; the grid collapses to one.
      const double step = n > 1 ? 1.0 / static_cast<double>(n - 1) : 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double alpha[1] = {static_cast<double>(k) * step};
        push_direction(family.embed(alpha));
      }
      return out;
    }
    case FamilyKind::RayFamily: {
      for (std::size_t r = 0; r < family.rays.size(); ++r) {
        double params[2] = {static_cast<double>(r), 1.0};
        push_direction(family.embed(params));
      }
      return out;
    }
  }
  return out;
}

}  // namespace

DirectionCode build_direction_cover(const ContractFamily& family, double angle,
                                    std::size_t candidate_density) {
  if (!(angle > 0.0) || !(angle < std::acos(-1.0) / 2))
    throw std::invalid_argument("build_direction_cover: angle must be in (0, pi/2)");
  std::size_t n = candidate_density ? candidate_density : auto_density(angle, family.dim());
  if (n < 1) throw std::invalid_argument("build_direction_cover: density must be >= 1");

  DirectionCode code;
  code.angle = angle;
  code.candidate_density = n;
  const double cos_angle = std::cos(angle);

  // First uncovered candidate joins the code; a packing by construction.
  for (auto& d : candidate_directions(family, n)) {
    bool covered = false;
    for (const auto& g : code.directions) {
      if (dot(d, g) >= cos_angle) {
        covered = true;
        break;
      }
    }
    if (!covered) code.directions.push_back(std::move(d));
  }
  return code;
}

DiscretizedContractSet build_S_eps(const ContractFamily& family, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("build_S_eps: eps must be in (0, 1)");

  DiscretizedContractSet set;
  set.eps = eps;
  set.provenance = family.kind_name();
  set.code = build_direction_cover(family, eps * eps);

  const std::size_t m = family.contract_length();
  const double radial = std::sqrt(static_cast<double>(m));
  const auto beta_steps = static_cast<std::size_t>(std::floor(1.0 / eps + 1e-9));

  // Dedup on a 1e-12 coordinate grid keeps the first (direction, beta) hit.
  std::set<std::vector<long long>> seen;
  auto key_of = [m](const Contract& f) {
    std::vector<long long> key(m);
    for (std::size_t i = 0; i < m; ++i) key[i] = std::llround(f.payments[i] * 1e12);
    return key;
  };

  auto try_add = [&](Contract f) {
    if (!family.contains(f, 1e-9)) return;
    for (double& x : f.payments) x = std::clamp(x, 0.0, 1.0);
    if (seen.insert(key_of(f)).second) set.arms.push_back(std::move(f));
  };

  // beta = 0 contributes the anchor itself, once.
  try_add(Contract(family.anchor));
  for (const auto& g : set.code.directions) {
    for (std::size_t k = 1; k <= beta_steps; ++k) {
      double beta = static_cast<double>(k) * eps;
      std::vector<double> f(m);
      for (std::size_t i = 0; i < m; ++i) f[i] = family.anchor[i] + radial * beta * g[i];
      try_add(Contract(std::move(f)));
    }
  }

  if (set.arms.empty())
    throw std::runtime_error(std::string("build_S_eps: no arm of ") + family.kind_name() +
                             " family survives at eps=" + std::to_string(eps));
  return set;
}

DiscretizedContractSet uniform_grid(std::size_t m, double eps, std::size_t cap) {
  if (!(eps > 0.0) || !(eps <= 1.0))
    throw std::invalid_argument("uniform_grid: eps must be in (0, 1]");
  if (m == 0) throw std::invalid_argument("uniform_grid: m must be >= 1");

  const auto per_axis = static_cast<std::size_t>(std::floor(1.0 / eps + 1e-9)) + 1;
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(m));
  if (total > static_cast<double>(cap))
    throw std::runtime_error("uniform_grid: " + std::to_string(total) +
                             " arms exceed cap " + std::to_string(cap) +
                             "; use a larger eps");

  DiscretizedContractSet set;
  set.eps = eps;
  set.provenance = "uniform-grid";
  set.arms.reserve(static_cast<std::size_t>(total));

  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i)
      f[i] = std::min(1.0, static_cast<double>(idx[i]) * eps);
    set.arms.emplace_back(std::move(f));
    std::size_t axis = m;
    bool done = false;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < per_axis) break;
      idx[axis] = 0;
      if (axis == 0) done = true;
    }
    if (done) break;
  }
  return set;
}

DimensionEstimate estimate_intrinsic_dimension(const ContractFamily& family,
                                               std::span<const double> eps_list,
                                               std::size_t candidate_density) {
  DimensionEstimate est;
  for (double eps : eps_list) {
    if (!(eps > 0.0) || !(eps < 0.1))
      throw std::invalid_argument(
          "estimate_intrinsic_dimension: eps must be in (0, 0.1)");
    DirectionCode code = build_direction_cover(family, eps, candidate_density);
    est.cover_sizes.emplace_back(eps, code.size());
    if (code.size() >= 1) {
      double d = std::log(static_cast<double>(code.size())) / std::log(1.0 / eps);
      est.d_hat = std::max(est.d_hat, d);
    }
  }
  return est;
}

CoveringCheck verify_covering(const ContractFamily& family, const DirectionCode& code,
                              std::size_t n_samples, std::uint64_t seed) {
  CoveringCheck check;
  const std::size_t dim = family.dim();
  const double h =
      code.candidate_density > 1 ? 1.0 / static_cast<double>(code.candidate_density - 1) : 1.0;
  const double r_min =
      std::max(5.0 * h * std::sqrt(static_cast<double>(dim)), 0.2);
  // Angular resolution of the candidate position grid at distance r_min.
  const double resolution =
      std::asin(std::min(1.0, h * std::sqrt(static_cast<double>(dim)) / (2.0 * r_min)));
  check.slack = 2.0 * resolution;
  const double cos_bound = std::cos(code.angle + check.slack);

  Rng rng(seed);
  const std::size_t m = family.contract_length();
  std::vector<double> d(m);
  for (std::size_t s = 0; s < n_samples; ++s) {
    Contract f = family.sample(rng);
    for (std::size_t i = 0; i < m; ++i) d[i] = f.payments[i] - family.anchor[i];
    double norm = l2_norm(d);
    if (norm < r_min) {
      ++check.skipped_near_anchor;
      continue;
    }
    ++check.checked;
    bool covered = false;
    for (const auto& g : code.directions) {
      if (dot(d, g) >= cos_bound * norm) {
        covered = true;
        break;
      }
    }
    if (!covered) ++check.violations;
  }
  return check;
}

}  // namespace contractlab
