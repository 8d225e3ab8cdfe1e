#include "contractlab/family.hpp"

#include <cmath>
#include <stdexcept>

namespace contractlab {

double l2_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t ContractFamily::dim() const {
  switch (kind) {
    case FamilyKind::FullCube:
      return pin_null ? anchor.size() - 1 : anchor.size();
    case FamilyKind::Linear:
    case FamilyKind::RayFamily:
      return 1;
  }
  return 0;
}

Contract ContractFamily::embed(std::span<const double> params) const {
  const std::size_t m = anchor.size();
  switch (kind) {
    case FamilyKind::FullCube: {
      std::vector<double> f(m, 0.0);
      if (pin_null) {
        if (params.size() != m - 1)
          throw std::invalid_argument("embed: expected m-1 free coordinates");
        for (std::size_t i = 1; i < m; ++i) f[i] = params[i - 1];
      } else {
        if (params.size() != m)
          throw std::invalid_argument("embed: expected m coordinates");
        for (std::size_t i = 0; i < m; ++i) f[i] = params[i];
      }
      return Contract(std::move(f));
    }
    case FamilyKind::Linear: {
      if (params.size() != 1)
        throw std::invalid_argument("embed: linear family takes one parameter");
      std::vector<double> f(m);
      for (std::size_t i = 0; i < m; ++i) f[i] = params[0] * anchor[i];
      return Contract(std::move(f));
    }
    case FamilyKind::RayFamily: {
      // params = (ray index, beta)
      if (params.size() != 2)
        throw std::invalid_argument("embed: ray family takes (ray, beta)");
      std::size_t r = static_cast<std::size_t>(params[0]);
      if (r >= rays.size()) throw std::out_of_range("embed: ray index");
      std::vector<double> f(m);
      for (std::size_t i = 0; i < m; ++i) f[i] = anchor[i] + params[1] * rays[r][i];
      return Contract(std::move(f));
    }
  }
  throw std::logic_error("embed: unknown family kind");
}

bool ContractFamily::contains(const Contract& f, double tol) const {
  const std::size_t m = anchor.size();
  if (f.size() != m) return false;
  for (double x : f.payments)
    if (x < -tol || x > 1.0 + tol) return false;
  switch (kind) {
    case FamilyKind::FullCube:
      return !pin_null || std::abs(f.payments[0]) <= tol;
    case FamilyKind::Linear: {
      // f = alpha * v for some alpha in [0,1].
      double vv = dot(anchor, anchor);
      if (vv == 0.0) return l2_norm(f.payments) <= tol;
      double alpha = dot(f.payments, anchor) / vv;
      if (alpha < -tol || alpha > 1.0 + tol) return false;
      for (std::size_t i = 0; i < m; ++i)
        if (std::abs(f.payments[i] - alpha * anchor[i]) > tol) return false;
      return true;
    }
    case FamilyKind::RayFamily: {
      for (const auto& r : rays) {
        double beta = 0.0;
        for (std::size_t i = 0; i < m; ++i) beta += (f.payments[i] - anchor[i]) * r[i];
        if (beta < -tol || beta > 1.0 + tol) continue;
        bool on_ray = true;
        for (std::size_t i = 0; i < m && on_ray; ++i)
          on_ray = std::abs(anchor[i] + beta * r[i] - f.payments[i]) <= tol;
        if (on_ray) return true;
      }
      return false;
    }
  }
  return false;
}

Contract ContractFamily::sample(Rng& rng) const {
  switch (kind) {
    case FamilyKind::FullCube: {
      std::vector<double> p(dim());
      for (double& x : p) x = rng.uniform01();
      return embed(p);
    }
    case FamilyKind::Linear: {
      double a[1] = {rng.uniform01()};
      return embed(a);
    }
    case FamilyKind::RayFamily: {
      double p[2] = {static_cast<double>(rng.below(rays.size())), rng.uniform01()};
      return embed(p);
    }
  }
  throw std::logic_error("sample: unknown family kind");
}

ContractFamily ContractFamily::full_cube(std::vector<double> v) {
  ContractFamily fam;
  fam.kind = FamilyKind::FullCube;
  fam.anchor = std::move(v);
  return fam;
}

ContractFamily ContractFamily::free_cube(std::vector<double> v) {
  if (v.size() < 2)
    throw std::invalid_argument("free_cube: need at least two outcomes");
  ContractFamily fam;
  fam.kind = FamilyKind::FullCube;
  fam.anchor = std::move(v);
  fam.pin_null = true;
  return fam;
}

ContractFamily ContractFamily::linear(std::vector<double> v) {
  ContractFamily fam;
  fam.kind = FamilyKind::Linear;
  fam.anchor = std::move(v);
  return fam;
}

ContractFamily ContractFamily::ray_family(std::vector<double> v,
                                          std::vector<std::vector<double>> rays) {
  ContractFamily fam;
  fam.kind = FamilyKind::RayFamily;
  fam.anchor = std::move(v);
  fam.rays = std::move(rays);
  for (auto& r : fam.rays) {
    double n = l2_norm(r);
    if (n < 1e-12)
      throw std::invalid_argument("ray_family: zero-length ray");
    for (double& x : r) x /= n;
  }
  return fam;
}

const char* ContractFamily::kind_name() const {
  switch (kind) {
    case FamilyKind::FullCube: return pin_null ? "free-cube" : "full-cube";
    case FamilyKind::Linear: return "linear";
    case FamilyKind::RayFamily: return "ray-family";
  }
  return "?";
}

}  // namespace contractlab
