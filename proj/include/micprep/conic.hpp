// Conic set descriptions and exact point evaluation. A LinConicSet denotes
// {u : A u - b in K} where K is an ordered product of cone blocks over the
// rows; a MicpFormulation wraps one over (x, y, z) variables with z integer.
// Evaluation is exact whenever the point lives in Q[sqrt(2)] (every cone
// test reduces to signs there) and tolerance-based for double points.
#pragma once

#include "micprep/q2.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace micprep::conic {

struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct witness_infeasible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct irrational_data : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ConeTag { Zero, Nonneg, Lorentz, RotatedLorentz };

inline std::string cone_tag_name(ConeTag t) {
  switch (t) {
    case ConeTag::Zero: return "zero";
    case ConeTag::Nonneg: return "nonneg";
    case ConeTag::Lorentz: return "lorentz";
    case ConeTag::RotatedLorentz: return "rlorentz";
  }
  return "?";
}

inline std::optional<ConeTag> cone_tag_from_name(const std::string& s) {
  if (s == "zero") return ConeTag::Zero;
  if (s == "nonneg") return ConeTag::Nonneg;
  if (s == "lorentz") return ConeTag::Lorentz;
  if (s == "rlorentz") return ConeTag::RotatedLorentz;
  return std::nullopt;
}

/// One affine form; its value at u is coeffs . u - constant.
struct AffineRow {
  std::vector<Q2> coeffs;
  Q2 constant{};

  Q2 value(std::span<const Q2> u) const {
    Q2 acc = -constant;
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * u[j];
    return acc;
  }
  double value(std::span<const double> u) const {
    double acc = -constant.approx();
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j].approx() * u[j];
    return acc;
  }
};

/// Contiguous row range assigned to one cone. Lorentz places the norm bound
/// first: rows (t, x...) mean ||x||_2 <= t. RotatedLorentz places the two
/// scalar factors first: rows (s, t, w...) mean ||w||^2 <= s*t, s >= 0,
/// t >= 0.
struct ConeBlock {
  ConeTag tag = ConeTag::Zero;
  std::size_t first = 0;
  std::size_t count = 0;
};

struct LinConicSet {
  std::size_t nvars = 0;
  std::vector<AffineRow> rows;
  std::vector<ConeBlock> blocks;

  void validate() const {
    std::size_t at = 0;
    for (const auto& blk : blocks) {
      if (blk.first != at) throw std::invalid_argument("cone blocks must partition the rows in order");
      if (blk.count == 0) throw std::invalid_argument("empty cone block");
      if (blk.tag == ConeTag::RotatedLorentz && blk.count < 2)
        throw std::invalid_argument("rotated Lorentz block needs at least rows (s, t)");
      at += blk.count;
    }
    if (at != rows.size()) throw std::invalid_argument("cone blocks must cover all rows");
    for (const auto& row : rows)
      if (row.coeffs.size() != nvars) throw std::invalid_argument("row width != nvars");
  }

  bool all_data_rational() const {
    for (const auto& row : rows) {
      if (!row.constant.is_rational()) return false;
      for (const auto& c : row.coeffs)
        if (!c.is_rational()) return false;
    }
    return true;
  }
};

/// Formulation over variables ordered [x | y | z]; denotes
/// proj_x(body ∩ (R^{nx+ny} x Z^nz)).
struct MicpFormulation {
  std::size_t nx = 0, ny = 0, nz = 0;
  LinConicSet body;

  std::size_t nvars() const { return nx + ny + nz; }
  void validate() const {
    body.validate();
    if (body.nvars != nvars()) throw std::invalid_argument("body width != nx+ny+nz");
  }
};

struct BlockReport {
  std::size_t block = 0;
  ConeTag tag = ConeTag::Zero;
  bool ok = true;
  double residual = 0.0;  // how far outside the cone, in the natural units of the block
};

struct FeasReport {
  bool feasible = true;
  bool exact = true;
  std::vector<BlockReport> blocks;
  std::vector<std::size_t> fractional_z;  // integer variables with non-integral values
  double max_residual = 0.0;
};

namespace detail {

inline double q2d(const Q2& x) { return x.approx(); }

inline BlockReport eval_block_exact(const LinConicSet& s, const ConeBlock& blk, std::size_t index,
                                    std::span<const Q2> u) {
  BlockReport rep{index, blk.tag, true, 0.0};
  auto row = [&](std::size_t i) { return s.rows[blk.first + i].value(u); };
  switch (blk.tag) {
    case ConeTag::Zero: {
      for (std::size_t i = 0; i < blk.count; ++i) {
        Q2 v = row(i);
        if (v.sign() != 0) rep.ok = false;
        rep.residual = std::max(rep.residual, std::abs(q2d(v)));
      }
      break;
    }
    case ConeTag::Nonneg: {
      for (std::size_t i = 0; i < blk.count; ++i) {
        Q2 v = row(i);
        if (v.sign() < 0) {
          rep.ok = false;
          rep.residual = std::max(rep.residual, -q2d(v));
        }
      }
      break;
    }
    case ConeTag::Lorentz: {
      Q2 t = row(0);
      Q2 nrm2{};
      for (std::size_t i = 1; i < blk.count; ++i) {
        Q2 v = row(i);
        nrm2 += v * v;
      }
      bool ok = t.sign() >= 0 && Q2(nrm2 - t * t).sign() <= 0;
      rep.ok = ok;
      if (!ok) rep.residual = std::max(0.0, std::sqrt(std::max(0.0, q2d(nrm2))) - q2d(t));
      break;
    }
    case ConeTag::RotatedLorentz: {
      Q2 sc = row(0), tc = row(1);
      Q2 nrm2{};
      for (std::size_t i = 2; i < blk.count; ++i) {
        Q2 v = row(i);
        nrm2 += v * v;
      }
      bool ok = sc.sign() >= 0 && tc.sign() >= 0 && Q2(nrm2 - sc * tc).sign() <= 0;
      rep.ok = ok;
      if (!ok)
        rep.residual = std::max({0.0, q2d(nrm2) - q2d(sc) * q2d(tc), -q2d(sc), -q2d(tc)});
      break;
    }
  }
  return rep;
}

inline BlockReport eval_block_approx(const LinConicSet& s, const ConeBlock& blk, std::size_t index,
                                     std::span<const double> u, double tol) {
  BlockReport rep{index, blk.tag, true, 0.0};
  auto row = [&](std::size_t i) { return s.rows[blk.first + i].value(u); };
  switch (blk.tag) {
    case ConeTag::Zero: {
      for (std::size_t i = 0; i < blk.count; ++i)
        rep.residual = std::max(rep.residual, std::abs(row(i)));
      rep.ok = rep.residual <= tol;
      break;
    }
    case ConeTag::Nonneg: {
      for (std::size_t i = 0; i < blk.count; ++i)
        rep.residual = std::max(rep.residual, -row(i));
      rep.residual = std::max(rep.residual, 0.0);
      rep.ok = rep.residual <= tol;
      break;
    }
    case ConeTag::Lorentz: {
      double t = row(0), nrm2 = 0;
      for (std::size_t i = 1; i < blk.count; ++i) nrm2 += row(i) * row(i);
      rep.residual = std::max(0.0, std::sqrt(nrm2) - t);
      rep.ok = rep.residual <= tol;
      break;
    }
    case ConeTag::RotatedLorentz: {
      double sc = row(0), tc = row(1), nrm2 = 0;
      for (std::size_t i = 2; i < blk.count; ++i) nrm2 += row(i) * row(i);
      rep.residual = std::max({0.0, nrm2 - sc * tc, -sc, -tc});
      rep.ok = rep.residual <= tol;
      break;
    }
  }
  return rep;
}

inline void finish(FeasReport& out) {
  for (const auto& b : out.blocks) {
    out.feasible = out.feasible && b.ok;
    out.max_residual = std::max(out.max_residual, b.residual);
  }
  out.feasible = out.feasible && out.fractional_z.empty();
}

}  // namespace detail

inline FeasReport eval_point(const LinConicSet& s, std::span<const Q2> point) {
  if (point.size() != s.nvars) throw dimension_mismatch("point dimension != nvars");
  FeasReport out;
  out.exact = true;
  for (std::size_t k = 0; k < s.blocks.size(); ++k)
    out.blocks.push_back(detail::eval_block_exact(s, s.blocks[k], k, point));
  detail::finish(out);
  return out;
}

inline FeasReport eval_point(const LinConicSet& s, std::span<const double> point, double tol = 1e-9) {
  if (point.size() != s.nvars) throw dimension_mismatch("point dimension != nvars");
  FeasReport out;
  out.exact = false;
  for (std::size_t k = 0; k < s.blocks.size(); ++k)
    out.blocks.push_back(detail::eval_block_approx(s, s.blocks[k], k, point, tol));
  detail::finish(out);
  return out;
}

/// Formulation evaluation additionally checks integrality of the z variables:
/// exactly for Q[sqrt(2)] points (rational with denominator 1), within tol
/// for double points.
inline FeasReport eval_point(const MicpFormulation& f, std::span<const Q2> point) {
  if (point.size() != f.nvars()) throw dimension_mismatch("point dimension != nx+ny+nz");
  FeasReport out = eval_point(f.body, point);
  for (std::size_t j = f.nx + f.ny; j < f.nvars(); ++j) {
    const Q2& zj = point[j];
    if (!zj.is_rational() || !is_integer(zj.u)) out.fractional_z.push_back(j);
  }
  detail::finish(out);
  return out;
}

inline FeasReport eval_point(const MicpFormulation& f, std::span<const double> point,
                             double tol = 1e-9) {
  if (point.size() != f.nvars()) throw dimension_mismatch("point dimension != nx+ny+nz");
  FeasReport out = eval_point(f.body, point, tol);
  for (std::size_t j = f.nx + f.ny; j < f.nvars(); ++j)
    if (std::abs(point[j] - std::round(point[j])) > tol) out.fractional_z.push_back(j);
  detail::finish(out);
  return out;
}

}  // namespace micprep::conic
