#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

/// Per-pixel 3-vectors (unit normals, zero when invalid) with a validity
/// mask. Row-major, indexed (row, col).
struct NormalMap {
  int height = 0, width = 0;
  std::vector<Vec3> data;
  std::vector<uint8_t> valid;

  static NormalMap filled(int h, int w, const Vec3& n) {
    NormalMap m;
    m.height = h;
    m.width = w;
    m.data.assign(size_t(h) * w, n);
    m.valid.assign(size_t(h) * w, 1);
    return m;
  }

  size_t idx(int row, int col) const { return size_t(row) * width + col; }
  Vec3& at(int row, int col) { return data[idx(row, col)]; }
  const Vec3& at(int row, int col) const { return data[idx(row, col)]; }
  bool valid_at(int row, int col) const { return valid[idx(row, col)] != 0; }
  void invalidate(int row, int col) {
    valid[idx(row, col)] = 0;
    data[idx(row, col)] = Vec3::Zero();
  }
};

/// Per-pixel metric depths with a validity mask.
struct DepthMap {
  int height = 0, width = 0;
  std::vector<double> data;
  std::vector<uint8_t> valid;

  static DepthMap filled(int h, int w, double d) {
    DepthMap m;
    m.height = h;
    m.width = w;
    m.data.assign(size_t(h) * w, d);
    m.valid.assign(size_t(h) * w, 1);
    return m;
  }

  size_t idx(int row, int col) const { return size_t(row) * width + col; }
  double& at(int row, int col) { return data[idx(row, col)]; }
  double at(int row, int col) const { return data[idx(row, col)]; }
  bool valid_at(int row, int col) const { return valid[idx(row, col)] != 0; }
  void invalidate(int row, int col) {
    valid[idx(row, col)] = 0;
    data[idx(row, col)] = 0.0;
  }
};

struct LossWeights {
  double lambda_n = 1.0;
  double lambda_d = 1.5;
};

/// First-order image-space derivative of a normal map: one 3-vector per
/// pixel and direction (du along columns, dv along rows).
struct DerivativeField {
  int height = 0, width = 0;
  std::vector<Vec3> du, dv;
  std::vector<uint8_t> du_valid, dv_valid;

  size_t idx(int row, int col) const { return size_t(row) * width + col; }
};

/// Forward differences with respect to the pixel coordinates; the last
/// column (for du) and last row (for dv) fall back to backward differences.
/// A derivative entry is valid only when both pixels it touches are valid.
inline DerivativeField normal_derivative(const NormalMap& map) {
  if (map.height < 2 || map.width < 2) {
    throw TooSmall("normal_derivative: need at least 2x2 pixels, got " +
                   std::to_string(map.height) + "x" +
                   std::to_string(map.width));
  }
  DerivativeField f;
  f.height = map.height;
  f.width = map.width;
  const size_t n = size_t(map.height) * map.width;
  f.du.assign(n, Vec3::Zero());
  f.dv.assign(n, Vec3::Zero());
  f.du_valid.assign(n, 0);
  f.dv_valid.assign(n, 0);

  for (int r = 0; r < map.height; ++r) {
    for (int c = 0; c < map.width; ++c) {
      const int c0 = (c + 1 < map.width) ? c : c - 1;  // backward at the edge
      if (map.valid_at(r, c0) && map.valid_at(r, c0 + 1)) {
        f.du[f.idx(r, c)] = map.at(r, c0 + 1) - map.at(r, c0);
        f.du_valid[f.idx(r, c)] = 1;
      }
      const int r0 = (r + 1 < map.height) ? r : r - 1;
      if (map.valid_at(r0, c) && map.valid_at(r0 + 1, c)) {
        f.dv[f.idx(r, c)] = map.at(r0 + 1, c) - map.at(r0, c);
        f.dv_valid[f.idx(r, c)] = 1;
      }
    }
  }
  return f;
}

namespace detail {

inline void check_same_size(int h1, int w1, int h2, int w2,
                            const char* what) {
  if (h1 != h2 || w1 != w2) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(h1) +
                            "x" + std::to_string(w1) + " vs " +
                            std::to_string(h2) + "x" + std::to_string(w2));
  }
}

}  // namespace detail

/// Normal-derivative agreement loss. The mean L1 distance between the two
/// derivative fields is taken over pixels where all four derivative entries
/// are valid, with the six components (3 for du, 3 for dv) summed per
/// pixel. `as_written` returns 1 - mean (the published form); the default
/// returns the mean itself, which is the usable minimization objective.
inline double normal_loss(const NormalMap& estimated,
                          const NormalMap& rendered,
                          bool as_written = false) {
  detail::check_same_size(estimated.height, estimated.width, rendered.height,
                          rendered.width, "normal_loss");
  const DerivativeField fe = normal_derivative(estimated);
  const DerivativeField fr = normal_derivative(rendered);

  double acc = 0.0;
  size_t count = 0;
  const size_t n = fe.du.size();
  for (size_t i = 0; i < n; ++i) {
    if (!(fe.du_valid[i] && fe.dv_valid[i] && fr.du_valid[i] &&
          fr.dv_valid[i])) {
      continue;
    }
    acc += (fe.du[i] - fr.du[i]).cwiseAbs().sum() +
           (fe.dv[i] - fr.dv[i]).cwiseAbs().sum();
    ++count;
  }
  if (count == 0) {
    throw NoValidPixels("normal_loss: no jointly valid derivative entries");
  }
  const double mean = acc / static_cast<double>(count);
  return as_written ? 1.0 - mean : mean;
}

/// Mean absolute depth error over jointly valid pixels.
inline double depth_loss(const DepthMap& rendered, const DepthMap& captured) {
  detail::check_same_size(rendered.height, rendered.width, captured.height,
                          captured.width, "depth_loss");
  double acc = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < rendered.data.size(); ++i) {
    if (!(rendered.valid[i] && captured.valid[i])) continue;
    acc += std::abs(rendered.data[i] - captured.data[i]);
    ++count;
  }
  if (count == 0) throw NoValidPixels("depth_loss: no jointly valid pixels");
  return acc / static_cast<double>(count);
}

/// Analytic gradient of depth_loss with respect to each rendered pixel:
/// sign(D_r - D_gt) / N_valid on jointly valid pixels, 0 elsewhere.
inline DepthMap depth_loss_gradient(const DepthMap& rendered,
                                    const DepthMap& captured) {
  detail::check_same_size(rendered.height, rendered.width, captured.height,
                          captured.width, "depth_loss_gradient");
  size_t count = 0;
  for (size_t i = 0; i < rendered.data.size(); ++i) {
    if (rendered.valid[i] && captured.valid[i]) ++count;
  }
  if (count == 0) {
    throw NoValidPixels("depth_loss_gradient: no jointly valid pixels");
  }
  DepthMap grad = DepthMap::filled(rendered.height, rendered.width, 0.0);
  for (size_t i = 0; i < rendered.data.size(); ++i) {
    if (!(rendered.valid[i] && captured.valid[i])) {
      grad.valid[i] = 0;
      continue;
    }
    const double diff = rendered.data[i] - captured.data[i];
    grad.data[i] = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
    grad.data[i] /= static_cast<double>(count);
  }
  return grad;
}

/// Total objective: base + lambda_n * n_loss + lambda_d * d_loss. The base
/// term is an opaque scalar supplied by the caller.
inline double combined_loss(double base, double n_loss, double d_loss,
                            const LossWeights& w = {}) {
  if (!std::isfinite(base) || !std::isfinite(n_loss) ||
      !std::isfinite(d_loss) || !std::isfinite(w.lambda_n) ||
      !std::isfinite(w.lambda_d)) {
    throw NonFinite("combined_loss: non-finite input");
  }
  return base + w.lambda_n * n_loss + w.lambda_d * d_loss;
}

}  // namespace roomkit
