#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "roomkit/core/point_cloud.hpp"
#include "roomkit/io/frames.hpp"
#include "roomkit/util/parallel.hpp"

namespace roomkit {

/// Truncated signed distance volume fused from posed depth frames.
///
/// Each voxel stores the running mean of clamped projective signed
/// distances (d - voxel_camera_depth) / truncation in [-1, 1], the
/// integration weight, and a running mean color. Distances are kept in
/// double precision so the running average is permutation-stable to well
/// below 1e-9.
class TsdfVolume {
 public:
  TsdfVolume(const Vec3& origin, double voxel_size,
             const std::array<int, 3>& dims, double truncation)
      : origin_(origin),
        voxel_size_(voxel_size),
        dims_(dims),
        truncation_(truncation) {
    if (!(voxel_size > 0)) {
      throw InvalidArgument("tsdf: voxel_size must be positive");
    }
    if (truncation < voxel_size) {
      throw InvalidArgument("tsdf: truncation must be >= voxel_size");
    }
    if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
      throw InvalidArgument("tsdf: dims must be positive");
    }
    const size_t n = voxel_count();
    if (n > (size_t(1) << 29)) {
      throw InvalidArgument(
          "tsdf: volume exceeds 2^29 voxels; increase the voxel size");
    }
    tsdf_.assign(n, 0.0);
    weight_.assign(n, 0.0f);
    color_.assign(n, {0.0f, 0.0f, 0.0f});
  }

  /// Volume covering [lo, hi], padded by the truncation band plus one voxel.
  static TsdfVolume from_bounds(const Vec3& lo, const Vec3& hi,
                                double voxel_size, double truncation) {
    const Vec3 pad = Vec3::Constant(truncation + voxel_size);
    const Vec3 origin = lo - pad;
    const Vec3 span = hi + pad - origin;
    std::array<int, 3> dims;
    for (int i = 0; i < 3; ++i) {
      dims[i] = std::max(1, static_cast<int>(std::ceil(span[i] / voxel_size)));
    }
    return TsdfVolume(origin, voxel_size, dims, truncation);
  }

  const Vec3& origin() const { return origin_; }
  double voxel_size() const { return voxel_size_; }
  double truncation() const { return truncation_; }
  const std::array<int, 3>& dims() const { return dims_; }
  size_t voxel_count() const {
    return size_t(dims_[0]) * dims_[1] * dims_[2];
  }

  size_t index(int i, int j, int k) const {
    return (size_t(k) * dims_[1] + j) * dims_[0] + i;
  }
  Vec3 voxel_center(int i, int j, int k) const {
    return origin_ + voxel_size_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  double tsdf_at(int i, int j, int k) const { return tsdf_[index(i, j, k)]; }
  float weight_at(int i, int j, int k) const {
    return weight_[index(i, j, k)];
  }
  Vec3 color_at(int i, int j, int k) const {
    const auto& c = color_[index(i, j, k)];
    return {c[0], c[1], c[2]};
  }

  /// Direct voxel write, for checkpoints and synthetic fixtures.
  void set_voxel(int i, int j, int k, double tsdf, float weight,
                 const Vec3& color = Vec3::Zero()) {
    const size_t at = index(i, j, k);
    tsdf_[at] = tsdf;
    weight_[at] = weight;
    color_[at] = {static_cast<float>(color.x()),
                  static_cast<float>(color.y()),
                  static_cast<float>(color.z())};
  }

  /// Projective integration of one posed depth frame. For every voxel
  /// projecting to a valid depth d: s = d - voxel_camera_depth, clamped to
  /// [-1, 1] after dividing by the truncation. Voxels more than one
  /// truncation band behind the surface (s < -truncation) are left
  /// untouched so occluded space never erodes. Per-update weight is 1.
  void integrate(const DepthFrame& frame) {
    if (!frame.pose.is_valid(1e-6)) {
      throw InvalidArgument("tsdf: frame pose is not a rigid motion");
    }
    const Mat3 r_inv = frame.pose.rotation.transpose();
    const Vec3 t_inv = -(r_inv * frame.pose.translation);
    const auto& k_in = frame.intrinsics;
    const bool colored = frame.has_color();

    parallel_for(static_cast<size_t>(dims_[2]), [&](size_t kz) {
      const int k = static_cast<int>(kz);
      for (int j = 0; j < dims_[1]; ++j) {
        for (int i = 0; i < dims_[0]; ++i) {
          const Vec3 cam = r_inv * voxel_center(i, j, k) + t_inv;
          if (cam.z() <= 0.0) continue;  // behind the camera
          const long u = std::lround(k_in.fx * cam.x() / cam.z() + k_in.cx);
          const long v = std::lround(k_in.fy * cam.y() / cam.z() + k_in.cy);
          if (u < 0 || u >= frame.width || v < 0 || v >= frame.height) {
            continue;
          }
          const double d = frame.depth_at(static_cast<int>(u),
                                          static_cast<int>(v));
          if (d <= 0.0) continue;  // invalid pixel
          const double s = d - cam.z();
          if (s < -truncation_) continue;  // occluded space stays untouched
          const double sample = std::clamp(s / truncation_, -1.0, 1.0);

          const size_t at = index(i, j, k);
          const double w = weight_[at];
          tsdf_[at] = (tsdf_[at] * w + sample) / (w + 1.0);
          if (colored) {
            const Vec3 c = frame.color_at(static_cast<int>(u),
                                          static_cast<int>(v));
            auto& acc = color_[at];
            for (int ch = 0; ch < 3; ++ch) {
              acc[ch] = static_cast<float>((acc[ch] * w + c[ch]) / (w + 1.0));
            }
          }
          weight_[at] = static_cast<float>(w + 1.0);
        }
      }
    });
  }

  /// Emits one point per voxel edge whose endpoint tsdf values have
  /// strictly opposite signs (both weights > 0), placed by linear
  /// interpolation to the zero level with interpolated color. An observed
  /// voxel sitting exactly on the zero level contributes its center, since
  /// no edge around it changes sign.
  PointCloud extract_points() const {
    PointCloud cloud;
    bool any_color = false;
    for (const auto& c : color_) {
      if (c[0] != 0 || c[1] != 0 || c[2] != 0) {
        any_color = true;
        break;
      }
    }

    const int di[3] = {1, 0, 0};
    const int dj[3] = {0, 1, 0};
    const int dk[3] = {0, 0, 1};
    for (int k = 0; k < dims_[2]; ++k) {
      for (int j = 0; j < dims_[1]; ++j) {
        for (int i = 0; i < dims_[0]; ++i) {
          const size_t a = index(i, j, k);
          if (weight_[a] <= 0.0f) continue;
          const double ta = tsdf_[a];
          if (ta == 0.0) {
            cloud.points.push_back(voxel_center(i, j, k));
            if (any_color) {
              cloud.colors.push_back(
                  {color_[a][0], color_[a][1], color_[a][2]});
            }
            continue;
          }
          for (int e = 0; e < 3; ++e) {
            const int ni = i + di[e], nj = j + dj[e], nk = k + dk[e];
            if (ni >= dims_[0] || nj >= dims_[1] || nk >= dims_[2]) continue;
            const size_t b = index(ni, nj, nk);
            if (weight_[b] <= 0.0f) continue;
            const double tb = tsdf_[b];
            if (!((ta < 0.0 && tb > 0.0) || (ta > 0.0 && tb < 0.0))) continue;
            const double t = ta / (ta - tb);
            cloud.points.push_back(
                voxel_center(i, j, k) +
                t * (voxel_center(ni, nj, nk) - voxel_center(i, j, k)));
            if (any_color) {
              const Vec3 ca(color_[a][0], color_[a][1], color_[a][2]);
              const Vec3 cb(color_[b][0], color_[b][1], color_[b][2]);
              cloud.colors.push_back((1.0 - t) * ca + t * cb);
            }
          }
        }
      }
    }
    if (cloud.empty()) {
      throw EmptyVolume("tsdf: no zero crossings to extract");
    }
    return cloud;
  }

  // -- binary checkpoint --------------------------------------------------
  // Layout (little-endian):
  //   char[8] "RKTSDF1\0", u32 version, i32 dims[3],
  //   f64 origin[3], f64 voxel_size, f64 truncation,
  //   f64 tsdf[n], f32 weight[n], f32 color[3n]

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write volume: " + path.string());
    out.write("RKTSDF1\0", 8);
    const uint32_t version = 1;
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(dims_.data()), 12);
    const double head[5] = {origin_.x(), origin_.y(), origin_.z(),
                            voxel_size_, truncation_};
    out.write(reinterpret_cast<const char*>(head), sizeof(head));
    out.write(reinterpret_cast<const char*>(tsdf_.data()),
              static_cast<std::streamsize>(tsdf_.size() * 8));
    out.write(reinterpret_cast<const char*>(weight_.data()),
              static_cast<std::streamsize>(weight_.size() * 4));
    out.write(reinterpret_cast<const char*>(color_.data()),
              static_cast<std::streamsize>(color_.size() * 12));
    if (!out) throw IoError("short write: " + path.string());
  }

  static TsdfVolume load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open volume: " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "RKTSDF1\0", 8) != 0) {
      throw ParseError("tsdf: bad magic in " + path.string());
    }
    uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    if (version != 1) {
      throw ParseError("tsdf: unsupported version in " + path.string());
    }
    std::array<int, 3> dims;
    in.read(reinterpret_cast<char*>(dims.data()), 12);
    double head[5];
    in.read(reinterpret_cast<char*>(head), sizeof(head));
    if (!in) throw ParseError("tsdf: truncated header in " + path.string());
    TsdfVolume vol({head[0], head[1], head[2]}, head[3], dims, head[4]);
    in.read(reinterpret_cast<char*>(vol.tsdf_.data()),
            static_cast<std::streamsize>(vol.tsdf_.size() * 8));
    in.read(reinterpret_cast<char*>(vol.weight_.data()),
            static_cast<std::streamsize>(vol.weight_.size() * 4));
    in.read(reinterpret_cast<char*>(vol.color_.data()),
            static_cast<std::streamsize>(vol.color_.size() * 12));
    if (!in) throw ParseError("tsdf: truncated data in " + path.string());
    return vol;
  }

 private:
  Vec3 origin_;
  double voxel_size_;
  std::array<int, 3> dims_;
  double truncation_;
  std::vector<double> tsdf_;
  std::vector<float> weight_;
  std::vector<std::array<float, 3>> color_;
};

/// Axis-aligned bounds of all valid back-projected depth samples across the
/// frames (strided for speed). Used to auto-size a fusion volume.
inline std::pair<Vec3, Vec3> frames_bounds(
    const std::vector<DepthFrame>& frames, int stride = 4) {
  bool any = false;
  Vec3 lo = Vec3::Zero(), hi = Vec3::Zero();
  for (const auto& frame : frames) {
    for (int v = 0; v < frame.height; v += stride) {
      for (int u = 0; u < frame.width; u += stride) {
        const double d = frame.depth_at(u, v);
        if (d <= 0.0) continue;
        const Vec3 p = backproject(frame, u, v, d);
        if (!any) {
          lo = hi = p;
          any = true;
        } else {
          lo = lo.cwiseMin(p);
          hi = hi.cwiseMax(p);
        }
      }
    }
  }
  if (!any) throw EmptyVolume("frames_bounds: no valid depth samples");
  return {lo, hi};
}

inline TsdfVolume fuse_frames(const std::vector<DepthFrame>& frames,
                              double voxel_size = 0.02,
                              double truncation = 0.10) {
  if (frames.empty()) throw InvalidArgument("fuse_frames: no frames");
  const auto [lo, hi] = frames_bounds(frames);
  TsdfVolume volume = TsdfVolume::from_bounds(lo, hi, voxel_size, truncation);
  for (const auto& frame : frames) volume.integrate(frame);
  return volume;
}

}  // namespace roomkit
