#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"
#include "roomkit/io/png_io.hpp"

namespace roomkit {

struct CameraIntrinsics {
  double fx = 0, fy = 0, cx = 0, cy = 0;
};

/// One posed RGB-D frame. Depth is metric (meters) with 0 marking invalid
/// pixels; the pose maps camera coordinates (+z forward) to world.
struct DepthFrame {
  int width = 0, height = 0;
  std::vector<double> depth;
  std::vector<Vec3> color;  // empty, or per-pixel rgb in [0,1]
  CameraIntrinsics intrinsics;
  RigidTransform pose;

  bool has_color() const { return !color.empty(); }
  double depth_at(int u, int v) const {
    return depth[size_t(v) * width + u];
  }
  const Vec3& color_at(int u, int v) const {
    return color[size_t(v) * width + u];
  }
};

/// Pinhole back-projection of pixel (u, v) at depth d into world space:
///   world = pose * ((u-cx)*d/fx, (v-cy)*d/fy, d)
inline Vec3 backproject(const DepthFrame& frame, double u, double v,
                        double d) {
  const auto& k = frame.intrinsics;
  return frame.pose.apply(
      {(u - k.cx) * d / k.fx, (v - k.cy) * d / k.fy, d});
}

/// Reads a frame manifest. Line-oriented text format, paths relative to the
/// manifest location:
///
///   # comment
///   depth_scale <divisor>                       (default 5000)
///   intrinsics <fx> <fy> <cx> <cy>              (applies to later frames)
///   frame <depth.png> <color.png|-> q <qw> <qx> <qy> <qz> <tx> <ty> <tz>
///   frame <depth.png> <color.png|-> mat <16 row-major values>
///
/// Depth PNGs are 16-bit grayscale; raw value 0 stays invalid (depth 0).
inline std::vector<DepthFrame> read_frame_manifest(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open frame manifest: " + path.string());
  const std::filesystem::path base = path.parent_path();

  std::vector<DepthFrame> frames;
  double depth_scale = 5000.0;
  CameraIntrinsics intr;
  bool have_intrinsics = false;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag.empty() || tag[0] == '#') continue;

    const std::string where =
        " at line " + std::to_string(line_no) + " in " + path.string();
    if (tag == "depth_scale") {
      ls >> depth_scale;
      if (ls.fail() || !(depth_scale > 0)) {
        throw ParseError("manifest: bad depth_scale" + where);
      }
    } else if (tag == "intrinsics") {
      ls >> intr.fx >> intr.fy >> intr.cx >> intr.cy;
      if (ls.fail() || !(intr.fx > 0) || !(intr.fy > 0)) {
        throw ParseError("manifest: bad intrinsics" + where);
      }
      have_intrinsics = true;
    } else if (tag == "frame") {
      if (!have_intrinsics) {
        throw ParseError("manifest: frame before intrinsics" + where);
      }
      std::string depth_rel, color_rel, pose_kind;
      ls >> depth_rel >> color_rel >> pose_kind;
      if (ls.fail()) throw ParseError("manifest: malformed frame" + where);

      RigidTransform pose;
      if (pose_kind == "q") {
        double qw, qx, qy, qz, tx, ty, tz;
        ls >> qw >> qx >> qy >> qz >> tx >> ty >> tz;
        if (ls.fail()) throw ParseError("manifest: malformed pose" + where);
        double deviation = 0.0;
        pose.rotation = rotation_from_quaternion(qw, qx, qy, qz, &deviation);
        if (deviation > 1e-3) {
          warn("manifest: quaternion off unit norm by " +
               std::to_string(deviation) + where + "; normalized");
        }
        pose.translation = {tx, ty, tz};
      } else if (pose_kind == "mat") {
        double m[16];
        for (double& v : m) ls >> v;
        if (ls.fail()) throw ParseError("manifest: malformed pose" + where);
        if (m[12] != 0 || m[13] != 0 || m[14] != 0 || m[15] != 1) {
          throw ParseError("manifest: pose matrix last row must be 0 0 0 1" +
                           where);
        }
        pose.rotation << m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10];
        pose.translation = {m[3], m[7], m[11]};
        if (!pose.is_valid(1e-3)) {
          throw ParseError("manifest: pose matrix is not a rigid motion" +
                           where);
        }
      } else {
        throw ParseError("manifest: unknown pose kind '" + pose_kind + "'" +
                         where);
      }

      const std::filesystem::path depth_path = base / depth_rel;
      if (!std::filesystem::exists(depth_path)) {
        throw MissingFile("manifest: depth image not found: " +
                          depth_path.string());
      }
      const ImageGray16 raw = read_png_gray16(depth_path);

      DepthFrame frame;
      frame.width = raw.width;
      frame.height = raw.height;
      frame.intrinsics = intr;
      frame.pose = pose;
      frame.depth.resize(raw.pixels.size());
      for (size_t i = 0; i < raw.pixels.size(); ++i) {
        frame.depth[i] = raw.pixels[i] / depth_scale;  // raw 0 -> invalid 0
      }
      if (color_rel != "-") {
        const std::filesystem::path color_path = base / color_rel;
        if (!std::filesystem::exists(color_path)) {
          throw MissingFile("manifest: color image not found: " +
                            color_path.string());
        }
        const ImageRgb8 rgb = read_png_rgb8(color_path);
        if (rgb.width != raw.width || rgb.height != raw.height) {
          throw ParseError("manifest: color/depth size mismatch" + where);
        }
        frame.color.resize(rgb.pixels.size());
        for (size_t i = 0; i < rgb.pixels.size(); ++i) {
          frame.color[i] = {rgb.pixels[i][0] / 255.0, rgb.pixels[i][1] / 255.0,
                            rgb.pixels[i][2] / 255.0};
        }
      }
      frames.push_back(std::move(frame));
    } else {
      throw ParseError("manifest: unknown directive '" + tag + "' at line " +
                       std::to_string(line_no) + " in " + path.string());
    }
  }
  return frames;
}

}  // namespace roomkit
