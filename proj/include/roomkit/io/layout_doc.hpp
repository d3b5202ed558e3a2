#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

using OrderedJson = nlohmann::ordered_json;

/// Floor frame, contour and derived room quantities as serialized in a
/// layout document.
struct EnvelopeSummary {
  Vec3 origin = Vec3::Zero();
  Vec3 f1 = Vec3::UnitX();
  Vec3 f2 = Vec3::UnitY();
  Vec3 fn = Vec3::UnitZ();
  std::vector<Vec2> contour;  // CCW, (f1,f2) coordinates relative to origin
  double area = 0.0;
  Vec2 dims = Vec2::Zero();
  double height = 0.0;
  double volume = 0.0;
};

struct PlacementRecord {
  int instance_id = 0;
  std::string model_id;
  std::string category;
  Vec3 scale = Vec3::Ones();  // along (in-plane major, in-plane minor, up)
  double rotation_deg = 0.0;  // about fn, in [0, 360)
  Vec3 translation = Vec3::Zero();
  double score = 0.0;  // chamfer Dist, m^2
};

struct PassThroughRecord {
  int instance_id = 0;
  std::string category;
  friend bool operator==(const PassThroughRecord&,
                         const PassThroughRecord&) = default;
};

struct InputRecord {
  std::string path;
  std::string fnv1a64;
  friend bool operator==(const InputRecord&, const InputRecord&) = default;
};

namespace detail {

inline bool exact_eq(const Vec3& a, const Vec3& b) {
  return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

inline bool exact_eq(const Vec2& a, const Vec2& b) {
  return a.x() == b.x() && a.y() == b.y();
}

}  // namespace detail

inline bool operator==(const PlacementRecord& a, const PlacementRecord& b) {
  return a.instance_id == b.instance_id && a.model_id == b.model_id &&
         a.category == b.category && detail::exact_eq(a.scale, b.scale) &&
         a.rotation_deg == b.rotation_deg &&
         detail::exact_eq(a.translation, b.translation) && a.score == b.score;
}

/// Final layout artifact: envelope summary, model placements, pass-through
/// instances (hybrid mode) and provenance. Serialization round-trips
/// losslessly.
struct LayoutDocument {
  std::string mode = "virtual";  // "virtual" | "hybrid"
  std::string tool_version;
  uint64_t seed = 0;
  std::vector<InputRecord> inputs;
  EnvelopeSummary envelope;
  std::vector<PlacementRecord> placements;
  std::vector<PassThroughRecord> pass_through;
};

inline bool operator==(const EnvelopeSummary& a, const EnvelopeSummary& b) {
  if (a.contour.size() != b.contour.size()) return false;
  for (size_t i = 0; i < a.contour.size(); ++i) {
    if (!detail::exact_eq(a.contour[i], b.contour[i])) return false;
  }
  return detail::exact_eq(a.origin, b.origin) && detail::exact_eq(a.f1, b.f1) &&
         detail::exact_eq(a.f2, b.f2) && detail::exact_eq(a.fn, b.fn) &&
         a.area == b.area && detail::exact_eq(a.dims, b.dims) &&
         a.height == b.height && a.volume == b.volume;
}

inline bool operator==(const LayoutDocument& a, const LayoutDocument& b) {
  return a.mode == b.mode && a.tool_version == b.tool_version &&
         a.seed == b.seed && a.inputs == b.inputs &&
         a.envelope == b.envelope && a.placements == b.placements &&
         a.pass_through == b.pass_through;
}

namespace detail {

inline OrderedJson vec3_json(const Vec3& v) {
  return OrderedJson::array({v.x(), v.y(), v.z()});
}

inline OrderedJson vec2_json(const Vec2& v) {
  return OrderedJson::array({v.x(), v.y()});
}

inline Vec3 vec3_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("layout: expected 3-vector for " + what);
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline Vec2 vec2_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("layout: expected 2-vector for " + what);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline void validate_layout(const LayoutDocument& doc, const char* verb) {
  if (doc.mode != "virtual" && doc.mode != "hybrid") {
    throw InvalidArgument(std::string("layout ") + verb + ": bad mode '" +
                          doc.mode + "'");
  }
  for (const auto& p : doc.placements) {
    if (!(p.rotation_deg >= 0.0 && p.rotation_deg < 360.0)) {
      throw InvalidArgument(std::string("layout ") + verb +
                            ": rotation_deg must lie in [0, 360), got " +
                            std::to_string(p.rotation_deg));
    }
    if (!(p.scale.minCoeff() > 0.0)) {
      throw InvalidArgument(std::string("layout ") + verb +
                            ": scale components must be positive");
    }
  }
}

}  // namespace detail

inline OrderedJson layout_to_json(const LayoutDocument& doc) {
  detail::validate_layout(doc, "write");
  OrderedJson j;
  j["format"] = "roomkit-layout/1";
  j["provenance"] = {{"tool_version", doc.tool_version},
                     {"seed", doc.seed},
                     {"inputs", OrderedJson::array()}};
  for (const auto& rec : doc.inputs) {
    j["provenance"]["inputs"].push_back(
        {{"path", rec.path}, {"fnv1a64", rec.fnv1a64}});
  }
  const auto& e = doc.envelope;
  OrderedJson contour = OrderedJson::array();
  for (const Vec2& v : e.contour) contour.push_back(detail::vec2_json(v));
  j["envelope"] = {{"origin", detail::vec3_json(e.origin)},
                   {"f1", detail::vec3_json(e.f1)},
                   {"f2", detail::vec3_json(e.f2)},
                   {"fn", detail::vec3_json(e.fn)},
                   {"contour", contour},
                   {"area", e.area},
                   {"dims", detail::vec2_json(e.dims)},
                   {"height", e.height},
                   {"volume", e.volume}};
  j["mode"] = doc.mode;
  j["placements"] = OrderedJson::array();
  for (const auto& p : doc.placements) {
    j["placements"].push_back({{"instance", p.instance_id},
                               {"model", p.model_id},
                               {"category", p.category},
                               {"scale", detail::vec3_json(p.scale)},
                               {"rotation_deg", p.rotation_deg},
                               {"translation", detail::vec3_json(p.translation)},
                               {"score", p.score}});
  }
  j["pass_through"] = OrderedJson::array();
  for (const auto& p : doc.pass_through) {
    j["pass_through"].push_back(
        {{"instance", p.instance_id}, {"category", p.category}});
  }
  return j;
}

inline LayoutDocument layout_from_json(const OrderedJson& j) {
  try {
    if (j.at("format").get<std::string>() != "roomkit-layout/1") {
      throw ParseError("layout: unsupported format tag");
    }
    LayoutDocument doc;
    doc.mode = j.at("mode").get<std::string>();
    const auto& prov = j.at("provenance");
    doc.tool_version = prov.at("tool_version").get<std::string>();
    doc.seed = prov.at("seed").get<uint64_t>();
    for (const auto& rec : prov.at("inputs")) {
      doc.inputs.push_back({rec.at("path").get<std::string>(),
                            rec.at("fnv1a64").get<std::string>()});
    }
    const auto& e = j.at("envelope");
    doc.envelope.origin = detail::vec3_from(e.at("origin"), "origin");
    doc.envelope.f1 = detail::vec3_from(e.at("f1"), "f1");
    doc.envelope.f2 = detail::vec3_from(e.at("f2"), "f2");
    doc.envelope.fn = detail::vec3_from(e.at("fn"), "fn");
    for (const auto& v : e.at("contour")) {
      doc.envelope.contour.push_back(detail::vec2_from(v, "contour vertex"));
    }
    doc.envelope.area = e.at("area").get<double>();
    doc.envelope.dims = detail::vec2_from(e.at("dims"), "dims");
    doc.envelope.height = e.at("height").get<double>();
    doc.envelope.volume = e.at("volume").get<double>();
    for (const auto& p : j.at("placements")) {
      PlacementRecord rec;
      rec.instance_id = p.at("instance").get<int>();
      rec.model_id = p.at("model").get<std::string>();
      rec.category = p.at("category").get<std::string>();
      rec.scale = detail::vec3_from(p.at("scale"), "scale");
      rec.rotation_deg = p.at("rotation_deg").get<double>();
      rec.translation = detail::vec3_from(p.at("translation"), "translation");
      rec.score = p.at("score").get<double>();
      doc.placements.push_back(std::move(rec));
    }
    for (const auto& p : j.at("pass_through")) {
      doc.pass_through.push_back({p.at("instance").get<int>(),
                                  p.at("category").get<std::string>()});
    }
    detail::validate_layout(doc, "read");
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("layout: malformed document: ") + e.what());
  }
}

inline void write_layout(const LayoutDocument& doc,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write layout: " + path.string());
  out << layout_to_json(doc).dump(2) << "\n";
  if (!out) throw IoError("short write: " + path.string());
}

inline LayoutDocument read_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open layout: " + path.string());
  OrderedJson j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("layout: invalid JSON in " + path.string() + ": " +
                     e.what());
  }
  return layout_from_json(j);
}

}  // namespace roomkit
