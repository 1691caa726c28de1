#include "headcount/ingest.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "headcount/errors.hpp"

namespace headcount {

using nlohmann::json;

bool BoundingBox::valid() const {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  return in_unit(x_min) && in_unit(y_min) && in_unit(x_max) && in_unit(y_max) &&
         x_min < x_max && y_min < y_max;
}

BoundingBox box_around(double cx, double cy, double width, double height) {
  BoundingBox box{cx - width / 2, cy - height / 2, cx + width / 2, cy + height / 2};
  if (!box.valid()) throw InvalidInput("box around (" + std::to_string(cx) + ", " +
                                       std::to_string(cy) + ") leaves the frame");
  return box;
}

std::string_view to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::Head: return "head";
    case ObjectClass::Chair: return "chair";
    case ObjectClass::Trolley: return "trolley";
    case ObjectClass::Bag: return "bag";
  }
  return "?";
}

std::optional<ObjectClass> parse_object_class(std::string_view s) {
  if (s == "head") return ObjectClass::Head;
  if (s == "chair") return ObjectClass::Chair;
  if (s == "trolley") return ObjectClass::Trolley;
  if (s == "bag") return ObjectClass::Bag;
  return std::nullopt;
}

std::vector<DetectionRecord> filter_heads(const FrameRecord& frame, double min_confidence) {
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0))
    throw InvalidInput("min_confidence must lie in [0, 1]");
  std::vector<DetectionRecord> heads;
  for (const auto& d : frame.detections) {
    if (d.class_label == ObjectClass::Head && d.confidence >= min_confidence) heads.push_back(d);
  }
  return heads;
}

std::string serialize_frame(const FrameRecord& frame) {
  json dets = json::array();
  for (const auto& d : frame.detections) {
    json jd;
    jd["class"] = to_string(d.class_label);
    jd["conf"] = d.confidence;
    jd["box"] = {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max};
    jd["emb"] = d.embedding;
    dets.push_back(std::move(jd));
  }
  json j;
  j["frame_id"] = frame.frame_id;
  j["ts_ms"] = frame.timestamp_ms;
  if (frame.lighting) j["lighting"] = to_string(*frame.lighting);
  j["detections"] = std::move(dets);
  return j.dump();
}

namespace {

double number_at(const json& j, const char* what, std::size_t line_no) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number", line_no);
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite", line_no);
  return v;
}

std::int64_t integer_at(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", line_no);
  if (!it->is_number_integer())
    throw ParseError(std::string("field '") + key + "' must be an integer", line_no);
  return it->get<std::int64_t>();
}

DetectionRecord parse_detection(const json& jd, std::size_t line_no) {
  if (!jd.is_object()) throw ParseError("detection must be an object", line_no);
  DetectionRecord d;

  auto cls = jd.find("class");
  if (cls == jd.end() || !cls->is_string()) throw ParseError("detection needs a string 'class'", line_no);
  auto label = parse_object_class(cls->get<std::string>());
  if (!label) throw ParseError("unknown class '" + cls->get<std::string>() + "'", line_no);
  d.class_label = *label;

  auto conf = jd.find("conf");
  if (conf == jd.end()) throw ParseError("detection needs 'conf'", line_no);
  d.confidence = number_at(*conf, "conf", line_no);
  if (d.confidence < 0.0 || d.confidence > 1.0) throw ParseError("conf outside [0, 1]", line_no);

  auto box = jd.find("box");
  if (box == jd.end() || !box->is_array() || box->size() != 4)
    throw ParseError("'box' must be [x_min, y_min, x_max, y_max]", line_no);
  d.box = {number_at((*box)[0], "box", line_no), number_at((*box)[1], "box", line_no),
           number_at((*box)[2], "box", line_no), number_at((*box)[3], "box", line_no)};
  if (!d.box.valid()) throw ParseError("box must be ordered and inside [0, 1]", line_no);

  auto emb = jd.find("emb");
  if (emb != jd.end() && !emb->is_null()) {
    if (!emb->is_array()) throw ParseError("'emb' must be an array", line_no);
    d.embedding.reserve(emb->size());
    for (const auto& v : *emb) d.embedding.push_back(number_at(v, "emb component", line_no));
  }
  if (d.class_label == ObjectClass::Head && d.embedding.empty())
    throw ParseError("head detection without embedding", line_no);
  return d;
}

}  // namespace

FrameRecord parse_frame_line(std::string_view line, std::size_t line_no) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON", line_no);
  if (!j.is_object()) throw ParseError("record must be a JSON object", line_no);

  FrameRecord frame;
  frame.frame_id = integer_at(j, "frame_id", line_no);
  frame.timestamp_ms = integer_at(j, "ts_ms", line_no);

  if (auto it = j.find("lighting"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("'lighting' must be \"day\" or \"night\"", line_no);
    auto mode = parse_lighting_mode(it->get<std::string>());
    if (!mode) throw ParseError("'lighting' must be \"day\" or \"night\"", line_no);
    frame.lighting = *mode;
  }

  auto dets = j.find("detections");
  if (dets == j.end() || !dets->is_array()) throw ParseError("'detections' must be an array", line_no);
  frame.detections.reserve(dets->size());
  for (const auto& jd : *dets) frame.detections.push_back(parse_detection(jd, line_no));
  return frame;
}

StreamParser::StreamParser(std::istream& in, std::optional<std::size_t> embedding_dim)
    : in_(in), dim_(embedding_dim) {}

std::optional<FrameRecord> StreamParser::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;

    FrameRecord frame = parse_frame_line(text, line_);
    if (last_frame_id_ && frame.frame_id <= *last_frame_id_)
      throw StreamOrderError("frame_id " + std::to_string(frame.frame_id) +
                                 " does not follow " + std::to_string(*last_frame_id_),
                             line_, frame.frame_id);
    if (last_frame_id_ && frame.timestamp_ms < last_ts_)
      throw StreamOrderError("ts_ms went backwards", line_, frame.frame_id);

    for (const auto& d : frame.detections) {
      if (d.embedding.empty()) continue;
      if (!dim_) dim_ = d.embedding.size();
      if (d.embedding.size() != *dim_)
        throw StreamDimensionError("embedding has " + std::to_string(d.embedding.size()) +
                                       " components, expected " + std::to_string(*dim_),
                                   line_, frame.frame_id);
    }
    last_frame_id_ = frame.frame_id;
    last_ts_ = frame.timestamp_ms;
    return frame;
  }
  return std::nullopt;
}

std::vector<FrameRecord> parse_stream(std::istream& in, std::optional<std::size_t> embedding_dim) {
  StreamParser parser(in, embedding_dim);
  std::vector<FrameRecord> frames;
  while (auto f = parser.next()) frames.push_back(std::move(*f));
  return frames;
}

}  // namespace headcount
