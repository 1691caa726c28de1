#include "headcount/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include <json.hpp>

#include "headcount/errors.hpp"

namespace headcount::sim {

std::string_view to_string(Intent i) {
  switch (i) {
    case Intent::Enter: return "enter";
    case Intent::Exit: return "exit";
    case Intent::Loiter: return "loiter";
    case Intent::Oscillate: return "oscillate";
  }
  return "?";
}

void validate(const ScenarioSpec& spec) {
  auto fail = [&](const std::string& why) {
    throw InvalidInput("scenario '" + spec.name + "': " + why);
  };
  if (spec.duration_frames <= 0) fail("duration_frames must be positive");
  if (!(spec.fps > 0.0)) fail("fps must be positive");
  if (!spec.layout.valid()) fail("region layout is invalid");
  if (!(spec.noise.miss_probability >= 0.0 && spec.noise.miss_probability < 1.0))
    fail("miss_probability must lie in [0, 1)");
  if (!(spec.noise.embedding_noise_sigma >= 0.0)) fail("embedding_noise_sigma must be >= 0");
  if (!(spec.noise.center_jitter_sigma >= 0.0)) fail("center_jitter_sigma must be >= 0");

  std::optional<std::size_t> dim;
  for (const auto& a : spec.actors) {
    const std::string who = "actor " + std::to_string(a.actor_id);
    if (a.path.empty()) fail(who + " has no waypoints");
    for (std::size_t k = 0; k < a.path.size(); ++k) {
      const auto& w = a.path[k];
      if (k > 0 && w.frame <= a.path[k - 1].frame) fail(who + " waypoint frames must increase");
      if (!(w.x >= 0.0 && w.x <= 1.0 && w.y >= 0.0 && w.y <= 1.0))
        fail(who + " path leaves the unit square");
    }
    if (a.base_embedding.empty()) fail(who + " has no embedding");
    if (dim && *dim != a.base_embedding.size()) fail(who + " embedding length differs");
    dim = a.base_embedding.size();
    for (const auto& d : a.dropouts)
      if (d.last < d.first) fail(who + " dropout range is reversed");
  }
  for (const auto& d : spec.distractions) {
    if (d.class_label == ObjectClass::Head) fail("distractions cannot be heads");
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) fail("distraction confidence outside [0, 1]");
    if (!box_around(d.x, d.y, d.size, d.size).valid()) fail("distraction box leaves the frame");
  }
}

std::optional<std::pair<double, double>> position_at(const ActorSpec& actor, std::int64_t frame) {
  if (actor.path.empty() || frame < actor.path.front().frame || frame > actor.path.back().frame)
    return std::nullopt;
  auto hi = std::lower_bound(actor.path.begin(), actor.path.end(), frame,
                             [](const Waypoint& w, std::int64_t f) { return w.frame < f; });
  if (hi->frame == frame) return std::pair{hi->x, hi->y};
  auto lo = std::prev(hi);
  double t = static_cast<double>(frame - lo->frame) / static_cast<double>(hi->frame - lo->frame);
  return std::pair{lo->x + t * (hi->x - lo->x), lo->y + t * (hi->y - lo->y)};
}

namespace {

bool dropped(const ActorSpec& actor, std::int64_t frame) {
  return std::any_of(actor.dropouts.begin(), actor.dropouts.end(),
                     [frame](const Dropout& d) { return frame >= d.first && frame <= d.last; });
}

std::int64_t timestamp_for(std::int64_t frame, double fps) {
  return static_cast<std::int64_t>(std::llround(static_cast<double>(frame) * 1000.0 / fps));
}

}  // namespace

GroundTruth ground_truth(const ScenarioSpec& spec) {
  GroundTruth truth;
  for (const auto& actor : spec.actors) {
    if (actor.path.empty()) continue;
    // Last anchor region (A or C) visited since the previous crossing.
    std::optional<Region> anchor;
    for (std::int64_t f = actor.path.front().frame; f <= actor.path.back().frame; ++f) {
      Region r = classify_region(position_at(actor, f)->second, spec.layout);
      if (r == Region::B) continue;
      if (anchor && *anchor != r) {
        truth.events.push_back(
            {r == Region::C ? CrossingKind::Entry : CrossingKind::Exit, actor.actor_id, f});
      }
      anchor = r;
    }
  }
  std::stable_sort(truth.events.begin(), truth.events.end(),
                   [](const TruthEvent& a, const TruthEvent& b) {
                     return std::tie(a.frame_id, a.actor_id) < std::tie(b.frame_id, b.actor_id);
                   });
  for (const auto& e : truth.events) (e.kind == CrossingKind::Entry ? truth.final_ins : truth.final_outs)++;
  return truth;
}

Generated generate(const ScenarioSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double half = kHeadBoxSize / 2;

  Generated out;
  out.frames.reserve(static_cast<std::size_t>(spec.duration_frames));
  for (std::int64_t f = 0; f < spec.duration_frames; ++f) {
    FrameRecord frame;
    frame.frame_id = f;
    frame.timestamp_ms = timestamp_for(f, spec.fps);

    for (const auto& actor : spec.actors) {
      auto pos = position_at(actor, f);
      if (!pos) continue;
      // Draw every random quantity up front so a dropout or miss does not
      // shift the noise seen by later frames.
      const double miss_roll = unit(rng);
      const double conf_roll = unit(rng);
      const double jx = normal(rng) * spec.noise.center_jitter_sigma;
      const double jy = normal(rng) * spec.noise.center_jitter_sigma;
      Embedding emb = actor.base_embedding;
      if (spec.noise.embedding_noise_sigma > 0.0)
        for (double& v : emb) v += normal(rng) * spec.noise.embedding_noise_sigma;

      if (dropped(actor, f) || miss_roll < spec.noise.miss_probability) continue;

      const double cx = std::clamp(pos->first + jx, half, 1.0 - half);
      const double cy = std::clamp(pos->second + jy, half, 1.0 - half);
      DetectionRecord det;
      det.class_label = ObjectClass::Head;
      det.confidence = 0.80 + 0.19 * conf_roll;
      det.box = box_around(cx, cy, kHeadBoxSize, kHeadBoxSize);
      det.embedding = std::move(emb);
      frame.detections.push_back(std::move(det));
    }
    for (const auto& d : spec.distractions) {
      frame.detections.push_back(
          {d.class_label, d.confidence, box_around(d.x, d.y, d.size, d.size), {}});
    }
    out.frames.push_back(std::move(frame));
  }
  out.truth = ground_truth(spec);
  return out;
}

std::optional<AccuracyReport> evaluate(std::int64_t ins, std::int64_t outs,
                                       const GroundTruth& truth) {
  const std::int64_t total = truth.final_ins + truth.final_outs;
  if (total == 0) return std::nullopt;
  const std::int64_t error = std::llabs(ins - truth.final_ins) + std::llabs(outs - truth.final_outs);
  return accuracy(total, error);
}

std::optional<AccuracyReport> evaluate(const CountLedger& ledger, const GroundTruth& truth) {
  return evaluate(ledger.ins(), ledger.outs(), truth);
}

std::vector<Embedding> orthonormal_embeddings(std::size_t count, std::size_t dim,
                                              std::uint64_t seed) {
  if (count > dim) throw InvalidInput("cannot build more orthogonal vectors than dimensions");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Embedding> basis;
  while (basis.size() < count) {
    Embedding v(dim);
    for (double& x : v) x = normal(rng);
    // Two Gram-Schmidt passes keep the residual dot products at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dim; ++k) dot += v[k] * b[k];
        for (std::size_t k = 0; k < dim; ++k) v[k] -= dot * b[k];
      }
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

double sigma_for_cosine_distance(double target_distance, std::size_t dim) {
  if (!(target_distance >= 0.0 && target_distance < 1.0) || dim == 0)
    throw InvalidInput("target distance must lie in [0, 1) and dim must be positive");
  return std::sqrt(target_distance / ((1.0 - target_distance) * static_cast<double>(dim)));
}

namespace {

ScenarioSpec base_spec(std::string name, std::int64_t duration, const CatalogOptions& o) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.seed = o.seed;
  s.duration_frames = duration;
  s.layout = o.layout;
  return s;
}

// Straight traversal between the outside and inside edges of the frame.
ActorSpec crossing_actor(int id, Intent intent, double x, std::int64_t first, std::int64_t last,
                         const RegionLayout& layout, Embedding emb) {
  const bool top_outside = layout.orientation == Orientation::OutsideTop;
  const double outside_y = top_outside ? 0.1 : 0.9;
  const double inside_y = top_outside ? 0.9 : 0.1;
  const bool entering = intent == Intent::Enter;
  ActorSpec a;
  a.actor_id = id;
  a.intent = intent;
  a.path = {{first, x, entering ? outside_y : inside_y}, {last, x, entering ? inside_y : outside_y}};
  a.base_embedding = std::move(emb);
  return a;
}

// Middle of region B regardless of orientation.
double band_center(const RegionLayout& l) { return 0.5 * (l.line_ab + l.line_bc); }

std::optional<int> dropout_length(std::string_view name) {
  constexpr std::string_view prefix = "dropout_";
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto digits = name.substr(prefix.size());
  int k = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 0 || digits.empty())
    return std::nullopt;
  return k;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"clean_entry", "clean_exit",        "oscillation", "dropout_<k>",
          "crossing_pair", "distraction_field", "multi_3",     "random_mix"};
}

ScenarioSpec make_scenario(std::string_view name, const CatalogOptions& o) {
  const auto& layout = o.layout;
  auto embeddings = [&](std::size_t n) { return orthonormal_embeddings(n, o.embedding_dim, o.seed); };

  if (name == "clean_entry" || name == "clean_exit") {
    auto s = base_spec(std::string(name), 60, o);
    Intent intent = name == "clean_entry" ? Intent::Enter : Intent::Exit;
    s.actors.push_back(crossing_actor(1, intent, 0.5, 5, 54, layout, embeddings(1)[0]));
    return s;
  }
  if (name == "oscillation") {
    auto s = base_spec("oscillation", 200, o);
    const double mid = band_center(layout);
    const double swing = 0.25 * std::abs(layout.line_bc - layout.line_ab);
    ActorSpec a;
    a.actor_id = 1;
    a.intent = Intent::Oscillate;
    a.base_embedding = embeddings(1)[0];
    for (std::int64_t f = 0, k = 0; f < 200; f += 10, ++k)
      a.path.push_back({f, 0.5, mid + (k % 2 == 0 ? -swing : swing)});
    a.path.push_back({199, 0.5, mid});
    s.actors.push_back(std::move(a));
    return s;
  }
  if (auto k = dropout_length(name)) {
    auto s = base_spec(std::string(name), 60, o);
    auto actor = crossing_actor(1, Intent::Enter, 0.5, 5, 54, layout, embeddings(1)[0]);
    if (*k > 0) {
      // Gap centered on the middle of the traversal, inside B.
      const std::int64_t first = 30 - *k / 2;
      actor.dropouts.push_back({first, first + *k - 1});
    }
    s.actors.push_back(std::move(actor));
    return s;
  }
  if (name == "crossing_pair") {
    auto s = base_spec("crossing_pair", 60, o);
    auto e = embeddings(2);
    s.actors.push_back(crossing_actor(1, Intent::Enter, 0.3, 5, 54, layout, e[0]));
    s.actors.push_back(crossing_actor(2, Intent::Exit, 0.7, 5, 54, layout, e[1]));
    return s;
  }
  if (name == "distraction_field") {
    auto s = base_spec("distraction_field", 60, o);
    s.actors.push_back(crossing_actor(1, Intent::Enter, 0.5, 5, 54, layout, embeddings(1)[0]));
    s.distractions = {{ObjectClass::Chair, 0.45, 0.55, 0.2, 0.89},
                      {ObjectClass::Trolley, 0.8, 0.3, 0.2, 0.92},
                      {ObjectClass::Bag, 0.2, 0.75, 0.1, 0.86}};
    return s;
  }
  if (name == "multi_3") {
    auto s = base_spec("multi_3", 120, o);
    auto e = embeddings(3);
    s.actors.push_back(crossing_actor(1, Intent::Enter, 0.2, 10, 70, layout, e[0]));
    s.actors.push_back(crossing_actor(2, Intent::Exit, 0.5, 20, 80, layout, e[1]));
    s.actors.push_back(crossing_actor(3, Intent::Enter, 0.8, 30, 90, layout, e[2]));
    return s;
  }
  if (name == "random_mix") {
    auto s = random_crossings(o.seed, NoiseSpec{}, o);
    s.name = "random_mix";
    return s;
  }

  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown scenario '" + std::string(name) + "'; catalog: " + known);
}

std::vector<ScenarioSpec> scenario_suite(const std::vector<std::string>& names,
                                         const CatalogOptions& options) {
  std::vector<ScenarioSpec> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(make_scenario(n, options));
  return out;
}

ScenarioSpec random_crossings(std::uint64_t seed, const NoiseSpec& noise,
                              const CatalogOptions& o) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 17);
  std::uniform_int_distribution<int> actor_count(1, 3);
  std::uniform_int_distribution<std::int64_t> start(0, 60);
  std::uniform_int_distribution<std::int64_t> span(30, 70);
  std::uniform_real_distribution<double> lane(0.15, 0.85);
  std::bernoulli_distribution entering(0.5);

  auto s = base_spec("random_crossings", 150, o);
  s.seed = seed;
  s.noise = noise;
  const int n = actor_count(rng);
  auto e = orthonormal_embeddings(static_cast<std::size_t>(n), o.embedding_dim, seed);
  for (int k = 0; k < n; ++k) {
    const std::int64_t first = start(rng);
    const std::int64_t last = first + span(rng);
    const Intent intent = entering(rng) ? Intent::Enter : Intent::Exit;
    s.actors.push_back(crossing_actor(k + 1, intent, lane(rng), first, last, o.layout, e[k]));
  }
  return s;
}

std::string truth_event_to_json(const TruthEvent& e) {
  nlohmann::ordered_json j;
  j["kind"] = headcount::to_string(e.kind);
  j["actor_id"] = e.actor_id;
  j["frame_id"] = e.frame_id;
  return j.dump();
}

}  // namespace headcount::sim
