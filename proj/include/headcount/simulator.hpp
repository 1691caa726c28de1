#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "headcount/counter.hpp"
#include "headcount/ingest.hpp"
#include "headcount/region.hpp"

namespace headcount::sim {

struct Waypoint {
  std::int64_t frame = 0;
  double x = 0.0;
  double y = 0.0;
};

enum class Intent { Enter, Exit, Loiter, Oscillate };

std::string_view to_string(Intent i);

// Inclusive frame range during which the actor is not detected.
struct Dropout {
  std::int64_t first = 0;
  std::int64_t last = 0;
};

struct ActorSpec {
  int actor_id = 0;
  std::vector<Waypoint> path;  // piecewise linear; actor exists from first to last waypoint frame
  Embedding base_embedding;
  Intent intent = Intent::Enter;
  std::vector<Dropout> dropouts;
};

struct DistractionSpec {
  ObjectClass class_label = ObjectClass::Chair;
  double x = 0.5;
  double y = 0.5;
  double size = 0.15;
  double confidence = 0.9;
};

struct NoiseSpec {
  double miss_probability = 0.0;
  double embedding_noise_sigma = 0.0;  // per component, added before matching
  double center_jitter_sigma = 0.0;
};

struct ScenarioSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::int64_t duration_frames = 0;
  double fps = 25.0;
  std::vector<ActorSpec> actors;
  std::vector<DistractionSpec> distractions;
  NoiseSpec noise;
  RegionLayout layout;
};

inline constexpr double kHeadBoxSize = 0.08;

// Throws InvalidInput describing the first violated constraint.
void validate(const ScenarioSpec& spec);

struct TruthEvent {
  CrossingKind kind = CrossingKind::Entry;
  int actor_id = 0;
  std::int64_t frame_id = 0;

  bool operator==(const TruthEvent&) const = default;
};

struct GroundTruth {
  std::vector<TruthEvent> events;  // ordered by frame, then actor
  std::int64_t final_ins = 0;
  std::int64_t final_outs = 0;
};

struct Generated {
  std::vector<FrameRecord> frames;
  GroundTruth truth;
};

// Deterministic in (spec, spec.seed).
Generated generate(const ScenarioSpec& spec);

// Crossing events along the noiseless actor paths.
GroundTruth ground_truth(const ScenarioSpec& spec);

// Position on the path at `frame`, or nullopt outside the actor's lifetime.
std::optional<std::pair<double, double>> position_at(const ActorSpec& actor, std::int64_t frame);

// Nullopt when the truth holds no observations at all.
std::optional<AccuracyReport> evaluate(const CountLedger& ledger, const GroundTruth& truth);
std::optional<AccuracyReport> evaluate(std::int64_t ins, std::int64_t outs, const GroundTruth& truth);

// `count` mutually orthogonal unit vectors of length `dim`, seeded.
std::vector<Embedding> orthonormal_embeddings(std::size_t count, std::size_t dim,
                                              std::uint64_t seed);

// Per-component sigma at which two independently perturbed copies of a unit
// vector sit at the given expected cosine distance.
double sigma_for_cosine_distance(double target_distance, std::size_t dim);

struct CatalogOptions {
  std::uint64_t seed = 0;
  std::size_t embedding_dim = kDefaultEmbeddingDim;
  RegionLayout layout;
  int miss_limit = 5;  // sizes the dropout_k gaps
};

// Built-in names: clean_entry, clean_exit, oscillation, dropout_<k>,
// crossing_pair, distraction_field, multi_3, random_mix.
std::vector<std::string> catalog_names();
ScenarioSpec make_scenario(std::string_view name, const CatalogOptions& options = {});
std::vector<ScenarioSpec> scenario_suite(const std::vector<std::string>& names,
                                         const CatalogOptions& options = {});

// One to three actors crossing in random directions, lanes and speeds.
ScenarioSpec random_crossings(std::uint64_t seed, const NoiseSpec& noise,
                              const CatalogOptions& options = {});

std::string truth_event_to_json(const TruthEvent& e);

}  // namespace headcount::sim
