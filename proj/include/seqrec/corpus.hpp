#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "seqrec/common.hpp"

namespace seqrec {

enum class ActionType : std::uint8_t {
  kRepin = 0,
  kCloseup = 1,
  kClick = 2,
  kHide = 3,
  kImpression = 4,
};
inline constexpr int kActionTypeCount = 5;

enum class Surface : std::uint8_t {
  kHomefeed = 0,
  kSearch = 1,
  kRelatedPins = 2,
  kOther = 3,
};
inline constexpr int kSurfaceCount = 4;

struct Interest {
  int id = 0;
  VecD centroid;  // unit norm
};

struct Pin {
  std::int64_t id = 0;
  VecD embedding;  // unit norm, near the interest centroid
  int interest_id = 0;
  double popularity = 1.0;  // Zipf weight, > 0
};

struct Action {
  std::int64_t pin_id = 0;
  std::int64_t timestamp = 0;  // seconds since epoch, > 0
  ActionType type = ActionType::kImpression;
  Surface surface = Surface::kOther;
  float duration = 0.0f;  // seconds, >= 0
};

struct UserTimeline {
  std::uint64_t user_id = 0;
  // Sparse mixture over interests; weights sum to 1.
  std::vector<std::pair<std::uint32_t, float>> interest_mixture;
  std::vector<Action> actions;  // strictly sorted by (timestamp, pin_id)
};

struct CorpusConfig {
  int n_pins = 10000;
  int n_users = 2000;
  int n_interests = 350;
  int d_pin = 64;
  double zipf_exponent = 1.0;
  double noise_scale = 0.25;  // pin embedding = normalize(centroid + noise)
  int interests_per_user = 3;
  double mixture_concentration = 1.0;  // Dirichlet alpha for user mixtures
  double sessions_per_day = 1.5;
  double actions_per_session_mean = 6.0;
  // Probability an engagement is generated as positive (Homefeed repin /
  // long closeup / long click). The rest are hides, impressions, short
  // clicks, and off-Homefeed engagement, kept as inputs but never labels.
  double positive_fraction = 0.3;
  // Relative frequency of repin / closeup / click among positives.
  double repin_share = 0.4;
  double closeup_share = 0.3;
  double click_share = 0.3;
  // Per-session random walk scale of the mixture weights in log space.
  double interest_drift = 0.03;
  int timeline_span_days = 56;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Corpus {
  std::vector<Interest> interests;
  std::vector<Pin> pins;
  int d_pin = 0;
};

// True iff the action counts as positive engagement: Homefeed only, and
// either a repin or a closeup/click lasting strictly longer than 10 s.
inline bool is_positive(const Action& a) {
  if (a.surface != Surface::kHomefeed) return false;
  switch (a.type) {
    case ActionType::kRepin:
      return true;
    case ActionType::kCloseup:
    case ActionType::kClick:
      return a.duration > 10.0f;
    default:
      return false;
  }
}

Corpus synth_corpus(const CorpusConfig& config);

std::vector<UserTimeline> synth_timelines(const CorpusConfig& config,
                                          const Corpus& corpus);

}  // namespace seqrec
