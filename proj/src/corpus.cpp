#include "seqrec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqrec/rng.hpp"

namespace seqrec {

void CorpusConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("corpus config: " + what);
  };
  require(n_pins >= 1, "n_pins must be >= 1");
  require(n_users >= 1, "n_users must be >= 1");
  require(n_interests >= 1, "n_interests must be >= 1");
  require(d_pin >= 1, "d_pin must be >= 1");
  require(zipf_exponent >= 0.0, "zipf_exponent must be >= 0");
  require(noise_scale >= 0.0, "noise_scale must be >= 0");
  require(interests_per_user >= 1, "interests_per_user must be >= 1");
  require(interests_per_user <= n_interests,
          "interests_per_user cannot exceed n_interests");
  require(mixture_concentration > 0.0, "mixture_concentration must be > 0");
  require(sessions_per_day > 0.0, "sessions_per_day must be > 0");
  require(actions_per_session_mean >= 1.0,
          "actions_per_session_mean must be >= 1");
  for (double p : {positive_fraction, repin_share, closeup_share, click_share})
    require(p >= 0.0 && p <= 1.0, "probabilities must lie in [0, 1]");
  require(repin_share + closeup_share + click_share > 0.0,
          "positive action shares must not all be zero");
  require(interest_drift >= 0.0, "interest_drift must be >= 0");
  require(timeline_span_days >= 0, "timeline_span_days must be >= 0");
}

namespace {

VecD random_unit_vector(int d, Rng& rng) {
  VecD v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.normal();
  const double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / n;
}

}  // namespace

Corpus synth_corpus(const CorpusConfig& config) {
  config.validate();
  Corpus corpus;
  corpus.d_pin = config.d_pin;

  Rng interest_rng(hash_str(config.seed, "corpus/interests"));
  corpus.interests.reserve(config.n_interests);
  for (int i = 0; i < config.n_interests; ++i) {
    Interest interest;
    interest.id = i;
    interest.centroid = random_unit_vector(config.d_pin, interest_rng);
    corpus.interests.push_back(std::move(interest));
  }

  Rng pin_rng(hash_str(config.seed, "corpus/pins"));
  corpus.pins.reserve(config.n_pins);
  for (int i = 0; i < config.n_pins; ++i) {
    Pin pin;
    pin.id = i;
    pin.interest_id = static_cast<int>(pin_rng.uniform_int(config.n_interests));
    VecD v = corpus.interests[pin.interest_id].centroid;
    if (config.noise_scale > 0.0) {
      for (int k = 0; k < config.d_pin; ++k)
        v[k] += config.noise_scale * pin_rng.normal();
    }
    const double n = v.norm();
    pin.embedding = n > 0.0 ? VecD(v / n)
                            : corpus.interests[pin.interest_id].centroid;
    // Zipf weight by pin id; ids double as popularity ranks.
    pin.popularity = std::pow(static_cast<double>(i + 1),
                              -config.zipf_exponent);
    corpus.pins.push_back(std::move(pin));
  }
  return corpus;
}

namespace {

// Popularity-weighted pin lookup, per interest.
struct InterestPools {
  std::vector<std::vector<std::int64_t>> pins;  // per interest
  std::vector<std::vector<double>> cdf;         // popularity prefix sums

  explicit InterestPools(const Corpus& corpus) {
    const int n = static_cast<int>(corpus.interests.size());
    pins.resize(n);
    cdf.resize(n);
    for (const Pin& p : corpus.pins) pins[p.interest_id].push_back(p.id);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      cdf[i].reserve(pins[i].size());
      for (std::int64_t id : pins[i]) {
        acc += corpus.pins[static_cast<std::size_t>(id)].popularity;
        cdf[i].push_back(acc);
      }
    }
  }
};

std::vector<double> dirichlet(int k, double alpha, Rng& rng) {
  // Gamma(alpha) via Marsaglia-Tsang, boosted for alpha < 1.
  std::vector<double> w(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    double a = alpha;
    double boost = 1.0;
    if (a < 1.0) {
      double u;
      do {
        u = rng.uniform();
      } while (u <= 0.0);
      boost = std::pow(u, 1.0 / a);
      a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    double x, v;
    for (;;) {
      do {
        x = rng.normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = rng.uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) break;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        break;
    }
    w[i] = boost * d * v;
    if (w[i] <= 0.0) w[i] = 1e-12;
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

std::vector<UserTimeline> synth_timelines(const CorpusConfig& config,
                                          const Corpus& corpus) {
  config.validate();
  if (corpus.pins.empty()) throw ConfigError("corpus has no pins");

  const InterestPools pools(corpus);
  const std::int64_t span_s =
      static_cast<std::int64_t>(config.timeline_span_days) * kSecondsPerDay;
  const double session_gap_mean_s =
      kSecondsPerDay / config.sessions_per_day;

  std::vector<UserTimeline> timelines;
  timelines.reserve(config.n_users);
  for (int uid = 0; uid < config.n_users; ++uid) {
    Rng rng(hash_u64(hash_str(config.seed, "timeline"), uid));
    UserTimeline tl;
    tl.user_id = static_cast<std::uint64_t>(uid);

    // Pick distinct interests that actually have pins.
    std::vector<int> candidates;
    for (int i = 0; i < config.n_interests; ++i)
      if (!pools.pins[i].empty()) candidates.push_back(i);
    if (candidates.empty()) throw ConfigError("no interest has any pins");
    const int k =
        std::min<int>(config.interests_per_user,
                      static_cast<int>(candidates.size()));
    std::vector<std::size_t> chosen =
        rng.sample_without_replacement(candidates.size(), k);
    std::vector<int> interests(k);
    for (int i = 0; i < k; ++i) interests[i] = candidates[chosen[i]];
    std::sort(interests.begin(), interests.end());

    std::vector<double> weights =
        dirichlet(k, config.mixture_concentration, rng);
    for (int i = 0; i < k; ++i)
      tl.interest_mixture.emplace_back(
          static_cast<std::uint32_t>(interests[i]),
          static_cast<float>(weights[i]));
    // Re-normalize in float so the stored mixture sums to one exactly enough.
    float fsum = 0.0f;
    for (auto& [id, w] : tl.interest_mixture) fsum += w;
    if (fsum > 0.0f)
      for (auto& [id, w] : tl.interest_mixture) w /= fsum;

    // Sessions arrive as a Poisson process over the span. Each session
    // focuses on one interest drawn from the (slowly drifting) mixture, so
    // consecutive actions are correlated while the long-run mixture is
    // stable enough to predict weeks ahead.
    std::vector<double> mix = weights;
    double t = rng.exponential(session_gap_mean_s);
    std::int64_t last_ts = 0;
    while (static_cast<std::int64_t>(t) < span_s) {
      std::vector<double> cdf(mix.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < mix.size(); ++i) {
        acc += mix[i];
        cdf[i] = acc;
      }
      const int focus = interests[rng.sample_cdf(cdf)];

      const std::int64_t n_actions =
          1 + rng.poisson(config.actions_per_session_mean - 1.0);
      std::int64_t ts = static_cast<std::int64_t>(t) + 1;  // timestamps > 0
      for (std::int64_t a = 0; a < n_actions; ++a) {
        if (ts <= last_ts) ts = last_ts + 1;
        if (ts > span_s) break;
        // Occasionally wander off the session focus.
        int interest = focus;
        if (mix.size() > 1 && rng.uniform() < 0.15)
          interest = interests[rng.sample_cdf(cdf)];

        Action act;
        act.pin_id = pools.pins[interest][rng.sample_cdf(pools.cdf[interest])];
        act.timestamp = ts;

        if (rng.uniform() < config.positive_fraction) {
          act.surface = Surface::kHomefeed;
          const double share_total =
              config.repin_share + config.closeup_share + config.click_share;
          const double x = rng.uniform() * share_total;
          if (x < config.repin_share) {
            act.type = ActionType::kRepin;
            act.duration = 0.0f;
          } else {
            act.type = x < config.repin_share + config.closeup_share
                           ? ActionType::kCloseup
                           : ActionType::kClick;
            act.duration =
                static_cast<float>(10.5 + rng.exponential(20.0));
          }
        } else {
          // Non-positive filler: impressions, hides, short engagement, and
          // off-Homefeed activity.
          const double x = rng.uniform();
          if (x < 0.45) {
            act.type = ActionType::kImpression;
            act.surface = Surface::kHomefeed;
            act.duration = 0.0f;
          } else if (x < 0.55) {
            act.type = ActionType::kHide;
            act.surface = Surface::kHomefeed;
            act.duration = 0.0f;
          } else if (x < 0.8) {
            act.type = rng.uniform() < 0.5 ? ActionType::kCloseup
                                           : ActionType::kClick;
            act.surface = Surface::kHomefeed;
            act.duration = static_cast<float>(rng.uniform(0.0, 8.0));
          } else {
            act.type = rng.uniform() < 0.5 ? ActionType::kRepin
                                           : ActionType::kClick;
            act.surface = rng.uniform() < 0.5 ? Surface::kSearch
                                              : Surface::kRelatedPins;
            act.duration = static_cast<float>(rng.uniform(0.0, 40.0));
          }
        }
        tl.actions.push_back(act);
        last_ts = ts;
        ts += 1 + static_cast<std::int64_t>(rng.exponential(45.0));
      }

      // Drift the mixture a little between sessions.
      if (config.interest_drift > 0.0 && mix.size() > 1) {
        double total = 0.0;
        for (double& w : mix) {
          w *= std::exp(config.interest_drift * rng.normal());
          total += w;
        }
        for (double& w : mix) w /= total;
      }
      t += rng.exponential(session_gap_mean_s);
    }

    std::sort(tl.actions.begin(), tl.actions.end(),
              [](const Action& a, const Action& b) {
                return a.timestamp != b.timestamp
                           ? a.timestamp < b.timestamp
                           : a.pin_id < b.pin_id;
              });
    timelines.push_back(std::move(tl));
  }
  return timelines;
}

}  // namespace seqrec
