#include "seqrec/encoding.hpp"

#include <algorithm>

namespace seqrec {

std::vector<double> default_absolute_periods() {
  const double h = static_cast<double>(kSecondsPerHour);
  const double d = static_cast<double>(kSecondsPerDay);
  return {0.25 * h, 0.5 * h, 0.75 * h, h,      2 * h,  4 * h,
          8 * h,    16 * h,  d,        7 * d, 28 * d, 365 * d};
}

std::vector<double> log_spaced_periods(int count, double lo, double hi) {
  if (count < 1) throw ConfigError("period count must be >= 1");
  if (lo <= 0.0 || hi < lo) throw ConfigError("invalid period range");
  std::vector<double> periods(count);
  if (count == 1) {
    periods[0] = lo;
    return periods;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i)
    periods[i] = std::exp(std::log(lo) + step * i);
  periods.front() = lo;
  periods.back() = hi;
  return periods;
}

void EncoderConfig::validate() const {
  if (max_seq_len < 1) throw ConfigError("encoder: max_seq_len must be >= 1");
  if (d_pin < 1) throw ConfigError("encoder: d_pin must be >= 1");
  if (absolute_periods.empty())
    throw ConfigError("encoder: absolute period list is empty");
  for (double p : absolute_periods)
    if (p <= 0.0) throw ConfigError("encoder: periods must be positive");
  if (relative_period_count < 1)
    throw ConfigError("encoder: relative_period_count must be >= 1");
  if (relative_period_min <= 0.0 ||
      relative_period_max < relative_period_min)
    throw ConfigError("encoder: invalid relative period range");
  if (action_type_vocab < 1 || surface_vocab < 1)
    throw ConfigError("encoder: vocab sizes must be >= 1");
  if (action_type_width < 1 || surface_width < 1)
    throw ConfigError("encoder: embedding widths must be >= 1");
}

VecD encode_time(double t, const std::vector<double>& periods,
                 const VecD& phases) {
  if (t < 0.0) throw PreconditionError("encode_time: t must be >= 0");
  const int p = static_cast<int>(periods.size());
  VecD phi = phases;
  if (phi.size() == 0) phi = VecD::Zero(2 * p);
  if (phi.size() != 2 * p)
    throw ShapeError("encode_time: phases must have length 2P");
  VecD out(2 * p + 1);
  detail::fill_time_block<double>(out.transpose().block(0, 0, 1, 2 * p + 1),
                                  t, periods, phi, true);
  return out;
}

EncodedSequence encode_sequence(const UserTimeline& timeline,
                                std::int64_t as_of,
                                const EncoderConfig& config) {
  config.validate();
  // In-vocabulary actions at or before as_of, in timeline order.
  std::vector<const Action*> eligible;
  for (const Action& a : timeline.actions) {
    if (a.timestamp > as_of) break;
    const int type_id = static_cast<int>(a.type);
    const int surface_id = static_cast<int>(a.surface);
    if (type_id >= config.action_type_vocab ||
        surface_id >= config.surface_vocab)
      continue;  // OOV terms drop the element entirely
    eligible.push_back(&a);
  }
  if (eligible.empty())
    throw EmptySequenceError("no encodable actions at or before as_of");

  const int m = config.max_seq_len;
  const int n = std::min<int>(m, static_cast<int>(eligible.size()));
  EncodedSequence seq;
  seq.n_real = n;
  seq.padding_mask.assign(m, 0);
  seq.pin_features = MatD::Zero(m, config.d_pin);
  seq.action_type_ids.resize(n);
  seq.surface_ids.resize(n);
  seq.log_durations.resize(n);
  seq.t_absolute.resize(n);
  seq.t_since_latest.resize(n);
  seq.t_gap.resize(n);

  const std::size_t last = eligible.size() - 1;
  const std::int64_t latest_ts = eligible[last]->timestamp;
  for (int r = 0; r < n; ++r) {
    const Action& a = *eligible[last - r];
    seq.padding_mask[r] = 1;
    seq.action_type_ids[r] = static_cast<int>(a.type);
    seq.surface_ids[r] = static_cast<int>(a.surface);
    seq.log_durations[r] = std::log1p(static_cast<double>(a.duration));
    seq.t_absolute[r] = static_cast<double>(a.timestamp);
    seq.t_since_latest[r] = static_cast<double>(latest_ts - a.timestamp);
    seq.t_gap[r] = r == 0 ? 0.0
                          : static_cast<double>(eligible[last - r + 1]->timestamp -
                                                a.timestamp);
  }
  return seq;
}

}  // namespace seqrec
