#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "seqrec/common.hpp"
#include "seqrec/corpus.hpp"

namespace seqrec {

// Fixed periods of real-life importance for absolute timestamps, in seconds:
// 0.25h, 0.5h, 0.75h, 1h, 2h, 4h, 8h, 16h, 1d, 7d, 28d, 365d.
std::vector<double> default_absolute_periods();

// P log-spaced periods between lo and hi seconds, endpoints inclusive.
std::vector<double> log_spaced_periods(int count, double lo, double hi);

struct EncoderConfig {
  int max_seq_len = 64;  // M
  int d_pin = 64;
  std::vector<double> absolute_periods = default_absolute_periods();
  int relative_period_count = 32;
  double relative_period_min = 1.0;
  double relative_period_max = 2419200.0;  // four weeks
  int action_type_vocab = kActionTypeCount;
  int surface_vocab = kSurfaceCount;
  int action_type_width = 8;
  int surface_width = 4;
  // Keep the log-scale scalar of the absolute timestamp in the feature row.
  bool include_raw_log_timestamp = true;

  std::vector<double> relative_periods() const {
    return log_spaced_periods(relative_period_count, relative_period_min,
                              relative_period_max);
  }

  int absolute_block_width() const {
    return 2 * static_cast<int>(absolute_periods.size()) +
           (include_raw_log_timestamp ? 1 : 0);
  }
  int relative_block_width() const { return 2 * relative_period_count + 1; }

  // Feature row layout: pin embedding | action-type embedding | surface
  // embedding | log-duration | absolute-time block | time-since-latest
  // block | gap-to-next block.
  int type_offset() const { return d_pin; }
  int surface_offset() const { return d_pin + action_type_width; }
  int duration_offset() const { return surface_offset() + surface_width; }
  int absolute_offset() const { return duration_offset() + 1; }
  int relative_offset() const {
    return absolute_offset() + absolute_block_width();
  }
  int gap_offset() const { return relative_offset() + relative_block_width(); }
  int input_dim() const { return gap_offset() + relative_block_width(); }

  void validate() const;
};

// The latest-M view of a timeline, ready for featurization. Row 0 is the
// most recent action; rows n_real..M-1 are padding. Only the static parts
// are stored; the learnable parts (embedding tables, phases) are applied by
// assemble_features so training can differentiate through them.
struct EncodedSequence {
  int n_real = 0;
  std::vector<std::uint8_t> padding_mask;  // length M, 1 = real action
  MatD pin_features;                       // M x d_pin, zero-padded
  std::vector<int> action_type_ids;        // length n_real
  std::vector<int> surface_ids;
  std::vector<double> log_durations;
  std::vector<double> t_absolute;     // action timestamp
  std::vector<double> t_since_latest; // latest action ts - action ts
  std::vector<double> t_gap;          // next action ts - action ts, row 0 = 0
};

// r_{2i-1} = cos(2 pi t / p_i + phi_{2i-1}), r_{2i} = sin(..., phi_{2i}),
// r_{2P+1} = log(1 + t). phases may be empty (all zero) or length 2P.
VecD encode_time(double t, const std::vector<double>& periods,
                 const VecD& phases = VecD());

// Latest <= max_seq_len actions with timestamp <= as_of, most recent first.
// Out-of-vocabulary actions are dropped before selection. Throws
// EmptySequenceError when nothing is encodable.
EncodedSequence encode_sequence(const UserTimeline& timeline,
                                std::int64_t as_of,
                                const EncoderConfig& config);

namespace detail {

template <typename T, typename Derived>
void fill_time_block(Eigen::Block<Derived> out, double t,
                     const std::vector<double>& periods,
                     const Vec<T>& phases, bool include_log) {
  const int p = static_cast<int>(periods.size());
  for (int i = 0; i < p; ++i) {
    const double theta = 2.0 * M_PI * t / periods[i];
    out(0, 2 * i) =
        static_cast<T>(std::cos(theta + static_cast<double>(phases[2 * i])));
    out(0, 2 * i + 1) = static_cast<T>(
        std::sin(theta + static_cast<double>(phases[2 * i + 1])));
  }
  if (include_log) out(0, 2 * p) = static_cast<T>(std::log1p(t));
}

}  // namespace detail

// Materializes the M x D_in input matrix from the static parts plus the
// learnable tables and phases.
template <typename T>
Mat<T> assemble_features(const EncodedSequence& seq,
                         const EncoderConfig& cfg,
                         const Mat<T>& action_type_table,
                         const Mat<T>& surface_table, const Vec<T>& phi_abs,
                         const Vec<T>& phi_rel, const Vec<T>& phi_gap) {
  const int m = cfg.max_seq_len;
  const auto abs_periods = cfg.absolute_periods;
  const auto rel_periods = cfg.relative_periods();
  Mat<T> a = Mat<T>::Zero(m, cfg.input_dim());
  for (int r = 0; r < seq.n_real; ++r) {
    a.row(r).segment(0, cfg.d_pin) =
        seq.pin_features.row(r).template cast<T>();
    a.row(r).segment(cfg.type_offset(), cfg.action_type_width) =
        action_type_table.row(seq.action_type_ids[r]);
    a.row(r).segment(cfg.surface_offset(), cfg.surface_width) =
        surface_table.row(seq.surface_ids[r]);
    a(r, cfg.duration_offset()) = static_cast<T>(seq.log_durations[r]);
    detail::fill_time_block<T>(
        a.block(r, cfg.absolute_offset(), 1, cfg.absolute_block_width()),
        seq.t_absolute[r], abs_periods, phi_abs,
        cfg.include_raw_log_timestamp);
    detail::fill_time_block<T>(
        a.block(r, cfg.relative_offset(), 1, cfg.relative_block_width()),
        seq.t_since_latest[r], rel_periods, phi_rel, true);
    detail::fill_time_block<T>(
        a.block(r, cfg.gap_offset(), 1, cfg.relative_block_width()),
        seq.t_gap[r], rel_periods, phi_gap, true);
  }
  return a;
}

// Scatters the gradient of the feature matrix back onto the learnable
// encoder parameters. d_features is M x D_in, as produced by the user-tower
// backward pass.
template <typename T>
void scatter_feature_grads(const EncodedSequence& seq,
                           const EncoderConfig& cfg, const Mat<T>& d_features,
                           const Vec<T>& phi_abs, const Vec<T>& phi_rel,
                           const Vec<T>& phi_gap, Mat<T>& d_type_table,
                           Mat<T>& d_surface_table, Vec<T>& d_phi_abs,
                           Vec<T>& d_phi_rel, Vec<T>& d_phi_gap) {
  const auto abs_periods = cfg.absolute_periods;
  const auto rel_periods = cfg.relative_periods();
  auto scatter_phase = [](double t, const std::vector<double>& periods,
                          const Vec<T>& phi, const auto& grad_row, int offset,
                          Vec<T>& d_phi) {
    for (int i = 0; i < static_cast<int>(periods.size()); ++i) {
      const double theta = 2.0 * M_PI * t / periods[i];
      // d cos(theta + phi_c) / d phi_c = -sin(theta + phi_c)
      d_phi[2 * i] += grad_row(offset + 2 * i) *
                      static_cast<T>(-std::sin(
                          theta + static_cast<double>(phi[2 * i])));
      d_phi[2 * i + 1] += grad_row(offset + 2 * i + 1) *
                          static_cast<T>(std::cos(
                              theta + static_cast<double>(phi[2 * i + 1])));
    }
  };
  for (int r = 0; r < seq.n_real; ++r) {
    d_type_table.row(seq.action_type_ids[r]) +=
        d_features.row(r).segment(cfg.type_offset(), cfg.action_type_width);
    d_surface_table.row(seq.surface_ids[r]) +=
        d_features.row(r).segment(cfg.surface_offset(), cfg.surface_width);
    scatter_phase(seq.t_absolute[r], abs_periods, phi_abs, d_features.row(r),
                  cfg.absolute_offset(), d_phi_abs);
    scatter_phase(seq.t_since_latest[r], rel_periods, phi_rel,
                  d_features.row(r), cfg.relative_offset(), d_phi_rel);
    scatter_phase(seq.t_gap[r], rel_periods, phi_gap, d_features.row(r),
                  cfg.gap_offset(), d_phi_gap);
  }
}

}  // namespace seqrec
