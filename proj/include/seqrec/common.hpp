#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seqrec {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;

inline constexpr std::int64_t kSecondsPerHour = 3600;
inline constexpr std::int64_t kSecondsPerDay = 86400;

// Error taxonomy. Config/usage problems map to CLI exit code 2, everything
// else to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed binary input. Carries the byte offset at which decoding failed
// and, when known, the index of the record being decoded.
struct DecodeError : std::runtime_error {
  DecodeError(const std::string& msg, std::uint64_t byte_offset,
              std::int64_t record_index = -1)
      : std::runtime_error(msg + " (byte offset " +
                           std::to_string(byte_offset) +
                           (record_index >= 0
                                ? ", record " + std::to_string(record_index)
                                : "") +
                           ")"),
        offset(byte_offset),
        record(record_index) {}
  std::uint64_t offset;
  std::int64_t record;
};

// A sequence with no encodable actions; callers typically skip the user.
struct EmptySequenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace seqrec
