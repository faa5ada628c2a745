#pragma once

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqrec/corpus.hpp"

namespace seqrec {

// Timeline dataset, magic "SQR1". One record per user:
//   u64 user_id, u16 mixture entries (u32 interest_id + f32 weight each),
//   u32 action count, then per action:
//   u64 pin_id, i64 timestamp, u8 action_type, u8 surface, f32 duration.
// All integers little-endian.
void write_dataset(const std::vector<UserTimeline>& timelines,
                   const std::string& path);
std::vector<UserTimeline> read_dataset(const std::string& path);

// Streaming access: one record at a time, without loading all users.
// A single cursor must not be shared across threads.
class DatasetReader {
 public:
  explicit DatasetReader(const std::string& path);
  ~DatasetReader();
  DatasetReader(DatasetReader&&) noexcept;
  DatasetReader& operator=(DatasetReader&&) noexcept;

  std::uint32_t record_count() const { return record_count_; }
  // Returns the next timeline, or nullopt at end of file.
  std::optional<UserTimeline> next();

 private:
  std::FILE* file_ = nullptr;
  std::uint32_t record_count_ = 0;
  std::uint32_t read_ = 0;
};

// Corpus file, magic "SQC1": interest centroids and pin records
// (u32 interest_id, f32 popularity, f32 embedding[d_pin]).
void write_corpus(const Corpus& corpus, const std::string& path);
Corpus read_corpus(const std::string& path);

}  // namespace seqrec
