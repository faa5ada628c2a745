#include "seqrec/dataset_io.hpp"

#include <cstring>
#include <limits>

namespace seqrec {

namespace {

constexpr std::uint32_t kDatasetVersion = 1;
constexpr std::uint32_t kCorpusVersion = 1;

// Little-endian scalar IO. The casts assume a little-endian host, which is
// checked once at file open/write.
static_assert(std::numeric_limits<float>::is_iec559);

bool host_is_little_endian() {
  const std::uint32_t x = 1;
  unsigned char b;
  std::memcpy(&b, &x, 1);
  return b == 1;
}

class Writer {
 public:
  explicit Writer(const std::string& path) : path_(path) {
    if (!host_is_little_endian())
      throw IoError("big-endian hosts are not supported");
    file_ = std::fopen(path.c_str(), "wb");
    if (!file_) throw IoError("cannot open for writing: " + path);
  }
  ~Writer() {
    if (file_) std::fclose(file_);
  }

  template <typename T>
  void put(T v) {
    if (std::fwrite(&v, sizeof(T), 1, file_) != 1)
      throw IoError("write failed: " + path_);
  }
  void put_bytes(const void* data, std::size_t n) {
    if (n > 0 && std::fwrite(data, 1, n, file_) != n)
      throw IoError("write failed: " + path_);
  }
  void close() {
    if (file_ && std::fclose(file_) != 0) {
      file_ = nullptr;
      throw IoError("close failed: " + path_);
    }
    file_ = nullptr;
  }

 private:
  std::string path_;
  std::FILE* file_ = nullptr;
};

class Reader {
 public:
  explicit Reader(std::FILE* file) : file_(file) {}

  template <typename T>
  T get(std::int64_t record = -1) {
    T v;
    if (std::fread(&v, sizeof(T), 1, file_) != 1)
      throw DecodeError("unexpected end of file", offset(), record);
    return v;
  }
  void get_bytes(void* out, std::size_t n, std::int64_t record = -1) {
    if (n > 0 && std::fread(out, 1, n, file_) != n)
      throw DecodeError("unexpected end of file", offset(), record);
  }
  std::uint64_t offset() const {
    const long p = std::ftell(file_);
    return p < 0 ? 0 : static_cast<std::uint64_t>(p);
  }
  void expect_magic(const char* magic) {
    char buf[4];
    get_bytes(buf, 4);
    if (std::memcmp(buf, magic, 4) != 0)
      throw DecodeError(std::string("bad magic, expected ") + magic, 0);
  }

 private:
  std::FILE* file_;
};

std::FILE* open_read(const std::string& path) {
  if (!host_is_little_endian())
    throw IoError("big-endian hosts are not supported");
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open for reading: " + path);
  return f;
}

UserTimeline read_record(Reader& r, std::int64_t index) {
  UserTimeline tl;
  tl.user_id = r.get<std::uint64_t>(index);
  const std::uint16_t n_mix = r.get<std::uint16_t>(index);
  tl.interest_mixture.reserve(n_mix);
  for (std::uint16_t i = 0; i < n_mix; ++i) {
    const std::uint32_t id = r.get<std::uint32_t>(index);
    const float w = r.get<float>(index);
    tl.interest_mixture.emplace_back(id, w);
  }
  const std::uint32_t n_actions = r.get<std::uint32_t>(index);
  tl.actions.reserve(n_actions);
  for (std::uint32_t i = 0; i < n_actions; ++i) {
    Action a;
    a.pin_id = static_cast<std::int64_t>(r.get<std::uint64_t>(index));
    a.timestamp = r.get<std::int64_t>(index);
    a.type = static_cast<ActionType>(r.get<std::uint8_t>(index));
    a.surface = static_cast<Surface>(r.get<std::uint8_t>(index));
    a.duration = r.get<float>(index);
    tl.actions.push_back(a);
  }
  return tl;
}

void write_record(Writer& w, const UserTimeline& tl) {
  w.put<std::uint64_t>(tl.user_id);
  if (tl.interest_mixture.size() > 0xffff)
    throw IoError("interest mixture too large for record format");
  w.put<std::uint16_t>(static_cast<std::uint16_t>(tl.interest_mixture.size()));
  for (const auto& [id, weight] : tl.interest_mixture) {
    w.put<std::uint32_t>(id);
    w.put<float>(weight);
  }
  w.put<std::uint32_t>(static_cast<std::uint32_t>(tl.actions.size()));
  for (const Action& a : tl.actions) {
    w.put<std::uint64_t>(static_cast<std::uint64_t>(a.pin_id));
    w.put<std::int64_t>(a.timestamp);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(a.type));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(a.surface));
    w.put<float>(a.duration);
  }
}

}  // namespace

void write_dataset(const std::vector<UserTimeline>& timelines,
                   const std::string& path) {
  Writer w(path);
  w.put_bytes("SQR1", 4);
  w.put<std::uint32_t>(kDatasetVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(timelines.size()));
  for (const UserTimeline& tl : timelines) write_record(w, tl);
  w.close();
}

std::vector<UserTimeline> read_dataset(const std::string& path) {
  DatasetReader reader(path);
  std::vector<UserTimeline> out;
  out.reserve(reader.record_count());
  while (auto tl = reader.next()) out.push_back(std::move(*tl));
  return out;
}

DatasetReader::DatasetReader(const std::string& path)
    : file_(open_read(path)) {
  Reader r(file_);
  try {
    r.expect_magic("SQR1");
    const std::uint32_t version = r.get<std::uint32_t>();
    if (version != kDatasetVersion)
      throw DecodeError("unsupported dataset version " +
                            std::to_string(version),
                        r.offset());
    record_count_ = r.get<std::uint32_t>();
  } catch (...) {
    std::fclose(file_);
    file_ = nullptr;
    throw;
  }
}

DatasetReader::~DatasetReader() {
  if (file_) std::fclose(file_);
}

DatasetReader::DatasetReader(DatasetReader&& other) noexcept
    : file_(other.file_),
      record_count_(other.record_count_),
      read_(other.read_) {
  other.file_ = nullptr;
}

DatasetReader& DatasetReader::operator=(DatasetReader&& other) noexcept {
  if (this != &other) {
    if (file_) std::fclose(file_);
    file_ = other.file_;
    record_count_ = other.record_count_;
    read_ = other.read_;
    other.file_ = nullptr;
  }
  return *this;
}

std::optional<UserTimeline> DatasetReader::next() {
  if (read_ >= record_count_) return std::nullopt;
  Reader r(file_);
  UserTimeline tl = read_record(r, static_cast<std::int64_t>(read_));
  ++read_;
  return tl;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  Writer w(path);
  w.put_bytes("SQC1", 4);
  w.put<std::uint32_t>(kCorpusVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(corpus.interests.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(corpus.pins.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(corpus.d_pin));
  for (const Interest& interest : corpus.interests) {
    for (int k = 0; k < corpus.d_pin; ++k)
      w.put<float>(static_cast<float>(interest.centroid[k]));
  }
  for (const Pin& pin : corpus.pins) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(pin.interest_id));
    w.put<float>(static_cast<float>(pin.popularity));
    for (int k = 0; k < corpus.d_pin; ++k)
      w.put<float>(static_cast<float>(pin.embedding[k]));
  }
  w.close();
}

Corpus read_corpus(const std::string& path) {
  std::FILE* f = open_read(path);
  struct Closer {
    std::FILE* f;
    ~Closer() { std::fclose(f); }
  } closer{f};
  Reader r(f);
  r.expect_magic("SQC1");
  const std::uint32_t version = r.get<std::uint32_t>();
  if (version != kCorpusVersion)
    throw DecodeError("unsupported corpus version " + std::to_string(version),
                      r.offset());
  const std::uint32_t n_interests = r.get<std::uint32_t>();
  const std::uint32_t n_pins = r.get<std::uint32_t>();
  const std::uint32_t d_pin = r.get<std::uint32_t>();

  Corpus corpus;
  corpus.d_pin = static_cast<int>(d_pin);
  corpus.interests.reserve(n_interests);
  for (std::uint32_t i = 0; i < n_interests; ++i) {
    Interest interest;
    interest.id = static_cast<int>(i);
    interest.centroid.resize(d_pin);
    for (std::uint32_t k = 0; k < d_pin; ++k)
      interest.centroid[k] = r.get<float>(static_cast<std::int64_t>(i));
    corpus.interests.push_back(std::move(interest));
  }
  corpus.pins.reserve(n_pins);
  for (std::uint32_t i = 0; i < n_pins; ++i) {
    Pin pin;
    pin.id = static_cast<std::int64_t>(i);
    pin.interest_id =
        static_cast<int>(r.get<std::uint32_t>(static_cast<std::int64_t>(i)));
    pin.popularity = r.get<float>(static_cast<std::int64_t>(i));
    pin.embedding.resize(d_pin);
    for (std::uint32_t k = 0; k < d_pin; ++k)
      pin.embedding[k] = r.get<float>(static_cast<std::int64_t>(i));
    corpus.pins.push_back(std::move(pin));
  }
  return corpus;
}

}  // namespace seqrec
