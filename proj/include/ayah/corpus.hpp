#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ayah {

/// A contiguous verse range "surah:ayah_start-ayah_end". Ordering is the
/// canonical-string order used for tie-breaking throughout the pipeline.
class PassageId {
public:
  PassageId(int surah, int ayah_start, int ayah_end);

  /// Parses "S:A-B". Throws MalformedId when the shape is wrong and
  /// RangeError when the numbers break the surah/ayah bounds.
  static PassageId parse(std::string_view s);

  int surah() const noexcept { return surah_; }
  int ayah_start() const noexcept { return ayah_start_; }
  int ayah_end() const noexcept { return ayah_end_; }

  const std::string &str() const noexcept { return canonical_; }

  friend bool operator==(const PassageId &a, const PassageId &b) noexcept {
    return a.canonical_ == b.canonical_;
  }
  friend std::strong_ordering operator<=>(const PassageId &a,
                                          const PassageId &b) noexcept {
    return a.canonical_ <=> b.canonical_;
  }

  static constexpr int kMaxSurah = 114;

private:
  int surah_;
  int ayah_start_;
  int ayah_end_;
  std::string canonical_;
};

struct Passage {
  PassageId id;
  std::string text_ar;
  std::string text_en;

  friend bool operator==(const Passage &, const Passage &) = default;
};

/// Immutable after construction; iteration follows source file order.
class Corpus {
public:
  Corpus() = default;
  /// Throws DuplicateId or InvariantViolation (empty text).
  explicit Corpus(std::vector<Passage> passages);

  const std::vector<Passage> &passages() const noexcept { return passages_; }
  std::size_t size() const noexcept { return passages_.size(); }
  bool empty() const noexcept { return passages_.empty(); }

  bool contains(const PassageId &id) const;
  bool contains(std::string_view id) const;

  /// Throws NotFound.
  const Passage &get(const PassageId &id) const;
  const Passage &get(std::string_view id) const;

  auto begin() const noexcept { return passages_.begin(); }
  auto end() const noexcept { return passages_.end(); }

  friend bool operator==(const Corpus &a, const Corpus &b) {
    return a.passages_ == b.passages_;
  }

private:
  std::vector<Passage> passages_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One side of the corpus: `<passage_id>\t<text>` records in file order.
struct CorpusRecord {
  PassageId id;
  std::string text;
  std::size_t line;
};

std::vector<CorpusRecord> read_corpus_tsv(const std::filesystem::path &path);

/// Joins the Arabic and English files on passage id, in Arabic file order.
Corpus load_corpus(const std::filesystem::path &ar_path,
                   const std::filesystem::path &en_path);

std::string format_corpus_tsv(const Corpus &corpus, bool arabic);

void write_corpus(const Corpus &corpus, const std::filesystem::path &ar_path,
                  const std::filesystem::path &en_path);

} // namespace ayah

template <> struct std::hash<ayah::PassageId> {
  std::size_t operator()(const ayah::PassageId &id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
