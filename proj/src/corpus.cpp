#include "ayah/corpus.hpp"

#include <charconv>
#include <optional>
#include <unordered_set>

#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "ayah/text.hpp"

namespace ayah {

namespace {

void check_range(int surah, int start, int end, std::string_view shown) {
  if (surah < 1 || surah > PassageId::kMaxSurah)
    throw RangeError("passage id \"" + std::string(shown) +
                     "\": surah must be in [1,114]");
  if (start < 1)
    throw RangeError("passage id \"" + std::string(shown) +
                     "\": ayah_start must be >= 1");
  if (start > end)
    throw RangeError("passage id \"" + std::string(shown) +
                     "\": ayah_start exceeds ayah_end");
}

int parse_number(std::string_view field, std::string_view whole) {
  if (field.empty())
    throw MalformedId("passage id \"" + std::string(whole) +
                      "\" is not of the form S:A-B");
  for (char c : field)
    if (c < '0' || c > '9')
      throw MalformedId("passage id \"" + std::string(whole) +
                        "\" is not of the form S:A-B");
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   value);
  if (ec == std::errc::result_out_of_range)
    throw RangeError("passage id \"" + std::string(whole) +
                     "\": number out of range");
  (void)ptr;
  return value;
}

} // namespace

PassageId::PassageId(int surah, int ayah_start, int ayah_end)
    : surah_(surah), ayah_start_(ayah_start), ayah_end_(ayah_end) {
  canonical_ = std::to_string(surah) + ":" + std::to_string(ayah_start) + "-" +
               std::to_string(ayah_end);
  check_range(surah, ayah_start, ayah_end, canonical_);
}

PassageId PassageId::parse(std::string_view s) {
  auto colon = s.find(':');
  auto dash = s.find('-', colon == std::string_view::npos ? 0 : colon);
  if (s.empty() || colon == std::string_view::npos ||
      dash == std::string_view::npos)
    throw MalformedId("passage id \"" + std::string(s) +
                      "\" is not of the form S:A-B");
  int surah = parse_number(s.substr(0, colon), s);
  int start = parse_number(s.substr(colon + 1, dash - colon - 1), s);
  int end = parse_number(s.substr(dash + 1), s);
  check_range(surah, start, end, s);
  return PassageId(surah, start, end);
}

Corpus::Corpus(std::vector<Passage> passages) : passages_(std::move(passages)) {
  index_.reserve(passages_.size());
  for (std::size_t i = 0; i < passages_.size(); ++i) {
    const auto &p = passages_[i];
    if (text::trim(p.text_ar).empty() || text::trim(p.text_en).empty())
      throw InvariantViolation("passage " + p.id.str() + " has empty text");
    if (!index_.emplace(p.id.str(), i).second)
      throw DuplicateId("duplicate passage id " + p.id.str());
  }
}

bool Corpus::contains(const PassageId &id) const {
  return index_.contains(id.str());
}

bool Corpus::contains(std::string_view id) const {
  return index_.contains(std::string(id));
}

const Passage &Corpus::get(const PassageId &id) const { return get(id.str()); }

const Passage &Corpus::get(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    throw NotFound("passage " + std::string(id) + " not in corpus");
  return passages_[it->second];
}

std::vector<CorpusRecord> read_corpus_tsv(const std::filesystem::path &path) {
  const auto lines = io::read_lines(path);
  const std::string where = path.string();
  std::vector<CorpusRecord> records;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string &line = lines[i];
    if (line.empty() || line.front() == '#')
      continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2)
      throw ParseError(where + ":" + std::to_string(line_no) +
                           ": expected 2 tab-separated fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    std::optional<PassageId> id;
    try {
      id = PassageId::parse(fields[0]);
    } catch (const Error &e) {
      throw ParseError(where + ":" + std::to_string(line_no) + ": " + e.what(),
                       line_no);
    }
    if (text::trim(fields[1]).empty())
      throw ParseError(where + ":" + std::to_string(line_no) +
                           ": empty passage text",
                       line_no);
    auto [it, inserted] = seen.emplace(id->str(), line_no);
    if (!inserted)
      throw DuplicateId(where + ":" + std::to_string(line_no) +
                            ": duplicate passage id " + id->str() +
                            " (first seen on line " +
                            std::to_string(it->second) + ")",
                        line_no);
    records.push_back({*id, std::string(fields[1]), line_no});
  }
  return records;
}

Corpus load_corpus(const std::filesystem::path &ar_path,
                   const std::filesystem::path &en_path) {
  auto ar = read_corpus_tsv(ar_path);
  auto en = read_corpus_tsv(en_path);
  std::unordered_map<std::string, std::size_t> en_index;
  for (std::size_t i = 0; i < en.size(); ++i)
    en_index.emplace(en[i].id.str(), i);

  std::vector<Passage> passages;
  passages.reserve(ar.size());
  std::unordered_set<std::string> matched;
  for (auto &rec : ar) {
    auto it = en_index.find(rec.id.str());
    if (it == en_index.end())
      throw AlignmentError("passage id " + rec.id.str() + " present in \"" +
                           ar_path.string() + "\" but missing from \"" +
                           en_path.string() + "\"");
    matched.insert(rec.id.str());
    passages.push_back({rec.id, std::move(rec.text),
                        std::move(en[it->second].text)});
  }
  for (const auto &rec : en)
    if (!matched.contains(rec.id.str()))
      throw AlignmentError("passage id " + rec.id.str() + " present in \"" +
                           en_path.string() + "\" but missing from \"" +
                           ar_path.string() + "\"");
  return Corpus(std::move(passages));
}

std::string format_corpus_tsv(const Corpus &corpus, bool arabic) {
  std::string out;
  for (const auto &p : corpus) {
    out += p.id.str();
    out += '\t';
    out += arabic ? p.text_ar : p.text_en;
    out += '\n';
  }
  return out;
}

void write_corpus(const Corpus &corpus, const std::filesystem::path &ar_path,
                  const std::filesystem::path &en_path) {
  io::write_file_atomic(ar_path, format_corpus_tsv(corpus, true));
  io::write_file_atomic(en_path, format_corpus_tsv(corpus, false));
}

} // namespace ayah
