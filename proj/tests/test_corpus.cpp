#include <gtest/gtest.h>

#include "ayah/corpus.hpp"
#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "test_util.hpp"

using namespace ayah;
using ayah::testing::TempDir;
using ayah::testing::write_text;

TEST(PassageId, ParsesCanonicalForm) {
  auto id = PassageId::parse("2:30-39");
  EXPECT_EQ(id.surah(), 2);
  EXPECT_EQ(id.ayah_start(), 30);
  EXPECT_EQ(id.ayah_end(), 39);
  EXPECT_EQ(id.str(), "2:30-39");

  auto one = PassageId::parse("1:1-1");
  EXPECT_EQ(one.surah(), 1);
  EXPECT_EQ(one.ayah_start(), 1);
  EXPECT_EQ(one.ayah_end(), 1);
}

TEST(PassageId, LeadingZerosCanonicalize) {
  EXPECT_EQ(PassageId::parse("002:030-039").str(), "2:30-39");
  EXPECT_EQ(PassageId::parse("002:030-039"), PassageId(2, 30, 39));
}

TEST(PassageId, RangeErrors) {
  EXPECT_THROW(PassageId::parse("115:1-2"), RangeError);
  EXPECT_THROW(PassageId::parse("0:1-2"), RangeError);
  EXPECT_THROW(PassageId::parse("2:0-2"), RangeError);
  EXPECT_THROW(PassageId::parse("2:5-4"), RangeError);
  EXPECT_THROW(PassageId::parse("2:1-99999999999999"), RangeError);
  EXPECT_THROW(PassageId(115, 1, 1), RangeError);
}

TEST(PassageId, MalformedShapes) {
  for (const char *bad : {"", "2", "2:30", "2-30:39", "2:30-", ":1-2", "a:1-2",
                          "2:3a-4", "2:1-2-3", " 2:1-2", "2:+1-2", "2:1 -2"})
    EXPECT_THROW(PassageId::parse(bad), MalformedId) << bad;
}

TEST(PassageId, FormatParseRoundTrip) {
  for (int s : {1, 2, 57, 114})
    for (int a : {1, 9, 10, 286})
      for (int len : {0, 1, 10}) {
        PassageId id(s, a, a + len);
        EXPECT_EQ(PassageId::parse(id.str()), id);
      }
}

TEST(PassageId, OrdersByCanonicalString) {
  // Lexicographic on the canonical form: "10:..." sorts before "2:..."
  EXPECT_LT(PassageId(10, 1, 1), PassageId(2, 1, 1));
  EXPECT_LT(PassageId(2, 1, 1), PassageId(2, 1, 2));
  EXPECT_LT(PassageId(2, 183, 183), PassageId(2, 30, 30));
}

namespace {

struct CorpusFiles {
  TempDir dir;
  std::filesystem::path ar = dir / "ar.tsv";
  std::filesystem::path en = dir / "en.tsv";
};

} // namespace

TEST(LoadCorpus, AlignedFiles) {
  CorpusFiles f;
  write_text(f.ar, "2:30-39\tنص أ\n1:1-7\tنص ب\n3:1-1\tنص ج\n");
  write_text(f.en, "1:1-7\ttext b\n3:1-1\ttext c\n2:30-39\ttext a\n");
  Corpus c = load_corpus(f.ar, f.en);
  ASSERT_EQ(c.size(), 3u);
  // Arabic file order
  EXPECT_EQ(c.passages()[0].id.str(), "2:30-39");
  EXPECT_EQ(c.passages()[1].id.str(), "1:1-7");
  EXPECT_EQ(c.get("2:30-39").text_en, "text a");
  EXPECT_EQ(c.get(PassageId(1, 1, 7)).text_ar, "نص ب");
}

TEST(LoadCorpus, CommentsBlankLinesAndCrlf) {
  CorpusFiles f;
  write_text(f.ar, "# header\n\n1:1-1\tأ\r\n1:2-2\tب\r\n");
  write_text(f.en, "1:1-1\ta\n# note\n1:2-2\tb\n");
  Corpus c = load_corpus(f.ar, f.en);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.get("1:1-1").text_ar, "أ");
}

TEST(LoadCorpus, MissingEnglishIdIsAlignmentError) {
  CorpusFiles f;
  write_text(f.ar, "1:1-1\tأ\n2:30-39\tب\n");
  write_text(f.en, "1:1-1\ta\n");
  try {
    load_corpus(f.ar, f.en);
    FAIL();
  } catch (const AlignmentError &e) {
    EXPECT_NE(std::string(e.what()).find("2:30-39"), std::string::npos);
  }
}

TEST(LoadCorpus, ExtraEnglishIdIsAlignmentError) {
  CorpusFiles f;
  write_text(f.ar, "1:1-1\tأ\n");
  write_text(f.en, "1:1-1\ta\n1:2-2\tb\n");
  EXPECT_THROW(load_corpus(f.ar, f.en), AlignmentError);
}

TEST(LoadCorpus, DuplicateIdCarriesLine) {
  CorpusFiles f;
  write_text(f.ar, "1:1-1\tأ\n1:2-2\tب\n001:1-1\tج\n");
  write_text(f.en, "1:1-1\ta\n1:2-2\tb\n");
  try {
    load_corpus(f.ar, f.en);
    FAIL();
  } catch (const DuplicateId &e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadCorpus, ParseErrorsCarryLine) {
  CorpusFiles f;
  write_text(f.en, "1:1-1\ta\n");
  write_text(f.ar, "1:1-1\tأ\n1:2-2 missing tab\n");
  try {
    load_corpus(f.ar, f.en);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  write_text(f.ar, "1:1-1\tأ\textra\n");
  EXPECT_THROW(load_corpus(f.ar, f.en), ParseError);
  write_text(f.ar, "bad-id\tأ\n");
  EXPECT_THROW(load_corpus(f.ar, f.en), ParseError);
  write_text(f.ar, "1:1-1\t   \n");
  EXPECT_THROW(load_corpus(f.ar, f.en), ParseError);
}

TEST(LoadCorpus, MissingFileIsIoError) {
  CorpusFiles f;
  write_text(f.en, "1:1-1\ta\n");
  EXPECT_THROW(load_corpus(f.ar, f.en), IoError);
}

TEST(Corpus, LookupAndNotFound) {
  Corpus c({{PassageId(1, 1, 1), "أ", "a"}});
  EXPECT_TRUE(c.contains("1:1-1"));
  EXPECT_FALSE(c.contains("1:2-2"));
  EXPECT_THROW(c.get("1:2-2"), NotFound);
  EXPECT_THROW(c.get(PassageId(9, 9, 9)), NotFound);
}

TEST(Corpus, RejectsDuplicatesAndEmptyText) {
  EXPECT_THROW(Corpus({{PassageId(1, 1, 1), "أ", "a"},
                       {PassageId(1, 1, 1), "ب", "b"}}),
               DuplicateId);
  EXPECT_THROW(Corpus({{PassageId(1, 1, 1), " ", "a"}}), InvariantViolation);
  EXPECT_THROW(Corpus({{PassageId(1, 1, 1), "أ", ""}}), InvariantViolation);
}

TEST(Corpus, TextIsStoredVerbatim) {
  CorpusFiles f;
  const std::string ar = "بِسْمِ  اللَّهِ ـ الرَّحْمَٰنِ ";
  const std::string en = "  In the name of Allah, the Beneficent ";
  write_text(f.ar, "1:1-1\t" + ar + "\n");
  write_text(f.en, "1:1-1\t" + en + "\n");
  Corpus c = load_corpus(f.ar, f.en);
  EXPECT_EQ(c.get("1:1-1").text_ar, ar);
  EXPECT_EQ(c.get("1:1-1").text_en, en);
}

TEST(Corpus, SerializeReloadRoundTrip) {
  Corpus mini = load_corpus(AYAH_MINI_DIR "/corpus_ar.tsv",
                            AYAH_MINI_DIR "/corpus_en.tsv");
  ASSERT_GE(mini.size(), 20u);
  TempDir dir;
  write_corpus(mini, dir / "ar.tsv", dir / "en.tsv");
  EXPECT_EQ(load_corpus(dir / "ar.tsv", dir / "en.tsv"), mini);
}

TEST(AtomicWrite, ReplacesWholeFileAndLeavesNoTemp) {
  TempDir dir;
  auto p = dir / "out.txt";
  io::write_file_atomic(p, "first version, longer\n");
  io::write_file_atomic(p, "second\n");
  EXPECT_EQ(ayah::testing::read_text(p), "second\n");
  std::size_t files = 0;
  for (auto &e : std::filesystem::directory_iterator(dir.path())) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1u);
}

TEST(AtomicWrite, FailureLeavesTargetUntouched) {
  TempDir dir;
  auto p = dir / "missing-subdir" / "out.txt";
  EXPECT_THROW(io::write_file_atomic(p, "x"), IoError);
  EXPECT_FALSE(std::filesystem::exists(p));
}
