#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "test_files.h"

using reseg::testing::slurp;
using reseg::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const TempDir& dir, const std::string& args) {
  const std::string out = dir.path("stdout"), err = dir.path("stderr");
  const std::string cmd = std::string(RESEG_CLI) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST(Cli, WerOfIdenticalFilesIsZero) {
  TempDir dir;
  const auto ref = dir.file("ref.txt", "Hello, world.\nsecond line\n");
  const auto r = run(dir, "wer " + ref + " " + ref + " --mode np");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "wer\tsubstitutions\tinsertions\tdeletions\tcorrect\tref_len\n"
            "0.000000\t0\t0\t0\t4\t4\n");
}

TEST(Cli, WerModesDiffer) {
  TempDir dir;
  const auto ref = dir.file("ref.txt", "a b.\n");
  const auto hyp = dir.file("hyp.txt", "a b\n");
  EXPECT_NE(run(dir, "wer " + ref + " " + hyp + " --mode np").out.find("\n0.000000"), std::string::npos);
  EXPECT_NE(run(dir, "wer " + ref + " " + hyp + " --mode wp").out.find("\n0.333333"), std::string::npos);
}

TEST(Cli, RecommendAboveThreshold) {
  TempDir dir;
  const auto r = run(dir, "recommend 0.25");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "BT\n");
  EXPECT_EQ(run(dir, "recommend 0.20").out, "ASR\n");
}

TEST(Cli, CorrelateLengthMismatch) {
  TempDir dir;
  const auto a = dir.file("a.scores", "1\n2\n3\n");
  const auto b = dir.file("b.scores", "1\n2\n");
  const auto r = run(dir, "correlate " + a + " " + b);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find('3'), std::string::npos) << r.err;
  EXPECT_NE(r.err.find('2'), std::string::npos) << r.err;
}

TEST(Cli, CorrelateWithShuffledBaseline) {
  TempDir dir;
  const auto m = dir.file("m", "1\n2\n3\n4\n");
  const auto s = dir.file("s", "1\n2\n3\n4\n");
  const auto sh = dir.file("sh", "2\n1\n4\n3\n");
  const auto r = run(dir, "correlate " + m + " " + s + " --shuffled " + sh);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("gap_recovery_pct\t100.000000"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
  TempDir dir;
  EXPECT_EQ(run(dir, "").code, 1);
  EXPECT_EQ(run(dir, "bogus").code, 1);
  EXPECT_EQ(run(dir, "wer only-one").code, 1);
  EXPECT_EQ(run(dir, "wer " + dir.path("nope") + " " + dir.path("nope")).code, 1);
  EXPECT_EQ(run(dir, "--help").code, 0);
}

TEST(Cli, DataErrors) {
  TempDir dir;
  const auto bad = dir.file("bad.txt", "ok\n\xff\n");
  const auto good = dir.file("good.txt", "ok\nfine\n");
  EXPECT_EQ(run(dir, "wer " + good + " " + bad).code, 2);
  EXPECT_EQ(run(dir, "recommend -0.5").code, 2);
}

TEST(Cli, ServiceErrorsExitThree) {
  TempDir dir;
  const auto a = dir.file("a.txt", "x y\n");
  const auto r = run(dir, "cosine-doc " + a + " " + a + " --endpoint 'exec:" +
                              std::string(RESEG_FIXTURE_SERVICE) + " --mode error'");
  EXPECT_EQ(r.code, 3) << r.err;
  const auto ok = run(dir, "cosine-doc " + a + " " + a + " --endpoint 'exec:" +
                               std::string(RESEG_FIXTURE_SERVICE) + "'");
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.out, "metric\tvalue\nsimilarity\t1.000000\n");
}

TEST(Cli, SeededOutputsAreReproducible) {
  TempDir dir;
  std::string text;
  for (int k = 0; k < 300; ++k) text += "w" + std::to_string(k) + (k % 17 == 16 ? "\n" : " ");
  const auto in = dir.file("in.txt", text);
  for (const std::string cmd : {"shuffle", "random-split"}) {
    const auto one = dir.path(cmd + "1"), two = dir.path(cmd + "2");
    ASSERT_EQ(run(dir, cmd + " " + in + " --seed 17 -o " + one).code, 0);
    ASSERT_EQ(run(dir, cmd + " " + in + " --seed 17 -o " + two).code, 0);
    EXPECT_EQ(slurp(one), slurp(two));
    EXPECT_FALSE(slurp(one).empty());
  }
}

TEST(Cli, ResegmentXlrEndToEnd) {
  TempDir dir;
  const auto asr = dir.file("asr.txt", "alpha bravo charlie delta echo foxtrot\n");
  const auto bt = dir.file("bt.txt", "alpha bravo\ncharlie delta echo foxtrot\n");
  const auto out = dir.path("out.txt"), dec = dir.path("dec.tsv");
  const auto r = run(dir, "resegment-xlr --asr " + asr + " --bt " + bt + " --ref " + bt + " -o " +
                              out + " --decisions " + dec);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), "alpha bravo\ncharlie delta echo foxtrot\n");
  EXPECT_EQ(slurp(dec),
            "boundary\told_split\tnew_split\tcross_before\tcross_after\n0\t2\t2\t0\t0\n");
}

TEST(Cli, ManifestRunsJobsInParallel) {
  TempDir dir;
  std::string manifest = "asr\tbt\tref\tout\n";
  for (int k = 0; k < 6; ++k) {
    const std::string n = std::to_string(k);
    const auto asr = dir.file("asr" + n, "one two three four " + n + "\n");
    const auto bt = dir.file("bt" + n, "one two\nthree four " + n + "\n");
    manifest += asr + '\t' + bt + '\t' + bt + '\t' + dir.path("out" + n) + '\n';
  }
  const auto m = dir.file("jobs.tsv", manifest);
  const auto r = run(dir, "-j 3 resegment-xl --manifest " + m);
  ASSERT_EQ(r.code, 0) << r.err;
  for (int k = 0; k < 6; ++k)
    EXPECT_EQ(slurp(dir.path("out" + std::to_string(k))), "one two\nthree four " + std::to_string(k) + "\n");
}

TEST(Cli, SegmentCountMismatchNamesFiles) {
  TempDir dir;
  const auto asr = dir.file("asr.txt", "a b c\n");
  const auto bt = dir.file("bt.txt", "a\nb c\n");
  const auto ref = dir.file("ref.txt", "a b c\n");
  const auto r = run(dir, "resegment-xl --asr " + asr + " --bt " + bt + " --ref " + ref);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bt.txt"), std::string::npos) << r.err;
}

TEST(Cli, CountWins) {
  TempDir dir;
  const auto recs = dir.file("r.tsv",
                             "system\tlang_pair\tasr_wer\tasr_corr\tbt_corr\tbiased\n"
                             "a\ten-de\t0.1\t0.9\t0.8\tfalse\n"
                             "b\ten-de\t0.4\t0.5\t0.6\tfalse\n");
  const auto r = run(dir, "count-wins " + recs);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total\t1\t50.000000\t1\t50.000000\t0"), std::string::npos) << r.out;
}
