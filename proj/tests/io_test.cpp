#include <gtest/gtest.h>

#include "copeland/cli.hpp"
#include "test_support.hpp"

namespace copeland {
namespace {

using testing::e_cyc;
using testing::letters;
using testing::order;

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::UnknownCandidate;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ParseElection, Examples) {
  const auto e = io::parse_election("candidates: a b\norder 2: a > b");
  EXPECT_EQ(e, Election(letters(2), {order({0, 1}, 2)}));

  const auto t = io::parse_election("candidates: a b c\ntable 1: a>b, b>c, c>a");
  ASSERT_EQ(t.ballots().size(), 1u);
  EXPECT_FALSE(t.ballots()[0].is_linear());
  EXPECT_EQ(t.ballots()[0].prefs(), (std::vector<std::uint8_t>{1, 0, 1}));

  EXPECT_EQ(code_of([] { io::parse_election("order 1: a > a"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([] { io::parse_election("candidates: a\norder 1: a > a"); }), Errc::SyntaxError);
}

TEST(ParseElection, CommentsBlankLinesAndHugeCounts) {
  const auto e = io::parse_election(
      "# cycle\n\ncandidates: a b c   # three\n"
      "order 123456789012345678901234567890: a > b > c\n  \n");
  EXPECT_EQ(e.ballots()[0].multiplicity(), BigInt("123456789012345678901234567890"));
}

TEST(ParseElection, ErrorsNameTheLine) {
  const std::string base = "candidates: a b c\n# note\n";
  EXPECT_EQ(code_of([&] { io::parse_election("candidates: a b a"); }), Errc::DuplicateCandidate);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "table 1: a>b, b>c"); }), Errc::IncompleteTable);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "table 1: a>b, b>c, a>b"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "order 1: a > b > z"); }), Errc::UnknownCandidate);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "order 0: a > b > c"); }), Errc::BadMultiplicity);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "order -1: a > b > c"); }), Errc::BadMultiplicity);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "order 1: a > b"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "vote 1: a > b > c"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([&] { io::parse_election(base + "order 1 a > b > c"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([&] { io::parse_election(""); }), Errc::SyntaxError);
  EXPECT_NE(message_of([&] { io::parse_election(base + "order 1: a > b > z"); }).find("line 3"), std::string::npos);
  EXPECT_NE(message_of([&] { io::parse_election(base + "table 1: a>b"); }).find("line 3"), std::string::npos);
}

TEST(ParseElection, RoundTripIsByteStable) {
  std::mt19937_64 rng(3);
  for (int r = 0; r < 200; ++r) {
    const std::size_t n = rng() % 6;
    std::vector<Ballot> bs;
    for (std::size_t v = 0, m = rng() % 5; v < m; ++v) {
      BigInt mult = BigInt(1 + rng() % 1000) << (rng() % 80);
      bs.push_back(rng() & 1 ? testing::random_table(rng, n, mult) : testing::random_linear(rng, n, mult));
    }
    const Election e(letters(n), bs);
    const auto text = io::serialize_election(e);
    const auto back = io::parse_election(text);
    EXPECT_EQ(back, e);
    EXPECT_EQ(io::serialize_election(back), text);
  }
  EXPECT_EQ(io::serialize_election(e_cyc()), "candidates: a b c\norder 1: a > b > c\norder 1: b > c > a\norder 1: c > a > b\n");
}

TEST(ParseGraph, Examples) {
  EXPECT_EQ(io::parse_graph("graph: 3\nedge: 1 2\nedge: 2 3"), Graph(3, {{1, 2}, {2, 3}}));
  EXPECT_EQ(code_of([] { io::parse_graph("graph: 2\nedge: 1 1"); }), Errc::BadVertex);
  EXPECT_EQ(io::parse_graph("graph: 0"), Graph(0));
  EXPECT_EQ(code_of([] { io::parse_graph("graph: 2\nedge: 1 3"); }), Errc::BadVertex);
  EXPECT_EQ(code_of([] { io::parse_graph("graph: 3\nedge: 1 2\nedge: 2 1"); }), Errc::DuplicateEdge);
  EXPECT_EQ(code_of([] { io::parse_graph("edge: 1 2"); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([] { io::parse_graph("graph: 3\nedge: 1"); }), Errc::SyntaxError);
  EXPECT_NE(message_of([] { io::parse_graph("graph: 3\n\nedge: 1 2\nedge: 2 1"); }).find("line 4"), std::string::npos);
  for (const auto& g : all_labeled_graphs(4)) EXPECT_EQ(io::parse_graph(io::serialize_graph(g)), g);
}

TEST(Goals, RoundTrip) {
  for (const char* text : {"winner:p", "unique:p", "notwinner:p", "notunique:p", "order:a<b,b<=c,a=b", "scores:a=4,b=2",
                           "dominate:a,b>c,d"}) {
    EXPECT_EQ(io::serialize_goal(io::parse_goal(text)), text);
  }
  EXPECT_THROW(io::parse_goal("winner"), Error);
  EXPECT_THROW(io::parse_goal("best:p"), Error);
  EXPECT_THROW(io::parse_goal("order:a>b"), Error);
  EXPECT_THROW(io::parse_goal("dominate:a"), Error);
  EXPECT_THROW(io::serialize_goal(TablePredicate{}), Error);
}

TEST(Witnesses, RoundTrip) {
  const auto names = letters(3);
  const std::vector<Witness> ws{
      AddedCandidates{{"a", "c"}},
      DeletedCandidates{},
      PartitionOfCandidates{{"a"}, {"b", "c"}},
      AddedVoters{{0, 2}},
      DeletedVoters{{BigInt(1) << 70}},
      PartitionOfVoters{{1, 0, 3}},
      BribedBallots{{{0, order({2, 1, 0})}, {2, Ballot::table({1, 0, 1})}}},
      Flips{{{1, 2, 0, 3}, {0, 0, 1, 1}}},
  };
  for (const auto& w : ws) {
    const auto text = io::serialize_witness(w, names);
    EXPECT_EQ(io::parse_witness(text, names), w) << text;
  }
  EXPECT_EQ(io::serialize_witness(DeletedCandidates{}, names), "delete:\n");
  EXPECT_EQ(io::serialize_witness(PartitionOfCandidates{{"a"}, {"b", "c"}}, names), "first: a\nsecond: b c\n");
}

TEST(Manifest, RoundTrip) {
  io::Manifest m;
  m.problem = "CCACu";
  m.alpha = Alpha(1, 3);
  m.model = WinnerModel::Unique;
  m.p = "p";
  m.k = BigInt(2);
  m.spoilers = "spoilers.txt";
  const auto back = io::parse_manifest(io::serialize_manifest(m));
  EXPECT_EQ(io::serialize_manifest(back), io::serialize_manifest(m));
  EXPECT_THROW(io::parse_manifest("problem: CCDC\n"), Error);
  EXPECT_THROW(io::parse_manifest("problem: CCDC\nalpha: 1/2\np: p\ncolour: red\n"), Error);
}

// ---- run_command -------------------------------------------------------------

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("copeland_io_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    io::write_file(dir_ / name, text);
    return (dir_ / name).string();
  }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = cli::run_command(args, o, e);
    out_ = o.str();
    err_ = e.str();
    return code;
  }

  std::filesystem::path dir_;
  std::string out_, err_;
};

TEST_F(Cli, ScoreAndWinners) {
  const auto e = file("e_cyc.cop", io::serialize_election(e_cyc()));
  EXPECT_EQ(run({"winners", "--alpha", "1/2", "--election", e, "--model", "nonunique"}), 0);
  EXPECT_EQ(out_, "a b c\n");
  EXPECT_EQ(run({"winners", "--alpha", "1/2", "--election", e, "--model", "unique"}), 0);
  EXPECT_EQ(out_, "\n");
  EXPECT_EQ(run({"score", "--alpha", "1/3", "--election", e}), 0);
  EXPECT_EQ(out_, "a\t3/3\nb\t3/3\nc\t3/3\n");
}

TEST_F(Cli, GreedyDeletesD) {
  const auto e = file("cycle.cop", "candidates: p c d\norder 1: p > d > c\norder 1: d > c > p\norder 1: c > p > d\n");
  EXPECT_EQ(run({"solve", "--problem", "DCDC", "--method", "greedy", "--alpha", "1/2", "--election", e, "--k", "1",
                 "--p", "p"}),
            0);
  EXPECT_EQ(out_, "YES\ndelete: d\n");
  EXPECT_EQ(run({"solve", "--problem", "DCDC", "--method", "exact", "--alpha", "1/2", "--election", e, "--k", "0",
                 "--p", "p"}),
            0);
  EXPECT_EQ(out_, "NO\n");
}

TEST_F(Cli, BriberyCodes) {
  const auto e = file("t.cop", "candidates: a b\ntable 3: a>b\n");
  const std::vector<std::string> base{"solve", "--alpha", "1/2", "--election", e, "--p", "a", "--k", "2"};
  auto with = [&](std::vector<std::string> extra) {
    auto v = base;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  EXPECT_EQ(run(with({"--problem", "destructive-microbribery", "--method", "dp"})), 0);
  EXPECT_EQ(out_.substr(0, 4), "YES\n");
  const auto w = io::parse_witness(out_.substr(4), letters(2));
  EXPECT_TRUE(check_bribery_witness(io::parse_election(io::read_file(e)), Alpha(1, 2), PrecludeWinner{"a"}, 2, w));
  EXPECT_EQ(run(with({"--problem", "destructive-bribery"})), 0);
  EXPECT_EQ(out_.substr(0, 4), "YES\n");
  EXPECT_EQ(run(with({"--problem", "bribery", "--method", "dp"})), 2);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  const auto e = file("e_cyc.cop", io::serialize_election(e_cyc()));
  const auto bad = file("bad.cop", "candidates: a b\norder 1: a > c\n");
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"score", "--alpha", "3/2", "--election", e}), 2);
  EXPECT_EQ(run({"score", "--alpha", "1/2", "--election", bad}), 2);
  EXPECT_NE(err_.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"score", "--alpha", "1/2", "--election", (dir_ / "missing.cop").string()}), 2);
  EXPECT_EQ(run({"solve", "--problem", "CCDC", "--alpha", "1/2", "--election", e, "--p", "a"}), 2);
  EXPECT_EQ(run({"solve", "--problem", "CCDC", "--method", "greedy", "--alpha", "1/2", "--election", e, "--p", "a",
                 "--k", "1"}),
            2);
  EXPECT_EQ(run({"solve", "--problem", "CCDV", "--method", "fpt", "--bound", "BC_2", "--alpha", "1/2", "--election",
                 e, "--p", "a", "--k", "1"}),
            2);
}

TEST_F(Cli, CcacuAlphaZeroRejectedAtReduce) {
  const auto g = file("p3.graph", "graph: 3\nedge: 1 2\nedge: 2 3\n");
  EXPECT_EQ(run({"reduce", "--to", "CCACu", "--graph", g, "--k", "1", "--alpha", "0/1", "--out",
                 (dir_ / "out").string()}),
            2);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "out" / "instance.txt"));
}

TEST_F(Cli, ReduceThenSolveInstance) {
  const auto g = file("k2.graph", "graph: 2\nedge: 1 2\n");
  const auto out = (dir_ / "ccacu").string();
  ASSERT_EQ(run({"reduce", "--to", "CCACu", "--graph", g, "--k", "1", "--alpha", "1/2", "--out", out}), 0) << err_;
  ASSERT_EQ(run({"solve", "--instance", out + "/instance.txt"}), 0) << err_;
  EXPECT_EQ(out_.substr(0, 4), "YES\n");
  ASSERT_EQ(run({"verify-reduction", "--to", "CCDC", "--graph", g, "--k", "0", "--alpha", "1/2"}), 0) << err_;
  EXPECT_EQ(out_, "answer: NO\nvertex-cover: NO\nagree: yes\nmethod: exact\n");
}

TEST_F(Cli, BudgetExceededExitsThree) {
  // 40 unit voters of one line: deletion search over 2^40 subsets refused up front.
  std::string text = "candidates: a b c\n";
  for (int i = 0; i < 70; ++i) text += std::string(i % 2 ? "order 1: b > a > c\n" : "order 1: c > b > a\n");
  const auto e = file("wide.cop", text);
  EXPECT_EQ(run({"solve", "--problem", "CCDV", "--alpha", "1/2", "--election", e, "--p", "a", "--k", "35"}), 3)
      << out_ << err_;
}

TEST_F(Cli, QuickSelftest) {
  EXPECT_EQ(run({"selftest", "--quick"}), 0) << out_;
  EXPECT_EQ(std::count(out_.begin(), out_.end(), '\n'), 8);
}

}  // namespace
}  // namespace copeland
