#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thicket/cli.hpp"
#include "thicket/errors.hpp"

using namespace thicket;

namespace {

InputFile fixture(const std::string& name) { return read_input(std::string(THICKET_FIXTURES) + "/" + name); }

std::string value(const Report& r, const std::string& key) {
  const auto v = r.get(key);
  REQUIRE_MESSAGE(v.has_value(), "missing key ", key);
  return *v;
}

int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "thicket");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

std::string temp_path(const std::string& name) {
  return std::string(THICKET_TEST_TMP) + "/" + name;
}

} // namespace

TEST_CASE("report text round-trips and keeps key order") {
  Report r;
  r.set("b", "2");
  r.set("a", "");
  r.set("b", "3");
  const Report back = Report::parse(r.serialize());
  CHECK(back.entries() == r.entries());
  CHECK(r.entries().front().first == "b");
  CHECK_THROWS_AS(Report::parse("a = 1\n"), InputError);
  CHECK_THROWS_AS(Report::parse(std::string(Report::kHeader) + "\nnonsense\n"), InputError);
  CHECK(crc32_hex("123456789") == "cbf43926");
  CHECK(parse_labels(serialize_labels({{"", 3}, {"0", 1}})) == std::map<Vertex, std::size_t>{{"", 3}, {"0", 1}});
  CHECK(parse_labels("leaf").empty());
  CHECK_THROWS_AS(parse_indices("1 -2"), InputError);
}

TEST_CASE("analyze reports the three-singleton fixture") {
  AnalyzeOptions opt;
  opt.nmax = 3;
  const InputFile in = fixture("s1.inc");
  const Report r = cmd_analyze(in, opt);
  CHECK(value(r, "dim") == "1");
  CHECK(value(r, "vc_dim") == "1");
  CHECK(value(r, "dual_dim") == "1");
  CHECK(value(r, "rho") == "1 2 3 3");
  CHECK(value(r, "phi") == "1 2 3 4");
  CHECK(value(r, "sauer_shelah") == "certified");
  CHECK(value(r, "input.format") == "incidence");
  CHECK(verify_report(r, in).empty());
}

TEST_CASE("analyze reports the empty family") {
  AnalyzeOptions opt;
  opt.nmax = 4;
  const Report r = cmd_analyze(fixture("empty_family.inc"), opt);
  CHECK(value(r, "dim") == "-1");
  CHECK(value(r, "rho") == "0 0 0 0 0");
  CHECK(value(r, "sigma") == "undefined");
  CHECK(value(r, "ladder.length") == "0");
}

TEST_CASE("analyze embeds a ladder of the half-graph") {
  const InputFile in = fixture("half_graph3.edges");
  const Report r = cmd_analyze(in, {});
  CHECK(value(r, "input.format") == "edges");
  CHECK(value(r, "strict_ladder.length") == "3");
  CHECK(value(r, "strict_ladder.strict") == "yes");
  CHECK(verify_report(r, in).empty());
}

TEST_CASE("analyze reports exhausted ladder budgets without failing") {
  AnalyzeOptions opt;
  opt.budget = 5;
  const InputFile in = fixture("half_graph4.edges");
  const Report r = cmd_analyze(in, opt);
  CHECK(value(r, "ladder.status") == "budget-exceeded");
  CHECK(value(r, "dim") == "2");
  CHECK(verify_report(r, in).empty());
}

TEST_CASE("reports are byte-for-byte deterministic") {
  const InputFile in = fixture("counterexample.edges");
  CHECK(cmd_analyze(in, {}).serialize() == cmd_analyze(in, {}).serialize());
  const GraphOptions seeded{PivotStrategy::random, 7};
  CHECK(cmd_typetree(in, seeded).report.serialize() == cmd_typetree(in, seeded).report.serialize());
  CHECK(cmd_eh(in, seeded).serialize() == cmd_eh(in, seeded).serialize());
}

TEST_CASE("tampered reports fail to load") {
  const InputFile in = fixture("s1.inc");
  const Report r = cmd_analyze(in, {});
  CHECK_NOTHROW(load_report(r.serialize(), in));

  Report bad_tree = r;
  bad_tree.set("dim.witness", "-:1");
  bad_tree.set("dim", "2");
  CHECK_FALSE(verify_report(bad_tree, in).empty());

  Report bad_ladder = r;
  bad_ladder.set("strict_ladder.sets", "1 0");
  CHECK_THROWS_AS(load_report(bad_ladder.serialize(), in), ConsistencyError);

  Report bad_vc = r;
  bad_vc.set("vc.witness", "9");
  CHECK_FALSE(verify_report(bad_vc, in).empty());

  InputFile changed = in;
  changed.text += "\n";
  CHECK_FALSE(verify_report(r, changed).empty());
}

TEST_CASE("typetree command") {
  const auto k4 = cmd_typetree(fixture("k4.edges"), {});
  CHECK(value(k4.report, "typetree.labels") == "-:0 0:1 00:2 000:3");
  CHECK(k4.dot.find("non") == std::string::npos);
  CHECK(k4.dot.find("n00 -> n000") != std::string::npos);
  const InputFile cex = fixture("counterexample.edges");
  const auto c = cmd_typetree(cex, {});
  CHECK(value(c.report, "typetree.depth") == "2");
  CHECK(verify_report(c.report, cex).empty());
  Report broken = c.report;
  broken.set("typetree.labels", "-:1 0:0 1:2 00:3 10:4");
  CHECK_FALSE(verify_report(broken, cex).empty());
}

TEST_CASE("eh command") {
  const Report k9 = cmd_eh(fixture("k9.edges"), {});
  CHECK(value(k9, "eh.kind") == "clique");
  CHECK(value(k9, "eh.size") == "9");
  const Report e9 = cmd_eh(fixture("edgeless9.edges"), {});
  CHECK(value(e9, "eh.kind") == "independent");
  CHECK(value(e9, "eh.size") == "9");
  const InputFile h4 = fixture("half_graph4.edges");
  const Report h = cmd_eh(h4, {});
  CHECK(verify_report(h, h4).empty());
  Report wrong = h;
  wrong.set("eh.kind", value(h, "eh.kind") == "clique" ? "independent" : "clique");
  CHECK_FALSE(verify_report(wrong, h4).empty());
}

TEST_CASE("lowerbound command") {
  LowerBoundOptions opt;
  opt.structures = {AtomStructure::equality};
  const Report eq = cmd_lowerbound(opt);
  CHECK(value(eq, "table.columns") == "n depth_equality depth_order");
  CHECK(value(eq, "table.row.2") == "2 2 -");
  CHECK(value(eq, "table.row.3") == "3 4 -");
  CHECK(value(eq, "table.row.4") == "4 8 -");
  opt.structures = {AtomStructure::order};
  const Report ord = cmd_lowerbound(opt);
  CHECK(value(ord, "table.row.2") == "2 - 1");
  CHECK(value(ord, "table.row.4") == "4 - 1");
  CHECK_THROWS_AS(cmd_lowerbound({{AtomStructure::order}, 3, 2}), InputError);
}

TEST_CASE("command line front end") {
  std::string out, err;
  const std::string s1 = std::string(THICKET_FIXTURES) + "/s1.inc";
  CHECK(run({"analyze", s1, "--nmax", "3"}, &out) == 0);
  CHECK(out.find("rho = 1 2 3 3") != std::string::npos);

  const std::string report = temp_path("s1.report");
  CHECK(run({"analyze", s1, "--out", report}) == 0);
  CHECK(run({"verify", report}, &out, &err) == 0);
  CHECK(out.find("verified") != std::string::npos);

  const std::string k4 = std::string(THICKET_FIXTURES) + "/k4.edges";
  const std::string tt = temp_path("k4.report");
  CHECK(run({"typetree", k4, "--out", tt}) == 0);
  std::ifstream dot(tt + ".dot");
  CHECK(dot.good());
  CHECK(run({"typetree", k4, "--pivot", "median"}, &out, &err) == 1);
  CHECK(run({"eh", k4, "--pivot", "random", "--seed", "3"}, &out) == 0);

  CHECK(run({"lowerbound", "--structure", "equality", "--nmin", "5", "--nmax", "14"}, &out) == 0);
  CHECK(out.find("table.row.6 = 6 exceeds-cap -") != std::string::npos);
  CHECK(out.find("table.row.14 = 14 exceeds-cap -") != std::string::npos);

  const std::string broken = temp_path("broken.inc");
  std::ofstream(broken) << "3 2\n100\n0a0\n";
  CHECK(run({"analyze", broken}, &out, &err) == 2);
  CHECK(err.find("line 3") != std::string::npos);
  CHECK(run({"analyze", temp_path("missing.inc")}, &out, &err) == 2);
  CHECK(run({"analyze", s1, "--format", "csv"}, &out, &err) == 1);
  CHECK(run({}, &out, &err) == 1);
}
