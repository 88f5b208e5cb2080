#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpc/report_io.hpp"
#include "qpc/session.hpp"

using namespace qpc;
using nlohmann::json;

namespace {
SessionConfig sample_config() {
  SessionConfig c;
  c.users = 3;
  c.bits = 4;
  c.decoys = 2;
  c.seed = 42;
  c.trials = 5;
  return c;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}
}  // namespace

TEST_CASE("config serialization round-trips through json") {
  SessionConfig c = sample_config();
  c.adversary.kind = AdversaryKind::DishonestUser;
  c.adversary.basis_policy = BasisPolicy::AlwaysX;
  c.adversary.actor = 1;
  c.adversary.target_user = 0;
  c.secrets = std::vector<Secret>{Secret::from_value(1, 4), Secret::from_value(2, 4),
                                  Secret::from_value(3, 4)};

  json j = config_to_json(c);
  CHECK(j["users"] == 3);
  CHECK(j["adversary"]["kind"] == "dishonest-user");
  CHECK(j["adversary"]["basis_policy"] == "x");
  CHECK(j["adversary"]["actor"] == 1);
  CHECK(j["adversary"]["target"] == 0);
  CHECK(j["secrets"][0] == "0b0001");

  SessionConfig back = config_from_json(j);
  CHECK(config_to_json(back) == j);

  SessionConfig honest = sample_config();
  json hj = config_to_json(honest);
  CHECK(hj["adversary"]["kind"] == "none");
  CHECK(hj["adversary"]["target"].is_null());
  CHECK(hj["secrets"].is_null());
  CHECK(config_to_json(config_from_json(hj)) == hj);
}

TEST_CASE("run document has the documented shape") {
  SessionConfig c = sample_config();
  TrialsResult result = run_trials(c);
  json doc = run_to_json(c, result, false);

  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["config"]["users"] == 3);
  CHECK(doc["mode"]["id"] == "e");
  CHECK(doc["mode"]["label"] == "(e)");
  CHECK(doc["mode"]["citations"] == json::array({41}));
  CHECK(doc["matrix"].is_array());
  CHECK(doc["matrix"].size() == 3);
  CHECK(doc["matrix"][0][0] == "self");

  const json& metrics = doc["metrics"];
  CHECK(metrics["trials"] == 5);
  CHECK(metrics["aborts"] == 0);
  CHECK(metrics["detection_rate"] == 0.0);
  CHECK(metrics["oracle_disagreements"] == 0);
  CHECK(metrics["compared_bits"] == 4);
  CHECK(metrics["consumed_particles"] == 2 * 3 * 4);
  CHECK(metrics["decoy_particles"] == 3 * 2);
  CHECK(metrics["qubit_efficiency"]["num"] == 1);
  CHECK(metrics["qubit_efficiency"]["den"] == 6);
  CHECK(metrics["zero_decoy_coverage"] == false);
  CHECK(metrics["pair_verdicts"].contains("equal"));
  CHECK(metrics["report_bit_ones"].size() == 4);

  REQUIRE(doc.contains("transcript_digest"));
  CHECK(doc["transcript_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  REQUIRE(doc.contains("trials_digest"));  // present because trials > 1
  CHECK(doc["trials_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  SessionConfig single = sample_config();
  single.trials = 1;
  TrialsResult one = run_trials(single);
  CHECK_FALSE(run_to_json(single, one, false).contains("trials_digest"));
}

TEST_CASE("transcript dump is opt-in") {
  SessionConfig c = sample_config();
  c.trials = 1;
  TrialsResult result = run_trials(c);
  json without = run_to_json(c, result, false);
  CHECK_FALSE(without.contains("transcript"));
  json with = run_to_json(c, result, true);
  REQUIRE(with.contains("transcript"));
  CHECK(with["transcript"].is_array());
  CHECK(with["transcript"].size() == result.first.transcript.messages().size());
}

TEST_CASE("json rendering is byte-stable") {
  SessionConfig c = sample_config();
  TrialsResult a = run_trials(c);
  TrialsResult b = run_trials(c);
  CHECK(render_run_json(c, a, false) == render_run_json(c, b, false));
  CHECK(render_run_json(c, a, false).back() == '\n');
}

TEST_CASE("csv output carries one row per trial and pair") {
  SessionConfig c = sample_config();
  TrialsResult result = run_trials(c);
  std::ostringstream os;
  write_run_csv(os, c, result);
  std::vector<std::string> lines = lines_of(os.str());
  REQUIRE_FALSE(lines.empty());
  CHECK(lines[0] == "trial,i,j,verdict,aborted,detection");
  CHECK(lines.size() == 1u + 5 * 3);  // header + trials * pairs
  CHECK(lines[1].rfind("0,1,2,", 0) == 0);  // users are 1-based in output
}

TEST_CASE("table output pins the protocol mode line") {
  SessionConfig c = sample_config();
  TrialsResult result = run_trials(c);
  std::ostringstream os;
  write_run_table(os, c, result);
  std::string text = os.str();
  CHECK(text.find("mode: (e) scattered preparation, one-way convergent") !=
        std::string::npos);
  CHECK(text.find("fnv1a64:") != std::string::npos);
  CHECK(text.find("P1") != std::string::npos);
}

TEST_CASE("mode display text tracks the descriptor") {
  SessionResult r = run_session(sample_config());
  CHECK(mode_display(r.mode) == "scattered preparation, one-way convergent");
}
