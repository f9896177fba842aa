#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "hem3d/json_io.hpp"
#include "support.hpp"

using namespace hem3d;
using namespace testsupport;

TEST_CASE("design JSON round-trip is lossless") {
  const Design d = build_hem3d_default(m3d_preset(), 17);
  const ordered_json j = design_to_json(d);
  const Design back = design_from_json(j);
  CHECK(back == d);
  CHECK(design_to_json(back) == j);

  CHECK(j.at("tiles").size() == 64);
  CHECK(j.at("links").size() == 144);
  // Links serialize in canonical sorted order.
  auto prev = j.at("links")[0];
  for (std::size_t i = 1; i < j.at("links").size(); ++i) {
    CHECK(j.at("links")[i] > prev);
    prev = j.at("links")[i];
  }
}

TEST_CASE("technology JSON round-trip and preset loading") {
  for (const Technology& t : {m3d_preset(), tsv_preset()}) {
    CHECK(technology_from_json(technology_to_json(t)) == t);
  }
  CHECK(load_technology("m3d") == m3d_preset());
  CHECK(load_technology("tsv") == tsv_preset());
  CHECK_THROWS(load_technology("/nonexistent/tech.json"));
}

TEST_CASE("shipped preset files match the built-ins") {
  namespace fs = std::filesystem;
  const fs::path root = fs::path(__FILE__).parent_path().parent_path();
  CHECK(load_technology((root / "data" / "m3d.json").string()) == m3d_preset());
  CHECK(load_technology((root / "data" / "tsv.json").string()) == tsv_preset());
}

TEST_CASE("profile JSON round-trip is lossless") {
  const Design d = toy8();
  const auto [traffic, power] = synth_many_to_few(d, 3, 0.1, 0.2, 5);
  const ordered_json j = profile_to_json(traffic, power);
  const auto [t2, p2] = profile_from_json(j);
  CHECK(t2 == traffic);
  CHECK(p2 == power);
}

TEST_CASE("profile JSON validates window indices") {
  const Design d = toy8();
  const auto [traffic, power] = synth_many_to_few(d, 2, 0.1, 0.2, 5);
  ordered_json j = profile_to_json(traffic, power);

  ordered_json dup = j;
  dup["power"][1]["window"] = 0;  // window 0 listed twice
  CHECK_THROWS_AS(profile_from_json(dup), std::invalid_argument);

  ordered_json out_of_range = j;
  out_of_range["traffic"][1]["window"] = 9;
  CHECK_THROWS_AS(profile_from_json(out_of_range), std::invalid_argument);
}

TEST_CASE("archive JSON round-trip keeps entries, reference, and designs") {
  const Design d = toy8();
  ParetoArchive archive(std::vector<double>{10, 10, 10});
  archive.insert("d00000001", {1.0, 5.0, 3.0});
  archive.insert("d00000002", {2.0, 1.0, 4.0});
  std::map<std::string, Design> designs{{"d00000001", d}, {"d00000002", d}};

  const ordered_json j = archive_to_json(archive, designs);
  auto [back, back_designs] = archive_from_json(j);
  CHECK(back.reference() == archive.reference());
  REQUIRE(back.size() == archive.size());
  CHECK(back.hypervolume() == doctest::Approx(archive.hypervolume()));
  CHECK(back_designs.size() == 2);
  CHECK(back_designs.at("d00000001") == d);
  // Entries are serialized sorted by design id.
  CHECK(j.at("entries")[0].at("design_id") == "d00000001");
  CHECK(j.at("entries")[1].at("design_id") == "d00000002");
}

TEST_CASE("file helpers") {
  const std::string path = "/tmp/hem3d_json_io_test.json";
  write_text_file(path, "{\"x\": 3}\n");
  CHECK(read_json_file(path).at("x") == 3);
  std::remove(path.c_str());
  CHECK_THROWS(read_json_file(path));
}

TEST_CASE("malformed design JSON is rejected") {
  const Design d = toy8();
  ordered_json j = design_to_json(d);
  j["tiles"][0]["kind"] = "dsp";
  CHECK_THROWS(design_from_json(j));
  ordered_json j2 = design_to_json(d);
  j2["links"].push_back({7, 7});
  CHECK_THROWS(design_from_json(j2));
}
