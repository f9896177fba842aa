#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hem3d/routing.hpp"
#include "support.hpp"

using namespace hem3d;
using namespace testsupport;

TEST_CASE("hop counts match an independent BFS oracle") {
  GridSpec g{2, 2, 2};
  TileMix mix{1, 1, 6};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Design d = build_design(g, mix, tsv_preset(), seed);
    const RoutingTable table = compute_routes(d, tsv_preset());
    for (int i = 0; i < d.tile_count(); ++i) {
      const std::vector<int> oracle = bfs_hops(d, i);
      for (int j = 0; j < d.tile_count(); ++j) CHECK(table.h(i, j) == oracle[j]);
    }
  }
}

TEST_CASE("hops and distances are symmetric, paths reverse") {
  const Design d = build_hem3d_default(m3d_preset(), 5);
  const RoutingTable table = compute_routes(d, m3d_preset());
  for (int i = 0; i < d.tile_count(); ++i) {
    for (int j = i + 1; j < d.tile_count(); ++j) {
      CHECK(table.h(i, j) == table.h(j, i));
      CHECK(table.dist(i, j) == doctest::Approx(table.dist(j, i)));
      std::vector<int> fwd = table.path(i, j);
      std::vector<int> rev = table.path(j, i);
      std::reverse(rev.begin(), rev.end());
      CHECK(fwd == rev);
    }
  }
}

TEST_CASE("paths traverse real links and have consistent length") {
  const Design d = build_hem3d_default(tsv_preset(), 6);
  const Technology tech = tsv_preset();
  const RoutingTable table = compute_routes(d, tech);
  for (int i = 0; i < d.tile_count(); ++i) {
    for (int j = 0; j < d.tile_count(); ++j) {
      if (i == j) {
        CHECK(table.h(i, j) == 0);
        continue;
      }
      const std::vector<int> p = table.path(i, j);
      REQUIRE(!p.empty());
      CHECK(p.front() == i);
      CHECK(p.back() == j);
      CHECK(static_cast<int>(p.size()) == table.h(i, j) + 1);
      double len = 0.0;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        CHECK(d.has_link(p[k], p[k + 1]));
        len += link_length_mm(d, tech, p[k], p[k + 1]);
      }
      CHECK(len == doctest::Approx(table.dist(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("triangle inequality on hop counts") {
  const Design d = build_hem3d_default(tsv_preset(), 9);
  const RoutingTable table = compute_routes(d, tsv_preset());
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int i = rng.range(0, d.tile_count());
    const int j = rng.range(0, d.tile_count());
    const int k = rng.range(0, d.tile_count());
    CHECK(table.h(i, k) <= table.h(i, j) + table.h(j, k));
  }
}

TEST_CASE("adding a link never increases any hop count") {
  Rng rng(23);
  GridSpec g{2, 2, 2};
  TileMix mix{1, 1, 6};
  for (int trial = 0; trial < 200; ++trial) {
    Design d = build_design(g, mix, tsv_preset(), rng.next());
    const RoutingTable before = compute_routes(d, tsv_preset());
    int a = rng.range(0, d.tile_count());
    int b = rng.range(0, d.tile_count());
    if (a == b || d.has_link(std::min(a, b), std::max(a, b))) continue;
    d.links.emplace_back(std::min(a, b), std::max(a, b));
    d.sort_links();
    const RoutingTable after = compute_routes(d, tsv_preset());
    for (int i = 0; i < d.tile_count(); ++i)
      for (int j = 0; j < d.tile_count(); ++j)
        CHECK(after.h(i, j) <= before.h(i, j));
  }
}

TEST_CASE("single 2mm link costs 1.0 cycle at 0.5 cycles/mm") {
  GridSpec g{1, 1, 2};
  g.cell_pitch_mm = 2.0;
  Design d = mesh_design(g, {TileKind::Cpu, TileKind::Llc});
  Technology tech = plain_tech();  // link_delay_per_mm = 0.5, footprint 1
  const RoutingTable table = compute_routes(d, tech);
  CHECK(table.dist(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(link_delay(tech, 0, 1, table) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distances scale with the footprint on a single tier") {
  GridSpec g{1, 2, 4};
  Design d = mesh_design(g, std::vector<TileKind>(8, TileKind::Gpu));
  const Technology tsv = tsv_preset();
  const Technology m3d = m3d_preset();
  const RoutingTable a = compute_routes(d, tsv);
  const RoutingTable b = compute_routes(d, m3d);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(b.dist(i, j) ==
            doctest::Approx(a.dist(i, j) * m3d.tile_footprint_scale)
                .epsilon(1e-12));
}

TEST_CASE("routing is deterministic and rejects disconnected graphs") {
  const Design d = build_hem3d_default(tsv_preset(), 12);
  const RoutingTable a = compute_routes(d, tsv_preset());
  const RoutingTable b = compute_routes(d, tsv_preset());
  CHECK(a.hops == b.hops);
  CHECK(a.fwd_paths == b.fwd_paths);

  Design broken = toy8();
  std::erase_if(broken.links, [](const std::pair<int, int>& l) {
    return l.first == 0 || l.second == 0;
  });
  CHECK_THROWS_AS(compute_routes(broken, tsv_preset()), std::invalid_argument);
}

TEST_CASE("route dump is well formed") {
  const Design d = toy8();
  const RoutingTable table = compute_routes(d, tsv_preset());
  std::ostringstream out;
  dump_routes_csv(out, table);
  const std::string text = out.str();
  CHECK(text.rfind("src,dst,hops,dist_mm,path", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 * 7);
}
