#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "farmroute/errors.hpp"
#include "farmroute/instances.hpp"
#include "oracles.hpp"

using namespace farmroute;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "farmroute_test_instances" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void check_invariants(const FarmInstance& inst, std::size_t n) {
  REQUIRE(inst.size() == n);
  REQUIRE(inst.spacing > 0.0);
  for (const Point& p : inst.nodes) {
    CHECK(contains(inst.polygon, p));
    const double a = (p.x - inst.lattice_origin.x) / inst.spacing;
    const double b = (p.y - inst.lattice_origin.y) / inst.spacing;
    CHECK(std::abs(a - std::round(a)) * inst.spacing < 1e-9);
    CHECK(std::abs(b - std::round(b)) * inst.spacing < 1e-9);
  }
  for (std::size_t i = 1; i < inst.size(); ++i) {
    const Point a = inst.nodes[i - 1], b = inst.nodes[i];
    CHECK((a.y < b.y || (a.y == b.y && a.x < b.x)));
  }
  double closest = 1e300;
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::size_t j = i + 1; j < inst.size(); ++j)
      closest = std::min(closest, oracle::dist(inst.nodes[i], inst.nodes[j]));
  CHECK(closest >= inst.spacing - 1e-9);
}

bool on_boundary(const ConvexPolygon& poly, Point p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i), b = poly.vertex(i + 1);
    if (std::abs(orient(a, b, p)) <= 1e-9 * distance(a, b) && contains(poly, p)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("generate 100 nodes satisfies the instance invariants") {
  const FarmInstance inst = generate({.node_count = 100, .seed = 7});
  check_invariants(inst, 100);
  CHECK(on_boundary(inst.polygon, inst.depot));
  CHECK(inst.seed == 7);
}

TEST_CASE("generate 700 nodes fills the lattice to within two of 875 before thinning") {
  const FarmInstance inst = generate({.node_count = 700, .seed = 7});
  check_invariants(inst, 700);
  const std::size_t lattice = count_lattice_points(inst.polygon, inst.lattice_origin, inst.spacing);
  CHECK(lattice >= 873);
  CHECK(lattice <= 877);
}

TEST_CASE("density property across sizes and seeds") {
  for (const std::size_t n : {10, 50, 100, 200, 300, 500, 700}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const FarmInstance inst = generate({.node_count = n, .seed = seed});
      REQUIRE(inst.size() == n);
      const auto lattice =
          static_cast<double>(count_lattice_points(inst.polygon, inst.lattice_origin, inst.spacing));
      CHECK(std::abs(std::round(lattice * 0.8) - static_cast<double>(n)) <= 2.0);
      CHECK(on_boundary(inst.polygon, inst.depot));
    }
  }
}

TEST_CASE("generation is a pure function of the config") {
  const GeneratorConfig cfg{.node_count = 300, .seed = 12345};
  CHECK(to_text(generate(cfg)) == to_text(generate(cfg)));
  CHECK(to_text(generate(cfg)) != to_text(generate({.node_count = 300, .seed = 12346})));
}

TEST_CASE("generate rejects impossible configs") {
  CHECK_THROWS_AS(generate({.node_count = 2, .seed = 1}), GenerationFailure);
  CHECK_THROWS_AS(generate({.node_count = 10, .seed = 1, .deletion_fraction = 1.0}), GenerationFailure);
}

TEST_CASE("place_depot picks the lowest edge midpoint") {
  FarmInstance inst;
  inst.polygon = ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(place_depot(inst).depot == Point{0.5, 0.0});

  inst.polygon = ConvexPolygon::from_ccw({{0, 0}, {4, 0}, {1, 3}});
  CHECK(place_depot(inst).depot == Point{2.0, 0.0});

  // both lower edges have midpoints at y = 0.5; the leftmost wins
  inst.polygon = ConvexPolygon::from_ccw({{1, 0}, {2, 1}, {1, 2}, {0, 1}});
  CHECK(place_depot(inst).depot == Point{0.5, 0.5});
}

TEST_CASE("save/load round trip is exact") {
  const fs::path dir = scratch("roundtrip");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FarmInstance inst = generate({.node_count = 10 + 13 * (seed % 7), .seed = seed});
    const fs::path f = dir / "i.farm";
    save(inst, f);
    const FarmInstance back = load(f);
    CHECK(back == inst);
  }
}

TEST_CASE("loader diagnostics") {
  const std::string good = to_text(generate({.node_count = 20, .seed = 3}));

  SUBCASE("truncated file") {
    const std::string cut = good.substr(0, good.size() / 2);
    CHECK_THROWS_AS(parse_instance(cut), FormatError);
  }
  SUBCASE("unknown version") {
    std::string v2 = good;
    v2.replace(0, 9, "version 2");
    CHECK_THROWS_AS(parse_instance(v2), VersionError);
  }
  SUBCASE("node outside the polygon names the node") {
    FarmInstance inst = parse_instance(good);
    inst.nodes[4] = {5.0, 5.0};
    try {
      parse_instance(to_text(inst));
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.field() == "node 4");
      CHECK(e.line() > 0);
    }
  }
  SUBCASE("bad number") {
    std::string bad = good;
    bad.replace(bad.find("spacing ") + 8, 3, "abc");
    CHECK_THROWS_AS(parse_instance(bad), FormatError);
  }
}

TEST_CASE("make_instance wraps arbitrary points") {
  const FarmInstance inst = make_instance("adhoc", {0, 0}, {{1, 0}, {2, 0}, {3, 0}});
  CHECK(inst.spacing == 0.0);
  for (const Point& p : inst.nodes) CHECK(contains(inst.polygon, p));
  CHECK(parse_instance(to_text(inst)) == inst);
}

TEST_CASE("generate_dataset writes instances and a manifest") {
  const fs::path dir = scratch("dataset");
  const Manifest m = generate_dataset({10, 20}, 3, 100, dir);
  CHECK(m.entries.size() == 6);
  const Manifest back = load_manifest(dir / "manifest.csv");
  REQUIRE(back.entries.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(back.entries[i].size == (i < 3 ? 10u : 20u));
    CHECK(back.entries[i].seed == 100 + i % 3);
    const FarmInstance inst = load(back.resolve(back.entries[i]));
    CHECK(inst.size() == back.entries[i].size);
    CHECK(inst.seed == back.entries[i].seed);
  }
  const Manifest one = generate_dataset({10}, 1, 1, scratch("smoke"));
  CHECK(one.entries.size() == 1);
  CHECK(load(one.resolve(one.entries[0])).size() == 10);
}

TEST_CASE("generate_dataset names the failing size") {
  try {
    generate_dataset({2}, 1, 5, scratch("fail"));
    FAIL("expected GenerationFailure");
  } catch (const GenerationFailure& e) {
    CHECK(std::string(e.what()).find("size 2 seed 5") != std::string::npos);
  }
}
