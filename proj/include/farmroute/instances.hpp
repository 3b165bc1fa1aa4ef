#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "farmroute/geometry.hpp"

namespace farmroute {

// One synthetic farm: a convex region filled with a thinned square lattice
// of ponds, plus the depot drones launch from.
struct FarmInstance {
  std::string name;
  std::uint64_t seed = 0;
  ConvexPolygon polygon = ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {0, 1}});
  double spacing = 0.0;  // lattice pitch; 0 when unknown
  Point lattice_origin;
  Point depot;
  std::vector<Point> nodes;  // sorted by (y, x)

  std::size_t size() const noexcept { return nodes.size(); }
  friend bool operator==(const FarmInstance&, const FarmInstance&) = default;
};

struct GeneratorConfig {
  std::size_t node_count = 100;
  std::uint64_t seed = 0;
  std::size_t polygon_sample_count = 12;
  double deletion_fraction = 0.20;
};

inline constexpr int kInstanceFormatVersion = 1;

// Deterministic in cfg. Throws GenerationFailure when the lattice pitch cannot
// be bracketed.
FarmInstance generate(const GeneratorConfig& cfg);

// Number of lattice points origin + (a, b) * spacing (a, b >= 0) inside poly.
std::size_t count_lattice_points(const ConvexPolygon& poly, Point origin, double spacing);

// Midpoint of the polygon edge whose midpoint is lowest (ties: leftmost).
FarmInstance place_depot(FarmInstance inst);

// Wraps hand-made coordinates (tests, foreign data) in an instance. The region
// is the bounding box of nodes and depot, widened slightly; spacing stays 0.
FarmInstance make_instance(std::string name, Point depot, std::vector<Point> nodes);

// Canonical (y, x) node order.
void sort_nodes(std::vector<Point>& nodes);

// Text format, coordinates at 17 significant digits. load() enforces the
// instance invariants and throws FormatError / VersionError.
std::string to_text(const FarmInstance& inst);
FarmInstance parse_instance(const std::string& text);
void save(const FarmInstance& inst, const std::filesystem::path& path);
FarmInstance load(const std::filesystem::path& path);

struct ManifestEntry {
  std::filesystem::path path;  // absolute, or relative to the manifest
  std::size_t size = 0;
  std::uint64_t seed = 0;
};

struct Manifest {
  std::filesystem::path location;  // the manifest file itself
  std::vector<ManifestEntry> entries;

  std::filesystem::path resolve(const ManifestEntry& e) const;
};

// Writes count_per_size instances per size (seeds base_seed + index) and a
// manifest.csv into out_dir. Returns the manifest.
Manifest generate_dataset(const std::vector<std::size_t>& sizes, std::size_t count_per_size,
                          std::uint64_t base_seed, const std::filesystem::path& out_dir);

void save_manifest(const Manifest& manifest);
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace farmroute
