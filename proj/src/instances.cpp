#include "farmroute/instances.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "farmroute/errors.hpp"
#include "farmroute/rng.hpp"
#include "text_io.hpp"

namespace farmroute {

namespace {

constexpr int kBisectionIterations = 64;
constexpr std::size_t kLatticeSlack = 2;

struct Box {
  Point lo, hi;
};

Box bounds(std::span<const Point> pts) {
  Box b{pts.front(), pts.front()};
  for (const Point& p : pts) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
  }
  return b;
}

template <typename Fn>
void for_each_lattice_point(const ConvexPolygon& poly, Point origin, double spacing, Fn&& fn) {
  const Box box = bounds(poly.vertices());
  const auto cols = static_cast<long>(std::floor((box.hi.x - origin.x) / spacing + 1e-9));
  const auto rows = static_cast<long>(std::floor((box.hi.y - origin.y) / spacing + 1e-9));
  for (long b = 0; b <= rows; ++b) {
    for (long a = 0; a <= cols; ++a) {
      const Point p{origin.x + static_cast<double>(a) * spacing,
                    origin.y + static_cast<double>(b) * spacing};
      if (contains(poly, p)) fn(p);
    }
  }
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::size_t count_lattice_points(const ConvexPolygon& poly, Point origin, double spacing) {
  std::size_t n = 0;
  for_each_lattice_point(poly, origin, spacing, [&n](Point) { ++n; });
  return n;
}

void sort_nodes(std::vector<Point>& nodes) {
  std::sort(nodes.begin(), nodes.end(), [](Point a, Point b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
}

FarmInstance generate(const GeneratorConfig& cfg) {
  if (cfg.node_count < 3) throw GenerationFailure("node_count must be at least 3");
  if (cfg.polygon_sample_count < 3) throw GenerationFailure("polygon_sample_count must be at least 3");
  if (!(cfg.deletion_fraction >= 0.0 && cfg.deletion_fraction < 1.0)) {
    throw GenerationFailure("deletion_fraction must lie in [0, 1)");
  }

  Rng rng(cfg.seed);
  std::vector<Point> samples(cfg.polygon_sample_count);
  for (Point& p : samples) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  ConvexPolygon poly = [&] {
    try {
      return convex_hull(samples);
    } catch (const DegenerateInput& e) {
      throw GenerationFailure(std::string("random region is degenerate: ") + e.what());
    }
  }();

  const Point origin = bounds(poly.vertices()).lo;
  const std::size_t n = cfg.node_count;
  const auto target = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / (1.0 - cfg.deletion_fraction) - 1e-9));

  // Lattice counts are step functions of the pitch, so aim for the target
  // exactly and fall back to the closest count within the slack.
  double lo = std::sqrt(poly.area() / static_cast<double>(target)) / 4.0;
  double hi = std::max(bounds(poly.vertices()).hi.x - origin.x,
                       bounds(poly.vertices()).hi.y - origin.y);
  if (count_lattice_points(poly, origin, lo) < target) {
    throw GenerationFailure("cannot bracket lattice pitch from below");
  }
  double chosen = 0.0;
  std::size_t chosen_count = 0;
  std::size_t chosen_gap = SIZE_MAX;
  for (int it = 0; it < kBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t c = count_lattice_points(poly, origin, mid);
    const std::size_t gap = c > target ? c - target : target - c;
    if (c >= n && gap < chosen_gap) {
      chosen = mid;
      chosen_count = c;
      chosen_gap = gap;
      if (gap == 0) break;
    }
    (c > target ? lo : hi) = mid;
  }
  if (chosen_gap > kLatticeSlack) {
    throw GenerationFailure(fmt::format("lattice pitch bisection missed target {} (closest {})",
                                        target, chosen_count));
  }

  std::vector<Point> lattice;
  lattice.reserve(chosen_count);
  for_each_lattice_point(poly, origin, chosen, [&lattice](Point p) { lattice.push_back(p); });

  // Partial Fisher-Yates: the first `drop` slots end up holding the deleted points.
  const std::size_t drop = lattice.size() - n;
  for (std::size_t i = 0; i < drop; ++i) {
    const std::size_t j = i + uniform_below(rng, lattice.size() - i);
    std::swap(lattice[i], lattice[j]);
  }
  std::vector<Point> nodes(lattice.begin() + static_cast<std::ptrdiff_t>(drop), lattice.end());
  sort_nodes(nodes);

  FarmInstance inst{fmt::format("farm-n{}-s{}", n, cfg.seed), cfg.seed, std::move(poly),
                    chosen, origin, Point{}, std::move(nodes)};
  return place_depot(std::move(inst));
}

FarmInstance place_depot(FarmInstance inst) {
  const ConvexPolygon& poly = inst.polygon;
  Point best = 0.5 * (poly.vertex(0) + poly.vertex(1));
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const Point m = 0.5 * (poly.vertex(i) + poly.vertex(i + 1));
    if (m.y < best.y - kGeomEps || (std::abs(m.y - best.y) <= kGeomEps && m.x < best.x)) {
      best = m;
    }
  }
  inst.depot = best;
  return inst;
}

FarmInstance make_instance(std::string name, Point depot, std::vector<Point> nodes) {
  std::vector<Point> all = nodes;
  all.push_back(depot);
  Box box = bounds(all);
  const double margin =
      std::max(1e-6, 0.01 * std::max(box.hi.x - box.lo.x, box.hi.y - box.lo.y));
  box.lo = box.lo - Point{margin, margin};
  box.hi = box.hi + Point{margin, margin};
  FarmInstance inst;
  inst.name = std::move(name);
  inst.polygon = ConvexPolygon::from_ccw(
      {box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}});
  inst.lattice_origin = box.lo;
  inst.depot = depot;
  inst.nodes = std::move(nodes);
  return inst;
}

std::string to_text(const FarmInstance& inst) {
  std::string out;
  auto line = [&out](const std::string& s) {
    out += s;
    out += '\n';
  };
  line(fmt::format("version {}", kInstanceFormatVersion));
  line("name " + inst.name);
  line(fmt::format("seed {}", inst.seed));
  line("spacing " + fmt_real(inst.spacing));
  line("lattice_origin " + fmt_real(inst.lattice_origin.x) + " " + fmt_real(inst.lattice_origin.y));
  line("depot " + fmt_real(inst.depot.x) + " " + fmt_real(inst.depot.y));
  line(fmt::format("polygon {}", inst.polygon.size()));
  for (const Point& p : inst.polygon.vertices()) line(fmt_real(p.x) + " " + fmt_real(p.y));
  line(fmt::format("nodes {}", inst.nodes.size()));
  for (const Point& p : inst.nodes) line(fmt_real(p.x) + " " + fmt_real(p.y));
  return out;
}

FarmInstance parse_instance(const std::string& text) {
  detail::LineReader in(text);
  FarmInstance inst;

  auto v = in.keyed("version");
  in.arity(v, 1, "version");
  if (const int version = in.integer<int>(v[0], "version"); version != kInstanceFormatVersion) {
    throw VersionError(fmt::format("unsupported instance format version {}", version));
  }

  auto name = in.keyed("name");
  in.arity(name, 1, "name");
  inst.name = name[0];

  auto seed = in.keyed("seed");
  in.arity(seed, 1, "seed");
  inst.seed = in.integer<std::uint64_t>(seed[0], "seed");

  auto spacing = in.keyed("spacing");
  in.arity(spacing, 1, "spacing");
  inst.spacing = in.real(spacing[0], "spacing");
  if (inst.spacing < 0.0) in.fail("spacing", "must be non-negative");

  auto origin = in.keyed("lattice_origin");
  in.arity(origin, 2, "lattice_origin");
  inst.lattice_origin = in.point(origin, 0, "lattice_origin");

  auto depot = in.keyed("depot");
  in.arity(depot, 2, "depot");
  inst.depot = in.point(depot, 0, "depot");

  auto poly = in.keyed("polygon");
  in.arity(poly, 1, "polygon");
  const auto nv = in.integer<std::size_t>(poly[0], "polygon");
  const std::size_t poly_line = in.line_no();
  std::vector<Point> verts;
  for (std::size_t i = 0; i < nv; ++i) {
    auto t = in.next("polygon");
    in.arity(t, 2, "polygon vertex " + std::to_string(i));
    verts.push_back(in.point(t, 0, "polygon vertex " + std::to_string(i)));
  }
  try {
    inst.polygon = ConvexPolygon::from_ccw(std::move(verts));
  } catch (const DegenerateInput& e) {
    throw FormatError(poly_line, "polygon", e.what());
  }

  auto nodes = in.keyed("nodes");
  in.arity(nodes, 1, "nodes");
  const auto nn = in.integer<std::size_t>(nodes[0], "nodes");
  if (nn == 0) in.fail("nodes", "instance has no nodes");
  inst.nodes.reserve(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    const std::string field = "node " + std::to_string(i);
    auto t = in.next(field);
    in.arity(t, 2, field);
    const Point p = in.point(t, 0, field);
    if (!contains(inst.polygon, p)) in.fail(field, "lies outside the polygon");
    inst.nodes.push_back(p);
  }
  while (!in.done()) {
    if (!in.next("trailing").empty()) in.fail("trailing", "unexpected content after nodes");
  }
  return inst;
}

void save(const FarmInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << to_text(inst);
  if (!out) throw Error("failed writing " + path.string());
}

namespace {
std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

FarmInstance load(const std::filesystem::path& path) {
  try {
    return parse_instance(slurp(path));
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.field(), path.string() + ": " + e.what());
  }
}

std::filesystem::path Manifest::resolve(const ManifestEntry& e) const {
  if (e.path.is_absolute()) return e.path;
  return location.parent_path() / e.path;
}

Manifest generate_dataset(const std::vector<std::size_t>& sizes, std::size_t count_per_size,
                          std::uint64_t base_seed, const std::filesystem::path& out_dir) {
  if (sizes.empty()) throw GenerationFailure("no sizes requested");
  if (count_per_size == 0) throw GenerationFailure("count_per_size must be at least 1");
  std::filesystem::create_directories(out_dir);

  Manifest manifest{out_dir / "manifest.csv", {}};
  for (const std::size_t size : sizes) {
    for (std::size_t i = 0; i < count_per_size; ++i) {
      const std::uint64_t seed = base_seed + i;
      FarmInstance inst;
      try {
        inst = generate({.node_count = size, .seed = seed});
      } catch (const GenerationFailure& e) {
        throw GenerationFailure(
            fmt::format("size {} seed {}: {}", size, seed, e.what()));
      }
      const std::string file = fmt::format("n{}-{:03}.farm", size, i);
      save(inst, out_dir / file);
      manifest.entries.push_back({file, size, seed});
    }
  }
  save_manifest(manifest);
  return manifest;
}

void save_manifest(const Manifest& manifest) {
  std::ofstream out(manifest.location, std::ios::binary);
  if (!out) throw Error("cannot open " + manifest.location.string() + " for writing");
  out << "path,size,seed\n";
  for (const ManifestEntry& e : manifest.entries) {
    out << e.path.generic_string() << ',' << e.size << ',' << e.seed << '\n';
  }
}

Manifest load_manifest(const std::filesystem::path& path) {
  detail::LineReader in(slurp(path));
  Manifest m{path, {}};
  auto header = in.next("header");
  if (header.size() != 1 || header[0] != "path,size,seed") {
    in.fail("header", "expected 'path,size,seed'");
  }
  while (!in.done()) {
    auto toks = in.next("record");
    if (toks.empty()) continue;
    in.arity(toks, 1, "record");
    std::vector<std::string> cols;
    std::stringstream ss(toks[0]);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    in.arity(cols, 3, "record");
    m.entries.push_back({cols[0], in.integer<std::size_t>(cols[1], "size"),
                         in.integer<std::uint64_t>(cols[2], "seed")});
  }
  if (m.entries.empty()) throw FormatError(0, "manifest", "no instances listed");
  return m;
}

}  // namespace farmroute
