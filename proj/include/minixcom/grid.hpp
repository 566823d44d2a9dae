#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minixcom {

enum class Side : uint8_t { Human = 0, Alien = 1 };

inline Side opponent(Side s) { return s == Side::Human ? Side::Alien : Side::Human; }

inline const char* side_name(Side s) { return s == Side::Human ? "human" : "alien"; }

struct Cell {
  int8_t x = -1;
  int8_t y = -1;

  friend bool operator==(const Cell&, const Cell&) = default;
};

inline Cell cell(int x, int y) {
  return Cell{static_cast<int8_t>(x), static_cast<int8_t>(y)};
}

class MapError : public std::runtime_error {
 public:
  MapError(int line, const std::string& what)
      : std::runtime_error("map error (line " + std::to_string(line) + "): " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

// Exact open-box clipping in doubled coordinates: cell centers become odd
// integers and wall-cell corners even integers, so every comparison stays
// in int64 with no rounding. A wall blocks only when the open segment
// spends a positive-length interval strictly inside the wall's interior;
// grazing an edge or corner does not block.
struct Frac {
  int64_t num;
  int64_t den;  // > 0
};

inline bool frac_less(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }

inline bool segment_crosses_cell(Cell a, Cell b, Cell wall) {
  const int64_t ax = 2 * a.x + 1, ay = 2 * a.y + 1;
  const int64_t dx = (2 * b.x + 1) - ax, dy = (2 * b.y + 1) - ay;

  Frac lo{0, 1}, hi{1, 1};  // open parameter window, starts at (0,1)
  auto clip_axis = [&](int64_t p, int64_t d, int64_t b0, int64_t b1) -> bool {
    if (d == 0) return p > b0 && p < b1;
    Frac enter, exit;
    if (d > 0) {
      enter = Frac{b0 - p, d};
      exit = Frac{b1 - p, d};
    } else {
      enter = Frac{p - b1, -d};
      exit = Frac{p - b0, -d};
    }
    if (frac_less(lo, enter)) lo = enter;
    if (frac_less(exit, hi)) hi = exit;
    return true;
  };

  if (!clip_axis(ax, dx, 2 * wall.x, 2 * wall.x + 2)) return false;
  if (!clip_axis(ay, dy, 2 * wall.y, 2 * wall.y + 2)) return false;
  return frac_less(lo, hi);
}

}  // namespace detail

// Static board data: dimensions, walls, per-side start cells, and the
// ordered corridor route consumed by the rule-based agent. Visibility
// between all cell pairs is precomputed at construction, so line_of_sight
// is a bit lookup on the hot path.
class GridMap {
 public:
  static constexpr int kMinDim = 2;
  static constexpr int kMaxDim = 32;
  static constexpr int kMaxStartsPerSide = 4;

  GridMap(int width, int height, const std::vector<Cell>& walls,
          std::array<std::vector<Cell>, 2> starts = {}, std::vector<Cell> corridor = {})
      : width_(width), height_(height), starts_(std::move(starts)), corridor_(std::move(corridor)) {
    if (width_ < kMinDim || width_ > kMaxDim || height_ < kMinDim || height_ > kMaxDim) {
      throw std::invalid_argument("grid dimensions out of range");
    }
    wall_.assign(static_cast<size_t>(cell_count()), 0);
    for (Cell w : walls) {
      if (!in_bounds(w)) throw std::invalid_argument("wall out of bounds");
      wall_[static_cast<size_t>(index(w))] = 1;
      wall_cells_.push_back(w);
    }
    validate_metadata();
    build_los_cache();
  }

  static GridMap parse(std::string_view text);
  static GridMap load(const std::string& path);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(int idx) const {
    return Cell{static_cast<int8_t>(idx % width_), static_cast<int8_t>(idx / width_)};
  }

  bool wall(Cell c) const { return wall_[static_cast<size_t>(index(c))] != 0; }
  bool wall_at(int idx) const { return wall_[static_cast<size_t>(idx)] != 0; }
  const std::vector<Cell>& wall_cells() const { return wall_cells_; }

  const std::vector<Cell>& starts(Side s) const {
    return starts_[static_cast<size_t>(s)];
  }
  const std::vector<Cell>& corridor() const { return corridor_; }

  // True iff the open segment between the centers of a and b crosses the
  // interior of no wall cell. Symmetric; a == b is trivially clear.
  bool line_of_sight(Cell a, Cell b) const {
    return (los_[static_cast<size_t>(index(a) * cell_count() + index(b)) >> 6] >>
            (static_cast<size_t>(index(a) * cell_count() + index(b)) & 63)) &
           1;
  }

  std::string source_text() const { return source_text_; }

 private:
  void validate_metadata() {
    for (const auto& side_starts : starts_) {
      for (Cell s : side_starts) {
        if (!in_bounds(s)) throw std::invalid_argument("start out of bounds");
        if (wall(s)) throw std::invalid_argument("start on wall");
      }
    }
    std::vector<Cell> all;
    for (const auto& side_starts : starts_)
      all.insert(all.end(), side_starts.begin(), side_starts.end());
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        if (all[i] == all[j]) throw std::invalid_argument("duplicate start position");
    for (Cell c : corridor_) {
      if (!in_bounds(c)) throw std::invalid_argument("corridor cell out of bounds");
      if (wall(c)) throw std::invalid_argument("corridor cell on wall");
    }
  }

  bool compute_los(Cell a, Cell b) const {
    if (a == b) return true;
    for (Cell w : wall_cells_) {
      if (detail::segment_crosses_cell(a, b, w)) return false;
    }
    return true;
  }

  void build_los_cache() {
    const int n = cell_count();
    los_.assign((static_cast<size_t>(n) * n + 63) / 64, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (compute_los(cell_at(i), cell_at(j))) {
          set_los_bit(i * n + j);
          set_los_bit(j * n + i);
        }
      }
    }
  }

  void set_los_bit(int bit) {
    los_[static_cast<size_t>(bit) >> 6] |= uint64_t{1} << (static_cast<size_t>(bit) & 63);
  }

  int width_;
  int height_;
  std::vector<uint8_t> wall_;
  std::vector<Cell> wall_cells_;
  std::array<std::vector<Cell>, 2> starts_;
  std::vector<Cell> corridor_;
  std::vector<uint64_t> los_;
  std::string source_text_;
};

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

inline Cell parse_coord(const std::string& token, int line_no, int width, int height) {
  size_t comma = token.find(',');
  if (comma == std::string::npos) throw MapError(line_no, "expected x,y coordinate");
  int x = 0, y = 0;
  try {
    x = std::stoi(token.substr(0, comma));
    y = std::stoi(token.substr(comma + 1));
  } catch (const std::exception&) {
    throw MapError(line_no, "bad coordinate '" + token + "'");
  }
  if (x < 0 || x >= width || y < 0 || y >= height)
    throw MapError(line_no, "coordinate " + token + " out of bounds");
  return cell(x, y);
}

}  // namespace detail

// Map file grammar:
//   size W H
//   H rows of W glyphs, '.' floor and '#' wall
//   human x,y      (repeatable)
//   alien x,y      (repeatable)
//   corridor x,y   (repeatable, ordered)
// Coordinates are zero-based, x = column, y = row, row 0 at top.
inline GridMap GridMap::parse(std::string_view text) {
  auto lines = detail::split_lines(text);
  size_t ln = 0;
  auto next_content_line = [&](bool required) -> int {
    while (ln < lines.size()) {
      std::string_view s = lines[ln];
      size_t pos = s.find_first_not_of(" \t");
      if (pos != std::string_view::npos) return static_cast<int>(ln);
      ++ln;
    }
    if (required) throw MapError(static_cast<int>(lines.size()), "unexpected end of file");
    return -1;
  };

  next_content_line(true);
  std::istringstream header(lines[ln]);
  std::string kw;
  int width = 0, height = 0;
  header >> kw >> width >> height;
  if (kw != "size" || header.fail())
    throw MapError(static_cast<int>(ln + 1), "expected 'size W H' header");
  if (width < kMinDim || width > kMaxDim || height < kMinDim || height > kMaxDim)
    throw MapError(static_cast<int>(ln + 1),
                   "dimensions must be between " + std::to_string(kMinDim) + " and " +
                       std::to_string(kMaxDim));
  ++ln;

  std::vector<Cell> walls;
  for (int row = 0; row < height; ++row, ++ln) {
    if (ln >= lines.size())
      throw MapError(static_cast<int>(ln + 1), "missing body row " + std::to_string(row));
    const std::string& body = lines[ln];
    if (static_cast<int>(body.size()) != width)
      throw MapError(static_cast<int>(ln + 1),
                     "body row has " + std::to_string(body.size()) + " cells, expected " +
                         std::to_string(width));
    for (int col = 0; col < width; ++col) {
      char glyph = body[static_cast<size_t>(col)];
      if (glyph == '#') {
        walls.push_back(cell(col, row));
      } else if (glyph != '.') {
        throw MapError(static_cast<int>(ln + 1), std::string("unknown glyph '") + glyph + "'");
      }
    }
  }

  std::array<std::vector<Cell>, 2> starts;
  std::vector<Cell> corridor;
  for (;;) {
    int content = next_content_line(false);
    if (content < 0) break;
    std::istringstream meta(lines[ln]);
    std::string key, coord;
    meta >> key >> coord;
    int line_no = static_cast<int>(ln + 1);
    if (meta.fail()) throw MapError(line_no, "malformed metadata line");
    Cell c = detail::parse_coord(coord, line_no, width, height);
    if (key == "human") {
      starts[0].push_back(c);
    } else if (key == "alien") {
      starts[1].push_back(c);
    } else if (key == "corridor") {
      corridor.push_back(c);
    } else {
      throw MapError(line_no, "unknown metadata key '" + key + "'");
    }
    ++ln;
  }

  auto wall_lookup = [&](Cell c) {
    for (Cell w : walls)
      if (w == c) return true;
    return false;
  };
  for (int side = 0; side < 2; ++side) {
    if (starts[static_cast<size_t>(side)].empty())
      throw MapError(static_cast<int>(lines.size()),
                     std::string("no start positions for side '") +
                         (side == 0 ? "human" : "alien") + "'");
    if (static_cast<int>(starts[static_cast<size_t>(side)].size()) > kMaxStartsPerSide)
      throw MapError(static_cast<int>(lines.size()), "too many start positions per side");
    for (Cell s : starts[static_cast<size_t>(side)])
      if (wall_lookup(s)) throw MapError(static_cast<int>(lines.size()), "start on wall");
  }
  if (starts[0].size() != starts[1].size())
    throw MapError(static_cast<int>(lines.size()), "squads must have equal size");

  try {
    GridMap map(width, height, walls, std::move(starts), std::move(corridor));
    map.source_text_ = std::string(text);
    return map;
  } catch (const std::invalid_argument& e) {
    throw MapError(static_cast<int>(lines.size()), e.what());
  }
}

inline GridMap GridMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace minixcom
