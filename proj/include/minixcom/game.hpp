#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minixcom/grid.hpp"

namespace minixcom {

constexpr int kMaxUnits = 2 * GridMap::kMaxStartsPerSide;
constexpr int kMaxCells = GridMap::kMaxDim * GridMap::kMaxDim;

struct Rules {
  int max_steps = 3;      // movement budget per action
  int draw_limit = 20;    // moves before a draw is declared
  bool draw_per_side = true;  // limit counts per side; false counts total plies
};

struct Unit {
  uint8_t id = 0;
  Side side = Side::Human;
  Cell pos;
  bool alive = true;
};

// Full ground-truth position. Holds a non-owning pointer to its map, which
// must outlive every state derived from it. Trivially copyable on purpose:
// rollouts copy states by the thousands.
struct GameState {
  const GridMap* map = nullptr;
  std::array<Unit, kMaxUnits> units{};
  uint8_t unit_count = 0;
  Side side_to_move = Side::Human;
  std::array<uint16_t, 2> moves_made{0, 0};
  int8_t last_acted = -1;  // unit id of the most recent non-pass command

  const Unit& unit(int id) const { return units[static_cast<size_t>(id)]; }
  Unit& unit(int id) { return units[static_cast<size_t>(id)]; }

  int unit_at(Cell c) const {
    for (int i = 0; i < unit_count; ++i) {
      if (units[static_cast<size_t>(i)].alive && units[static_cast<size_t>(i)].pos == c) return i;
    }
    return -1;
  }

  int alive_count(Side s) const {
    int n = 0;
    for (int i = 0; i < unit_count; ++i) {
      const Unit& u = units[static_cast<size_t>(i)];
      if (u.alive && u.side == s) ++n;
    }
    return n;
  }
};

inline GameState initial_state(const GridMap& map, Side first_mover = Side::Human) {
  GameState s;
  s.map = &map;
  s.side_to_move = first_mover;
  for (Side side : {Side::Human, Side::Alien}) {
    const auto& starts = map.starts(side);
    if (starts.empty()) throw std::invalid_argument("map has no start positions for a side");
    for (Cell c : starts) {
      Unit u;
      u.id = s.unit_count;
      u.side = side;
      u.pos = c;
      s.units[s.unit_count++] = u;
    }
  }
  return s;
}

enum class ActionKind : uint8_t { Move = 0, Shoot = 1, MoveShoot = 2, Pass = 3 };

struct Action {
  ActionKind kind = ActionKind::Pass;
  uint8_t unit = 0;
  Cell dest{-1, -1};
  uint8_t target = 0;

  static Action move(int unit, Cell dest) {
    Action a;
    a.kind = ActionKind::Move;
    a.unit = static_cast<uint8_t>(unit);
    a.dest = dest;
    return a;
  }
  static Action shoot(int unit, int target) {
    Action a;
    a.kind = ActionKind::Shoot;
    a.unit = static_cast<uint8_t>(unit);
    a.target = static_cast<uint8_t>(target);
    return a;
  }
  static Action move_shoot(int unit, Cell dest, int target) {
    Action a;
    a.kind = ActionKind::MoveShoot;
    a.unit = static_cast<uint8_t>(unit);
    a.dest = dest;
    a.target = static_cast<uint8_t>(target);
    return a;
  }
  static Action pass() { return Action{}; }

  friend bool operator==(const Action&, const Action&) = default;
};

inline std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::Move:
      return "move " + std::to_string(a.unit) + " " + std::to_string(a.dest.x) + "," +
             std::to_string(a.dest.y);
    case ActionKind::Shoot:
      return "shoot " + std::to_string(a.unit) + " " + std::to_string(a.target);
    case ActionKind::MoveShoot:
      return "moveshoot " + std::to_string(a.unit) + " " + std::to_string(a.dest.x) + "," +
             std::to_string(a.dest.y) + " " + std::to_string(a.target);
    case ActionKind::Pass:
      return "pass";
  }
  return "?";
}

inline std::optional<Action> parse_action(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  auto read_int = [&](int& out) {
    in >> out;
    return !in.fail();
  };
  auto read_cell = [&](Cell& out) {
    std::string tok;
    in >> tok;
    size_t comma = tok.find(',');
    if (in.fail() || comma == std::string::npos) return false;
    try {
      out = cell(std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1)));
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  if (kind == "pass") return Action::pass();
  int unit = 0;
  if (!read_int(unit)) return std::nullopt;
  if (kind == "move") {
    Cell d;
    if (!read_cell(d)) return std::nullopt;
    return Action::move(unit, d);
  }
  if (kind == "shoot") {
    int target = 0;
    if (!read_int(target)) return std::nullopt;
    return Action::shoot(unit, target);
  }
  if (kind == "moveshoot") {
    Cell d;
    int target = 0;
    if (!read_cell(d) || !read_int(target)) return std::nullopt;
    return Action::move_shoot(unit, d, target);
  }
  return std::nullopt;
}

enum class OutcomeKind : uint8_t { Ongoing = 0, Win = 1, Draw = 2 };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Ongoing;
  Side winner = Side::Human;

  bool ongoing() const { return kind == OutcomeKind::Ongoing; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// A win takes precedence over the draw limit.
inline Outcome outcome(const GameState& s, const Rules& rules) {
  if (s.alive_count(Side::Alien) == 0) return Outcome{OutcomeKind::Win, Side::Human};
  if (s.alive_count(Side::Human) == 0) return Outcome{OutcomeKind::Win, Side::Alien};
  bool draw = rules.draw_per_side
                  ? s.moves_made[0] >= rules.draw_limit && s.moves_made[1] >= rules.draw_limit
                  : s.moves_made[0] + s.moves_made[1] >= rules.draw_limit;
  if (draw) return Outcome{OutcomeKind::Draw, Side::Human};
  return Outcome{};
}

namespace detail {

// Marks every cell reachable from the unit's position by a 4-directional
// path of at most max_steps steps that stays off walls and living units.
// occ holds unit-id+1 per occupied cell; reached bytes must be zeroed by
// the caller for map->cell_count() cells.
inline void flood_reachable(const GridMap& map, Cell from, int max_steps, const uint8_t* occ,
                            uint8_t* reached) {
  if (max_steps <= 0) return;
  int16_t frontier[kMaxCells];
  int16_t next[kMaxCells];
  int frontier_n = 1;
  frontier[0] = static_cast<int16_t>(map.index(from));
  const int w = map.width(), h = map.height();
  for (int depth = 0; depth < max_steps && frontier_n > 0; ++depth) {
    int next_n = 0;
    for (int i = 0; i < frontier_n; ++i) {
      const int idx = frontier[i];
      const int x = idx % w, y = idx / w;
      const int neighbors[4] = {x > 0 ? idx - 1 : -1, x + 1 < w ? idx + 1 : -1,
                                y > 0 ? idx - w : -1, y + 1 < h ? idx + w : -1};
      for (int nb : neighbors) {
        if (nb < 0 || reached[nb] || map.wall_at(nb) || occ[nb]) continue;
        reached[nb] = 1;
        next[next_n++] = static_cast<int16_t>(nb);
      }
    }
    std::copy(next, next + next_n, frontier);
    frontier_n = next_n;
  }
  reached[map.index(from)] = 0;
}

inline void build_occupancy(const GameState& s, uint8_t* occ) {
  std::fill_n(occ, s.map->cell_count(), uint8_t{0});
  for (int i = 0; i < s.unit_count; ++i) {
    const Unit& u = s.units[static_cast<size_t>(i)];
    if (u.alive) occ[s.map->index(u.pos)] = static_cast<uint8_t>(i + 1);
  }
}

}  // namespace detail

inline std::vector<Cell> reachable_cells(const GameState& s, int unit_id, int max_steps) {
  if (unit_id < 0 || unit_id >= s.unit_count) throw std::invalid_argument("unknown unit id");
  const Unit& u = s.unit(unit_id);
  if (!u.alive) throw std::invalid_argument("dead unit cannot move");
  uint8_t occ[kMaxCells];
  uint8_t reached[kMaxCells];
  detail::build_occupancy(s, occ);
  std::fill_n(reached, s.map->cell_count(), uint8_t{0});
  detail::flood_reachable(*s.map, u.pos, max_steps, occ, reached);
  std::vector<Cell> out;
  for (int i = 0; i < s.map->cell_count(); ++i) {
    if (reached[i]) out.push_back(s.map->cell_at(i));
  }
  return out;
}

// Enumerates the side to move's actions in a fixed order: per unit
// (ascending id) all moves by row-major destination, then shots by target
// id, then move-and-shoot pairs by destination then target. [pass] is
// returned exactly when nothing else is possible.
inline void legal_actions(const GameState& s, const Rules& rules, std::vector<Action>& out) {
  out.clear();
  const GridMap& map = *s.map;
  const int n = map.cell_count();
  uint8_t occ[kMaxCells];
  uint8_t reached[kMaxCells];
  detail::build_occupancy(s, occ);

  uint8_t enemies[kMaxUnits];
  int enemy_n = 0;
  for (int i = 0; i < s.unit_count; ++i) {
    const Unit& u = s.units[static_cast<size_t>(i)];
    if (u.alive && u.side != s.side_to_move) enemies[enemy_n++] = static_cast<uint8_t>(i);
  }

  for (int id = 0; id < s.unit_count; ++id) {
    const Unit& u = s.units[static_cast<size_t>(id)];
    if (!u.alive || u.side != s.side_to_move) continue;
    std::fill_n(reached, n, uint8_t{0});
    detail::flood_reachable(map, u.pos, rules.max_steps, occ, reached);
    for (int i = 0; i < n; ++i) {
      if (reached[i]) out.push_back(Action::move(id, map.cell_at(i)));
    }
    for (int e = 0; e < enemy_n; ++e) {
      if (map.line_of_sight(u.pos, s.unit(enemies[e]).pos))
        out.push_back(Action::shoot(id, enemies[e]));
    }
    for (int i = 0; i < n; ++i) {
      if (!reached[i]) continue;
      for (int e = 0; e < enemy_n; ++e) {
        if (map.line_of_sight(map.cell_at(i), s.unit(enemies[e]).pos))
          out.push_back(Action::move_shoot(id, map.cell_at(i), enemies[e]));
      }
    }
  }
  if (out.empty()) out.push_back(Action::pass());
}

inline std::vector<Action> legal_actions(const GameState& s, const Rules& rules) {
  std::vector<Action> out;
  legal_actions(s, rules, out);
  return out;
}

namespace detail {

inline void check_action(const GameState& s, const Action& a) {
  auto fail = [](const char* msg) { throw std::logic_error(std::string("illegal action: ") + msg); };
  if (a.kind == ActionKind::Pass) return;
  if (a.unit >= s.unit_count) fail("unknown unit");
  const Unit& u = s.unit(a.unit);
  if (!u.alive) fail("dead unit");
  if (u.side != s.side_to_move) fail("unit not on side to move");
  Cell fire_from = u.pos;
  if (a.kind == ActionKind::Move || a.kind == ActionKind::MoveShoot) {
    if (!s.map->in_bounds(a.dest)) fail("destination out of bounds");
    if (a.dest == u.pos) fail("destination equals current cell");
    if (s.map->wall(a.dest)) fail("destination is a wall");
    if (s.unit_at(a.dest) >= 0) fail("destination occupied");
    fire_from = a.dest;
  }
  if (a.kind == ActionKind::Shoot || a.kind == ActionKind::MoveShoot) {
    if (a.target >= s.unit_count) fail("unknown target");
    const Unit& t = s.unit(a.target);
    if (!t.alive) fail("target already dead");
    if (t.side == u.side) fail("target is friendly");
    if (!s.map->line_of_sight(fire_from, t.pos)) fail("no line of sight to target");
  }
}

}  // namespace detail

// Transition. Structural legality is checked (ownership, occupancy, sight);
// path reachability within the step budget is the caller's responsibility
// and is guaranteed for actions drawn from legal_actions.
inline void apply_in_place(GameState& s, const Action& a) {
  detail::check_action(s, a);
  if (a.kind != ActionKind::Pass) {
    Unit& u = s.unit(a.unit);
    if (a.kind == ActionKind::Move || a.kind == ActionKind::MoveShoot) u.pos = a.dest;
    if (a.kind == ActionKind::Shoot || a.kind == ActionKind::MoveShoot)
      s.unit(a.target).alive = false;
    s.last_acted = static_cast<int8_t>(a.unit);
  }
  s.moves_made[static_cast<size_t>(s.side_to_move)]++;
  s.side_to_move = opponent(s.side_to_move);
}

inline GameState apply_action(const GameState& s, const Action& a) {
  GameState next = s;
  apply_in_place(next, a);
  return next;
}

// Board rendering for the play command and logs: '#' wall, '.' floor,
// 'H'/'A' living units.
inline std::string render(const GameState& s) {
  const GridMap& map = *s.map;
  std::string out;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      Cell c = cell(x, y);
      int uid = s.unit_at(c);
      if (uid >= 0) {
        out.push_back(s.unit(uid).side == Side::Human ? 'H' : 'A');
      } else {
        out.push_back(map.wall(c) ? '#' : '.');
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace minixcom
