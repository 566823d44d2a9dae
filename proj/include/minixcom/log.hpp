#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minixcom/game.hpp"

namespace minixcom {

// Plain-text, human-diffable game record. The map is embedded verbatim so a
// log is self-contained; the trailing hash pins the whole action sequence
// and the final position.
struct GameLog {
  std::string map_text;
  Side first_mover = Side::Human;
  Rules rules;
  std::vector<Action> actions;
  Outcome final_outcome;
  uint64_t hash = 0;
};

namespace detail {

constexpr uint64_t kFnvOffset = 0xCBF29CE484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001B3ULL;

inline void fnv_mix(uint64_t& h, std::string_view bytes) {
  for (char c : bytes) {
    h ^= static_cast<uint8_t>(c);
    h *= kFnvPrime;
  }
}

inline std::string canonical_state(const GameState& s) {
  std::string out;
  for (int i = 0; i < s.unit_count; ++i) {
    const Unit& u = s.unit(i);
    out += std::to_string(u.id) + ":" + side_name(u.side) + ":" + std::to_string(u.pos.x) + "," +
           std::to_string(u.pos.y) + ":" + (u.alive ? "alive" : "dead") + ";";
  }
  out += side_name(s.side_to_move);
  out += ";" + std::to_string(s.moves_made[0]) + "," + std::to_string(s.moves_made[1]);
  return out;
}

}  // namespace detail

inline uint64_t game_hash(const std::vector<Action>& actions, const GameState& final_state) {
  uint64_t h = detail::kFnvOffset;
  for (const Action& a : actions) {
    detail::fnv_mix(h, to_string(a));
    detail::fnv_mix(h, "\n");
  }
  detail::fnv_mix(h, detail::canonical_state(final_state));
  return h;
}

inline std::string outcome_token(const Outcome& oc) {
  switch (oc.kind) {
    case OutcomeKind::Ongoing:
      return "ongoing";
    case OutcomeKind::Draw:
      return "draw";
    case OutcomeKind::Win:
      return oc.winner == Side::Human ? "win-human" : "win-alien";
  }
  return "?";
}

inline std::string hex16(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

inline std::string serialize_log(const GameLog& log) {
  std::string out = "minixcom-log v1\n";
  out += "begin-map\n";
  out += log.map_text;
  if (!log.map_text.empty() && log.map_text.back() != '\n') out += "\n";
  out += "end-map\n";
  out += std::string("first ") + side_name(log.first_mover) + "\n";
  out += "steps " + std::to_string(log.rules.max_steps) + "\n";
  out += "draw-limit " + std::to_string(log.rules.draw_limit) + "\n";
  out += std::string("draw-scope ") + (log.rules.draw_per_side ? "per-side" : "total-plies") + "\n";
  for (const Action& a : log.actions) out += to_string(a) + "\n";
  out += "outcome " + outcome_token(log.final_outcome) + "\n";
  out += "hash " + hex16(log.hash) + "\n";
  return out;
}

class LogError : public std::runtime_error {
 public:
  LogError(int line, const std::string& what)
      : std::runtime_error("log error (line " + std::to_string(line) + "): " + what) {}
};

inline GameLog parse_log(std::string_view text) {
  auto lines = detail::split_lines(text);
  size_t ln = 0;
  auto expect_line = [&]() -> const std::string& {
    if (ln >= lines.size()) throw LogError(static_cast<int>(lines.size()), "unexpected end of log");
    return lines[ln];
  };

  GameLog log;
  if (expect_line() != "minixcom-log v1") throw LogError(1, "missing log header");
  ++ln;
  if (expect_line() != "begin-map") throw LogError(static_cast<int>(ln + 1), "expected begin-map");
  ++ln;
  while (expect_line() != "end-map") {
    log.map_text += lines[ln] + "\n";
    ++ln;
  }
  ++ln;

  auto keyword = [&](const std::string& key) -> std::string {
    const std::string& line = expect_line();
    if (line.rfind(key + " ", 0) != 0)
      throw LogError(static_cast<int>(ln + 1), "expected '" + key + "'");
    std::string value = line.substr(key.size() + 1);
    ++ln;
    return value;
  };

  std::string first = keyword("first");
  if (first != "human" && first != "alien")
    throw LogError(static_cast<int>(ln), "bad first mover '" + first + "'");
  log.first_mover = first == "human" ? Side::Human : Side::Alien;
  try {
    log.rules.max_steps = std::stoi(keyword("steps"));
    log.rules.draw_limit = std::stoi(keyword("draw-limit"));
  } catch (const std::exception&) {
    throw LogError(static_cast<int>(ln), "bad numeric field");
  }
  std::string scope = keyword("draw-scope");
  if (scope != "per-side" && scope != "total-plies")
    throw LogError(static_cast<int>(ln), "bad draw-scope '" + scope + "'");
  log.rules.draw_per_side = scope == "per-side";

  while (ln < lines.size() && lines[ln].rfind("outcome ", 0) != 0) {
    if (lines[ln].empty()) {
      ++ln;
      continue;
    }
    auto action = parse_action(lines[ln]);
    if (!action) throw LogError(static_cast<int>(ln + 1), "bad action '" + lines[ln] + "'");
    log.actions.push_back(*action);
    ++ln;
  }
  std::string oc = keyword("outcome");
  if (oc == "draw") {
    log.final_outcome = Outcome{OutcomeKind::Draw, Side::Human};
  } else if (oc == "win-human") {
    log.final_outcome = Outcome{OutcomeKind::Win, Side::Human};
  } else if (oc == "win-alien") {
    log.final_outcome = Outcome{OutcomeKind::Win, Side::Alien};
  } else if (oc == "ongoing") {
    log.final_outcome = Outcome{};
  } else {
    throw LogError(static_cast<int>(ln), "bad outcome '" + oc + "'");
  }
  std::string hash = keyword("hash");
  if (hash.size() != 16) throw LogError(static_cast<int>(ln), "bad hash length");
  log.hash = std::stoull(hash, nullptr, 16);
  return log;
}

struct ReplayResult {
  bool ok = false;
  int divergent_ply = -1;  // 0-based ply of the first illegal action, -1 if none
  std::string message;
};

// Re-applies the logged actions through the rules, checking each one for
// legality and the final outcome and hash for consistency.
inline ReplayResult verify_replay(const GameLog& log) {
  GridMap map = GridMap::parse(log.map_text);
  GameState state = initial_state(map, log.first_mover);
  std::vector<Action> legal;
  for (size_t ply = 0; ply < log.actions.size(); ++ply) {
    if (!outcome(state, log.rules).ongoing()) {
      return {false, static_cast<int>(ply), "action after game end at ply " + std::to_string(ply)};
    }
    legal_actions(state, log.rules, legal);
    if (std::find(legal.begin(), legal.end(), log.actions[ply]) == legal.end()) {
      return {false, static_cast<int>(ply),
              "illegal action at ply " + std::to_string(ply) + ": " + to_string(log.actions[ply])};
    }
    apply_in_place(state, log.actions[ply]);
  }
  Outcome oc = outcome(state, log.rules);
  if (!(oc == log.final_outcome)) {
    return {false, -1, "outcome mismatch: replay ends " + outcome_token(oc) + ", log says " +
                           outcome_token(log.final_outcome)};
  }
  uint64_t h = game_hash(log.actions, state);
  if (h != log.hash) {
    return {false, -1, "hash mismatch: replay " + hex16(h) + ", log " + hex16(log.hash)};
  }
  return {true, -1, "ok"};
}

}  // namespace minixcom
