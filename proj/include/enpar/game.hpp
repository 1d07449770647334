#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enpar/rational.hpp"

namespace enpar {

// Dense 0-based state index; stable across transformations via origin maps.
using StateId = int;

enum class Owner : std::uint8_t { Max, Min, Random };

const char* owner_name(Owner o);

struct State {
  Owner owner = Owner::Max;
  int priority = 0;
  bool operator==(const State&) const = default;
};

struct Edge {
  StateId src = 0;
  StateId dst = 0;
  long long reward = 0;
  std::optional<Rational> prob;  // present iff src is Random
  bool operator==(const Edge&) const = default;
};

// Error with a stable machine-readable code (used by the CLI exit mapping).
class GameError : public std::runtime_error {
 public:
  GameError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class ParseError : public GameError {
 public:
  ParseError(int line, int column, const std::string& msg)
      : GameError("parse-error", "line " + std::to_string(line) + ", col " +
                                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

class ResourceError : public GameError {
 public:
  explicit ResourceError(const std::string& msg)
      : GameError("resource-cap", msg) {}
};

// Immutable after construction; all operations on games are pure.
class Game {
 public:
  Game() = default;
  // Validates every invariant (non-blocking states, probability sums, priority
  // signs) and canonicalizes edge order: ascending (src, dst, reward, prob).
  Game(std::string name, std::vector<State> states, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<State>& states() const { return states_; }
  const State& state(StateId s) const { return states_[static_cast<size_t>(s)]; }
  Owner owner(StateId s) const { return state(s).owner; }
  int priority(StateId s) const { return state(s).priority; }

  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
  // Indices into edges() of the outgoing edges of s, in canonical order.
  const std::vector<int>& out(StateId s) const {
    return out_[static_cast<size_t>(s)];
  }

  int max_priority() const;
  long long max_abs_reward() const;
  bool has_random_states() const;
  // True when every Min state has at most one successor (an MDP view).
  bool min_is_frozen() const;
  // True when additionally every Max state has out-degree one (a Markov chain).
  bool is_chain() const;

  bool operator==(const Game& o) const {
    return name_ == o.name_ && states_ == o.states_ && edges_ == o.edges_;
  }

 private:
  std::string name_;
  std::vector<State> states_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;

  void validate_and_canonicalize();
};

// Line-oriented textual format; see README. Errors carry line/column.
Game parse_game(const std::string& text);
std::string serialize_game(const Game& g);

// JSON mirror with the same fields.
Game parse_game_json(const std::string& text);
std::string serialize_game_json(const Game& g);

}  // namespace enpar
