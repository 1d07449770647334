#include "enpar/game.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace enpar {

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::Max: return "max";
    case Owner::Min: return "min";
    case Owner::Random: return "ran";
  }
  return "?";
}

namespace {

std::tuple<StateId, StateId, long long, int, Int, Int> edge_key(const Edge& e) {
  if (e.prob) {
    return {e.src, e.dst, e.reward, 1, numerator(*e.prob), denominator(*e.prob)};
  }
  return {e.src, e.dst, e.reward, 0, 0, 0};
}

}  // namespace

Game::Game(std::string name, std::vector<State> states, std::vector<Edge> edges)
    : name_(std::move(name)), states_(std::move(states)), edges_(std::move(edges)) {
  validate_and_canonicalize();
}

void Game::validate_and_canonicalize() {
  const int n = num_states();
  for (int s = 0; s < n; ++s) {
    if (states_[s].priority < 0) {
      throw GameError("bad-priority",
                      "state " + std::to_string(s) + " has negative priority");
    }
  }
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw GameError("dangling-edge", "edge " + std::to_string(e.src) + " -> " +
                                           std::to_string(e.dst) +
                                           " references a missing state");
    }
    bool random = owner(e.src) == Owner::Random;
    if (random && !e.prob) {
      throw GameError("missing-prob", "edge from random state " +
                                          std::to_string(e.src) +
                                          " carries no probability");
    }
    if (!random && e.prob) {
      throw GameError("stray-prob", "edge from non-random state " +
                                        std::to_string(e.src) +
                                        " carries a probability");
    }
    if (e.prob && (*e.prob <= 0 || *e.prob > 1)) {
      throw GameError("bad-prob", "edge probability out of (0,1] on state " +
                                      std::to_string(e.src));
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return edge_key(a) < edge_key(b);
  });
  out_.assign(n, {});
  for (int i = 0; i < num_edges(); ++i) out_[edges_[i].src].push_back(i);
  for (int s = 0; s < n; ++s) {
    if (out_[s].empty()) {
      throw GameError("blocked-state",
                      "blocked state " + std::to_string(s) + " (no outgoing edge)");
    }
    if (owner(s) == Owner::Random) {
      Rational sum = 0;
      for (int e : out_[s]) sum += *edges_[e].prob;
      if (sum != 1) {
        throw GameError("bad-prob-sum", "probabilities on state " +
                                            std::to_string(s) + " sum to " +
                                            rational_str(sum));
      }
    }
  }
}

int Game::max_priority() const {
  int c = 0;
  for (const State& st : states_) c = std::max(c, st.priority);
  return c;
}

long long Game::max_abs_reward() const {
  long long r = 0;
  for (const Edge& e : edges_) r = std::max(r, e.reward < 0 ? -e.reward : e.reward);
  return r;
}

bool Game::has_random_states() const {
  for (const State& st : states_)
    if (st.owner == Owner::Random) return true;
  return false;
}

bool Game::min_is_frozen() const {
  for (int s = 0; s < num_states(); ++s)
    if (owner(s) == Owner::Min && out(s).size() > 1) return false;
  return true;
}

bool Game::is_chain() const {
  for (int s = 0; s < num_states(); ++s)
    if (owner(s) != Owner::Random && out(s).size() > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Textual format
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& line;
  int lineno;
  size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= line.size() || line[pos] == '#';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(lineno, static_cast<int>(pos) + 1, msg);
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() && !isspace(static_cast<unsigned char>(line[pos])) &&
           line[pos] != '#')
      ++pos;
    if (start == pos) fail("expected a token");
    return line.substr(start, pos - start);
  }
  // key=value attribute
  std::pair<std::string, std::string> attr() {
    std::string w = word();
    auto eq = w.find('=');
    if (eq == std::string::npos) fail("expected key=value, got '" + w + "'");
    return {w.substr(0, eq), w.substr(eq + 1)};
  }
};

long long parse_ll(Cursor& c, const std::string& text, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    c.fail(std::string("malformed ") + what + " '" + text + "'");
  }
}

}  // namespace

Game parse_game(const std::string& text) {
  std::string name = "game";
  std::vector<State> states;
  std::vector<Edge> edges;
  std::vector<char> seen;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Cursor c{line, lineno};
    if (c.done()) continue;
    std::string head = c.word();
    if (head == "game") {
      name = c.word();
    } else if (head == "state") {
      std::string idtext = c.word();
      long long id = parse_ll(c, idtext, "state id");
      State st;
      bool have_owner = false;
      while (!c.done()) {
        auto [k, v] = c.attr();
        if (k == "owner") {
          have_owner = true;
          if (v == "max") st.owner = Owner::Max;
          else if (v == "min") st.owner = Owner::Min;
          else if (v == "ran") st.owner = Owner::Random;
          else c.fail("unknown owner '" + v + "'");
        } else if (k == "prio") {
          long long p = parse_ll(c, v, "priority");
          if (p < 0) c.fail("negative priority");
          st.priority = static_cast<int>(p);
        } else {
          c.fail("unknown state attribute '" + k + "'");
        }
      }
      if (!have_owner) c.fail("state without owner");
      if (id < 0) c.fail("negative state id");
      if (states.size() <= static_cast<size_t>(id)) {
        states.resize(id + 1);
        seen.resize(id + 1, 0);
      }
      if (seen[id]) c.fail("duplicate state " + std::to_string(id));
      seen[id] = 1;
      states[id] = st;
    } else if (head == "edge") {
      Edge e;
      e.src = static_cast<StateId>(parse_ll(c, c.word(), "edge source"));
      e.dst = static_cast<StateId>(parse_ll(c, c.word(), "edge target"));
      while (!c.done()) {
        auto [k, v] = c.attr();
        if (k == "reward") {
          e.reward = parse_ll(c, v, "reward");
        } else if (k == "prob") {
          try {
            e.prob = parse_rational(v);
          } catch (const std::invalid_argument&) {
            c.fail("malformed probability '" + v + "'");
          }
        } else {
          c.fail("unknown edge attribute '" + k + "'");
        }
      }
      edges.push_back(e);
    } else {
      c.fail("unknown directive '" + head + "'");
    }
  }
  for (size_t s = 0; s < states.size(); ++s) {
    if (!seen[s]) {
      throw GameError("missing-state",
                      "state " + std::to_string(s) + " is never declared");
    }
  }
  return Game(name, std::move(states), std::move(edges));
}

std::string serialize_game(const Game& g) {
  std::ostringstream out;
  out << "game " << g.name() << "\n";
  for (int s = 0; s < g.num_states(); ++s) {
    out << "state " << s << " owner=" << owner_name(g.owner(s))
        << " prio=" << g.priority(s) << "\n";
  }
  for (const Edge& e : g.edges()) {
    out << "edge " << e.src << " " << e.dst << " reward=" << e.reward;
    if (e.prob) out << " prob=" << rational_str(*e.prob);
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON mirror
// ---------------------------------------------------------------------------

Game parse_game_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError("parse-error", std::string("bad JSON: ") + e.what());
  }
  try {
    std::vector<State> states;
    for (const auto& js : j.at("states")) {
      int id = js.at("id").get<int>();
      if (id < 0) throw GameError("parse-error", "negative state id");
      if (states.size() <= static_cast<size_t>(id)) states.resize(id + 1);
      std::string ow = js.at("owner").get<std::string>();
      State st;
      if (ow == "max") st.owner = Owner::Max;
      else if (ow == "min") st.owner = Owner::Min;
      else if (ow == "ran") st.owner = Owner::Random;
      else throw GameError("parse-error", "unknown owner '" + ow + "'");
      st.priority = js.at("prio").get<int>();
      states[id] = st;
    }
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.src = je.at("src").get<int>();
      e.dst = je.at("dst").get<int>();
      e.reward = je.at("reward").get<long long>();
      if (je.contains("prob")) e.prob = parse_rational(je.at("prob").get<std::string>());
      edges.push_back(e);
    }
    return Game(j.value("name", "game"), std::move(states), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw GameError("parse-error", std::string("bad game JSON: ") + e.what());
  }
}

std::string serialize_game_json(const Game& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["states"] = nlohmann::json::array();
  for (int s = 0; s < g.num_states(); ++s) {
    j["states"].push_back({{"id", s},
                           {"owner", owner_name(g.owner(s))},
                           {"prio", g.priority(s)}});
  }
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::json je = {{"src", e.src}, {"dst", e.dst}, {"reward", e.reward}};
    if (e.prob) je["prob"] = rational_str(*e.prob);
    j["edges"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace enpar
