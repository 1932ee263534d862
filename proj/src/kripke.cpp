#include "modalk/kripke.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace modalk {

KripkeModel::KripkeModel(int num_states,
                         std::vector<std::pair<int, int>> relation,
                         std::vector<Valuation> valuations)
    : num_states_(num_states),
      relation_(std::move(relation)),
      valuations_(std::move(valuations)) {
  if (num_states_ <= 0) throw ModelError("model must have at least one state");
  if (static_cast<int>(valuations_.size()) != num_states_)
    throw ModelError("valuation list size does not match state count");
  std::sort(relation_.begin(), relation_.end());
  relation_.erase(std::unique(relation_.begin(), relation_.end()),
                  relation_.end());
  successors_.resize(num_states_);
  for (const auto& [from, to] : relation_) {
    if (from < 0 || from >= num_states_ || to < 0 || to >= num_states_)
      throw ModelError("dangling edge [" + std::to_string(from) + "," +
                       std::to_string(to) + "]");
    successors_[from].push_back(to);
  }
}

KripkeModel KripkeModel::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("model JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("states") || !j["states"].is_array())
    throw ModelError("model JSON must be an object with a \"states\" array");
  const auto& states = j["states"];
  int n = static_cast<int>(states.size());
  std::vector<Valuation> vals(std::max(n, 0));
  std::unordered_set<int> seen;
  for (const auto& st : states) {
    if (!st.is_object() || !st.contains("id") ||
        !st["id"].is_number_integer())
      throw ModelError("each state needs an integer \"id\"");
    int id = st["id"].get<int>();
    if (id < 0 || id >= n)
      throw ModelError("state ids must be dense 0..n-1; got " +
                       std::to_string(id));
    if (!seen.insert(id).second)
      throw ModelError("duplicate state id " + std::to_string(id));
    Valuation v;
    if (st.contains("valuation")) {
      if (!st["valuation"].is_object())
        throw ModelError("\"valuation\" must be an object");
      for (const auto& [key, value] : st["valuation"].items()) {
        if (!value.is_boolean())
          throw ModelError("valuation entries must be booleans");
        v[key] = value.get<bool>();
      }
    }
    vals[id] = std::move(v);
  }
  std::vector<std::pair<int, int>> rel;
  if (j.contains("relation")) {
    if (!j["relation"].is_array())
      throw ModelError("\"relation\" must be an array of [from,to] pairs");
    for (const auto& e : j["relation"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw ModelError("relation entries must be [from,to] integer pairs");
      rel.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  return KripkeModel(n, std::move(rel), std::move(vals));
}

std::string KripkeModel::to_json() const {
  nlohmann::ordered_json j;
  j["states"] = nlohmann::json::array();
  for (int s = 0; s < num_states_; ++s) {
    nlohmann::ordered_json st;
    st["id"] = s;
    st["valuation"] = nlohmann::json::object();
    for (const auto& [k, v] : valuations_[s]) st["valuation"][k] = v;
    j["states"].push_back(std::move(st));
  }
  j["relation"] = nlohmann::json::array();
  for (const auto& [from, to] : relation_)
    j["relation"].push_back({from, to});
  return j.dump();
}

bool model_check(const KripkeModel& m, int state, const Formula& f,
                 CheckStats* stats) {
  if (state < 0 || state >= m.num_states())
    throw ModelError("unknown state id " + std::to_string(state));

  // Distinct subformula nodes in children-first order; shared subtrees are
  // evaluated once.
  std::vector<Formula> order;
  std::unordered_set<const void*> visited;
  std::vector<std::pair<Formula, bool>> dfs{{f, false}};
  while (!dfs.empty()) {
    auto [cur, expanded] = dfs.back();
    dfs.pop_back();
    if (expanded) {
      order.push_back(cur);
      continue;
    }
    if (!visited.insert(cur.id()).second) continue;
    dfs.push_back({cur, true});
    switch (cur.kind()) {
      case Kind::Not:
      case Kind::Box:
      case Kind::Dia:
        dfs.push_back({cur.child(), false});
        break;
      case Kind::And:
      case Kind::Or:
        dfs.push_back({cur.left(), false});
        dfs.push_back({cur.right(), false});
        break;
      default:
        break;
    }
  }

  int n = m.num_states();
  std::unordered_map<const void*, std::vector<char>> truth;
  truth.reserve(order.size());
  for (const Formula& g : order) {
    std::vector<char> row(n, 0);
    switch (g.kind()) {
      case Kind::Var:
        for (int s = 0; s < n; ++s) row[s] = m.value(s, g.var_name());
        break;
      case Kind::Top:
        std::fill(row.begin(), row.end(), 1);
        break;
      case Kind::Bot:
        break;
      case Kind::Not: {
        const auto& c = truth.at(g.child().id());
        for (int s = 0; s < n; ++s) row[s] = !c[s];
        break;
      }
      case Kind::And: {
        const auto& l = truth.at(g.left().id());
        const auto& r = truth.at(g.right().id());
        for (int s = 0; s < n; ++s) row[s] = l[s] && r[s];
        break;
      }
      case Kind::Or: {
        const auto& l = truth.at(g.left().id());
        const auto& r = truth.at(g.right().id());
        for (int s = 0; s < n; ++s) row[s] = l[s] || r[s];
        break;
      }
      case Kind::Box: {
        const auto& c = truth.at(g.child().id());
        for (int s = 0; s < n; ++s) {
          char ok = 1;
          for (int t : m.successors(s))
            if (!c[t]) { ok = 0; break; }
          row[s] = ok;
        }
        break;
      }
      case Kind::Dia: {
        const auto& c = truth.at(g.child().id());
        for (int s = 0; s < n; ++s) {
          char ok = 0;
          for (int t : m.successors(s))
            if (c[t]) { ok = 1; break; }
          row[s] = ok;
        }
        break;
      }
    }
    if (stats) stats->evaluations += static_cast<std::uint64_t>(n);
    truth.emplace(g.id(), std::move(row));
  }
  return truth.at(f.id())[state] != 0;
}

}  // namespace modalk
