#include "agc/library/mealy.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace agc::library {

namespace {

std::vector<std::string> words(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t index_in(const std::vector<std::string> &v, const std::string &x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

// Parses "a=0,b=1" over `names`; every name exactly once, or "-" if none.
std::vector<bool> assignment(const std::string &text,
                             const std::vector<std::string> &names,
                             SourcePos pos) {
  std::vector<bool> values(names.size(), false);
  if (text == "-") {
    if (!names.empty()) throw ParseError("assignment '-' leaves atoms unset", pos);
    return values;
  }
  std::vector<bool> seen(names.size(), false);
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected name=0|1, found '" + item + "'", pos);
    }
    const std::string name = item.substr(0, eq), val = item.substr(eq + 1);
    const std::size_t i = index_in(names, name);
    if (i == names.size()) throw ParseError("unknown atom '" + name + "'", pos);
    if (seen[i]) throw ParseError("atom '" + name + "' assigned twice", pos);
    if (val != "0" && val != "1") {
      throw ParseError("value of '" + name + "' must be 0 or 1", pos);
    }
    seen[i] = true;
    values[i] = val == "1";
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!seen[i]) throw ParseError("atom '" + names[i] + "' not assigned", pos);
  }
  return values;
}

std::uint64_t pack(const std::vector<bool> &bits) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) x |= std::uint64_t{1} << i;
  }
  return x;
}

} // namespace

MealyMachine MealyMachine::parse(std::string_view text) {
  MealyMachine m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::string initial;
  bool have_states = false, have_inputs = false, have_outputs = false;
  struct Pending {
    std::vector<std::string> parts;
    SourcePos pos;
  };
  std::vector<Pending> trans;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const SourcePos pos{lineno, 1};
    const auto colon = line.find(':');
    if (words(line).empty()) continue;
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", pos);
    const std::string key = words(line.substr(0, colon)).empty()
                                ? ""
                                : words(line.substr(0, colon)).front();
    const std::vector<std::string> rest = words(line.substr(colon + 1));
    if (key == "states") {
      m.states_ = rest;
      have_states = true;
    } else if (key == "initial") {
      if (rest.size() != 1) throw ParseError("expected one initial state", pos);
      initial = rest.front();
    } else if (key == "inputs") {
      m.inputs_ = rest;
      have_inputs = true;
    } else if (key == "outputs") {
      m.outputs_ = rest;
      have_outputs = true;
    } else if (key == "trans") {
      trans.push_back({rest, pos});
    } else {
      throw ParseError("unknown key '" + key + "'", pos);
    }
  }
  if (!have_states || m.states_.empty()) throw ParseError("missing states", {lineno, 1});
  if (!have_inputs || !have_outputs) {
    throw ParseError("missing inputs or outputs declaration", {lineno, 1});
  }
  if (m.inputs_.size() > 20) throw ParseError("too many inputs", {lineno, 1});
  for (const auto *list : {&m.states_, &m.inputs_, &m.outputs_}) {
    std::set<std::string> uniq(list->begin(), list->end());
    if (uniq.size() != list->size()) throw ParseError("duplicate name", {lineno, 1});
  }
  for (const auto &o : m.outputs_) {
    if (index_in(m.inputs_, o) != m.inputs_.size()) {
      throw ParseError("'" + o + "' is both an input and an output", {lineno, 1});
    }
  }
  m.initial_ = index_in(m.states_, initial);
  if (m.initial_ == m.states_.size()) {
    throw ParseError("unknown initial state '" + initial + "'", {lineno, 1});
  }
  for (const Pending &t : trans) {
    if (t.parts.size() != 5 || t.parts[2] != "->") {
      throw ParseError("expected 'trans: <state> <inputs> -> <state> <outputs>'",
                       t.pos);
    }
    const std::size_t from = index_in(m.states_, t.parts[0]);
    const std::size_t to = index_in(m.states_, t.parts[3]);
    if (from == m.states_.size() || to == m.states_.size()) {
      throw ParseError("unknown state in transition", t.pos);
    }
    const std::uint64_t letter = pack(assignment(t.parts[1], m.inputs_, t.pos));
    Target target{to, assignment(t.parts[4], m.outputs_, t.pos)};
    if (!m.delta_.emplace(std::make_pair(from, letter), std::move(target)).second) {
      throw ParseError("duplicate transition from '" + t.parts[0] + "' on " +
                           t.parts[1],
                       t.pos);
    }
  }
  return m;
}

MealyMachine MealyMachine::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open machine file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.bare_message(), e.position());
  }
}

const MealyMachine::Target *MealyMachine::step(std::size_t state,
                                               std::uint64_t letter) const {
  auto it = delta_.find({state, letter});
  return it == delta_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::string>>
MealyMachine::missing_transitions() const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::uint64_t letters = std::uint64_t{1} << inputs_.size();
  for (std::size_t s = 0; s < states_.size(); ++s) {
    for (std::uint64_t l = 0; l < letters; ++l) {
      if (step(s, l)) continue;
      std::string text;
      for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (i) text += ',';
        text += inputs_[i] + "=" + (((l >> i) & 1) ? "1" : "0");
      }
      out.emplace_back(states_[s], text.empty() ? "-" : text);
    }
  }
  return out;
}

ltl::LassoTrace MealyMachine::simulate(const ltl::LassoTrace &input) const {
  std::set<std::string> declared(input.aps().begin(), input.aps().end());
  if (declared != std::set<std::string>(inputs_.begin(), inputs_.end())) {
    throw Error("input trace must range over exactly the machine inputs");
  }
  std::vector<std::size_t> in_index;
  for (const auto &name : inputs_) in_index.push_back(input.index_of(name));

  std::set<std::string> all(inputs_.begin(), inputs_.end());
  all.insert(outputs_.begin(), outputs_.end());
  const std::vector<std::string> aps(all.begin(), all.end());

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  std::vector<ltl::State> steps;
  std::size_t state = initial_, pos = 0;
  while (true) {
    auto [it, fresh] = seen.emplace(std::make_pair(state, pos), steps.size());
    if (!fresh) {
      const std::size_t start = it->second;
      std::vector<ltl::State> prefix(steps.begin(),
                                     steps.begin() + static_cast<long>(start));
      std::vector<ltl::State> loop(steps.begin() + static_cast<long>(start),
                                   steps.end());
      return ltl::LassoTrace(aps, std::move(prefix), std::move(loop));
    }
    const ltl::State &in = input.at(pos);
    std::vector<bool> bits;
    for (std::size_t i : in_index) bits.push_back(in[i]);
    const Target *t = step(state, pack(bits));
    if (!t) {
      throw Error("machine has no transition from '" + states_[state] +
                  "' on this input");
    }
    ltl::State out(aps.size(), false);
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      out[index_in(aps, inputs_[i])] = bits[i];
    }
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
      out[index_in(aps, outputs_[i])] = t->outputs[i];
    }
    steps.push_back(std::move(out));
    state = t->state;
    pos = input.successor(pos);
  }
}

} // namespace agc::library
