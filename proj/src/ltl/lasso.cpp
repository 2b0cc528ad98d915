#include "agc/ltl/lasso.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace agc::ltl {

LassoTrace::LassoTrace(std::vector<std::string> aps, std::vector<State> prefix,
                       std::vector<State> loop)
    : aps_(std::move(aps)), prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) {
    throw Error("lasso loop must contain at least one state");
  }
  auto check = [&](const State &s) {
    if (s.size() != aps_.size()) {
      throw Error("lasso state does not assign every declared atom");
    }
  };
  std::for_each(prefix_.begin(), prefix_.end(), check);
  std::for_each(loop_.begin(), loop_.end(), check);
}

LassoTrace
LassoTrace::from_maps(const std::vector<std::map<std::string, bool>> &prefix,
                      const std::vector<std::map<std::string, bool>> &loop) {
  std::set<std::string> names;
  for (const auto *part : {&prefix, &loop}) {
    for (const auto &m : *part) {
      for (const auto &[k, v] : m) {
        names.insert(k);
      }
    }
  }
  std::vector<std::string> aps(names.begin(), names.end());
  auto convert = [&](const std::vector<std::map<std::string, bool>> &part) {
    std::vector<State> out;
    for (const auto &m : part) {
      State s(aps.size(), false);
      for (std::size_t i = 0; i < aps.size(); ++i) {
        if (auto it = m.find(aps[i]); it != m.end()) {
          s[i] = it->second;
        }
      }
      out.push_back(std::move(s));
    }
    return out;
  };
  return LassoTrace(aps, convert(prefix), convert(loop));
}

const State &LassoTrace::at(std::size_t i) const {
  if (i < prefix_.size()) {
    return prefix_[i];
  }
  return loop_[(i - prefix_.size()) % loop_.size()];
}

std::size_t LassoTrace::successor(std::size_t i) const noexcept {
  const std::size_t n = length();
  return i + 1 < n ? i + 1 : prefix_.size();
}

std::size_t LassoTrace::index_of(const std::string &ap) const noexcept {
  auto it = std::find(aps_.begin(), aps_.end(), ap);
  return it == aps_.end() ? static_cast<std::size_t>(-1)
                          : static_cast<std::size_t>(it - aps_.begin());
}

bool LassoTrace::value(std::size_t position, const std::string &ap) const {
  const std::size_t idx = index_of(ap);
  if (idx == static_cast<std::size_t>(-1)) {
    throw Error("atom '" + ap + "' is not declared by the trace");
  }
  return at(position)[idx];
}

std::string LassoTrace::to_string() const {
  auto state_str = [&](const State &s) {
    std::string out = "{";
    for (std::size_t i = 0; i < aps_.size(); ++i) {
      if (i) out += ",";
      out += aps_[i] + (s[i] ? ":T" : ":F");
    }
    return out + "}";
  };
  std::string out = "prefix [";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    out += (i ? ", " : "") + state_str(prefix_[i]);
  }
  out += "] loop [";
  for (std::size_t i = 0; i < loop_.size(); ++i) {
    out += (i ? ", " : "") + state_str(loop_[i]);
  }
  return out + "]";
}

namespace {

// Positions >= |prefix| are the loop; successor(last) wraps to |prefix|, so
// one table per subformula indexed by position is the whole memo.
class LassoEvaluator {
public:
  explicit LassoEvaluator(const LassoTrace &t) : t_(t), n_(t.length()) {}

  const std::vector<bool> &eval(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end()) {
      return it->second;
    }
    std::vector<bool> v = compute(f);
    return memo_.emplace(f, std::move(v)).first->second;
  }

private:
  std::vector<bool> compute(const Formula &f) {
    std::vector<bool> out(n_, false);
    switch (f.kind()) {
    case Kind::True:
      out.assign(n_, true);
      break;
    case Kind::False:
      break;
    case Kind::Atom: {
      const std::size_t idx = t_.index_of(f.name());
      if (idx == static_cast<std::size_t>(-1)) {
        throw Error("atom '" + f.name() + "' is not declared by the trace");
      }
      for (std::size_t i = 0; i < n_; ++i) {
        out[i] = t_.at(i)[idx];
      }
      break;
    }
    case Kind::Not: {
      const auto a = eval(f.lhs());
      for (std::size_t i = 0; i < n_; ++i) out[i] = !a[i];
      break;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const auto a = eval(f.lhs());
      const auto b = eval(f.rhs());
      for (std::size_t i = 0; i < n_; ++i) {
        switch (f.kind()) {
        case Kind::And: out[i] = a[i] && b[i]; break;
        case Kind::Or: out[i] = a[i] || b[i]; break;
        case Kind::Implies: out[i] = !a[i] || b[i]; break;
        default: out[i] = a[i] == b[i]; break;
        }
      }
      break;
    }
    case Kind::Next: {
      const auto a = eval(f.lhs());
      for (std::size_t i = 0; i < n_; ++i) out[i] = a[t_.successor(i)];
      break;
    }
    case Kind::Until:
      return fixpoint(eval(f.lhs()), eval(f.rhs()), true);
    case Kind::Release:
      return fixpoint(eval(f.lhs()), eval(f.rhs()), false);
    case Kind::Eventually:
      return fixpoint(std::vector<bool>(n_, true), eval(f.lhs()), true);
    case Kind::Globally:
      return fixpoint(std::vector<bool>(n_, false), eval(f.lhs()), false);
    }
    return out;
  }

  // Until:   v_i = b_i | (a_i & v_succ(i))   least fixpoint
  // Release: v_i = b_i & (a_i | v_succ(i))   greatest fixpoint
  // Starting from b is below the least and above the greatest fixpoint; one
  // sweep around the loop per loop state reaches it, then the prefix is a
  // single backward pass.
  std::vector<bool> fixpoint(const std::vector<bool> &a,
                             const std::vector<bool> &b, bool is_until) {
    const std::size_t p = t_.prefix().size();
    std::vector<bool> v = b;
    auto step = [&](std::size_t i) {
      const bool nxt = v[t_.successor(i)];
      v[i] = is_until ? (b[i] || (a[i] && nxt)) : (b[i] && (a[i] || nxt));
    };
    const std::size_t loop_len = n_ - p;
    for (std::size_t round = 0; round < loop_len; ++round) {
      for (std::size_t i = n_; i-- > p;) {
        step(i);
      }
    }
    for (std::size_t i = p; i-- > 0;) {
      step(i);
    }
    return v;
  }

  const LassoTrace &t_;
  std::size_t n_;
  std::unordered_map<Formula, std::vector<bool>> memo_;
};

} // namespace

std::vector<bool> evaluate_all_positions(const Formula &f,
                                         const LassoTrace &trace) {
  LassoEvaluator ev(trace);
  return ev.eval(f);
}

bool evaluate_on_lasso(const Formula &f, const LassoTrace &trace,
                       std::size_t position) {
  if (position >= trace.length()) {
    throw Error("position " + std::to_string(position) +
                " is outside the lasso of length " +
                std::to_string(trace.length()));
  }
  return evaluate_all_positions(f, trace)[position];
}

} // namespace agc::ltl
