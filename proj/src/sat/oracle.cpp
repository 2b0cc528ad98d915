#include "agc/sat/oracle.hpp"

#include "agc/error.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace agc::sat {

using ltl::Formula;
using ltl::Kind;
using simd::Word;

namespace {

constexpr unsigned kBlockBits = 16;
constexpr Word kLowMasks[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Evaluates a formula for all assignments of one block of a lasso shape.
// Assignment index = (block << kBlockBits) | local index; variable v of the
// index is the value of atom (v % m) at position (v / m).
class BlockEvaluator {
public:
  BlockEvaluator(const simd::KernelTable &k, const std::vector<std::string> &aps,
                 std::size_t prefix_len, std::size_t loop_len)
      : k_(k), aps_(aps), prefix_(prefix_len),
        n_(prefix_len + loop_len) {
    const std::size_t vars = aps.size() * n_;
    local_bits_ = static_cast<unsigned>(std::min<std::size_t>(vars, kBlockBits));
    words_ = local_bits_ <= 6 ? 1 : (std::size_t{1} << (local_bits_ - 6));
    valid_ = local_bits_ >= 6 ? ~Word{0}
                              : ((Word{1} << (std::size_t{1} << local_bits_)) - 1);
    blocks_ = std::uint64_t{1} << (vars - local_bits_);
  }

  std::size_t words() const noexcept { return words_; }
  std::uint64_t blocks() const noexcept { return blocks_; }
  Word valid_mask() const noexcept { return valid_; }

  /// Result at position 0, masked to valid assignments.
  std::vector<Word> run(const Formula &f, std::uint64_t block) {
    block_ = block;
    memo_.clear();
    std::vector<Word> out = eval(f)[0];
    out[0] &= valid_;
    return out;
  }

private:
  using Table = std::vector<std::vector<Word>>; // [position][word]

  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : prefix_; }

  Table constant(bool v) const {
    return Table(n_, std::vector<Word>(words_, v ? ~Word{0} : 0));
  }

  Table atom(const std::string &name) const {
    auto it = std::lower_bound(aps_.begin(), aps_.end(), name);
    if (it == aps_.end() || *it != name) {
      throw Error("atom '" + name + "' is not declared for evaluation");
    }
    const std::size_t m = aps_.size();
    const std::size_t a = static_cast<std::size_t>(it - aps_.begin());
    Table t(n_, std::vector<Word>(words_, 0));
    for (std::size_t pos = 0; pos < n_; ++pos) {
      const std::size_t v = pos * m + a;
      for (std::size_t w = 0; w < words_; ++w) {
        Word val;
        if (v < 6) {
          val = kLowMasks[v];
        } else if (v < kBlockBits) {
          val = ((w >> (v - 6)) & 1) ? ~Word{0} : 0;
        } else {
          val = ((block_ >> (v - kBlockBits)) & 1) ? ~Word{0} : 0;
        }
        t[pos][w] = val;
      }
    }
    return t;
  }

  // Least (until) or greatest (release) fixpoint of
  // r[i] = step(a[i], b[i], r[succ(i)]).
  Table fixpoint(const Table &a, const Table &b, bool until) const {
    Table r = constant(!until);
    auto step = until ? k_.until_step : k_.release_step;
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = n_; i-- > prefix_;) {
        step(r[i].data(), a[i].data(), b[i].data(), r[succ(i)].data(), words_);
      }
    }
    for (std::size_t i = prefix_; i-- > 0;) {
      step(r[i].data(), a[i].data(), b[i].data(), r[i + 1].data(), words_);
    }
    return r;
  }

  const Table &eval(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    Table t;
    switch (f.kind()) {
    case Kind::True:
      t = constant(true);
      break;
    case Kind::False:
      t = constant(false);
      break;
    case Kind::Atom:
      t = atom(f.name());
      break;
    case Kind::Not: {
      t = eval(f.lhs());
      for (auto &row : t) k_.not_words(row.data(), row.data(), words_);
      break;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const Table l = eval(f.lhs());
      const Table &r = eval(f.rhs());
      t = constant(false);
      auto op = f.kind() == Kind::And       ? k_.and_words
                : f.kind() == Kind::Or      ? k_.or_words
                : f.kind() == Kind::Implies ? k_.implies_words
                                            : k_.xnor_words;
      for (std::size_t i = 0; i < n_; ++i) {
        op(t[i].data(), l[i].data(), r[i].data(), words_);
      }
      break;
    }
    case Kind::Next: {
      const Table &c = eval(f.lhs());
      t = constant(false);
      for (std::size_t i = 0; i < n_; ++i) t[i] = c[succ(i)];
      break;
    }
    case Kind::Until:
    case Kind::Release: {
      const Table l = eval(f.lhs());
      const Table &r = eval(f.rhs());
      t = fixpoint(l, r, f.kind() == Kind::Until);
      break;
    }
    case Kind::Eventually:
      t = fixpoint(constant(true), eval(f.lhs()), true);
      break;
    case Kind::Globally:
      t = fixpoint(constant(false), eval(f.lhs()), false);
      break;
    }
    return memo_.emplace(f, std::move(t)).first->second;
  }

  const simd::KernelTable &k_;
  const std::vector<std::string> &aps_;
  std::size_t prefix_;
  std::size_t n_;
  unsigned local_bits_ = 0;
  std::size_t words_ = 1;
  Word valid_ = 0;
  std::uint64_t blocks_ = 1;
  std::uint64_t block_ = 0;
  std::unordered_map<Formula, Table> memo_;
};

const simd::KernelTable &table(const OracleOptions &o) {
  return o.kernels ? *o.kernels : simd::active_kernels();
}

} // namespace

ltl::LassoTrace assignment_trace(const std::vector<std::string> &aps,
                                 std::size_t prefix_len, std::size_t loop_len,
                                 std::uint64_t index) {
  const std::size_t m = aps.size();
  std::vector<ltl::State> prefix, loop;
  for (std::size_t pos = 0; pos < prefix_len + loop_len; ++pos) {
    ltl::State s(m, false);
    for (std::size_t a = 0; a < m; ++a) s[a] = (index >> (pos * m + a)) & 1;
    (pos < prefix_len ? prefix : loop).push_back(std::move(s));
  }
  return ltl::LassoTrace(aps, std::move(prefix), std::move(loop));
}

std::optional<ltl::LassoTrace> lasso_oracle(const Formula &f, std::size_t bound,
                                            const OracleOptions &options) {
  const ltl::ApSet atom_set = ltl::atoms(f);
  if (atom_set.size() > kOracleMaxAtoms) {
    throw Error("lasso oracle supports at most " +
                std::to_string(kOracleMaxAtoms) + " atoms, formula has " +
                std::to_string(atom_set.size()));
  }
  if (bound == 0 || bound > kOracleMaxBound) {
    throw Error("lasso oracle bound must be in 1.." +
                std::to_string(kOracleMaxBound));
  }
  const std::vector<std::string> aps(atom_set.begin(), atom_set.end());
  const simd::KernelTable &k = table(options);
  for (std::size_t n = 1; n <= bound; ++n) {
    for (std::size_t l = 1; l <= n; ++l) {
      BlockEvaluator ev(k, aps, n - l, l);
      for (std::uint64_t block = 0; block < ev.blocks(); ++block) {
        const std::vector<Word> hits = ev.run(f, block);
        if (!k.any_words(hits.data(), hits.size())) continue;
        for (std::size_t w = 0; w < hits.size(); ++w) {
          if (hits[w] == 0) continue;
          const std::uint64_t local =
              w * 64 + static_cast<std::uint64_t>(std::countr_zero(hits[w]));
          return assignment_trace(aps, n - l, l,
                                  (block << kBlockBits) | local);
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Word> evaluate_all_assignments(const Formula &f,
                                           const std::vector<std::string> &aps,
                                           std::size_t prefix_len,
                                           std::size_t loop_len,
                                           const OracleOptions &options) {
  if (loop_len == 0) throw Error("loop length must be positive");
  if (!std::is_sorted(aps.begin(), aps.end())) {
    throw Error("atom list must be sorted");
  }
  const std::size_t vars = aps.size() * (prefix_len + loop_len);
  if (vars > 24) throw Error("too many assignment variables");
  BlockEvaluator ev(table(options), aps, prefix_len, loop_len);
  std::vector<Word> out;
  out.reserve(ev.blocks() * ev.words());
  for (std::uint64_t block = 0; block < ev.blocks(); ++block) {
    const std::vector<Word> part = ev.run(f, block);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

} // namespace agc::sat
