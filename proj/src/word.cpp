#include "varitas/word.hpp"

#include <algorithm>
#include <limits>

#include "varitas/config.hpp"
#include "varitas/error.hpp"

namespace varitas {

// ---------------------------------------------------------------------------
// FreeWord

FreeWord::FreeWord(std::vector<Syllable> syllables) {
  for (auto const& s : syllables) {
    if (s.var == 0) throw InvalidArgument("variable index must be positive");
    if (s.exp == 0) continue;
    if (!syllables_.empty() && syllables_.back().var == s.var) {
      syllables_.back().exp += s.exp;
      if (syllables_.back().exp == 0) syllables_.pop_back();
    } else {
      syllables_.push_back(s);
    }
  }
  for (auto const& s : syllables_) arity_ = std::max(arity_, s.var);
}

FreeWord FreeWord::variable(std::uint32_t index) { return FreeWord({{index, 1}}); }

std::uint64_t FreeWord::length() const noexcept {
  std::uint64_t n = 0;
  for (auto const& s : syllables_) n += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

FreeWord FreeWord::inverse() const {
  std::vector<Syllable> out(syllables_.rbegin(), syllables_.rend());
  for (auto& s : out) s.exp = -s.exp;
  return FreeWord(std::move(out));
}

FreeWord FreeWord::pow(std::int64_t k) const {
  if (k == 0 || empty()) return {};
  if (syllables_.size() == 1) return FreeWord({{syllables_[0].var, syllables_[0].exp * k}});
  FreeWord base = k < 0 ? inverse() : *this;
  std::uint64_t const reps = static_cast<std::uint64_t>(k < 0 ? -k : k);
  if (reps * syllables_.size() > 1'000'000) throw InvalidArgument("word power too long");
  std::vector<Syllable> out;
  for (std::uint64_t r = 0; r < reps; ++r) {
    out.insert(out.end(), base.syllables_.begin(), base.syllables_.end());
  }
  return FreeWord(std::move(out));
}

FreeWord operator*(FreeWord const& a, FreeWord const& b) {
  std::vector<Syllable> out = a.syllables_;
  out.insert(out.end(), b.syllables_.begin(), b.syllables_.end());
  return FreeWord(std::move(out));
}

std::vector<std::int64_t> FreeWord::exponent_sums() const {
  std::vector<std::int64_t> sums(arity_ + 1, 0);
  for (auto const& s : syllables_) sums[s.var] += s.exp;
  return sums;
}

FreeWord commutator(FreeWord const& a, FreeWord const& b) {
  return a.inverse() * b.inverse() * a * b;
}

FreeWord commutator(std::span<FreeWord const> ws) {
  if (ws.size() < 2) throw InvalidArgument("a commutator needs at least two entries");
  FreeWord acc = commutator(ws[0], ws[1]);
  for (std::size_t i = 2; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  FreeWord parse() {
    FreeWord w = word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(std::string const& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool is_digit() const {
    return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9';
  }

  std::uint64_t digits() {
    if (!is_digit()) fail("expected a number");
    std::uint64_t v = 0;
    while (is_digit()) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1'000'000'000'000ull) fail("number too large");
      ++pos_;
    }
    return v;
  }

  FreeWord word() {
    FreeWord acc;
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos_ == text_.size()) break;
      char const c = text_[pos_];
      if (c == ')' || c == ']' || c == ',') break;
      acc = acc * term();
      any = true;
    }
    if (!any) fail("expected a term");
    return acc;
  }

  FreeWord term() {
    FreeWord a = atom();
    if (at('^')) {
      ++pos_;
      skip_ws();
      std::size_t const start = pos_;
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      std::int64_t const e = static_cast<std::int64_t>(digits());
      if (e == 0) throw ParseError("exponent 0", start);
      a = a.pow(negative ? -e : e);
    }
    return a;
  }

  FreeWord atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    char const c = text_[pos_];
    if (c == 'x') {
      ++pos_;
      std::size_t const start = pos_;
      std::uint64_t const v = digits();
      if (v == 0) throw ParseError("variable index 0", start);
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError("variable index too large", start);
      }
      return FreeWord::variable(static_cast<std::uint32_t>(v));
    }
    if (c == '1') {
      ++pos_;
      if (is_digit()) fail("unexpected digit");
      return {};
    }
    if (c == '(') {
      ++pos_;
      FreeWord w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<FreeWord> parts{word()};
      while (at(',')) {
        ++pos_;
        parts.push_back(word());
      }
      if (parts.size() < 2) fail("a commutator needs at least two entries");
      expect(']');
      return commutator(parts);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FreeWord parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string print_word(FreeWord const& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto const& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(s.var);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

CompiledWord::CompiledWord(FreeWord const& w) : arity_(w.arity()) {
  for (auto const& s : w.syllables()) {
    std::uint64_t const reps = static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
    if (letters_.size() + reps > 10'000'000) {
      throw InvalidArgument("word too long to evaluate");
    }
    for (std::uint64_t r = 0; r < reps; ++r) letters_.push_back({s.var - 1, s.exp < 0});
  }
}

Elem evaluate_word(FiniteGroup const& g, FreeWord const& w,
                   std::span<Elem const> assignment) {
  if (assignment.size() < w.arity()) {
    throw InvalidArgument("no value bound to x" + std::to_string(assignment.size() + 1));
  }
  for (auto a : assignment) g.check_index(a);
  Elem acc = 0;
  for (auto const& s : w.syllables()) acc = g.mul(acc, g.pow(assignment[s.var - 1], s.exp));
  return acc;
}

std::uint64_t tuple_count(std::uint64_t domain, std::uint32_t arity) noexcept {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (domain != 0 && n > std::numeric_limits<std::uint64_t>::max() / domain) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= domain;
  }
  return n;
}

namespace {

std::vector<Elem> whole_domain(FiniteGroup const& g) {
  std::vector<Elem> d(g.order());
  for (Elem a = 0; a < g.order(); ++a) d[a] = a;
  return d;
}

void check_budget(std::uint64_t required, std::string const& what) {
  if (required > limits().budget) {
    throw BudgetExceeded(what, static_cast<double>(required),
                         static_cast<double>(limits().budget));
  }
}

// Walks tuples [begin, end) of domain^arity, calling visit(index, values).
// visit returns true to stop early.
template <class Visit>
void walk_tuples(std::span<Elem const> domain, std::uint32_t arity, std::uint64_t begin,
                 std::uint64_t end, Visit&& visit) {
  kernels::Odometer od(static_cast<std::uint32_t>(domain.size()), arity, begin);
  std::vector<Elem> values(arity);
  for (std::uint32_t i = 0; i < arity; ++i) values[i] = domain[od[i]];
  for (std::uint64_t t = begin; t < end; ++t) {
    if (visit(t, values.data())) return;
    if (t + 1 == end) break;
    for (std::size_t i = od.next(); i < arity; ++i) values[i] = domain[od[i]];
  }
}

}  // namespace

IdentityVerdict is_identity(FiniteGroup const& g, FreeWord const& w,
                            std::span<Elem const> domain, kernels::Mode mode) {
  std::vector<Elem> all;
  if (domain.empty()) {
    all = whole_domain(g);
    domain = all;
  }
  IdentityVerdict v;
  if (w.empty()) {
    v.tuples_checked = 1;
    return v;
  }
  std::uint32_t const arity = w.arity();
  std::uint64_t const count = tuple_count(domain.size(), arity);
  check_budget(count, "identity scan of " + print_word(w) + " on " + g.name());
  CompiledWord const cw(w);
  auto scan = [&](std::uint64_t begin, std::uint64_t end) noexcept
      -> std::optional<std::uint64_t> {
    std::optional<std::uint64_t> hit;
    walk_tuples(domain, arity, begin, end, [&](std::uint64_t t, Elem const* vals) {
      if (cw(g, vals) != 0) {
        hit = t;
        return true;
      }
      return false;
    });
    return hit;
  };
  auto hit = kernels::least_failure(count, scan, mode);
  if (!hit) {
    v.tuples_checked = count;
    return v;
  }
  v.holds = false;
  v.tuples_checked = *hit + 1;
  kernels::Odometer od(static_cast<std::uint32_t>(domain.size()), arity, *hit);
  std::vector<Elem> ce(arity);
  for (std::uint32_t i = 0; i < arity; ++i) ce[i] = domain[od[i]];
  v.counterexample = std::move(ce);
  return v;
}

FreeWord standard_word(StandardKind kind, int param) {
  switch (kind) {
    case StandardKind::abelian:
      return commutator(FreeWord::variable(1), FreeWord::variable(2));
    case StandardKind::nilpotent: {
      if (param < 1) throw InvalidArgument("nilpotency class must be at least 1");
      if (param > 30) throw InvalidArgument("nilpotency class too large");
      std::vector<FreeWord> vars;
      for (int i = 1; i <= param + 1; ++i) {
        vars.push_back(FreeWord::variable(static_cast<std::uint32_t>(i)));
      }
      return commutator(vars);
    }
    case StandardKind::metabelian:
      return commutator(commutator(FreeWord::variable(1), FreeWord::variable(2)),
                        commutator(FreeWord::variable(3), FreeWord::variable(4)));
    case StandardKind::burnside:
      if (param < 1) throw InvalidArgument("exponent must be at least 1");
      return FreeWord::variable(1).pow(param);
  }
  throw InvalidArgument("unknown word kind");
}

// ---------------------------------------------------------------------------
// Verbal and marginal subgroups

SubgroupSet verbal_subgroup(FiniteGroup const& g, std::span<FreeWord const> ws) {
  std::vector<Elem> const domain = whole_domain(g);
  std::vector<char> value(g.order(), 0);
  value[0] = 1;
  for (auto const& w : ws) {
    if (w.empty()) continue;
    std::uint32_t const arity = w.arity();
    std::uint64_t const count = tuple_count(domain.size(), arity);
    check_budget(count, "verbal subgroup of " + print_word(w) + " on " + g.name());
    CompiledWord const cw(w);
    std::int64_t const shards = static_cast<std::int64_t>(std::min<std::uint64_t>(count, 64));
    std::vector<std::vector<char>> seen(shards, std::vector<char>(g.order(), 0));
    kernels::for_each_index(shards, [&](std::int64_t s) {
      std::uint64_t const begin = count * static_cast<std::uint64_t>(s) / shards;
      std::uint64_t const end = count * static_cast<std::uint64_t>(s + 1) / shards;
      if (begin == end) return;
      walk_tuples(domain, arity, begin, end, [&](std::uint64_t, Elem const* vals) {
        seen[s][cw(g, vals)] = 1;
        return false;
      });
    });
    for (auto const& part : seen) {
      for (Elem a = 0; a < g.order(); ++a) value[a] |= part[a];
    }
  }
  std::vector<Elem> values;
  for (Elem a = 0; a < g.order(); ++a) {
    if (!value[a]) continue;
    values.push_back(a);
    for (Elem x = 0; x < g.order(); ++x) {
      if (!value[g.conj(a, x)]) throw Error("word values are not closed under conjugation");
    }
  }
  return generate(g, values);
}

SubgroupSet marginal_subgroup(FiniteGroup const& g, std::span<FreeWord const> ws) {
  std::size_t const n = g.order();
  std::vector<char> marginal(n, 1);
  std::vector<Elem> const domain = whole_domain(g);
  for (auto const& w : ws) {
    if (w.empty()) continue;
    std::uint32_t const arity = w.arity();
    std::uint64_t const count = tuple_count(n, arity);
    if (count > limits().budget / arity) {
      throw BudgetExceeded("marginal subgroup of " + print_word(w) + " on " + g.name(),
                           static_cast<double>(count) * arity,
                           static_cast<double>(limits().budget));
    }
    CompiledWord const cw(w);
    // tuple index t has digit i (x(i+1)) at weight n^(arity-1-i)
    std::vector<std::uint64_t> weight(arity, 1);
    for (std::uint32_t i = arity - 1; i-- > 0;) weight[i] = weight[i + 1] * n;

    constexpr std::uint64_t table_limit = std::uint64_t{1} << 24;
    std::vector<Elem> values;
    if (count <= table_limit) {
      values.resize(count);
      walk_tuples(domain, arity, 0, count, [&](std::uint64_t t, Elem const* vals) {
        values[t] = cw(g, vals);
        return false;
      });
    }
    std::vector<char> ok(n, 0);
    ok[0] = 1;
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t c) {
      Elem const cand = static_cast<Elem>(c);
      if (cand == 0 || !marginal[cand]) return;
      bool good = true;
      std::vector<Elem> shifted(arity);
      walk_tuples(domain, arity, 0, count, [&](std::uint64_t t, Elem const* vals) {
        Elem const base = values.empty() ? cw(g, vals) : values[t];
        for (std::uint32_t i = 0; i < arity; ++i) {
          Elem const moved = g.mul(cand, vals[i]);
          Elem got;
          if (!values.empty()) {
            got = values[t + (static_cast<std::uint64_t>(moved) - vals[i]) * weight[i]];
          } else {
            std::copy(vals, vals + arity, shifted.begin());
            shifted[i] = moved;
            got = cw(g, shifted.data());
          }
          if (got != base) {
            good = false;
            return true;
          }
        }
        return false;
      });
      ok[cand] = good ? 1 : 0;
    });
    for (Elem a = 0; a < n; ++a) marginal[a] = marginal[a] && ok[a];
  }
  std::vector<Elem> members;
  for (Elem a = 0; a < n; ++a) {
    if (marginal[a]) members.push_back(a);
  }
  SubgroupSet result(g, std::move(members));
  if (!result.is_normal()) throw Error("marginal subgroup is not normal");
  return result;
}

}  // namespace varitas
