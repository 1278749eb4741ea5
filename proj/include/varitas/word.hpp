#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varitas/group.hpp"
#include "varitas/kernels.hpp"

namespace varitas {

struct Syllable {
  std::uint32_t var = 1;  // 1-based
  std::int64_t exp = 1;   // nonzero

  friend auto operator<=>(Syllable const&, Syllable const&) = default;
};

/// A freely reduced word in x1, x2, ...
class FreeWord {
 public:
  /// The empty word.
  FreeWord() = default;
  /// Freely reduces the input.  Throws on variable 0.
  explicit FreeWord(std::vector<Syllable> syllables);

  static FreeWord variable(std::uint32_t index);

  std::vector<Syllable> const& syllables() const noexcept { return syllables_; }
  /// Largest variable index, 0 for the empty word.
  std::uint32_t arity() const noexcept { return arity_; }
  bool empty() const noexcept { return syllables_.empty(); }
  /// Sum of |exponent|.
  std::uint64_t length() const noexcept;

  FreeWord inverse() const;
  FreeWord pow(std::int64_t k) const;
  friend FreeWord operator*(FreeWord const& a, FreeWord const& b);

  /// Exponent sum of each variable, indexed from 1 (entry 0 unused).
  std::vector<std::int64_t> exponent_sums() const;

  friend bool operator==(FreeWord const&, FreeWord const&) = default;
  friend auto operator<=>(FreeWord const& a, FreeWord const& b) {
    return a.syllables_ <=> b.syllables_;
  }

 private:
  std::vector<Syllable> syllables_;
  std::uint32_t arity_ = 0;
};

/// [a, b] = a^-1 b^-1 a b
FreeWord commutator(FreeWord const& a, FreeWord const& b);
/// Left-normed [w1, w2, ..., wk].
FreeWord commutator(std::span<FreeWord const> ws);

/// Grammar:  word := term {term};  term := atom ["^" int];
/// atom := "x" posint | "1" | "(" word ")" | "[" word "," word {"," word} "]".
FreeWord parse_word(std::string_view text);
/// "x1^2 x2^-1 x1"; the empty word prints as "1".
std::string print_word(FreeWord const& w);

/// Flattened letters (variable index, inverted) for repeated evaluation.
class CompiledWord {
 public:
  explicit CompiledWord(FreeWord const& w);
  std::uint32_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return letters_.size(); }

  /// `values[i]` is the value of x(i+1).
  Elem operator()(FiniteGroup const& g, Elem const* values) const noexcept {
    Elem acc = 0;
    for (auto const& l : letters_) {
      Elem v = values[l.var];
      acc = g.mul(acc, l.inverse ? g.inv(v) : v);
    }
    return acc;
  }

 private:
  struct Letter {
    std::uint32_t var;  // 0-based
    bool inverse;
  };
  std::vector<Letter> letters_;
  std::uint32_t arity_ = 0;
};

/// Throws InvalidArgument when `assignment` does not cover every variable.
Elem evaluate_word(FiniteGroup const& g, FreeWord const& w,
                   std::span<Elem const> assignment);

struct IdentityVerdict {
  bool holds = true;
  std::optional<std::vector<Elem>> counterexample;
  std::uint64_t tuples_checked = 0;
};

/// |domain|^arity with overflow saturating to UINT64_MAX.
std::uint64_t tuple_count(std::uint64_t domain, std::uint32_t arity) noexcept;

/// Scans all assignments in lexicographic order (x1 most significant) and
/// reports the least counterexample.  `domain` restricts the values to a
/// subset (normally a subgroup's members); empty means the whole group.
IdentityVerdict is_identity(FiniteGroup const& g, FreeWord const& w,
                            std::span<Elem const> domain = {},
                            kernels::Mode mode = kernels::Mode::automatic);

enum class StandardKind { abelian, nilpotent, metabelian, burnside };

/// abelian [x1,x2]; nilpotent-k [x1,...,x(k+1)]; metabelian
/// [[x1,x2],[x3,x4]]; burnside-n x1^n.
FreeWord standard_word(StandardKind kind, int param = 0);

/// Subgroup generated by all values of the words.
SubgroupSet verbal_subgroup(FiniteGroup const& g, std::span<FreeWord const> ws);

/// Elements g such that replacing any one argument x_i by g x_i never
/// changes a word's value, intersected over the words.
SubgroupSet marginal_subgroup(FiniteGroup const& g, std::span<FreeWord const> ws);

}  // namespace varitas
