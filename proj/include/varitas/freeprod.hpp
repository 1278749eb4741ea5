#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "varitas/group.hpp"
#include "varitas/variety.hpp"
#include "varitas/word.hpp"

namespace varitas {

enum class Factor : std::uint8_t { A = 0, B = 1 };

struct PSyllable {
  Factor factor = Factor::A;
  Elem elem = 0;

  auto operator<=>(PSyllable const&) const = default;
};

/// An element of a free or amalgamated product in normal form: a head from
/// the amalgamated subgroup C (stored as an element of A; always the
/// identity in a free product) followed by coset representatives from
/// alternating factors.
struct PWord {
  Elem head = 0;
  std::vector<PSyllable> syllables;

  std::size_t length() const noexcept { return syllables.size(); }
  bool is_identity() const noexcept { return head == 0 && syllables.empty(); }

  auto operator<=>(PWord const&) const = default;
};

/// A <- C -> B with C given as a subgroup of A and an injective
/// homomorphism into B.  A free product is the case C = 1.  Normal forms
/// use right cosets C x with the least element index as representative, so
/// the identity represents C itself.
class FreeConstruction {
 public:
  enum class Kind { free_product, amalgam };

  /// Free product A * B.
  FreeConstruction(FiniteGroup a, FiniteGroup b);
  /// Amalgam A *_C B.  `pairing` lists (a, b) element pairs; it is closed
  /// under products and must define an injective homomorphism from a
  /// proper subgroup of A onto a proper subgroup of B.
  FreeConstruction(FiniteGroup a, FiniteGroup b,
                   std::span<std::pair<Elem, Elem> const> pairing);

  Kind kind() const noexcept { return kind_; }
  FiniteGroup const& factor(Factor f) const noexcept { return f == Factor::A ? a_ : b_; }
  /// C as a subgroup of A, and its image in B.
  SubgroupSet const& amalgamated_in_a() const noexcept { return c_a_; }
  SubgroupSet const& amalgamated_in_b() const noexcept { return c_b_; }
  /// psi: C (in A) -> B.
  Elem to_b(Elem c) const { return psi_[c]; }
  Elem to_a(Elem c_in_b) const { return psi_inv_[c_in_b]; }

  /// Coset representatives of C in a factor, identity first then ascending.
  std::vector<Elem> const& transversal(Factor f) const noexcept {
    return trans_[static_cast<int>(f)];
  }
  /// x = c * rep(x) with c in C (returned as an element of A).
  std::pair<Elem, Elem> split(Factor f, Elem x) const {
    auto const& s = split_[static_cast<int>(f)];
    return {s[x].first, s[x].second};
  }

  /// Named generators ("a1", "a2", "b1", ...) used for parsing and printing.
  std::vector<std::pair<std::string, PSyllable>> const& names() const noexcept { return names_; }
  void set_names(std::vector<std::pair<std::string, PSyllable>> names);
  /// Shortest product of named generators for an element of a factor, or
  /// the factor label when the generators do not reach it.
  std::string element_name(Factor f, Elem x) const;

  std::string const& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  void build_tables();

  Kind kind_;
  FiniteGroup a_, b_;
  SubgroupSet c_a_, c_b_;
  std::vector<Elem> psi_, psi_inv_;
  std::vector<Elem> trans_[2];
  std::vector<std::pair<Elem, Elem>> split_[2];
  std::vector<std::pair<std::string, PSyllable>> names_;
  std::vector<std::string> element_names_[2];
  std::string name_;
};

// ---------------------------------------------------------------------------
// Arithmetic

/// Normal form of a product of factor elements.
PWord pw_normal_form(FreeConstruction const& k, std::span<PSyllable const> raw);
PWord pw_normal_form(FreeConstruction const& k, PWord const& w);
PWord pw_multiply(FreeConstruction const& k, PWord const& u, PWord const& v);
PWord pw_invert(FreeConstruction const& k, PWord const& u);
/// h^g = g^-1 h g
PWord pw_conjugate(FreeConstruction const& k, PWord const& h, PWord const& g);
PWord pw_pow(FreeConstruction const& k, PWord const& u, std::int64_t e);
/// A conjugate whose first and last syllables lie in different factors
/// (or of length at most one).
PWord pw_cyclic_reduce(FreeConstruction const& k, PWord const& u);
/// Syllable length of the normal form; `cyclic` measures the cyclically
/// reduced form.
std::size_t pw_length(FreeConstruction const& k, PWord const& u, bool cyclic = false);

/// Element of a factor as a normal-form word.
PWord pw_embed(FreeConstruction const& k, Factor f, Elem x);
/// Whether u lies in the subgroup H of factor f.  Decided on the normal form.
bool pw_in_subgroup(FreeConstruction const& k, PWord const& u, Factor f, SubgroupSet const& h);

/// Parses "a2 b2^-1 a1" using the construction's generator names, and
/// A[label] / B[label] for arbitrary factor elements.  "1" is the identity.
PWord parse_pword(FreeConstruction const& k, std::string_view text);
std::string print_pword(FreeConstruction const& k, PWord const& u);
/// [["C","a1"],["A","a2"],["B","b2"]]; the C entry appears only for a
/// nontrivial head.
nlohmann::json pword_to_json(FreeConstruction const& k, PWord const& u);
PWord pword_from_json(FreeConstruction const& k, nlohmann::json const& doc);

// ---------------------------------------------------------------------------
// Constructions

/// Two dihedral groups of order 2p (p an odd prime) amalgamated over the
/// reflection subgroups <a1> = <b1>.  Generators: a1, a2 (rotation), b1, b2.
FreeConstruction d2p_amalgam(std::size_t p);
/// Presets "c3xc3" (C3 * C3), "free:<A>,<B>", "d2p:<p>", or a JSON file
/// {"kind": "free"|"amalgam", "A": groupref, "B": groupref, "pairing": [[a, b], ...]}.
FreeConstruction load_construction(std::string_view ref);
FreeConstruction construction_from_json(nlohmann::json const& doc);

// ---------------------------------------------------------------------------
// Bounded searches

/// Every normal form of length <= max_len: by length, then syllables
/// lexicographically, then head.
std::vector<PWord> bounded_words(FreeConstruction const& k, std::size_t max_len);
/// Number of such words without enumerating them (saturating).
std::uint64_t bounded_word_count(FreeConstruction const& k, std::size_t max_len);

struct BoundedMalnormalReport {
  bool ok = true;
  std::size_t max_len = 0;
  std::uint64_t words_checked = 0;
  /// g outside H and h in H \ {1} with h^g in H (least g, then least h).
  std::optional<std::pair<PWord, Elem>> witness;
};

/// Malnormality of a subgroup H of one factor, checked against every
/// normal form g of length <= max_len.
BoundedMalnormalReport bounded_malnormal_check(FreeConstruction const& k, Factor f,
                                               SubgroupSet const& h, std::size_t max_len);

struct NotXtWitness {
  bool found = false;
  bool a_member = false;
  bool b_member = false;
  /// The nontrivial amalgamated element shared by A and B.
  PWord intersection;
  std::vector<PWord> tuple;
  FreeWord law;
  PWord value;
  std::uint64_t tuples_checked = 0;
};

/// Certifies that the factors lie in X and meet nontrivially while words of
/// length <= depth violate the first basis law of X in the product.
NotXtWitness not_xt_witness(FreeConstruction const& k, VarietySpec const& x, std::size_t depth);

struct FreeProbeReport {
  bool no_relation = true;
  std::size_t max_len = 0;
  std::uint64_t words_checked = 0;
  /// Least reduced word in x1, x2 (length, then x1 < x1^-1 < x2 < x2^-1)
  /// that evaluates to the identity.
  std::optional<FreeWord> relation;
};

/// Evaluates every nontrivial reduced two-letter word of length <= max_len
/// at (w1, w2).
FreeProbeReport free_probe(FreeConstruction const& k, PWord const& w1, PWord const& w2,
                           std::size_t max_len);

struct PowerConjugacy {
  PWord z;
  PWord g;
  std::int64_t n = 0;
  std::int64_t m = 0;
};

struct PowerConjugacyReport {
  std::vector<PowerConjugacy> instances;
  std::uint64_t z_count = 0;
  std::uint64_t g_count = 0;
  /// Every instance satisfies |m| = |n|.
  bool lengths_match = true;
};

/// Searches g^-1 z^n g = z^m for cyclically reduced z with 2 <= length <=
/// max_z_len, g of length <= max_g_len, 1 <= |n| <= max_n and
/// 1 <= |m| <= max_m.
PowerConjugacyReport power_conjugacy_search(FreeConstruction const& k, std::size_t max_z_len,
                                            std::size_t max_g_len, std::int64_t max_n,
                                            std::int64_t max_m);

}  // namespace varitas
