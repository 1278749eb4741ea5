#include "varitas/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "varitas/config.hpp"
#include "varitas/error.hpp"

namespace varitas {

namespace {

struct ImageHash {
  std::size_t operator()(std::vector<std::uint32_t> const& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::size_t resolve_cap(std::size_t cap) {
  return cap == 0 ? limits().order_cap : cap;
}

void check_cap(std::size_t order, std::size_t cap, char const* what) {
  if (order > cap) {
    throw BudgetExceeded(std::string(what) + ": group order exceeds cap",
                         static_cast<double>(order), static_cast<double>(cap));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::uint32_t> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InvalidArgument("image array is not a permutation");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  std::size_t max_point = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation", i);
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (i == text.size()) throw ParseError("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] < '0' || text[i] > '9') throw ParseError("expected a point", i);
      std::size_t start = i;
      std::uint64_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 1'000'000) throw ParseError("point out of range", start);
        ++i;
      }
      if (v == 0) throw ParseError("points are numbered from 1", start);
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
      max_point = std::max<std::size_t>(max_point, v);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  std::size_t const n = std::max(degree, max_point);
  Permutation p = identity(n);
  std::vector<bool> used(n, false);
  for (auto const& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (used[cycle[k]]) {
        throw ParseError("point " + std::to_string(cycle[k] + 1) + " repeated", 0);
      }
      used[cycle[k]] = true;
      p.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
  }
  return p;
}

Permutation Permutation::extended(std::size_t degree) const {
  if (degree <= images_.size()) return *this;
  Permutation p = identity(degree);
  std::copy(images_.begin(), images_.end(), p.images_.begin());
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p = identity(images_.size());
  for (std::uint32_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = i;
  return p;
}

bool Permutation::is_identity() const {
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    std::uint32_t x = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(x + 1);
      seen[x] = true;
      x = images_[x];
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(Permutation const& p, Permutation const& q) {
  std::size_t const n = std::max(p.degree(), q.degree());
  Permutation r = Permutation::identity(n);
  for (std::uint32_t x = 0; x < n; ++x) r.images_[x] = p(q(x));
  return r;
}

// ---------------------------------------------------------------------------
// FiniteGroup

struct FiniteGroup::Data {
  std::string name;
  std::size_t n = 1;
  std::vector<Elem> table;
  std::vector<Elem> inverse;
  std::vector<std::string> labels;
  std::unordered_map<std::string, Elem> by_label;
  std::vector<Permutation> perms;
};

FiniteGroup::FiniteGroup() {
  static FiniteGroup const trivial_group = make_group_unchecked("1", 1, {0}, {"1"});
  *this = trivial_group;
}

FiniteGroup::FiniteGroup(std::shared_ptr<Data const> d) : d_(std::move(d)) {
  n_ = d_->n;
  table_ = d_->table.data();
  inverse_ = d_->inverse.data();
}

FiniteGroup make_group_unchecked(std::string name, std::size_t order,
                                 std::vector<Elem> table,
                                 std::vector<std::string> labels,
                                 std::vector<Permutation> perms) {
  auto d = std::make_shared<FiniteGroup::Data>();
  d->name = std::move(name);
  d->n = order;
  d->table = std::move(table);
  d->inverse.assign(order, 0);
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) {
      if (d->table[a * order + b] == 0) {
        d->inverse[a] = b;
        break;
      }
    }
  }
  if (labels.size() != order) {
    labels.resize(order);
    for (Elem a = 0; a < order; ++a) {
      if (labels[a].empty()) labels[a] = a == 0 ? "1" : "g" + std::to_string(a);
    }
  }
  d->labels = std::move(labels);
  for (Elem a = 0; a < order; ++a) d->by_label.emplace(d->labels[a], a);
  d->perms = std::move(perms);
  return FiniteGroup(std::shared_ptr<FiniteGroup::Data const>(std::move(d)));
}

FiniteGroup FiniteGroup::from_table(std::string name,
                                    std::vector<std::vector<Elem>> const& table,
                                    std::vector<std::string> labels) {
  std::size_t const n = table.size();
  if (n == 0) throw InvalidArgument("empty multiplication table");
  check_cap(n, limits().order_cap, "explicit table");
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      throw InvalidArgument("row " + std::to_string(a) + " has wrong length");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        throw InvalidArgument("entry out of range in row " + std::to_string(a));
      }
      flat[a * n + b] = table[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (flat[a] != a || flat[a * n] != a) {
      throw InvalidArgument("element 0 is not the identity");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row[flat[a * n + b]] || col[flat[b * n + a]]) {
        throw InvalidArgument("row or column " + std::to_string(a) +
                              " is not a permutation");
      }
      row[flat[a * n + b]] = true;
      col[flat[b * n + a]] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Elem const ab = flat[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (flat[ab * n + c] != flat[a * n + flat[b * n + c]]) {
          throw InvalidArgument("table is not associative at (" +
                                std::to_string(a) + "," + std::to_string(b) +
                                "," + std::to_string(c) + ")");
        }
      }
    }
  }
  if (!labels.empty()) {
    if (labels.size() != n) throw InvalidArgument("label count does not match order");
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != n) throw InvalidArgument("labels are not unique");
  }
  return make_group_unchecked(std::move(name), n, std::move(flat), std::move(labels));
}

FiniteGroup FiniteGroup::from_permutations(std::string name,
                                           std::span<Permutation const> generators,
                                           std::size_t order_cap) {
  std::size_t const cap = resolve_cap(order_cap);
  std::size_t degree = 1;
  for (auto const& g : generators) degree = std::max(degree, g.degree());
  std::vector<Permutation> gens;
  for (auto const& g : generators) {
    if (!g.is_identity()) gens.push_back(g.extended(degree));
  }

  std::vector<Permutation> elems{Permutation::identity(degree)};
  std::unordered_map<std::vector<std::uint32_t>, Elem, ImageHash> seen;
  seen.emplace(elems[0].images(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto const& g : gens) {
      Permutation p = elems[i] * g;
      if (seen.emplace(p.images(), 0).second) {
        elems.push_back(std::move(p));
        check_cap(elems.size(), cap, "permutation closure");
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  std::size_t const n = elems.size();
  for (Elem a = 0; a < n; ++a) seen[elems[a].images()] = a;

  // right multiplication by each generator, then a BFS spanning tree so that
  // every row of the table is filled by table lookups alone
  std::vector<std::vector<Elem>> right(gens.size(), std::vector<Elem>(n));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (Elem a = 0; a < n; ++a) right[g][a] = seen.at((elems[a] * gens[g]).images());
  }
  std::vector<Elem> order{0};
  std::vector<Elem> parent(n, 0);
  std::vector<std::uint32_t> via(n, 0);
  std::vector<bool> reached(n, false);
  reached[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Elem const b = right[g][order[i]];
      if (!reached[b]) {
        reached[b] = true;
        parent[b] = order[i];
        via[b] = static_cast<std::uint32_t>(g);
        order.push_back(b);
      }
    }
  }
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a) {
    Elem* row = table.data() + static_cast<std::size_t>(a) * n;
    row[0] = a;
    for (std::size_t k = 1; k < order.size(); ++k) {
      Elem const b = order[k];
      row[b] = right[via[b]][row[parent[b]]];
    }
  }
  std::vector<std::string> labels(n);
  for (Elem a = 0; a < n; ++a) labels[a] = elems[a].to_cycles();
  return make_group_unchecked(std::move(name), n, std::move(table), std::move(labels),
                              std::move(elems));
}

Elem FiniteGroup::pow(Elem a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::string const& FiniteGroup::name() const { return d_->name; }
std::string const& FiniteGroup::label(Elem a) const { return d_->labels.at(a); }

std::optional<Elem> FiniteGroup::find(std::string_view label) const {
  auto it = d_->by_label.find(std::string(label));
  if (it != d_->by_label.end()) return it->second;
  // permutation groups also accept any spelling of the same permutation
  if (!d_->perms.empty() && !label.empty() && label.front() == '(') {
    try {
      auto p = Permutation::parse(label, d_->perms.front().degree());
      if (p.degree() == d_->perms.front().degree()) {
        auto pos = std::lower_bound(d_->perms.begin(), d_->perms.end(), p);
        if (pos != d_->perms.end() && *pos == p) {
          return static_cast<Elem>(pos - d_->perms.begin());
        }
      }
    } catch (ParseError const&) {
    }
  }
  return std::nullopt;
}

Elem FiniteGroup::element(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw InvalidArgument("no element labelled '" + std::string(label) + "' in " + name());
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < n_; ++a) {
    for (Elem b = a + 1; b < n_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<Permutation> const* FiniteGroup::permutations() const {
  return d_->perms.empty() ? nullptr : &d_->perms;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  auto d = std::make_shared<Data>(*d_);
  d->name = std::move(name);
  return FiniteGroup(std::shared_ptr<Data const>(std::move(d)));
}

void FiniteGroup::check_index(Elem a) const {
  if (a >= n_) {
    throw InvalidArgument("element index " + std::to_string(a) +
                          " out of range for " + name());
  }
}

// ---------------------------------------------------------------------------
// Builtins

FiniteGroup cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group needs n >= 1");
  check_cap(n, limits().order_cap, "cyclic");
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  std::vector<std::string> labels(n);
  labels[0] = "1";
  if (n > 1) labels[1] = "a";
  for (std::size_t k = 2; k < n; ++k) labels[k] = "a^" + std::to_string(k);
  return make_group_unchecked("C" + std::to_string(n), n, std::move(table),
                              std::move(labels));
}

FiniteGroup dihedral(std::size_t order) {
  if (order % 2 != 0 || order < 6) {
    throw InvalidArgument("dihedral group order must be even and at least 6");
  }
  std::size_t const n = order / 2;
  std::vector<std::uint32_t> rot(n), ref(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % n);
    ref[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  std::vector<Permutation> gens{Permutation(rot), Permutation(ref)};
  return FiniteGroup::from_permutations("D" + std::to_string(order), gens);
}

FiniteGroup symmetric(std::size_t n) {
  if (n <= 1) return FiniteGroup().renamed("S" + std::to_string(n));
  std::vector<std::uint32_t> cycle(n);
  for (std::uint32_t i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
  std::vector<Permutation> gens{Permutation::parse("(1 2)", n), Permutation(cycle)};
  return FiniteGroup::from_permutations("S" + std::to_string(n), gens);
}

FiniteGroup alternating(std::size_t n) {
  if (n <= 2) return FiniteGroup().renamed("A" + std::to_string(n));
  std::vector<Permutation> gens;
  for (std::size_t k = 3; k <= n; ++k) {
    gens.push_back(Permutation::parse("(1 2 " + std::to_string(k) + ")", n));
  }
  return FiniteGroup::from_permutations("A" + std::to_string(n), gens);
}

FiniteGroup quaternion8() {
  // element 2u + s is (-1)^s times unit u, units ordered 1, i, j, k
  static constexpr int unit_product[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<Elem> table(64);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      auto const& p = unit_product[a / 2][b / 2];
      int const sign = (a % 2 + b % 2 + p[1]) % 2;
      table[a * 8 + b] = static_cast<Elem>(2 * p[0] + sign);
    }
  }
  return make_group_unchecked("Q8", 8, std::move(table),
                              {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup frobenius21() {
  std::vector<Permutation> gens{Permutation::parse("(1 2 3 4 5 6 7)"),
                                Permutation::parse("(2 3 5)(4 7 6)")};
  return FiniteGroup::from_permutations("F21", gens);
}

FiniteGroup elementary_abelian(std::size_t order) {
  if (order < 2) return FiniteGroup();
  std::size_t p = 2;
  while (order % p != 0) ++p;
  std::size_t k = 0;
  for (std::size_t m = order; m > 1; m /= p) {
    if (m % p != 0) throw InvalidArgument("elementary abelian order must be a prime power");
    ++k;
  }
  check_cap(order, limits().order_cap, "elementary abelian");
  if (k > 26) throw InvalidArgument("elementary abelian rank too large");
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = 0; i < k; ++i, x /= p) d[i] = x % p;
    return d;
  };
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    auto da = digits(a);
    for (std::size_t b = 0; b < order; ++b) {
      auto db = digits(b);
      std::size_t c = 0;
      for (std::size_t i = k; i-- > 0;) c = c * p + (da[i] + db[i]) % p;
      table[a * order + b] = static_cast<Elem>(c);
    }
  }
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    auto d = digits(a);
    std::string s;
    for (std::size_t i = 0; i < k; ++i) {
      if (d[i] == 0) continue;
      if (!s.empty()) s += ' ';
      s += static_cast<char>('a' + i);
      if (d[i] > 1) s += "^" + std::to_string(d[i]);
    }
    labels[a] = s.empty() ? "1" : s;
  }
  std::string name = "E" + std::to_string(order);
  return make_group_unchecked(std::move(name), order, std::move(table), std::move(labels));
}

FiniteGroup direct_product(FiniteGroup const& a, FiniteGroup const& b) {
  std::size_t const na = a.order(), nb = b.order();
  check_cap(na * nb, limits().order_cap, "direct product");
  std::size_t const n = na * nb;
  std::vector<Elem> table(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      table[static_cast<std::size_t>(x) * n + y] =
          static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    }
  }
  std::vector<std::string> labels(n);
  for (Elem x = 0; x < n; ++x) {
    labels[x] = "[" + a.label(x / nb) + "," + b.label(x % nb) + "]";
  }
  return make_group_unchecked(a.name() + "x" + b.name(), n, std::move(table),
                              std::move(labels));
}

FiniteGroup builtin_group(std::string_view family, std::size_t param) {
  if (family == "cyclic") return cyclic(param);
  if (family == "dihedral") return dihedral(param);
  if (family == "symmetric") return symmetric(param);
  if (family == "alternating") return alternating(param);
  if (family == "quaternion") {
    if (param != 8) throw InvalidArgument("only the quaternion group of order 8 is built in");
    return quaternion8();
  }
  if (family == "frobenius") {
    if (param != 21) throw InvalidArgument("only the Frobenius group of order 21 is built in");
    return frobenius21();
  }
  if (family == "elementary-abelian") return elementary_abelian(param);
  throw InvalidArgument("unknown builtin family '" + std::string(family) + "'");
}

FiniteGroup induced_group(SubgroupSet const& h, std::string name) {
  auto const& g = h.parent();
  auto const& m = h.members();
  std::size_t const n = m.size();
  std::vector<Elem> pos(g.order(), 0);
  for (Elem i = 0; i < n; ++i) pos[m[i]] = i;
  std::vector<Elem> table(n * n);
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) table[i * n + j] = pos[g.mul(m[i], m[j])];
  }
  std::vector<std::string> labels(n);
  std::vector<Permutation> perms;
  for (Elem i = 0; i < n; ++i) {
    labels[i] = g.label(m[i]);
    if (auto const* p = g.permutations()) perms.push_back((*p)[m[i]]);
  }
  if (name.empty()) name = g.name() + "[" + std::to_string(n) + "]";
  return make_group_unchecked(std::move(name), n, std::move(table), std::move(labels),
                              std::move(perms));
}

Elem group_arith(FiniteGroup const& g, ArithKind kind, std::span<Elem const> args) {
  std::size_t const needed = kind == ArithKind::inverse ? 1 : 2;
  if (args.size() != needed) {
    throw InvalidArgument("group_arith expects " + std::to_string(needed) + " arguments");
  }
  for (auto a : args) g.check_index(a);
  switch (kind) {
    case ArithKind::product: return g.mul(args[0], args[1]);
    case ArithKind::inverse: return g.inv(args[0]);
    case ArithKind::conjugate: return g.conj(args[0], args[1]);
    case ArithKind::commutator: return g.comm(args[0], args[1]);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// SubgroupSet

void SubgroupSet::index_members() {
  bits_.assign((parent_.order() + 63) / 64, 0);
  for (auto a : members_) bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
}

SubgroupSet SubgroupSet::unchecked(FiniteGroup parent, std::vector<Elem> members) {
  SubgroupSet h;
  h.parent_ = std::move(parent);
  h.members_ = std::move(members);
  h.index_members();
  return h;
}

SubgroupSet::SubgroupSet(FiniteGroup parent, std::vector<Elem> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto a : members_) parent_.check_index(a);
  index_members();
  if (members_.empty() || members_.front() != 0) {
    throw InvalidArgument("subgroup must contain the identity");
  }
  for (auto a : members_) {
    if (!contains(parent_.inv(a))) throw InvalidArgument("set is not closed under inverses");
    for (auto b : members_) {
      if (!contains(parent_.mul(a, b))) {
        throw InvalidArgument("set is not closed under the group operation");
      }
    }
  }
  if (parent_.order() % members_.size() != 0) {
    throw InvalidArgument("subgroup order does not divide group order");
  }
}

SubgroupSet SubgroupSet::whole(FiniteGroup const& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return unchecked(g, std::move(all));
}

SubgroupSet SubgroupSet::trivial(FiniteGroup const& g) { return unchecked(g, {0}); }

bool SubgroupSet::is_subset_of(SubgroupSet const& other) const {
  if (members_.size() > other.members_.size()) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if ((bits_[i] & ~other.bits_[i]) != 0) return false;
  }
  return true;
}

SubgroupSet SubgroupSet::intersect(SubgroupSet const& other) const {
  std::vector<Elem> common;
  for (auto a : members_) {
    if (other.contains(a)) common.push_back(a);
  }
  return unchecked(parent_, std::move(common));
}

SubgroupSet SubgroupSet::conjugate(Elem g) const {
  std::vector<Elem> conj;
  conj.reserve(members_.size());
  for (auto h : members_) conj.push_back(parent_.conj(h, g));
  std::sort(conj.begin(), conj.end());
  return unchecked(parent_, std::move(conj));
}

bool SubgroupSet::is_normal() const {
  for (Elem g = 0; g < parent_.order(); ++g) {
    for (auto h : members_) {
      if (!contains(parent_.conj(h, g))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup algorithms

SubgroupSet generate(FiniteGroup const& g, std::span<Elem const> seeds) {
  for (auto s : seeds) g.check_index(s);
  std::vector<Elem> list{0};
  std::vector<bool> seen(g.order(), false);
  seen[0] = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (auto s : seeds) {
      Elem const p = g.mul(list[i], s);
      if (!seen[p]) {
        seen[p] = true;
        list.push_back(p);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return SubgroupSet::unchecked(g, std::move(list));
}

std::vector<Elem> generating_set(SubgroupSet const& h) {
  std::vector<Elem> gens;
  SubgroupSet cur = SubgroupSet::trivial(h.parent());
  for (auto a : h.members()) {
    if (cur.contains(a)) continue;
    gens.push_back(a);
    cur = generate(h.parent(), gens);
    if (cur.size() == h.size()) break;
  }
  return gens;
}

std::vector<SubgroupEntry> all_subgroups(FiniteGroup const& g) {
  if (g.order() > limits().lattice_cap) {
    throw BudgetExceeded("subgroup lattice of " + g.name(),
                         static_cast<double>(g.order()),
                         static_cast<double>(limits().lattice_cap));
  }
  std::vector<SubgroupSet> found;
  std::vector<std::vector<Elem>> gens;
  std::set<std::vector<std::uint64_t>> seen;
  auto add = [&](SubgroupSet h) {
    if (seen.insert(h.bits()).second) {
      gens.push_back(generating_set(h));
      found.push_back(std::move(h));
    }
  };
  for (Elem a = 0; a < g.order(); ++a) add(generate(g, {a}));
  // each newly found subgroup is joined with everything before it, so one
  // sweep reaches the join fixpoint
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (found[j].is_subset_of(found[i]) || found[i].is_subset_of(found[j])) continue;
      std::vector<Elem> seeds = gens[i];
      seeds.insert(seeds.end(), gens[j].begin(), gens[j].end());
      add(generate(g, seeds));
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<SubgroupEntry> out;
  out.reserve(found.size());
  for (auto& h : found) {
    bool const normal = h.is_normal();
    out.push_back({std::move(h), normal});
  }
  return out;
}

MalnormalityReport is_malnormal_in(SubgroupSet const& h, SubgroupSet const& ambient) {
  if (!h.parent().same_as(ambient.parent()) || !h.is_subset_of(ambient)) {
    throw InvalidArgument("subgroup is not contained in the ambient group");
  }
  auto const& g = h.parent();
  MalnormalityReport report;
  for (Elem x : ambient.members()) {
    if (h.contains(x)) continue;
    Elem const xi = g.inv(x);
    for (Elem y : h.members()) {
      if (y == 0) continue;
      // y lies in H^x = x^-1 H x exactly when x y x^-1 lies in H
      if (h.contains(g.mul(g.mul(x, y), xi))) {
        report.verdict = false;
        report.witness = std::make_pair(x, y);
        return report;
      }
    }
  }
  return report;
}

MalnormalityReport is_malnormal(SubgroupSet const& h) {
  return is_malnormal_in(h, SubgroupSet::whole(h.parent()));
}

SubgroupSet classic_centralizer(FiniteGroup const& g, Elem a) {
  g.check_index(a);
  std::vector<Elem> c;
  for (Elem x = 0; x < g.order(); ++x) {
    if (g.mul(x, a) == g.mul(a, x)) c.push_back(x);
  }
  return SubgroupSet::unchecked(g, std::move(c));
}

SubgroupSet center(FiniteGroup const& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Elem y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return SubgroupSet::unchecked(g, std::move(z));
}

SubgroupSet normalizer(SubgroupSet const& h) {
  auto const& g = h.parent();
  std::vector<Elem> n;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem y : h.members()) {
      if (!h.contains(g.conj(y, x))) {
        ok = false;
        break;
      }
    }
    if (ok) n.push_back(x);
  }
  return SubgroupSet::unchecked(g, std::move(n));
}

}  // namespace varitas
