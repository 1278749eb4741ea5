#include "varitas/freeprod.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <map>
#include <set>

#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/io.hpp"
#include "varitas/kernels.hpp"

namespace varitas {

namespace {

int idx(Factor f) { return static_cast<int>(f); }
char factor_char(Factor f) { return f == Factor::A ? 'A' : 'B'; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace

// ---------------------------------------------------------------------------
// FreeConstruction

FreeConstruction::FreeConstruction(FiniteGroup a, FiniteGroup b)
    : kind_(Kind::free_product), a_(std::move(a)), b_(std::move(b)) {
  c_a_ = SubgroupSet::trivial(a_);
  c_b_ = SubgroupSet::trivial(b_);
  psi_.assign(a_.order(), 0);
  psi_inv_.assign(b_.order(), 0);
  name_ = a_.name() + "*" + b_.name();
  build_tables();
}

FreeConstruction::FreeConstruction(FiniteGroup a, FiniteGroup b,
                                   std::span<std::pair<Elem, Elem> const> pairing)
    : kind_(Kind::amalgam), a_(std::move(a)), b_(std::move(b)) {
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> fwd(a_.order(), unset), back(b_.order(), unset);
  std::vector<std::pair<Elem, Elem>> known;
  auto add = [&](Elem x, Elem y) {
    a_.check_index(x);
    b_.check_index(y);
    if (fwd[x] == y) return;
    if (fwd[x] != unset) throw InvalidArgument("pairing is not a homomorphism");
    if (back[y] != unset) throw InvalidArgument("pairing is not injective");
    fwd[x] = y;
    back[y] = x;
    known.emplace_back(x, y);
  };
  add(0, 0);
  for (auto const& [x, y] : pairing) add(x, y);
  // close under products; any clash means the map is not a homomorphism
  for (std::size_t i = 0; i < known.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      auto const [x1, y1] = known[i];
      auto const [x2, y2] = known[j];
      add(a_.mul(x1, x2), b_.mul(y1, y2));
      add(a_.mul(x2, x1), b_.mul(y2, y1));
    }
  }
  std::vector<Elem> ca, cb;
  for (Elem x = 0; x < a_.order(); ++x) {
    if (fwd[x] != unset) ca.push_back(x);
  }
  for (Elem y = 0; y < b_.order(); ++y) {
    if (back[y] != unset) cb.push_back(y);
  }
  c_a_ = SubgroupSet(a_, ca);
  c_b_ = SubgroupSet(b_, cb);
  if (c_a_.is_whole() || c_b_.is_whole()) {
    throw InvalidArgument("amalgamated subgroups must be proper in both factors");
  }
  psi_.assign(a_.order(), 0);
  psi_inv_.assign(b_.order(), 0);
  for (auto x : ca) psi_[x] = fwd[x];
  for (auto y : cb) psi_inv_[y] = back[y];
  name_ = a_.name() + "*_C" + std::to_string(ca.size()) + b_.name();
  build_tables();
}

void FreeConstruction::build_tables() {
  for (Factor f : {Factor::A, Factor::B}) {
    FiniteGroup const& g = factor(f);
    SubgroupSet const& c = f == Factor::A ? c_a_ : c_b_;
    auto& tr = trans_[idx(f)];
    auto& sp = split_[idx(f)];
    tr.clear();
    sp.assign(g.order(), {0, 0});
    for (Elem x = 0; x < g.order(); ++x) {
      Elem rep = x;
      for (auto cm : c.members()) rep = std::min(rep, g.mul(cm, x));
      if (rep == x) tr.push_back(x);
      Elem const cf = g.mul(x, g.inv(rep));
      sp[x] = {f == Factor::A ? cf : psi_inv_[cf], rep};
    }
  }
  if (names_.empty()) {
    // default names: a single generator is "a2"/"b2" (alias "a"/"b"),
    // otherwise a1..ak and b1..bk
    std::vector<std::pair<std::string, PSyllable>> names;
    std::vector<std::pair<std::string, PSyllable>> aliases;
    for (Factor f : {Factor::A, Factor::B}) {
      char const letter = f == Factor::A ? 'a' : 'b';
      auto gens = generating_set(SubgroupSet::whole(factor(f)));
      if (gens.size() == 1) {
        names.push_back({std::string(1, letter) + "2", {f, gens[0]}});
        aliases.push_back({std::string(1, letter), {f, gens[0]}});
      } else {
        for (std::size_t i = 0; i < gens.size(); ++i) {
          names.push_back({std::string(1, letter) + std::to_string(i + 1), {f, gens[i]}});
        }
      }
    }
    names.insert(names.end(), aliases.begin(), aliases.end());
    set_names(std::move(names));
  }
}

void FreeConstruction::set_names(std::vector<std::pair<std::string, PSyllable>> names) {
  names_ = std::move(names);
  for (Factor f : {Factor::A, Factor::B}) {
    FiniteGroup const& g = factor(f);
    auto& out = element_names_[idx(f)];
    out.assign(g.order(), {});
    out[0] = "1";
    // breadth-first over products of distinct named generators; a run of one
    // generator is written with an exponent
    std::vector<std::pair<std::string, Elem>> gens;
    std::set<Elem> seen_gen;
    for (auto const& [n, s] : names_) {
      if (s.factor == f && s.elem != 0 && seen_gen.insert(s.elem).second) gens.push_back({n, s.elem});
    }
    struct Node {
      std::vector<std::pair<std::size_t, std::int64_t>> runs;
    };
    std::vector<char> seen(g.order(), 0);
    seen[0] = 1;
    std::deque<std::pair<Elem, Node>> queue{{0, Node{}}};
    while (!queue.empty()) {
      auto [x, node] = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Elem const y = g.mul(x, gens[i].second);
        if (seen[y]) continue;
        seen[y] = 1;
        Node next = node;
        if (!next.runs.empty() && next.runs.back().first == i) {
          ++next.runs.back().second;
        } else {
          next.runs.push_back({i, 1});
        }
        std::string text;
        for (auto const& [gi, e] : next.runs) {
          if (!text.empty()) text += ' ';
          text += gens[gi].first;
          if (e != 1) text += "^" + std::to_string(e);
        }
        out[y] = text;
        queue.push_back({y, std::move(next)});
      }
    }
    for (Elem x = 1; x < g.order(); ++x) {
      if (out[x].empty()) out[x] = std::string(1, factor_char(f)) + "[" + g.label(x) + "]";
    }
  }
}

std::string FreeConstruction::element_name(Factor f, Elem x) const {
  factor(f).check_index(x);
  return element_names_[idx(f)][x];
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

Elem in_factor(FreeConstruction const& k, Factor f, Elem c) {
  return f == Factor::A ? c : k.to_b(c);
}

// moves c (an element of C, in A coordinates) leftwards through every
// syllable into the head; syllable lengths never change
void push_left(FreeConstruction const& k, PWord& w, Elem c) {
  for (std::size_t i = w.syllables.size(); i-- > 0 && c != 0;) {
    auto& s = w.syllables[i];
    FiniteGroup const& g = k.factor(s.factor);
    auto const [c2, r] = k.split(s.factor, g.mul(s.elem, in_factor(k, s.factor, c)));
    s.elem = r;
    c = c2;
  }
  w.head = k.factor(Factor::A).mul(w.head, c);
}

void mul_right(FreeConstruction const& k, PWord& w, Factor f, Elem y) {
  if (y == 0) return;
  FiniteGroup const& g = k.factor(f);
  if (w.syllables.empty()) {
    auto const [c, r] = k.split(f, g.mul(in_factor(k, f, w.head), y));
    w.head = c;
    if (r != 0) w.syllables.push_back({f, r});
    return;
  }
  if (w.syllables.back().factor == f) {
    auto const [c, r] = k.split(f, g.mul(w.syllables.back().elem, y));
    w.syllables.pop_back();
    push_left(k, w, c);
    if (r != 0) w.syllables.push_back({f, r});
    return;
  }
  auto const [c, r] = k.split(f, y);
  push_left(k, w, c);
  if (r != 0) w.syllables.push_back({f, r});
}

void append(FreeConstruction const& k, PWord& w, PWord const& v) {
  if (v.head != 0) mul_right(k, w, Factor::A, v.head);
  for (auto const& s : v.syllables) mul_right(k, w, s.factor, s.elem);
}

}  // namespace

PWord pw_normal_form(FreeConstruction const& k, std::span<PSyllable const> raw) {
  PWord w;
  for (auto const& s : raw) {
    k.factor(s.factor).check_index(s.elem);
    mul_right(k, w, s.factor, s.elem);
  }
  return w;
}

PWord pw_normal_form(FreeConstruction const& k, PWord const& w) {
  PWord out;
  append(k, out, w);
  return out;
}

PWord pw_multiply(FreeConstruction const& k, PWord const& u, PWord const& v) {
  PWord w = u;
  append(k, w, v);
  return w;
}

PWord pw_invert(FreeConstruction const& k, PWord const& u) {
  PWord w;
  for (std::size_t i = u.syllables.size(); i-- > 0;) {
    auto const& s = u.syllables[i];
    mul_right(k, w, s.factor, k.factor(s.factor).inv(s.elem));
  }
  mul_right(k, w, Factor::A, k.factor(Factor::A).inv(u.head));
  return w;
}

PWord pw_conjugate(FreeConstruction const& k, PWord const& h, PWord const& g) {
  return pw_multiply(k, pw_multiply(k, pw_invert(k, g), h), g);
}

PWord pw_pow(FreeConstruction const& k, PWord const& u, std::int64_t e) {
  PWord base = e < 0 ? pw_invert(k, u) : u;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  PWord acc;
  while (n > 0) {
    if (n & 1) acc = pw_multiply(k, acc, base);
    n >>= 1;
    if (n > 0) base = pw_multiply(k, base, base);
  }
  return acc;
}

PWord pw_cyclic_reduce(FreeConstruction const& k, PWord const& u) {
  PWord w = u;
  while (w.syllables.size() >= 2 &&
         w.syllables.front().factor == w.syllables.back().factor) {
    // conjugate by the leading head * syllable: rotates it to the end
    PWord lead;
    lead.head = w.head;
    lead.syllables.push_back(w.syllables.front());
    w = pw_conjugate(k, w, lead);
  }
  return w;
}

std::size_t pw_length(FreeConstruction const& k, PWord const& u, bool cyclic) {
  return cyclic ? pw_cyclic_reduce(k, u).length() : u.length();
}

PWord pw_embed(FreeConstruction const& k, Factor f, Elem x) {
  PSyllable const s{f, x};
  return pw_normal_form(k, std::span<PSyllable const>(&s, 1));
}

bool pw_in_subgroup(FreeConstruction const& k, PWord const& u, Factor f, SubgroupSet const& h) {
  if (!h.parent().same_as(k.factor(f))) {
    throw InvalidArgument("subgroup does not belong to the named factor");
  }
  if (u.syllables.size() > 1) return false;
  Elem const head = in_factor(k, f, u.head);
  if (u.syllables.empty()) return h.contains(head);
  if (u.syllables.front().factor != f) return false;
  return h.contains(k.factor(f).mul(head, u.syllables.front().elem));
}

// ---------------------------------------------------------------------------
// Text and JSON

namespace {

std::int64_t parse_exponent(std::string_view text, std::size_t& pos) {
  std::size_t const start = pos;
  bool neg = false;
  if (pos < text.size() && text[pos] == '-') {
    neg = true;
    ++pos;
  }
  std::int64_t v = 0;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    v = v * 10 + (text[pos] - '0');
    if (v > 1'000'000'000) throw ParseError("exponent too large", start);
    ++pos;
    ++digits;
  }
  if (digits == 0) throw ParseError("expected an integer exponent", start);
  return neg ? -v : v;
}

}  // namespace

PWord parse_pword(FreeConstruction const& k, std::string_view text) {
  PWord w;
  std::size_t pos = 0;
  bool any = false;
  auto skip = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      ++pos;
    }
  };
  skip();
  while (pos < text.size()) {
    std::size_t const start = pos;
    PWord atom;
    if ((text[pos] == 'A' || text[pos] == 'B') && pos + 1 < text.size() && text[pos + 1] == '[') {
      Factor const f = text[pos] == 'A' ? Factor::A : Factor::B;
      std::size_t const close = text.find(']', pos + 2);
      if (close == std::string_view::npos) throw ParseError("unterminated element label", start);
      auto x = k.factor(f).find(text.substr(pos + 2, close - pos - 2));
      if (!x) throw ParseError("unknown element label", pos + 2);
      atom = pw_embed(k, f, *x);
      pos = close + 1;
    } else if (text[pos] == '1') {
      ++pos;
    } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string_view const name = text.substr(start, pos - start);
      auto it = std::find_if(k.names().begin(), k.names().end(),
                             [&](auto const& n) { return n.first == name; });
      if (it == k.names().end()) throw ParseError("unknown generator '" + std::string(name) + "'", start);
      atom = pw_embed(k, it->second.factor, it->second.elem);
    } else {
      throw ParseError("unexpected character", pos);
    }
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      atom = pw_pow(k, atom, parse_exponent(text, pos));
    }
    append(k, w, atom);
    any = true;
    skip();
  }
  if (!any) throw ParseError("empty product word", 0);
  return w;
}

std::string print_pword(FreeConstruction const& k, PWord const& u) {
  if (u.is_identity()) return "1";
  std::string out;
  if (u.head != 0) out = k.element_name(Factor::A, u.head);
  for (auto const& s : u.syllables) {
    if (!out.empty()) out += " . ";
    out += k.element_name(s.factor, s.elem);
  }
  return out;
}

nlohmann::json pword_to_json(FreeConstruction const& k, PWord const& u) {
  auto out = nlohmann::json::array();
  if (u.head != 0) out.push_back({"C", k.element_name(Factor::A, u.head)});
  for (auto const& s : u.syllables) {
    out.push_back({std::string(1, factor_char(s.factor)), k.element_name(s.factor, s.elem)});
  }
  return out;
}

PWord pword_from_json(FreeConstruction const& k, nlohmann::json const& doc) {
  if (!doc.is_array()) throw InvalidArgument("product word must be a JSON array");
  PWord w;
  for (auto const& entry : doc) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string()) {
      throw InvalidArgument("product word entries are [factor, element] string pairs");
    }
    std::string const f = entry[0].get<std::string>();
    if (f != "A" && f != "B" && f != "C") throw InvalidArgument("factor must be A, B or C");
    PWord atom = parse_pword(k, entry[1].get<std::string>());
    Factor const want = f == "B" ? Factor::B : Factor::A;
    bool ok = atom.syllables.empty() || (atom.syllables.size() == 1 && atom.syllables[0].factor == want);
    if (f == "C") ok = atom.syllables.empty();
    if (!ok) throw InvalidArgument("element '" + entry[1].get<std::string>() + "' is not in factor " + f);
    append(k, w, atom);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Constructions

FreeConstruction d2p_amalgam(std::size_t p) {
  bool prime = p >= 3 && p % 2 == 1;
  for (std::size_t d = 3; prime && d * d <= p; d += 2) prime = p % d != 0;
  if (!prime) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (2 * p > limits().order_cap) {
    throw BudgetExceeded("factor order", static_cast<double>(2 * p),
                         static_cast<double>(limits().order_cap));
  }
  std::vector<std::uint32_t> rot(p), refl(p);
  for (std::size_t i = 0; i < p; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % p);
    // 1-based k -> 2 - k mod p, i.e. 0-based i -> -i mod p
    refl[i] = static_cast<std::uint32_t>((p - i) % p);
  }
  std::vector<Permutation> gens{Permutation(refl), Permutation(rot)};
  std::string const name = "D" + std::to_string(2 * p);
  FiniteGroup a = FiniteGroup::from_permutations(name, gens);
  FiniteGroup b = a.renamed(name + "'");
  Elem const a1 = a.element(gens[0].to_cycles());
  Elem const a2 = a.element(gens[1].to_cycles());
  std::pair<Elem, Elem> const pairing[] = {{a1, a1}};
  FreeConstruction k(a, b, pairing);
  k.set_names({{"a1", {Factor::A, a1}},
               {"a2", {Factor::A, a2}},
               {"b1", {Factor::B, a1}},
               {"b2", {Factor::B, a2}}});
  k.set_name("d2p:" + std::to_string(p));
  return k;
}

namespace {

FiniteGroup group_ref(nlohmann::json const& ref) {
  if (ref.is_string()) return load_group(ref.get<std::string>());
  if (ref.is_object()) return group_from_json(ref);
  throw InvalidArgument("factor must be a group reference string or a group object");
}

}  // namespace

FreeConstruction construction_from_json(nlohmann::json const& doc) {
  if (!doc.is_object()) throw InvalidArgument("construction file must hold a JSON object");
  std::string const kind = doc.value("kind", "");
  if (!doc.contains("A") || !doc.contains("B")) throw InvalidArgument("construction needs A and B");
  FiniteGroup a = group_ref(doc["A"]);
  FiniteGroup b = group_ref(doc["B"]);
  if (kind == "free") {
    if (doc.contains("pairing")) throw InvalidArgument("a free product takes no pairing");
    FreeConstruction k(a, b);
    if (doc.contains("name")) k.set_name(doc["name"].get<std::string>());
    return k;
  }
  if (kind == "amalgam") {
    if (!doc.contains("pairing") || !doc["pairing"].is_array()) {
      throw InvalidArgument("an amalgam needs a pairing array");
    }
    std::vector<std::pair<Elem, Elem>> pairing;
    for (auto const& e : doc["pairing"]) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("pairing entries are [a, b] index pairs");
      pairing.emplace_back(e[0].get<Elem>(), e[1].get<Elem>());
    }
    FreeConstruction k(a, b, pairing);
    if (doc.contains("name")) k.set_name(doc["name"].get<std::string>());
    return k;
  }
  throw InvalidArgument("construction kind must be \"free\" or \"amalgam\"");
}

FreeConstruction load_construction(std::string_view ref) {
  if (ref == "c3xc3") {
    FreeConstruction k(cyclic(3), cyclic(3));
    k.set_name("c3xc3");
    return k;
  }
  if (ref.starts_with("d2p:")) {
    std::string const digits(ref.substr(4));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw InvalidArgument("d2p preset needs a prime, e.g. d2p:3");
    }
    return d2p_amalgam(std::stoul(digits));
  }
  if (ref.starts_with("free:")) {
    auto const rest = ref.substr(5);
    auto const comma = rest.find(',');
    if (comma == std::string_view::npos) throw InvalidArgument("free preset is free:<A>,<B>");
    FreeConstruction k(load_group(rest.substr(0, comma)), load_group(rest.substr(comma + 1)));
    k.set_name(std::string(ref));
    return k;
  }
  if (std::filesystem::exists(std::string(ref))) {
    return construction_from_json(read_json_file(std::string(ref)));
  }
  throw InvalidArgument("unknown construction '" + std::string(ref) + "'");
}

// ---------------------------------------------------------------------------
// Bounded searches

std::uint64_t bounded_word_count(FreeConstruction const& k, std::size_t max_len) {
  std::uint64_t const ta = k.transversal(Factor::A).size() - 1;
  std::uint64_t const tb = k.transversal(Factor::B).size() - 1;
  std::uint64_t const c = k.amalgamated_in_a().size();
  // sequences of length n ending in A / in B
  std::uint64_t end_a = 1, end_b = 0, total = 1;
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::uint64_t const na = n == 1 ? ta : sat_mul(end_b, ta);
    std::uint64_t const nb = n == 1 ? tb : sat_mul(end_a, tb);
    end_a = na;
    end_b = nb;
    total = sat_add(total, sat_add(na, nb));
  }
  return sat_mul(total, c);
}

std::vector<PWord> bounded_words(FreeConstruction const& k, std::size_t max_len) {
  std::uint64_t const count = bounded_word_count(k, max_len);
  if (count > limits().budget) {
    throw BudgetExceeded("bounded words of length <= " + std::to_string(max_len),
                         static_cast<double>(count), limits().budget);
  }
  auto const& heads = k.amalgamated_in_a().members();
  std::vector<PWord> out;
  out.reserve(count);
  std::vector<PSyllable> seq;
  // lexicographic over (factor, representative) sequences, heads innermost
  auto rec = [&](auto&& self, std::size_t len) -> void {
    if (seq.size() == len) {
      for (auto h : heads) out.push_back(PWord{h, seq});
      return;
    }
    for (Factor f : {Factor::A, Factor::B}) {
      if (!seq.empty() && seq.back().factor == f) continue;
      for (auto r : k.transversal(f)) {
        if (r == 0) continue;
        seq.push_back({f, r});
        self(self, len);
        seq.pop_back();
      }
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) rec(rec, len);
  return out;
}

BoundedMalnormalReport bounded_malnormal_check(FreeConstruction const& k, Factor f,
                                               SubgroupSet const& h, std::size_t max_len) {
  if (!h.parent().same_as(k.factor(f))) {
    throw InvalidArgument("subgroup does not belong to the named factor");
  }
  BoundedMalnormalReport r;
  r.max_len = max_len;
  auto const words = bounded_words(k, max_len);
  std::vector<PWord> hs;
  for (auto x : h.members()) {
    if (x != 0) hs.push_back(pw_embed(k, f, x));
  }
  auto bad_h = [&](PWord const& g) -> std::optional<Elem> {
    if (pw_in_subgroup(k, g, f, h)) return std::nullopt;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (pw_in_subgroup(k, pw_conjugate(k, hs[i], g), f, h)) return h.members()[i + 1];
    }
    return std::nullopt;
  };
  auto hit = kernels::least_failure(words.size(), [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    for (std::uint64_t i = b; i < e; ++i) {
      if (bad_h(words[i])) return i;
    }
    return std::nullopt;
  });
  if (hit) {
    r.ok = false;
    r.words_checked = *hit + 1;
    r.witness = std::make_pair(words[*hit], *bad_h(words[*hit]));
  } else {
    r.words_checked = words.size();
  }
  return r;
}

namespace {

PWord evaluate_pw(FreeConstruction const& k, FreeWord const& w, std::vector<PWord> const& values) {
  PWord acc;
  for (auto const& s : w.syllables()) append(k, acc, pw_pow(k, values[s.var - 1], s.exp));
  return acc;
}

}  // namespace

NotXtWitness not_xt_witness(FreeConstruction const& k, VarietySpec const& x, std::size_t depth) {
  NotXtWitness out;
  out.a_member = is_member(k.factor(Factor::A), x).member;
  out.b_member = is_member(k.factor(Factor::B), x).member;
  for (auto c : k.amalgamated_in_a().members()) {
    if (c != 0) {
      out.intersection = pw_embed(k, Factor::A, c);
      break;
    }
  }
  auto const words = bounded_words(k, depth);
  for (auto const& law : x.basis) {
    std::uint32_t const arity = law.arity();
    std::uint64_t const count = tuple_count(words.size(), arity);
    if (count > limits().budget) {
      throw BudgetExceeded("law tuples over bounded words", static_cast<double>(count), limits().budget);
    }
    auto value_at = [&](std::uint64_t index) {
      kernels::Odometer odo(static_cast<std::uint32_t>(words.size()), arity, index);
      std::vector<PWord> vals;
      for (std::size_t i = 0; i < odo.size(); ++i) vals.push_back(words[odo[i]]);
      return std::make_pair(vals, evaluate_pw(k, law, vals));
    };
    auto hit = kernels::least_failure(count, [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
      for (std::uint64_t i = b; i < e; ++i) {
        if (!value_at(i).second.is_identity()) return i;
      }
      return std::nullopt;
    });
    out.tuples_checked += hit ? *hit + 1 : count;
    if (hit) {
      auto [vals, value] = value_at(*hit);
      out.found = true;
      out.tuple = std::move(vals);
      out.value = std::move(value);
      out.law = law;
      return out;
    }
  }
  return out;
}

FreeProbeReport free_probe(FreeConstruction const& k, PWord const& w1, PWord const& w2,
                           std::size_t max_len) {
  if (w1.is_identity() || w2.is_identity()) throw InvalidArgument("probe words must be nontrivial");
  FreeProbeReport r;
  r.max_len = max_len;
  std::uint64_t total = 0, level = 4;
  for (std::size_t n = 1; n <= max_len; ++n) {
    total = sat_add(total, level);
    level = sat_mul(level, 3);
  }
  if (total > limits().budget) {
    throw BudgetExceeded("free probe words", static_cast<double>(total), limits().budget);
  }
  // letters: x1, x1^-1, x2, x2^-1
  PWord const letter[4] = {w1, pw_invert(k, w1), w2, pw_invert(k, w2)};
  std::vector<int> word;
  std::vector<PWord> prefix{PWord{}};
  std::optional<std::vector<int>> best;
  std::size_t limit = max_len;
  auto rec = [&](auto&& self) -> void {
    if (word.size() >= limit) return;
    for (int l = 0; l < 4; ++l) {
      if (!word.empty() && (word.back() ^ 1) == l) continue;
      word.push_back(l);
      prefix.push_back(pw_multiply(k, prefix.back(), letter[l]));
      ++r.words_checked;
      if (prefix.back().is_identity()) {
        // depth-first visits each length in lexicographic order, so the first
        // hit at a shorter length is the least relation there
        if (!best || word.size() < best->size()) {
          best = word;
          limit = word.size() - 1;
        }
      } else {
        self(self);
      }
      prefix.pop_back();
      word.pop_back();
    }
  };
  rec(rec);
  if (best) {
    std::vector<Syllable> syl;
    for (int l : *best) syl.push_back({static_cast<std::uint32_t>(l / 2 + 1), (l & 1) ? -1 : 1});
    r.no_relation = false;
    r.relation = FreeWord(syl);
  }
  return r;
}

PowerConjugacyReport power_conjugacy_search(FreeConstruction const& k, std::size_t max_z_len,
                                            std::size_t max_g_len, std::int64_t max_n,
                                            std::int64_t max_m) {
  if (max_n < 1 || max_m < 1) throw InvalidArgument("power bounds must be positive");
  PowerConjugacyReport r;
  std::vector<PWord> zs;
  for (auto& z : bounded_words(k, max_z_len)) {
    if (z.length() >= 2 && pw_length(k, z, true) == z.length()) zs.push_back(std::move(z));
  }
  auto const gs = bounded_words(k, max_g_len);
  r.z_count = zs.size();
  r.g_count = gs.size();
  std::uint64_t const work = sat_mul(sat_mul(zs.size(), gs.size()), static_cast<std::uint64_t>(2 * max_n));
  if (work > limits().budget) {
    throw BudgetExceeded("power conjugacy search", static_cast<double>(work), limits().budget);
  }
  std::vector<std::vector<PowerConjugacy>> found(zs.size());
  kernels::for_each_index(static_cast<std::int64_t>(zs.size()), [&](std::int64_t zi) {
    PWord const& z = zs[static_cast<std::size_t>(zi)];
    std::map<PWord, std::int64_t> powers;
    for (std::int64_t m = -max_m; m <= max_m; ++m) {
      if (m != 0) powers.emplace(pw_pow(k, z, m), m);
    }
    for (std::int64_t n = -max_n; n <= max_n; ++n) {
      if (n == 0) continue;
      PWord const zn = pw_pow(k, z, n);
      for (auto const& g : gs) {
        auto it = powers.find(pw_conjugate(k, zn, g));
        if (it != powers.end()) found[static_cast<std::size_t>(zi)].push_back({z, g, n, it->second});
      }
    }
  });
  for (auto& v : found) {
    for (auto& inst : v) {
      if (std::abs(inst.m) != std::abs(inst.n)) r.lengths_match = false;
      r.instances.push_back(std::move(inst));
    }
  }
  return r;
}

}  // namespace varitas
