#pragma once

// Explicit enumeration of finitely generated subgroups of Sp_2n(A).
//
// Elements are stored as packed keys: 4n^2 d bits, row-major, entry
// coordinates LSB first, in 64-bit words.  A BFS tree (parent index and
// generator letter) doubles as the witness store.  Construction is single
// threaded, so element order and witnesses depend only on the generator list.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/symplectic.hpp"
#include "sympl/word.hpp"

namespace sympl {

enum class Membership { kNo, kYes, kUnknown };

inline char const* to_string(Membership m) {
  switch (m) {
    case Membership::kNo: return "no";
    case Membership::kYes: return "yes";
    case Membership::kUnknown: return "unknown";
  }
  return "?";
}

inline constexpr std::size_t kDefaultCap = 2'000'000;

// Packs matrices of a fixed shape over a fixed ring into word arrays.
class KeyCodec {
 public:
  KeyCodec() = default;
  KeyCodec(int size, int ring_dim)
      : size_(size),
        d_(ring_dim),
        words_((static_cast<std::size_t>(size * size * ring_dim) + 63) / 64) {}

  std::size_t words() const noexcept { return words_; }

  void encode(Matrix const& m, std::uint64_t* out) const {
    std::fill(out, out + words_, std::uint64_t{0});
    std::size_t bit = 0;
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) {
        std::uint64_t v = m.raw(r, c);
        out[bit >> 6] |= v << (bit & 63);
        if ((bit & 63) + static_cast<std::size_t>(d_) > 64) {
          out[(bit >> 6) + 1] |= v >> (64 - (bit & 63));
        }
        bit += static_cast<std::size_t>(d_);
      }
    }
  }

  Matrix decode(std::uint64_t const* in) const {
    Matrix m(size_);
    std::uint64_t const mask = (std::uint64_t{1} << d_) - 1;
    std::size_t bit = 0;
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) {
        std::uint64_t v = in[bit >> 6] >> (bit & 63);
        if ((bit & 63) + static_cast<std::size_t>(d_) > 64) {
          v |= in[(bit >> 6) + 1] << (64 - (bit & 63));
        }
        m.raw(r, c) = static_cast<std::uint8_t>(v & mask);
        bit += static_cast<std::size_t>(d_);
      }
    }
    return m;
  }

 private:
  int size_ = 0;
  int d_ = 0;
  std::size_t words_ = 0;
};

inline std::uint64_t hash_words(std::uint64_t const* k, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x = k[i] + h;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    h = x ^ (x >> 31);
  }
  return h;
}

// FNV-1a, used for cache headers and config hashes.
inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class GroupClosure {
 public:
  GroupClosure(SpGroup group, std::vector<Matrix> gens,
               std::size_t cap = kDefaultCap)
      : group_(std::move(group)),
        codec_(group_.dim(), group_.ring().dim()),
        cap_(cap) {
    if (cap_ < 1) {
      throw UsageError("closure cap must be at least 1");
    }
    insert(group_.identity(), kNoParent, 0);
    for (auto const& g : gens) {
      add_letters(g);
    }
    expand(0);
  }

  SpGroup const& group() const noexcept { return group_; }
  std::vector<Matrix> const& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t cap() const noexcept { return cap_; }
  bool complete() const noexcept { return !overflowed_; }
  bool overflowed() const noexcept { return overflowed_; }

  Matrix element(std::size_t idx) const {
    return codec_.decode(&keys_[idx * codec_.words()]);
  }

  std::optional<std::size_t> find(Matrix const& g) const {
    group_.check_shape(g);
    std::vector<std::uint64_t> key(codec_.words());
    codec_.encode(g, key.data());
    return lookup(key.data());
  }

  Membership contains(Matrix const& g) const {
    if (find(g)) {
      return Membership::kYes;
    }
    return overflowed_ ? Membership::kUnknown : Membership::kNo;
  }

  // Word over generators() evaluating to element idx.
  Word word_at(std::size_t idx) const {
    std::vector<Letter> out;
    while (parent_[idx] != kNoParent) {
      out.push_back(letter_[idx]);
      idx = parent_[idx];
    }
    return Word(std::move(out));
  }

  std::optional<Word> witness(Matrix const& g) const {
    if (auto idx = find(g)) {
      return word_at(*idx);
    }
    return std::nullopt;
  }

  std::size_t witness_length(std::size_t idx) const {
    std::size_t n = 0;
    while (parent_[idx] != kNoParent) {
      ++n;
      idx = parent_[idx];
    }
    return n;
  }

  // Adds a generator and extends the closure.  Existing elements are
  // multiplied by the new letters; new elements by every letter.
  void add_generator(Matrix const& g) {
    if (overflowed_) {
      throw CapacityError("cannot extend an overflowed closure");
    }
    std::size_t first_new_letter = letters_.size();
    add_letters(g);
    std::size_t old_size = size();
    for (std::size_t idx = 0; idx < old_size && !overflowed_; ++idx) {
      apply_letters(idx, first_new_letter);
    }
    expand(old_size);
  }

  std::vector<std::uint64_t> sorted_keys() const {
    std::size_t w = codec_.words();
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(
          keys_.begin() + static_cast<long>(a * w),
          keys_.begin() + static_cast<long>((a + 1) * w),
          keys_.begin() + static_cast<long>(b * w),
          keys_.begin() + static_cast<long>((b + 1) * w));
    });
    std::vector<std::uint64_t> out;
    out.reserve(keys_.size());
    for (auto i : order) {
      out.insert(out.end(), keys_.begin() + static_cast<long>(i * w),
                 keys_.begin() + static_cast<long>((i + 1) * w));
    }
    return out;
  }

  KeyCodec const& codec() const noexcept { return codec_; }

  // Versioned binary cache: header, generators, keys and BFS tree.
  void save(std::ostream& out) const {
    std::string header = cache_header();
    write_u64(out, header.size());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    write_u64(out, overflowed_ ? 1 : 0);
    write_u64(out, cap_);
    write_u64(out, size());
    out.write(reinterpret_cast<char const*>(keys_.data()),
              static_cast<std::streamsize>(keys_.size() * 8));
    out.write(reinterpret_cast<char const*>(parent_.data()),
              static_cast<std::streamsize>(parent_.size() * 4));
    out.write(reinterpret_cast<char const*>(letter_.data()),
              static_cast<std::streamsize>(letter_.size() * 4));
    if (!out) {
      throw Error("failed writing closure cache");
    }
  }

  // Loads a cache written for the same ring, rank and generator list.
  static GroupClosure load(std::istream& in, SpGroup group,
                           std::vector<Matrix> gens) {
    GroupClosure c(std::move(group));
    for (auto const& g : gens) {
      c.add_letters(g);
    }
    std::string expected = c.cache_header();
    std::uint64_t hlen = read_u64(in);
    if (hlen > 4096) {
      throw ValidationError("closure cache header is corrupt");
    }
    std::string header(hlen, '\0');
    in.read(header.data(), static_cast<std::streamsize>(hlen));
    if (header != expected) {
      throw ValidationError("closure cache does not match: '" + header
                            + "' vs '" + expected + "'");
    }
    c.overflowed_ = read_u64(in) != 0;
    c.cap_ = read_u64(in);
    std::uint64_t n = read_u64(in);
    std::size_t w = c.codec_.words();
    c.keys_.resize(n * w);
    c.parent_.resize(n);
    c.letter_.resize(n);
    in.read(reinterpret_cast<char*>(c.keys_.data()),
            static_cast<std::streamsize>(n * w * 8));
    in.read(reinterpret_cast<char*>(c.parent_.data()),
            static_cast<std::streamsize>(n * 4));
    in.read(reinterpret_cast<char*>(c.letter_.data()),
            static_cast<std::streamsize>(n * 4));
    if (!in) {
      throw ValidationError("closure cache is truncated");
    }
    c.rebuild_table();
    return c;
  }

 private:
  static constexpr std::uint32_t kNoParent = 0xffffffffU;

  explicit GroupClosure(SpGroup group)
      : group_(std::move(group)),
        codec_(group_.dim(), group_.ring().dim()),
        cap_(kDefaultCap) {}

  struct LetterData {
    Letter letter;
    SparseDelta delta;
  };

  std::string cache_header() const {
    std::uint64_t h = fnv1a("gens");
    std::vector<std::uint64_t> key(codec_.words());
    for (auto const& g : gens_) {
      codec_.encode(g, key.data());
      h = fnv1a(std::string_view(reinterpret_cast<char const*>(key.data()),
                                 key.size() * 8),
                h);
    }
    return "sympl-closure v1 ring=" + group_.ring().name()
           + " n=" + std::to_string(group_.rank())
           + " gens=" + std::to_string(gens_.size())
           + " hash=" + std::to_string(h);
  }

  void add_letters(Matrix const& g) {
    group_.check_shape(g);
    if (!group_.is_symplectic(g)) {
      throw UsageError("closure generator is not symplectic");
    }
    gens_.push_back(g);
    auto k = static_cast<Letter>(gens_.size());
    RingElt one = group_.ring().one();
    letters_.push_back({k, SparseDelta(g, one)});
    Matrix inv = group_.inverse(g);
    if (!(inv == g)) {
      letters_.push_back({-k, SparseDelta(inv, one)});
    }
  }

  void apply_letters(std::size_t idx, std::size_t from_letter) {
    Matrix m = element(idx);
    for (std::size_t l = from_letter; l < letters_.size(); ++l) {
      Matrix next = letters_[l].delta.apply_left(group_.ring(), m);
      std::vector<std::uint64_t>& key = scratch_;
      key.resize(codec_.words());
      codec_.encode(next, key.data());
      if (lookup(key.data())) {
        continue;
      }
      if (size() >= cap_) {
        overflowed_ = true;
        return;
      }
      insert_key(key.data(), static_cast<std::uint32_t>(idx),
                 letters_[l].letter);
    }
  }

  void expand(std::size_t start) {
    for (std::size_t idx = start; idx < size() && !overflowed_; ++idx) {
      apply_letters(idx, 0);
    }
  }

  void insert(Matrix const& m, std::uint32_t parent, Letter letter) {
    std::vector<std::uint64_t> key(codec_.words());
    codec_.encode(m, key.data());
    insert_key(key.data(), parent, letter);
  }

  void insert_key(std::uint64_t const* key, std::uint32_t parent,
                  Letter letter) {
    std::size_t idx = parent_.size();
    keys_.insert(keys_.end(), key, key + codec_.words());
    parent_.push_back(parent);
    letter_.push_back(letter);
    if ((idx + 1) * 2 > table_.size()) {
      rebuild_table();
    } else {
      place(idx);
    }
  }

  void place(std::size_t idx) {
    std::size_t mask = table_.size() - 1;
    std::size_t slot =
        hash_words(&keys_[idx * codec_.words()], codec_.words()) & mask;
    while (table_[slot] != 0) {
      slot = (slot + 1) & mask;
    }
    table_[slot] = static_cast<std::uint32_t>(idx + 1);
  }

  void rebuild_table() {
    std::size_t want = 16;
    while (want < size() * 2 + 2) {
      want <<= 1;
    }
    table_.assign(want, 0);
    for (std::size_t i = 0; i < size(); ++i) {
      place(i);
    }
  }

  std::optional<std::size_t> lookup(std::uint64_t const* key) const {
    if (table_.empty()) {
      return std::nullopt;
    }
    std::size_t w = codec_.words();
    std::size_t mask = table_.size() - 1;
    std::size_t slot = hash_words(key, w) & mask;
    while (std::uint32_t e = table_[slot]) {
      std::size_t idx = e - 1;
      if (std::equal(key, key + w, &keys_[idx * w])) {
        return idx;
      }
      slot = (slot + 1) & mask;
    }
    return std::nullopt;
  }

  static void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<char const*>(&v), 8);
  }
  static std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    if (!in) {
      throw ValidationError("closure cache is truncated");
    }
    return v;
  }

  SpGroup group_;
  KeyCodec codec_;
  std::size_t cap_;
  bool overflowed_ = false;
  std::vector<Matrix> gens_;
  std::vector<LetterData> letters_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> letter_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint64_t> scratch_;
};

// Closure of seed under the group operations and conjugation by the
// normalizer list.  Conjugates of generators that fall outside the current
// group are added as generators until the set is stable.
inline GroupClosure normal_closure(SpGroup const& group,
                                   std::vector<Matrix> const& seed,
                                   std::vector<Matrix> const& normalizers,
                                   std::size_t cap = kDefaultCap) {
  GroupClosure g(group, seed, cap);
  bool changed = true;
  while (changed && g.complete()) {
    changed = false;
    for (auto const& t : normalizers) {
      Matrix t_inv = group.inverse(t);
      for (std::size_t s = 0; s < g.generators().size() && g.complete();
           ++s) {
        Matrix c = group.mul(group.mul(t, g.generators()[s]), t_inv);
        if (g.contains(c) == Membership::kNo) {
          g.add_generator(c);
          changed = true;
        }
      }
    }
  }
  return g;
}

// [G, G] as the normal closure of the commutators of generator pairs.
inline GroupClosure derived_subgroup(GroupClosure const& g,
                                     std::size_t cap = kDefaultCap) {
  if (!g.complete()) {
    throw CapacityError("derived subgroup of an overflowed closure");
  }
  SpGroup const& grp = g.group();
  auto const& gens = g.generators();
  std::vector<Matrix> comms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Matrix c = grp.commutator(gens[i], gens[j]);
      if (!(c == grp.identity())
          && std::find(comms.begin(), comms.end(), c) == comms.end()) {
        comms.push_back(c);
      }
    }
  }
  return normal_closure(grp, comms, gens, cap);
}

// D^0 = G, D^1, ..., D^k; stops early when a term overflows.
inline std::vector<GroupClosure> derived_series(GroupClosure const& g, int k,
                                                std::size_t cap = kDefaultCap) {
  std::vector<GroupClosure> out{g};
  for (int i = 0; i < k && out.back().complete(); ++i) {
    out.push_back(derived_subgroup(out.back(), cap));
  }
  return out;
}

// P_α(G) = {t : x_α(t) ∈ G}; nullopt when G overflowed and some answer is
// unknown.
inline std::optional<ElementSet> level_set(GroupClosure const& g,
                                           Root const& alpha) {
  SpGroup const& grp = g.group();
  ElementSet out;
  for (auto t : grp.ring().elements()) {
    switch (g.contains(grp.root_element(alpha, t))) {
      case Membership::kYes: out.set(t.bits); break;
      case Membership::kNo: break;
      case Membership::kUnknown: return std::nullopt;
    }
  }
  return out;
}

}  // namespace sympl
