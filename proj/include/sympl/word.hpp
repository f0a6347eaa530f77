#pragma once

// Words over a generator list.  Letter +k stands for generator k-1 and -k
// for its inverse; evaluation multiplies left to right.

#include <cstdint>
#include <string>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

using Letter = std::int32_t;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word letter(std::size_t gen, bool inverse = false) {
    auto l = static_cast<Letter>(gen + 1);
    return Word({inverse ? -l : l});
  }

  std::vector<Letter> const& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) {
      l = -l;
    }
    return Word(std::move(out));
  }

  // Concatenation with free cancellation at the seam.
  friend Word operator*(Word const& a, Word const& b) {
    std::vector<Letter> out = a.letters_;
    std::size_t k = 0;
    while (!out.empty() && k < b.letters_.size()
           && out.back() == -b.letters_[k]) {
      out.pop_back();
      ++k;
    }
    out.insert(out.end(), b.letters_.begin() + static_cast<long>(k),
               b.letters_.end());
    return Word(std::move(out));
  }

  friend bool operator==(Word const&, Word const&) = default;

 private:
  std::vector<Letter> letters_;
};

// [a, b] = a b a^-1 b^-1.
inline Word commutator(Word const& a, Word const& b) {
  return a * b * a.inverse() * b.inverse();
}

// a^b = b^-1 a b.
inline Word conjugate(Word const& a, Word const& b) {
  return b.inverse() * a * b;
}

// Evaluates w over gens.  Inverses use the symplectic inverse, so gens must
// be symplectic.
inline Matrix evaluate(SpGroup const& group, std::vector<Matrix> const& gens,
                       Word const& w) {
  Matrix m = group.identity();
  for (Letter l : w.letters()) {
    auto k = static_cast<std::size_t>(l > 0 ? l : -l);
    if (l == 0 || k > gens.size()) {
      throw UsageError("word letter " + std::to_string(l)
                       + " outside generator list of size "
                       + std::to_string(gens.size()));
    }
    Matrix const& g = gens[k - 1];
    m = group.mul(m, l > 0 ? g : group.inverse(g));
  }
  return m;
}

}  // namespace sympl
