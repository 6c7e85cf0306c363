#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

/*
  Permutations of [1,n] in one-line notation.

  The composition convention throughout the library is

      (u * w)(j) = w(u(j)),

  i.e. in a product the left factor acts first.  Consequently:

    - right multiplication by the adjacent transposition s_k swaps the
      *values* k and k+1, and increases length iff inv(k) < inv(k+1);
    - left multiplication by s_k swaps the *entries* at positions k and k+1,
      and increases length iff p(k) < p(k+1).
*/
class Perm {
public:
  Perm() = default;
  static Perm identity(int n) {
    Perm p;
    p.img_.resize(static_cast<std::size_t>(n));
    std::iota(p.img_.begin(), p.img_.end(), 1);
    return p;
  }
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size() + 1, false);
    for (int v : img_) {
      if (v < 1 || v > static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("not a permutation of [1,n]");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int j) const { return img_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int j = 1; j <= n(); ++j)
      if ((*this)(j) != j) return false;
    return true;
  }

  Perm inverse() const {
    Perm p;
    p.img_.resize(img_.size());
    for (int j = 1; j <= n(); ++j) p.img_[static_cast<std::size_t>((*this)(j) - 1)] = j;
    return p;
  }

  friend Perm operator*(const Perm& u, const Perm& w) {
    Perm p;
    p.img_.resize(u.img_.size());
    for (int j = 1; j <= u.n(); ++j) p.img_[static_cast<std::size_t>(j - 1)] = w(u(j));
    return p;
  }

  // number of inversions
  int length() const {
    int len = 0;
    for (int i = 1; i <= n(); ++i)
      for (int j = i + 1; j <= n(); ++j)
        if ((*this)(i) > (*this)(j)) ++len;
    return len;
  }

  Perm times_s(int k) const { // *this * s_k
    Perm p = *this;
    for (auto& v : p.img_) {
      if (v == k)
        v = k + 1;
      else if (v == k + 1)
        v = k;
    }
    return p;
  }
  Perm s_times(int k) const { // s_k * *this
    Perm p = *this;
    std::swap(p.img_[static_cast<std::size_t>(k - 1)], p.img_[static_cast<std::size_t>(k)]);
    return p;
  }

  bool right_ascent(int k) const { // len(p * s_k) == len(p) + 1
    int a = 0, b = 0;
    for (int j = 1; j <= n(); ++j) {
      if ((*this)(j) == k) a = j;
      if ((*this)(j) == k + 1) b = j;
    }
    return a < b;
  }
  bool left_ascent(int k) const { // len(s_k * p) == len(p) + 1
    return (*this)(k) < (*this)(k + 1);
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::string to_string() const {
    std::string s;
    for (int j = 1; j <= n(); ++j) {
      if (j > 1) s += ',';
      s += std::to_string((*this)(j));
    }
    return s;
  }

private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : p.images()) h = h * 1099511628211ULL + static_cast<std::size_t>(v);
    return h;
  }
};

// A word in the generators s_1,...,s_{n-1}; not necessarily reduced.
using Word = std::vector<int>;

inline void check_word(const Word& w, int n) {
  for (int k : w)
    if (k < 1 || k >= n) throw std::invalid_argument("word letter out of [1,n-1]");
}

inline Perm word_to_perm(const Word& w, int n) {
  check_word(w, n);
  Perm p = Perm::identity(n);
  for (int k : w) p = p.times_s(k);
  return p;
}

inline bool is_reduced(const Word& w, int n) {
  return word_to_perm(w, n).length() == static_cast<int>(w.size());
}

// One reduced word of w, letters in product order (prefixes have increasing length).
inline Word reduced_word(const Perm& w) {
  Word out;
  Perm v = w;
  while (!v.is_identity()) {
    int k = 0;
    for (int i = 1; i < v.n(); ++i)
      if (!v.right_ascent(i)) {
        k = i;
        break;
      }
    v = v.times_s(k);
    out.push_back(k);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline void all_reduced_words_rec(const Perm& v, Word& acc, std::vector<Word>& out) {
  if (v.is_identity()) {
    Word w(acc.rbegin(), acc.rend());
    out.push_back(std::move(w));
    return;
  }
  for (int k = 1; k < v.n(); ++k)
    if (!v.right_ascent(k)) {
      acc.push_back(k);
      all_reduced_words_rec(v.times_s(k), acc, out);
      acc.pop_back();
    }
}

inline std::vector<Word> all_reduced_words(const Perm& w) {
  std::vector<Word> out;
  Word acc;
  all_reduced_words_rec(w, acc, out);
  return out;
}

// Ehresmann's tableau criterion for the Bruhat order.
inline bool bruhat_leq(const Perm& a, const Perm& b) {
  int n = a.n();
  std::vector<int> pa, pb;
  for (int i = 1; i <= n; ++i) {
    pa.push_back(a(i));
    pb.push_back(b(i));
    std::vector<int> sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (std::size_t t = 0; t < sa.size(); ++t)
      if (sa[t] > sb[t]) return false;
  }
  return true;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<Perm> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// w^{M,N}(i) = i + N modulo n, the Grassmannian permutation of length M*N.
inline Perm grassmannian_perm(int m, int nn) {
  int n = m + nn;
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) img[static_cast<std::size_t>(i - 1)] = i <= m ? i + nn : i + nn - n;
  return Perm(std::move(img));
}

// Its canonical reduced word, column by column: (s_M...s_{M+N-1})...(s_1...s_N).
inline Word grassmannian_word(int m, int nn) {
  Word w;
  for (int g = 0; g < m; ++g)
    for (int t = 0; t < nn; ++t) w.push_back(m - g + t);
  return w;
}

// rev_{l,r} as a permutation of [1,window], identity outside [l,r].
inline Perm rev_perm(int l, int r, int window) {
  std::vector<int> img(static_cast<std::size_t>(window));
  for (int i = 1; i <= window; ++i)
    img[static_cast<std::size_t>(i - 1)] = (i >= l && i <= r) ? l + r - i : i;
  return Perm(std::move(img));
}

} // namespace sixv
