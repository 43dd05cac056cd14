#include "fpv/word.hpp"

#include <algorithm>

namespace fpv {

Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.letters.size());
  for (Letter l : w.letters) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.push_back(inverse(*it));
  }
  return Word(std::move(out));
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters.begin(), a.letters.end());
  for (Letter l : b.letters) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  // a may not have been reduced; normalize fully.
  return free_reduce(Word(std::move(out)));
}

Word conjugate(const Word& w, const Word& by) {
  return concat(concat(invert(by), w), by);
}

Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.letters.size();
  while (hi - lo >= 2 && w.letters[lo] == inverse(w.letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(w.letters.begin() + lo, w.letters.begin() + hi));
}

Word power(const Word& w, long long e) {
  if (e == 0 || w.empty()) return Word();
  Word base = e > 0 ? w : invert(w);
  unsigned long long n = e > 0 ? static_cast<unsigned long long>(e)
                               : 0ULL - static_cast<unsigned long long>(e);
  std::vector<Letter> out;
  out.reserve(base.size() * n);
  for (unsigned long long i = 0; i < n; ++i) {
    for (Letter l : base.letters) {
      if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
  }
  return Word(std::move(out));
}

std::string render(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    long long run = static_cast<long long>(j - i) * w.letters[i].sign;
    if (!out.empty()) out += ' ';
    out += names.at(w.letters[i].gen);
    if (run != 1) {
      out += '^';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

Word cyclic_canonical(const Word& w) {
  Word r = cyclic_reduce(free_reduce(w));
  if (r.empty()) return r;
  Word best = r;
  for (const Word& form : {r, invert(r)}) {
    std::vector<Letter> rot = form.letters;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (Word probe(rot); probe < best) best = probe;
    }
  }
  return best;
}

}  // namespace fpv
