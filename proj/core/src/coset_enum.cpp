#include "fpv/coset_enum.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <set>
#include <sstream>

#include "fpv/errors.hpp"

// Todd-Coxeter coset enumeration with HLT, Felsch and HLT-with-lookahead
// strategies. The table stores one column per generator and one per inverse;
// coincidences are resolved with a union-find over coset ids plus a merge
// queue, migrating the column data of dead cosets eagerly, so that once the
// queue drains no live row references a dead coset. New cosets are always
// created at the lexicographically least undefined table position the
// current strategy is looking at, which makes runs reproducible.

namespace fpv {

const CosetTable& EnumOutcome::require_table() const {
  if (!complete || !table) throw IncompleteTable();
  return *table;
}

std::int64_t index(const CosetTable& t) { return t.n_live; }

namespace {

using Row = std::int32_t;

struct TableFull {};
struct ExceededSignal {};

std::vector<std::uint8_t> word_cols(const Word& w, int n_gens) {
  std::vector<std::uint8_t> cols;
  cols.reserve(w.size());
  for (Letter l : w.letters) {
    if (l.gen >= n_gens) throw InvalidWord("word references generator #" +
                                           std::to_string(l.gen) +
                                           " outside the presentation");
    cols.push_back(static_cast<std::uint8_t>(CosetTable::col(l.gen, l.sign)));
  }
  return cols;
}

class Enumerator {
 public:
  Enumerator(const Presentation& p, const SubgroupSpec& h, Strategy strategy,
             const EnumLimits& limits)
      : pres_(p),
        sub_(h),
        strategy_(strategy),
        cap_(std::max<std::int64_t>(limits.max_cosets, 1)),
        max_seconds_(limits.max_seconds),
        ncols_(2 * static_cast<int>(p.generators.size())) {
    int n_gens = static_cast<int>(p.generators.size());
    for (const Word& r : p.relators) relators_.push_back(word_cols(r, n_gens));
    for (const Word& w : h.generator_words) {
      Word reduced = free_reduce(w);
      if (!reduced.empty()) subgroup_words_.push_back(word_cols(reduced, n_gens));
    }
    if (strategy_ == Strategy::Felsch) build_conjugate_table();
    start_ = std::chrono::steady_clock::now();
  }

  EnumOutcome run() {
    EnumOutcome out;
    alloc_rows(1024);
    try {
      if (strategy_ == Strategy::Felsch) {
        run_felsch();
      } else {
        run_hlt();
      }
      out.complete = true;
      out.table = extract_table();
    } catch (ExceededSignal) {
      out.complete = false;
    }
    out.stats = stats_;
    out.stats.elapsed_seconds = elapsed();
    return out;
  }

 private:
  // ---- storage ----------------------------------------------------------

  std::int32_t* row(Row c) { return tab_.data() + static_cast<std::size_t>(c) * ncols_; }
  const std::int32_t* row(Row c) const {
    return tab_.data() + static_cast<std::size_t>(c) * ncols_;
  }
  static int inv(int col) { return col ^ 1; }

  bool alive(Row c) const { return parent_[c] == c; }

  Row find(Row c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  void alloc_rows(std::int64_t want_alloc) {
    std::int64_t rows = std::min<std::int64_t>(cap_ + 1, want_alloc + 1);
    if (static_cast<std::int64_t>(parent_.size()) < rows) {
      tab_.resize(static_cast<std::size_t>(rows) * ncols_, 0);
      parent_.reserve(rows);
      while (static_cast<std::int64_t>(parent_.size()) < rows)
        parent_.push_back(static_cast<Row>(parent_.size()));
    }
  }

  Row define(Row a, int x) {
    if (n_alloc_ >= cap_) throw TableFull{};
    if (n_alloc_ + 1 >= static_cast<std::int64_t>(parent_.size()))
      alloc_rows(std::min<std::int64_t>(cap_, std::max<std::int64_t>(n_alloc_ * 2, 1024)));
    Row b = static_cast<Row>(++n_alloc_);
    std::fill(row(b), row(b) + ncols_, 0);
    parent_[b] = b;
    row(a)[x] = b;
    row(b)[inv(x)] = a;
    ++nlive_;
    ++stats_.cosets_defined;
    if (strategy_ == Strategy::Felsch) deductions_.emplace_back(a, x);
    if ((stats_.cosets_defined & 0x3fff) == 0) check_clock();
    return b;
  }

  void check_clock() {
    if (max_seconds_ && elapsed() > *max_seconds_) throw ExceededSignal{};
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  // ---- coincidences ------------------------------------------------------

  void merge(Row u, Row v) {
    u = find(u);
    v = find(v);
    if (u == v) return;
    if (u > v) std::swap(u, v);
    parent_[v] = u;
    --nlive_;
    ++stats_.cosets_dead;
    queue_.push_back(v);
  }

  void coincidence(Row a, Row b) {
    if (find(a) == find(b)) return;
    ++stats_.coincidences_processed;
    merge(a, b);
    while (!queue_.empty()) {
      Row g = queue_.front();
      queue_.pop_front();
      std::int32_t* gr = row(g);
      for (int x = 0; x < ncols_; ++x) {
        Row d = gr[x];
        if (d == 0) continue;
        gr[x] = 0;
        // d's backward edge pointed at g; drop it before transferring.
        if (row(d)[inv(x)] == g) {
          row(d)[inv(x)] = 0;
          note_cleared(d, inv(x));
        }
        Row mu = find(g);
        Row nu = find(d);
        if (Row mx = row(mu)[x]; mx != 0) {
          merge(nu, mx);
        } else if (Row ni = row(nu)[inv(x)]; ni != 0) {
          merge(mu, ni);
        } else {
          row(mu)[x] = nu;
          row(nu)[inv(x)] = mu;
          if (strategy_ == Strategy::Felsch) deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  void note_cleared(Row c, int x) {
    // A live row lost an entry; the least-hole cursor may have passed it.
    if (alive(c) &&
        (c < hole_row_ || (c == hole_row_ && x < hole_col_))) {
      hole_row_ = c;
      hole_col_ = x;
    }
  }

  // ---- scanning ----------------------------------------------------------

  // Two-sided scan of `w` from coset `a`. With `fill`, gaps are closed by
  // defining new cosets, completing the cycle. Returns false if the scan
  // stopped early because of a coincidence (callers re-check liveness).
  bool scan(Row a, const std::vector<std::uint8_t>& w, bool fill) {
    std::size_t i = 0, j = w.size();
    Row f = a, b = a;
    for (;;) {
      while (i < j && row(f)[w[i]] != 0) f = row(f)[w[i]], ++i;
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
          return false;
        }
        return true;
      }
      while (j > i && row(b)[inv(w[j - 1])] != 0) b = row(b)[inv(w[j - 1])], --j;
      if (j == i) {
        coincidence(f, b);
        return false;
      }
      if (j == i + 1) {
        // One gap: the table entry is forced.
        row(f)[w[i]] = b;
        row(b)[inv(w[i])] = f;
        if (strategy_ == Strategy::Felsch) deductions_.emplace_back(f, w[i]);
        return true;
      }
      if (!fill) return true;
      define(f, w[i]);
      // Resume the forward sweep through the fresh coset.
    }
  }

  // ---- compaction ---------------------------------------------------------

  void compact() {
    if (stats_.cosets_dead == dead_at_last_compact_) return;
    std::vector<Row> newid(n_alloc_ + 1, 0);
    Row next = 0;
    for (Row c = 1; c <= n_alloc_; ++c)
      if (alive(c)) newid[c] = ++next;
    for (Row c = 1; c <= n_alloc_; ++c) {
      if (!alive(c)) continue;
      Row nc = newid[c];
      std::int32_t* src = row(c);
      std::int32_t* dst = row(nc);
      for (int x = 0; x < ncols_; ++x) {
        Row d = src[x];
        dst[x] = d ? newid[d] : 0;
      }
    }
    n_alloc_ = next;
    for (Row c = 0; c <= n_alloc_; ++c) parent_[c] = c;
    dead_at_last_compact_ = stats_.cosets_dead;
    // Remap cursors and pending deductions.
    hlt_row_ = remap(newid, hlt_row_);
    hole_row_ = 1;
    hole_col_ = 0;
    if (!deductions_.empty()) {
      std::vector<std::pair<Row, int>> keep;
      keep.reserve(deductions_.size());
      for (auto [c, x] : deductions_)
        if (newid[c] != 0) keep.emplace_back(newid[c], x);
      deductions_ = std::move(keep);
    }
  }

  Row remap(const std::vector<Row>& newid, Row c) {
    if (c < 1) return c;
    Row r = find(std::min<Row>(c, static_cast<Row>(newid.size() - 1)));
    return newid[r] ? newid[r] : 1;
  }

  // Scans every relator at every live coset without defining anything;
  // collapses found this way free up rows before the table hits its cap.
  void lookahead_pass() {
    for (Row c = 1; c <= n_alloc_; ++c) {
      if (!alive(c)) continue;
      for (const auto& r : relators_) {
        scan(c, r, false);
        if (!alive(c)) break;
      }
    }
  }

  // Called when the table is full or past the lookahead mark. Throws
  // ExceededSignal when no room can be made.
  void recover(bool at_cap) {
    if (strategy_ == Strategy::HLTLookahead) {
      lookahead_pass();
      next_lookahead_ =
          std::max<std::int64_t>(nlive_ + cap_ / 20, cap_ * 3 / 4);
    }
    std::int64_t dead_rows = n_alloc_ - nlive_;
    if (dead_rows > 0) compact();
    if (at_cap && n_alloc_ >= cap_) throw ExceededSignal{};
    check_clock();
  }

  void maybe_compact_ratio() {
    std::int64_t dead_rows = n_alloc_ - nlive_;
    if (dead_rows > 2 * nlive_) compact();
  }

  // ---- strategies ---------------------------------------------------------

  void seed_subgroup() {
    for (std::size_t k = 0; k < subgroup_words_.size(); ++k) {
      for (;;) {
        try {
          scan(1, subgroup_words_[k], true);
          break;
        } catch (TableFull) {
          recover(true);
        }
      }
    }
  }

  void run_hlt() {
    seed_subgroup();
    hlt_row_ = 1;
    while (hlt_row_ <= n_alloc_) {
      if (!alive(hlt_row_)) {
        ++hlt_row_;
        continue;
      }
      maybe_compact_ratio();
      if (strategy_ == Strategy::HLTLookahead && n_alloc_ >= next_lookahead_) {
        recover(false);
        if (!alive(hlt_row_)) continue;
      }
      try {
        Row a = hlt_row_;
        bool died = false;
        for (const auto& r : relators_) {
          scan(a, r, true);
          if (!alive(a)) {
            died = true;
            break;
          }
        }
        if (!died) {
          for (int x = 0; x < ncols_; ++x)
            if (row(a)[x] == 0) define(a, x);
        }
      } catch (TableFull) {
        recover(true);
        continue;  // retry the same row after making room
      }
      ++hlt_row_;
    }
  }

  void build_conjugate_table() {
    conj_.assign(ncols_, {});
    std::vector<std::set<std::vector<std::uint8_t>>> seen(ncols_);
    for (const auto& r : relators_) {
      std::vector<std::uint8_t> rot = r;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (seen[rot[0]].insert(rot).second) conj_[rot[0]].push_back(rot);
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      }
    }
  }

  void drain_deductions() {
    while (!deductions_.empty()) {
      auto [a, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(a)) continue;
      Row b = row(a)[x];
      if (b == 0) continue;
      for (const auto& w : conj_[x]) {
        scan(a, w, false);
        if (!alive(a)) break;
      }
      if (!alive(a)) continue;
      b = row(a)[x];
      if (b == 0) continue;
      for (const auto& w : conj_[inv(x)]) {
        scan(b, w, false);
        if (!alive(b)) break;
      }
    }
  }

  bool next_hole() {
    while (hole_row_ <= n_alloc_) {
      if (!alive(hole_row_)) {
        ++hole_row_;
        hole_col_ = 0;
        continue;
      }
      while (hole_col_ < ncols_) {
        if (row(hole_row_)[hole_col_] == 0) return true;
        ++hole_col_;
      }
      ++hole_row_;
      hole_col_ = 0;
    }
    return false;
  }

  void run_felsch() {
    seed_subgroup();
    drain_deductions();
    hole_row_ = 1;
    hole_col_ = 0;
    for (;;) {
      maybe_compact_ratio();
      if (!next_hole()) break;
      try {
        define(hole_row_, hole_col_);
      } catch (TableFull) {
        recover(true);
        continue;
      }
      drain_deductions();
      if ((stats_.cosets_defined & 0xfff) == 0) check_clock();
    }
  }

  // ---- extraction ---------------------------------------------------------

  CosetTable extract_table() {
    compact();
    CosetTable t;
    t.presentation_name = pres_.name;
    t.n_gens = static_cast<int>(pres_.generators.size());
    t.n_live = static_cast<Row>(nlive_);
    t.subgroup = sub_;
    t.rows.assign(tab_.begin(),
                  tab_.begin() + static_cast<std::size_t>(nlive_ + 1) * ncols_);
    return standardize(t);
  }

  const Presentation& pres_;
  const SubgroupSpec& sub_;
  Strategy strategy_;
  std::int64_t cap_;
  std::optional<double> max_seconds_;
  int ncols_;

  std::vector<std::vector<std::uint8_t>> relators_;
  std::vector<std::vector<std::uint8_t>> subgroup_words_;
  std::vector<std::vector<std::vector<std::uint8_t>>> conj_;

  std::vector<std::int32_t> tab_;
  std::vector<Row> parent_;
  std::int64_t n_alloc_ = 1;
  std::int64_t nlive_ = 1;
  std::deque<Row> queue_;
  std::vector<std::pair<Row, int>> deductions_;

  Row hlt_row_ = 1;
  Row hole_row_ = 1;
  int hole_col_ = 0;
  std::int64_t next_lookahead_ = 0;
  std::int64_t dead_at_last_compact_ = -1;

  EnumStats stats_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

EnumOutcome enumerate(const Presentation& p, const SubgroupSpec& h,
                      Strategy strategy, const EnumLimits& limits) {
  for (const Word& w : h.generator_words)
    for (Letter l : w.letters)
      if (l.gen >= p.generators.size())
        throw InvalidWord("subgroup word uses a generator not in '" + p.name + "'");
  Enumerator e(p, h, strategy,
               [&] {
                 EnumLimits l = limits;
                 l.max_cosets = std::max<std::int64_t>(l.max_cosets, 1);
                 return l;
               }());
  return e.run();
}

CosetTable standardize(const CosetTable& t) {
  if (t.n_live <= 0) throw IncompleteTable();
  const int ncols = t.n_cols();
  std::vector<std::int32_t> newid(t.n_live + 1, 0);
  std::vector<std::int32_t> order;
  order.reserve(t.n_live);
  newid[1] = 1;
  order.push_back(1);
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::int32_t c = order[head];
    for (int x = 0; x < ncols; ++x) {
      std::int32_t d = t.at(c, x);
      if (d == 0) throw IncompleteTable();
      if (newid[d] == 0) {
        newid[d] = static_cast<std::int32_t>(order.size() + 1);
        order.push_back(d);
      }
    }
  }
  if (static_cast<std::int32_t>(order.size()) != t.n_live)
    throw IncompleteTable();  // action not transitive: corrupt table

  CosetTable s = t;
  for (std::int32_t c = 1; c <= t.n_live; ++c) {
    std::int32_t nc = newid[c];
    for (int x = 0; x < ncols; ++x)
      s.rows[static_cast<std::size_t>(nc) * ncols + x] = newid[t.at(c, x)];
  }
  return s;
}

bool verify_table(const CosetTable& t, const Presentation& p,
                  const SubgroupSpec& h) {
  if (t.n_live <= 0) return false;
  const int ncols = t.n_cols();
  if (t.n_gens != static_cast<int>(p.generators.size())) return false;
  if (t.rows.size() != static_cast<std::size_t>(t.n_live + 1) * ncols) return false;

  // Entries in range, columns bijective, inverse columns consistent.
  for (int x = 0; x < ncols; ++x) {
    std::vector<bool> seen(t.n_live + 1, false);
    for (std::int32_t c = 1; c <= t.n_live; ++c) {
      std::int32_t d = t.at(c, x);
      if (d < 1 || d > t.n_live) return false;
      if (seen[d]) return false;
      seen[d] = true;
      if (t.at(d, x ^ 1) != c) return false;
    }
  }
  // Every relator closes at every coset.
  for (const Word& r : p.relators) {
    std::vector<std::uint8_t> cols;
    for (Letter l : r.letters) {
      if (l.gen >= t.n_gens) return false;
      cols.push_back(static_cast<std::uint8_t>(CosetTable::col(l.gen, l.sign)));
    }
    for (std::int32_t c = 1; c <= t.n_live; ++c) {
      std::int32_t f = c;
      for (std::uint8_t x : cols) f = t.at(f, x);
      if (f != c) return false;
    }
  }
  // Subgroup generators fix coset 1.
  for (const Word& w : h.generator_words) {
    std::int32_t f = 1;
    for (Letter l : free_reduce(w).letters) {
      if (l.gen >= t.n_gens) return false;
      f = t.at(f, CosetTable::col(l.gen, l.sign));
    }
    if (f != 1) return false;
  }
  return true;
}

std::string dump_table(const CosetTable& t) {
  std::ostringstream out;
  out << "cosets " << t.n_live << " gens " << t.n_gens << "\n";
  for (std::int32_t c = 1; c <= t.n_live; ++c) {
    for (int x = 0; x < t.n_cols(); ++x) {
      if (x) out << ' ';
      out << t.at(c, x);
    }
    out << "\n";
  }
  return out.str();
}

CosetTable parse_table_dump(const std::string& text) {
  std::istringstream in(text);
  std::string kw1, kw2;
  CosetTable t;
  std::int64_t n = 0;
  if (!(in >> kw1 >> n >> kw2 >> t.n_gens) || kw1 != "cosets" || kw2 != "gens")
    throw Error("bad table dump header");
  t.n_live = static_cast<std::int32_t>(n);
  t.rows.assign(static_cast<std::size_t>(t.n_live + 1) * t.n_cols(), 0);
  for (std::int32_t c = 1; c <= t.n_live; ++c)
    for (int x = 0; x < t.n_cols(); ++x)
      if (!(in >> t.rows[static_cast<std::size_t>(c) * t.n_cols() + x]))
        throw Error("truncated table dump");
  return t;
}

}  // namespace fpv
