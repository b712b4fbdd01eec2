#include "poker/pure_ne.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

namespace poker {

namespace {

constexpr int kMaterializeLimit = 10;  // full vanilla matrix kept only up to here

// Player I's payoff numerator over the common denominator n(n-1), entirely
// in 64-bit integers: per bettor card i, a check contributes the showdown
// margin, a bet collects one ante per folding opponent card and the stake
// times the showdown margin against calling cards.
long long entry_num(int n, int b, std::uint64_t s1, std::uint64_t s2) {
  long long e = 0;
  const int total2 = __builtin_popcountll(s2);
  for (std::uint64_t m = s1; m; m &= m - 1) {
    const int i = __builtin_ctzll(m) + 1;
    const long long in2 = (s2 >> (i - 1)) & 1;
    const long long below = __builtin_popcountll(s2 & ((1ull << (i - 1)) - 1));
    e += -(2ll * i - 1 - n);                       // minus the foregone check showdown
    e += (n - 1) - (total2 - in2);                 // folds won
    e += (b + 1) * (2 * below - total2 + in2);     // called showdowns
  }
  return e;
}

struct StreamResult {
  std::vector<long long> rowmin, colmax;
};

// One pass over the whole vanilla table in row blocks.
template <class CellFn>
void stream_rows(int n, int jobs, CellFn&& per_row) {
  const std::uint64_t rows = 1ull << n;
  if (jobs <= 1) {
    for (std::uint64_t r = 0; r < rows; ++r) per_row(r);
    return;
  }
  std::atomic<std::uint64_t> cursor{0};
  const std::uint64_t block = std::max<std::uint64_t>(64, rows / (8 * jobs));
  auto worker = [&] {
    for (;;) {
      const std::uint64_t start = cursor.fetch_add(block);
      if (start >= rows) return;
      const std::uint64_t stop = std::min(rows, start + block);
      for (std::uint64_t r = start; r < stop; ++r) per_row(r);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::vector<PureNE> vanilla_stream_ne(const GameParams& params, int jobs) {
  const int n = params.n, b = params.b;
  const std::uint64_t size = 1ull << n;
  std::vector<long long> rowmin(size), colmax(size, std::numeric_limits<long long>::min());

  // pass 1: row minima and column maxima
  if (jobs <= 1) {
    for (std::uint64_t r = 0; r < size; ++r) {
      long long mn = std::numeric_limits<long long>::max();
      for (std::uint64_t c = 0; c < size; ++c) {
        const long long e = entry_num(n, b, r, c);
        mn = std::min(mn, e);
        colmax[c] = std::max(colmax[c], e);
      }
      rowmin[r] = mn;
    }
  } else {
    const int nthreads = jobs;
    std::vector<std::vector<long long>> local(nthreads,
        std::vector<long long>(size, std::numeric_limits<long long>::min()));
    std::atomic<int> tid_src{0};
    std::atomic<std::uint64_t> cursor{0};
    const std::uint64_t block = std::max<std::uint64_t>(64, size / (8u * jobs));
    auto worker = [&] {
      const int tid = tid_src.fetch_add(1);
      auto& mycol = local[tid];
      for (;;) {
        const std::uint64_t start = cursor.fetch_add(block);
        if (start >= size) return;
        const std::uint64_t stop = std::min(size, start + block);
        for (std::uint64_t r = start; r < stop; ++r) {
          long long mn = std::numeric_limits<long long>::max();
          for (std::uint64_t c = 0; c < size; ++c) {
            const long long e = entry_num(n, b, r, c);
            mn = std::min(mn, e);
            mycol[c] = std::max(mycol[c], e);
          }
          rowmin[r] = mn;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& mycol : local)
      for (std::uint64_t c = 0; c < size; ++c) colmax[c] = std::max(colmax[c], mycol[c]);
  }

  // pass 2: cells that are both a column max and a row min
  std::vector<PureNE> out;
  std::mutex out_mutex;
  stream_rows(n, jobs, [&](std::uint64_t r) {
    std::vector<PureNE> mine;
    for (std::uint64_t c = 0; c < size; ++c) {
      const long long e = entry_num(n, b, r, c);
      if (e == rowmin[r] && e == colmax[c]) {
        mine.push_back({{r, Role::bettor},
                        {c, Role::caller},
                        Rational(e, static_cast<long long>(n) * (n - 1))});
      }
    }
    if (mine.empty()) return;
    std::lock_guard<std::mutex> lock(out_mutex);
    out.insert(out.end(), mine.begin(), mine.end());
  });
  return out;
}

std::vector<PureNE> sort_report(std::vector<PureNE> nes) {
  std::sort(nes.begin(), nes.end(), [](const PureNE& a, const PureNE& b) {
    if (a.s1.mask != b.s1.mask) return subset_lex_before(a.s1, b.s1);
    return subset_lex_before(a.s2, b.s2);
  });
  return nes;
}

}  // namespace

bool subset_lex_before(const SubsetStrategy& a, const SubsetStrategy& b) {
  const auto ca = a.cards(), cb = b.cards();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

Rational PayTable::entry(int r, int c) const {
  if (materialized()) return entries(r, c);
  return payoff_pure(params, row_strategies[r], col_strategies[c]);
}

PayTable build_paytable(const GameParams& params, TableMode mode, int max_table_bits) {
  params.validate();
  PayTable table;
  table.params = params;
  table.mode = mode;
  const int n = params.n;
  if (mode == TableMode::vanilla) {
    if (n > max_table_bits)
      throw SizeLimitError(
          "vanilla paytable limited to " + std::to_string(max_table_bits) +
          " cards (2^n strategies per side); use restricted mode for larger decks");
    table.row_strategies = enumerate_subsets(n, Role::bettor);
    table.col_strategies = enumerate_subsets(n, Role::caller);
    if (n <= kMaterializeLimit) {
      const int size = 1 << n;
      table.entries = RatMat(size, size);
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
          table.entries(r, c) =
              payoff_pure(params, table.row_strategies[r], table.col_strategies[c]);
    }
    return table;
  }

  // restricted: Player I checks on an interval {A..B}, bets elsewhere;
  // Player II calls from a threshold C upward.
  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (int a = 1; a < n; ++a) {
    for (int bb = a + 1; bb <= n; ++bb) {
      std::uint64_t check_mask = 0;
      for (int i = a; i <= bb; ++i) check_mask |= 1ull << (i - 1);
      table.row_strategies.push_back({full & ~check_mask, Role::bettor});
    }
  }
  for (int c = 1; c <= n; ++c) {
    std::uint64_t mask = 0;
    for (int j = c; j <= n; ++j) mask |= 1ull << (j - 1);
    table.col_strategies.push_back({mask, Role::caller});
  }
  const int rows = static_cast<int>(table.row_strategies.size());
  const int cols = static_cast<int>(table.col_strategies.size());
  table.entries = RatMat(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      table.entries(r, c) = payoff_pure(params, table.row_strategies[r], table.col_strategies[c]);
  return table;
}

std::vector<PureNE> enumerate_pure_ne(const PayTable& table, int jobs) {
  if (!table.materialized() && table.mode == TableMode::vanilla)
    return sort_report(vanilla_stream_ne(table.params, jobs));

  const int rows = static_cast<int>(table.row_strategies.size());
  const int cols = static_cast<int>(table.col_strategies.size());
  std::vector<PureNE> out;
  std::vector<Rational> colmax(cols);
  for (int c = 0; c < cols; ++c) {
    Rational mx = table.entries(0, c);
    for (int r = 1; r < rows; ++r) mx = std::max(mx, table.entries(r, c));
    colmax[c] = mx;
  }
  for (int r = 0; r < rows; ++r) {
    Rational mn = table.entries(r, 0);
    for (int c = 1; c < cols; ++c) mn = std::min(mn, table.entries(r, c));
    for (int c = 0; c < cols; ++c) {
      const Rational& e = table.entries(r, c);
      if (e == mn && e == colmax[c])
        out.push_back({table.row_strategies[r], table.col_strategies[c], e});
    }
  }
  return sort_report(std::move(out));
}

std::vector<std::pair<int, Rational>> restricted_value_scan(int n_max, int b) {
  std::vector<std::pair<int, Rational>> out;
  for (int n = 2; n <= n_max; ++n) {
    const PayTable table = build_paytable({n, b}, TableMode::restricted);
    const auto nes = enumerate_pure_ne(table);
    if (nes.empty()) continue;
    const Rational value = nes.front().value;
    for (const auto& ne : nes)
      if (ne.value != value)
        throw std::logic_error("restricted_value_scan: equilibria of one deck disagree on value");
    out.emplace_back(n, value);
  }
  return out;
}

}  // namespace poker
