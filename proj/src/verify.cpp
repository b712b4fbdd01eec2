#include "poker/verify.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace poker {

namespace {
Rational deal_weight(int n, int others) {
  long long w = 1;
  for (int t = 0; t < others; ++t) w *= (n - 1 - t);
  return Rational(1, w);
}
}  // namespace

Rational two_check_body(const GameParams& params, int i) {
  // showdown at stake 1 against a uniform opposing card
  const int n = params.n;
  const long long wins = i - 1, losses = n - i;
  return Rational(wins - losses, n - 1);
}

Rational two_bet_body(const GameParams& params, int i, const CardStrategy& q) {
  const int n = params.n;
  const Rational one(1), stake(params.b + 1);
  Rational sum(0);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    sum += q[j - 1] * call(i, j, stake) + (one - q[j - 1]);
  }
  return sum * deal_weight(n, 1);
}

Rational two_fold_body(const GameParams& params, int j, const CardStrategy& p) {
  const int n = params.n;
  const Rational one(1);
  Rational sum(0);
  for (int i = 1; i <= n; ++i) {
    if (i == j) continue;
    sum += -p[i - 1] + (one - p[i - 1]) * call(j, i, one);
  }
  return sum * deal_weight(n, 1);
}

Rational two_call_body(const GameParams& params, int j, const CardStrategy& p) {
  const int n = params.n;
  const Rational one(1), stake(params.b + 1);
  Rational sum(0);
  for (int i = 1; i <= n; ++i) {
    if (i == j) continue;
    sum += p[i - 1] * call(j, i, stake) + (one - p[i - 1]) * call(j, i, one);
  }
  return sum * deal_weight(n, 1);
}

Rational three_check_body(const GameParams& params, int i) {
  const int n = params.n;
  const Rational one(1);
  Rational sum(0);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    for (int k = 1; k <= n; ++k) {
      if (k == i || k == j) continue;
      sum += call3(i, j, k, one);
    }
  }
  return sum * deal_weight(n, 2);
}

Rational three_bet_body(const GameParams& params, int i, const CardStrategy& q,
                        const CardStrategy& r) {
  const int n = params.n;
  const Rational one(1), two(2), stake(params.b + 1);
  Rational sum(0);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    const Rational& qj = q[j - 1];
    for (int k = 1; k <= n; ++k) {
      if (k == i || k == j) continue;
      const Rational& rk = r[k - 1];
      sum += call3(i, j, k, stake) * (qj * rk);
      sum += call2(i, j, stake) * (qj * (one - rk));
      sum += call2(i, k, stake) * ((one - qj) * rk);
      sum += two * ((one - qj) * (one - rk));
    }
  }
  return sum * deal_weight(n, 2);
}

Rational three_fold_body(const GameParams& params, int own, const CardStrategy& p) {
  const int n = params.n;
  const Rational one(1);
  Rational sum(0);
  for (int i = 1; i <= n; ++i) {
    if (i == own) continue;
    const Rational& pi = p[i - 1];
    for (int k = 1; k <= n; ++k) {
      if (k == i || k == own) continue;
      sum += -pi + call3(own, i, k, one) * (one - pi);
    }
  }
  return sum * deal_weight(n, 2);
}

Rational three_call_body(const GameParams& params, int own, const CardStrategy& p,
                         const CardStrategy& other) {
  const int n = params.n;
  const Rational one(1), stake(params.b + 1);
  Rational sum(0);
  for (int i = 1; i <= n; ++i) {
    if (i == own) continue;
    const Rational& pi = p[i - 1];
    for (int k = 1; k <= n; ++k) {
      if (k == i || k == own) continue;
      const Rational& ok = other[k - 1];
      sum += call3(own, i, k, stake) * (pi * ok);
      sum += call2(own, i, stake) * (pi * (one - ok));
      sum += call3(own, i, k, one) * (one - pi);
    }
  }
  return sum * deal_weight(n, 2);
}

DeviationReport epsilon_ne_two(const GameParams& params, const CardStrategy& p,
                               const CardStrategy& q) {
  params.validate();
  const int n = params.n;
  if (p.size() != n || q.size() != n)
    throw std::invalid_argument("epsilon_ne_two: strategies must have length n");
  const Rational one(1), per_card(1, n);

  Rational current1(0), best1(0), current2(0), best2(0);
  RatVec wit1 = RatVec::Constant(n, Rational(0)), wit2 = RatVec::Constant(n, Rational(0));
  for (int c = 1; c <= n; ++c) {
    const Rational bet = two_bet_body(params, c, q);
    const Rational chk = two_check_body(params, c);
    current1 += p[c - 1] * bet + (one - p[c - 1]) * chk;
    if (bet > chk) wit1[c - 1] = one;
    best1 += bet > chk ? bet : chk;

    const Rational cal = two_call_body(params, c, p);
    const Rational fld = two_fold_body(params, c, p);
    current2 += q[c - 1] * cal + (one - q[c - 1]) * fld;
    if (cal > fld) wit2[c - 1] = one;
    best2 += cal > fld ? cal : fld;
  }
  DeviationReport rep;
  rep.gaps = {(best1 - current1) * per_card, (best2 - current2) * per_card};
  rep.card_witnesses.resize(2);
  if (!rep.gaps[0].is_zero()) rep.card_witnesses[0] = wit1;
  if (!rep.gaps[1].is_zero()) rep.card_witnesses[1] = wit2;
  return rep;
}

DeviationReport epsilon_ne_newman(const GameParams& params, const NewmanStrategy& pm,
                                  const NewmanStrategy& qm,
                                  const std::vector<int>& allowed_bets) {
  pm.validate(params);
  qm.validate(params);
  const int n = params.n;
  const Rational one(1), per_card(1, n), w(1, n - 1);
  std::vector<int> bets = allowed_bets;
  if (bets.empty())
    for (int s = 0; s <= params.b; ++s) bets.push_back(s);

  // Player I: best single bet size per card.
  Rational current1(0), best1(0);
  RatMat wit1 = RatMat::Constant(n, params.b + 1, Rational(0));
  for (int i = 1; i <= n; ++i) {
    bool have = false;
    Rational best_u;
    int best_s = 0;
    for (int s : bets) {
      Rational u(0);
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        const Rational& qs = qm.probs(j - 1, s);
        u += qs * call(i, j, Rational(s + 1)) + (one - qs);
      }
      u *= w;
      current1 += pm.probs(i - 1, s) * u;
      if (!have || u > best_u) {
        have = true;
        best_u = u;
        best_s = s;
      }
    }
    best1 += best_u;
    wit1(i - 1, best_s) = one;
  }

  // Player II: call or fold per (card, proposed bet); a check (s = 0) is
  // always seen through to showdown.
  Rational current2(0), best2(0);
  RatMat wit2 = RatMat::Constant(n, params.b + 1, Rational(0));
  wit2.col(0) = RatVec::Constant(n, Rational(1));
  for (int j = 1; j <= n; ++j) {
    for (int s : bets) {
      Rational call_val(0), fold_val(0);
      for (int i = 1; i <= n; ++i) {
        if (i == j) continue;
        const Rational& ps = pm.probs(i - 1, s);
        if (ps.is_zero()) continue;
        call_val += ps * call(j, i, Rational(s + 1));
        fold_val -= ps;
      }
      call_val *= w;
      fold_val *= w;
      if (s == 0) {
        current2 += call_val;
        best2 += call_val;
        continue;
      }
      const Rational& qs = qm.probs(j - 1, s);
      current2 += qs * call_val + (one - qs) * fold_val;
      best2 += call_val > fold_val ? call_val : fold_val;
      if (call_val > fold_val) wit2(j - 1, s) = one;
    }
  }

  DeviationReport rep;
  rep.gaps = {(best1 - current1) * per_card, (best2 - current2) * per_card};
  rep.bet_witnesses.resize(2);
  if (!rep.gaps[0].is_zero()) rep.bet_witnesses[0] = wit1;
  if (!rep.gaps[1].is_zero()) rep.bet_witnesses[1] = wit2;
  return rep;
}

DeviationReport epsilon_ne_three(const GameParams& params, const ThreeStrategyProfile& prof) {
  prof.validate(params);
  const int n = params.n;
  const Rational one(1), per_card(1, n);

  Rational current[3] = {Rational(0), Rational(0), Rational(0)};
  Rational best[3] = {Rational(0), Rational(0), Rational(0)};
  RatVec wit[3] = {RatVec::Constant(n, Rational(0)), RatVec::Constant(n, Rational(0)),
                   RatVec::Constant(n, Rational(0))};
  for (int c = 1; c <= n; ++c) {
    const Rational bet = three_bet_body(params, c, prof.q, prof.r);
    const Rational chk = three_check_body(params, c);
    current[0] += prof.p[c - 1] * bet + (one - prof.p[c - 1]) * chk;
    best[0] += bet > chk ? bet : chk;
    if (bet > chk) wit[0][c - 1] = one;

    const Rational cal2 = three_call_body(params, c, prof.p, prof.r);
    const Rational fld2 = three_fold_body(params, c, prof.p);
    current[1] += prof.q[c - 1] * cal2 + (one - prof.q[c - 1]) * fld2;
    best[1] += cal2 > fld2 ? cal2 : fld2;
    if (cal2 > fld2) wit[1][c - 1] = one;

    const Rational cal3 = three_call_body(params, c, prof.p, prof.q);
    const Rational fld3 = three_fold_body(params, c, prof.p);
    current[2] += prof.r[c - 1] * cal3 + (one - prof.r[c - 1]) * fld3;
    best[2] += cal3 > fld3 ? cal3 : fld3;
    if (cal3 > fld3) wit[2][c - 1] = one;
  }
  DeviationReport rep;
  rep.card_witnesses.resize(3);
  for (int l = 0; l < 3; ++l) {
    rep.gaps.push_back((best[l] - current[l]) * per_card);
    if (!rep.gaps[l].is_zero()) rep.card_witnesses[l] = wit[l];
  }
  return rep;
}

bool SplitMix64::bernoulli(const Rational& p) {
  if (p.is_zero()) return false;
  const mpz_class num = p.numerator(), den = p.denominator();
  if (num == den) return true;
  if (den.fits_ulong_p()) {
    return below(den.get_ui()) < num.get_ui();
  }
  // wide denominator: assemble a uniform below den from 64-bit words
  const size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
  const size_t words = (bits + 63) / 64;
  for (;;) {
    mpz_class r(0);
    for (size_t w = 0; w < words; ++w) {
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
      r += mpz_class(static_cast<unsigned long>(next()));
    }
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < den) return r < num;
  }
}

namespace {

struct Shard {
  long long trials = 0;
  std::uint64_t seed = 0;
};

std::vector<Shard> make_shards(long long trials, std::uint64_t seed) {
  const int count = trials >= 100000 ? 64 : 1;
  std::vector<Shard> shards(count);
  const long long base = trials / count, rem = trials % count;
  for (int k = 0; k < count; ++k) {
    shards[k].trials = base + (k < rem ? 1 : 0);
    shards[k].seed = seed + static_cast<std::uint64_t>(k);  // distinct SplitMix64 streams
  }
  return shards;
}

struct IntAccum {
  long long sum = 0;
  long long sumsq = 0;
};

// Runs shards on up to `jobs` workers; the shard layout is fixed by the
// trial count alone, so results do not depend on the worker count.
template <class Fn>
void run_shards(const std::vector<Shard>& shards, int jobs, Fn&& per_shard) {
  if (jobs <= 1 || shards.size() == 1) {
    for (size_t k = 0; k < shards.size(); ++k) per_shard(k);
    return;
  }
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = cursor.fetch_add(1);
      if (k >= shards.size()) return;
      per_shard(k);
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min<int>(jobs, static_cast<int>(shards.size()));
  pool.reserve(nw);
  for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

McResult finish_int(const std::vector<IntAccum>& acc, long long trials, bool mirror) {
  long long sum = 0, sumsq = 0;
  for (const auto& a : acc) {
    sum += a.sum;
    sumsq += a.sumsq;
  }
  const double mean = static_cast<double>(sum) / static_cast<double>(trials);
  const double var =
      std::max(0.0, static_cast<double>(sumsq) / static_cast<double>(trials) - mean * mean);
  const double se = std::sqrt(var / static_cast<double>(trials));
  McResult res;
  res.trials = trials;
  res.estimate = {mean};
  res.std_error = {se};
  if (mirror) {
    res.estimate.push_back(-mean);
    res.std_error.push_back(se);
  }
  return res;
}

// two distinct uniform cards in 1..n
inline void deal_two(SplitMix64& rng, int n, int& i, int& j) {
  i = static_cast<int>(rng.below(n)) + 1;
  j = static_cast<int>(rng.below(n - 1)) + 1;
  if (j >= i) ++j;
}

inline void deal_three(SplitMix64& rng, int n, int& i, int& j, int& k) {
  deal_two(rng, n, i, j);
  k = static_cast<int>(rng.below(n - 2)) + 1;
  const int lo = std::min(i, j), hi = std::max(i, j);
  if (k >= lo) ++k;
  if (k >= hi) ++k;
}

}  // namespace

McResult mc_two(const GameParams& params, const CardStrategy& p, const CardStrategy& q,
                long long trials, std::uint64_t seed, int jobs) {
  params.validate();
  if (trials < 1) throw std::invalid_argument("mc_two: trials must be >= 1");
  const auto shards = make_shards(trials, seed);
  std::vector<IntAccum> acc(shards.size());
  run_shards(shards, jobs, [&](size_t sh) {
    SplitMix64 rng(shards[sh].seed);
    IntAccum a;
    for (long long t = 0; t < shards[sh].trials; ++t) {
      int i, j;
      deal_two(rng, params.n, i, j);
      long long pay;
      if (!rng.bernoulli(p[i - 1])) {
        pay = i > j ? 1 : -1;
      } else if (!rng.bernoulli(q[j - 1])) {
        pay = 1;
      } else {
        pay = i > j ? params.b + 1 : -(params.b + 1);
      }
      a.sum += pay;
      a.sumsq += pay * pay;
    }
    acc[sh] = a;
  });
  return finish_int(acc, trials, /*mirror=*/true);
}

McResult mc_newman(const GameParams& params, const NewmanStrategy& pm, const NewmanStrategy& qm,
                   long long trials, std::uint64_t seed, int jobs) {
  pm.validate(params);
  qm.validate(params);
  if (trials < 1) throw std::invalid_argument("mc_newman: trials must be >= 1");
  const Rational one(1);
  const auto shards = make_shards(trials, seed);
  std::vector<IntAccum> acc(shards.size());
  run_shards(shards, jobs, [&](size_t sh) {
    SplitMix64 rng(shards[sh].seed);
    IntAccum a;
    for (long long t = 0; t < shards[sh].trials; ++t) {
      int i, j;
      deal_two(rng, params.n, i, j);
      // sample the bet size by sequential conditional Bernoulli draws
      int s = params.b;
      Rational remaining(1);
      for (int cand = 0; cand < params.b; ++cand) {
        const Rational& ps = pm.probs(i - 1, cand);
        if (!ps.is_zero() && rng.bernoulli(ps / remaining)) {
          s = cand;
          break;
        }
        remaining -= ps;
        if (remaining.is_zero()) {
          s = cand + 1;  // all mass already spent; later columns are zero too
          while (s < params.b && pm.probs(i - 1, s).is_zero()) ++s;
          break;
        }
      }
      long long pay;
      if (s == 0) {
        pay = i > j ? 1 : -1;
      } else if (rng.bernoulli(qm.probs(j - 1, s))) {
        pay = i > j ? s + 1 : -(s + 1);
      } else {
        pay = 1;
      }
      a.sum += pay;
      a.sumsq += pay * pay;
    }
    acc[sh] = a;
  });
  return finish_int(acc, trials, /*mirror=*/true);
}

McResult mc_three(const GameParams& params, const ThreeStrategyProfile& prof, long long trials,
                  std::uint64_t seed, int jobs) {
  prof.validate(params);
  if (trials < 1) throw std::invalid_argument("mc_three: trials must be >= 1");
  struct Acc3 {
    IntAccum p[3];
  };
  const auto shards = make_shards(trials, seed);
  std::vector<Acc3> acc(shards.size());
  run_shards(shards, jobs, [&](size_t sh) {
    SplitMix64 rng(shards[sh].seed);
    Acc3 a;
    const long long bs = params.b + 1;
    for (long long t = 0; t < shards[sh].trials; ++t) {
      int i, j, k;
      deal_three(rng, params.n, i, j, k);
      long long pay[3];
      if (!rng.bernoulli(prof.p[i - 1])) {
        pay[0] = (i > j && i > k) ? 2 : -1;
        pay[1] = (j > i && j > k) ? 2 : -1;
        pay[2] = (k > i && k > j) ? 2 : -1;
      } else {
        const bool cj = rng.bernoulli(prof.q[j - 1]);
        const bool ck = rng.bernoulli(prof.r[k - 1]);
        if (!cj && !ck) {
          pay[0] = 2; pay[1] = -1; pay[2] = -1;
        } else if (cj && !ck) {
          pay[0] = i > j ? bs + 1 : -bs;
          pay[1] = j > i ? bs + 1 : -bs;
          pay[2] = -1;
        } else if (!cj && ck) {
          pay[0] = i > k ? bs + 1 : -bs;
          pay[1] = -1;
          pay[2] = k > i ? bs + 1 : -bs;
        } else {
          pay[0] = (i > j && i > k) ? 2 * bs : -bs;
          pay[1] = (j > i && j > k) ? 2 * bs : -bs;
          pay[2] = (k > i && k > j) ? 2 * bs : -bs;
        }
      }
      for (int l = 0; l < 3; ++l) {
        a.p[l].sum += pay[l];
        a.p[l].sumsq += pay[l] * pay[l];
      }
    }
    acc[sh] = a;
  });
  McResult res;
  res.trials = trials;
  for (int l = 0; l < 3; ++l) {
    std::vector<IntAccum> one_player;
    for (const auto& a : acc) one_player.push_back(a.p[l]);
    const McResult r = finish_int(one_player, trials, false);
    res.estimate.push_back(r.estimate[0]);
    res.std_error.push_back(r.std_error[0]);
  }
  return res;
}

McResult mc_three_continuous(double A, double B, double C, double b, long long trials,
                             std::uint64_t seed, int jobs) {
  if (trials < 1) throw std::invalid_argument("mc_three_continuous: trials must be >= 1");
  struct DAcc {
    double sum[3] = {0, 0, 0};
    double sumsq[3] = {0, 0, 0};
  };
  const auto shards = make_shards(trials, seed);
  std::vector<DAcc> acc(shards.size());
  run_shards(shards, jobs, [&](size_t sh) {
    SplitMix64 rng(shards[sh].seed);
    DAcc a;
    for (long long t = 0; t < shards[sh].trials; ++t) {
      const double x = rng.uniform01(), y = rng.uniform01(), z = rng.uniform01();
      double pay[3];
      if (x >= A && x <= B) {  // check: three-way showdown at stake 1
        pay[0] = (x > y && x > z) ? 2 : -1;
        pay[1] = (y > x && y > z) ? 2 : -1;
        pay[2] = (z > x && z > y) ? 2 : -1;
      } else {
        const bool cy = y >= C, cz = z >= C;
        if (!cy && !cz) {
          pay[0] = 2; pay[1] = -1; pay[2] = -1;
        } else if (cy && !cz) {
          pay[0] = x > y ? b + 2 : -(b + 1);
          pay[1] = y > x ? b + 2 : -(b + 1);
          pay[2] = -1;
        } else if (!cy && cz) {
          pay[0] = x > z ? b + 2 : -(b + 1);
          pay[1] = -1;
          pay[2] = z > x ? b + 2 : -(b + 1);
        } else {
          pay[0] = (x > y && x > z) ? 2 * (b + 1) : -(b + 1);
          pay[1] = (y > x && y > z) ? 2 * (b + 1) : -(b + 1);
          pay[2] = (z > x && z > y) ? 2 * (b + 1) : -(b + 1);
        }
      }
      for (int l = 0; l < 3; ++l) {
        a.sum[l] += pay[l];
        a.sumsq[l] += pay[l] * pay[l];
      }
    }
    acc[sh] = a;
  });
  McResult res;
  res.trials = trials;
  for (int l = 0; l < 3; ++l) {
    double sum = 0, sumsq = 0;
    for (const auto& a : acc) {
      sum += a.sum[l];
      sumsq += a.sumsq[l];
    }
    const double mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sumsq / static_cast<double>(trials) - mean * mean);
    res.estimate.push_back(mean);
    res.std_error.push_back(std::sqrt(var / static_cast<double>(trials)));
  }
  return res;
}

}  // namespace poker
