#include "poker/three_player.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace poker {

PayoffTensors build_tensors(const GameParams& params, int max_cards) {
  params.validate();
  if (params.n > max_cards)
    throw SizeLimitError("build_tensors is limited to " + std::to_string(max_cards) +
                         " cards (3*8^n exact entries)");
  const int n = params.n;
  PayoffTensors t;
  t.params = params;
  t.bettor_strategies = enumerate_subsets(n, Role::bettor);
  t.caller2_strategies = enumerate_subsets(n, Role::caller);
  t.caller3_strategies = enumerate_subsets(n, Role::caller);
  const std::size_t S = t.bettor_strategies.size();
  t.m1.resize(S * S * S);
  t.m2.resize(S * S * S);
  t.m3.resize(S * S * S);
  const long long deals = static_cast<long long>(n) * (n - 1) * (n - 2);
  const long long bs = params.b + 1;
  for (std::size_t si = 0; si < S; ++si) {
    const SubsetStrategy& s1 = t.bettor_strategies[si];
    for (std::size_t sj = 0; sj < S; ++sj) {
      const SubsetStrategy& s2 = t.caller2_strategies[sj];
      for (std::size_t sk = 0; sk < S; ++sk) {
        const SubsetStrategy& s3 = t.caller3_strategies[sk];
        long long v[3] = {0, 0, 0};
        for (int i = 1; i <= n; ++i) {
          for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            for (int k = 1; k <= n; ++k) {
              if (k == i || k == j) continue;
              if (!s1.contains(i)) {
                v[0] += (i > j && i > k) ? 2 : -1;
                v[1] += (j > i && j > k) ? 2 : -1;
                v[2] += (k > i && k > j) ? 2 : -1;
              } else {
                const bool cj = s2.contains(j), ck = s3.contains(k);
                if (!cj && !ck) {
                  v[0] += 2;
                  v[1] -= 1;
                  v[2] -= 1;
                } else if (cj && !ck) {
                  v[0] += i > j ? bs + 1 : -bs;
                  v[1] += j > i ? bs + 1 : -bs;
                  v[2] -= 1;
                } else if (!cj && ck) {
                  v[0] += i > k ? bs + 1 : -bs;
                  v[1] -= 1;
                  v[2] += k > i ? bs + 1 : -bs;
                } else {
                  v[0] += (i > j && i > k) ? 2 * bs : -bs;
                  v[1] += (j > i && j > k) ? 2 * bs : -bs;
                  v[2] += (k > i && k > j) ? 2 * bs : -bs;
                }
              }
            }
          }
        }
        const std::size_t idx = t.index(si, sj, sk);
        t.m1[idx] = Rational(v[0], deals);
        t.m2[idx] = Rational(v[1], deals);
        t.m3[idx] = Rational(v[2], deals);
      }
    }
  }
  return t;
}

namespace {

std::vector<Rational> subset_weights(const std::vector<SubsetStrategy>& subsets,
                                     const CardStrategy& probs) {
  const int n = static_cast<int>(probs.size());
  const Rational one(1);
  std::vector<Rational> w(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    Rational acc(1);
    for (int c = 1; c <= n; ++c)
      acc *= subsets[s].contains(c) ? probs[c - 1] : one - probs[c - 1];
    w[s] = acc;
  }
  return w;
}

}  // namespace

std::array<Rational, 3> tensor_mixture_value(const PayoffTensors& tensors,
                                             const ThreeStrategyProfile& prof) {
  prof.validate(tensors.params);
  const auto w1 = subset_weights(tensors.bettor_strategies, prof.p);
  const auto w2 = subset_weights(tensors.caller2_strategies, prof.q);
  const auto w3 = subset_weights(tensors.caller3_strategies, prof.r);
  std::array<Rational, 3> out{Rational(0), Rational(0), Rational(0)};
  for (std::size_t i = 0; i < w1.size(); ++i) {
    if (w1[i].is_zero()) continue;
    for (std::size_t j = 0; j < w2.size(); ++j) {
      if (w2[j].is_zero()) continue;
      const Rational wij = w1[i] * w2[j];
      for (std::size_t k = 0; k < w3.size(); ++k) {
        if (w3[k].is_zero()) continue;
        const Rational w = wij * w3[k];
        const std::size_t idx = tensors.index(i, j, k);
        out[0] += w * tensors.m1[idx];
        out[1] += w * tensors.m2[idx];
        out[2] += w * tensors.m3[idx];
      }
    }
  }
  return out;
}

ThreeStrategyProfile structured_profile(const GameParams& params, const ThreeStructure& s) {
  const int n = params.n;
  CardStrategy p = RatVec::Constant(n, Rational(0));
  CardStrategy q = RatVec::Constant(n, Rational(0));
  for (int x = 1; x < s.bluff_card; ++x) p[x - 1] = Rational(1);
  p[s.bluff_card - 1] = s.bluff_prob;
  for (int x = s.value_start; x <= n; ++x) p[x - 1] = Rational(1);
  q[s.call_card - 1] = s.call_prob;
  for (int x = s.call_card + 1; x <= n; ++x) q[x - 1] = Rational(1);
  return {p, q, q};
}

namespace {

// Everything below works on integers scaled by (n-1)(n-2): the conditional
// payoff of a card is affine in the one mixing probability that can appear
// in it (gamma for Player I's bet bodies, alpha for the callers' bodies at
// the mixing card), with 64-bit coefficient sums.
struct Affine {
  long long c0 = 0, c1 = 0;  // c0 + c1 * gamma
};

// symbol classes for a caller probability under the cut pattern
enum : int { kZero = 0, kOne = 1, kGamma = 2 };

int cut_class(int card, int cut) { return card < cut ? kZero : card == cut ? kGamma : kOne; }

// Player I's bet body at card x against both callers cutting at c.
Affine bet_coeffs(const GameParams& params, int x, int c) {
  const int n = params.n;
  const long long bs = params.b + 1;
  Affine a;
  for (int j = 1; j <= n; ++j) {
    if (j == x) continue;
    const int qt = cut_class(j, c);
    for (int k = 1; k <= n; ++k) {
      if (k == x || k == j) continue;
      const int rt = cut_class(k, c);
      const long long t1 = (x > j && x > k) ? 2 * bs : -bs;
      const long long t2 = x > j ? bs + 1 : -bs;
      const long long t3 = x > k ? bs + 1 : -bs;
      // q_j * r_k * call3  (j != k, so gamma*gamma cannot occur)
      if (qt == kOne && rt == kOne) a.c0 += t1;
      else if ((qt == kGamma && rt == kOne) || (qt == kOne && rt == kGamma)) a.c1 += t1;
      // q_j * (1 - r_k) * call2(x, j)
      if (qt == kOne) {
        if (rt == kZero) a.c0 += t2;
        else if (rt == kGamma) { a.c0 += t2; a.c1 -= t2; }
      } else if (qt == kGamma && rt == kZero) {
        a.c1 += t2;
      }
      // (1 - q_j) * r_k * call2(x, k)
      if (rt == kOne) {
        if (qt == kZero) a.c0 += t3;
        else if (qt == kGamma) { a.c0 += t3; a.c1 -= t3; }
      } else if (rt == kGamma && qt == kZero) {
        a.c1 += t3;
      }
      // both fold
      if (qt == kZero && rt == kZero) a.c0 += 2;
      else if (qt == kZero && rt == kGamma) { a.c0 += 2; a.c1 -= 2; }
      else if (qt == kGamma && rt == kZero) { a.c0 += 2; a.c1 -= 2; }
    }
  }
  return a;
}

// Caller's call-minus-fold margin at the cut card c is sum_i p_i * W[i]
// with W independent of every mixing probability.
long long call_margin_weight(const GameParams& params, int c, int i) {
  const int n = params.n;
  const long long bs = params.b + 1;
  long long w = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == i || k == c) continue;
    const bool rk = k > c;  // the other caller under the same cut (k == c excluded)
    w += rk ? ((c > i && c > k) ? 2 * bs : -bs) : (c > i ? bs + 1 : -bs);
    w += 1;  // folding forfeits the ante whenever Player I bet
  }
  return w;
}

bool fits_ll(const Rational& r) {
  return r.numerator().fits_slong_p() && r.denominator().fits_slong_p();
}

// Exact caller-side conditions (call vs fold at every card), evaluated in
// integers scaled by the product of the two mixing denominators. Together
// with the Player-I screen this is equivalent to a zero deviation gap.
bool callers_ok(const GameParams& params, const ThreeStructure& s) {
  const int n = params.n;
  const long long bs = params.b + 1;
  const long long pa = s.bluff_prob.numerator().get_si();
  const long long qa = s.bluff_prob.denominator().get_si();
  const long long pg = s.call_prob.numerator().get_si();
  const long long qg = s.call_prob.denominator().get_si();
  const __int128 s11 = static_cast<__int128>(qa) * qg;  // constant term weight
  const __int128 sa1 = static_cast<__int128>(pa) * qg;  // alpha term weight
  const __int128 s1g = static_cast<__int128>(qa) * pg;  // gamma term weight
  const __int128 sag = static_cast<__int128>(pa) * pg;  // alpha*gamma weight
  const int a = s.bluff_card, c = s.call_card, bcut = s.value_start;
  for (int y = 1; y <= n; ++y) {
    __int128 callv = 0, foldv = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == y) continue;
      const int pt = (i < a || i >= bcut) ? 1 : (i == a ? 2 : 0);
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == y) continue;
        const int rt = cut_class(k, c);
        const long long c3b = (y > i && y > k) ? 2 * bs : -bs;
        const long long c2 = y > i ? bs + 1 : -bs;
        const long long c31 = (y > i && y > k) ? 2 : -1;
        switch (pt) {
          case 0:  // the bettor checks this card
            foldv += c31 * s11;
            callv += c31 * s11;
            break;
          case 1:  // always bets it
            foldv += -s11;
            callv += rt == kZero ? c2 * s11
                   : rt == kOne  ? c3b * s11
                                 : c2 * s11 + (c3b - c2) * s1g;
            break;
          default:  // bets with probability alpha
            foldv += -sa1 + c31 * (s11 - sa1);
            callv += c31 * (s11 - sa1);
            callv += rt == kZero ? c2 * sa1
                   : rt == kOne  ? c3b * sa1
                                 : c2 * sa1 + (c3b - c2) * sag;
            break;
        }
      }
    }
    if (y < c) {
      if (foldv < callv) return false;
    } else if (y > c) {
      if (callv < foldv) return false;
    } else {
      if (s.call_prob > Rational(0) && callv < foldv) return false;
      if (s.call_prob < Rational(1) && foldv < callv) return false;
    }
  }
  return true;
}

struct Candidate {
  ThreeStructure s;
  bool operator<(const Candidate& o) const {
    if (s.bluff_card != o.s.bluff_card) return s.bluff_card < o.s.bluff_card;
    if (s.value_start != o.s.value_start) return s.value_start < o.s.value_start;
    return s.call_card < o.s.call_card;
  }
};

}  // namespace

ThreeNESolution three_fast_ne(const GameParams& params, int jobs) {
  params.validate();
  if (params.n < 4)
    throw std::invalid_argument("three_fast_ne: needs at least 4 cards");
  const int n = params.n;
  const long long D = static_cast<long long>(n - 1) * (n - 2);

  // check body, closed form: ordered pairs of lower cards win double
  std::vector<long long> chk(n + 1);
  for (int x = 1; x <= n; ++x)
    chk[x] = 3ll * (x - 1) * (x - 2) - D;

  // bet-body coefficients for every (card, caller cut)
  std::vector<Affine> bc((n + 1) * (n + 1));
  auto bc_at = [&](int x, int c) -> Affine& { return bc[x * (n + 1) + c]; };
  {
    std::atomic<int> cursor{1};
    auto worker = [&] {
      for (;;) {
        const int c = cursor.fetch_add(1);
        if (c > n) return;
        for (int x = 1; x <= n; ++x) bc_at(x, c) = bet_coeffs(params, x, c);
      }
    };
    std::vector<std::thread> pool;
    const int nw = std::max(1, std::min(jobs, n));
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // call-margin weights and their prefix sums per caller cut
  std::vector<long long> W((n + 1) * (n + 1)), PW((n + 1) * (n + 2));
  for (int c = 1; c <= n; ++c) {
    PW[c * (n + 2)] = 0;
    for (int i = 1; i <= n; ++i) {
      const long long w = i == c ? 0 : call_margin_weight(params, c, i);
      W[c * (n + 1) + i] = w;
      PW[c * (n + 2) + i] = PW[c * (n + 2) + i - 1] + w;
    }
  }

  // Enumerate structures; the mixing probabilities either solve their
  // indifference equation exactly (required whenever they are interior:
  // a mixed card must be indifferent) or sit on a boundary, where only the
  // certificate decides. Boundary values are tried unconditionally.
  std::vector<Candidate> screened;
  std::vector<Candidate> nearly;  // Player-I-consistent but failed caller screen
  for (int a = 1; a <= n - 2; ++a) {
    for (int c = a + 1; c <= n - 1; ++c) {
      const Affine& ea = bc_at(a, c);
      std::vector<Rational> gammas{Rational(0), Rational(1)};
      if (ea.c1 != 0) {
        const Rational g(chk[a] - ea.c0, ea.c1);
        if (g > Rational(0) && g < Rational(1)) gammas.push_back(g);
      }
      for (int bcut = c + 1; bcut <= n; ++bcut) {
        const long long wa = W[c * (n + 1) + a];
        const long long fixed_sum =
            PW[c * (n + 2) + a - 1] + (PW[c * (n + 2) + n] - PW[c * (n + 2) + bcut - 1]);
        std::vector<Rational> alphas{Rational(0), Rational(1)};
        if (wa != 0) {
          const Rational al(-fixed_sum, wa);
          if (al > Rational(0) && al < Rational(1)) alphas.push_back(al);
        }
        for (const Rational& alpha : alphas) {
          for (const Rational& gamma : gammas) {
            if (!fits_ll(gamma) || !fits_ll(alpha)) continue;  // cannot occur at these sizes
            const long long pg = gamma.numerator().get_si();
            const long long qg = gamma.denominator().get_si();
            bool ok = true;
            for (int x = 1; x <= n && ok; ++x) {
              const Affine& e = bc_at(x, c);
              const __int128 bet = static_cast<__int128>(e.c0) * qg +
                                   static_cast<__int128>(e.c1) * pg;
              const __int128 check = static_cast<__int128>(chk[x]) * qg;
              if (x == a) {
                if (alpha > Rational(0) && bet < check) ok = false;
                if (alpha < Rational(1) && check < bet) ok = false;
              } else if (x < a || x >= bcut) {
                if (bet < check) ok = false;
              } else {
                if (check < bet) ok = false;
              }
            }
            if (ok && callers_ok(params, {a, alpha, bcut, c, gamma}))
              screened.push_back({{a, alpha, bcut, c, gamma}});
          }
        }
      }
    }
  }
  std::sort(screened.begin(), screened.end());

  // The two screens are equivalent to a zero deviation gap, so the first
  // survivor is the answer; the independent rational certificate is still
  // computed and must concur before anything is returned.
  for (const Candidate& cand : screened) {
    const auto prof = structured_profile(params, cand.s);
    DeviationReport rep = epsilon_ne_three(params, prof);
    if (!rep.certified())
      throw std::logic_error("three_fast_ne: screen and certificate disagree");
    ThreeNESolution sol;
    sol.params = params;
    sol.structure = cand.s;
    sol.profile = prof;
    sol.values = payoff_three(params, prof);
    sol.certificate = std::move(rep);
    return sol;
  }

  // nothing survived: gather gap diagnostics from the nearest misses among
  // the Player-I screen survivors
  ThreeStructure best{};
  std::vector<Rational> best_gaps;
  Rational best_total(-1);
  for (const Candidate& cand : nearly) {
    const auto rep = epsilon_ne_three(params, structured_profile(params, cand.s));
    Rational total(0);
    for (const auto& g : rep.gaps) total += g;
    if (best_total.sign() < 0 || total < best_total) {
      best_total = total;
      best = cand.s;
      best_gaps = rep.gaps;
    }
  }

  // damped best-response fallback in floats, snapped back to rationals
  {
    std::vector<double> p(n, 0.5), q(n, 0.5);
    const double bs = params.b + 1;
    auto bodies = [&](std::vector<double>& brp, std::vector<double>& brq) {
      for (int x = 1; x <= n; ++x) {
        double bet = 0, fold = 0, callv = 0;
        for (int j = 1; j <= n; ++j) {
          if (j == x) continue;
          for (int k = 1; k <= n; ++k) {
            if (k == x || k == j) continue;
            const double qj = q[j - 1], rk = q[k - 1];
            bet += ((x > j && x > k) ? 2 * bs : -bs) * qj * rk;
            bet += (x > j ? bs + 1 : -bs) * qj * (1 - rk);
            bet += (x > k ? bs + 1 : -bs) * (1 - qj) * rk;
            bet += 2 * (1 - qj) * (1 - rk);
            const double pj = p[j - 1];
            callv += ((x > j && x > k) ? 2 * bs : -bs) * pj * rk;
            callv += (x > j ? bs + 1 : -bs) * pj * (1 - rk);
            callv += ((x > j && x > k) ? 2.0 : -1.0) * (1 - pj);
            fold += -pj + ((x > j && x > k) ? 2.0 : -1.0) * (1 - pj);
          }
        }
        const double check = static_cast<double>(chk[x]);
        brp[x - 1] = bet > check ? 1.0 : 0.0;
        brq[x - 1] = callv > fold ? 1.0 : 0.0;
      }
    };
    std::vector<double> brp(n), brq(n);
    for (int iter = 0; iter < 10000; ++iter) {
      bodies(brp, brq);
      double delta = 0;
      for (int x = 0; x < n; ++x) {
        delta = std::max(delta, std::abs(p[x] - brp[x]) + std::abs(q[x] - brq[x]));
        p[x] = 0.5 * (p[x] + brp[x]);
        q[x] = 0.5 * (q[x] + brq[x]);
      }
      if (delta < 1e-9) break;
    }
    ThreeStrategyProfile prof;
    prof.p = RatVec::Constant(n, Rational(0));
    prof.q = RatVec::Constant(n, Rational(0));
    for (int x = 0; x < n; ++x) {
      prof.p[x] = rationalize(std::clamp(p[x], 0.0, 1.0), 1000000);
      prof.q[x] = rationalize(std::clamp(q[x], 0.0, 1.0), 1000000);
    }
    prof.r = prof.q;
    const auto rep = epsilon_ne_three(params, prof);
    if (rep.certified()) {
      // recover the cut structure; refuse shapes outside the family
      int bcut = n + 1;
      while (bcut > 1 && prof.p[bcut - 2] == Rational(1)) --bcut;
      int a = 1;
      while (a < bcut && prof.p[a - 1] == Rational(1)) ++a;
      int c = 1;
      while (c <= n && prof.q[c - 1].is_zero()) ++c;
      bool shaped = a < c && c < bcut && c <= n;
      for (int x = a + 1; x < bcut && shaped; ++x) shaped &= prof.p[x - 1].is_zero();
      for (int x = c + 1; x <= n && shaped; ++x) shaped &= prof.q[x - 1] == Rational(1);
      if (shaped) {
        ThreeNESolution sol;
        sol.params = params;
        sol.structure = {a, prof.p[a - 1], bcut, c, prof.q[c - 1]};
        sol.profile = structured_profile(params, sol.structure);
        sol.values = payoff_three(params, sol.profile);
        sol.certificate = rep;
        return sol;
      }
    }
  }

  throw ThreeSolveError(
      "three_fast_ne: no structure certified for n=" + std::to_string(n) +
          ", b=" + std::to_string(params.b),
      best, best_gaps);
}

std::vector<ThreeScanRecord> three_value_scan(int n_lo, int n_hi, int b_lo, int b_hi, int jobs) {
  if (n_lo < 4 || n_lo > n_hi || b_lo < 1 || b_lo > b_hi)
    throw std::invalid_argument("three_value_scan: bad ranges");
  std::vector<ThreeScanRecord> records;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int b = b_lo; b <= b_hi; ++b) records.push_back({{n, b}, std::nullopt, ""});
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= records.size()) return;
      try {
        records[k].solution = three_fast_ne(records[k].params);
      } catch (const std::exception& e) {
        records[k].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::max(1, std::min<int>(jobs, static_cast<int>(records.size())));
  for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return records;
}

}  // namespace poker
