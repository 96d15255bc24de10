#include "fracspace/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

namespace fracspace {

void compute_chain_metrics(const WhitneyCover& cover, Chain& chain) {
  const auto& cubes = chain.cubes;
  const int m = static_cast<int>(cubes.size());
  if (m == 0) throw std::invalid_argument("empty chain");

  chain.length = 0.0;
  for (int c : cubes) chain.length += cover.side_length(c);

  // Central cube: largest side, ties to the lowest index.
  int j0 = 0;
  for (int j = 1; j < m; ++j)
    if (cover.side_length(cubes[j]) > cover.side_length(cubes[j0])) j0 = j;
  chain.central_index = j0;

  const double d_qs = long_distance(cover, cubes.front(), cubes.back());
  double eps = d_qs / chain.length;
  for (int j = 0; j <= j0; ++j)
    eps = std::min(eps, cover.side_length(cubes[j]) / long_distance(cover, cubes.front(), cubes[j]));
  for (int j = j0; j < m; ++j)
    eps = std::min(eps, cover.side_length(cubes[j]) / long_distance(cover, cubes[j], cubes.back()));
  chain.achieved_eps = eps;
}

bool chain_size_consequence_holds(const WhitneyCover& cover, const Chain& chain) {
  const double eps = chain.achieved_eps;
  const double d_qs = long_distance(cover, chain.cubes.front(), chain.cubes.back());
  const double lhs = cover.side_length(chain.cubes[chain.central_index]);
  return lhs >= eps * eps * d_qs / (1.0 + 2.0 * eps) - 1e-12 * d_qs;
}

Chain find_chain(const WhitneyCover& cover, int q, int s) {
  const int n = cover.n_accepted();
  if (q < 0 || q >= n || s < 0 || s >= n)
    throw std::invalid_argument("find_chain endpoints must be accepted Whitney cubes");

  // Shortest path in the discrete quasi-hyperbolic metric: on Whitney
  // cubes l(Q) is comparable to the boundary distance, so every cube costs
  // one hop. Fewest hops forces the ascend-cross-descend shape of
  // admissible chains; a length-first cost would hug boundary bands of
  // small cubes (same total side length, far worse growth ratios). Among
  // fewest-hop paths the one through the largest cubes (max total side
  // length) is kept, ties to the lowest predecessor index.
  const int inf_hops = std::numeric_limits<int>::max();
  std::vector<int> hops(n, inf_hops);
  hops[q] = 1;
  std::vector<int> frontier{q};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int v : cover.adjacency()[u]) {
        if (v >= n || hops[v] != inf_hops) continue;  // Whitney cubes only
        hops[v] = hops[u] + 1;
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  if (hops[s] == inf_hops)
    throw std::runtime_error("cubes lie in different adjacency components of the cover");

  // Layered DP over the min-hop DAG.
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (hops[v] != inf_hops && hops[v] <= hops[s]) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (hops[a] != hops[b]) return hops[a] < hops[b];
    return a < b;
  });
  std::vector<double> score(n, -1.0);
  std::vector<int> pred(n, -1);
  score[q] = cover.side_length(q);
  for (int v : order) {
    if (v == q) continue;
    for (int u : cover.adjacency()[v]) {
      if (u >= n || hops[u] != hops[v] - 1 || score[u] < 0.0) continue;
      const double sc = score[u] + cover.side_length(v);
      if (sc > score[v] || (sc == score[v] && u < pred[v])) {
        score[v] = sc;
        pred[v] = u;
      }
    }
  }

  Chain chain;
  for (int v = s; v != -1; v = pred[v]) chain.cubes.push_back(v);
  std::reverse(chain.cubes.begin(), chain.cubes.end());
  compute_chain_metrics(cover, chain);
  return chain;
}

// ---------------------------------------------------------------------------
// Shadows
// ---------------------------------------------------------------------------

namespace {

bool cube_in_ball(const WhitneyCover& cover, int q, const Vec2& center, double radius) {
  const Vec2 lo = cover.lower(q);
  const double h = cover.side_length(q);
  // Farthest corner of the closed cube from the ball center.
  const double dx = std::max(std::abs(lo.x - center.x), std::abs(lo.x + h - center.x));
  const double dy = std::max(std::abs(lo.y - center.y), std::abs(lo.y + h - center.y));
  return std::hypot(dx, dy) <= radius;
}

}  // namespace

ShadowIndex::ShadowIndex(const WhitneyCover& cover, double rho) : cover_(&cover), rho_(rho) {
  if (rho <= 1.0) throw std::invalid_argument("shadow ratio must exceed 1");
  const int n = cover.n_cells();
  members_.assign(n, {});
  containing_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    const Vec2 xp = cover.center(p);
    const double r = rho * cover.side_length(p);
    for (int q = 0; q < n; ++q) {
      if (cube_in_ball(cover, q, xp, r)) {
        members_[p].push_back(q);
        containing_[q].push_back(p);
      }
    }
  }
}

bool ShadowIndex::in_shadow(int p, int q) const {
  return cube_in_ball(*cover_, q, cover_->center(p), rho_ * cover_->side_length(p));
}

std::vector<int> shadow(const ShadowIndex& index, int p) { return index.members(p); }

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

namespace {

double diam_of_points(const std::vector<Vec2>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
  return d;
}

// Definition of the shadow ratio is checked against three properties: the
// boundary slice of the closed shadow ball has diameter comparable to l(P)
// (factor 10), cubes of the first half-chain see Q in their shadow (and
// symmetrically), and every chain cube sits in the shadow of the central
// cube.
bool rho_works(const WhitneyCover& cover, const std::vector<Chain>& chains, double rho,
               std::string* failure) {
  for (const Chain& ch : chains) {
    const int j0 = ch.central_index;
    const int q = ch.cubes.front();
    const int s = ch.cubes.back();
    const Vec2 xc = cover.center(ch.cubes[j0]);
    const double rc = rho * cover.side_length(ch.cubes[j0]);
    for (int j = 0; j < static_cast<int>(ch.cubes.size()); ++j) {
      const int p = ch.cubes[j];
      const Vec2 xp = cover.center(p);
      const double lp = cover.side_length(p);
      if (j <= j0 && !cube_in_ball(cover, q, xp, rho * lp)) {
        if (failure) *failure = "chain start escapes the shadow of an ascending cube";
        return false;
      }
      if (j >= j0 && !cube_in_ball(cover, s, xp, rho * lp)) {
        if (failure) *failure = "chain end escapes the shadow of a descending cube";
        return false;
      }
      if (!cube_in_ball(cover, p, xc, rc)) {
        if (failure) *failure = "chain cube escapes the shadow of the central cube";
        return false;
      }
      const double bd =
          diam_of_points(cover.domain().boundary_points_in_disk(xp, rho * lp));
      if (bd < lp / 10.0 || bd > 10.0 * lp) {
        if (failure) *failure = "boundary slice of the shadow ball not comparable to l(P)";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

EpsCertificate certify_uniform(const WhitneyCover& cover, int n_pairs, unsigned seed) {
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be at least 1");
  const int n = cover.n_accepted();

  std::vector<std::pair<int, int>> pairs;
  if (n <= 200) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<int>(pairs.size()) < n_pairs) {
      int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      pairs.push_back({std::min(a, b), std::max(a, b)});
    }
  }

  EpsCertificate cert;
  cert.seed = seed;
  cert.pairs_tested = static_cast<int>(pairs.size());
  cert.eps = std::numeric_limits<double>::infinity();

  std::vector<Chain> chains;
  chains.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    Chain ch = find_chain(cover, a, b);
    if (ch.achieved_eps < cert.eps) {
      cert.eps = ch.achieved_eps;
      cert.worst_q = a;
      cert.worst_s = b;
    }
    chains.push_back(std::move(ch));
  }

  static const double kRhoGrid[] = {1.5, 2, 3, 5, 8, 13, 21, 34};
  for (double rho : kRhoGrid) {
    std::string failure;
    if (rho_works(cover, chains, rho, &failure)) {
      cert.rho_eps = rho;
      cert.rho_ok = true;
      cert.rho_failure.clear();
      break;
    }
    cert.rho_failure = failure;
  }
  return cert;
}

GeometricSumsReport check_geometric_sums(const WhitneyCover& cover, const ShadowIndex& index, double s,
                                   int max_chain_pairs, unsigned seed) {
  if (s <= 0.0 || s >= 1.0) throw std::invalid_argument("exponent s must lie in (0,1)");
  GeometricSumsReport rep;

  for (int q = 0; q < cover.n_cells(); ++q) {
    double sum = 0.0;
    for (int l : index.containing(q)) sum += std::pow(cover.side_length(l), -s);
    rep.max_shadow_sum = std::max(rep.max_shadow_sum, sum * std::pow(cover.side_length(q), s));
  }

  // Chains [Q,P] with Q in SH(P), sampled deterministically.
  std::vector<std::pair<int, int>> pairs;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, cover.n_accepted() - 1);
  int guard = 0;
  while (static_cast<int>(pairs.size()) < max_chain_pairs && guard < 100 * max_chain_pairs) {
    ++guard;
    const int p = pick(rng);
    const auto& mem = index.members(p);
    if (mem.empty()) continue;
    std::uniform_int_distribution<int> mpick(0, static_cast<int>(mem.size()) - 1);
    const int q = mem[mpick(rng)];
    if (q >= cover.n_accepted()) continue;
    pairs.push_back({q, p});
  }

  for (auto [q, p] : pairs) {
    Chain ch;
    try {
      ch = find_chain(cover, q, p);
    } catch (const std::runtime_error&) {
      continue;
    }
    double up = 0.0, down = 0.0;
    for (int l : ch.cubes) {
      up += std::pow(cover.side_length(l), s);
      down += std::pow(cover.side_length(l), -s);
    }
    rep.max_chain_up = std::max(rep.max_chain_up, up / std::pow(cover.side_length(p), s));
    rep.max_chain_down = std::max(rep.max_chain_down, down * std::pow(cover.side_length(q), s));
    ++rep.chain_pairs;
  }
  return rep;
}

}  // namespace fracspace
