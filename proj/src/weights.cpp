#include "cosetmtc/weights.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cmtc {

void validate_spec(const AlgebraSpec& spec) {
  if (spec.rank_n < 2)
    throw std::invalid_argument("algebra rank must be at least 2, got N=" +
                                std::to_string(spec.rank_n));
  if (spec.level < 0)
    throw std::invalid_argument("level must be nonnegative, got K=" +
                                std::to_string(spec.level));
}

bool valid_weight(const WeightLabel& lam, const AlgebraSpec& spec) {
  if (static_cast<int>(lam.size()) != spec.rank_n - 1) return false;
  int sum = 0;
  for (int v : lam) {
    if (v < 1) return false;
    sum += v;
  }
  return sum < spec.height();
}

std::vector<WeightLabel> enumerate_weights(const AlgebraSpec& spec) {
  validate_spec(spec);
  const int parts = spec.rank_n - 1;
  const int h = spec.height();
  std::vector<WeightLabel> out;
  WeightLabel cur(parts, 1);
  // Depth-first fill in lexicographic order.
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == parts) {
      out.push_back(cur);
      return;
    }
    const int remaining = parts - pos - 1;  // later entries need >= 1 each
    for (int v = 1; used + v + remaining < h; ++v) {
      cur[pos] = v;
      self(self, pos + 1, used + v);
    }
    cur[pos] = 1;
  };
  rec(rec, 0, 0);
  return out;
}

int color(const WeightLabel& lam, int rank_n) {
  long acc = 0;
  for (size_t i = 0; i < lam.size(); ++i)
    acc += static_cast<long>(lam[i] - 1) * static_cast<long>(i + 1);
  return static_cast<int>(((acc % rank_n) + rank_n) % rank_n);
}

bool in_root_lattice(const WeightLabel& lam, int rank_n) {
  return color(lam, rank_n) == 0;
}

WeightLabel diagram_rotation(const WeightLabel& lam, const AlgebraSpec& spec,
                             int power) {
  const int n = spec.rank_n;
  int p = ((power % n) + n) % n;
  WeightLabel cur = lam;
  for (int step = 0; step < p; ++step) {
    WeightLabel next(cur.size());
    const int sum = std::accumulate(cur.begin(), cur.end(), 0);
    next[0] = spec.height() - sum;
    std::copy(cur.begin(), cur.end() - 1, next.begin() + 1);
    cur = std::move(next);
  }
  return cur;
}

WeightLabel conjugate(const WeightLabel& lam) {
  WeightLabel out(lam.rbegin(), lam.rend());
  return out;
}

std::vector<double> euclidean_coords(const WeightLabel& lam, int rank_n) {
  std::vector<double> ell(rank_n, 0.0);
  for (int j = rank_n - 2; j >= 0; --j) ell[j] = ell[j + 1] + lam[j];
  const double mean =
      std::accumulate(ell.begin(), ell.end(), 0.0) / rank_n;
  for (double& v : ell) v -= mean;
  return ell;
}

}  // namespace cmtc
