//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <boost/math/distributions/students_t.hpp>

namespace exmut::analysis {

Score compute_score(std::int64_t killed, std::int64_t covered) {
  if (killed < 0 || covered < 0 || killed > covered)
    throw InvalidCounts("invalid score counts: killed=" + std::to_string(killed) +
                        " covered=" + std::to_string(covered));
  return Score{killed, covered};
}

FunctionClassification classify_function(bool excluded,
                                         std::span<const MutantOutcome> outcomes) {
  if (excluded || outcomes.empty()) return FunctionClassification::Excluded;

  std::int64_t covered = 0, detected = 0;
  for (const MutantOutcome& o : outcomes) {
    if (o.status != MutantStatus::NotCovered) ++covered;
    if (is_detected(o.status)) ++detected;
  }
  if (covered == 0) return FunctionClassification::NotCovered;
  if (detected == 0) return FunctionClassification::PseudoTested;
  if (detected == covered) return FunctionClassification::FullyTested;
  return FunctionClassification::PartiallyTested;
}

namespace {

struct SliceCounts {
  std::int64_t covered = 0;
  std::int64_t killed = 0;
};

SliceCounts count_in_set(const EngineReport& r,
                         const std::set<std::string>& function_ids) {
  SliceCounts c;
  for (std::size_t i = 0; i < r.mutants.size(); ++i) {
    if (!function_ids.count(r.mutants[i].site_id)) continue;
    const MutantOutcome& o = r.outcomes[i];
    if (o.status != MutantStatus::NotCovered) ++c.covered;
    if (is_detected(o.status)) ++c.killed;
  }
  return c;
}

std::set<std::string> mutated_ids(const EngineReport& r) {
  std::set<std::string> ids;
  for (const Mutant& m : r.mutants) ids.insert(m.site_id);
  return ids;
}

}  // namespace

ComparisonReport intersect_reports(const EngineReport& a, const EngineReport& b) {
  if (a.project_digest != b.project_digest)
    throw MismatchedSnapshot("engine reports come from different snapshots: " +
                             a.project_digest + " vs " + b.project_digest);

  const EngineReport& extreme = a.engine == EngineKind::Extreme ? a : b;
  const EngineReport& traditional = a.engine == EngineKind::Extreme ? b : a;

  ComparisonReport cmp;
  cmp.project_digest = a.project_digest;

  std::set<std::string> ia = mutated_ids(extreme);
  std::set<std::string> ib = mutated_ids(traditional);
  std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(),
                        std::inserter(cmp.intersected_function_ids,
                                      cmp.intersected_function_ids.begin()));

  SliceCounts ce = count_in_set(extreme, cmp.intersected_function_ids);
  SliceCounts ct = count_in_set(traditional, cmp.intersected_function_ids);

  cmp.extreme_created = extreme.mutants_created;
  cmp.extreme_covered = ce.covered;
  cmp.extreme_killed = ce.killed;
  cmp.extreme_score = compute_score(ce.killed, ce.covered);

  cmp.traditional_created = traditional.mutants_created;
  cmp.traditional_covered = ct.covered;
  cmp.traditional_killed = ct.killed;
  cmp.traditional_score = compute_score(ct.killed, ct.covered);

  return cmp;
}

std::vector<double> mid_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    dx += (x[i] - mx) * (x[i] - mx);
    dy += (y[i] - my) * (y[i] - my);
  }
  if (dx == 0.0 || dy == 0.0)
    throw DegenerateInput("constant column in correlation input");
  return num / std::sqrt(dx * dy);
}

double rho_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  return pearson(mid_ranks(xs), mid_ranks(ys));
}

}  // namespace

double spearman_rho(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2)
    throw DegenerateInput("spearman_rho needs at least 2 pairs, got " +
                          std::to_string(pairs.size()));
  std::vector<double> xs, ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (auto& [x, y] : pairs) {
    xs.push_back(x);
    ys.push_back(y);
  }
  double rho = rho_of(xs, ys);
  return std::clamp(rho, -1.0, 1.0);
}

std::optional<double> spearman_p_value(double rho, std::size_t n) {
  if (n < 4) return std::nullopt;
  if (std::abs(rho) >= 1.0) return 0.0;
  double df = static_cast<double>(n - 2);
  double t = rho * std::sqrt(df / (1.0 - rho * rho));
  boost::math::students_t dist(df);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(p, 1.0);
}

double spearman_p_exact(const std::vector<std::pair<double, double>>& pairs) {
  const std::size_t n = pairs.size();
  if (n < 2 || n > 10)
    throw DegenerateInput("exact permutation p-value supports 2 <= n <= 10");

  std::vector<double> xs, ys;
  for (auto& [x, y] : pairs) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const double observed = std::abs(rho_of(xs, ys));

  std::vector<double> perm = ys;
  std::sort(perm.begin(), perm.end());
  std::uint64_t total = 0, at_least = 0;
  do {
    ++total;
    if (std::abs(rho_of(xs, perm)) >= observed - 1e-12) ++at_least;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(at_least) / static_cast<double>(total);
}

}  // namespace exmut::analysis
