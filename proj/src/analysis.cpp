#include "erasure/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "erasure/error.hpp"

namespace erasure::analysis {

std::string_view to_string(PerfLabel l) {
  switch (l) {
    case PerfLabel::GOOD: return "good";
    case PerfLabel::AVERAGE: return "average";
    case PerfLabel::POOR: return "poor";
  }
  return "?";
}

KMeansResult kmeans_1d(std::span<const double> values, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
  if (values.size() < k) throw Error(ErrorCode::TooFewPoints, "fewer points than clusters");
  const std::size_t n = values.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = values[order[i]];

  // Prefix sums of shifted values keep the squared-sum subtraction stable.
  const double shift = x[n / 2];
  std::vector<double> s(n + 1, 0.0), s2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i] - shift;
    s[i + 1] = s[i] + v;
    s2[i + 1] = s2[i] + v * v;
  }
  auto cost = [&](std::size_t a, std::size_t b) {  // points [a, b)
    const double sum = s[b] - s[a];
    const double c = s2[b] - s2[a] - sum * sum / static_cast<double>(b - a);
    return std::max(c, 0.0);
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // dp[j][i]: best cost of the first i points in j clusters; cut[j][i] is
  // where the last cluster starts.
  std::vector<std::vector<double>> dp(k + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<std::size_t>> cut(k + 1, std::vector<std::size_t>(n + 1, 0));
  dp[0][0] = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t i = j; i <= n; ++i) {
      for (std::size_t m = j - 1; m < i; ++m) {
        if (dp[j - 1][m] == inf) continue;
        const double c = dp[j - 1][m] + cost(m, i);
        if (c < dp[j][i]) {
          dp[j][i] = c;
          cut[j][i] = m;
        }
      }
    }
  }

  KMeansResult r;
  r.objective = dp[k][n];
  r.assignment.assign(n, 0);
  r.centroids.assign(k, 0.0);
  std::size_t end = n;
  for (std::size_t j = k; j >= 1; --j) {
    const std::size_t begin = cut[j][end];
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      r.assignment[order[i]] = j - 1;
      sum += x[i];
    }
    r.centroids[j - 1] = sum / static_cast<double>(end - begin);
    end = begin;
  }
  return r;
}

std::vector<ColumnLabels> label_results(const std::vector<Column>& columns) {
  std::vector<ColumnLabels> out;
  for (const auto& col : columns) {
    ColumnLabels cl;
    cl.name = col.name;
    if (const auto* flags = std::get_if<std::vector<bool>>(&col.values)) {
      cl.flags = *flags;
    } else {
      const auto& v = std::get<std::vector<double>>(col.values);
      if (std::set<double>(v.begin(), v.end()).size() < 3) {
        cl.warning = "column '" + col.name + "' skipped: fewer than 3 distinct values";
      } else {
        const auto km = kmeans_1d(v, 3);
        for (auto a : km.assignment) cl.labels.push_back(static_cast<PerfLabel>(a));
      }
    }
    out.push_back(std::move(cl));
  }
  return out;
}

Recommendation recommend(const UseCase& u) {
  const bool high_net = u.network_cost == Level::HIGH;
  const bool small = u.memory_size == MemorySize::SMALL;
  const bool high_sec = u.security_level == Level::HIGH;

  Recommendation r{ProtocolId::PT, false, ""};
  if (high_net) {
    if (small && high_sec) {
      r = u.distant_attacker_resistance_required
              ? Recommendation{ProtocolId::POSE_L, false, "high network cost, small memory, high security, distant attacker"}
              : Recommendation{ProtocolId::DKW, false, "high network cost, small memory, high security"};
    } else if (small) {
      r = {ProtocolId::KK, true, "high network cost, small memory, low security: no row, nearest is the large-memory low-security row"};
    } else if (high_sec) {
      r = {ProtocolId::POSE_L, false, "high network cost, large memory, high security"};
    } else {
      r = {ProtocolId::KK, false, "high network cost, large memory, low security"};
    }
  } else if (small && u.fast_device) {
    r = high_sec ? Recommendation{ProtocolId::DKW, false, "low network cost, small memory, fast device, high security"}
                 : Recommendation{ProtocolId::KK, false, "low network cost, small memory, fast device, low security"};
  } else if (high_sec && u.has_hw_accelerator) {
    r = {ProtocolId::DKW, false, "low network cost, high security, hash accelerator"};
  } else {
    r = high_sec ? Recommendation{ProtocolId::POSE_R, false, "low network cost, high security"}
                 : Recommendation{ProtocolId::PT, false, "low network cost, low security"};
  }

  if (u.distant_attacker_resistance_required && !is_distance_bounded(r.protocol)) {
    r = {high_net ? ProtocolId::POSE_L : ProtocolId::POSE_R, true,
         r.justification + "; distant attacker requires a distance-bounded protocol"};
  }
  return r;
}

}  // namespace erasure::analysis
