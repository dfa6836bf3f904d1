#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "rrsvd/errors.hpp"
#include "rrsvd/linalg.hpp"
#include "rrsvd/tournament.hpp"

namespace rrsvd {

/// Offense and defense scores read off the dominant singular pair.
/// Offense is u1 (higher = stronger attack), defense is v1 (lower = harder
/// to score against). Rankings are team ids, best first; exact score ties
/// fall back to ascending id and are flagged per ranking position.
struct OffenseDefenseScores {
  std::vector<double> offense;
  std::vector<double> defense;
  std::vector<std::size_t> offense_ranking;
  std::vector<std::size_t> defense_ranking;
  std::vector<bool> offense_tied_with_prev;
  std::vector<bool> defense_tied_with_prev;
};

namespace detail {

// Ranks ids by score; `ascending` picks the direction that means "better".
inline std::vector<std::size_t> rank_by(const std::vector<double>& score, bool ascending,
                                        std::vector<bool>& tied_with_prev) {
  std::vector<std::size_t> ids(score.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return ascending ? score[a] < score[b] : score[a] > score[b];
    return a < b;
  });
  tied_with_prev.assign(score.size(), false);
  for (std::size_t i = 1; i < ids.size(); ++i)
    tied_with_prev[i] = score[ids[i]] == score[ids[i - 1]];
  return ids;
}

inline std::vector<std::size_t> rank_by(const std::vector<double>& score, bool ascending) {
  std::vector<bool> ignored;
  return rank_by(score, ascending, ignored);
}

}  // namespace detail

inline OffenseDefenseScores offense_defense_scores(const SvdResult& s) {
  OffenseDefenseScores result;
  result.offense = s.u_column(0);
  result.defense = s.v_column(0);
  result.offense_ranking = detail::rank_by(result.offense, false, result.offense_tied_with_prev);
  result.defense_ranking = detail::rank_by(result.defense, true, result.defense_tied_with_prev);
  return result;
}

/// Share of the squared Frobenius norm captured by the k leading terms:
/// sum of the first k sigma_i^2 over the sum of all sigma_i^2.
struct ExplainedFraction {
  double value;
  std::size_t k;
};

inline ExplainedFraction explained_fraction(const SvdResult& s, std::size_t k) {
  if (k < 1 || k > s.sigma.size())
    throw ParameterError("k must lie in [1, " + std::to_string(s.sigma.size()) + "]");
  double total = 0.0, leading = 0.0;
  for (std::size_t i = 0; i < s.sigma.size(); ++i) {
    const double sq = s.sigma[i] * s.sigma[i];
    total += sq;
    if (i < k) leading += sq;
  }
  if (total == 0.0)
    throw DegenerateInputError("all singular values are zero; explained fraction undefined");
  return ExplainedFraction{leading / total, k};
}

/// The tournament as it would look were it driven purely by the k leading
/// score pairs; k = 1 is the offense/defense prediction.
inline DenseMatrix predicted_matrix(const SvdResult& s, std::size_t k) {
  return truncated_sum(s, k);
}

/// Team ids split by the sign of their correction score. Positive ids are
/// ordered by descending value, negative by descending magnitude; entries
/// within tol::sign of zero land in `neutral`.
struct SignGroups {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::vector<std::size_t> neutral;
};

namespace detail {

inline SignGroups sign_groups(const std::vector<double>& score) {
  SignGroups g;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (score[i] > tol::sign)
      g.positive.push_back(i);
    else if (score[i] < -tol::sign)
      g.negative.push_back(i);
    else
      g.neutral.push_back(i);
  }
  std::stable_sort(g.positive.begin(), g.positive.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::stable_sort(g.negative.begin(), g.negative.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(score[a]) > std::abs(score[b]); });
  return g;
}

}  // namespace detail

/// Second-order structure: the residual A - A1, its best rank-one
/// approximation A2 = sigma2 * u2 * v2^T, and the reinforce/oppose grouping
/// of the correction scores u2, v2. Group membership is stable under a
/// simultaneous sign flip of (u2, v2); only the labels swap.
struct CorrectionAnalysis {
  DenseMatrix residual;
  DenseMatrix predicted_correction;
  std::vector<double> offense_correction;
  std::vector<double> defense_correction;
  SignGroups offense_groups;
  SignGroups defense_groups;
};

inline CorrectionAnalysis correction_analysis(const PerformanceMatrix& a, const SvdResult& s) {
  if (s.rank_hint < 2)
    throw DegenerateInputError("rank below 2: no second-order structure to analyze");
  CorrectionAnalysis c{a.matrix - truncated_sum(s, 1),
                       rank_one(s.sigma[1], s.u_column(1), s.v_column(1)),
                       s.u_column(1),
                       s.v_column(1),
                       {},
                       {}};
  c.offense_groups = detail::sign_groups(c.offense_correction);
  c.defense_groups = detail::sign_groups(c.defense_correction);
  return c;
}

/// Teams ranked by the diagonal of A2: a negative entry predicts less goal
/// action around the team than its offense/defense scores suggest.
struct BoredomReport {
  std::vector<std::pair<std::size_t, double>> boring;    // negative diagonal, |value| descending
  std::vector<std::pair<std::size_t, double>> exciting;  // positive diagonal, value descending
};

inline BoredomReport boredom_ranking(const CorrectionAnalysis& c) {
  BoredomReport report;
  const DenseMatrix& a2 = c.predicted_correction;
  for (std::size_t i = 0; i < a2.rows(); ++i) {
    const double d = a2(i, i);
    if (d < -tol::sign)
      report.boring.emplace_back(i, d);
    else if (d > tol::sign)
      report.exciting.emplace_back(i, d);
  }
  std::stable_sort(report.boring.begin(), report.boring.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
  std::stable_sort(report.exciting.begin(), report.exciting.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return report;
}

enum class RankingVerdict { identical, identical_up_to_ties, different };

inline const char* to_string(RankingVerdict v) {
  switch (v) {
    case RankingVerdict::identical: return "identical";
    case RankingVerdict::identical_up_to_ties: return "identical-up-to-ties";
    case RankingVerdict::different: return "different";
  }
  return "?";
}

/// Per-dimension comparison of the decomposition rankings against the raw
/// goal-count rankings. `different` means some pair is strictly inverted;
/// otherwise ties in the goal counts downgrade `identical` to
/// `identical_up_to_ties`. Positions of inverted teams (indices into the
/// score ranking) are listed for the `different` case.
struct RankingComparison {
  RankingVerdict offense;
  RankingVerdict defense;
  std::vector<std::size_t> offense_diff_positions;
  std::vector<std::size_t> defense_diff_positions;
};

namespace detail {

inline RankingVerdict compare_one(const std::vector<std::size_t>& score_ranking,
                                  const std::vector<int>& goals, bool higher_better,
                                  std::vector<std::size_t>& diff_positions) {
  diff_positions.clear();
  bool has_ties = false;
  for (std::size_t a = 0; a < score_ranking.size(); ++a) {
    for (std::size_t b = a + 1; b < score_ranking.size(); ++b) {
      const int ga = goals[score_ranking[a]];
      const int gb = goals[score_ranking[b]];
      if (ga == gb) {
        has_ties = true;
      } else if (higher_better ? gb > ga : gb < ga) {
        // goal counts strictly favor the team the scores ranked below
        if (diff_positions.empty() || diff_positions.back() != a) diff_positions.push_back(a);
        diff_positions.push_back(b);
      }
    }
  }
  if (!diff_positions.empty()) {
    std::sort(diff_positions.begin(), diff_positions.end());
    diff_positions.erase(std::unique(diff_positions.begin(), diff_positions.end()),
                         diff_positions.end());
    return RankingVerdict::different;
  }
  return has_ties ? RankingVerdict::identical_up_to_ties : RankingVerdict::identical;
}

}  // namespace detail

inline RankingComparison compare_rankings(const OffenseDefenseScores& scores,
                                          const std::vector<int>& goals_scored,
                                          const std::vector<int>& goals_allowed) {
  if (goals_scored.size() != scores.offense.size() || goals_allowed.size() != scores.defense.size())
    throw ShapeError("goal vectors must have one entry per team");
  RankingComparison cmp{RankingVerdict::identical, RankingVerdict::identical, {}, {}};
  cmp.offense = detail::compare_one(scores.offense_ranking, goals_scored, true,
                                    cmp.offense_diff_positions);
  cmp.defense = detail::compare_one(scores.defense_ranking, goals_allowed, false,
                                    cmp.defense_diff_positions);
  return cmp;
}

}  // namespace rrsvd
