#pragma once

#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rrsvd/analysis.hpp"
#include "rrsvd/linalg.hpp"
#include "rrsvd/polar.hpp"
#include "rrsvd/standings.hpp"
#include "rrsvd/tournament.hpp"

namespace rrsvd {

/// Everything one tournament analysis produces, computed once and rendered
/// by the text and JSON emitters below without recomputation.
struct AnalysisReport {
  Tournament tournament;
  PerformanceMatrix performance;
  SvdResult decomposition;
  bool degenerate;  // all singular values zero
  OffenseDefenseScores scores;
  std::vector<double> explained;  // k = 1..n; empty when degenerate
  std::size_t predicted_rank;
  DenseMatrix predicted;
  std::optional<CorrectionAnalysis> correction;  // absent when rank < 2
  std::optional<BoredomReport> boredom;
  RankingComparison goal_comparison;
  PolarFactors polar;
  StandingsTable standings;
};

inline AnalysisReport analyze_tournament(const Tournament& t, const PerformanceMatrix& pm,
                                         std::size_t predicted_rank = 1) {
  const std::size_t n = t.size();
  if (pm.matrix.rows() != n || !pm.matrix.is_square())
    throw ShapeError("performance matrix does not match the tournament size");
  SvdResult decomposition = svd(pm.matrix);
  if (predicted_rank < 1 || predicted_rank > decomposition.sigma.size())
    throw ParameterError("rank must lie in [1, " + std::to_string(decomposition.sigma.size()) + "]");

  const bool degenerate = decomposition.rank_hint == 0;
  OffenseDefenseScores scores = offense_defense_scores(decomposition);

  std::vector<double> explained;
  if (!degenerate)
    for (std::size_t k = 1; k <= decomposition.sigma.size(); ++k)
      explained.push_back(explained_fraction(decomposition, k).value);

  DenseMatrix predicted = truncated_sum(decomposition, predicted_rank);

  std::optional<CorrectionAnalysis> correction;
  std::optional<BoredomReport> boredom;
  if (decomposition.rank_hint >= 2) {
    correction = correction_analysis(pm, decomposition);
    boredom = boredom_ranking(*correction);
  }

  RankingComparison comparison =
      compare_rankings(scores, goals_scored_vector(t), goals_allowed_vector(t));
  PolarFactors polar = polar_factors(decomposition);
  StandingsTable standings = compute_standings(t);

  return AnalysisReport{t,
                        pm,
                        std::move(decomposition),
                        degenerate,
                        std::move(scores),
                        std::move(explained),
                        predicted_rank,
                        std::move(predicted),
                        std::move(correction),
                        std::move(boredom),
                        std::move(comparison),
                        std::move(polar),
                        std::move(standings)};
}

inline AnalysisReport analyze_tournament(const Tournament& t, std::size_t predicted_rank = 1) {
  return analyze_tournament(t, build_performance_matrix(t), predicted_rank);
}

enum class Section { matrix, svd, scores, corrections, polar, standings, all };

inline std::optional<Section> section_from_string(std::string_view s) {
  if (s == "matrix") return Section::matrix;
  if (s == "svd") return Section::svd;
  if (s == "scores") return Section::scores;
  if (s == "corrections") return Section::corrections;
  if (s == "polar") return Section::polar;
  if (s == "standings") return Section::standings;
  if (s == "all") return Section::all;
  return std::nullopt;
}

namespace detail {

inline bool wants(Section selected, Section candidate) {
  return selected == Section::all || selected == candidate;
}

inline std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::vector<std::string> team_names(const Tournament& t) {
  std::vector<std::string> names;
  names.reserve(t.size());
  for (const auto& team : t.teams()) names.push_back(team.name);
  return names;
}

inline std::string matrix_text(const DenseMatrix& m, const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& col_labels) {
  std::size_t label_width = 0;
  for (const auto& l : row_labels) label_width = std::max(label_width, l.size());
  std::vector<std::size_t> widths(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    widths[j] = col_labels.empty() ? 0 : col_labels[j].size();
    for (std::size_t i = 0; i < m.rows(); ++i)
      widths[j] = std::max(widths[j], fixed4(m(i, j)).size());
  }
  std::ostringstream out;
  if (!col_labels.empty()) {
    out << "  " << std::string(label_width, ' ');
    for (std::size_t j = 0; j < m.cols(); ++j) out << "  " << pad_left(col_labels[j], widths[j]);
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  " << pad_right(row_labels.empty() ? "" : row_labels[i], label_width);
    for (std::size_t j = 0; j < m.cols(); ++j) out << "  " << pad_left(fixed4(m(i, j)), widths[j]);
    out << '\n';
  }
  return out.str();
}

inline std::string group_text(const SignGroups& g, const std::vector<double>& score,
                              const std::vector<std::string>& names) {
  const auto list = [&](const std::vector<std::size_t>& ids) {
    if (ids.empty()) return std::string("-");
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0) s += ", ";
      s += names[ids[i]] + " (" + fixed4(score[ids[i]]) + ")";
    }
    return s;
  };
  std::string s = "positive: " + list(g.positive) + "\n    negative: " + list(g.negative);
  if (!g.neutral.empty()) s += "\n    neutral: " + list(g.neutral);
  return s;
}

}  // namespace detail

inline std::string to_text(const AnalysisReport& r, Section section = Section::all) {
  using detail::fixed4;
  using detail::wants;
  const auto names = detail::team_names(r.tournament);
  const std::size_t n = names.size();
  std::ostringstream out;

  out << "== tournament ==\n" << to_text(r.tournament);
  if (r.degenerate) out << "analysis degenerate: all singular values are zero\n";

  if (wants(section, Section::matrix)) {
    out << "\n== performance matrix ==\n";
    out << detail::matrix_text(r.performance.matrix, names, names);
  }

  if (wants(section, Section::svd)) {
    out << "\n== svd ==\n";
    out << "  sigma:";
    for (double s : r.decomposition.sigma) out << "  " << fixed4(s);
    out << '\n';
    if (!r.explained.empty()) {
      out << "  explained fraction (k = 1.." << r.explained.size() << "):";
      for (double e : r.explained) out << "  " << fixed4(e);
      out << '\n';
    }
    std::vector<std::string> vec_labels;
    for (std::size_t k = 1; k <= r.decomposition.sigma.size(); ++k)
      vec_labels.push_back("#" + std::to_string(k));
    out << "  u (singular vectors as columns):\n"
        << detail::matrix_text(r.decomposition.u, names, vec_labels);
    out << "  v (singular vectors as columns):\n"
        << detail::matrix_text(r.decomposition.v, names, vec_labels);
  }

  if (wants(section, Section::scores)) {
    out << "\n== scores ==\n";
    out << "  offense (higher is better):\n";
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t id = r.scores.offense_ranking[i];
      out << "    " << i + 1 << ". " << detail::pad_right(names[id], 14) << "  "
          << fixed4(r.scores.offense[id])
          << (r.scores.offense_tied_with_prev[i] ? "  (tied)" : "") << '\n';
    }
    out << "  defense (lower is better):\n";
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t id = r.scores.defense_ranking[i];
      out << "    " << i + 1 << ". " << detail::pad_right(names[id], 14) << "  "
          << fixed4(r.scores.defense[id])
          << (r.scores.defense_tied_with_prev[i] ? "  (tied)" : "") << '\n';
    }
    out << "  vs goal counts: offense " << to_string(r.goal_comparison.offense) << ", defense "
        << to_string(r.goal_comparison.defense) << '\n';
    out << "  predicted matrix (rank " << r.predicted_rank << "):\n"
        << detail::matrix_text(r.predicted, names, names);
  }

  if (wants(section, Section::corrections)) {
    out << "\n== corrections ==\n";
    if (!r.correction) {
      out << "  degenerate: rank below 2, no second-order structure\n";
    } else {
      out << "  residual (A - A1):\n"
          << detail::matrix_text(r.correction->residual, names, names);
      out << "  predicted correction (A2):\n"
          << detail::matrix_text(r.correction->predicted_correction, names, names);
      out << "  offense correction groups:\n    "
          << detail::group_text(r.correction->offense_groups, r.correction->offense_correction,
                                names)
          << '\n';
      out << "  defense correction groups:\n    "
          << detail::group_text(r.correction->defense_groups, r.correction->defense_correction,
                                names)
          << '\n';
      const auto listed = [&](const std::vector<std::pair<std::size_t, double>>& entries) {
        if (entries.empty()) return std::string("-");
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
          if (i > 0) s += ", ";
          s += names[entries[i].first] + " (" + fixed4(entries[i].second) + ")";
        }
        return s;
      };
      out << "  predicted boring: " << listed(r.boredom->boring) << '\n';
      out << "  predicted exciting: " << listed(r.boredom->exciting) << '\n';
    }
  }

  if (wants(section, Section::polar)) {
    out << "\n== polar ==\n";
    if (!r.polar.positive_definite) out << "  rank deficient: factors are semidefinite only\n";
    out << "  P = U D U^T (offense-mirrored hypothetical):\n"
        << detail::matrix_text(r.polar.p, names, names);
    out << "  Q = V D V^T (defense-mirrored hypothetical):\n"
        << detail::matrix_text(r.polar.q, names, names);
    for (const MirrorMode mode : {MirrorMode::offense_mirrored, MirrorMode::defense_mirrored}) {
      const DenseMatrix& table = hypothetical_scores(r.polar, mode);
      out << "  predicted draws ("
          << (mode == MirrorMode::offense_mirrored ? "offense-mirrored" : "defense-mirrored")
          << "):\n";
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          out << "    " << names[i] << " vs " << names[j] << ": " << fixed4(table(i, j)) << " : "
              << fixed4(table(i, j)) << '\n';
    }
  }

  if (wants(section, Section::standings)) {
    out << "\n== standings ==\n";
    out << "   # " << detail::pad_right("team", 16) << detail::pad_left("pts", 5)
        << detail::pad_left("gf", 5) << detail::pad_left("ga", 5) << detail::pad_left("gd", 5)
        << "  decided by\n";
    for (std::size_t i = 0; i < r.standings.rows.size(); ++i) {
      const auto& row = r.standings.rows[i];
      out << "  " << std::setw(2) << i + 1 << ' ' << detail::pad_right(names[row.team], 16)
          << detail::pad_left(std::to_string(row.points), 5)
          << detail::pad_left(std::to_string(row.goals_for), 5)
          << detail::pad_left(std::to_string(row.goals_against), 5)
          << detail::pad_left(std::to_string(row.goal_difference), 5) << "  "
          << to_string(row.tiebreak_level_used) << '\n';
    }
    out << "  advancing: " << names[r.standings.advancing[0]] << ", "
        << names[r.standings.advancing[1]] << '\n';
    out << "  audit:\n";
    for (const auto& a : r.standings.audit) {
      out << "    " << names[a.above] << " > " << names[a.below] << ": " << to_string(a.level);
      if (!a.note.empty()) out << " (" << a.note << ")";
      out << '\n';
    }
  }

  return out.str();
}

namespace detail {

inline nlohmann::ordered_json to_json(const DenseMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::ordered_json columns_json(const DenseMatrix& m) {
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return cols;
}

inline nlohmann::ordered_json names_json(const std::vector<std::size_t>& ids,
                                         const std::vector<std::string>& names) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t id : ids) arr.push_back(names[id]);
  return arr;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const AnalysisReport& r, Section section = Section::all) {
  using nlohmann::ordered_json;
  using detail::wants;
  const auto names = detail::team_names(r.tournament);
  ordered_json j;

  ordered_json teams = ordered_json::array();
  for (const auto& name : names) teams.push_back(name);
  ordered_json matches = ordered_json::array();
  for (const auto& m : r.tournament.matches())
    matches.push_back({{"home", names[m.home]},
                       {"away", names[m.away]},
                       {"home_goals", m.home_goals},
                       {"away_goals", m.away_goals}});
  j["tournament"] = {{"teams", std::move(teams)}, {"matches", std::move(matches)}};
  if (r.tournament.fair_play()) j["tournament"]["fairplay"] = *r.tournament.fair_play();
  if (r.tournament.coin_seed()) j["tournament"]["seed"] = *r.tournament.coin_seed();
  j["degenerate"] = r.degenerate;

  if (wants(section, Section::matrix)) j["matrix"] = detail::to_json(r.performance.matrix);

  if (wants(section, Section::svd))
    j["svd"] = {{"u", detail::columns_json(r.decomposition.u)},
                {"sigma", r.decomposition.sigma},
                {"v", detail::columns_json(r.decomposition.v)},
                {"rank", r.decomposition.rank_hint}};

  if (wants(section, Section::scores)) {
    j["scores"] = {{"offense", r.scores.offense},
                   {"defense", r.scores.defense},
                   {"offense_ranking", detail::names_json(r.scores.offense_ranking, names)},
                   {"defense_ranking", detail::names_json(r.scores.defense_ranking, names)},
                   {"offense_ties", r.scores.offense_tied_with_prev},
                   {"defense_ties", r.scores.defense_tied_with_prev},
                   {"goal_comparison",
                    {{"offense", to_string(r.goal_comparison.offense)},
                     {"defense", to_string(r.goal_comparison.defense)},
                     {"offense_diff_positions", r.goal_comparison.offense_diff_positions},
                     {"defense_diff_positions", r.goal_comparison.defense_diff_positions}}}};
    j["explained"] = r.explained;
    j["predicted"] = {{"rank", r.predicted_rank}, {"matrix", detail::to_json(r.predicted)}};
  }

  if (wants(section, Section::corrections)) {
    if (!r.correction) {
      j["correction"] = nullptr;
    } else {
      const auto groups = [&](const SignGroups& g) {
        return ordered_json{{"positive", detail::names_json(g.positive, names)},
                            {"negative", detail::names_json(g.negative, names)},
                            {"neutral", detail::names_json(g.neutral, names)}};
      };
      const auto diag_list = [&](const std::vector<std::pair<std::size_t, double>>& entries) {
        ordered_json arr = ordered_json::array();
        for (const auto& [id, value] : entries)
          arr.push_back({{"team", names[id]}, {"value", value}});
        return arr;
      };
      j["correction"] = {{"residual", detail::to_json(r.correction->residual)},
                         {"predicted_correction", detail::to_json(r.correction->predicted_correction)},
                         {"offense_correction", r.correction->offense_correction},
                         {"defense_correction", r.correction->defense_correction},
                         {"offense_groups", groups(r.correction->offense_groups)},
                         {"defense_groups", groups(r.correction->defense_groups)},
                         {"boring", diag_list(r.boredom->boring)},
                         {"exciting", diag_list(r.boredom->exciting)}};
    }
  }

  if (wants(section, Section::polar))
    j["polar"] = {{"p", detail::to_json(r.polar.p)},
                  {"q", detail::to_json(r.polar.q)},
                  {"w", detail::to_json(r.polar.w)},
                  {"positive_definite", r.polar.positive_definite}};

  if (wants(section, Section::standings)) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.standings.rows)
      rows.push_back({{"team", names[row.team]},
                      {"points", row.points},
                      {"goals_for", row.goals_for},
                      {"goals_against", row.goals_against},
                      {"goal_difference", row.goal_difference},
                      {"tiebreak_level", to_string(row.tiebreak_level_used)}});
    ordered_json audit = ordered_json::array();
    for (const auto& a : r.standings.audit) {
      ordered_json entry = {{"above", names[a.above]},
                            {"below", names[a.below]},
                            {"level", to_string(a.level)}};
      if (!a.note.empty()) entry["note"] = a.note;
      audit.push_back(std::move(entry));
    }
    j["standings"] = {{"rows", std::move(rows)},
                      {"advancing", detail::names_json(r.standings.advancing, names)},
                      {"audit", std::move(audit)}};
  }

  return j;
}

}  // namespace rrsvd
