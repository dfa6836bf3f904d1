#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrsvd/errors.hpp"
#include "rrsvd/linalg.hpp"

namespace rrsvd {

struct Team {
  std::size_t id;
  std::string name;

  bool operator==(const Team&) const = default;
};

/// One single-leg result: goals by `home` against `away` and vice versa.
struct MatchResult {
  std::size_t home;
  std::size_t away;
  int home_goals;
  int away_goals;

  bool operator==(const MatchResult&) const = default;
};

/// A complete single round robin: n teams, every unordered pair met exactly
/// once. Optionally carries per-team fair-play totals (lower is better) and
/// a coin-toss seed for the standings tie-break.
class Tournament {
public:
  static Tournament create(std::vector<std::string> team_names, std::vector<MatchResult> matches,
                           std::optional<std::vector<int>> fair_play = {},
                           std::optional<std::uint64_t> coin_seed = {}) {
    const std::size_t n = team_names.size();
    if (n < 2) throw ParameterError("a tournament needs at least two teams");
    std::set<std::string> seen_names;
    for (const auto& name : team_names) {
      if (name.empty()) throw ParameterError("team names must be non-empty");
      if (name.find('"') != std::string::npos || name.find('\n') != std::string::npos)
        throw ParameterError("team name contains an unsupported character: " + name);
      if (!seen_names.insert(name).second) throw ParameterError("duplicate team name: " + name);
    }
    std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
    for (const auto& m : matches) {
      if (m.home >= n || m.away >= n) throw ParameterError("match references an unknown team id");
      if (m.home == m.away) throw ParameterError("a team cannot play itself");
      if (m.home_goals < 0 || m.away_goals < 0) throw ParameterError("goal counts must be nonnegative");
      const auto key = std::minmax(m.home, m.away);
      if (!seen_pairs.insert(key).second)
        throw ParameterError("pair already played: " + team_names[m.home] + " vs " + team_names[m.away]);
    }
    if (matches.size() != n * (n - 1) / 2) throw ParameterError("incomplete round robin");
    if (fair_play && fair_play->size() != n)
      throw ParameterError("fair-play list must have one value per team");

    Tournament t;
    t.teams_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.teams_.push_back(Team{i, std::move(team_names[i])});
    t.matches_ = std::move(matches);
    t.fair_play_ = std::move(fair_play);
    t.coin_seed_ = coin_seed;
    return t;
  }

  const std::vector<Team>& teams() const noexcept { return teams_; }
  const std::vector<MatchResult>& matches() const noexcept { return matches_; }
  std::size_t size() const noexcept { return teams_.size(); }
  const std::optional<std::vector<int>>& fair_play() const noexcept { return fair_play_; }
  const std::optional<std::uint64_t>& coin_seed() const noexcept { return coin_seed_; }

  std::optional<std::size_t> team_index(std::string_view name) const {
    for (const auto& t : teams_)
      if (t.name == name) return t.id;
    return std::nullopt;
  }

  /// Goals (scored by i, scored by j) in the match between i and j.
  std::optional<std::pair<int, int>> result_between(std::size_t i, std::size_t j) const {
    for (const auto& m : matches_) {
      if (m.home == i && m.away == j) return std::make_pair(m.home_goals, m.away_goals);
      if (m.home == j && m.away == i) return std::make_pair(m.away_goals, m.home_goals);
    }
    return std::nullopt;
  }

  Tournament with_coin_seed(std::uint64_t seed) const {
    Tournament t = *this;
    t.coin_seed_ = seed;
    return t;
  }

  bool operator==(const Tournament&) const = default;

private:
  Tournament() = default;

  std::vector<Team> teams_;
  std::vector<MatchResult> matches_;
  std::optional<std::vector<int>> fair_play_;
  std::optional<std::uint64_t> coin_seed_;
};

/// The n x n offense/defense performance matrix. Off-diagonal (i, j) holds
/// the goals team i scored against team j; diagonal (i, i) is the mean of
/// the 2(n-1) off-diagonal entries in row i and column i. Row order mirrors
/// Tournament::teams().
struct PerformanceMatrix {
  DenseMatrix matrix;
};

inline PerformanceMatrix build_performance_matrix(const Tournament& t) {
  const std::size_t n = t.size();
  DenseMatrix m(n, n);
  for (const auto& match : t.matches()) {
    m(match.home, match.away) = match.home_goals;
    m(match.away, match.home) = match.away_goals;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double off_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off_sum += m(i, j) + m(j, i);
    m(i, i) = off_sum / static_cast<double>(2 * (n - 1));
  }
  return PerformanceMatrix{std::move(m)};
}

inline std::vector<int> goals_scored_vector(const Tournament& t) {
  std::vector<int> goals(t.size(), 0);
  for (const auto& m : t.matches()) {
    goals[m.home] += m.home_goals;
    goals[m.away] += m.away_goals;
  }
  return goals;
}

inline std::vector<int> goals_allowed_vector(const Tournament& t) {
  std::vector<int> goals(t.size(), 0);
  for (const auto& m : t.matches()) {
    goals[m.home] += m.away_goals;
    goals[m.away] += m.home_goals;
  }
  return goals;
}

/// v / ||v||_2. Throws DegenerateInputError for the zero vector.
inline std::vector<double> normalized(const std::vector<int>& v) {
  double sum_sq = 0.0;
  for (int x : v) sum_sq += static_cast<double>(x) * x;
  if (sum_sq == 0.0) throw DegenerateInputError("cannot normalize the zero vector");
  const double norm = std::sqrt(sum_sq);
  std::vector<double> unit(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) unit[i] = v[i] / norm;
  return unit;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas, honoring double quotes around individual items.
inline std::vector<std::string> split_name_list(std::string_view s, std::size_t line) {
  std::vector<std::string> items;
  std::string current;
  bool in_quotes = false;
  for (char c : s) {
    if (c == '"') {
      in_quotes = !in_quotes;
    } else if (c == ',' && !in_quotes) {
      items.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (in_quotes) throw ParseError(line, "unterminated quote");
  items.emplace_back(trim(current));
  return items;
}

// Whitespace-separated tokens; a token may be double-quoted to carry spaces.
inline std::vector<std::string> tokenize(std::string_view s, std::size_t line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    if (s[i] == '"') {
      const std::size_t close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError(line, "unterminated quote");
      tokens.emplace_back(s.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      std::size_t end = i;
      while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
      tokens.emplace_back(s.substr(i, end - i));
      i = end;
    }
  }
  return tokens;
}

inline bool parse_int(std::string_view s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  long long value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    value = value * 10 + (s[i] - '0');
    if (value > 1000000000000000000LL) return false;
  }
  out = (s[0] == '-') ? -value : value;
  return true;
}

}  // namespace detail

/// Parses the line-oriented tournament format:
///
///   # comment lines and blank lines are ignored
///   teams: <name>[, <name>]...          (names with spaces go in "quotes")
///   fairplay: <int>[, <int>]...         (optional, one per team, lower = better)
///   seed: <unsigned>                    (optional coin-toss seed)
///   <home> <h>:<a> <away>               (one line per match, n(n-1)/2 lines)
///
/// Throws ParseError with the offending line number.
inline Tournament parse_tournament(std::string_view text) {
  std::vector<std::string> team_names;
  std::optional<std::vector<int>> fair_play;
  std::optional<std::uint64_t> coin_seed;
  std::vector<MatchResult> matches;
  std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
  bool teams_declared = false;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  std::istringstream stream{std::string(text)};
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    last_line = line_no;

    if (!teams_declared) {
      if (!line.starts_with("teams:")) throw ParseError(line_no, "expected a 'teams:' line first");
      for (auto& name : detail::split_name_list(line.substr(6), line_no)) {
        if (name.empty()) throw ParseError(line_no, "empty team name");
        if (std::find(team_names.begin(), team_names.end(), name) != team_names.end())
          throw ParseError(line_no, "duplicate team name: " + name);
        team_names.push_back(std::move(name));
      }
      if (team_names.size() < 2) throw ParseError(line_no, "need at least two teams");
      teams_declared = true;
      continue;
    }

    if (line.starts_with("fairplay:")) {
      if (fair_play) throw ParseError(line_no, "duplicate 'fairplay:' line");
      std::vector<int> values;
      for (const auto& item : detail::split_name_list(line.substr(9), line_no)) {
        long long v = 0;
        if (!detail::parse_int(item, v)) throw ParseError(line_no, "malformed fair-play value: " + item);
        values.push_back(static_cast<int>(v));
      }
      if (values.size() != team_names.size())
        throw ParseError(line_no, "fair-play list must have one value per team");
      fair_play = std::move(values);
      continue;
    }

    if (line.starts_with("seed:")) {
      if (coin_seed) throw ParseError(line_no, "duplicate 'seed:' line");
      long long v = 0;
      const auto item = detail::trim(line.substr(5));
      if (!detail::parse_int(item, v) || v < 0)
        throw ParseError(line_no, "malformed seed: " + std::string(item));
      coin_seed = static_cast<std::uint64_t>(v);
      continue;
    }

    const auto tokens = detail::tokenize(line, line_no);
    if (tokens.size() != 3)
      throw ParseError(line_no, "expected '<home> <h>:<a> <away>'");
    const auto find_team = [&](const std::string& name) -> std::size_t {
      const auto it = std::find(team_names.begin(), team_names.end(), name);
      if (it == team_names.end()) throw ParseError(line_no, "unknown team name: " + name);
      return static_cast<std::size_t>(it - team_names.begin());
    };
    const std::size_t home = find_team(tokens[0]);
    const std::size_t away = find_team(tokens[2]);
    if (home == away) throw ParseError(line_no, "a team cannot play itself: " + tokens[0]);

    const auto colon = tokens[1].find(':');
    long long hg = 0, ag = 0;
    if (colon == std::string::npos ||
        !detail::parse_int(std::string_view(tokens[1]).substr(0, colon), hg) ||
        !detail::parse_int(std::string_view(tokens[1]).substr(colon + 1), ag) || hg < 0 || ag < 0)
      throw ParseError(line_no, "malformed score: " + tokens[1]);

    if (!seen_pairs.insert(std::minmax(home, away)).second)
      throw ParseError(line_no, "duplicate pairing: " + tokens[0] + " vs " + tokens[2]);
    matches.push_back(MatchResult{home, away, static_cast<int>(hg), static_cast<int>(ag)});
  }

  if (!teams_declared) throw ParseError(std::max<std::size_t>(line_no, 1), "no 'teams:' line found");
  const std::size_t n = team_names.size();
  if (matches.size() != n * (n - 1) / 2) {
    std::string missing;
    for (std::size_t i = 0; i < n && missing.empty(); ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!seen_pairs.count({i, j})) {
          missing = team_names[i] + " vs " + team_names[j];
          break;
        }
    throw ParseError(last_line, "incomplete round robin: missing " + missing);
  }
  return Tournament::create(std::move(team_names), std::move(matches), std::move(fair_play),
                            coin_seed);
}

/// Serializes a tournament back to the parse_tournament format; parsing the
/// output reproduces the tournament exactly.
inline std::string to_text(const Tournament& t) {
  const auto quoted = [](const std::string& name) {
    return name.find(' ') != std::string::npos ? '"' + name + '"' : name;
  };
  std::ostringstream out;
  out << "teams: ";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out << ", ";
    out << quoted(t.teams()[i].name);
  }
  out << '\n';
  if (t.fair_play()) {
    out << "fairplay: ";
    for (std::size_t i = 0; i < t.fair_play()->size(); ++i) {
      if (i > 0) out << ", ";
      out << (*t.fair_play())[i];
    }
    out << '\n';
  }
  if (t.coin_seed()) out << "seed: " << *t.coin_seed() << '\n';
  for (const auto& m : t.matches())
    out << quoted(t.teams()[m.home].name) << ' ' << m.home_goals << ':' << m.away_goals << ' '
        << quoted(t.teams()[m.away].name) << '\n';
  return out.str();
}

}  // namespace rrsvd
