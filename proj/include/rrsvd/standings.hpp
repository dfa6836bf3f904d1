#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "rrsvd/errors.hpp"
#include "rrsvd/tournament.hpp"

namespace rrsvd {

/// Tie-break cascade, in order of application: 3/1/0 points, then goal
/// difference, goals scored, head-to-head among the still-tied teams,
/// fair-play totals, and finally a seeded coin toss.
enum class TiebreakLevel { points, goal_difference, goals_for, head_to_head, fair_play, coin_toss };

inline const char* to_string(TiebreakLevel level) {
  switch (level) {
    case TiebreakLevel::points: return "points";
    case TiebreakLevel::goal_difference: return "goal_difference";
    case TiebreakLevel::goals_for: return "goals_for";
    case TiebreakLevel::head_to_head: return "head_to_head";
    case TiebreakLevel::fair_play: return "fair_play";
    case TiebreakLevel::coin_toss: return "coin_toss";
  }
  return "?";
}

struct StandingsRow {
  std::size_t team;
  int points;
  int goals_for;
  int goals_against;
  int goal_difference;
  TiebreakLevel tiebreak_level_used;  // deepest level needed against a neighbor
};

/// Separation record for one adjacent pair of the final table.
struct PairAudit {
  std::size_t above;
  std::size_t below;
  TiebreakLevel level;
  std::string note;  // non-empty when a level had to be skipped
};

struct StandingsTable {
  std::vector<StandingsRow> rows;      // best first
  std::vector<std::size_t> advancing;  // the top two team ids
  std::vector<PairAudit> audit;        // one entry per adjacent pair, table order
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

struct TeamRecord {
  int points = 0;
  int goals_for = 0;
  int goals_against = 0;
  int goal_difference() const { return goals_for - goals_against; }
};

// Points/goals restricted to matches where both sides belong to `ids`.
inline std::map<std::size_t, TeamRecord> records_for(const std::vector<MatchResult>& matches,
                                                     const std::vector<std::size_t>& ids) {
  std::map<std::size_t, TeamRecord> rec;
  for (std::size_t id : ids) rec[id];
  for (const auto& m : matches) {
    const auto home = rec.find(m.home);
    const auto away = rec.find(m.away);
    if (home == rec.end() || away == rec.end()) continue;
    home->second.goals_for += m.home_goals;
    home->second.goals_against += m.away_goals;
    away->second.goals_for += m.away_goals;
    away->second.goals_against += m.home_goals;
    if (m.home_goals > m.away_goals) {
      home->second.points += 3;
    } else if (m.home_goals < m.away_goals) {
      away->second.points += 3;
    } else {
      home->second.points += 1;
      away->second.points += 1;
    }
  }
  return rec;
}

// Splits `ids` into blocks of equal key, ordered by descending key.
template <typename KeyFn>
std::vector<std::vector<std::size_t>> partition_desc(const std::vector<std::size_t>& ids,
                                                     KeyFn key) {
  std::vector<std::size_t> sorted = ids;
  std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return a < b;
  });
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t id : sorted) {
    if (blocks.empty() || key(blocks.back().front()) != key(id)) blocks.emplace_back();
    blocks.back().push_back(id);
  }
  return blocks;
}

struct CascadeState {
  const Tournament& tournament;
  std::uint64_t seed;
  int coin_round = 0;
  std::vector<PairAudit> audit;
};

inline std::vector<std::size_t> resolve_tie(CascadeState& state,
                                            const std::vector<std::size_t>& ids);

// Resolves each block recursively and stitches the results, recording one
// audit entry at every block boundary.
template <typename Resolver>
std::vector<std::size_t> stitch(CascadeState& state,
                                const std::vector<std::vector<std::size_t>>& blocks,
                                TiebreakLevel boundary_level, const std::string& note,
                                Resolver resolve) {
  std::vector<std::size_t> ordered;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::vector<std::size_t> part = resolve(blocks[b]);
    if (b > 0) state.audit.push_back({ordered.back(), part.front(), boundary_level, note});
    ordered.insert(ordered.end(), part.begin(), part.end());
  }
  return ordered;
}

// Deterministic draw over the tied teams: each team's key mixes the seed,
// its name hash and a per-toss counter, so reruns reproduce the order.
inline std::vector<std::size_t> coin_toss_order(CascadeState& state,
                                                const std::vector<std::size_t>& ids,
                                                const std::string& note) {
  const int round = state.coin_round++;
  std::vector<std::size_t> tossed = ids;
  std::sort(tossed.begin(), tossed.end(), [&](std::size_t a, std::size_t b) {
    return state.tournament.teams()[a].name < state.tournament.teams()[b].name;
  });
  const auto key = [&](std::size_t id) {
    const std::uint64_t name_hash = fnv1a(state.tournament.teams()[id].name);
    return splitmix64(splitmix64(state.seed) ^
                      splitmix64(name_hash + static_cast<std::uint64_t>(round)));
  };
  std::stable_sort(tossed.begin(), tossed.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
  std::vector<std::size_t> ordered;
  for (std::size_t i = 0; i < tossed.size(); ++i) {
    if (i > 0) state.audit.push_back({tossed[i - 1], tossed[i], TiebreakLevel::coin_toss, note});
    ordered.push_back(tossed[i]);
  }
  return ordered;
}

// Teams equal on points, goal difference and goals for. Applies the
// head-to-head sub-table (points, goal difference, goals for restricted to
// matches among the tied teams, re-splitting sub-ties the same way), then
// fair play, then the coin.
inline std::vector<std::size_t> resolve_tie(CascadeState& state,
                                            const std::vector<std::size_t>& ids) {
  if (ids.size() == 1) return ids;

  const auto sub = records_for(state.tournament.matches(), ids);
  const auto h2h_blocks = partition_desc(ids, [&](std::size_t id) {
    return std::make_tuple(sub.at(id).points, sub.at(id).goal_difference(), sub.at(id).goals_for);
  });
  if (h2h_blocks.size() > 1)
    return stitch(state, h2h_blocks, TiebreakLevel::head_to_head, "",
                  [&](const std::vector<std::size_t>& block) { return resolve_tie(state, block); });

  const auto& fp = state.tournament.fair_play();
  if (fp) {
    const auto fp_blocks =
        partition_desc(ids, [&](std::size_t id) { return -(*fp)[id]; });  // lower is better
    if (fp_blocks.size() > 1)
      return stitch(state, fp_blocks, TiebreakLevel::fair_play, "",
                    [&](const std::vector<std::size_t>& block) {
                      // nothing but the coin sits below fair play
                      return block.size() == 1 ? block : coin_toss_order(state, block, "");
                    });
    return coin_toss_order(state, ids, "");
  }
  return coin_toss_order(state, ids, "fair-play data unavailable; skipped to coin toss");
}

}  // namespace detail

/// Orders the table by the full cascade and records, for every adjacent
/// pair, the deepest level that was needed to separate it. The coin toss is
/// reproducible from the tournament's seed (default 0).
inline StandingsTable compute_standings(const Tournament& t) {
  std::vector<std::size_t> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  const auto rec = detail::records_for(t.matches(), all);

  detail::CascadeState state{t, t.coin_seed().value_or(0), 0, {}};

  const auto by_points = detail::partition_desc(all, [&](std::size_t id) { return rec.at(id).points; });
  const std::vector<std::size_t> ordered = detail::stitch(
      state, by_points, TiebreakLevel::points, "", [&](const std::vector<std::size_t>& pts_block) {
        const auto by_gd = detail::partition_desc(
            pts_block, [&](std::size_t id) { return rec.at(id).goal_difference(); });
        return detail::stitch(state, by_gd, TiebreakLevel::goal_difference, "",
                              [&](const std::vector<std::size_t>& gd_block) {
                                const auto by_gf = detail::partition_desc(
                                    gd_block, [&](std::size_t id) { return rec.at(id).goals_for; });
                                return detail::stitch(
                                    state, by_gf, TiebreakLevel::goals_for, "",
                                    [&](const std::vector<std::size_t>& gf_block) {
                                      return detail::resolve_tie(state, gf_block);
                                    });
                              });
      });

  StandingsTable table;
  // audits were recorded as boundaries appeared; put them in table order
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    for (const auto& a : state.audit)
      if (a.above == ordered[i] && a.below == ordered[i + 1]) {
        table.audit.push_back(a);
        break;
      }
  }

  std::vector<TiebreakLevel> deepest(t.size(), TiebreakLevel::points);
  for (const auto& a : table.audit) {
    deepest[a.above] = std::max(deepest[a.above], a.level);
    deepest[a.below] = std::max(deepest[a.below], a.level);
  }

  table.rows.reserve(t.size());
  for (std::size_t id : ordered) {
    const auto& r = rec.at(id);
    table.rows.push_back(
        StandingsRow{id, r.points, r.goals_for, r.goals_against, r.goal_difference(), deepest[id]});
  }
  table.advancing = {ordered[0], ordered[1]};
  return table;
}

}  // namespace rrsvd
