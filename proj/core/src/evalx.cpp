#include "mtss/evalx.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "mtss/parser.hpp"
#include "mtss/timeline.hpp"

namespace mtss {

std::string_view stream_kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::Shots: return "shots";
    case StreamKind::Events: return "events";
    case StreamKind::Entities: return "entities";
  }
  return {};
}

Result<StreamKind, UnknownKind> parse_stream_kind(std::string_view name) {
  if (name == "shots") return StreamKind::Shots;
  if (name == "events") return StreamKind::Events;
  if (name == "entities") return StreamKind::Entities;
  return fail(UnknownKind{std::string(name)});
}

double Matching::total_score() const {
  double total = 0.0;
  for (const auto& p : pairs) total += p.score;
  return total;
}

namespace {

std::map<std::string, int> tokens(std::string_view text) {
  std::map<std::string, int> out;
  std::string cur;
  const auto flush = [&] {
    if (!cur.empty()) ++out[cur];
    cur.clear();
  };
  for (const char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) flush();
    else if (u < 0x80 && std::ispunct(u)) continue;
    else cur.push_back(static_cast<char>(u < 0x80 ? std::tolower(u) : u));
  }
  flush();
  return out;
}

template <class T>
std::vector<std::size_t> id_order(std::span<const T> items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return id_less(items[a].id, items[b].id); });
  return order;
}

template <class T, class Score>
Matching match_generic(std::span<const T> gold, std::span<const T> cand, AssignmentMethod method, Score score) {
  const auto go = id_order(gold);
  const auto co = id_order(cand);
  Matrix w(go.size(), std::vector<double>(co.size(), 0.0));
  for (std::size_t i = 0; i < go.size(); ++i) {
    for (std::size_t j = 0; j < co.size(); ++j) {
      const double s = score(gold[go[i]], cand[co[j]]);
      w[i][j] = s > kMinMatchScore ? s : 0.0;
    }
  }
  const auto assignment = max_weight_matching(w, method, kExhaustiveMatchLimit);
  Matching out;
  std::vector<char> gold_used(go.size(), 0), cand_used(co.size(), 0);
  for (const auto& [r, c] : assignment.pairs) {
    out.pairs.push_back({gold[go[r]].id, cand[co[c]].id, w[r][c]});
    gold_used[r] = 1;
    cand_used[c] = 1;
  }
  for (std::size_t i = 0; i < go.size(); ++i) {
    if (!gold_used[i]) out.unmatched_gold.push_back(gold[go[i]].id);
  }
  for (std::size_t j = 0; j < co.size(); ++j) {
    if (!cand_used[j]) out.unmatched_candidate.push_back(cand[co[j]].id);
  }
  return out;
}

}  // namespace

double token_f1(std::string_view gold, std::string_view candidate) {
  const auto g = tokens(gold);
  const auto c = tokens(candidate);
  int gold_total = 0, cand_total = 0, common = 0;
  for (const auto& [tok, n] : g) gold_total += n;
  for (const auto& [tok, n] : c) {
    cand_total += n;
    if (auto it = g.find(tok); it != g.end()) common += std::min(n, it->second);
  }
  if (common == 0) return 0.0;
  const double p = static_cast<double>(common) / cand_total;
  const double r = static_cast<double>(common) / gold_total;
  return 2.0 * p * r / (p + r);
}

Matching match_shots(std::span<const Shot> gold, std::span<const Shot> cand, AssignmentMethod method) {
  return match_generic(gold, cand, method,
                       [](const Shot& a, const Shot& b) { return overlap(a.time_range, b.time_range).iou; });
}

Matching match_events(std::span<const AudioEvent> gold, std::span<const AudioEvent> cand, AssignmentMethod method) {
  return match_generic(gold, cand, method, [](const AudioEvent& a, const AudioEvent& b) {
    return a.type == b.type ? overlap(a.time_range, b.time_range).iou : 0.0;
  });
}

Matching match_entities(std::span<const ReferenceEntity> gold, std::span<const ReferenceEntity> cand,
                        AssignmentMethod method) {
  return match_generic(gold, cand, method, [](const ReferenceEntity& a, const ReferenceEntity& b) {
    return a.category == b.category ? token_f1(a.semantic_description, b.semantic_description) : 0.0;
  });
}

Matching match_stream(const Script& gold, const Script& cand, StreamKind kind, AssignmentMethod method) {
  switch (kind) {
    case StreamKind::Shots: return match_shots(gold.shots, cand.shots, method);
    case StreamKind::Events: return match_events(gold.events, cand.events, method);
    case StreamKind::Entities: return match_entities(gold.references, cand.references, method);
  }
  return {};
}

Result<Matching, UnknownKind> match_stream(const Script& gold, const Script& cand, std::string_view kind) {
  auto k = parse_stream_kind(kind);
  if (!k) return fail(k.error());
  return match_stream(gold, cand, *k);
}

long long seconds_to_frames(double seconds, double fps) {
  // Half-up; the nudge absorbs binary representation error at exact halves.
  return static_cast<long long>(std::floor(seconds * fps + 0.5 + 1e-9));
}

BoundaryDeviation boundary_deviation(std::span<const Millis> gold, std::span<const Millis> cand, double fps,
                                     double unmatched_penalty, AssignmentMethod method) {
  BoundaryDeviation out;
  Matrix cost(gold.size(), std::vector<double>(cand.size()));
  for (std::size_t i = 0; i < gold.size(); ++i)
    for (std::size_t j = 0; j < cand.size(); ++j)
      cost[i][j] = static_cast<double>(std::llabs((gold[i] - cand[j]).count));

  const std::size_t larger = std::max(gold.size(), cand.size());
  const bool exhaustive =
      method == AssignmentMethod::Exhaustive || (method == AssignmentMethod::Auto && larger <= kExhaustiveBoundaryLimit);
  const auto assignment = exhaustive ? min_cost_assignment_exhaustive(cost) : min_cost_assignment(cost);

  double total_ms = 0.0;
  for (const auto& [r, c] : assignment.pairs) {
    out.pairs.emplace_back(gold[r], cand[c]);
    total_ms += cost[r][c];
  }
  out.matched = assignment.pairs.size();
  out.unmatched = gold.size() + cand.size() - 2 * out.matched;
  const std::size_t n = out.matched + out.unmatched;
  const double total = total_ms / 1000.0 + unmatched_penalty * static_cast<double>(out.unmatched);
  out.seconds = n ? total / static_cast<double>(n) : 0.0;
  out.frames = seconds_to_frames(out.seconds, fps);
  return out;
}

Result<BoundaryDeviation, DurationMismatch> boundary_deviation(const Script& gold, const Script& cand,
                                                               double unmatched_penalty, AssignmentMethod method) {
  const Millis dd = gold.meta.duration - cand.meta.duration;
  if (std::llabs(dd.count) > kEpsilon.count)
    return fail(DurationMismatch{"durations differ: " + format_seconds(gold.meta.duration) + " s vs " +
                                 format_seconds(cand.meta.duration) + " s"});
  if (std::fabs(gold.meta.fps - cand.meta.fps) > 1e-9)
    return fail(DurationMismatch{"frame rates differ"});
  const auto cuts = [](const Script& s) {
    auto b = boundaries(s);
    return b ? std::move(b.value()) : std::vector<Millis>{};
  };
  const auto g = cuts(gold);
  const auto c = cuts(cand);
  return boundary_deviation(g, c, gold.meta.fps, unmatched_penalty, method);
}

StreamScore score_stream(std::size_t gold_count, std::size_t candidate_count, Matching matching) {
  StreamScore s;
  s.gold_count = gold_count;
  s.candidate_count = candidate_count;
  const double k = static_cast<double>(matching.pairs.size());
  if (gold_count + candidate_count > 0) {
    s.f1 = 2.0 * k / static_cast<double>(gold_count + candidate_count);
    s.precision = candidate_count ? k / static_cast<double>(candidate_count) : (gold_count ? 0.0 : 1.0);
    s.recall = gold_count ? k / static_cast<double>(gold_count) : (candidate_count ? 0.0 : 1.0);
  }
  s.matching = std::move(matching);
  return s;
}

Result<EvalReport, DurationMismatch> evaluate(const Script& gold, const Script& cand, const EvalConfig& config) {
  auto deviation = boundary_deviation(gold, cand, config.unmatched_penalty, config.method);
  if (!deviation) return fail(deviation.error());
  EvalReport r;
  r.boundary = std::move(deviation.value());
  r.shots = score_stream(gold.shots.size(), cand.shots.size(), match_shots(gold.shots, cand.shots, config.method));
  r.entities = score_stream(gold.references.size(), cand.references.size(),
                            match_entities(gold.references, cand.references, config.method));
  r.events =
      score_stream(gold.events.size(), cand.events.size(), match_events(gold.events, cand.events, config.method));
  return r;
}

namespace {

Value ratio(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return Value::number_lexeme(buf);
}

Value stream_value(const StreamScore& s) {
  auto obj = Value::object();
  obj.set("gold", Value::integer(static_cast<long long>(s.gold_count)));
  obj.set("candidate", Value::integer(static_cast<long long>(s.candidate_count)));
  obj.set("precision", ratio(s.precision));
  obj.set("recall", ratio(s.recall));
  obj.set("f1", ratio(s.f1));
  auto pairs = Value::array();
  for (const auto& p : s.matching.pairs) {
    auto pv = Value::object();
    pv.set("gold", Value::string(p.gold_id));
    pv.set("candidate", Value::string(p.candidate_id));
    pv.set("score", ratio(p.score));
    pairs.push(std::move(pv));
  }
  obj.set("pairs", std::move(pairs));
  auto ug = Value::array();
  for (const auto& id : s.matching.unmatched_gold) ug.push(Value::string(id));
  obj.set("unmatched_gold", std::move(ug));
  auto uc = Value::array();
  for (const auto& id : s.matching.unmatched_candidate) uc.push(Value::string(id));
  obj.set("unmatched_candidate", std::move(uc));
  return obj;
}

}  // namespace

Value to_value(const EvalReport& r) {
  auto obj = Value::object();
  auto b = Value::object();
  b.set("seconds", ratio(r.boundary.seconds));
  b.set("frames", Value::integer(r.boundary.frames));
  b.set("matched", Value::integer(static_cast<long long>(r.boundary.matched)));
  b.set("unmatched", Value::integer(static_cast<long long>(r.boundary.unmatched)));
  obj.set("boundary_deviation", std::move(b));
  obj.set("shots", stream_value(r.shots));
  obj.set("entities", stream_value(r.entities));
  obj.set("events", stream_value(r.events));
  return obj;
}

std::string format_eval_table(const EvalReport& r) {
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "%-20s %10.3f s %8lld frames  (%zu matched, %zu unmatched)\n",
                "boundary_deviation", r.boundary.seconds, r.boundary.frames, r.boundary.matched, r.boundary.unmatched);
  os << line;
  std::snprintf(line, sizeof line, "%-10s %6s %6s %9s %9s %9s\n", "stream", "gold", "cand", "precision", "recall",
                "f1");
  os << line;
  const std::pair<const char*, const StreamScore*> rows[] = {
      {"shots", &r.shots}, {"entities", &r.entities}, {"events", &r.events}};
  for (const auto& [name, s] : rows) {
    std::snprintf(line, sizeof line, "%-10s %6zu %6zu %9.3f %9.3f %9.3f\n", name, s->gold_count, s->candidate_count,
                  s->precision, s->recall, s->f1);
    os << line;
  }
  return os.str();
}

}  // namespace mtss
