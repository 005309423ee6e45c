#pragma once

#include <json.hpp>

#include "analysis.hpp"

namespace wordlab {

inline constexpr std::string_view kToolName = "wordlab";
inline constexpr std::string_view kToolVersion = "0.1.0";

using OrderedJson = nlohmann::ordered_json;

/// Resolved options of one CLI invocation, echoed into every JSON report so
/// the run can be reproduced from the report alone.
struct RunConfig {
  std::string command;
  std::string source;  // descriptor text; empty when no source is involved
  std::size_t max_factor_length = 25;
  std::optional<StabilizationPolicy> policy;  // only when given explicitly
  std::string format = "json";
  std::string out_path;  // empty = stdout
};

// ===== small rendering helpers ==============================================

[[nodiscard]] inline std::string parikh_text(const ParikhVector& v) {
  std::string out = "(";
  for (std::size_t a = 0; a < v.alphabet_size(); ++a) {
    if (a > 0) out += ",";
    out += std::to_string(v.count(static_cast<Letter>(a)));
  }
  return out + ")";
}

[[nodiscard]] inline OrderedJson parikh_json(const ParikhVector& v) {
  OrderedJson arr = OrderedJson::array();
  for (std::size_t a = 0; a < v.alphabet_size(); ++a)
    arr.push_back(v.count(static_cast<Letter>(a)));
  return arr;
}

[[nodiscard]] inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ===== returns payload ======================================================

struct ReturnQuery {
  FiniteWord target;
  StabilizedReturns result;
};

[[nodiscard]] inline OrderedJson returns_payload(
    const std::vector<ReturnQuery>& queries) {
  OrderedJson list = OrderedJson::array();
  for (const ReturnQuery& q : queries) {
    OrderedJson rec;
    OrderedJson target;
    target["length"] = q.target.size();
    target["vector"] = parikh_json(parikh(q.target));
    target["representative"] = q.target.text();
    rec["target"] = target;
    if (q.result.returns) {
      OrderedJson classes = OrderedJson::array();
      for (const ReturnClass& rc : q.result.returns->classes) {
        OrderedJson cls;
        cls["vector"] = parikh_json(rc.id.vector);
        cls["representative"] = rc.representative.text();
        classes.push_back(std::move(cls));
      }
      rec["classes"] = std::move(classes);
      rec["occurrences"] = q.result.returns->occurrence_count;
    } else {
      rec["error"] = std::string(kNeverRecursMessage);
    }
    rec["stable"] = q.result.report.stable;
    rec["prefixUsed"] = q.result.report.prefix_used;
    list.push_back(std::move(rec));
  }
  OrderedJson payload;
  payload["queries"] = std::move(list);
  return payload;
}

[[nodiscard]] inline std::string returns_text(
    const std::vector<ReturnQuery>& queries) {
  std::string out;
  for (const ReturnQuery& q : queries) {
    out += "target " + q.target.text() + " ~ab " +
           parikh_text(parikh(q.target)) + ", length " +
           std::to_string(q.target.size()) + "\n";
    if (q.result.returns) {
      out += "occurrences " +
             std::to_string(q.result.returns->occurrence_count) + ", stable " +
             (q.result.report.stable ? "yes" : "no") + ", prefix " +
             std::to_string(q.result.report.prefix_used) + "\n";
      out += "return classes (" +
             std::to_string(q.result.returns->classes.size()) + "):\n";
      for (const ReturnClass& rc : q.result.returns->classes)
        out += "  " + rc.representative.text() + " ~ab " +
               parikh_text(rc.id.vector) + "\n";
    } else {
      out += std::string(kNeverRecursMessage) + " (prefix " +
             std::to_string(q.result.report.prefix_used) + ")\n";
    }
    out += "\n";
  }
  return out;
}

[[nodiscard]] inline std::string returns_csv(
    const std::vector<ReturnQuery>& queries) {
  std::string out =
      "targetLength,targetVector,targetRepresentative,returnVector,"
      "returnRepresentative,occurrences,stable,prefixUsed,error\n";
  for (const ReturnQuery& q : queries) {
    std::string base = std::to_string(q.target.size()) + "," +
                       csv_field(parikh_text(parikh(q.target))) + "," +
                       q.target.text() + ",";
    std::string tail = std::string(q.result.report.stable ? "true" : "false") +
                       "," + std::to_string(q.result.report.prefix_used);
    if (q.result.returns) {
      for (const ReturnClass& rc : q.result.returns->classes)
        out += base + csv_field(parikh_text(rc.id.vector)) + "," +
               rc.representative.text() + "," +
               std::to_string(q.result.returns->occurrence_count) + "," +
               tail + ",\n";
    } else {
      out += base + ",,," + tail + "," +
             csv_field(std::string(kNeverRecursMessage)) + "\n";
    }
  }
  return out;
}

/// 0 when every query stabilized, otherwise 2 (caveats only; a returns
/// listing asserts no theorem, so 1 is never produced here).
[[nodiscard]] inline int returns_exit_code(
    const std::vector<ReturnQuery>& queries) {
  for (const ReturnQuery& q : queries)
    if (!q.result.returns || !q.result.report.stable) return 2;
  return 0;
}

// ===== generate payload =====================================================

[[nodiscard]] inline OrderedJson generate_payload(const FiniteWord& word) {
  OrderedJson payload;
  payload["length"] = word.size();
  payload["word"] = word.text();
  return payload;
}

[[nodiscard]] inline std::string generate_text(const FiniteWord& word) {
  return word.text() + "\n";
}

[[nodiscard]] inline std::string generate_csv(const FiniteWord& word) {
  return "length,word\n" + std::to_string(word.size()) + "," + word.text() +
         "\n";
}

// ===== lexarray payload =====================================================

struct LexArrayReport {
  LexArray array;
  bool balanced = false;
  bool column_shift = false;
};

[[nodiscard]] inline OrderedJson lexarray_payload(const LexArrayReport& r) {
  OrderedJson payload;
  payload["p"] = r.array.ones;
  payload["q"] = r.array.length;
  OrderedJson rows = OrderedJson::array();
  for (const FiniteWord& row : r.array.rows) rows.push_back(row.text());
  payload["rows"] = std::move(rows);
  payload["balanced"] = r.balanced;
  payload["columnShift"] = r.column_shift;
  return payload;
}

[[nodiscard]] inline std::string lexarray_text(const LexArrayReport& r) {
  std::string out = r.array.grid();
  out += std::string("balanced ") + (r.balanced ? "yes" : "no") + "\n";
  out += std::string("columnShift ") + (r.column_shift ? "yes" : "no") + "\n";
  return out;
}

[[nodiscard]] inline std::string lexarray_csv(const LexArrayReport& r) {
  std::string out = "field,value\n";
  out += "p," + std::to_string(r.array.ones) + "\n";
  out += "q," + std::to_string(r.array.length) + "\n";
  for (std::size_t i = 0; i < r.array.rows.size(); ++i)
    out += "row" + std::to_string(i) + "," + r.array.rows[i].text() + "\n";
  out += std::string("balanced,") + (r.balanced ? "true" : "false") + "\n";
  out += std::string("columnShift,") + (r.column_shift ? "true" : "false") +
         "\n";
  return out;
}

// ===== verify payload =======================================================

struct NamedVerdict {
  std::string theorem;
  Verdict verdict;
};

[[nodiscard]] inline OrderedJson verify_payload(
    const std::vector<NamedVerdict>& verdicts) {
  OrderedJson list = OrderedJson::array();
  for (const NamedVerdict& nv : verdicts) {
    OrderedJson rec;
    rec["theorem"] = nv.theorem;
    rec["holds"] = nv.verdict.holds;
    OrderedJson range;
    range["lo"] = nv.verdict.checked.lo;
    range["hi"] = nv.verdict.checked.hi;
    rec["checkedLengths"] = std::move(range);
    OrderedJson witnesses = OrderedJson::array();
    for (const Verdict::Witness& w : nv.verdict.witnesses) {
      OrderedJson entry;
      entry["factor"] = w.factor.text();
      entry["observed"] = w.observed;
      witnesses.push_back(std::move(entry));
    }
    rec["witnesses"] = std::move(witnesses);
    rec["caveats"] = nv.verdict.caveats;
    rec["notes"] = nv.verdict.notes;
    list.push_back(std::move(rec));
  }
  OrderedJson payload;
  payload["verdicts"] = std::move(list);
  return payload;
}

[[nodiscard]] inline std::string verify_text(
    const std::vector<NamedVerdict>& verdicts) {
  std::string out;
  for (const NamedVerdict& nv : verdicts) {
    out += "theorem " + nv.theorem + ": " +
           (nv.verdict.holds ? "holds" : "fails") + " (lengths " +
           std::to_string(nv.verdict.checked.lo) + ".." +
           std::to_string(nv.verdict.checked.hi) + ")\n";
    for (const Verdict::Witness& w : nv.verdict.witnesses)
      out += "  witness " + (w.factor.empty() ? "-" : w.factor.text()) + ": " +
             w.observed + "\n";
    for (const std::string& c : nv.verdict.caveats) out += "  caveat: " + c + "\n";
    for (const std::string& n : nv.verdict.notes) out += "  note: " + n + "\n";
  }
  return out;
}

[[nodiscard]] inline std::string verify_csv(
    const std::vector<NamedVerdict>& verdicts) {
  std::string out = "theorem,holds,kind,detail\n";
  for (const NamedVerdict& nv : verdicts) {
    std::string base =
        nv.theorem + "," + (nv.verdict.holds ? "true" : "false") + ",";
    out += base + "checkedLengths," +
           csv_field(std::to_string(nv.verdict.checked.lo) + ".." +
                     std::to_string(nv.verdict.checked.hi)) +
           "\n";
    for (const Verdict::Witness& w : nv.verdict.witnesses)
      out += base + "witness," +
             csv_field(w.factor.text() + ": " + w.observed) + "\n";
    for (const std::string& c : nv.verdict.caveats)
      out += base + "caveat," + csv_field(c) + "\n";
    for (const std::string& n : nv.verdict.notes)
      out += base + "note," + csv_field(n) + "\n";
  }
  return out;
}

/// 1 when any verdict fails, else 2 when any carries caveats, else 0.
[[nodiscard]] inline int verify_exit_code(
    const std::vector<NamedVerdict>& verdicts) {
  bool caveats = false;
  for (const NamedVerdict& nv : verdicts) {
    if (!nv.verdict.holds) return 1;
    caveats = caveats || !nv.verdict.caveats.empty();
  }
  return caveats ? 2 : 0;
}

// ===== report assembly ======================================================

/// Stable-byte JSON document: tool identity, config echo, payload. Anything
/// run-dependent (wall-clock duration) stays out of this document.
[[nodiscard]] inline std::string render_json_report(
    const RunConfig& cfg, const OrderedJson& command_config,
    const OrderedJson& payload) {
  OrderedJson doc;
  OrderedJson tool;
  tool["name"] = std::string(kToolName);
  tool["version"] = std::string(kToolVersion);
  doc["tool"] = std::move(tool);
  OrderedJson conf;
  conf["command"] = cfg.command;
  if (!cfg.source.empty()) conf["source"] = cfg.source;
  conf["max"] = cfg.max_factor_length;
  if (cfg.policy) {
    OrderedJson pol;
    pol["initial"] = cfg.policy->initial;
    pol["growth"] = cfg.policy->growth;
    pol["cap"] = cfg.policy->cap;
    conf["policy"] = std::move(pol);
  }
  for (const auto& [key, value] : command_config.items()) conf[key] = value;
  conf["format"] = cfg.format;
  doc["config"] = std::move(conf);
  doc["payload"] = payload;
  return doc.dump(2) + "\n";
}

}  // namespace wordlab
